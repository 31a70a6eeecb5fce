// Shapes mirrored from the session-service JSON contracts.

export interface DatasetInfo {
  id: string;
  display_name: string;
  description: string;
  class_balance: number;
  resolution: number;
  labels: number[];
}

export interface GateInfo {
  kind: string;
  target: number;
  control: number | null;
  feature_index: number | null;
  scale: number | null;
}

export interface EncoderInfo {
  id: string;
  display_name: string;
  description: string;
  gates: GateInfo[];
}

export interface GridDoc {
  resolution: number;
  values: number[][];
}

export interface EncoderMapDoc extends GridDoc {
  encoder_id: string;
}

export interface EvolutionFrame {
  step_index: number;
  gate_label: string;
  expectation: GridDoc;
  prob0: number[][];
  prob1: number[][];
}

export interface EvolutionDoc {
  encoder_id: string;
  resolution: number;
  frames: EvolutionFrame[];
}

export interface ComparisonPoint {
  x: number;
  y: number;
  label: number;
  row: number;
  col: number;
}

export interface ComparisonDoc {
  encoder_id: string;
  dataset_id: string;
  resolution: number;
  model: { degenerate: boolean; explained_variance: number[] };
  points: ComparisonPoint[];
}

export type RunState = "created" | "running" | "paused" | "stopped" | "finished";

export interface SessionSummary {
  session_id: string;
  run_state: RunState;
  current_epoch: number;
  num_events?: number;
}

export interface ControlResponse {
  session_id: string;
  run_state: RunState;
  current_epoch: number;
  no_op: boolean;
}

export interface EpochEvent {
  epoch: number;
  loss: number;
  accuracy: number;
  trained_map: number[];
}

export interface DoneEvent {
  run_state: RunState;
  epochs_run: number;
}
