// Single state store. Every mutation flows through update(); views subscribe
// and re-render. Session state is never invented locally: it is whatever the
// service last reported, plus received events.

import type { EpochEvent, RunState } from "./types.js";

export interface SessionView {
  sessionId: string;
  runState: RunState;
  records: EpochEvent[];
}

export interface ViewState {
  selectedDataset: string;
  selectedEncoder: string;
  hyperparams: { epochs: number; learningRate: number };
  session: SessionView | null;
  activeEvolutionStep: number;
}

export function initialState(): ViewState {
  return {
    selectedDataset: "D1-vstripes",
    selectedEncoder: "E01",
    hyperparams: { epochs: 100, learningRate: 0.5 },
    session: null,
    activeEvolutionStep: 0,
  };
}

export type Listener = (state: ViewState) => void;

export class Store {
  state: ViewState;
  private listeners: Listener[] = [];

  constructor(state: ViewState = initialState()) {
    this.state = state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  update(mutate: (state: ViewState) => void): void {
    mutate(this.state);
    for (const listener of this.listeners) listener(this.state);
  }
}

export type ControlButton = "play" | "pause" | "resume" | "stop";

/**
 * Which control buttons are enabled for the current session state. Strictly
 * per the service state machine: resume never shows while running, a fresh
 * or terminal panel offers only play.
 */
export function allowedControls(session: SessionView | null): Set<ControlButton> {
  if (!session) return new Set(["play"]);
  switch (session.runState) {
    case "running":
      return new Set(["pause", "stop"]);
    case "paused":
      return new Set(["resume", "stop"]);
    case "created":
      return new Set();
    case "stopped":
    case "finished":
      return new Set(["play"]);
  }
}

/**
 * Append an epoch record, keeping the list append-only and epoch-ordered.
 * Backlog replays after a reconnect re-deliver epochs already held; those
 * are identical by the service's determinism contract and are dropped.
 * Returns true when the record extended the list.
 */
export function mergeRecord(records: EpochEvent[], record: EpochEvent): boolean {
  if (record.epoch <= records.length) return false;
  if (record.epoch !== records.length + 1) {
    throw new Error(`epoch gap: got ${record.epoch} after ${records.length}`);
  }
  records.push(record);
  return true;
}
