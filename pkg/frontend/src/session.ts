// Session orchestration, kept free of DOM so it runs headless too. One
// controller owns at most one live event subscription; play tears down any
// previous one. A 409 from any control call resyncs the store to the state
// the service reported instead of trusting the local guess.

import { ApiError, Client } from "./api.js";
import { mergeRecord, Store } from "./state.js";
import { subscribeEvents } from "./sse.js";
import type { DoneEvent, EpochEvent } from "./types.js";

const STORAGE_KEY = "encoderlab-session";

export interface SessionStorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class SessionController {
  private client: Client;
  private store: Store;
  private storage: SessionStorageLike | null;
  private abort: AbortController | null = null;
  streamClosed: Promise<void> = Promise.resolve();

  constructor(client: Client, store: Store, storage: SessionStorageLike | null = null) {
    this.client = client;
    this.store = store;
    this.storage = storage;
  }

  /** Create a session from the current selections, start it, and subscribe. */
  async play(): Promise<void> {
    const { selectedDataset, selectedEncoder, hyperparams } = this.store.state;
    const created = await this.client.createSession({
      dataset_id: selectedDataset,
      encoder_id: selectedEncoder,
      epochs: hyperparams.epochs,
      learning_rate: hyperparams.learningRate,
    });
    this.store.update((s) => {
      s.session = { sessionId: created.session_id, runState: created.run_state, records: [] };
    });
    this.storage?.setItem(STORAGE_KEY, created.session_id);
    const started = await this.client.control(created.session_id, "start");
    this.store.update((s) => {
      if (s.session) s.session.runState = started.run_state;
    });
    this.subscribe(created.session_id);
  }

  /** Reattach to a previously persisted session, e.g. after a page reload. */
  async restore(): Promise<boolean> {
    const sessionId = this.storage?.getItem(STORAGE_KEY);
    if (!sessionId) return false;
    try {
      const summary = await this.client.getSession(sessionId);
      this.store.update((s) => {
        s.session = { sessionId, runState: summary.run_state, records: [] };
      });
      this.subscribe(sessionId);
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.storage?.removeItem(STORAGE_KEY);
        return false;
      }
      throw err;
    }
  }

  async pause(): Promise<void> {
    await this.controlCurrent("pause");
  }

  async resume(): Promise<void> {
    await this.controlCurrent("resume");
  }

  async stop(): Promise<void> {
    await this.controlCurrent("stop");
  }

  async shutdown(): Promise<void> {
    this.abort?.abort();
    await this.streamClosed;
  }

  private async controlCurrent(action: "pause" | "resume" | "stop"): Promise<void> {
    const session = this.store.state.session;
    if (!session) return;
    try {
      const response = await this.client.control(session.sessionId, action);
      this.store.update((s) => {
        if (s.session) s.session.runState = response.run_state;
      });
    } catch (err) {
      const conflictState = err instanceof ApiError ? err.conflictState() : null;
      if (conflictState) {
        this.store.update((s) => {
          if (s.session) s.session.runState = conflictState;
        });
        return;
      }
      throw err;
    }
  }

  private subscribe(sessionId: string): void {
    this.abort?.abort();
    this.abort = new AbortController();
    const signal = this.abort.signal;
    this.streamClosed = subscribeEvents(
      this.client.eventsUrl(sessionId),
      {
        onEpoch: (data) => {
          const record = JSON.parse(data) as EpochEvent;
          this.store.update((s) => {
            if (s.session?.sessionId !== sessionId) return;
            mergeRecord(s.session.records, record);
          });
        },
        onDone: (data) => {
          const done = JSON.parse(data) as DoneEvent;
          this.store.update((s) => {
            if (s.session?.sessionId !== sessionId) return;
            s.session.runState = done.run_state;
          });
        },
      },
      signal,
    ).catch((err) => {
      if (!signal.aborted) throw err;
    });
  }
}
