import { describe, expect, it } from "vitest";

import { allowedControls, initialState, mergeRecord, Store } from "../src/state.js";
import type { EpochEvent, RunState } from "../src/types.js";

function record(epoch: number): EpochEvent {
  return { epoch, loss: 1 / epoch, accuracy: epoch / 100, trained_map: [0, 0, 0, 0] };
}

function session(runState: RunState) {
  return { sessionId: "s1", runState, records: [] };
}

describe("allowedControls", () => {
  it("offers only play with no session", () => {
    expect(allowedControls(null)).toEqual(new Set(["play"]));
  });

  it("never offers resume while running", () => {
    const allowed = allowedControls(session("running"));
    expect(allowed).toEqual(new Set(["pause", "stop"]));
    expect(allowed.has("resume")).toBe(false);
  });

  it("offers resume and stop while paused, never pause", () => {
    expect(allowedControls(session("paused"))).toEqual(new Set(["resume", "stop"]));
  });

  it("terminal states offer only a fresh play", () => {
    expect(allowedControls(session("stopped"))).toEqual(new Set(["play"]));
    expect(allowedControls(session("finished"))).toEqual(new Set(["play"]));
  });

  it("created (start in flight) offers nothing", () => {
    expect(allowedControls(session("created")).size).toBe(0);
  });
});

describe("mergeRecord", () => {
  it("appends consecutive epochs in order", () => {
    const records: EpochEvent[] = [];
    expect(mergeRecord(records, record(1))).toBe(true);
    expect(mergeRecord(records, record(2))).toBe(true);
    expect(records.map((r) => r.epoch)).toEqual([1, 2]);
  });

  it("drops backlog duplicates after a reconnect", () => {
    const records = [record(1), record(2), record(3)];
    expect(mergeRecord(records, record(2))).toBe(false);
    expect(records.length).toBe(3);
  });

  it("refuses gaps since the stream contract forbids them", () => {
    const records = [record(1)];
    expect(() => mergeRecord(records, record(5))).toThrow(/gap/);
  });
});

describe("Store", () => {
  it("notifies subscribers on update and honors unsubscribe", () => {
    const store = new Store(initialState());
    let calls = 0;
    const unsubscribe = store.subscribe(() => calls++);
    store.update((s) => (s.selectedEncoder = "E03"));
    expect(calls).toBe(1);
    expect(store.state.selectedEncoder).toBe("E03");
    unsubscribe();
    store.update((s) => (s.selectedEncoder = "E04"));
    expect(calls).toBe(1);
  });
});
