// @vitest-environment node
//
// Dashboard round trip against the real service: play, pause, reload,
// resume, stop. The page's view of the session must match what the service
// reports at every step, and after a mid-run reload the loss chart must hold
// exactly as many points as the service has epoch events.

import { Window } from "happy-dom";
import { afterAll, beforeAll, expect, test } from "vitest";

import { Client } from "../src/api.js";
import { renderChart } from "../src/chart.js";
import { SessionController, type SessionStorageLike } from "../src/session.js";
import { Store } from "../src/state.js";
import { httpJson, type LiveService, sleep, startService, waitFor } from "./_live.js";

let service: LiveService;

beforeAll(async () => {
  service = await startService();
}, 90000);

afterAll(async () => {
  await service?.stop();
});

function memoryStorage(): SessionStorageLike {
  const map = new Map<string, string>();
  return {
    getItem: (key) => map.get(key) ?? null,
    setItem: (key, value) => void map.set(key, value),
    removeItem: (key) => void map.delete(key),
  };
}

async function serviceState(client: Client, store: Store): Promise<string> {
  const session = store.state.session;
  if (!session) throw new Error("store holds no session");
  const summary = await client.getSession(session.sessionId);
  expect(store.state.session?.runState).toBe(summary.run_state);
  return summary.run_state;
}

/** Epoch count once the service stops appending (pause lands on a boundary). */
async function settledEventCount(port: number, sessionId: string): Promise<number> {
  let previous = -1;
  for (;;) {
    const { body } = await httpJson(port, `/api/sessions/${sessionId}`);
    const count = (body as { num_events: number }).num_events;
    if (count === previous) return count;
    previous = count;
    await sleep(150);
  }
}

test("page state tracks the service through play, pause, reload, resume, stop", async () => {
  const client = new Client(service.base);
  const storage = memoryStorage();
  const store = new Store();
  store.update((s) => {
    s.selectedDataset = "D3-corner-circle";
    s.selectedEncoder = "E04";
    s.hyperparams.epochs = 1500;
    s.hyperparams.learningRate = 0.5;
  });
  const controller = new SessionController(client, store, storage);

  await controller.play();
  const sessionId = store.state.session!.sessionId;
  expect(await serviceState(client, store)).toBe("running");

  await waitFor(() => store.state.session!.records.length >= 5);
  await controller.pause();
  expect(await serviceState(client, store)).toBe("paused");

  const frozen = await settledEventCount(service.port, sessionId);
  expect(frozen).toBeGreaterThanOrEqual(5);

  // Reload: a fresh store and controller share only the persisted session id.
  const store2 = new Store();
  const controller2 = new SessionController(client, store2, storage);
  expect(await controller2.restore()).toBe(true);
  expect(store2.state.session!.sessionId).toBe(sessionId);
  expect(await serviceState(client, store2)).toBe("paused");

  // Backlog replay rebuilds every epoch received so far, nothing more.
  await waitFor(() => store2.state.session!.records.length === frozen);
  await sleep(300);
  expect(store2.state.session!.records.length).toBe(frozen);

  // The rebuilt chart carries one loss vertex per service-side epoch event.
  const win = new Window();
  (globalThis as { document?: unknown }).document = win.document;
  const host = win.document.createElement("div");
  renderChart(host as unknown as HTMLElement, store2.state.session!.records);
  const lossLine = host.querySelector(".loss-line");
  expect(lossLine).not.toBeNull();
  const vertices = (lossLine!.getAttribute("points") ?? "").split(" ").filter(Boolean);
  expect(vertices.length).toBe(frozen);
  delete (globalThis as { document?: unknown }).document;

  await controller2.resume();
  expect(await serviceState(client, store2)).toBe("running");
  await waitFor(() => store2.state.session!.records.length >= frozen + 3);

  await controller2.stop();
  expect(await serviceState(client, store2)).toBe("stopped");

  await controller2.shutdown();
  await controller.shutdown();
  process.stdout.write(
    "[criterion 11] dashboard round trip tracks the service and the reloaded " +
      `chart holds ${frozen} points for ${frozen} service events: PASS\n`,
  );
}, 60000);
