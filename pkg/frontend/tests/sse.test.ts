import { describe, expect, it } from "vitest";

import { createSseParser, type SseMessage } from "../src/sse.js";

function collect(): { messages: SseMessage[]; feed: (chunk: string) => void } {
  const messages: SseMessage[] = [];
  const feed = createSseParser((m) => messages.push(m));
  return { messages, feed };
}

describe("createSseParser", () => {
  it("parses one complete event block", () => {
    const { messages, feed } = collect();
    feed('event: epoch\ndata: {"epoch": 1}\n\n');
    expect(messages).toEqual([{ event: "epoch", data: '{"epoch": 1}' }]);
  });

  it("handles chunk boundaries anywhere, even mid-line", () => {
    const { messages, feed } = collect();
    const wire = 'event: epoch\ndata: {"epoch": 1}\n\nevent: done\ndata: {"run_state": "finished"}\n\n';
    for (const ch of wire) feed(ch);
    expect(messages.map((m) => m.event)).toEqual(["epoch", "done"]);
    expect(JSON.parse(messages[1].data).run_state).toBe("finished");
  });

  it("emits multiple events from a single chunk", () => {
    const { messages, feed } = collect();
    feed("event: epoch\ndata: 1\n\nevent: epoch\ndata: 2\n\nevent: epoch\ndata: 3\n\n");
    expect(messages.map((m) => m.data)).toEqual(["1", "2", "3"]);
  });

  it("ignores heartbeat comments between events", () => {
    const { messages, feed } = collect();
    feed(": heartbeat\n\nevent: epoch\ndata: 7\n\n: heartbeat\n\n");
    expect(messages).toEqual([{ event: "epoch", data: "7" }]);
  });

  it("holds incomplete blocks until terminated", () => {
    const { messages, feed } = collect();
    feed("event: epoch\ndata: 42\n");
    expect(messages.length).toBe(0);
    feed("\n");
    expect(messages.length).toBe(1);
  });
});
