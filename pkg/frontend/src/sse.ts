// Minimal SSE reader over fetch streaming. The native EventSource would do
// in a browser, but a hand-rolled parser runs under node too, which keeps
// the whole client testable against a live service without a browser.

export interface SseMessage {
  event: string;
  data: string;
}

/**
 * Incremental parser for a text/event-stream body. Feed it arbitrary chunk
 * boundaries; it emits one message per blank-line-terminated block and
 * ignores comment lines (leading ":", used by the service as heartbeats).
 */
export function createSseParser(onMessage: (msg: SseMessage) => void): (chunk: string) => void {
  let buffer = "";
  return (chunk: string) => {
    buffer += chunk;
    let boundary = buffer.indexOf("\n\n");
    while (boundary >= 0) {
      const block = buffer.slice(0, boundary);
      buffer = buffer.slice(boundary + 2);
      let event = "message";
      let data: string | null = null;
      for (const line of block.split("\n")) {
        if (!line || line.startsWith(":")) continue;
        if (line.startsWith("event: ")) event = line.slice(7);
        else if (line.startsWith("data: ")) data = line.slice(6);
      }
      if (data !== null) onMessage({ event, data });
      boundary = buffer.indexOf("\n\n");
    }
  };
}

export interface StreamHandlers {
  onEpoch: (data: string) => void;
  onDone: (data: string) => void;
}

/**
 * Consume a session event stream until the terminal "done" message or abort.
 * The service replays the full epoch backlog first, then stays live.
 */
export async function subscribeEvents(
  url: string,
  handlers: StreamHandlers,
  signal: AbortSignal,
): Promise<void> {
  const response = await fetch(url, { signal, headers: { Accept: "text/event-stream" } });
  if (!response.ok || !response.body) {
    throw new Error(`event stream failed: ${response.status}`);
  }
  let finished = false;
  const parse = createSseParser((msg) => {
    if (msg.event === "epoch") handlers.onEpoch(msg.data);
    else if (msg.event === "done") {
      finished = true;
      handlers.onDone(msg.data);
    }
  });
  const decoder = new TextDecoder();
  const reader = response.body.getReader();
  try {
    while (!finished) {
      const { done, value } = await reader.read();
      if (done) break;
      parse(decoder.decode(value, { stream: true }));
    }
  } finally {
    await reader.cancel().catch(() => {});
  }
}
