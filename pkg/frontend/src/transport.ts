/** Line transports. The session works against this interface; tests swap in
 * a fake, Node uses TCP (tcp.ts), browsers use a WebSocket line bridge. */

export type LineHandler = (line: string, receivedAtMs: number) => void;

export interface Transport {
  send(line: string): void;
  close(): void;
  onLine(cb: LineHandler): void;
  onOpen(cb: () => void): void;
  onClose(cb: () => void): void;
}

/** Buffers stream chunks and yields complete newline-terminated lines. */
export class LineSplitter {
  private buf = "";

  push(chunk: string): string[] {
    this.buf += chunk;
    const parts = this.buf.split("\n");
    this.buf = parts.pop() ?? "";
    return parts.filter((p) => p.length > 0);
  }
}

export interface WebSocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

/**
 * Browser-side transport over a TCP-to-WebSocket line bridge (bridge.mjs).
 * One ws message carries one JSON line without the newline. The constructor
 * takes a socket factory so Node tests can pass the `ws` client in place of
 * window.WebSocket.
 */
export class WebSocketTransport implements Transport {
  private ws: WebSocketLike;
  private lineCbs: LineHandler[] = [];
  private openCbs: (() => void)[] = [];
  private closeCbs: (() => void)[] = [];

  constructor(url: string, factory?: (url: string) => WebSocketLike) {
    const make = factory ?? ((u: string) => new WebSocket(u) as unknown as WebSocketLike);
    this.ws = make(url);
    this.ws.onopen = () => this.openCbs.forEach((cb) => cb());
    this.ws.onclose = () => this.closeCbs.forEach((cb) => cb());
    this.ws.onerror = () => {}; // onclose fires afterwards either way
    this.ws.onmessage = (ev) => {
      const at = Date.now();
      for (const line of String(ev.data).split("\n")) {
        if (line.length > 0) this.lineCbs.forEach((cb) => cb(line, at));
      }
    };
  }

  send(line: string): void {
    this.ws.send(line);
  }

  close(): void {
    this.ws.close();
  }

  onLine(cb: LineHandler): void {
    this.lineCbs.push(cb);
  }

  onOpen(cb: () => void): void {
    this.openCbs.push(cb);
  }

  onClose(cb: () => void): void {
    this.closeCbs.push(cb);
  }
}
