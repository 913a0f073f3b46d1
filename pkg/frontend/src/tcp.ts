/** Direct TCP transport for Node (tests, headless scripting). Browsers
 * cannot open raw sockets; they go through the WebSocket bridge instead. */

import net from "node:net";

import { LineSplitter, type LineHandler, type Transport } from "./transport.js";

export class TcpTransport implements Transport {
  private sock: net.Socket;
  private splitter = new LineSplitter();
  private lineCbs: LineHandler[] = [];
  private openCbs: (() => void)[] = [];
  private closeCbs: (() => void)[] = [];

  constructor(host: string, port: number) {
    this.sock = net.createConnection({ host, port });
    this.sock.setEncoding("utf8");
    this.sock.on("connect", () => this.openCbs.forEach((cb) => cb()));
    this.sock.on("close", () => this.closeCbs.forEach((cb) => cb()));
    this.sock.on("error", () => {}); // surfaced via close
    this.sock.on("data", (chunk: string) => {
      const at = Date.now();
      for (const line of this.splitter.push(chunk)) {
        this.lineCbs.forEach((cb) => cb(line, at));
      }
    });
  }

  send(line: string): void {
    this.sock.write(line + "\n");
  }

  close(): void {
    this.sock.end();
    this.sock.destroy();
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
