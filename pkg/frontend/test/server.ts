// Spawns the Python board service for integration tests and tears it down.

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";

export const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

export interface LiveServer {
  proc: ChildProcess;
  host: string;
  port: number;
  stop(): Promise<void>;
}

export function startServer(tracePath: string, extraArgs: string[] = []): Promise<LiveServer> {
  return new Promise((resolve, reject) => {
    const proc = spawn(
      "python3",
      ["-u", "-m", "bracketboard.cli", "serve", "--host", "127.0.0.1", "--port", "0", "--trace", tracePath, ...extraArgs],
      { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
    );
    let out = "";
    let err = "";
    const giveUp = setTimeout(() => {
      proc.kill("SIGKILL");
      reject(new Error(`service never announced a port; stderr: ${err}`));
    }, 15000);
    proc.stderr!.on("data", (d) => (err += d));
    proc.stdout!.on("data", (d) => {
      out += d;
      const m = /listening on ([\d.]+):(\d+)/.exec(out);
      if (!m) return;
      clearTimeout(giveUp);
      resolve({
        proc,
        host: m[1],
        port: Number(m[2]),
        stop: () =>
          new Promise<void>((done) => {
            proc.once("exit", () => done());
            proc.kill("SIGTERM");
            setTimeout(() => proc.kill("SIGKILL"), 3000).unref();
          }),
      });
    });
    proc.once("exit", (code) => {
      clearTimeout(giveUp);
      reject(new Error(`service exited early with code ${code}; stderr: ${err}`));
    });
  });
}
