// End-to-end against the real board service: the UI is a pure event source,
// captions must byte-match engine narration, and the trace the service
// records must replay headlessly to the same final snapshot.

import { execFile } from "node:child_process";
import fs from "node:fs/promises";
import os from "node:os";
import path from "node:path";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { TcpTransport } from "../src/tcp.js";
import { UiSession } from "../src/session.js";
import type { Notification } from "../src/protocol.js";
import { REPO_ROOT, startServer, type LiveServer } from "./server.js";

const run = promisify(execFile);

const utterance = (trigger: string) => (n: Notification) =>
  n.kind === "utterance" && n.trigger === trigger;
const htmlWith = (piece: string) => (n: Notification) =>
  n.kind === "html" && n.document.includes(piece);
const snapshotIds = (ids: number[]) => (n: Notification) =>
  n.kind === "snapshot" && n.layout.brackets.map((b) => b.id).join() === ids.join();

// Every caption the scripted session must produce, frozen from the engine.
const EXPECTED_CAPTIONS = [
  "Image bracket placed. Location: columns 4 to 7, rows 3 to 5. Size: 4 columns by 3 rows.",
  "Image bracket resized. Location: columns 4 to 9, rows 3 to 7. Size: 6 columns by 5 rows.",
  "Image bracket resized. Location: columns 4 to 9, rows 3 to 7. Size: 6 columns by 5 rows.",
  "1 brackets on the board. Image bracket placed. Location: columns 4 to 9, rows 3 to 7. Size: 6 columns by 5 rows.",
  "Warning: Text bracket not recognized. Check corner at column 5, row 12.",
  "Text bracket placed. Location: columns 2 to 5, rows 9 to 11. Size: 4 columns by 3 rows.",
  "Image bracket removed.",
  "Text bracket placed. Location: columns 2 to 5, rows 9 to 11. Size: 4 columns by 3 rows.",
];

const FINAL_LAYOUT_JSON =
  '{"canvas":{"width":1560,"height":2080},"brackets":[{"id":2,"type":"text","top":8,"left":1,"bottom":10,"right":4,"px":{"x":130,"y":1040,"width":520,"height":390}}]}';

describe("scripted live session", () => {
  let tmp: string;
  let server: LiveServer;
  let session: UiSession;
  let transport: TcpTransport;
  const tracePath = () => path.join(tmp, "ui-session.jsonl");

  beforeAll(async () => {
    tmp = await fs.mkdtemp(path.join(os.tmpdir(), "vbui-"));
    server = await startServer(tracePath());
    transport = new TcpTransport(server.host, server.port);
    session = new UiSession(transport);
    await new Promise<void>((ok) => transport.onOpen(() => ok()));
  });

  afterAll(async () => {
    transport.close();
    await server.stop();
    await fs.rm(tmp, { recursive: true, force: true });
  });

  it("drives place, resize, buttons, a misalignment fix and removal", async () => {
    // joining clients are greeted with the current page before broadcasts
    await session.waitSince(0, (n) => n.kind === "html", 10000);
    expect(session.snapshot?.brackets).toEqual([]);

    let mark = session.mark();
    const image = session.placeBracket("image", { top: 2, left: 3, bottom: 4, right: 6 });
    await session.waitSince(mark, utterance("bracket_placed"), 10000);
    await session.waitSince(mark, snapshotIds([1]), 10000);
    await session.waitSince(mark, htmlWith('data-span="2,3,4,6"'), 10000);
    expect(image.serverId).toBe(1);

    mark = session.mark();
    session.dragResize(image, "bottomRight", [6, 8]);
    await session.waitSince(mark, utterance("bracket_resized"), 10000);
    await session.waitSince(mark, htmlWith('data-span="2,3,6,8"'), 10000);

    mark = session.mark();
    session.pressButton("repeat_last");
    await session.waitSince(mark, utterance("repeat_last"), 10000);

    mark = session.mark();
    session.pressButton("read_all");
    await session.waitSince(mark, utterance("read_all"), 10000);

    // sloppy text placement: bottom-right corner lands one row too low
    mark = session.mark();
    session.dropCorner("text", [8, 1]);
    session.dropCorner("text", [8, 4]);
    session.dropCorner("text", [10, 1]);
    session.dropCorner("text", [11, 4]);
    await session.waitSince(mark, utterance("misalignment_warning"), 15000);

    mark = session.mark();
    session.liftCorner([11, 4]);
    session.dropCorner("text", [10, 4]);
    await session.waitSince(mark, utterance("bracket_placed"), 10000);
    await session.waitSince(mark, htmlWith('data-span="8,1,10,4"'), 10000);
    const text = session.brackets().find((b) => b.type === "text");
    expect(text?.serverId).toBe(2);

    mark = session.mark();
    session.removeBracket(image);
    await session.waitSince(mark, utterance("bracket_removed"), 10000);
    await session.waitSince(mark, snapshotIds([2]), 10000);

    // a button reply is queued behind any pending broadcast, so once it
    // arrives the caption log is complete
    mark = session.mark();
    session.pressButton("repeat_last");
    await session.waitSince(mark, utterance("repeat_last"), 10000);

    expect(session.captions.map((c) => c.text)).toEqual(EXPECTED_CAPTIONS);
    expect(session.snapshotJson).toBe(FINAL_LAYOUT_JSON);
    expect(session.html).toContain('id="bracket-2" data-type="text" data-span="8,1,10,4"');
    expect(session.html).toContain("left:130px;top:1040px;width:520px;height:390px");
    expect(session.html).not.toContain('id="bracket-1"');
    expect(session.brackets().map((b) => b.serverId)).toEqual([2]);
  });

  it("keeps captions inside the latency budget and the 170 wpm estimate", () => {
    expect(session.captions.length).toBeGreaterThan(0);
    for (const c of session.captions) {
      expect(c.latencyMs).toBeGreaterThanOrEqual(0);
      expect(c.latencyMs).toBeLessThanOrEqual(200);
      const words = c.text.split(/\s+/).filter((w) => w.length > 0).length;
      expect(c.estDurationS).toBeCloseTo((words / 170) * 60, 12);
    }
    const fromLog = session.log.filter((n) => n.kind === "utterance").map((n) => n.text);
    expect(session.captions.map((c) => c.text)).toEqual(fromLog);
  });

  it("replays the UI-emitted trace to the same snapshot and transcript", async () => {
    const jsonOut = path.join(tmp, "replay.json");
    const transcriptOut = path.join(tmp, "replay.txt");
    const { stdout } = await run(
      "python3",
      ["-m", "bracketboard.cli", "replay", tracePath(), "--json", jsonOut, "--transcript", transcriptOut],
      { cwd: REPO_ROOT },
    );
    expect(stdout).toMatch(/replayed to tick \d+/);

    const replayedLayout = await fs.readFile(jsonOut, "utf8");
    expect(replayedLayout).toBe(FINAL_LAYOUT_JSON + "\n");
    expect(replayedLayout.trimEnd()).toBe(session.snapshotJson);

    const transcript = await fs.readFile(transcriptOut, "utf8");
    expect(transcript).toBe(EXPECTED_CAPTIONS.map((t) => t + "\n").join(""));
  });
});
