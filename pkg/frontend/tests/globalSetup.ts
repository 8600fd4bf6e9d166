/** Boot a real review service for the UI tests.
 *
 * The tests exercise the UI against the actual Python service (no mocks),
 * so displayed statistics provably come from the service's own math.
 */

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

let server: ChildProcess | undefined;
let dataDir: string | undefined;

const PORT = 8390 + Math.floor(Math.random() * 100);

async function waitForHealth(base: string, attempts = 60): Promise<void> {
  for (let i = 0; i < attempts; i += 1) {
    try {
      const response = await fetch(`${base}/healthz`);
      if (response.ok) {
        return;
      }
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 500));
  }
  throw new Error(`review service did not come up at ${base}`);
}

export async function setup(): Promise<void> {
  dataDir = mkdtempSync(join(tmpdir(), "stopmine-ui-test-"));
  server = spawn(
    "python3",
    ["-m", "stopmine.cli", "serve", "--port", String(PORT), "--data-dir", dataDir],
    { stdio: "ignore" },
  );
  const base = `http://127.0.0.1:${PORT}`;
  await waitForHealth(base);
  process.env.STOPMINE_TEST_BASE = base;
}

export async function teardown(): Promise<void> {
  if (server) {
    server.kill("SIGTERM");
  }
  if (dataDir) {
    rmSync(dataDir, { recursive: true, force: true });
  }
}
