import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // integration tests run a live 20 Hz board service, and the
    // misalignment window alone is two seconds of wall clock
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
