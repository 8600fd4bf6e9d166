import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        // the tests talk to a real review service on a random local port;
        // in production the UI is served same-origin by that service
        settings: { fetch: { disableSameOriginPolicy: true } },
      },
    },
    globalSetup: "./tests/globalSetup.ts",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 60000,
    fileParallelism: false,
  },
});
