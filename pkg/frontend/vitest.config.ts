import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the loopback suite spawns real telemetry servers
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
