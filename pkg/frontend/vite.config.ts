/// <reference types="vitest/config" />
import { defineConfig } from "vite";

export default defineConfig({
  build: {
    outDir: "dist",
    // single small app, no need for vendor chunking
    chunkSizeWarningLimit: 512,
  },
  server: {
    // during development the API lives on the python service
    proxy: {
      "/api": "http://127.0.0.1:8080",
      "/help": "http://127.0.0.1:8080",
      "/healthz": "http://127.0.0.1:8080",
    },
  },
  test: {
    environment: "happy-dom",
    globalSetup: "./tests/global-setup.ts",
    testTimeout: 60_000,
    hookTimeout: 60_000,
    // the live-backend flows share one server; keep files sequential
    fileParallelism: false,
  },
});
