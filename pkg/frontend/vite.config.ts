/// <reference types="vitest/config" />
import { defineConfig } from 'vite';

// The cockpit talks only to the tanklab service; in dev every /api call is
// proxied to a locally running `tanklab serve`.
export default defineConfig({
  server: {
    proxy: {
      '/api': {
        target: 'http://127.0.0.1:8000',
        changeOrigin: true,
        rewrite: (path) => path.replace(/^\/api/, ''),
      },
    },
  },
  test: {
    environment: 'happy-dom',
  },
});
