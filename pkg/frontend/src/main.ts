import { ApiClient } from "./api.js";
import { createApp } from "./app.js";

function bootstrap(): void {
  const serverInput = document.getElementById("server-input") as HTMLInputElement;
  const base = serverInput.value.replace(/\/+$/, "");
  createApp(document, { api: new ApiClient(base) });
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", bootstrap);
} else {
  bootstrap();
}
