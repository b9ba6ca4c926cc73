import { VariantApi } from "./api";
import { App } from "./app";
import { renderApp } from "./render";

const baseUrl = new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8712";

const app = new App(new VariantApi(baseUrl));
app.grid.addRow();

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
renderApp(root, app);
