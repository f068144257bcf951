/** Browser entry point. The API origin defaults to the page's own
 * origin; `?api=http://host:port` points the client elsewhere (e.g. a
 * dev server). No client persistence beyond the in-memory session. */

import { TutorApi } from "./api.js";
import { mount } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
mount(root, new TutorApi(baseUrl));
