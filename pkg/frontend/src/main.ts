/** Page entry point: mount the annotator onto #app and start on the next pair. */

import { ApiClient } from "./api.js";
import { Annotator } from "./app.js";

const root = document.getElementById("app");
if (root !== null) {
  const annotator = new Annotator(root, new ApiClient(""));
  void annotator.start();
}
