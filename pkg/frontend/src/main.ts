import { Client } from "./api.js";
import { Workbench } from "./app.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
const workbench = new Workbench(root, new Client(""));
void workbench.init();
