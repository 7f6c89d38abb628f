/**
 * Full scripted annotation sessions against the mock service: the reference
 * one-to-two link pattern is created through real DOM clicks, saved over the
 * wire format, and read back identically after a reload.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Annotator } from "../src/app.js";
import { parseLinks } from "../src/links.js";
import { GridViewModel } from "../src/model.js";
import { createMockService, MockService } from "./mockService.js";

const REF_SRC = ["Der", "Kanton", "war", "2003", "Gastkanton"];
const REF_TGT = ["Il", "chantun", "è", "stà", "l'", "onn", "2003", "chantun", "ospitant"];
const REF_LINKS: ReadonlyArray<readonly [number, number]> = [
  [0, 0],
  [1, 1],
  [2, 3],
  [3, 6],
  [4, 7],
  [4, 8],
];
const REF_PHARAOH = "0-0 1-1 2-3 3-6 4-7 4-8";

function newRoot(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById("app")!;
}

function cellAt(root: HTMLElement, i: number, j: number): HTMLElement {
  const cell = root.querySelector(`td[data-i="${i}"][data-j="${j}"]`);
  if (cell === null) {
    throw new Error(`no grid cell at ${i}-${j}`);
  }
  return cell as HTMLElement;
}

function button(root: HTMLElement, role: string): HTMLButtonElement {
  return root.querySelector(`button[data-role="${role}"]`) as HTMLButtonElement;
}

function statusText(root: HTMLElement): string {
  return root.querySelector(".status")?.textContent ?? "";
}

describe("annotation session", () => {
  let service: MockService;
  let api: ApiClient;
  let root: HTMLElement;
  let annotator: Annotator;

  beforeEach(async () => {
    service = createMockService([
      { src: REF_SRC, tgt: REF_TGT },
      { src: ["Hallo"], tgt: ["Allegra"] },
    ]);
    api = new ApiClient("", service.fetchFn);
    root = newRoot();
    annotator = new Annotator(root, api);
    await annotator.start();
  });

  it("renders the grid with one row per source and one column per target token", () => {
    expect(root.querySelectorAll("tr").length).toBe(REF_SRC.length + 1);
    expect(root.querySelectorAll("th.tgt-token").length).toBe(REF_TGT.length);
    expect(root.querySelectorAll("td.cell").length).toBe(REF_SRC.length * REF_TGT.length);
    expect(root.querySelectorAll("li.warning")[0]?.textContent).toBe(
      "sentence is fully unaligned"
    );
  });

  it("creates the reference pattern by clicking, saves, reloads, and gets the identical link set back", async () => {
    for (const [i, j] of REF_LINKS) {
      cellAt(root, i, j).click();
    }

    expect(root.querySelectorAll("td.cell.linked").length).toBe(REF_LINKS.length);
    expect(root.querySelectorAll("li.warning").length).toBe(0);
    expect(annotator.model?.pharaoh).toBe(REF_PHARAOH);

    button(root, "save").click();
    await Promise.resolve();
    await new Promise((resolve) => setTimeout(resolve, 0));

    expect(annotator.model?.id).toBe(1);

    const reloaded = await api.getPair(0);
    expect(reloaded.status).toBe("done");
    expect(reloaded.links).toBe(REF_PHARAOH);
    expect(parseLinks(reloaded.links)).toEqual(
      new Set(REF_LINKS.map(([i, j]) => `${i}-${j}`))
    );

    const redisplayed = new GridViewModel(reloaded);
    expect(redisplayed.links).toEqual(REF_LINKS.map(([i, j]) => [i, j]));
  });

  it("unlinks a cell on a second click", () => {
    cellAt(root, 2, 3).click();
    expect(cellAt(root, 2, 3).classList.contains("linked")).toBe(true);
    cellAt(root, 2, 3).click();
    expect(cellAt(root, 2, 3).classList.contains("linked")).toBe(false);
    expect(annotator.model?.pharaoh).toBe("");
  });

  it("supports arrow-key navigation and space to toggle", () => {
    annotator.handleKey(new KeyboardEvent("keydown", { key: "ArrowDown" }));
    annotator.handleKey(new KeyboardEvent("keydown", { key: "ArrowRight" }));
    annotator.handleKey(new KeyboardEvent("keydown", { key: " " }));
    expect(annotator.model?.pharaoh).toBe("1-1");
    expect(cellAt(root, 1, 1).classList.contains("linked")).toBe(true);
    expect(cellAt(root, 1, 1).classList.contains("cursor")).toBe(true);

    annotator.handleKey(new KeyboardEvent("keydown", { key: "ArrowUp" }));
    annotator.handleKey(new KeyboardEvent("keydown", { key: "ArrowLeft" }));
    annotator.handleKey(new KeyboardEvent("keydown", { key: "Enter" }));
    expect(annotator.model?.pharaoh).toBe("0-0 1-1");
  });

  it("reaches the grid through document-level key events", () => {
    document.dispatchEvent(new KeyboardEvent("keydown", { key: " ", bubbles: true }));
    expect(annotator.model?.pharaoh).toBe("0-0");
  });

  it("shows live guideline warnings while editing", () => {
    for (const j of [0, 1, 2]) {
      cellAt(root, 0, j).click();
    }
    const warnings = [...root.querySelectorAll("li.warning")].map(
      (item) => item.textContent
    );
    expect(warnings).toEqual(["source token 0 ('Der') participates in 3 links"]);
  });

  it("reloads the server version when a save conflicts", async () => {
    cellAt(root, 0, 0).click();
    await api.saveLinks(0, "1-1", 0);

    await annotator.save();

    expect(statusText(root)).toContain("changed by someone else");
    expect(annotator.model?.id).toBe(0);
    expect(annotator.model?.baseVersion).toBe(2);
    expect(annotator.model?.pharaoh).toBe("0-0");
    expect(cellAt(root, 0, 0).classList.contains("linked")).toBe(true);
  });

  it("blocks discarding without a reason, client side", async () => {
    const requestsBefore = service.requests.length;
    button(root, "discard").click();
    await Promise.resolve();
    expect(statusText(root)).toBe("a discard reason is required");
    expect(annotator.model?.id).toBe(0);
    expect(service.requests.length).toBe(requestsBefore);
  });

  it("discards with a reason and advances to the next pair", async () => {
    const reason = root.querySelector('input[data-role="reason"]') as HTMLInputElement;
    reason.value = "not a translation";
    await annotator.discard();
    expect(service.tasks[0].status).toBe("discarded");
    expect(service.tasks[0].note).toBe("not a translation");
    expect(annotator.model?.id).toBe(1);
  });

  it("announces completion once nothing is pending", async () => {
    await annotator.save();
    await annotator.save();
    expect(annotator.model).toBeNull();
    expect(statusText(root)).toBe("all pairs are annotated");
    expect(root.querySelectorAll("td.cell").length).toBe(0);
  });

  it("keeps local edits when the service rejects a save", async () => {
    cellAt(root, 4, 8).click();
    service.tasks[0].srcTokens = ["Der"];
    await annotator.save();
    expect(statusText(root)).toContain("save failed");
    expect(statusText(root)).toContain("out of range");
    expect(annotator.model?.pharaoh).toBe("4-8");
    expect(service.tasks[0].status).toBe("pending");
  });
});
