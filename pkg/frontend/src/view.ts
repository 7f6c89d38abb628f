/** DOM rendering for the annotation grid and its side panels. */

import { GridViewModel } from "./model.js";

export type GridHandlers = {
  onToggle: (i: number, j: number) => void;
};

/** Rebuild the alignment grid: source tokens as rows, target tokens as columns. */
export function renderGrid(
  container: HTMLElement,
  model: GridViewModel,
  handlers: GridHandlers
): void {
  container.textContent = "";
  const table = document.createElement("table");
  table.className = "grid";

  const header = document.createElement("tr");
  header.appendChild(document.createElement("th"));
  for (const token of model.tgtTokens) {
    const th = document.createElement("th");
    th.className = "tgt-token";
    th.textContent = token;
    header.appendChild(th);
  }
  table.appendChild(header);

  for (let i = 0; i < model.srcTokens.length; i++) {
    const row = document.createElement("tr");
    const label = document.createElement("th");
    label.className = "src-token";
    label.textContent = model.srcTokens[i];
    row.appendChild(label);
    for (let j = 0; j < model.tgtTokens.length; j++) {
      const cell = document.createElement("td");
      cell.className = "cell";
      if (model.has(i, j)) {
        cell.classList.add("linked");
      }
      if (model.cursor.i === i && model.cursor.j === j) {
        cell.classList.add("cursor");
      }
      cell.dataset.i = String(i);
      cell.dataset.j = String(j);
      cell.addEventListener("click", () => handlers.onToggle(i, j));
      row.appendChild(cell);
    }
    table.appendChild(row);
  }

  container.appendChild(table);
}

/** Show guideline warnings for the current selection, or a quiet all-clear. */
export function renderWarnings(container: HTMLElement, warnings: string[]): void {
  container.textContent = "";
  if (warnings.length === 0) {
    const ok = document.createElement("p");
    ok.className = "all-clear";
    ok.textContent = "no guideline warnings";
    container.appendChild(ok);
    return;
  }
  const list = document.createElement("ul");
  list.className = "warnings";
  for (const warning of warnings) {
    const item = document.createElement("li");
    item.className = "warning";
    item.textContent = warning;
    list.appendChild(item);
  }
  container.appendChild(list);
}

/** One-line status message (saves, conflicts, errors). */
export function renderStatus(container: HTMLElement, text: string, kind = "info"): void {
  container.textContent = text;
  container.className = `status ${kind}`;
}
