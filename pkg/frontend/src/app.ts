/**
 * Annotator controller: binds the grid view model to the DOM and the
 * annotation service, one sentence pair at a time.
 */

import { ApiClient, ApiError } from "./api.js";
import { GridViewModel } from "./model.js";
import { TaskPayload } from "./types.js";
import { renderGrid, renderStatus, renderWarnings } from "./view.js";

const KEY_MOVES: Record<string, [number, number]> = {
  ArrowUp: [-1, 0],
  ArrowDown: [1, 0],
  ArrowLeft: [0, -1],
  ArrowRight: [0, 1],
};

export class Annotator {
  model: GridViewModel | null = null;

  private readonly statusEl: HTMLElement;
  private readonly metaEl: HTMLElement;
  private readonly gridEl: HTMLElement;
  private readonly warningsEl: HTMLElement;
  private readonly reasonInput: HTMLInputElement;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient
  ) {
    root.textContent = "";
    root.className = "annotator";

    this.statusEl = document.createElement("div");
    this.statusEl.className = "status info";
    this.metaEl = document.createElement("div");
    this.metaEl.className = "meta";
    this.gridEl = document.createElement("div");
    this.gridEl.className = "grid-holder";
    this.warningsEl = document.createElement("div");
    this.warningsEl.className = "warnings-holder";

    const controls = document.createElement("div");
    controls.className = "controls";
    const saveButton = document.createElement("button");
    saveButton.dataset.role = "save";
    saveButton.textContent = "save";
    saveButton.addEventListener("click", () => void this.save());
    this.reasonInput = document.createElement("input");
    this.reasonInput.dataset.role = "reason";
    this.reasonInput.placeholder = "reason for discarding";
    const discardButton = document.createElement("button");
    discardButton.dataset.role = "discard";
    discardButton.textContent = "discard";
    discardButton.addEventListener("click", () => void this.discard());
    controls.append(saveButton, this.reasonInput, discardButton);

    root.append(this.statusEl, this.metaEl, this.gridEl, this.warningsEl, controls);
    document.addEventListener("keydown", (event) => this.handleKey(event));
  }

  /** Load the first pending pair and render it. */
  async start(): Promise<void> {
    await this.loadNext();
  }

  /** Arrow keys move the cursor, space or enter toggles the link under it. */
  handleKey(event: KeyboardEvent): void {
    if (this.model === null || event.target === this.reasonInput) {
      return;
    }
    const move = KEY_MOVES[event.key];
    if (move !== undefined) {
      this.model.moveCursor(move[0], move[1]);
      event.preventDefault();
      this.render();
    } else if (event.key === " " || event.key === "Enter") {
      this.model.toggleAtCursor();
      event.preventDefault();
      this.render();
    }
  }

  async save(): Promise<void> {
    if (this.model === null) {
      return;
    }
    const saving = this.model;
    try {
      const result = await this.api.saveLinks(
        saving.id,
        saving.pharaoh,
        saving.baseVersion
      );
      if (result.conflict) {
        renderStatus(
          this.statusEl,
          `pair ${saving.id} was changed by someone else; showing the saved version`,
          "warn"
        );
        this.show(await this.api.getPair(saving.id));
        return;
      }
      renderStatus(
        this.statusEl,
        `saved pair ${saving.id} (version ${result.version})`
      );
      await this.loadNext(false);
    } catch (error) {
      if (error instanceof ApiError) {
        renderStatus(this.statusEl, `save failed: ${error.message}`, "error");
        return;
      }
      throw error;
    }
  }

  async discard(): Promise<void> {
    if (this.model === null) {
      return;
    }
    const reason = this.reasonInput.value.trim();
    if (reason === "") {
      renderStatus(this.statusEl, "a discard reason is required", "error");
      return;
    }
    try {
      await this.api.discard(this.model.id, reason);
      renderStatus(this.statusEl, `discarded pair ${this.model.id}`);
      this.reasonInput.value = "";
      await this.loadNext(false);
    } catch (error) {
      if (error instanceof ApiError) {
        renderStatus(this.statusEl, `discard failed: ${error.message}`, "error");
        return;
      }
      throw error;
    }
  }

  private async loadNext(announce = true): Promise<void> {
    const task = await this.api.nextPair();
    if (task === null) {
      this.model = null;
      this.gridEl.textContent = "";
      this.warningsEl.textContent = "";
      this.metaEl.textContent = "";
      renderStatus(this.statusEl, "all pairs are annotated");
      return;
    }
    if (announce) {
      renderStatus(this.statusEl, `annotating pair ${task.id}`);
    }
    this.show(task);
  }

  private show(task: TaskPayload): void {
    this.model = new GridViewModel(task);
    this.render();
  }

  private render(): void {
    if (this.model === null) {
      return;
    }
    renderGrid(this.gridEl, this.model, {
      onToggle: (i, j) => {
        this.model?.toggle(i, j);
        this.render();
      },
    });
    renderWarnings(this.warningsEl, this.model.warnings);
    this.metaEl.textContent = `pair ${this.model.id} (version ${this.model.baseVersion})`;
    void this.updateProgress();
  }

  private async updateProgress(): Promise<void> {
    if (this.model === null) {
      return;
    }
    try {
      const progress = await this.api.progress();
      this.metaEl.textContent =
        `pair ${this.model.id} (version ${this.model.baseVersion}) — ` +
        `${progress.done} done, ${progress.pending} pending, ` +
        `${progress.discarded} discarded of ${progress.total}`;
    } catch {
      // progress is decoration; leave the pair label as is
    }
  }
}
