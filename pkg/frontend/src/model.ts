/**
 * View model for one sentence pair being annotated: the selected link set,
 * a keyboard cursor over the grid, and derived warnings.
 */

import {
  Link,
  linkKey,
  parseLinks,
  serializeLinks,
  sortedLinks,
  toggleLink,
} from "./links.js";
import { computeWarnings } from "./warnings.js";
import { TaskPayload } from "./types.js";

export type Cursor = { i: number; j: number };

export class GridViewModel {
  readonly id: number;
  readonly srcTokens: string[];
  readonly tgtTokens: string[];
  readonly status: string;
  readonly note: string;
  /** Server version this annotation is based on; sent back on save. */
  readonly baseVersion: number;

  cursor: Cursor = { i: 0, j: 0 };
  dirty = false;

  private selected: Set<string>;

  constructor(task: TaskPayload) {
    this.id = task.id;
    this.srcTokens = [...task.src_tokens];
    this.tgtTokens = [...task.tgt_tokens];
    this.status = task.status;
    this.note = task.note;
    this.baseVersion = task.version;
    this.selected = parseLinks(task.links);
    for (const [i, j] of sortedLinks(this.selected)) {
      this.checkBounds(i, j);
    }
  }

  private checkBounds(i: number, j: number): void {
    if (i < 0 || i >= this.srcTokens.length || j < 0 || j >= this.tgtTokens.length) {
      throw new RangeError(
        `link ${i}-${j} is out of range for ${this.srcTokens.length} source ` +
          `and ${this.tgtTokens.length} target tokens`
      );
    }
  }

  get links(): Link[] {
    return sortedLinks(this.selected);
  }

  get pharaoh(): string {
    return serializeLinks(this.selected);
  }

  get warnings(): string[] {
    return computeWarnings(this.srcTokens, this.tgtTokens, this.selected);
  }

  has(i: number, j: number): boolean {
    return this.selected.has(linkKey(i, j));
  }

  toggle(i: number, j: number): void {
    this.checkBounds(i, j);
    toggleLink(this.selected, i, j);
    this.cursor = { i, j };
    this.dirty = true;
  }

  moveCursor(di: number, dj: number): void {
    const clamp = (value: number, limit: number) =>
      Math.min(Math.max(value, 0), limit - 1);
    this.cursor = {
      i: clamp(this.cursor.i + di, this.srcTokens.length),
      j: clamp(this.cursor.j + dj, this.tgtTokens.length),
    };
  }

  toggleAtCursor(): void {
    this.toggle(this.cursor.i, this.cursor.j);
  }
}
