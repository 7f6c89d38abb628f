import { describe, expect, it } from "vitest";

import {
  linkKey,
  parseLinks,
  serializeLinks,
  sortedLinks,
  toggleLink,
} from "../src/links.js";

describe("parseLinks", () => {
  it("reads space-separated i-j items", () => {
    const links = parseLinks("0-0 1-2 3-1");
    expect(links).toEqual(new Set(["0-0", "1-2", "3-1"]));
  });

  it("treats blank input as an empty set", () => {
    expect(parseLinks("").size).toBe(0);
    expect(parseLinks("   ").size).toBe(0);
  });

  it("collapses duplicate items", () => {
    expect(parseLinks("1-1 1-1").size).toBe(1);
  });

  it("rejects malformed items", () => {
    expect(() => parseLinks("1-2 x-3")).toThrow("malformed alignment item 'x-3'");
    expect(() => parseLinks("1")).toThrow("malformed alignment item '1'");
    expect(() => parseLinks("1-2-3")).toThrow("malformed alignment item '1-2-3'");
  });
});

describe("serializeLinks", () => {
  it("round-trips through parseLinks", () => {
    const text = "0-0 1-2 2-1 4-4";
    expect(serializeLinks(parseLinks(text))).toBe(text);
  });

  it("sorts by source index then target index", () => {
    const links = parseLinks("3-0 0-2 0-1 10-0 2-9");
    expect(serializeLinks(links)).toBe("0-1 0-2 2-9 3-0 10-0");
  });

  it("serializes an empty set to an empty string", () => {
    expect(serializeLinks(new Set())).toBe("");
  });
});

describe("sortedLinks", () => {
  it("orders pairs numerically, not lexically", () => {
    const links = parseLinks("10-0 2-0 1-10 1-2");
    expect(sortedLinks(links)).toEqual([
      [1, 2],
      [1, 10],
      [2, 0],
      [10, 0],
    ]);
  });
});

describe("toggleLink", () => {
  it("adds an absent link and removes a present one", () => {
    const links = new Set<string>();
    toggleLink(links, 2, 3);
    expect(links.has(linkKey(2, 3))).toBe(true);
    toggleLink(links, 2, 3);
    expect(links.has(linkKey(2, 3))).toBe(false);
  });

  it("is an involution from any starting state", () => {
    const links = parseLinks("0-0 1-1 2-2");
    const before = serializeLinks(links);
    for (const [i, j] of [
      [0, 0],
      [1, 5],
      [7, 7],
    ] as const) {
      toggleLink(links, i, j);
      toggleLink(links, i, j);
    }
    expect(serializeLinks(links)).toBe(before);
  });
});
