/**
 * Alignment links as (source index, target index) pairs, stored in a Set
 * keyed by "i-j" strings so membership tests and toggling stay O(1).
 */

export type Link = readonly [number, number];

const ITEM_PATTERN = /^(\d+)-(\d+)$/;

export function linkKey(i: number, j: number): string {
  return `${i}-${j}`;
}

/** Parse "0-0 1-2 3-1" into a link set.  Blank input gives an empty set. */
export function parseLinks(text: string): Set<string> {
  const links = new Set<string>();
  for (const item of text.trim().split(/\s+/)) {
    if (item === "") {
      continue;
    }
    const match = ITEM_PATTERN.exec(item);
    if (match === null) {
      throw new Error(`malformed alignment item '${item}'`);
    }
    links.add(linkKey(parseInt(match[1], 10), parseInt(match[2], 10)));
  }
  return links;
}

/** The links of a set as pairs, sorted by source index then target index. */
export function sortedLinks(links: Set<string>): Link[] {
  const pairs: Link[] = [];
  for (const key of links) {
    const [i, j] = key.split("-");
    pairs.push([parseInt(i, 10), parseInt(j, 10)]);
  }
  pairs.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  return pairs;
}

/** Serialize a link set back to the "0-0 1-2" wire format, sorted. */
export function serializeLinks(links: Set<string>): string {
  return sortedLinks(links)
    .map(([i, j]) => `${i}-${j}`)
    .join(" ");
}

/** Add the link if absent, remove it if present. */
export function toggleLink(links: Set<string>, i: number, j: number): void {
  const key = linkKey(i, j);
  if (links.has(key)) {
    links.delete(key);
  } else {
    links.add(key);
  }
}
