/**
 * Client-side guideline checks, mirroring the ones the annotation service
 * runs on save so annotators see the same messages before submitting.
 */

import { sortedLinks } from "./links.js";

/** A token linked this many times or more is flagged as suspicious. */
const MANY_LINKS = 3;

/**
 * Render a string the way the service does in its warning messages:
 * single-quoted unless the text contains a single quote and no double quote.
 */
export function quoted(text: string): string {
  const useDouble = text.includes("'") && !text.includes('"');
  const quote = useDouble ? '"' : "'";
  let body = "";
  for (const ch of text) {
    if (ch === "\\") {
      body += "\\\\";
    } else if (ch === quote) {
      body += "\\" + ch;
    } else if (ch === "\n") {
      body += "\\n";
    } else if (ch === "\t") {
      body += "\\t";
    } else if (ch === "\r") {
      body += "\\r";
    } else {
      body += ch;
    }
  }
  return quote + body + quote;
}

function byCodeUnits(a: string, b: string): number {
  return a < b ? -1 : a > b ? 1 : 0;
}

/**
 * Guideline warnings for a candidate annotation, in the same order and
 * wording the service reports: over-linked source tokens, over-linked
 * target tokens, a fully unaligned sentence, then repeated surface pairs.
 */
export function computeWarnings(
  srcTokens: string[],
  tgtTokens: string[],
  links: Set<string>
): string[] {
  const pairs = sortedLinks(links);
  const srcCounts = new Map<number, number>();
  const tgtCounts = new Map<number, number>();
  const surfaceCounts = new Map<string, number>();
  const surfaceTokens = new Map<string, [string, string]>();

  for (const [i, j] of pairs) {
    if (i >= srcTokens.length || j >= tgtTokens.length) {
      throw new RangeError(`link ${i}-${j} is out of range`);
    }
    srcCounts.set(i, (srcCounts.get(i) ?? 0) + 1);
    tgtCounts.set(j, (tgtCounts.get(j) ?? 0) + 1);
    const surfaceKey = JSON.stringify([srcTokens[i], tgtTokens[j]]);
    surfaceCounts.set(surfaceKey, (surfaceCounts.get(surfaceKey) ?? 0) + 1);
    surfaceTokens.set(surfaceKey, [srcTokens[i], tgtTokens[j]]);
  }

  const warnings: string[] = [];

  for (const i of [...srcCounts.keys()].sort((a, b) => a - b)) {
    const count = srcCounts.get(i)!;
    if (count >= MANY_LINKS) {
      warnings.push(
        `source token ${i} (${quoted(srcTokens[i])}) participates in ${count} links`
      );
    }
  }
  for (const j of [...tgtCounts.keys()].sort((a, b) => a - b)) {
    const count = tgtCounts.get(j)!;
    if (count >= MANY_LINKS) {
      warnings.push(
        `target token ${j} (${quoted(tgtTokens[j])}) participates in ${count} links`
      );
    }
  }

  if (pairs.length === 0) {
    warnings.push("sentence is fully unaligned");
  }

  const surfacePairs = [...surfaceTokens.values()].sort(
    (a, b) => byCodeUnits(a[0], b[0]) || byCodeUnits(a[1], b[1])
  );
  for (const [srcTok, tgtTok] of surfacePairs) {
    const count = surfaceCounts.get(JSON.stringify([srcTok, tgtTok]))!;
    if (count >= 2) {
      warnings.push(
        `token pair (${quoted(srcTok)}, ${quoted(tgtTok)}) is linked ${count} times`
      );
    }
  }

  return warnings;
}
