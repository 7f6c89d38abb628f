import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { createMockService } from "./mockService.js";

const PAIRS = [
  { src: ["Der", "Hund"], tgt: ["Il", "chaun"] },
  { src: ["Die", "Katze"], tgt: ["La", "giatta"] },
];

describe("ApiClient", () => {
  it("fetches the next pending pair", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    const task = await api.nextPair();
    expect(task?.id).toBe(0);
    expect(task?.src_tokens).toEqual(["Der", "Hund"]);
    expect(task?.version).toBe(0);
    expect(task?.warnings).toEqual(["sentence is fully unaligned"]);
  });

  it("returns null from nextPair once nothing is pending", async () => {
    const service = createMockService([PAIRS[0]]);
    const api = new ApiClient("", service.fetchFn);
    await api.saveLinks(0, "0-0 1-1", 0);
    expect(await api.nextPair()).toBeNull();
  });

  it("raises ApiError with the service detail for an unknown pair", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    await expect(api.getPair(9)).rejects.toThrow("no pair with id 9");
    await expect(api.getPair(9)).rejects.toBeInstanceOf(ApiError);
  });

  it("saves links and reports the new version", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    const result = await api.saveLinks(0, "0-0 1-1", 0);
    expect(result.conflict).toBe(false);
    expect(result.version).toBe(1);
    expect(result.previous_version).toBe(0);
    const reread = await api.getPair(0);
    expect(reread.links).toBe("0-0 1-1");
    expect(reread.status).toBe("done");
  });

  it("flags a save from a stale base version as a conflict", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    await api.saveLinks(0, "0-0", 0);
    const second = await api.saveLinks(0, "0-1", 0);
    expect(second.conflict).toBe(true);
    expect(second.previous_version).toBe(1);
    expect(second.version).toBe(2);
    const current = await api.getPair(0);
    expect(current.links).toBe("0-1");
  });

  it("rejects out-of-range links with a 422", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    const attempt = api.saveLinks(0, "0-5", 0);
    await expect(attempt).rejects.toBeInstanceOf(ApiError);
    await expect(api.saveLinks(0, "0-5", 0)).rejects.toMatchObject({ status: 422 });
  });

  it("discards with a reason and refuses an empty one", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    await expect(api.discard(0, "  ")).rejects.toMatchObject({ status: 422 });
    const discarded = await api.discard(0, "mistranslation");
    expect(discarded.status).toBe("discarded");
    expect(discarded.note).toBe("mistranslation");
  });

  it("reports progress counts", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    await api.saveLinks(0, "0-0", 0);
    expect(await api.progress()).toEqual({
      pending: 1,
      done: 1,
      discarded: 0,
      total: 2,
    });
  });

  it("exports the finished pairs as tab-separated text", async () => {
    const service = createMockService(PAIRS);
    const api = new ApiClient("", service.fetchFn);
    await api.saveLinks(1, "0-0 1-1", 0);
    expect(await api.exportGold()).toBe("1\tDie Katze\tLa giatta\t0-0 1-1\n");
  });
});
