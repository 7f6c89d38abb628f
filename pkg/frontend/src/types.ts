/** Shapes exchanged with the annotation service under /v1. */

export type PairStatus = "pending" | "done" | "discarded";

/** One sentence pair as served by GET /v1/pairs/next and /v1/pairs/{id}. */
export type TaskPayload = {
  id: number;
  src_tokens: string[];
  tgt_tokens: string[];
  links: string;
  status: PairStatus;
  version: number;
  note: string;
  warnings: string[];
};

/** Result of PUT /v1/pairs/{id}/links. */
export type SaveResponse = {
  id: number;
  status: PairStatus;
  version: number;
  previous_version: number;
  conflict: boolean;
  warnings: string[];
};

/** Result of GET /v1/progress. */
export type Progress = {
  pending: number;
  done: number;
  discarded: number;
  total: number;
};
