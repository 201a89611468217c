/** Shared types mirroring the session service's JSON schema. */

/** The twelve role columns, in fixed table order. */
export const ROLE_COLUMNS = [
  "subject",
  "attrib_sub",
  "predicate",
  "dir_obj",
  "attribute_do",
  "indir_obj",
  "attribute_io",
  "when",
  "where",
  "how",
  "goal",
  "why",
] as const;

export type RoleColumn = (typeof ROLE_COLUMNS)[number];

export interface StoryRecord {
  seq: number;
  raw: string;
  predicative: boolean;
  subject?: string;
  attrib_sub?: string;
  predicate?: string;
  dir_obj?: string;
  attribute_do?: string;
  indir_obj?: string;
  attribute_io?: string;
  when?: string;
  where?: string;
  how?: string;
  goal?: string;
  why?: string;
}

export interface ClarifyOption {
  n: number;
  role: string;
  label: string;
}

export interface Clarification {
  id: string;
  prompt: string;
  options: ClarifyOption[];
}

export type ServiceResult =
  | { kind: "recorded"; record: StoryRecord }
  | { kind: "answers"; answers: string[] }
  | { kind: "clarify"; clarification: Clarification }
  | { kind: "error"; message: string; code?: number };

export interface ChatItem {
  kind: "user" | "answer" | "clarify-prompt" | "system-ack" | "error";
  text: string;
  options?: ClarifyOption[];
  clarificationId?: string;
  /** set after the user clicked one of the options; disables the prompt */
  chosen?: number;
  record?: StoryRecord;
}
