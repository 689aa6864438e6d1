// Wire types mirroring the workbench service's JSON documents exactly.

export type RewardKind = "scalar" | "binary";
export type LeafStatus = "correct" | "incorrect" | "open";
export type EventKind = "advance" | "backtrack" | "reflect";
export type Verdict = "correct" | "incorrect";

export interface RewardDoc {
  kind: RewardKind;
  value: number;
  rationale: string | null;
  provider_id: string;
}

export interface NodeDoc {
  node_id: string;
  parent_id: string | null;
  step_text: string;
  depth: number;
  reward: RewardDoc | null;
  terminal: boolean;
  leaf_status: LeafStatus;
  on_correct_path: boolean;
  pruned: boolean;
  annotation_overrides: string[];
  // Injected by GET /runs/{id}/tree: annotation-resolved reward.
  effective_reward?: RewardDoc | null;
}

export interface TreeDoc {
  problem: { id: string; statement: string; gold_answer: string; source: string; difficulty_tag: string | null };
  params: { width_w: number; max_depth_D: number; beam_K: number; prune_mode: string; seed: number };
  root_id: string;
  policy_call_count: number;
  provenance: string;
  nodes: NodeDoc[];
}

export interface EventDoc {
  kind: EventKind;
  node_id: string;
  text: string | null;
}

export interface TraversalDoc {
  tree_ref: string;
  kind: "shortcut" | "journey";
  events: EventDoc[];
  trial_budget_K: number;
  seed: number;
}

export interface StatsDoc {
  token_count: number;
  line_count: number;
  avg_words_per_line: number;
  keyword_counts: Record<string, number>;
  reflection_marker_count: number;
  tokenizer_scheme: string;
}

export interface ThoughtDoc {
  traversal_ref: string;
  draft_text: string;
  polished_text: string | null;
  step_anchors: Array<[number, string]>;
  preservation_score: number;
  stats: StatsDoc;
}

export interface NamedDoc<T> {
  name: string;
  document: T;
}

export interface RunSummaryDoc {
  run_id: string;
  problem_id: string;
  iteration_tag: string;
  has_correct_leaf: boolean;
  thought_variants: string[];
  node_count: number;
  annotation_count: number;
}

export interface RunListDoc {
  runs: RunSummaryDoc[];
  warnings: Array<Record<string, string>>;
}

export interface AnnotationRecordDoc {
  id: string;
  node_id: string;
  verdict: Verdict;
  comment: string;
  author: string;
  timestamp: string;
}

export interface RederiveResponseDoc {
  preview_id: string;
  traversal: TraversalDoc;
  thought: ThoughtDoc;
  paths: { traversal: string; thought: string };
}

export const ANNOTATION_PROVIDER_ID = "human-annotation";
