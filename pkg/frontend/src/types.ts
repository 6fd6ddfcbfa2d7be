/**
 * Wire types for the gateway what-if service.  These mirror the JSON bodies
 * of the argumentation-graph export and the mutation responses.
 */

export type ActType = "proposal" | "critique" | "refinement";

export type EdgeOrigin = "P1" | "P2" | "P3" | "semantic" | "arbitration" | "manual";

export interface ArgumentNode {
  id: string;
  act_type: ActType;
  content: string;
  agent: string;
  quality: string;
  rationale: string;
  source: { session: string; round: number; turn_index: number };
}

export interface AttackEdge {
  attacker: string;
  target: string;
  origin: EdgeOrigin;
  confidence: number;
  rationale: string;
}

export interface SelectedExtension {
  semantics: "grounded" | "preferred";
  members: string[];
}

export interface JournalEntry {
  timestamp: number;
  operation: string;
  payload: Record<string, unknown>;
}

export interface SnapshotBody {
  arguments: ArgumentNode[];
  attacks: AttackEdge[];
  supports: { supporter: string; supported: string }[];
  grounded_extension: string[];
  preferred_extensions: string[][];
  selected_extension: SelectedExtension;
  accepted_requirements: { argument_id: string; content: string }[];
  statuses: Record<string, "in" | "out" | "undec">;
  defense_chains: Record<
    string,
    { attacker: string; defender: string | null; origin: string }[]
  >;
  config: Record<string, unknown>;
  journal: JournalEntry[];
  snapshot: { id: string; parent: string | null; semantics: string };
}

export interface SnapshotSummary {
  id: string;
  parent: string | null;
  semantics: string;
  argument_count: number;
}

export interface MutationResponse {
  snapshot_id: string;
  delta: { entered: string[]; left: string[] };
  selected_extension: SelectedExtension;
}

export interface TraceCardBody {
  requirement: string;
  origin: { argument_id: string; act_type: ActType; agent: string; round: number };
  accepted_under: string[];
  backward_trace: { label: string; source: string; target: string; note: string }[];
  defense: { attacker: string; defender: string | null; origin: string }[];
  dimensions: string[];
  gaps: string[];
}

export interface RunStatsBody {
  argument_count: number;
  attack_count: number;
  grounded_size: number;
  preferred_size: number;
  trace_completeness: number | null;
  gci: number | null;
  pattern_mix: Record<string, number>;
  depth: number | null;
  component_count: number;
  per_axis_accepted: Record<string, number>;
  mac: number | null;
}

export interface ApiError {
  error: { code: string; message: string };
}
