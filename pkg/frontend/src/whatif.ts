/**
 * What-if form validation.  Submit stays disabled until the pending
 * operation validates against the snapshot on screen, so the service never
 * sees a structurally impossible request.
 */

import type { SnapshotBody } from "./types";

export interface RemoveEdgeForm {
  kind: "remove-edge";
  attacker: string;
  target: string;
}

export interface InjectForm {
  kind: "inject";
  id: string;
  act_type: string;
  content: string;
  agent: string;
  quality: string;
  edges: { attacker: string; target: string }[];
}

export type WhatIfForm = RemoveEdgeForm | InjectForm;

export interface ValidationResult {
  valid: boolean;
  problems: string[];
}

const ACTS = new Set(["proposal", "critique", "refinement"]);

export function validateForm(form: WhatIfForm, snapshot: SnapshotBody): ValidationResult {
  const problems: string[] = [];
  const ids = new Set(snapshot.arguments.map((a) => a.id));
  if (form.kind === "remove-edge") {
    if (!form.attacker || !form.target) {
      problems.push("attacker and target are required");
    } else if (
      !snapshot.attacks.some((e) => e.attacker === form.attacker && e.target === form.target)
    ) {
      problems.push(`no edge (${form.attacker}, ${form.target}) in this snapshot`);
    }
  } else {
    if (!form.id) problems.push("argument id is required");
    else if (ids.has(form.id)) problems.push(`id ${form.id} already exists`);
    if (!ACTS.has(form.act_type)) problems.push("act type must be proposal, critique, or refinement");
    if (!form.content) problems.push("content is required");
    if (!form.agent) problems.push("agent is required");
    if (!form.quality) problems.push("quality dimension is required");
    for (const edge of form.edges) {
      const known = (endpoint: string) => endpoint === form.id || ids.has(endpoint);
      if (!known(edge.attacker) || !known(edge.target)) {
        problems.push(`edge (${edge.attacker}, ${edge.target}) references an unknown argument`);
      }
    }
  }
  return { valid: problems.length === 0, problems };
}

export function parseEdgeList(text: string): { attacker: string; target: string }[] {
  // "a7->a5, a5->a7" style input.
  return text
    .split(",")
    .map((part) => part.trim())
    .filter((part) => part.length > 0)
    .map((part) => {
      const [attacker, target] = part.split("->").map((s) => s.trim());
      return { attacker: attacker ?? "", target: target ?? "" };
    });
}
