/**
 * Workbench state: a pure projection of the service snapshot currently on
 * screen.  Mutations go to the service first; the store only ever applies
 * confirmed responses, so a hard refresh of the same snapshot id reproduces
 * the identical view.
 */

import type { MutationResponse, SnapshotBody } from "./types";

export interface WorkbenchState {
  snapshot: SnapshotBody | null;
  /** Accepted argument ids of the snapshot on screen. */
  highlighted: Set<string>;
  /** Arguments that entered/left the extension in the last confirmed mutation. */
  lastDelta: { entered: string[]; left: string[] } | null;
  /** True while a what-if is awaiting service confirmation. */
  pending: boolean;
  error: { code: string; message: string } | null;
}

export const initialState: WorkbenchState = {
  snapshot: null,
  highlighted: new Set(),
  lastDelta: null,
  pending: false,
  error: null,
};

export function snapshotLoaded(state: WorkbenchState, body: SnapshotBody): WorkbenchState {
  return {
    ...state,
    snapshot: body,
    highlighted: new Set(body.selected_extension.members),
    pending: false,
    error: null,
  };
}

export function mutationStarted(state: WorkbenchState): WorkbenchState {
  return { ...state, pending: true, error: null };
}

/**
 * Apply a confirmed mutation: switch to the new snapshot body and keep the
 * delta for badge rendering.  One interaction cycle == one confirmed
 * response; the highlight set always equals the new selected extension.
 */
export function mutationConfirmed(
  state: WorkbenchState,
  response: MutationResponse,
  body: SnapshotBody,
): WorkbenchState {
  return {
    snapshot: body,
    highlighted: new Set(body.selected_extension.members),
    lastDelta: response.delta,
    pending: false,
    error: null,
  };
}

export function mutationFailed(
  state: WorkbenchState,
  error: { code: string; message: string },
): WorkbenchState {
  return { ...state, pending: false, error };
}

/** True when a confirmed mutation left the accepted set unchanged. */
export function extensionUnchanged(response: MutationResponse): boolean {
  return response.delta.entered.length === 0 && response.delta.left.length === 0;
}

export function deltaBadge(state: WorkbenchState, argumentId: string): "entered" | "left" | null {
  if (!state.lastDelta) return null;
  if (state.lastDelta.entered.includes(argumentId)) return "entered";
  if (state.lastDelta.left.includes(argumentId)) return "left";
  return null;
}

/** Cyclicity badge text shown next to the semantics selector. */
export function gciBadge(gci: number | null): string {
  if (gci === null) return "GCI: n/a";
  return `GCI: ${gci.toFixed(2)}${gci > 0 ? " (semantics diverge)" : ""}`;
}
