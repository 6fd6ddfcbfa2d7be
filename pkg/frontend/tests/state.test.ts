import { describe, expect, it } from "vitest";

import {
  deltaBadge,
  extensionUnchanged,
  gciBadge,
  initialState,
  mutationConfirmed,
  mutationFailed,
  mutationStarted,
  snapshotLoaded,
} from "../src/state";
import {
  afterRemovalSnapshot,
  goldenSnapshot,
  removeEdgeResponse,
  semanticsToggleResponse,
} from "./fixture";

describe("snapshot projection", () => {
  it("highlights exactly the selected extension", () => {
    const state = snapshotLoaded(initialState, goldenSnapshot);
    expect([...state.highlighted].sort()).toEqual(["a1", "a5", "a6"]);
  });

  it("is a pure projection: reloading the same body reproduces the state", () => {
    const once = snapshotLoaded(initialState, goldenSnapshot);
    const twice = snapshotLoaded(initialState, goldenSnapshot);
    expect([...once.highlighted].sort()).toEqual([...twice.highlighted].sort());
    expect(once.snapshot).toEqual(twice.snapshot);
  });
});

describe("what-if mutation cycle", () => {
  it("updates highlights to the new extension within one confirmed cycle", () => {
    let state = snapshotLoaded(initialState, goldenSnapshot);
    state = mutationStarted(state);
    expect(state.pending).toBe(true);
    state = mutationConfirmed(state, removeEdgeResponse, afterRemovalSnapshot);
    expect(state.pending).toBe(false);
    expect([...state.highlighted].sort()).toEqual(["a2", "a5", "a6"]);
  });

  it("exposes entered/left badges from the confirmed delta", () => {
    let state = snapshotLoaded(initialState, goldenSnapshot);
    state = mutationConfirmed(state, removeEdgeResponse, afterRemovalSnapshot);
    expect(deltaBadge(state, "a2")).toBe("entered");
    expect(deltaBadge(state, "a1")).toBe("left");
    expect(deltaBadge(state, "a5")).toBeNull();
  });

  it("keeps the old snapshot on failure and records the error code", () => {
    let state = snapshotLoaded(initialState, goldenSnapshot);
    state = mutationStarted(state);
    state = mutationFailed(state, { code: "unknown_edge", message: "no such edge" });
    expect(state.snapshot).toBe(goldenSnapshot);
    expect(state.error?.code).toBe("unknown_edge");
    expect(state.pending).toBe(false);
  });

  it("recognizes a no-op semantics toggle on an acyclic snapshot", () => {
    expect(extensionUnchanged(semanticsToggleResponse)).toBe(true);
    expect(extensionUnchanged(removeEdgeResponse)).toBe(false);
  });
});

describe("gci badge", () => {
  it("formats the cyclic and acyclic cases", () => {
    expect(gciBadge(0)).toBe("GCI: 0.00");
    expect(gciBadge(0.25)).toBe("GCI: 0.25 (semantics diverge)");
    expect(gciBadge(null)).toBe("GCI: n/a");
  });
});
