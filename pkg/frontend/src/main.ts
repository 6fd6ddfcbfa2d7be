/**
 * Browser entry point: wires the client, state store, and renderers into the
 * page shell.  All state transitions wait for service confirmation; the UI
 * never applies an optimistic update.
 */

import { ServiceError, WorkbenchClient } from "./api";
import { renderGraph, renderHeader, renderJournal, renderTraceCard } from "./render";
import {
  initialState,
  mutationConfirmed,
  mutationFailed,
  mutationStarted,
  snapshotLoaded,
  WorkbenchState,
} from "./state";
import type { MutationResponse } from "./types";
import { parseEdgeList, validateForm, WhatIfForm } from "./whatif";

const SERVICE_URL =
  new URLSearchParams(window.location.search).get("service") ?? "http://127.0.0.1:8000";

const client = new WorkbenchClient(SERVICE_URL);
let state: WorkbenchState = initialState;
let lastGci: number | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function refresh(snapshotId: string): Promise<void> {
  const body = await client.getSnapshot(snapshotId);
  const stats = await client.metrics(snapshotId);
  lastGci = stats.gci;
  state = snapshotLoaded(state, body);
  paint();
}

function paint(): void {
  const graphHost = el("graph");
  graphHost.replaceChildren();
  if (state.snapshot) {
    graphHost.appendChild(renderHeader(document, state.snapshot, lastGci));
  }
  graphHost.appendChild(
    renderGraph(document, state, {
      onNodeClick: (argumentId) => void showTraceCard(argumentId),
    }),
  );
  const journalHost = el("journal");
  journalHost.replaceChildren();
  if (state.snapshot) journalHost.appendChild(renderJournal(document, state.snapshot));
  el("error").textContent = state.error ? `${state.error.code}: ${state.error.message}` : "";
  el<HTMLButtonElement>("submit-whatif").disabled = state.pending;
}

async function showTraceCard(argumentId: string): Promise<void> {
  if (!state.snapshot) return;
  const host = el("trace-card");
  host.replaceChildren();
  try {
    const card = await client.traceCard(state.snapshot.snapshot.id, argumentId);
    host.appendChild(renderTraceCard(document, card));
  } catch (error) {
    if (error instanceof ServiceError) {
      host.textContent = `${argumentId}: ${error.message}`;
    } else {
      throw error;
    }
  }
}

async function applyMutation(run: () => Promise<MutationResponse>): Promise<void> {
  if (!state.snapshot) return;
  state = mutationStarted(state);
  paint();
  try {
    const response = await run();
    const body = await client.getSnapshot(response.snapshot_id);
    const stats = await client.metrics(response.snapshot_id);
    lastGci = stats.gci;
    state = mutationConfirmed(state, response, body);
  } catch (error) {
    if (error instanceof ServiceError) {
      state = mutationFailed(state, { code: error.code, message: error.message });
    } else {
      throw error;
    }
  }
  paint();
}

function currentForm(): WhatIfForm {
  const kind = el<HTMLSelectElement>("whatif-kind").value;
  if (kind === "remove-edge") {
    return {
      kind: "remove-edge",
      attacker: el<HTMLInputElement>("edge-attacker").value.trim(),
      target: el<HTMLInputElement>("edge-target").value.trim(),
    };
  }
  return {
    kind: "inject",
    id: el<HTMLInputElement>("inject-id").value.trim(),
    act_type: el<HTMLSelectElement>("inject-act").value,
    content: el<HTMLInputElement>("inject-content").value.trim(),
    agent: el<HTMLInputElement>("inject-agent").value.trim(),
    quality: el<HTMLInputElement>("inject-quality").value.trim(),
    edges: parseEdgeList(el<HTMLInputElement>("inject-edges").value),
  };
}

function wireForms(): void {
  const submit = el<HTMLButtonElement>("submit-whatif");
  const revalidate = () => {
    if (!state.snapshot) return;
    const check = validateForm(currentForm(), state.snapshot);
    submit.disabled = state.pending || !check.valid;
    el("form-problems").textContent = check.problems.join("; ");
  };
  for (const id of [
    "whatif-kind", "edge-attacker", "edge-target", "inject-id", "inject-act",
    "inject-content", "inject-agent", "inject-quality", "inject-edges",
  ]) {
    el(id).addEventListener("input", revalidate);
    el(id).addEventListener("change", revalidate);
  }
  submit.addEventListener("click", () => {
    if (!state.snapshot) return;
    const form = currentForm();
    const snapshotId = state.snapshot.snapshot.id;
    if (form.kind === "remove-edge") {
      void applyMutation(() => client.removeAttack(snapshotId, form.attacker, form.target));
    } else {
      void applyMutation(() =>
        client.inject(snapshotId, {
          id: form.id,
          act_type: form.act_type,
          content: form.content,
          agent: form.agent,
          quality: form.quality,
          edges: form.edges,
        }),
      );
    }
  });

  el<HTMLSelectElement>("semantics").addEventListener("change", (event) => {
    const semantics = (event.target as HTMLSelectElement).value;
    void applyMutation(() =>
      client.solve(state.snapshot!.snapshot.id, {
        semantics,
        preferred_strategy: "priority_guided",
      }),
    );
  });
}

async function boot(): Promise<void> {
  const listing = await client.listSnapshots();
  if (listing.snapshots.length === 0) {
    el("graph").textContent = "No snapshots on the service yet.";
    return;
  }
  wireForms();
  await refresh(listing.snapshots[listing.snapshots.length - 1].id);
}

void boot();
