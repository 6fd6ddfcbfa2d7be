/**
 * Layered graph layout: rows follow negotiation rounds top-to-bottom so the
 * graph reads chronologically; arguments within a row spread horizontally in
 * source order, grouped by session.
 */

import type { ArgumentNode, AttackEdge, SnapshotBody } from "./types";

export const NODE_WIDTH = 180;
export const NODE_HEIGHT = 64;
const COLUMN_GAP = 60;
const ROW_GAP = 90;
const MARGIN = 40;

export interface PlacedNode {
  argument: ArgumentNode;
  x: number;
  y: number;
}

export interface PlacedEdge {
  edge: AttackEdge;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  labelX: number;
  labelY: number;
}

export interface GraphLayout {
  nodes: PlacedNode[];
  edges: PlacedEdge[];
  width: number;
  height: number;
}

function rowKey(argument: ArgumentNode): number {
  return argument.source.round;
}

export function layoutGraph(body: SnapshotBody): GraphLayout {
  const rounds = [...new Set(body.arguments.map(rowKey))].sort((a, b) => a - b);
  const rowIndex = new Map(rounds.map((round, i) => [round, i]));

  const rows = new Map<number, ArgumentNode[]>();
  for (const argument of body.arguments) {
    const index = rowIndex.get(rowKey(argument))!;
    const row = rows.get(index) ?? [];
    row.push(argument);
    rows.set(index, row);
  }
  for (const row of rows.values()) {
    row.sort((a, b) =>
      a.source.session === b.source.session
        ? a.source.turn_index - b.source.turn_index
        : a.source.session < b.source.session
          ? -1
          : 1,
    );
  }

  const nodes: PlacedNode[] = [];
  const position = new Map<string, { x: number; y: number }>();
  let maxColumns = 1;
  for (const [index, row] of [...rows.entries()].sort((a, b) => a[0] - b[0])) {
    maxColumns = Math.max(maxColumns, row.length);
    row.forEach((argument, column) => {
      const x = MARGIN + column * (NODE_WIDTH + COLUMN_GAP);
      const y = MARGIN + index * (NODE_HEIGHT + ROW_GAP);
      position.set(argument.id, { x, y });
      nodes.push({ argument, x, y });
    });
  }

  const edges: PlacedEdge[] = body.attacks.map((edge) => {
    const from = position.get(edge.attacker)!;
    const to = position.get(edge.target)!;
    const x1 = from.x + NODE_WIDTH / 2;
    const y1 = from.y + NODE_HEIGHT / 2;
    const x2 = to.x + NODE_WIDTH / 2;
    const y2 = to.y + NODE_HEIGHT / 2;
    return {
      edge,
      x1,
      y1,
      x2,
      y2,
      labelX: (x1 + x2) / 2,
      labelY: (y1 + y2) / 2 - 6,
    };
  });

  return {
    nodes,
    edges,
    width: 2 * MARGIN + maxColumns * (NODE_WIDTH + COLUMN_GAP) - COLUMN_GAP,
    height: 2 * MARGIN + rounds.length * (NODE_HEIGHT + ROW_GAP) - ROW_GAP,
  };
}

/** Stable per-agent colors: first agents get the fixed palette, extras hash. */
const PALETTE = ["#e8860c", "#2d7dd2", "#4caf50", "#9453b5", "#c2403f", "#708090"];

export function agentColor(agent: string, agents: string[]): string {
  const index = agents.indexOf(agent);
  if (index >= 0 && index < PALETTE.length) return PALETTE[index];
  let hash = 0;
  for (const ch of agent) hash = (hash * 31 + ch.charCodeAt(0)) >>> 0;
  return PALETTE[hash % PALETTE.length];
}

export function rosterOf(body: SnapshotBody): string[] {
  const seen: string[] = [];
  for (const argument of body.arguments) {
    if (!seen.includes(argument.agent)) seen.push(argument.agent);
  }
  return seen;
}
