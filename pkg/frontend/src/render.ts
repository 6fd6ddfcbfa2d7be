/**
 * SVG rendering of the attack graph plus the side panels.  Pure DOM
 * construction against an injectable document, so tests can render headless.
 */

import { agentColor, layoutGraph, NODE_HEIGHT, NODE_WIDTH, rosterOf } from "./layout";
import { deltaBadge, gciBadge, WorkbenchState } from "./state";
import type { SnapshotBody, TraceCardBody } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderOptions {
  onNodeClick?: (argumentId: string) => void;
  gci?: number | null;
}

function svgEl(doc: Document, tag: string, attrs: Record<string, string>): SVGElement {
  const el = doc.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function shorten(text: string, limit = 46): string {
  return text.length <= limit ? text : `${text.slice(0, limit - 1)}…`;
}

/**
 * Render the graph view: nodes colored by agent, direction-arrowed edges
 * labeled by origin pattern, accepted arguments highlighted, delta badges on
 * arguments that entered or left the extension in the last override.
 */
export function renderGraph(
  doc: Document,
  state: WorkbenchState,
  options: RenderOptions = {},
): SVGElement {
  const body = state.snapshot;
  const svg = svgEl(doc, "svg", { class: "graph-view", role: "img" });
  if (!body || body.arguments.length === 0) {
    svg.setAttribute("data-empty", "true");
    const note = svgEl(doc, "text", { x: "20", y: "30", class: "empty-state" });
    note.textContent = "No arguments in this snapshot.";
    svg.appendChild(note);
    return svg;
  }
  const layout = layoutGraph(body);
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  svg.setAttribute("width", String(layout.width));
  svg.setAttribute("height", String(layout.height));

  const defs = svgEl(doc, "defs", {});
  const marker = svgEl(doc, "marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl(doc, "path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#b03030" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const edgeLayer = svgEl(doc, "g", { class: "edges" });
  for (const placed of layout.edges) {
    const group = svgEl(doc, "g", {
      class: `edge edge-${placed.edge.origin}`,
      "data-attacker": placed.edge.attacker,
      "data-target": placed.edge.target,
      "data-origin": placed.edge.origin,
    });
    const line = svgEl(doc, "line", {
      x1: String(placed.x1),
      y1: String(placed.y1),
      x2: String(placed.x2),
      y2: String(placed.y2),
      stroke: "#b03030",
      "stroke-width": "1.6",
      "marker-end": "url(#arrow)",
    });
    if (placed.edge.origin === "semantic") line.setAttribute("stroke-dasharray", "6 4");
    group.appendChild(line);
    const label = svgEl(doc, "text", {
      x: String(placed.labelX),
      y: String(placed.labelY),
      class: "edge-label",
      "text-anchor": "middle",
    });
    label.textContent = placed.edge.origin;
    group.appendChild(label);
    edgeLayer.appendChild(group);
  }
  svg.appendChild(edgeLayer);

  const roster = rosterOf(body);
  const nodeLayer = svgEl(doc, "g", { class: "nodes" });
  for (const placed of layout.nodes) {
    const argument = placed.argument;
    const accepted = state.highlighted.has(argument.id);
    const badge = deltaBadge(state, argument.id);
    const group = svgEl(doc, "g", {
      class: `node act-${argument.act_type}${accepted ? " accepted" : ""}`,
      "data-id": argument.id,
      "data-accepted": String(accepted),
      transform: `translate(${placed.x}, ${placed.y})`,
    });
    group.appendChild(
      svgEl(doc, "rect", {
        width: String(NODE_WIDTH),
        height: String(NODE_HEIGHT),
        rx: "8",
        fill: agentColor(argument.agent, roster),
        "fill-opacity": accepted ? "1" : "0.45",
        stroke: accepted ? "#1a7a1a" : "#555",
        "stroke-width": accepted ? "3" : "1",
      }),
    );
    const title = svgEl(doc, "text", { x: "8", y: "18", class: "node-title" });
    title.textContent = `${argument.id} · ${argument.act_type} · ${argument.agent}`;
    group.appendChild(title);
    const summary = svgEl(doc, "text", { x: "8", y: "38", class: "node-summary" });
    summary.textContent = shorten(argument.content);
    group.appendChild(summary);
    if (badge) {
      const badgeText = svgEl(doc, "text", {
        x: String(NODE_WIDTH - 8),
        y: "56",
        class: `delta-badge delta-${badge}`,
        "text-anchor": "end",
      });
      badgeText.textContent = badge === "entered" ? "▲ entered" : "▼ left";
      group.appendChild(badgeText);
    }
    if (options.onNodeClick) {
      group.addEventListener("click", () => options.onNodeClick!(argument.id));
    }
    nodeLayer.appendChild(group);
  }
  svg.appendChild(nodeLayer);
  return svg;
}

export function renderHeader(doc: Document, body: SnapshotBody, gci: number | null): HTMLElement {
  const header = doc.createElement("div");
  header.className = "snapshot-header";
  const title = doc.createElement("span");
  title.className = "snapshot-id";
  title.textContent = `snapshot ${body.snapshot.id} · ${body.selected_extension.semantics}`;
  const badge = doc.createElement("span");
  badge.className = "gci-badge";
  badge.textContent = gciBadge(gci);
  header.append(title, badge);
  return header;
}

export function renderTraceCard(doc: Document, card: TraceCardBody): HTMLElement {
  const panel = doc.createElement("div");
  panel.className = "trace-card";
  const heading = doc.createElement("h3");
  heading.textContent = `${card.origin.argument_id} — ${card.origin.agent}, round ${card.origin.round}`;
  panel.appendChild(heading);
  const requirement = doc.createElement("p");
  requirement.className = "requirement";
  requirement.textContent = card.requirement;
  panel.appendChild(requirement);
  const accepted = doc.createElement("p");
  accepted.className = "accepted-under";
  accepted.textContent = `Accepted under: ${card.accepted_under.join(", ")}`;
  panel.appendChild(accepted);
  const list = doc.createElement("ol");
  list.className = "backward-trace";
  for (const step of card.backward_trace) {
    const item = doc.createElement("li");
    item.dataset.label = step.label;
    item.textContent = `[${step.label}] ${step.source} → ${step.target}${step.note ? ` (${step.note})` : ""}`;
    list.appendChild(item);
  }
  panel.appendChild(list);
  if (card.gaps.length > 0) {
    const gaps = doc.createElement("p");
    gaps.className = "gaps";
    gaps.textContent = `Gaps: ${card.gaps.join("; ")}`;
    panel.appendChild(gaps);
  }
  return panel;
}

export function renderJournal(doc: Document, body: SnapshotBody): HTMLElement {
  const panel = doc.createElement("ul");
  panel.className = "journal";
  for (const entry of body.journal) {
    const item = doc.createElement("li");
    item.textContent = `${entry.operation}: ${JSON.stringify(entry.payload)}`;
    panel.appendChild(item);
  }
  return panel;
}
