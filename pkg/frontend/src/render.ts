// SVG rendering of the visible dependency graph. Clicking a node expands
// or collapses it; collapsed nodes wear a badge with the size and depth of
// the hidden subgraph, taken from the precomputed subtree summaries.

import type { DagNode } from "./api.js";
import { layeredLayout } from "./layout.js";
import type { ExplorerState } from "./state.js";

const CELL_W = 190;
const CELL_H = 84;
const BOX_W = 160;
const BOX_H = 46;

export interface GraphCallbacks {
  onToggle(id: string): void;
  onSelect(id: string): void;
}

export function drawGraph(
  svg: SVGSVGElement,
  state: ExplorerState,
  callbacks: GraphCallbacks,
  selected: string | null,
): void {
  const visible = state.visibleIds();
  const nodes = state.visibleNodes();
  const placed = layeredLayout(nodes, visible);
  const maxRow = Math.max(0, ...placed.map((p) => p.row));
  const maxCols = Math.max(1, ...placed.map((p) => p.rowSize));
  const width = Math.max(640, maxCols * CELL_W + 40);
  const height = (maxRow + 1) * CELL_H + 40;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.replaceChildren();

  const centers = new Map<string, { x: number; y: number }>();
  for (const p of placed) {
    const x = width / 2 + (p.column - (p.rowSize - 1) / 2) * CELL_W;
    const y = 30 + p.row * CELL_H;
    centers.set(p.id, { x, y });
  }

  const edges = svgEl("g");
  for (const node of nodes) {
    const from = centers.get(node.id);
    if (from === undefined) {
      continue;
    }
    for (const dep of node.dependencies) {
      const to = centers.get(dep);
      if (to === undefined) {
        continue;
      }
      const line = svgEl("line");
      line.setAttribute("x1", String(from.x));
      line.setAttribute("y1", String(from.y + BOX_H / 2));
      line.setAttribute("x2", String(to.x));
      line.setAttribute("y2", String(to.y - BOX_H / 2));
      line.setAttribute("class", "edge");
      edges.appendChild(line);
    }
  }
  svg.appendChild(edges);

  for (const node of nodes) {
    const center = centers.get(node.id);
    if (center === undefined) {
      continue;
    }
    svg.appendChild(drawNode(node, center, state, callbacks, selected));
  }
}

function drawNode(
  node: DagNode,
  center: { x: number; y: number },
  state: ExplorerState,
  callbacks: GraphCallbacks,
  selected: string | null,
): SVGElement {
  const group = svgEl("g");
  const expandable = node.dependencies.length > 0;
  const expanded = state.isExpanded(node.id);
  const classes = ["node", node.kind];
  if (node.id === selected) {
    classes.push("selected");
  }
  if (expandable) {
    classes.push(expanded ? "expanded" : "collapsed");
  }
  group.setAttribute("class", classes.join(" "));
  group.setAttribute(
    "transform",
    `translate(${center.x - BOX_W / 2}, ${center.y - BOX_H / 2})`,
  );

  const rect = svgEl("rect");
  rect.setAttribute("width", String(BOX_W));
  rect.setAttribute("height", String(BOX_H));
  rect.setAttribute("rx", "7");
  group.appendChild(rect);

  const symbol = svgEl("text");
  symbol.setAttribute("x", String(BOX_W / 2));
  symbol.setAttribute("y", "20");
  symbol.setAttribute("class", "symbol");
  symbol.textContent = node.symbol;
  group.appendChild(symbol);

  const label = svgEl("text");
  label.setAttribute("x", String(BOX_W / 2));
  label.setAttribute("y", "37");
  label.setAttribute("class", "label");
  label.textContent = node.label;
  group.appendChild(label);

  if (expandable && !expanded) {
    const badge = svgEl("text");
    badge.setAttribute("x", String(BOX_W - 6));
    badge.setAttribute("y", "12");
    badge.setAttribute("class", "badge");
    badge.textContent = `+${node.subtree_size - 1}/${node.subtree_depth}`;
    group.appendChild(badge);
  }

  group.addEventListener("click", (event) => {
    event.stopPropagation();
    callbacks.onSelect(node.id);
    if (expandable) {
      callbacks.onToggle(node.id);
    }
  });
  return group;
}

function svgEl(tag: string): SVGElement {
  return document.createElementNS("http://www.w3.org/2000/svg", tag);
}
