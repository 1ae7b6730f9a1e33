// Layered placement of the visible subgraph: a node sits one row above the
// deepest of its visible dependencies, so dependencies are always drawn
// below their dependents and the root ends up at the top. Definitional
// order is the semantic axis here, which is why the layout is layered
// rather than force-directed.

import type { DagNode } from "./api.js";

export interface PlacedNode {
  id: string;
  row: number; // 0 = top
  column: number;
  rowSize: number;
}

export function layeredLayout(
  nodes: DagNode[],
  visible: Set<string>,
): PlacedNode[] {
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const height = new Map<string, number>();

  const heightOf = (id: string): number => {
    const known = height.get(id);
    if (known !== undefined) {
      return known;
    }
    height.set(id, 0); // settles cycles defensively; the graph is acyclic
    const node = byId.get(id);
    let h = 0;
    if (node !== undefined) {
      for (const dep of node.dependencies) {
        if (visible.has(dep)) {
          h = Math.max(h, heightOf(dep) + 1);
        }
      }
    }
    height.set(id, h);
    return h;
  };

  const ids = nodes.filter((n) => visible.has(n.id)).map((n) => n.id);
  for (const id of ids) {
    heightOf(id);
  }
  const maxHeight = Math.max(0, ...ids.map((id) => height.get(id) ?? 0));

  const rows = new Map<number, string[]>();
  for (const id of ids) {
    const row = maxHeight - (height.get(id) ?? 0);
    const bucket = rows.get(row);
    if (bucket === undefined) {
      rows.set(row, [id]);
    } else {
      bucket.push(id);
    }
  }

  const placed: PlacedNode[] = [];
  for (const [row, members] of rows) {
    members.sort();
    members.forEach((id, column) => {
      placed.push({ id, row, column, rowSize: members.length });
    });
  }
  placed.sort((a, b) => a.row - b.row || a.column - b.column);
  return placed;
}
