// Explorer view state: which graph pages have been fetched and which nodes
// are expanded. The visible set is always *derived* from those two facts,
// never mutated directly, which gives the two structural guarantees the
// explorer relies on: expanding a node can only add to the visible set,
// and collapsing a node hides exactly the nodes reachable only through it.

import type { DagNode, DagResponse } from "./api.js";

export class ExplorerState {
  private nodes = new Map<string, DagNode>();
  private expandedIds = new Set<string>();
  private rootId: string | null = null;

  get root(): string | null {
    return this.rootId;
  }

  setRoot(id: string): void {
    this.rootId = id;
    this.expandedIds = new Set();
  }

  /** Record every node of a fetched graph page. */
  ingest(page: DagResponse): void {
    for (const node of page.nodes) {
      this.nodes.set(node.id, node);
    }
  }

  node(id: string): DagNode | undefined {
    return this.nodes.get(id);
  }

  hasNode(id: string): boolean {
    return this.nodes.has(id);
  }

  isExpanded(id: string): boolean {
    return this.expandedIds.has(id);
  }

  expand(id: string): void {
    if (this.nodes.has(id)) {
      this.expandedIds.add(id);
    }
  }

  collapse(id: string): void {
    this.expandedIds.delete(id);
  }

  toggle(id: string): void {
    if (this.isExpanded(id)) {
      this.collapse(id);
    } else {
      this.expand(id);
    }
  }

  /** Ids visible right now: the root plus everything reachable from it
   * through expanded, already-fetched nodes. */
  visibleIds(): Set<string> {
    const visible = new Set<string>();
    if (this.rootId === null || !this.nodes.has(this.rootId)) {
      return visible;
    }
    visible.add(this.rootId);
    const queue = [this.rootId];
    while (queue.length > 0) {
      const id = queue.shift()!;
      if (!this.expandedIds.has(id)) {
        continue;
      }
      const node = this.nodes.get(id);
      if (node === undefined) {
        continue;
      }
      for (const dep of node.dependencies) {
        if (this.nodes.has(dep) && !visible.has(dep)) {
          visible.add(dep);
          queue.push(dep);
        }
      }
    }
    return visible;
  }

  visibleNodes(): DagNode[] {
    const ids = this.visibleIds();
    const out: DagNode[] = [];
    for (const id of ids) {
      const node = this.nodes.get(id);
      if (node !== undefined) {
        out.push(node);
      }
    }
    return out;
  }

  /** Dependencies of a visible node that are currently hidden, i.e. the
   * expand affordance; empty for fully expanded or leaf nodes. */
  hiddenDependencies(id: string): string[] {
    const node = this.nodes.get(id);
    if (node === undefined) {
      return [];
    }
    const visible = this.visibleIds();
    return node.dependencies.filter((dep) => !visible.has(dep));
  }

  /** Whether the node still needs a fetch before expanding it is useful:
   * some dependency is not in the local cache yet. */
  needsFetch(id: string): boolean {
    const node = this.nodes.get(id);
    if (node === undefined) {
      return true;
    }
    return node.dependencies.some((dep) => !this.nodes.has(dep));
  }
}
