// Side panel: every form of the selected definition plus its metrics.

import type { ApiClient, DefinitionDetail } from "./api.js";
import { renderRich } from "./math.js";

const DEPTH_COLUMNS: [string, string][] = [
  ["pst_depth", "surface"],
  ["pst_alt_depth", "surface alt"],
  ["dzfc_depth", "core"],
  ["dzfc_alt_depth", "core alt"],
  ["full_depth", "expanded"],
  ["full_alt_depth", "expanded alt"],
  ["partial_depth", "partial"],
  ["partial_alt_depth", "partial alt"],
];

export class Panel {
  private current: string | null = null;

  constructor(
    private readonly element: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async show(id: string): Promise<void> {
    this.current = id;
    let detail: DefinitionDetail;
    try {
      detail = await this.api.definition(id);
    } catch (error) {
      this.element.replaceChildren(
        el("p", "error", `could not load ${id}: ${String(error)}`),
      );
      return;
    }
    if (this.current !== id) {
      return; // a newer selection superseded this response
    }
    const parts: HTMLElement[] = [];
    parts.push(el("h2", "", `${detail.label} — ${detail.symbol}`));
    parts.push(el("p", "meta",
      `${detail.kind}, ${detail.params.length} parameter(s); ` +
      `dependency dag: ${detail.dag.size} nodes, depth ${detail.dag.depth}` +
      (detail.role ? `; protected role: ${detail.role}` : "")));

    parts.push(el("h3", "", "Source"));
    parts.push(el("pre", "source", detail.pst_source));

    parts.push(el("h3", "", "Typeset"));
    const typeset = el("p", "latex", "");
    renderRich(typeset, detail.pst_latex);
    parts.push(typeset);

    parts.push(el("h3", "", "Core translation"));
    const core = el("p", "latex", "");
    renderRich(core, `$${detail.dzfc_latex}$`);
    parts.push(core);

    if (detail.nl) {
      parts.push(el("h3", "", "In words"));
      const words = el("p", "nl", "");
      renderRich(words, detail.nl.replace(/\\emph\{([^}]*)\}/g, "$1"));
      parts.push(words);
    }

    parts.push(el("h3", "", "Quantifier depths"));
    const table = document.createElement("table");
    for (const [column, title] of DEPTH_COLUMNS) {
      const row = document.createElement("tr");
      row.appendChild(el("td", "", title));
      row.appendChild(el("td", "num", String(detail.depth_summary[column] ?? 0)));
      table.appendChild(row);
    }
    parts.push(table);
    this.element.replaceChildren(...parts);
  }
}

function el(tag: string, className: string, text: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  node.textContent = text;
  return node;
}
