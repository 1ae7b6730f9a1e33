// Explorer bootstrap: one graph view, one side panel, one search box.
// The API base defaults to the local server and can be overridden with
// ?api=http://host:port.

import { ApiClient, type DefinitionListing } from "./api.js";
import { Panel } from "./panel.js";
import { drawGraph } from "./render.js";
import { ExplorerState } from "./state.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:7341");

const svg = document.querySelector<SVGSVGElement>("#graph")!;
const panel = new Panel(document.querySelector("#panel")!, api);
const search = document.querySelector<HTMLInputElement>("#search")!;
const datalist = document.querySelector<HTMLDataListElement>("#symbols")!;
const banner = document.querySelector<HTMLElement>("#banner")!;

const state = new ExplorerState();
let listing: DefinitionListing[] = [];
let selected: string | null = null;
const inFlight = new Set<string>();

function redraw(): void {
  drawGraph(svg, state, { onToggle: toggle, onSelect: select }, selected);
}

function note(message: string, isError = false): void {
  banner.textContent = message;
  banner.className = isError ? "error" : "";
}

async function fetchPage(id: string): Promise<void> {
  if (inFlight.has(id)) {
    return; // at most one in-flight fetch per node
  }
  inFlight.add(id);
  try {
    state.ingest(await api.dag(id, 1));
    note("");
  } catch (error) {
    note(`fetch failed for ${id}: ${String(error)} — click to retry`, true);
  } finally {
    inFlight.delete(id);
  }
}

async function toggle(id: string): Promise<void> {
  if (state.isExpanded(id)) {
    state.collapse(id);
    redraw();
    return;
  }
  if (state.needsFetch(id)) {
    await fetchPage(id);
  }
  state.expand(id);
  redraw();
}

function select(id: string): void {
  selected = id;
  void panel.show(id);
  redraw();
}

async function openRoot(id: string): Promise<void> {
  state.setRoot(id);
  await fetchPage(id);
  state.expand(id);
  selected = id;
  void panel.show(id);
  redraw();
}

search.addEventListener("change", () => {
  const query = search.value.trim().toLowerCase();
  if (!query) {
    return;
  }
  const hit = listing.find(
    (entry) =>
      entry.label.toLowerCase() === query ||
      entry.symbol.toLowerCase() === query,
  ) ?? listing.find(
    (entry) =>
      entry.label.toLowerCase().includes(query) ||
      entry.symbol.toLowerCase().includes(query),
  );
  if (hit === undefined) {
    note(`no definition matches "${search.value}"`, true);
    return;
  }
  void openRoot(hit.id);
});

async function start(): Promise<void> {
  try {
    listing = await api.listDefinitions();
  } catch (error) {
    note(`cannot reach the definition server: ${String(error)}`, true);
    return;
  }
  for (const entry of listing) {
    const option = document.createElement("option");
    option.value = entry.symbol;
    option.label = entry.label;
    datalist.appendChild(option);
  }
  const last = listing[listing.length - 1];
  if (last !== undefined) {
    await openRoot(last.id);
  }
}

void start();
