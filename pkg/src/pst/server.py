"""Read-only HTTP API over a frozen definition store.

The browser explorer fetches the dependency graph in expanding rings:
``/dag/{id}?radius=k`` returns the nodes within ``k`` dependency steps of a
definition plus summaries of the collapsed frontier, so collapsed nodes can
be labeled with the size and depth of what hides beneath them without
fetching anything.  All responses are pure functions of the store and the
query.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .latex import render_latex, render_pst
from . import dzfc
from .errors import PstError
from .lexicon import Lexicon
from .metrics import MetricsEngine, corpus_report, depth_summary
from .nl import render_nl
from .store import DefStore, StoredDefinition


def build_app(store: DefStore, lexicon: Optional[Lexicon] = None) -> FastAPI:
    if not store.frozen:
        store.freeze()
    app = FastAPI(title="pst definition store", version="1")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["GET"], allow_headers=["*"])

    full_engine = MetricsEngine(store)
    partial_engine = MetricsEngine(store, store.protected_symbols())
    report = corpus_report(store)

    by_label: dict[str, StoredDefinition] = {sd.label: sd for sd in store}
    summaries: dict[str, dict] = {}
    dag_stats: dict[str, dict] = {}
    for sd in store:
        depths, lengths = depth_summary(store, sd, full_engine, partial_engine)
        summaries[sd.label] = {**depths.as_dict(), **lengths.as_dict()}
        dag = store.dag_of(sd.symbol)
        dag_stats[sd.label] = {"size": dag.size, "depth": dag.depth}

    def lookup(def_id: str) -> StoredDefinition:
        sd = by_label.get(def_id)
        if sd is None:
            raise HTTPException(status_code=404,
                                detail=f"no definition {def_id!r}")
        return sd

    def node_view(sd: StoredDefinition) -> dict:
        info = store.table.lookup(sd.symbol)
        return {
            "id": sd.label,
            "label": sd.label,
            "symbol": sd.symbol,
            "book": sd.book,
            "kind": info.kind,
            "infix": info.infix,
            "arity": info.arity,
            "dependencies": [store.get(dep).label for dep in sd.deps],
            "subtree_size": dag_stats[sd.label]["size"],
            "subtree_depth": dag_stats[sd.label]["depth"],
            "depth_summary": summaries[sd.label],
        }

    @app.get("/definitions")
    def definitions() -> list[dict]:
        return [{"id": sd.label, "label": sd.label, "symbol": sd.symbol,
                 "kind": sd.axiom.kind, "book": sd.book}
                for sd in store]

    @app.get("/definitions/{def_id}")
    def definition(def_id: str) -> dict:
        sd = lookup(def_id)
        body = {
            "id": sd.label,
            "label": sd.label,
            "symbol": sd.symbol,
            "kind": sd.axiom.kind,
            "params": list(sd.axiom.params),
            "role": sd.role,
            "pst_source": render_pst(sd.definition, store.table),
            "pst_latex": render_latex(sd.definition, store.table),
            "dzfc_latex": render_latex(sd.axiom),
            "dzfc_json": dzfc.to_json(sd.axiom.body),
            "dependencies": [store.get(dep).label for dep in sd.deps],
            "dag": dag_stats[sd.label],
            "depth_summary": summaries[sd.label],
        }
        if lexicon is not None:
            try:
                body["nl"] = render_nl(sd.definition, lexicon, store.table)
            except PstError as exc:
                body["nl_error"] = str(exc)
        return body

    @app.get("/dag/{def_id}")
    def dag(def_id: str, radius: str = "1") -> JSONResponse:
        sd = lookup(def_id)
        try:
            k = int(radius)
        except ValueError:
            k = -1
        if k < 0:
            raise HTTPException(status_code=400,
                                detail="radius must be a non-negative integer")
        level = {sd.symbol: 0}
        frontier_syms: set[str] = set()
        queue = [sd.symbol]
        while queue:
            sym = queue.pop(0)
            if level[sym] == k:
                frontier_syms.update(dep for dep in store.get(sym).deps
                                     if dep not in level)
                continue
            for dep in store.get(sym).deps:
                if dep not in level:
                    level[dep] = level[sym] + 1
                    queue.append(dep)
        frontier_syms -= set(level)
        nodes = [node_view(store.get(sym)) for sym in level]
        frontier = [{"id": store.get(sym).label,
                     "symbol": sym,
                     "size": dag_stats[store.get(sym).label]["size"],
                     "depth": dag_stats[store.get(sym).label]["depth"]}
                    for sym in sorted(frontier_syms)]
        return JSONResponse({"root": sd.label, "radius": k,
                             "nodes": nodes, "frontier": frontier})

    @app.get("/stats")
    def stats() -> dict:
        return report.to_json()

    return app
