import pytest
from fastapi.testclient import TestClient

from pst.server import build_app


@pytest.fixture(scope="module")
def client(store, lexicon):
    return TestClient(build_app(store, lexicon))


@pytest.fixture(scope="module")
def chain_client(chain_store):
    return TestClient(build_app(chain_store))


def test_definitions_listing(client, store):
    body = client.get("/definitions").json()
    assert len(body) == len(store)
    entry = next(e for e in body if e["symbol"] == "FCN")
    assert entry["id"] == "FS.2.58"
    assert entry["kind"] == "relation"


def test_definition_detail_contains_all_forms(client):
    body = client.get("/definitions/FS.2.58").json()
    assert body["symbol"] == "FCN"
    assert body["pst_source"].startswith("DEFINITION FS.2.58")
    assert "\\leftrightarrow" in body["dzfc_latex"]
    assert body["dzfc_json"]["node"] == "equal"
    assert body["depth_summary"]["pst_depth"] == 0
    assert body["depth_summary"]["dzfc_depth"] == 3
    assert body["nl"].startswith("Definition:")


def test_detail_includes_translation_content(client):
    body = client.get("/definitions/FS.2.58").json()
    assert "(\\iota z_{0})(\\forall y_{0})" in body["dzfc_latex"]
    assert "\\varpi_{0}" in body["dzfc_latex"]


def test_unknown_definition_404(client):
    assert client.get("/definitions/NO.SUCH").status_code == 404
    assert client.get("/dag/NO.SUCH").status_code == 404


def test_dag_radius_leaf(chain_client):
    body = chain_client.get("/dag/CH.1", params={"radius": 1}).json()
    assert [n["id"] for n in body["nodes"]] == ["CH.1"]
    assert body["nodes"][0]["dependencies"] == []
    assert body["frontier"] == []


def test_dag_radius_two_on_chain(chain_client):
    body = chain_client.get("/dag/CH.5", params={"radius": 2}).json()
    ids = {n["id"] for n in body["nodes"]}
    assert ids == {"CH.5", "CH.4", "CH.3"}
    assert len(body["frontier"]) == 1
    frontier = body["frontier"][0]
    assert frontier["id"] == "CH.2"
    assert frontier["size"] == 2 and frontier["depth"] == 1


def test_frontier_expansions_reconstruct_full_dag(chain_client, chain_store):
    seen = set()
    frontier = ["CH.5"]
    fetched_count = 0
    while frontier:
        target = frontier.pop()
        body = chain_client.get(f"/dag/{target}", params={"radius": 1}).json()
        for node in body["nodes"]:
            seen.add(node["symbol"])
        for entry in body["frontier"]:
            fetched_count += 1
            frontier.append(entry["id"])
    dag = chain_store.dag_of("C5")
    assert seen == set(dag.nodes)
    # radius-1 pages show two chain nodes each, so every second is a frontier
    assert fetched_count == 2


def test_malformed_radius_is_400(chain_client):
    assert chain_client.get("/dag/CH.1", params={"radius": "x"}).status_code == 400
    assert chain_client.get("/dag/CH.1", params={"radius": "-2"}).status_code == 400


def test_stats_endpoint_matches_report(client, store):
    from pst.metrics import corpus_report
    body = client.get("/stats").json()
    assert body == corpus_report(store).to_json()


def test_responses_are_pure(client):
    first = client.get("/dag/MunkTop.13.2", params={"radius": 2})
    second = client.get("/dag/MunkTop.13.2", params={"radius": 2})
    assert first.content == second.content


def test_node_view_has_subtree_summaries(client):
    body = client.get("/dag/MunkTop.13.3.c", params={"radius": 1}).json()
    root = next(n for n in body["nodes"] if n["id"] == "MunkTop.13.3.c")
    assert root["subtree_size"] > 10
    assert root["subtree_depth"] > 5
    assert "depth_summary" in root
