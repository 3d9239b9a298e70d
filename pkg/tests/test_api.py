"""The HTTP workbench API, exercised through an in-process client."""

import shutil

import pytest
from fastapi.testclient import TestClient

from helpers import FIXTURES, PACKS
from tablemine import pipeline
from tablemine.api import create_app
from tablemine.store import Store, record_to_json

AGE_SPEC = (PACKS / "age.varspec").read_text(encoding="utf-8")
DDI_SPEC = (PACKS / "ddi.varspec").read_text(encoding="utf-8")
RULES = (PACKS / "patterns.synrules").read_text(encoding="utf-8")


@pytest.fixture(scope="module")
def marquee_client(tmp_path_factory):
    store = Store(tmp_path_factory.mktemp("api") / "store")
    pipeline.ingest_paths(store, [FIXTURES / "marquee"])
    pipeline.analyze_store(store)
    return TestClient(create_app(store.root))


@pytest.fixture(scope="module")
def label_client(label_store):
    return TestClient(create_app(label_store.root))


# --- table listing and detail -------------------------------------------------

def test_list_tables(label_client):
    payload = label_client.get("/tables").json()
    tables = payload["tables"]
    assert len(tables) == 13
    assert {"table_id", "doc_id", "caption", "rows", "cols", "pragmatic_class"} \
        <= set(tables[0])
    assert any(t["pragmatic_class"] == "drug interactions" for t in tables)


def test_list_tables_filtered_by_class(label_client):
    payload = label_client.get(
        "/tables", params={"pragmatic_class": "drug interactions"}).json()
    tables = payload["tables"]
    assert tables
    assert all(t["pragmatic_class"] == "drug interactions" for t in tables)
    assert len(tables) < 13


def test_table_detail(label_client):
    table_id = label_client.get("/tables").json()["tables"][0]["table_id"]
    payload = label_client.get(f"/tables/{table_id}").json()
    grid = payload["grid"]
    assert grid["table_id"] == table_id
    assert grid["cells"]
    assert isinstance(payload["links"], list) and payload["links"]
    assert isinstance(payload["annotations"], list)
    assert payload["pragmatic_class"] in (
        "drug interactions", "adverse events", None)


def test_unknown_table_is_404(label_client):
    response = label_client.get("/tables/nope_t9")
    assert response.status_code == 404
    assert response.json() == {"detail": {"error": "unknown table 'nope_t9'"}}


# --- selection preview -----------------------------------------------------------

def test_preview_select(marquee_client):
    response = marquee_client.post(
        "/preview/select", json={"spec": AGE_SPEC, "table_id": "two_arm_t0"})
    assert response.status_code == 200
    rows = response.json()["selections"]["two_arm_t0"]
    by_cell = {tuple(entry["cell"]): entry for entry in rows}
    assert by_cell[(1, 1)] == {
        "cell": [1, 1], "matched": ["[word]:age@stub"],
        "blocked": [], "selected": True,
    }
    assert by_cell[(1, 3)]["blocked"] == ["[word]:p value@header"]
    assert not by_cell[(1, 3)]["selected"]


def test_preview_select_all_tables(marquee_client):
    response = marquee_client.post("/preview/select", json={"spec": AGE_SPEC})
    selections = response.json()["selections"]
    assert set(selections) == {
        "demographics_t0", "gender_arms_t0", "interactions_t0", "two_arm_t0"}


def test_preview_select_unknown_table(marquee_client):
    response = marquee_client.post(
        "/preview/select", json={"spec": AGE_SPEC, "table_id": "missing_t0"})
    assert response.status_code == 404
    assert response.json()["detail"]["error"] == "unknown table 'missing_t0'"


def test_preview_select_bad_spec(marquee_client):
    response = marquee_client.post(
        "/preview/select", json={"spec": "variable: x\nbogus: 1\n"})
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["line"] == 2
    assert "bogus" in detail["error"]


# --- extraction preview ------------------------------------------------------------

def test_preview_extract_matches_engine(marquee_client, label_store, specs,
                                        rule_set):
    response = marquee_client.post(
        "/preview/extract",
        json={"spec": AGE_SPEC, "rules": RULES, "table_id": "two_arm_t0"})
    assert response.status_code == 200
    payload = response.json()
    assert payload["diagnostics"] == []
    assert [r["value"] for r in payload["records"]] == ["32.0", "3.9", "32.5", "3.7"]
    assert payload["records"][0] == {
        "variable_name": "age", "variable_subcategory": "",
        "value_component": "Mean", "context": "Bravelle® (n = 120)",
        "value": "32.0", "unit": "years", "doc_id": "two_arm",
        "table_id": "two_arm_t0", "row": 1, "col": 1, "rule": "GetMeanSD",
    }


def test_preview_extract_surfaces_diagnostics(marquee_client):
    response = marquee_client.post(
        "/preview/extract",
        json={"spec": AGE_SPEC, "rules": RULES, "table_id": "demographics_t0"})
    diagnostics = response.json()["diagnostics"]
    assert {
        "table_id": "demographics_t0", "cell": [1, 1],
        "kind": "range_inverted",
        "message": "range minimum 36 exceeds maximum 2",
    } in diagnostics


def test_preview_extract_bad_rules(marquee_client):
    response = marquee_client.post(
        "/preview/extract",
        json={"spec": AGE_SPEC, "rules": "+Broken\n(\\d+\n1->value\n"})
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["line"] == 2
    assert "column" in detail


def test_preview_extract_whole_corpus(marquee_client):
    response = marquee_client.post(
        "/preview/extract", json={"spec": AGE_SPEC, "rules": RULES})
    values = [r["value"] for r in response.json()["records"]]
    # two_arm arms, gender_arms arms, and the demographics median row
    assert "32.0" in values and "57" in values


# --- evaluation ------------------------------------------------------------------

def test_eval_against_stored_gold(label_client, label_store, specs, rule_set):
    gold_dir = label_store.root / "gold"
    gold_dir.mkdir(exist_ok=True)
    shutil.copy(
        FIXTURES / "label_gold" / "drug_interaction.gold.tsv",
        gold_dir / "drug_interaction.tsv")
    result = pipeline.extract_tables(label_store, [specs["ddi"]], rule_set)
    records = [record_to_json(r) for r in result.records]
    response = label_client.post(
        "/eval", json={"records": records, "gold_id": "drug_interaction"})
    assert response.status_code == 200
    payload = response.json()
    assert (payload["tp"], payload["fp"], payload["fn"]) == (50, 2, 1)
    assert payload["precision"] == pytest.approx(50 / 52)
    assert len(payload["false_positives"]) == 2


def test_eval_unknown_gold_is_404(label_client):
    response = label_client.post(
        "/eval", json={"records": [], "gold_id": "absent"})
    assert response.status_code == 404
    assert response.json()["detail"]["error"] == "unknown gold set 'absent'"


def test_eval_with_custom_keys(label_client, label_store, specs, rule_set):
    gold_dir = label_store.root / "gold"
    gold_dir.mkdir(exist_ok=True)
    shutil.copy(
        FIXTURES / "label_gold" / "drug_interaction.gold.tsv",
        gold_dir / "drug_interaction.tsv")
    result = pipeline.extract_tables(label_store, [specs["ddi"]], rule_set)
    records = [record_to_json(r) for r in result.records]
    response = label_client.post(
        "/eval", json={
            "records": records, "gold_id": "drug_interaction",
            "keys": ["variable_name", "value"],
        })
    assert response.status_code == 200
    assert response.json()["tp"] >= 50


# --- store failures --------------------------------------------------------------

def test_store_io_maps_to_500(tmp_path):
    store = Store(tmp_path / "store")
    pipeline.ingest_paths(store, [FIXTURES / "marquee" / "two_arm.xml"])
    (store.root / "grids" / "two_arm_t0.json").unlink()
    client = TestClient(create_app(store.root), raise_server_exceptions=False)
    response = client.get("/tables")
    assert response.status_code == 500
    assert "missing store file" in response.json()["error"]
