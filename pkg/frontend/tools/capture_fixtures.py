"""Record real API responses for the workbench test suite.

Builds a throwaway store from bundled XML fixtures, runs the live app
over it in-process, and saves every request/response pair the browser
tests replay. Run from the repository root after installing the Python
package:

    python frontend/tools/capture_fixtures.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from tablemine import pipeline
from tablemine.api import create_app
from tablemine.semantic import load_gazetteer
from tablemine.store import Store, record_from_json, records_to_tsv

HERE = Path(__file__).resolve().parent
REPO = HERE.parent.parent
FIXTURES = HERE.parent / "tests" / "fixtures"
RESPONSES = FIXTURES / "responses"

RULES_TEXT = (REPO / "src" / "tablemine" / "packs" / "patterns.synrules").read_text(
    encoding="utf-8"
)

SPEC_BMI_V1 = """variable: bmi
group: AggregatedStatistical
rules: GetMeanSD

[whitelist: stub]
[word]:bmi
"""

SPEC_BMI_V2 = SPEC_BMI_V1 + """
[blacklist: stub]
[word]:change
"""

SPEC_BMI_BROAD = """variable: bmi
group: AggregatedStatistical
rules: GetMeanSD

[whitelist: stub]
[word]:bmi
[word]:weight

[blacklist: stub]
[word]:change
"""

SPEC_NOTHING = """variable: bmi
group: AggregatedStatistical
rules: GetMeanSD

[whitelist: stub]
[word]:zzznothing
"""

SPEC_AGE = """variable: age
group: AggregatedStatistical
rules: GetMean1
units: years
default-unit: years

[whitelist: stub]
[word]:age
"""

SPEC_BAD = """variable: bmi
group: bogus
rules: GetMeanSD

[whitelist: stub]
[word]:bmi
"""

RULES_BAD = """+Broken
(\\d+
1->value
"""

TABLE = "bmi_arms_t0"
GOLD_ID = "bmi_weight"


def build_store(root: Path) -> Store:
    store = Store(root)
    paths = [
        FIXTURES / "bmi_arms.xml",
        REPO / "tests" / "fixtures" / "marquee" / "demographics.xml",
        REPO / "tests" / "fixtures" / "marquee" / "two_arm.xml",
        REPO / "tests" / "fixtures" / "articles" / "pmc0002.xml",
    ]
    pipeline.ingest_paths(store, paths)
    pipeline.analyze_store(store)
    gazetteer = load_gazetteer(REPO / "src" / "tablemine" / "packs" / "ae_terms.tsv")
    pipeline.annotate_store(store, [gazetteer])
    classes = {
        "bmi_arms_t0": {"label": "baseline characteristics"},
        "demographics_t0": {"label": "baseline characteristics"},
        "two_arm_t0": {"label": "baseline characteristics"},
        "pmc0002_t1": {"label": "adverse events"},
    }
    store.save_classes(classes)
    return store


def write_gold(client: TestClient, store: Store) -> None:
    response = client.post(
        "/preview/extract",
        json={"spec": SPEC_BMI_BROAD, "rules": RULES_TEXT, "table_id": TABLE},
    )
    response.raise_for_status()
    records = [record_from_json(entry) for entry in response.json()["records"]]
    gold_dir = store.root / "gold"
    gold_dir.mkdir(exist_ok=True)
    (gold_dir / f"{GOLD_ID}.tsv").write_text(records_to_tsv(records), encoding="utf-8")


def save(name: str, method: str, path: str, *, query=None, body=None, response) -> None:
    payload = {
        "request": {"method": method, "path": path, "query": query, "body": body},
        "status": response.status_code,
        "body_text": response.text,
    }
    out = RESPONSES / f"{name}.json"
    out.write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    print(f"{name}: {response.status_code} {len(response.text)} bytes")


def main() -> int:
    RESPONSES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        store = build_store(Path(tmp))
        client = TestClient(create_app(store.root), raise_server_exceptions=False)
        write_gold(client, store)

        def get(name, path, query=None):
            response = client.get(path, params=query)
            save(name, "GET", path, query=query, response=response)
            return response

        def post(name, path, body):
            response = client.post(path, json=body)
            save(name, "POST", path, body=body, response=response)
            return response

        get("tables_all", "/tables")
        get("tables_ae", "/tables", {"pragmatic_class": "adverse events"})
        get("table_bmi", f"/tables/{TABLE}")
        get("table_demographics", "/tables/demographics_t0")
        get("table_pmc0002_t1", "/tables/pmc0002_t1")
        get("table_missing", "/tables/nope_t9")

        post("select_v1", "/preview/select", {"spec": SPEC_BMI_V1, "table_id": TABLE})
        post("select_v2", "/preview/select", {"spec": SPEC_BMI_V2, "table_id": TABLE})
        post("select_broad", "/preview/select", {"spec": SPEC_BMI_BROAD, "table_id": TABLE})
        post("select_nothing", "/preview/select", {"spec": SPEC_NOTHING, "table_id": TABLE})
        post("select_age", "/preview/select", {"spec": SPEC_AGE, "table_id": TABLE})
        post("select_bad", "/preview/select", {"spec": SPEC_BAD, "table_id": TABLE})

        extractions = {}
        for name, spec in [
            ("extract_v1", SPEC_BMI_V1),
            ("extract_v2", SPEC_BMI_V2),
            ("extract_broad", SPEC_BMI_BROAD),
            ("extract_nothing", SPEC_NOTHING),
            ("extract_age", SPEC_AGE),
        ]:
            body = {"spec": spec, "rules": RULES_TEXT, "table_id": TABLE}
            response = post(name, "/preview/extract", body)
            extractions[name] = response.json()["records"]
        post(
            "extract_bad_rules",
            "/preview/extract",
            {"spec": SPEC_BMI_V2, "rules": RULES_BAD, "table_id": TABLE},
        )

        for name in ["extract_v1", "extract_v2", "extract_broad", "extract_nothing"]:
            eval_name = name.replace("extract", "eval")
            post(eval_name, "/eval", {"records": extractions[name], "gold_id": GOLD_ID})
        post("eval_unknown_gold", "/eval", {"records": [], "gold_id": "nope"})

    inputs = {
        "rules": RULES_TEXT,
        "rules_bad": RULES_BAD,
        "spec_bmi_v1": SPEC_BMI_V1,
        "spec_bmi_v2": SPEC_BMI_V2,
        "spec_bmi_broad": SPEC_BMI_BROAD,
        "spec_nothing": SPEC_NOTHING,
        "spec_age": SPEC_AGE,
        "spec_bad": SPEC_BAD,
        "table_id": TABLE,
        "gold_id": GOLD_ID,
    }
    (FIXTURES / "inputs.json").write_text(
        json.dumps(inputs, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    print(f"inputs.json: {len(inputs)} entries")
    return 0


if __name__ == "__main__":
    sys.exit(main())
