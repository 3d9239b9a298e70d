import json
from pathlib import Path

import pytest

from tablemine import functional, ingest, pipeline, pragmatic, semantic
from tablemine.rules.syntactic import parse_rule_file
from tablemine.rules.varspec import parse_varspec
from tablemine.store import Store

from helpers import FIXTURES, PACKS, load_labelled_cells

SPEC_NAMES = ("age", "patient_count", "gender", "adverse_events", "ddi")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def packs_dir() -> Path:
    return PACKS


@pytest.fixture(scope="session")
def rule_set():
    """Shipped syntactic rules, keyed by name in file order."""
    return parse_rule_file((PACKS / "patterns.synrules").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def specs():
    return {
        name: parse_varspec((PACKS / f"{name}.varspec").read_text(encoding="utf-8"))
        for name in SPEC_NAMES
    }


@pytest.fixture(scope="session")
def ae_gazetteer():
    return semantic.load_gazetteer(PACKS / "ae_terms.tsv")


@pytest.fixture(scope="session")
def drug_gazetteer():
    return semantic.load_gazetteer(PACKS / "drugs.tsv")


@pytest.fixture(scope="session")
def header_labelled():
    return load_labelled_cells()


@pytest.fixture(scope="session")
def header_model(header_labelled):
    return functional.train_header_model(header_labelled)


@pytest.fixture(scope="session")
def article_store(tmp_path_factory, ae_gazetteer) -> Store:
    """Journal corpus run through ingest, analyze, annotate."""
    store = Store(tmp_path_factory.mktemp("articles"))
    pipeline.ingest_paths(store, [FIXTURES / "articles"])
    pipeline.analyze_store(store)
    pipeline.annotate_store(store, [ae_gazetteer])
    return store


@pytest.fixture(scope="session")
def label_store(tmp_path_factory, header_model, drug_gazetteer) -> Store:
    """Product label corpus run through ingest, analyze, annotate, classify."""
    store = Store(tmp_path_factory.mktemp("labels"))
    pipeline.ingest_paths(store, [FIXTURES / "labels"])
    pipeline.analyze_store(store, header_model)
    pipeline.annotate_store(store, [drug_gazetteer])
    pipeline.classify_store(
        store, section_rules=pragmatic.load_section_rules(PACKS / "section_rules.tsv")
    )
    return store


@pytest.fixture(scope="session")
def role_tables():
    """The hand-labelled role corpus: grids, gold roles, gold links."""
    from tablemine.model import table_from_json

    tables = json.loads((FIXTURES / "roles" / "tables.json").read_text(encoding="utf-8"))
    roles = json.loads((FIXTURES / "roles" / "roles.gold.json").read_text(encoding="utf-8"))
    links = json.loads((FIXTURES / "roles" / "links.gold.json").read_text(encoding="utf-8"))
    grids = {tid: table_from_json(payload).grid for tid, payload in tables.items()}
    return grids, roles, links


@pytest.fixture(scope="session")
def marquee():
    """Loader for the standalone showcase documents."""

    def load(name: str):
        return ingest.read_document(ingest.load_document(FIXTURES / "marquee" / f"{name}.xml"))

    return load
