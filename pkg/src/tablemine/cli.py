"""Command-line orchestration of the pipeline.

Subcommands mirror the pipeline stages (ingest, analyze, annotate,
classify, extract), plus model training, evaluation, and the HTTP
server that powers the rule workbench. The store directory can also
come from the TABLEMINE_STORE environment variable.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import evaluation, functional, pipeline, pragmatic
from .model import dumps
from .rules.cues import CueError
from .rules.syntactic import RuleSyntaxError, parse_rule_file
from .rules.varspec import VarSpecError, load_varspec
from .semantic import GazetteerError, load_gazetteer
from .store import RecordStore, Store, StoreIo, records_from_tsv, records_to_tsv, record_to_json

log = logging.getLogger(__name__)

STORE_ENV = "TABLEMINE_STORE"


class CliError(Exception):
    pass


def _store_from(args) -> Store:
    path = args.store or os.environ.get(STORE_ENV)
    if not path:
        raise CliError("no store directory: pass --store or set TABLEMINE_STORE")
    return Store(path)


def _cmd_ingest(args) -> int:
    store = _store_from(args)
    dialect = None if args.dialect == "auto" else args.dialect
    count = pipeline.ingest_paths(store, args.paths, dialect)
    print(f"ingested {count} tables into {store.root}")
    return 0


def _cmd_analyze(args) -> int:
    store = _store_from(args)
    model = functional.HeaderModel.load(args.header_model) if args.header_model else None
    count = pipeline.analyze_store(store, model)
    print(f"analyzed {count} tables")
    return 0


def _cmd_annotate(args) -> int:
    store = _store_from(args)
    gazetteers = [load_gazetteer(path) for path in args.gazetteer]
    count = pipeline.annotate_store(store, gazetteers)
    print(f"annotated {count} spans")
    return 0


def _cmd_classify(args) -> int:
    store = _store_from(args)
    model = pragmatic.PragmaticModel.load(args.model) if args.model else None
    rules = pragmatic.load_section_rules(args.section_rules) if args.section_rules else None
    if model is None and rules is None:
        raise CliError("classify needs --model and/or --section-rules")
    classes = pipeline.classify_store(store, model, rules)
    print(f"classified {len(classes)} tables")
    return 0


def _cmd_extract(args) -> int:
    store = _store_from(args)
    specs = [load_varspec(path) for path in args.spec]
    rules = {}
    for path in args.rules:
        rules.update(parse_rule_file(Path(path).read_text(encoding="utf-8")))
    result = pipeline.extract_tables(store, specs, rules)
    out = Path(args.out)
    fmt = args.format or ("tsv" if out.suffix == ".tsv" else "json")
    if fmt == "tsv":
        out.write_text(records_to_tsv(result.records), encoding="utf-8")
    else:
        RecordStore(out).write(result.records)
    for diagnostic in result.diagnostics:
        log.warning(
            "%s %s: %s", diagnostic.table_id, diagnostic.kind, diagnostic.message
        )
    print(f"extracted {len(result.records)} records -> {out}")
    return 0


def _read_labelled_header_cells(path: Path) -> list[tuple[str, bool]]:
    labelled: list[tuple[str, bool]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        text, _, label = line.rpartition("\t")
        label = label.strip().lower()
        if label in ("header", "1", "true"):
            labelled.append((text, True))
        elif label in ("non_header", "0", "false"):
            labelled.append((text, False))
        else:
            raise CliError(f"{path}:{lineno}: unknown label {label!r}")
    return labelled


def _cmd_train(args) -> int:
    if args.target == "header":
        labelled = _read_labelled_header_cells(Path(args.labels))
        model = functional.train_header_model(labelled)
        model.save(args.out)
        print(f"trained header model on {len(labelled)} cells -> {args.out}")
        return 0
    store = _store_from(args)
    labels: dict[str, str] = {}
    for line in Path(args.labels).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        table_id, _, label = line.partition("\t")
        labels[table_id.strip()] = label.strip()
    labelled = []
    for table_id, label in sorted(labels.items()):
        grid, _links = store.load_analysis(table_id)
        labelled.append((pragmatic.extract_features(grid), label))
    model = pragmatic.train_pragmatic(labelled)
    model.save(args.out)
    print(f"trained pragmatic model on {len(labelled)} tables -> {args.out}")
    return 0


def _load_records_file(path: Path) -> list[dict]:
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".tsv":
        return records_from_tsv(text)
    payload = json.loads(text)
    if not isinstance(payload, list):
        raise CliError(f"{path}: expected a JSON list of records")
    return payload


def _cmd_eval(args) -> int:
    extracted = _load_records_file(Path(args.extracted))
    gold = _load_records_file(Path(args.gold))
    keys = tuple(args.keys) if args.keys else evaluation.DEFAULT_MATCH_KEYS
    result = evaluation.evaluate(extracted, gold, keys)
    sys.stdout.write(evaluation.format_report(result, title=f"eval {args.extracted}"))
    if args.out:
        Path(args.out).write_text(dumps(result.to_json()), encoding="utf-8")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(_store_from(args).root)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tablemine",
        description="Mine structured records out of tables in article and drug-label XML.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse XML documents into a store")
    p.add_argument("paths", nargs="+")
    p.add_argument("--dialect", choices=["pmc", "spl", "auto"], default="auto")
    p.add_argument("--store")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("analyze", help="assign cell roles and build links")
    p.add_argument("--store")
    p.add_argument("--header-model")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("annotate", help="tag cells with gazetteer concepts")
    p.add_argument("--store")
    p.add_argument("--gazetteer", action="append", required=True)
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("classify", help="assign pragmatic classes")
    p.add_argument("--store")
    p.add_argument("--model")
    p.add_argument("--section-rules")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("extract", help="run variable specs over the corpus")
    p.add_argument("--store")
    p.add_argument("--spec", action="append", required=True)
    p.add_argument("--rules", action="append", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["tsv", "json"])
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("train", help="train the header or pragmatic classifier")
    p.add_argument("target", choices=["header", "pragmatic"])
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--store")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="score extracted records against gold")
    p.add_argument("--extracted", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--keys", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="serve the workbench HTTP API")
    p.add_argument("--store")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8400)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        StoreIo,
        VarSpecError,
        RuleSyntaxError,
        CueError,
        GazetteerError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
