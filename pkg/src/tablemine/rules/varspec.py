"""Variable specs: what to extract and which cues/rules drive it.

A .varspec file is a scalar header followed by cue sections:

    variable: age
    group: AggregatedStatistical
    pragmatic: baseline characteristics
    rules: GetMeanSDRange, GetMeanSD, GetSingle
    units: years, months, weeks, days
    default-unit: year
    selection: cells

    [whitelist: stub, header]
    [word]:age

    [blacklist: header]
    [word]:p value

    [subcategory: Male]
    [word]:male

Sections list one cue per line (see cues module for line syntax); the
area list after `whitelist:`/`blacklist:` aims every cue in the section
at those areas. Subcategory cues are matched in the target cell and its
navigational path. `selection` picks the candidate strategy: `cells`
(default), `column-majority` (requires `majority-types`), or
`interaction-column`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .cues import Cue, CueError, parse_area, parse_cue_line

INFO_GROUPS = (
    "SingleNumeric",
    "AggregatedStatistical",
    "CategorizedNumeric",
    "Categorical",
)

_GROUP_ALIASES = {name.lower(): name for name in INFO_GROUPS}
_GROUP_ALIASES.update({str(i + 1): name for i, name in enumerate(INFO_GROUPS)})

SELECTION_CELLS = "cells"
SELECTION_COLUMN_MAJORITY = "column-majority"
SELECTION_INTERACTION_COLUMN = "interaction-column"

SELECTIONS = (
    SELECTION_CELLS,
    SELECTION_COLUMN_MAJORITY,
    SELECTION_INTERACTION_COLUMN,
)


class VarSpecError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class UnitSpec:
    allowed: tuple[str, ...] = ()
    default: str = ""


@dataclass(frozen=True)
class VariableSpec:
    name: str
    info_group: str
    pragmatic_types: tuple[str, ...] = ()
    semantic_identifier: str = ""
    whitelist: tuple[Cue, ...] = ()
    blacklist: tuple[Cue, ...] = ()
    subcategories: tuple[tuple[str, tuple[Cue, ...]], ...] = ()
    syntactic_rules: tuple[str, ...] = ()
    units: UnitSpec = field(default_factory=UnitSpec)
    selection: str = SELECTION_CELLS
    majority_types: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.info_group not in INFO_GROUPS:
            raise VarSpecError(f"unknown info group {self.info_group!r}")
        if self.selection not in SELECTIONS:
            raise VarSpecError(f"unknown selection strategy {self.selection!r}")
        if not self.whitelist and self.selection != SELECTION_COLUMN_MAJORITY:
            raise VarSpecError("spec needs at least one whitelist cue")
        if self.units.default and self.units.allowed and self.units.default not in self.units.allowed:
            raise VarSpecError(
                f"default unit {self.units.default!r} not among allowed units"
            )
        if self.selection == SELECTION_COLUMN_MAJORITY and not self.majority_types:
            raise VarSpecError("column-majority selection needs majority-types")


_SECTION = re.compile(r"^\[\s*(whitelist|blacklist|subcategory)\s*(?::\s*(.*?))?\s*\]$")

_SCALAR_KEYS = {
    "variable": "name",
    "name": "name",
    "group": "info_group",
    "info-group": "info_group",
    "pragmatic": "pragmatic_types",
    "pragmatic-types": "pragmatic_types",
    "semantic": "semantic_identifier",
    "semantic-identifier": "semantic_identifier",
    "rules": "syntactic_rules",
    "syntactic-rules": "syntactic_rules",
    "units": "units_allowed",
    "default-unit": "units_default",
    "selection": "selection",
    "majority-types": "majority_types",
}


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in value.split(",") if part.strip())


def parse_varspec(text: str) -> VariableSpec:
    scalars: dict[str, str] = {}
    whitelist: list[Cue] = []
    blacklist: list[Cue] = []
    subcategories: list[tuple[str, list[Cue]]] = []
    # current section: (kind, areas or subcategory label)
    section: Optional[tuple[str, object]] = None

    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        header = _SECTION.match(stripped)
        if header is not None:
            kind, arg = header.group(1), (header.group(2) or "").strip()
            if kind in ("whitelist", "blacklist"):
                if not arg:
                    raise VarSpecError(f"{kind} section needs target areas", lineno)
                try:
                    areas = tuple(parse_area(a, lineno) for a in arg.split(","))
                except CueError as exc:
                    raise VarSpecError(str(exc), lineno) from exc
                section = (kind, areas)
            else:
                if not arg:
                    raise VarSpecError("subcategory section needs a label", lineno)
                subcategories.append((arg, []))
                section = ("subcategory", arg)
            continue
        if section is None:
            key, sep, value = stripped.partition(":")
            if not sep:
                raise VarSpecError(f"expected `key: value`, got {stripped!r}", lineno)
            field_name = _SCALAR_KEYS.get(key.strip().lower())
            if field_name is None:
                raise VarSpecError(f"unknown key {key.strip()!r}", lineno)
            scalars[field_name] = value.strip()
            continue
        kind, arg = section
        try:
            if kind == "subcategory":
                cue = parse_cue_line(stripped, "target_cell", lineno)
                subcategories[-1][1].append(cue)
            else:
                target = whitelist if kind == "whitelist" else blacklist
                for area in arg:  # type: ignore[union-attr]
                    target.append(parse_cue_line(stripped, area, lineno))
        except CueError as exc:
            raise VarSpecError(str(exc), lineno) from exc

    name = scalars.get("name", "")
    if not name:
        raise VarSpecError("missing `variable:` name", 1)
    group_token = scalars.get("info_group", "")
    info_group = _GROUP_ALIASES.get(group_token.lower())
    if info_group is None:
        raise VarSpecError(f"missing or unknown info group {group_token!r}", 1)
    try:
        return VariableSpec(
            name=name,
            info_group=info_group,
            pragmatic_types=_split_list(scalars.get("pragmatic_types", "")),
            semantic_identifier=scalars.get("semantic_identifier", ""),
            whitelist=tuple(whitelist),
            blacklist=tuple(blacklist),
            subcategories=tuple(
                (label, tuple(cues)) for label, cues in subcategories
            ),
            syntactic_rules=_split_list(scalars.get("syntactic_rules", "")),
            units=UnitSpec(
                allowed=_split_list(scalars.get("units_allowed", "")),
                default=scalars.get("units_default", ""),
            ),
            selection=scalars.get("selection", SELECTION_CELLS).strip() or SELECTION_CELLS,
            majority_types=_split_list(scalars.get("majority_types", "")),
        )
    except VarSpecError:
        raise
    except CueError as exc:
        raise VarSpecError(str(exc)) from exc


def load_varspec(path: str | Path) -> VariableSpec:
    try:
        return parse_varspec(Path(path).read_text(encoding="utf-8"))
    except VarSpecError as exc:
        wrapped = VarSpecError(f"{path}: {exc}")
        wrapped.line = exc.line
        wrapped.column = exc.column
        raise wrapped from exc
