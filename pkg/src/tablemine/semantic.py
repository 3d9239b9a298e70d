"""Gazetteer-based concept tagging of cell content.

Each gazetteer maps surface forms to a concept id and a semantic type.
Matching is word-boundary aligned and longest-match: all candidate
occurrences are collected, then resolved to a non-overlapping set
preferring longer matches, with leftmost winning among equal lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .model import Annotation, TableGrid, normalize_whitespace


class GazetteerError(ValueError):
    """Base class for gazetteer loading problems."""


class ParseError(GazetteerError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateSurface(GazetteerError):
    pass


@dataclass(frozen=True)
class Gazetteer:
    """Immutable surface-form dictionary."""

    name: str
    entries: tuple[tuple[str, str, str], ...]  # (surface, concept_id, semantic_type)
    case_insensitive: bool = True
    lookup: dict[str, tuple[str, str]] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        lookup: dict[str, tuple[str, str]] = {}
        for surface, concept_id, semantic_type in self.entries:
            key = self._key(surface)
            if not key:
                raise GazetteerError(f"{self.name}: empty surface form")
            if key in lookup:
                raise DuplicateSurface(f"{self.name}: duplicate surface {surface!r}")
            lookup[key] = (concept_id, semantic_type)
        object.__setattr__(self, "lookup", lookup)

    def _key(self, surface: str) -> str:
        surface = normalize_whitespace(surface)
        return surface.lower() if self.case_insensitive else surface


def load_gazetteer(path: str | Path, name: str | None = None) -> Gazetteer:
    """Read tab-separated `surface<TAB>concept_id<TAB>semantic_type` lines."""
    path = Path(path)
    entries: list[tuple[str, str, str]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(f"expected 3 tab-separated fields, got {len(parts)}", lineno)
        surface, concept_id, semantic_type = (p.strip() for p in parts)
        if not surface:
            raise ParseError("empty surface form", lineno)
        key = normalize_whitespace(surface).lower()
        if key in seen:
            raise DuplicateSurface(f"line {lineno}: duplicate surface {surface!r}")
        seen.add(key)
        entries.append((surface, concept_id, semantic_type))
    return Gazetteer(name=name or path.stem, entries=tuple(entries))


def _is_word_char(ch: str) -> bool:
    return ch.isalnum()


def _boundary_ok(text: str, start: int, end: int) -> bool:
    if start > 0 and _is_word_char(text[start - 1]) and _is_word_char(text[start]):
        return False
    if end < len(text) and _is_word_char(text[end - 1]) and _is_word_char(text[end]):
        return False
    return True


def find_matches(text: str, gazetteers: Sequence[Gazetteer]) -> list[tuple[int, int, str, str, str]]:
    """All word-boundary occurrences of any entry: (start, end, cid, type, source)."""
    matches: list[tuple[int, int, str, str, str]] = []
    for gaz in gazetteers:
        haystack = text.lower() if gaz.case_insensitive else text
        for surface, (concept_id, semantic_type) in gaz.lookup.items():
            start = haystack.find(surface)
            while start != -1:
                end = start + len(surface)
                if _boundary_ok(text, start, end):
                    matches.append((start, end, concept_id, semantic_type, gaz.name))
                start = haystack.find(surface, start + 1)
    return matches


def resolve_longest(matches: Iterable[tuple[int, int, str, str, str]]) -> list[tuple[int, int, str, str, str]]:
    """Keep a non-overlapping subset preferring length, then leftmost."""
    ordered = sorted(matches, key=lambda m: (-(m[1] - m[0]), m[0], m[4], m[2]))
    taken: list[tuple[int, int, str, str, str]] = []
    for match in ordered:
        if all(match[1] <= t[0] or match[0] >= t[1] for t in taken):
            taken.append(match)
    return sorted(taken, key=lambda m: m[0])


def annotate_text(text: str, gazetteers: Sequence[Gazetteer]) -> list[tuple[int, int, str, str, str]]:
    return resolve_longest(find_matches(text, gazetteers))


def annotate_grid(grid: TableGrid, gazetteers: Sequence[Gazetteer]) -> tuple[Annotation, ...]:
    """Annotations for every origin cell, in (row, col, start) order."""
    annotations: list[Annotation] = []
    for cell in grid.iter_cells():
        if not cell.is_spanning_origin or not cell.content:
            continue
        for start, end, concept_id, semantic_type, source in annotate_text(
            cell.content, gazetteers
        ):
            annotations.append(
                Annotation(
                    cell=(cell.row, cell.col),
                    start=start,
                    end=end,
                    concept_id=concept_id,
                    semantic_type=semantic_type,
                    source=source,
                )
            )
    return tuple(annotations)
