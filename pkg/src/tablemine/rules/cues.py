"""Cues: the triggers that select or veto candidate cells.

A cue is a word, an annotation id, an annotation type, or a regular
expression, aimed at one functional area of a table (caption, header,
stub, super-row, or the target cell itself). Cue lists are plain text,
one cue per line, each line optionally prefixed with its kind:

    [word]:age
    [annID]:C0001779
    [annType]:Sign or Symptom
    [pattern]:\\(\\s*n\\s*=\\s*(\\d+)\\s*\\)

Unprefixed lines are words. Word matching is case-insensitive and
whole-word, but a boundary is only required on sides where the cue
itself starts or ends with a word character, so "%" matches inside
"(52.5%)" while "age" does not match inside "stage".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

KIND_WORD = "word"
KIND_ANN_ID = "annID"
KIND_ANN_TYPE = "annType"
KIND_PATTERN = "pattern"

_KIND_PREFIXES = {
    "[word]:": KIND_WORD,
    "[annid]:": KIND_ANN_ID,
    "[anntype]:": KIND_ANN_TYPE,
    "[pattern]:": KIND_PATTERN,
}

AREA_CAPTION = "caption"
AREA_HEADER = "header"
AREA_STUB = "stub"
AREA_SUPER_ROW = "super_row"
AREA_TARGET_CELL = "target_cell"

AREAS = (AREA_CAPTION, AREA_HEADER, AREA_STUB, AREA_SUPER_ROW, AREA_TARGET_CELL)

_AREA_ALIASES = {
    "caption": AREA_CAPTION,
    "header": AREA_HEADER,
    "headers": AREA_HEADER,
    "stub": AREA_STUB,
    "super-row": AREA_SUPER_ROW,
    "super_row": AREA_SUPER_ROW,
    "superrow": AREA_SUPER_ROW,
    "cell": AREA_TARGET_CELL,
    "target-cell": AREA_TARGET_CELL,
    "target_cell": AREA_TARGET_CELL,
}


class CueError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyCue(CueError):
    pass


def parse_area(token: str, line: int | None = None) -> str:
    area = _AREA_ALIASES.get(token.strip().lower())
    if area is None:
        raise CueError(f"unknown area {token.strip()!r}", line)
    return area


@dataclass(frozen=True)
class Cue:
    kind: str
    value: str
    target_area: str

    def __post_init__(self) -> None:
        if self.kind not in (KIND_WORD, KIND_ANN_ID, KIND_ANN_TYPE, KIND_PATTERN):
            raise CueError(f"unknown cue kind {self.kind!r}")
        if self.target_area not in AREAS:
            raise CueError(f"unknown target area {self.target_area!r}")
        if not self.value:
            raise EmptyCue("cue has no value")
        if self.kind == KIND_PATTERN:
            try:
                re.compile(self.value)
            except re.error as exc:
                raise CueError(f"bad cue pattern {self.value!r}: {exc}") from exc

    def describe(self) -> str:
        return f"[{self.kind}]:{self.value}@{self.target_area}"


@lru_cache(maxsize=2048)
def _word_regex(word: str) -> re.Pattern[str]:
    # asymmetric boundaries: only anchor to \b where the cue edge is a
    # word character, so punctuation cues still match inside tokens
    prefix = r"\b" if word[:1].isalnum() else ""
    suffix = r"\b" if word[-1:].isalnum() else ""
    return re.compile(prefix + re.escape(word) + suffix, re.IGNORECASE)


def find_word(word: str, text: str) -> int:
    """Offset of the first whole-word occurrence, or -1."""
    match = _word_regex(word).search(text)
    return match.start() if match else -1


def word_in(word: str, text: str) -> bool:
    return find_word(word, text) != -1


@lru_cache(maxsize=512)
def compiled_pattern(value: str) -> re.Pattern[str]:
    return re.compile(value)


def pattern_groups(value: str) -> int:
    return compiled_pattern(value).groups


def parse_cue_line(line: str, target_area: str, lineno: int | None = None) -> Cue:
    stripped = line.strip()
    kind = KIND_WORD
    value = stripped
    for prefix, prefix_kind in _KIND_PREFIXES.items():
        if stripped.lower().startswith(prefix):
            kind = prefix_kind
            value = stripped[len(prefix) :].strip()
            break
    if not value:
        raise EmptyCue("cue prefix with no value", lineno)
    try:
        return Cue(kind=kind, value=value, target_area=target_area)
    except CueError as exc:
        raise CueError(str(exc), lineno) from exc


def parse_cue_list(text: str, target_area: str = AREA_TARGET_CELL) -> list[Cue]:
    """One cue per line; blank lines and # comments are skipped."""
    cues: list[Cue] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cues.append(parse_cue_line(line, target_area, lineno))
    return cues
