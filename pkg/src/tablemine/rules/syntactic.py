"""Syntactic rules: named regular expressions with labeled capture groups.

A rule is declared as its name (leading '+'), its pattern on the next
line(s), and one assignment per line after that:

    +GetMean1
    (\\d+(?:\\.\\d+)?)\\s*-\\s*(\\d+(?:\\.\\d+)?)\\((\\d+(?:\\.\\d+)?)\\s*\\u00b1\\s*(\\d+(?:\\.\\d+)?)\\)
    1->range_min
    2->range_max
    3:median,Median->median
    3->mean

`G->label` sets the group's default label. `G:cues->label` (cues
comma-separated; several cue lists may share one line separated by ';')
makes the label conditional: when the rule fires, the navigational path
is scanned and the cue list whose member occurs earliest wins the group.
Cue matching here is case-sensitive and whole-word (cue lists spell out
case variants explicitly).

When applied, patterns must consume the entire cell content; anchoring
is added by the engine. The content is numeric-normalized first (middle
dots to periods, dashes to '-', whitespace collapsed).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from ..model import normalize_numeric_text, normalize_whitespace


class RuleSyntaxError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(location + message)
        self.line = line
        self.column = column


class UnbalancedGroups(RuleSyntaxError):
    pass


class NoPatternMatch(Exception):
    """No rule pattern consumed the cell content."""

    def __init__(self, content: str):
        super().__init__(f"no syntactic rule matches {content!r}")
        self.content = content


@dataclass(frozen=True)
class GroupCondition:
    """One `G:list1;list2;...->label` line.

    The first cue list claims the label; later lists are competitors. The
    condition fires only when the first list's earliest occurrence in the
    path precedes every competitor occurrence.
    """

    cue_lists: tuple[tuple[str, ...], ...]
    label: str


@dataclass(frozen=True)
class GroupAssignment:
    group: int
    conditions: tuple[GroupCondition, ...] = ()
    default: Optional[str] = None


@dataclass(frozen=True)
class SyntacticRule:
    name: str
    pattern: str
    assignments: tuple[GroupAssignment, ...]

    def assignment_for(self, group: int) -> Optional[GroupAssignment]:
        for assignment in self.assignments:
            if assignment.group == group:
                return assignment
        return None


@lru_cache(maxsize=512)
def _compile_anchored(pattern: str) -> re.Pattern[str]:
    return re.compile(r"\A(?:" + pattern + r")\Z")


@lru_cache(maxsize=2048)
def _cs_word_regex(cue: str) -> re.Pattern[str]:
    prefix = r"\b" if cue[:1].isalnum() else ""
    suffix = r"\b" if cue[-1:].isalnum() else ""
    return re.compile(prefix + re.escape(cue) + suffix)


_ASSIGNMENT = re.compile(r"^\s*(\d+)\s*(?::(.*?))?->\s*(.*?)\s*$")


def _looks_like_assignment(line: str) -> bool:
    return bool(re.match(r"\s*\d+\s*(?::[^>]*)?->", line))


def parse_syntactic_rule(text: str) -> SyntacticRule:
    """Parse one rule block; errors carry the offending line number."""
    lines = text.splitlines()
    name: Optional[str] = None
    name_line = 0
    pattern_parts: list[str] = []
    pattern_line = 0
    raw_assignments: list[tuple[int, int, Optional[str], str]] = []
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if name is None:
            if not stripped.startswith("+"):
                raise RuleSyntaxError("rule must start with '+name'", lineno)
            name = stripped[1:].strip()
            if not name:
                raise RuleSyntaxError("empty rule name", lineno)
            name_line = lineno
            continue
        if _looks_like_assignment(stripped):
            match = _ASSIGNMENT.match(stripped)
            if match is None:
                raise RuleSyntaxError(f"malformed assignment {stripped!r}", lineno)
            group = int(match.group(1))
            condition = match.group(2)
            label = match.group(3)
            if not label:
                raise RuleSyntaxError("assignment has no label", lineno)
            raw_assignments.append((lineno, group, condition, label))
        elif raw_assignments:
            raise RuleSyntaxError(
                "pattern text after assignments", lineno
            )
        else:
            pattern_parts.append(stripped)
            pattern_line = lineno
    if name is None:
        raise RuleSyntaxError("empty rule text", 1)
    pattern = "".join(pattern_parts)
    if not pattern:
        raise RuleSyntaxError("rule has no pattern", name_line)
    try:
        compiled = re.compile(pattern)
    except re.error as exc:
        column = (exc.pos + 1) if exc.pos is not None else None
        raise RuleSyntaxError(f"bad pattern: {exc.msg}", pattern_line, column) from exc

    by_group: dict[int, dict] = {}
    for lineno, group, condition, label in raw_assignments:
        if group < 1 or group > compiled.groups:
            raise UnbalancedGroups(
                f"group {group} out of range (pattern has {compiled.groups})", lineno
            )
        slot = by_group.setdefault(group, {"conditions": [], "default": None})
        if condition is None:
            if slot["default"] is not None:
                raise RuleSyntaxError(f"duplicate default for group {group}", lineno)
            slot["default"] = label
            continue
        cue_lists = []
        for cue_list in condition.split(";"):
            cues = tuple(c.strip() for c in cue_list.split(",") if c.strip())
            if not cues:
                raise RuleSyntaxError(f"empty cue list for group {group}", lineno)
            cue_lists.append(cues)
        if not cue_lists:
            raise RuleSyntaxError(f"empty cue list for group {group}", lineno)
        slot["conditions"].append(GroupCondition(cue_lists=tuple(cue_lists), label=label))
    assignments = tuple(
        GroupAssignment(
            group=group,
            conditions=tuple(by_group[group]["conditions"]),
            default=by_group[group]["default"],
        )
        for group in sorted(by_group)
    )
    return SyntacticRule(name=name, pattern=pattern, assignments=assignments)


def render_syntactic_rule(rule: SyntacticRule) -> str:
    lines = [f"+{rule.name}", rule.pattern]
    for assignment in rule.assignments:
        for condition in assignment.conditions:
            cue_text = ";".join(",".join(cues) for cues in condition.cue_lists)
            lines.append(f"{assignment.group}:{cue_text}->{condition.label}")
        if assignment.default is not None:
            lines.append(f"{assignment.group}->{assignment.default}")
    return "\n".join(lines) + "\n"


def parse_rule_file(text: str) -> dict[str, SyntacticRule]:
    """Multiple rule blocks in one file; each block starts at a '+' line."""
    blocks: list[tuple[int, list[str]]] = []
    current: Optional[list[str]] = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.strip().startswith("+"):
            current = []
            blocks.append((lineno, current))
        if current is not None:
            current.append(line)
        elif line.strip() and not line.lstrip().startswith("#"):
            raise RuleSyntaxError("content before first rule", lineno)
    rules: dict[str, SyntacticRule] = {}
    for start_line, block in blocks:
        try:
            rule = parse_syntactic_rule("\n".join(block))
        except RuleSyntaxError as exc:
            offset = start_line - 1
            raise RuleSyntaxError(
                str(exc).split(": ", 1)[-1],
                (exc.line or 1) + offset,
                exc.column,
            ) from exc
        if rule.name in rules:
            raise RuleSyntaxError(f"duplicate rule name {rule.name!r}", start_line)
        rules[rule.name] = rule
    return rules


def normalize_content(content: str) -> str:
    return normalize_whitespace(normalize_numeric_text(content))


def _earliest_offset(cues: Sequence[str], path_text: str) -> Optional[int]:
    best: Optional[int] = None
    for cue in cues:
        match = _cs_word_regex(cue).search(path_text)
        if match is not None and (best is None or match.start() < best):
            best = match.start()
    return best


def _earliest_condition(
    conditions: Sequence[GroupCondition], path_text: str
) -> Optional[GroupCondition]:
    best: Optional[tuple[int, int]] = None
    for order, condition in enumerate(conditions):
        primary = _earliest_offset(condition.cue_lists[0], path_text)
        if primary is None:
            continue
        competitors = (
            _earliest_offset(cues, path_text) for cues in condition.cue_lists[1:]
        )
        if any(off is not None and off < primary for off in competitors):
            continue
        if best is None or primary < best[0]:
            best = (primary, order)
    return conditions[best[1]] if best else None


def assign_labels(
    rule: SyntacticRule, match: re.Match[str], path_text: str
) -> list[tuple[str, str]]:
    """(label, captured text) per group; unlabeled or empty groups drop out."""
    out: list[tuple[str, str]] = []
    for assignment in rule.assignments:
        value = match.group(assignment.group)
        if value is None:
            continue
        condition = _earliest_condition(assignment.conditions, path_text)
        label = condition.label if condition else assignment.default
        if label is None:
            continue
        out.append((label, value))
    return out


def apply_syntactic_rules(
    content: str, path_text: str, rules: Sequence[SyntacticRule]
) -> tuple[str, list[tuple[str, str]]]:
    """First rule whose pattern consumes the whole normalized content wins."""
    normalized = normalize_content(content)
    for rule in rules:
        match = _compile_anchored(rule.pattern).match(normalized)
        if match is not None:
            return rule.name, assign_labels(rule, match, path_text)
    raise NoPatternMatch(content)
