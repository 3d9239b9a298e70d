"""The extraction core: cue lists, variable specs, syntactic rules, engine."""

from .cues import (
    AREA_CAPTION,
    AREA_HEADER,
    AREA_STUB,
    AREA_SUPER_ROW,
    AREA_TARGET_CELL,
    AREAS,
    Cue,
    CueError,
    EmptyCue,
    KIND_ANN_ID,
    KIND_ANN_TYPE,
    KIND_PATTERN,
    KIND_WORD,
    parse_cue_list,
)
from .syntactic import (
    NoPatternMatch,
    RuleSyntaxError,
    SyntacticRule,
    UnbalancedGroups,
    apply_syntactic_rules,
    parse_rule_file,
    parse_syntactic_rule,
    render_syntactic_rule,
)
from .varspec import UnitSpec, VariableSpec, VarSpecError, parse_varspec
from .engine import (
    CellSelection,
    Diagnostic,
    ExtractionResult,
    NoInteractionColumn,
    extract_ddi,
    extract_variable,
    resolve_context,
    resolve_unit,
    select_cells,
    select_cells_report,
    select_column_by_semantic_majority,
)

__all__ = [
    "AREA_CAPTION",
    "AREA_HEADER",
    "AREA_STUB",
    "AREA_SUPER_ROW",
    "AREA_TARGET_CELL",
    "AREAS",
    "CellSelection",
    "Cue",
    "CueError",
    "Diagnostic",
    "EmptyCue",
    "ExtractionResult",
    "KIND_ANN_ID",
    "KIND_ANN_TYPE",
    "KIND_PATTERN",
    "KIND_WORD",
    "NoInteractionColumn",
    "NoPatternMatch",
    "RuleSyntaxError",
    "SyntacticRule",
    "UnbalancedGroups",
    "UnitSpec",
    "VariableSpec",
    "VarSpecError",
    "apply_syntactic_rules",
    "extract_ddi",
    "extract_variable",
    "parse_cue_list",
    "parse_rule_file",
    "parse_syntactic_rule",
    "parse_varspec",
    "render_syntactic_rule",
    "resolve_context",
    "resolve_unit",
    "select_cells",
    "select_cells_report",
    "select_column_by_semantic_majority",
]
