"""Cell selection, context and unit resolution, and the extraction routes."""

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import make_grid
from tablemine.functional import assign_roles
from tablemine.model import EMPHASIS_HEAD_BLOCK, CellRole
from tablemine.rules.cues import AREA_HEADER, AREA_STUB, KIND_WORD, Cue
from tablemine.rules.engine import (
    RULE_CAPTION_PATTERN,
    RULE_COLUMN_MAJORITY,
    RULE_HEADER_PATTERN,
    RULE_INTERACTION_COLUMN,
    CellSelection,
    NoInteractionColumn,
    annotation_index,
    extract_ddi,
    extract_variable,
    is_direct_route_cue,
    resolve_context,
    resolve_unit,
    select_cells,
    select_cells_report,
)
from tablemine.rules.syntactic import apply_syntactic_rules
from tablemine.semantic import Gazetteer, annotate_grid
from tablemine.structural import link_cells

H = CellRole.HEADER
S = CellRole.STUB
D = CellRole.DATA


def rule_seq(rule_set, spec):
    return [rule_set[name] for name in spec.syntactic_rules]


def analyzed(grid):
    grid = assign_roles(grid)
    return grid, link_cells(grid)


def record_tuple(record):
    p = record.provenance
    return (
        record.value,
        p.row,
        p.col,
        record.context,
        record.value_component,
        record.variable_subcategory,
        record.unit,
        p.rule,
    )


# --- decomposition of composite cell contents ---------------------------

DECOMPOSITIONS = [
    # content, path text, spec stem, winning rule, (label, value) pairs
    ("12 – 18(16 ± 4)", "", "age", "GetMean1",
     [("range_min", "12"), ("range_max", "18"), ("mean", "16"), ("sd", "4")]),
    ("18.3 (16–27)", "", "age", "GetMeanRange",
     [("mean", "18.3"), ("range_min", "16"), ("range_max", "27")]),
    ("57 (36-2)", "Median age (range)", "age", "GetMeanRange",
     [("median", "57"), ("range_min", "36"), ("range_max", "2")]),
    ("32.0 ± 3.9", "", "age", "GetMeanSD",
     [("mean", "32.0"), ("sd", "3.9")]),
    ("14.6 (3.2)", "", "age", "GetMeanSDBracket",
     [("mean", "14.6"), ("sd", "3.2")]),
    ("42 (52.5%)", "", "gender", "GetCountPct",
     [("count", "42"), ("percentage", "52.5")]),
    ("15:14", "", "gender", "GetMaleFemaleRule",
     [("male", "15"), ("female", "14")]),
    ("15:14", "Sex (F/M)", "gender", "GetMaleFemaleRule",
     [("female", "15"), ("male", "14")]),
    ("21", "", "patient_count", "GetSingle", [("value", "21")]),
]


@pytest.mark.parametrize("content,path,stem,rule_name,pairs", DECOMPOSITIONS)
def test_decomposition(rule_set, specs, content, path, stem, rule_name, pairs):
    seq = rule_seq(rule_set, specs[stem])
    assert apply_syntactic_rules(content, path, seq) == (rule_name, pairs)


# --- cell selection ------------------------------------------------------

def test_two_arm_selection_report(marquee, specs):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    report = select_cells_report(grid, links, (), specs["age"])
    by_cell = {sel.cell: sel for sel in report}
    # one entry per data cell, nothing else
    assert set(by_cell) == {(r, c) for r in range(1, 7) for c in range(1, 4)}
    assert by_cell[(1, 1)] == CellSelection(
        (1, 1), ("[word]:age@stub",), (), True)
    assert by_cell[(1, 2)].selected
    assert by_cell[(1, 3)] == CellSelection(
        (1, 3), ("[word]:age@stub",), ("[word]:p value@header",), False)
    for row in range(2, 7):
        assert by_cell[(row, 3)] == CellSelection(
            (row, 3), (), ("[word]:p value@header",), False)
        assert not by_cell[(row, 1)].matched and not by_cell[(row, 1)].blocked


def test_select_cells_returns_only_selected(marquee, specs):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    selections = select_cells(grid, links, (), specs["age"])
    assert [sel.cell for sel in selections] == [(1, 1), (1, 2)]
    assert all(sel.selected for sel in selections)


def test_direct_route_cues_do_not_select_cells(marquee, specs):
    # the patient-count whitelist is all direct-route pattern cues plus
    # stub words that never appear in this table
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    assert select_cells(grid, links, (), specs["patient_count"]) == []


def test_is_direct_route_cue():
    assert is_direct_route_cue(
        Cue("pattern", r"\b[nN]\s*=\s*(\d+)", AREA_HEADER))
    # no capture group: plain filter, not a route
    assert not is_direct_route_cue(Cue("pattern", r"\bn = \d+", AREA_HEADER))
    assert not is_direct_route_cue(Cue(KIND_WORD, "age", AREA_HEADER))
    # stub patterns never become routes
    assert not is_direct_route_cue(Cue("pattern", r"(\d+)", AREA_STUB))


# --- blacklist monotonicity ---------------------------------------------

def selected_set(grid, links, spec):
    return {sel.cell for sel in select_cells(grid, links, (), spec)}


def test_blacklist_extension_shrinks_selection(marquee, specs):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    base = selected_set(grid, links, specs["age"])
    assert base == {(1, 1), (1, 2)}
    wider = dataclasses.replace(
        specs["age"],
        blacklist=specs["age"].blacklist + (Cue(KIND_WORD, "bravelle", AREA_HEADER),),
    )
    assert selected_set(grid, links, wider) == {(1, 2)}


@settings(max_examples=40, deadline=None)
@given(
    extra=st.lists(
        st.tuples(
            st.sampled_from(["age", "weight", "bmi", "serum", "fsh", "years",
                             "parameter", "value", "32.0", "follistim"]),
            st.sampled_from(["stub", "header", "super_row", "target_cell",
                             "caption"]),
        ),
        max_size=4,
    )
)
def test_blacklist_monotone_property(two_arm_analyzed, age_spec, extra):
    grid, links = two_arm_analyzed
    cues = tuple(Cue(KIND_WORD, word, area) for word, area in extra)
    wider = dataclasses.replace(age_spec, blacklist=age_spec.blacklist + cues)
    assert selected_set(grid, links, wider) <= selected_set(grid, links, age_spec)


@pytest.fixture(scope="module")
def two_arm_analyzed(marquee):
    return analyzed(marquee("two_arm").tables[0].grid)


@pytest.fixture(scope="module")
def age_spec(specs):
    return specs["age"]


# --- context and unit resolution -----------------------------------------

def test_resolve_context_drops_cue_carrying_path_cells(marquee, specs):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    by_cell = {link.cell: link for link in links}
    index = annotation_index(())
    # the stub "Age (years)" carries the whitelist cue, so only the header
    # survives into the context
    assert resolve_context(grid, by_cell[(1, 1)], specs["age"], index) == \
        "Bravelle® (n = 120)"
    assert resolve_context(grid, by_cell[(1, 3)], specs["age"], index) == "P value"


def test_resolve_context_joins_outermost_first(specs):
    head = {"emphasis": (EMPHASIS_HEAD_BLOCK,)}
    grid, links = analyzed(make_grid(
        [[{"content": "Characteristic", **head}, {"content": "Drug", **head}],
         [("Demographics", 1, 2)],
         ["Weight (kg)", "71.4"]],
    ))
    by_cell = {link.cell: link for link in links}
    ctx = resolve_context(grid, by_cell[(2, 1)], specs["age"], annotation_index(()))
    assert ctx == "Drug | Demographics | Weight (kg)"


def test_resolve_unit_prefers_first_allowed_mention(specs):
    grid, links = analyzed(make_grid(
        [["Parameter", "Arm A"], ["Age, months", "14.6 (3.2)"]],
    ))
    by_cell = {link.cell: link for link in links}
    assert resolve_unit(grid, by_cell[(1, 1)], specs["age"]) == "months"


def test_resolve_unit_falls_back_to_default(marquee, specs):
    grid, links = analyzed(marquee("demographics").tables[0].grid)
    by_cell = {link.cell: link for link in links}
    assert resolve_unit(grid, by_cell[(1, 1)], specs["age"]) == "years"


# --- cell route: full records --------------------------------------------

def test_age_records_on_two_arm(marquee, specs, rule_set):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    result = extract_variable(grid, links, (), specs["age"], rule_set)
    assert [record_tuple(r) for r in result.records] == [
        ("32.0", 1, 1, "Bravelle® (n = 120)", "Mean", "", "years", "GetMeanSD"),
        ("3.9", 1, 1, "Bravelle® (n = 120)", "SD", "", "years", "GetMeanSD"),
        ("32.5", 1, 2, "Follistim® (n = 118)", "Mean", "", "years", "GetMeanSD"),
        ("3.7", 1, 2, "Follistim® (n = 118)", "SD", "", "years", "GetMeanSD"),
    ]
    assert result.diagnostics == []
    assert all(r.variable_name == "age" for r in result.records)


def test_gender_records_with_subcategories(marquee, specs, rule_set):
    grid, links = analyzed(marquee("gender_arms").tables[0].grid)
    result = extract_variable(grid, links, (), specs["gender"], rule_set)
    assert [record_tuple(r) for r in result.records] == [
        ("42", 2, 1, "Placebo N = 80", "Count", "Female", "", "GetCountPct"),
        ("52.5", 2, 1, "Placebo N = 80", "Percentage", "Female", "", "GetCountPct"),
        ("40", 2, 2, "Drug N = 82", "Count", "Female", "", "GetCountPct"),
        ("48.8", 2, 2, "Drug N = 82", "Percentage", "Female", "", "GetCountPct"),
    ]


def test_no_pattern_match_becomes_diagnostic(specs, rule_set):
    grid, links = analyzed(make_grid(
        [["Parameter", "Arm A"], ["Age (years)", "not reported"]],
    ))
    result = extract_variable(grid, links, (), specs["age"], rule_set)
    assert result.records == []
    kinds = [(d.cell, d.kind) for d in result.diagnostics]
    assert ((1, 1), "no_pattern_match") in kinds


# --- direct routes --------------------------------------------------------

def test_caption_route(specs, rule_set):
    grid, links = analyzed(make_grid(
        [["Outcome", "Result"], ["Response", "12"]],
        caption="Tumor response in 21 patients with advanced disease",
    ))
    result = extract_variable(grid, links, (), specs["patient_count"], rule_set)
    assert [record_tuple(r) for r in result.records] == [
        ("21", None, None, "caption", "Value", "", "", RULE_CAPTION_PATTERN),
    ]


def test_header_route_context_is_tidied_header(marquee, specs, rule_set):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)
    result = extract_variable(grid, links, (), specs["patient_count"], rule_set)
    assert [record_tuple(r) for r in result.records] == [
        ("120", 0, 1, "Bravelle®", "Value", "", "", RULE_HEADER_PATTERN),
        ("118", 0, 2, "Follistim®", "Value", "", "", RULE_HEADER_PATTERN),
    ]


def test_stub_cell_route_on_key_value_table(marquee, specs, rule_set):
    grid, links = analyzed(marquee("demographics").tables[0].grid)
    result = extract_variable(grid, links, (), specs["patient_count"], rule_set)
    assert [record_tuple(r) for r in result.records] == [
        ("21", 0, 1, "", "Value", "", "", "GetSingle"),
    ]


# --- missing rules and pragmatic gating -----------------------------------

def test_missing_rule_reported_once(specs, rule_set):
    grid, links = analyzed(make_grid(
        [["Outcome", "Result"], ["Response", "12"]],
        caption="Tumor response in 21 patients with advanced disease",
    ))
    result = extract_variable(grid, links, (), specs["patient_count"], {})
    assert [(d.cell, d.kind, d.message) for d in result.diagnostics] == [
        (None, "missing_rule", "unknown rule 'GetSingle'"),
    ]
    # direct routes need no named rules, so the caption record survives
    assert [r.value for r in result.records] == ["21"]


def test_pragmatic_gate(marquee, specs, rule_set):
    grid, links = analyzed(marquee("two_arm").tables[0].grid)

    def count(pragmatic_class):
        return len(extract_variable(
            grid, links, (), specs["age"], rule_set,
            pragmatic_class=pragmatic_class,
        ).records)

    assert specs["age"].pragmatic_types == ("baseline characteristics",)
    assert count(None) == 4
    assert count("baseline characteristics") == 4
    assert count("adverse events") == 0
    # an empty gate list admits every class
    assert specs["patient_count"].pragmatic_types == ()


# --- column-majority route -------------------------------------------------

def test_column_majority_route(article_store, specs, rule_set):
    grid, links = article_store.load_analysis("pmc0002_t1")
    annotations = article_store.load_annotations("pmc0002_t1")
    result = extract_variable(
        grid, links, annotations, specs["adverse_events"], rule_set)
    assert [record_tuple(r) for r in result.records] == [
        ("Any adverse event", 1, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
        ("Headache", 2, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
        ("Nausea", 3, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
        ("Abdominal pain", 4, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
        ("Injection site pain", 5, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
        ("Fatigue", 6, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
        ("Dizziness", 7, 0, "Adverse event", "Category", "", "", RULE_COLUMN_MAJORITY),
    ]
    assert result.diagnostics == []
    assert all(r.variable_name == "adverse_event" for r in result.records)


# --- interaction-column route ----------------------------------------------

def test_interaction_column_on_label_table(marquee, specs, drug_gazetteer,
                                          header_model):
    grid = assign_roles(marquee("interactions").tables[0].grid, model=header_model)
    links = link_cells(grid)
    annotations = annotate_grid(grid, [drug_gazetteer])
    result = extract_ddi(grid, links, annotations, specs["ddi"], "Oxcarbazepine")
    assert [record_tuple(r) for r in result.records] == [
        ("Carbamazepine", 1, 0, "Oxcarbazepine", "Category", "drug", "", RULE_INTERACTION_COLUMN),
        ("Phenobarbital", 2, 0, "Oxcarbazepine", "Category", "drug", "", RULE_INTERACTION_COLUMN),
        ("Phenytoin", 3, 0, "Oxcarbazepine", "Category", "drug", "", RULE_INTERACTION_COLUMN),
        ("Valproic acid", 4, 0, "Oxcarbazepine", "Category", "drug", "", RULE_INTERACTION_COLUMN),
    ]
    assert result.diagnostics == []
    assert all(r.variable_name == "drug_interaction" for r in result.records)


def test_interaction_spec_rejected_by_cell_route(marquee, specs, rule_set,
                                               header_model):
    grid = assign_roles(marquee("interactions").tables[0].grid, model=header_model)
    links = link_cells(grid)
    with pytest.raises(ValueError, match="extract_ddi"):
        extract_variable(grid, links, (), specs["ddi"], rule_set)


def test_no_interaction_column_without_drug_words(specs):
    grid = make_grid([["Reaction", "Count"], ["Nausea", "3"]]).with_roles(
        [[H, H], [S, D]])
    with pytest.raises(NoInteractionColumn, match="no interaction column"):
        extract_ddi(grid, link_cells(grid), (), specs["ddi"], "DrugX")


def test_blacklisted_header_cannot_anchor_interaction_column(specs):
    # "Drug effect" contains a whitelist word but the blacklist word
    # "effect" vetoes the column, leaving no candidate
    grid = make_grid([["Drug effect", "Result"], ["lowered", "3"]]).with_roles(
        [[H, H], [D, D]])
    with pytest.raises(NoInteractionColumn):
        extract_ddi(grid, link_cells(grid), (), specs["ddi"], "DrugX")


def test_veto_moves_column_choice_and_groups_get_subcategory(specs):
    gazetteer = Gazetteer(
        name="probe",
        entries=(
            ("thiazide diuretics", "N03X", "Pharmacologic Substance"),
            ("cimetidine", "A02BA01", "Pharmacologic Substance"),
        ),
    )
    grid = make_grid(
        [["Drug effect", "Drug name"],
         ["lowered", "Cimetidine"],
         ["raised", "Thiazide diuretics"]],
    ).with_roles([[H, H], [D, D], [D, D]])
    annotations = annotate_grid(grid, [gazetteer])
    result = extract_ddi(
        grid, link_cells(grid), annotations, specs["ddi"], "DrugX")
    # column 0 is vetoed by "effect", column 1 wins; a short concept id
    # marks a drug class rather than a single substance
    assert [(r.value, r.provenance.col, r.variable_subcategory)
            for r in result.records] == [
        ("Cimetidine", 1, "drug"),
        ("Thiazide diuretics", 1, "drug group"),
    ]
