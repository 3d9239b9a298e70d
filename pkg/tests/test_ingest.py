"""XML readers: dialect detection, table regions, captions, sentences."""

import logging

import pytest

from tablemine import ingest
from tablemine.ingest import (
    DIALECT_PMC,
    DIALECT_SPL,
    IngestError,
    MalformedXml,
    detect_dialect,
    document_from_text,
    load_document,
    read_document,
    read_paths,
    split_sentences,
)

from helpers import FIXTURES


def pmc_doc(body: str) -> str:
    return (
        "<article><front><article-meta><title-group>"
        "<article-title>Study</article-title>"
        "</title-group></article-meta></front>"
        f"<body>{body}</body></article>"
    )


class TestDialectDetection:
    def test_journal_article(self, fixtures_dir):
        raw = (fixtures_dir / "marquee" / "demographics.xml").read_text(encoding="utf-8")
        assert detect_dialect(raw) == DIALECT_PMC

    def test_product_label(self, fixtures_dir):
        raw = (fixtures_dir / "marquee" / "interactions.xml").read_text(encoding="utf-8")
        assert detect_dialect(raw) == DIALECT_SPL

    def test_non_hl7_xml_falls_back_to_journal_dialect(self):
        assert detect_dialect("<html><body/></html>") == DIALECT_PMC


class TestArticleReading:
    def test_document_identity_and_table_ids(self, marquee):
        doc = marquee("demographics")
        assert doc.doc_id == "demographics"
        assert doc.dialect == DIALECT_PMC
        assert [t.table_id for t in doc.tables] == ["demographics_t0"]

    def test_caption_label_and_footer(self, marquee):
        grid = marquee("two_arm").tables[0].grid
        assert grid.caption == "Baseline characteristics of treated patients"
        assert grid.footer == "Results are presented as mean ± standard deviation."
        assert grid.rows == 7 and grid.cols == 4
        assert grid.cell(0, 1).content == "Bravelle® (n = 120)"

    def test_referring_sentences_follow_the_label(self, marquee):
        grid = marquee("demographics").tables[0].grid
        assert grid.referring_sentences == (
            "Patient characteristics are summarized in Table 1.",
        )

    def test_head_rows_carry_head_block_emphasis(self, marquee):
        grid = marquee("two_arm").tables[0].grid
        assert "in_head_block" in grid.cell(0, 0).emphasis
        assert "in_head_block" not in grid.cell(1, 0).emphasis

    def test_article_without_tables(self):
        doc = document_from_text(pmc_doc("<p>No tables here.</p>"), "bare")
        record = read_document(doc)
        assert record.tables == []

    def test_corpus_counts(self, fixtures_dir):
        documents = read_paths([fixtures_dir / "articles"])
        assert len(documents) == 14
        assert sum(len(d.tables) for d in documents) == 30

    def test_nested_table_flattened_with_warning(self, caplog):
        body = (
            '<table-wrap id="T1"><label>Table 1</label>'
            "<caption><p>Outer</p></caption>"
            "<table><tbody>"
            "<tr><td>plain</td><td><table><tr><td>inner</td></tr></table></td></tr>"
            "</tbody></table></table-wrap>"
        )
        doc = document_from_text(pmc_doc(body), "nested")
        with caplog.at_level(logging.WARNING, logger="tablemine.ingest"):
            record = read_document(doc)
        assert len(record.tables) == 1
        grid = record.tables[0].grid
        assert grid.rows == 1
        assert "inner" in grid.cell(0, 1).content
        assert any("nested table" in message for message in caplog.messages)


class TestLabelReading:
    def test_drug_name_and_section_code(self, marquee):
        doc = marquee("interactions")
        assert doc.dialect == DIALECT_SPL
        assert doc.metadata["drug_name"] == "Oxcarbazepine"
        grid = doc.tables[0].grid
        assert grid.section_code == "34073-7"
        assert grid.rows == 5 and grid.cols == 5

    def test_inline_caption_moves_out_of_the_grid(self, fixtures_dir):
        doc = read_document(load_document(fixtures_dir / "labels" / "spl0004.xml"))
        grid = doc.tables[0].grid
        assert grid.caption == "Table 2. Established drug interactions affecting metformin"
        assert grid.rows == 5
        assert [c.content for c in grid.cells[0]] == [
            "Coadministered drug", "Change in metformin AUC", "Comment",
        ]

    def test_corpus_counts(self, fixtures_dir):
        documents = read_paths([fixtures_dir / "labels"])
        assert len(documents) == 10
        assert sum(len(d.tables) for d in documents) == 13


class TestMalformedInput:
    def test_unclosed_tag(self):
        with pytest.raises(MalformedXml):
            document_from_text("<article><body>", "x")

    def test_not_xml_at_all(self):
        with pytest.raises(MalformedXml):
            document_from_text("just some text", "x")

    def test_malformed_is_an_ingest_error(self):
        assert issubclass(MalformedXml, IngestError)

    def test_read_paths_skips_broken_files(self, tmp_path, caplog):
        good = tmp_path / "good.xml"
        good.write_text(pmc_doc("<p>fine</p>"), encoding="utf-8")
        bad = tmp_path / "bad.xml"
        bad.write_text("<article><body>", encoding="utf-8")
        with caplog.at_level(logging.ERROR, logger="tablemine.ingest"):
            documents = read_paths([tmp_path])
        assert [d.doc_id for d in documents] == ["good"]
        assert any("bad.xml" in message for message in caplog.messages)


class TestSentenceSplitting:
    def test_plain_sentences(self):
        text = "First finding. Second finding. Third!"
        assert split_sentences(text) == ["First finding.", "Second finding.", "Third!"]

    def test_abbreviations_do_not_split(self):
        text = "Enrollment was 21 vs. 19 in controls. Outcomes appear in Table 2."
        assert split_sentences(text) == [
            "Enrollment was 21 vs. 19 in controls.",
            "Outcomes appear in Table 2.",
        ]

    def test_eg_and_et_al(self):
        text = "Reported previously, e.g. by Smith et al. in two cohorts. See Table 1."
        assert split_sentences(text) == [
            "Reported previously, e.g. by Smith et al. in two cohorts.",
            "See Table 1.",
        ]

    def test_semicolon_ends_a_sentence(self):
        assert split_sentences("One result; another result.") == [
            "One result;", "another result.",
        ]
