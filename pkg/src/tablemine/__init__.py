"""Toolkit for extracting structured variables from tables in XML documents.

The pipeline runs in seven stages: table detection, functional analysis
(cell roles), structural analysis (navigational links), semantic tagging
(gazetteer annotations), pragmatic classification (table purpose), cell
selection and syntactic processing (rule-driven value extraction).
"""

from tablemine.model import (
    Annotation,
    Cell,
    CellRole,
    ExtractionRecord,
    NavigationalLinks,
    TableGrid,
)

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "Cell",
    "CellRole",
    "ExtractionRecord",
    "NavigationalLinks",
    "TableGrid",
    "__version__",
]
