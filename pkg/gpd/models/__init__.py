from .diagram import (
    ClassicalDocument,
    ClassicalPoint,
    DiagramDocument,
    DiagramPoint,
    HarmonicDocument,
    HarmonicRecord,
    PosetRecord,
    SubspaceRecord,
)
from .filtration import FiltrationDocument, GramDocument, SimplexRecord
from .morphism import MorphismDocument
from .report import CheckResult, PropertyResult, VerifyReport
from .run_config import RunConfig
from .treegram import BreakpointRecord, TreegramDocument

__all__ = [
    "ClassicalDocument",
    "ClassicalPoint",
    "DiagramDocument",
    "DiagramPoint",
    "HarmonicDocument",
    "HarmonicRecord",
    "PosetRecord",
    "SubspaceRecord",
    "FiltrationDocument",
    "GramDocument",
    "SimplexRecord",
    "MorphismDocument",
    "CheckResult",
    "PropertyResult",
    "VerifyReport",
    "RunConfig",
    "BreakpointRecord",
    "TreegramDocument",
]
