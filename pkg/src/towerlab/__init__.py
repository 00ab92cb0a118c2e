"""towerlab: 2-class field tower classifier for Q(sqrt(2*p1*p2*q)).

Core entry points: classify / classify_d for one field, search for batches,
verify_fixtures for the bundled reference dataset.
"""

from .classifier import (CaseTag, ClassificationVerdict, GType, HilbertCl2,
                         PrimeTriple, classify, classify_d)
from .fixtures import FIXTURE_ROWS, RANK_TWO_EXAMPLES, verify_fixtures
from .search import SearchSpec, search

__all__ = [
    "CaseTag",
    "ClassificationVerdict",
    "GType",
    "HilbertCl2",
    "PrimeTriple",
    "classify",
    "classify_d",
    "FIXTURE_ROWS",
    "RANK_TWO_EXAMPLES",
    "verify_fixtures",
    "SearchSpec",
    "search",
]

__version__ = "0.1.0"
