"""Graph codes: families of graphs on n vertices with no two members differing by a forbidden graph."""

from .bch import ColumnSet, build_columns, certify_strength
from .constructions import (
    CliqueCertificate,
    ExplicitGraphCode,
    LinearGraphCode,
    clique_linear_code,
    doubled_clique_certificate,
    even_parity_code,
    matching_code,
    small_clique_code,
    star_code,
)
from .errors import DomainError, GraphCodeError, IntegrityError, ResourceError
from .families import (
    AllCliques,
    CliquesUpTo,
    Explicit,
    ForbiddenFamily,
    IsoCopiesOf,
    Matching,
    Star,
    classify_membership,
    enumerate_copies,
)
from .graph import LabeledGraph, edge_index, symmetric_difference
from .search import ExactResult, even_clique_witness, max_code_exact, min_codim_exact
from .verification import EXHAUSTIVE, Sampled, VerificationReport, syndrome, verify_code, verify_odd_cover

__version__ = "0.1.0"
