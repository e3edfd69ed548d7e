"""Rational homotopy of complements of central subspace arrangements.

Exact linear algebra over Q, the intersection lattice, the relative atomic
DGA, its cohomology ring, and the elliptic/hyperbolic classification.
"""

from .classify import (
    ClassificationReport,
    MinimalModelReport,
    Verdict,
    atom_count_diagnostic,
    chain_homology_diagnostic,
    classify,
    codim_sum_test,
    direct_sum_test,
    minimal_model,
    ring_is_free_exterior,
)
from .cohomology import (
    CohomologyRing,
    PdReport,
    betti_numbers,
    cohomology_ring,
    euler_characteristic,
    homology_of_complex,
    is_poincare_duality_algebra,
    poincare_polynomial,
)
from .dga import DgaElement, GradedDga, epsilon_sign
from .io import parse_arrangement
from .lattice import Arrangement, IntersectionLattice, build_lattice, is_geometric, maximal_chains
from .linalg import RatMatrix, Subspace

__version__ = "0.1.0"
