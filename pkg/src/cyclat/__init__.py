"""Exact integral cohomology ladders for cyclic prime-power Galois groups.

The package computes, over the cyclic group of order p^n (p an odd prime):

* exact integer normal forms and saturated relation lattices (``intmat``),
* the group ring and its norm elements (``groupring``),
* lattices with group action — permutation lattices, the two-parameter
  library of indecomposables, direct sums, base changes (``lattices``),
* finite module presentations, recognition of standard sums, and
  module maps (``finmod``),
* Tate cohomology of every subgroup level (``cohomology``),
* ladder diagrams: validation, direct sums, isomorphism testing, library
  matching (``diagrams``),
* predicted unit-group structure for cyclic extensions: level
  presentations, diagram prediction, structure recovery, guaranteed
  summands, free-summand counts (``sunits``),
* qualifying auxiliary primes and their density (``primes``),
* a JSON command-line interface and self-test suites (``cli``,
  ``selftest``).
"""

__version__ = "0.1.0"

from .cohomology import (
    fixed_rank,
    is_cohomologically_trivial,
    tate_h0,
    tate_h1,
    up_map,
    down_map,
    yakovlev_diagram,
)
from .diagrams import (
    DiagramError,
    IsoResult,
    SubtractResult,
    Unresolved,
    YakovlevDiagram,
    diagram_direct_sum,
    diagram_isomorphic,
    indecomposability_certificate,
    library_diagram,
    library_level_type,
    subtract_library,
    validate_diagram,
    zero_diagram,
)
from .finmod import (
    FiniteGammaModule,
    GammaMap,
    InvariantError,
    NotStandard,
    gamma_generator_indices,
    module_direct_sum,
    recognize_standard_sum,
    snf_invariants,
    standard_sum,
)
from .groupring import GroupParams, GroupRingElt, norm_element, relative_norm_element
from .lattices import (
    GammaLattice,
    direct_sum,
    fixed_sublattice,
    group_ring_lattice,
    mab_lattice,
    permutation_lattice,
    random_unimodular_change,
)
from .primes import (
    DensityReport,
    PrimeSearchResult,
    density_report,
    find_qualifying,
    is_prime,
    is_qualifying,
)
from .sunits import (
    DecompositionReport,
    ExtensionDatum,
    GuaranteedSummands,
    RamifiedPlace,
    UnsupportedRegimeError,
    UpsilonStats,
    character_ranks,
    corollary_residual,
    guaranteed_summands,
    library_fixed_rank,
    minkowski_count,
    predict_diagram,
    recover_structure,
    upsilon_stats,
    wj_presentation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
