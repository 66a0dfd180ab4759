"""Monomial ideals and toric rings attached to finite posets.

Construction modules build multichain ideals, generalized Hibi ideals, their
minimal free resolutions, and the structured toric Groebner bases; the oracle
module verifies the same data by independent brute force.
"""

from .errors import BudgetExceeded, PosetError, VerificationError
from .monomials import (
    GridVariable,
    Monomial,
    MonomialIdeal,
    VariableOrder,
    is_weakly_polymatroidal,
    linear_quotients,
    minimalize,
)
from .posets import (
    Poset,
    all_posets,
    antichain_poset,
    chain_poset,
    join_irreducibles_of_multichain_lattice,
    parse_poset,
    point_poset,
)
from .ideals import (
    BettiTable,
    betti_from_sets,
    generalized_hibi_H,
    gorenstein_status_I,
    hibi_ideal_H,
    multichain_ideal_I,
    projdim_and_reg,
    set_of,
    set_of_power,
    decomposition_g,
)
from .resolution import ResolutionComplex, resolution_of_H
from .grobner import (
    GroebnerBasis,
    ToricPresentation,
    hibi_relations,
    is_sortable,
    krull_dim,
    l_exchange_check,
    presentation_R_r,
    presentation_R_rs,
    rees_gb,
    revlex_gb_L,
    sort_pair,
    sorting_gb,
    toric_gb,
    veronese_presentation,
)
from .invariants import (
    InvariantReport,
    cm_certificates,
    full_report,
    gorenstein_R,
    verify_hibi_isomorphism,
)
from . import oracle

__version__ = "0.1.0"
