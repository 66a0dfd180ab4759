"""Aggregated structural reports: dimensions, Gorenstein and purity statuses,
the multichain-ring/product-poset isomorphism, and machine-checkable
Cohen-Macaulay certificates."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Optional

from .errors import VerificationError
from .grobner import (
    GroebnerBasis,
    ReesResult,
    SortingBasis,
    hibi_relations,
    krull_dim,
    presentation_R_r,
    rees_gb,
    sorting_gb,
)
from .ideals import (
    betti_from_sets,
    generalized_hibi_H,
    gorenstein_status_I,
    hibi_ideal_H,
    projdim_and_reg,
)
from .monomials import VariableOrder, is_weakly_polymatroidal, linear_quotients
from .posets import (
    Multichain,
    Poset,
    chain_poset,
    join_irreducibles_of_multichain_lattice,
    multichain_join,
    multichain_label,
    multichain_le,
    multichain_meet,
)


def gorenstein_R(P: Poset, r: int) -> bool:
    """Gorenstein status of the multichain toric ring, decided by purity.

    Purity of the product with a chain agrees with purity of the poset; this
    is asserted rather than assumed.
    """
    pure = P.is_pure()
    if r >= 2:
        product = P.direct_product(chain_poset(r - 1))
        if product.is_pure() != pure:
            raise VerificationError("purity is not preserved by the chain product")
    return pure


@dataclass
class InvariantReport:
    poset_elements: tuple[str, ...]
    poset_covers: tuple[tuple[str, str], ...]
    n: int
    r: int
    s: int
    width: int
    ring_dim: int
    height_multichain_ideal: int
    projdim_hibi: int
    regularity: int
    is_pure: bool
    is_antichain: bool
    complete_intersection: bool
    gorenstein_ring: bool
    gorenstein_ideal: bool
    weakly_polymatroidal: bool
    linear_quotients_ok: bool
    sorting_initial_squarefree_quadratic: bool
    rees_equal: bool
    rees_x_condition: bool
    predicted_depth_limit: int

    def to_json(self) -> dict:
        return asdict(self)

    def text(self) -> str:
        rows = [
            ("poset", " ".join(self.poset_elements)),
            ("covers", ", ".join(f"{a}<{b}" for a, b in self.poset_covers) or "-"),
            ("n, r, s", f"{self.n}, {self.r}, {self.s}"),
            ("width", str(self.width)),
            ("dim R_r", str(self.ring_dim)),
            ("height I_r", str(self.height_multichain_ideal)),
            ("projdim H_r = reg S/I_r", f"{self.projdim_hibi} = {self.regularity}"),
            ("pure", str(self.is_pure)),
            ("antichain", str(self.is_antichain)),
            ("complete intersection", str(self.complete_intersection)),
            ("Gorenstein R_r", str(self.gorenstein_ring)),
            ("Gorenstein I_r", str(self.gorenstein_ideal)),
            ("weakly polymatroidal H_{r,s}", str(self.weakly_polymatroidal)),
            ("linear quotients", str(self.linear_quotients_ok)),
            (
                "sorting initial squarefree+quadratic",
                str(self.sorting_initial_squarefree_quadratic),
            ),
            ("Rees basis matches engine", str(self.rees_equal)),
            ("Rees x-condition", str(self.rees_x_condition)),
            ("predicted depth limit", str(self.predicted_depth_limit)),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def full_report(
    P: Poset, r: int, s: int, include_rees: bool = True
) -> InvariantReport:
    """Populates every field by calling the other modules; all asserted."""
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    pd, reg = projdim_and_reg(P, r)
    ideal_report = gorenstein_status_I(P, r)
    pres = presentation_R_r(P, r)
    dim = krull_dim(pres)
    if dim != P.n * (r - 1) + 1:
        raise VerificationError(
            f"dim of the multichain ring is {dim}, expected n(r-1)+1"
        )
    certs = cm_certificates(P, r, s, include_rees=include_rees)
    return InvariantReport(
        poset_elements=P.names,
        poset_covers=tuple(
            (P.names[i], P.names[j]) for i, j in P.covers()
        ),
        n=P.n,
        r=r,
        s=s,
        width=P.width(),
        ring_dim=dim,
        height_multichain_ideal=ideal_report.height,
        projdim_hibi=pd,
        regularity=reg,
        is_pure=P.is_pure(),
        is_antichain=ideal_report.is_antichain,
        complete_intersection=ideal_report.is_complete_intersection,
        gorenstein_ring=gorenstein_R(P, r),
        gorenstein_ideal=ideal_report.is_gorenstein,
        weakly_polymatroidal=certs.weakly_polymatroidal,
        linear_quotients_ok=certs.linear_quotients_ok,
        sorting_initial_squarefree_quadratic=certs.sorting_squarefree_quadratic,
        rees_equal=certs.rees is None or certs.rees.equal,
        rees_x_condition=certs.rees is None or certs.rees.x_condition,
        predicted_depth_limit=P.n - 1,
    )


@dataclass
class CertificateBundle:
    """Machine-checkable facts; the homological consequences are cited, not
    re-proved: a weakly polymatroidal witness gives linear quotients, a
    squarefree quadratic initial ideal gives a normal Cohen-Macaulay toric
    ring, and the x-condition gives linear resolutions of all powers."""

    weakly_polymatroidal: bool
    linear_quotients_ok: bool
    sorting_squarefree_quadratic: bool
    sorting: SortingBasis
    rees: Optional[ReesResult]


def cm_certificates(
    P: Poset, r: int, s: int, include_rees: bool = True
) -> CertificateBundle:
    gh = generalized_hibi_H(P, r, s)
    order = VariableOrder.row_major(r, P.n)
    wp = is_weakly_polymatroidal(gh.ideal, order)
    lq = linear_quotients(gh.ideal, order=order)
    sorting = sorting_gb(P, r, s)
    squarefree_quadratic = sorting.basis.initials_squarefree() and (
        sorting.basis.max_degree() <= 2
    )
    rees = rees_gb(P, r, s) if include_rees else None
    if not wp.holds:
        raise VerificationError("generalized Hibi ideal is not weakly polymatroidal")
    if not lq.holds:
        raise VerificationError("weakly polymatroidal ideal lost linear quotients")
    return CertificateBundle(
        weakly_polymatroidal=wp.holds,
        linear_quotients_ok=lq.holds,
        sorting_squarefree_quadratic=squarefree_quadratic,
        sorting=sorting,
        rees=rees,
    )


@dataclass
class IsomorphismProof:
    """Verified lattice isomorphism between r-multichains of ideals of P and
    ideals of P x [r-1], with the induced match of defining relations."""

    P: Poset
    r: int
    product: Poset
    chain_to_ideal: dict[Multichain, frozenset[str]]
    relation_count: int


def verify_hibi_isomorphism(P: Poset, r: int) -> IsomorphismProof:
    """Builds the join-irreducible bijection, extends it to the full lattices,
    checks meet/join preservation, and matches the quadratic relation sets."""
    if r < 2:
        raise ValueError("r must be >= 2")
    ji = join_irreducibles_of_multichain_lattice(P, r)
    Q = chain_poset(r - 1)
    product = P.direct_product(Q)
    # order isomorphism on join irreducibles via (element, copies) coordinates
    coords = ji.product_map
    for a in range(len(coords)):
        for b in range(len(coords)):
            ja, ka = coords[a]
            jb, kb = coords[b]
            le_product = P.le(ja, jb) and ka <= kb
            le_ji = ji.poset.le(a, b)
            if le_product != le_ji:
                raise VerificationError(
                    "join-irreducible bijection is not an order isomorphism"
                )
    product_index = {
        f"({P.names[j]},{Q.names[k - 1]})": (j, k) for j, k in coords
    }
    # extend to all multichains: send each to its set of join irreducibles
    chains = P.multichains_of_ideals(r)
    mapping: dict[Multichain, frozenset[str]] = {}
    for c in chains:
        below = frozenset(
            f"({P.names[j]},{Q.names[k - 1]})"
            for (j, k), d in zip(coords, ji.multichains)
            if multichain_le(d, c)
        )
        mapping[c] = below
    images = set(mapping.values())
    if len(images) != len(chains):
        raise VerificationError("lattice map is not injective")
    product_ideals = {
        frozenset(product.names_of(mask)) for mask in product.ideals()
    }
    if images != product_ideals:
        raise VerificationError("lattice map is not onto the ideals of the product")
    for a in chains:
        for b in chains:
            if mapping[multichain_meet(a, b)] != mapping[a] & mapping[b]:
                raise VerificationError("lattice map does not preserve meets")
            if mapping[multichain_join(a, b)] != mapping[a] | mapping[b]:
                raise VerificationError("lattice map does not preserve joins")
    # the induced substitution must carry the quadratic relations across
    left_pres = presentation_R_r(P, r)
    right_pres = presentation_R_r(product, 2)
    left = hibi_relations(P, r, presentation=left_pres)
    right = hibi_relations(product, 2, presentation=right_pres)

    def relation_key(el, labels, to_ideal) -> frozenset:
        def side(items):
            out = []
            for name, e in items:
                out.extend([to_ideal(labels[name])] * e)
            return tuple(sorted(out, key=sorted))

        return frozenset((side(el.lead), side(el.trail)))

    left_set = {
        relation_key(el, left_pres.labels, lambda chain: mapping[chain])
        for el in left.elements
    }
    right_set = {
        relation_key(
            el,
            right_pres.labels,
            lambda chain: frozenset(product.names_of(chain[0])),
        )
        for el in right.elements
    }
    if left_set != right_set:
        raise VerificationError("relation sets do not correspond under the map")
    return IsomorphismProof(P, r, product, mapping, len(left.elements))
