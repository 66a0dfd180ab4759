"""Multichain ideals, generalized Hibi ideals, linear-quotient sets, and the
Betti data they determine.

A multichain of ideals I_1 <= ... <= I_r = P is identified with its entry
vector (first level containing each element); entry vectors are exactly the
order-preserving maps P -> {1..r}, which keeps power enumeration cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import VerificationError
from .monomials import (
    GridVariable,
    Monomial,
    MonomialIdeal,
    VariableOrder,
    linear_quotients,
)
from .posets import Mask, Multichain, Poset, bits, multichain_key, multichain_le


def entry_vector(chain: Multichain, n: int) -> tuple[int, ...]:
    """First level (1-based) at which each element appears in the chain."""
    out = [0] * n
    seen = 0
    for level, mask in enumerate(chain, start=1):
        new = mask & ~seen
        for j in bits(new):
            out[j] = level
        seen |= mask
    return tuple(out)


def chain_from_entries(entries: tuple[int, ...], r: int) -> Multichain:
    return tuple(
        sum(1 << j for j, e in enumerate(entries) if e <= level)
        for level in range(1, r + 1)
    )


def u_of_multichain(P: Poset, chain: Multichain) -> Monomial:
    """The generator x_{1,J_1} x_{2,J_2} ... x_{r,J_r} with J_m = I_m \\ I_{m-1}."""
    entries = entry_vector(chain, P.n)
    return Monomial({GridVariable(level, j + 1): 1 for j, level in enumerate(entries)})


def hibi_generators(P: Poset, r: int) -> dict[Multichain, Monomial]:
    """Generator of the level-r Hibi ideal for every multichain, canonical order."""
    gens = {chain: u_of_multichain(P, chain) for chain in P.multichains_of_ideals(r)}
    if len(set(gens.values())) != len(gens):
        raise VerificationError("multichain generators are not distinct")
    return gens


def hibi_ideal_H(P: Poset, r: int) -> MonomialIdeal:
    if r < 1:
        raise ValueError("r must be >= 1")
    gens = hibi_generators(P, r)
    ideal = MonomialIdeal(gens.values(), (r, P.n))
    if len(ideal.gens) != len(gens):
        raise VerificationError("Hibi generators were not already minimal")
    return ideal


def multichain_ideal_I(P: Poset, r: int, s: int) -> MonomialIdeal:
    """Ideal generated by the position-selected products over element multichains."""
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    gens = set()
    for seq in P.element_multichains(r):
        for positions in itertools.combinations(range(r), s):
            gens.add(
                Monomial.from_vars(
                    GridVariable(i + 1, seq[i] + 1) for i in positions
                )
            )
    return MonomialIdeal(gens, (r, P.n))


# -- squarefree powers via comparable chains ---------------------------------------


def hibi_squarefree_power(P: Poset, r: int, k: int) -> dict[Monomial, tuple[Multichain, ...]]:
    """Minimal generators of the k-th squarefree power of the Hibi ideal,
    enumerated over ascending comparable chains with strictly decreasing
    entry vectors (squarefreeness forces strictness), together with the
    ascending factorization of each generator.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vectors = sorted(
        entry_vector(chain, P.n) for chain in P.multichains_of_ideals(r)
    )
    out: dict[Monomial, tuple[Multichain, ...]] = {}

    def monomial_of(vs: list[tuple[int, ...]]) -> Monomial:
        return Monomial.from_vars(
            GridVariable(level, j + 1)
            for v in vs
            for j, level in enumerate(v)
        )

    def extend(stack: list[tuple[int, ...]], depth: int):
        if depth == k:
            chains = tuple(chain_from_entries(v, r) for v in stack)
            out[monomial_of(stack)] = chains
            return
        last = stack[-1] if stack else None
        for v in vectors:
            if last is not None and not all(x < y for x, y in zip(v, last)):
                continue
            stack.append(v)
            extend(stack, depth + 1)
            stack.pop()

    extend([], 0)
    return out


def factor_power_generator(
    P: Poset, r: int, k: int, mono: Monomial
) -> tuple[Multichain, ...]:
    """Ascending comparable factorization of a generator of the k-th power.

    The sorted column levels of the monomial determine the factors uniquely;
    each recovered component must be an order-preserving entry vector.
    """
    columns: list[list[int]] = [[] for _ in range(P.n)]
    for (level, elem), e in mono.items():
        columns[elem - 1].extend([level] * e)
    if any(len(c) != k for c in columns):
        raise ValueError("monomial is not a k-fold column-balanced product")
    for c in columns:
        c.sort()
    chains = []
    for l in range(k - 1, -1, -1):
        v = tuple(columns[j][l] for j in range(P.n))
        for i in range(P.n):
            for j in bits(P.up_mask(i)):
                if v[i] > v[j]:
                    raise VerificationError("factor is not a multichain of ideals")
        chains.append(chain_from_entries(v, r))
    result = tuple(chains)
    prod = Monomial.one()
    for c in result:
        prod = prod * u_of_multichain(P, c)
    if prod != mono:
        raise VerificationError("factorization does not multiply back")
    for a, b in zip(result, result[1:]):
        if not multichain_le(a, b):
            raise VerificationError("factorization is not ascending")
    return result


@dataclass(frozen=True)
class GeneralizedHibi:
    """Generalized Hibi ideal with the descending factorization of each generator."""

    ideal: MonomialIdeal
    factorizations: dict[Monomial, tuple[Multichain, ...]]
    r: int
    s: int


def generalized_hibi_H(P: Poset, r: int, s: int) -> GeneralizedHibi:
    """Computes the type-(r,s) generalized Hibi ideal two independent ways,
    as the Alexander dual of the multichain ideal and as the (r-s+1)-st
    squarefree power of the Hibi ideal, and insists they agree.
    """
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    k = r - s + 1
    via_power = hibi_squarefree_power(P, r, k)
    power_ideal = MonomialIdeal(via_power.keys(), (r, P.n))
    dual_ideal = multichain_ideal_I(P, r, s).alexander_dual()
    if power_ideal != dual_ideal:
        raise VerificationError(
            f"dual of the multichain ideal differs from the squarefree power (r={r}, s={s})"
        )
    descending = {
        m: tuple(reversed(chains)) for m, chains in via_power.items()
    }
    return GeneralizedHibi(power_ideal, descending, r, s)


# -- linear-quotient sets -----------------------------------------------------------


def set_of(P: Poset, chain: Multichain) -> frozenset[GridVariable]:
    """Variables x_{m,j} with p_j minimal in the complement of I_m, m < r."""
    out = []
    full = P.full_mask
    for m, mask in enumerate(chain[:-1], start=1):
        for j in bits(P.min_elements(full & ~mask)):
            out.append(GridVariable(m, j + 1))
    return frozenset(out)


def set_of_power(P: Poset, chains: tuple[Multichain, ...]) -> frozenset[GridVariable]:
    """Union of the per-factor sets, for an ascending comparable factorization."""
    for a, b in zip(chains, chains[1:]):
        if not multichain_le(a, b):
            raise ValueError("factors must be ascending")
    out: frozenset[GridVariable] = frozenset()
    for c in chains:
        out |= set_of(P, c)
    return out


def decomposition_g(P: Poset, var: GridVariable, chain: Multichain) -> Multichain:
    """Earliest-generator decomposition of x_{m,j} * u: inserts p_j into
    I_m .. I_{t-1}, where t is the first level already containing p_j."""
    m, elem = var
    j = elem - 1
    if var not in set_of(P, chain):
        raise ValueError(f"{var.text} is not in the quotient set of the generator")
    t = next(
        level for level, mask in enumerate(chain, start=1) if (mask >> j) & 1
    )
    bit = 1 << j
    new_chain = tuple(
        mask | bit if m <= level < t else mask
        for level, mask in enumerate(chain, start=1)
    )
    u, u_new = u_of_multichain(P, chain), u_of_multichain(P, new_chain)
    if u_new * Monomial({GridVariable(t, elem): 1}) != u * Monomial({var: 1}):
        raise VerificationError("decomposition does not satisfy u' = x_mj * u / x_tj")
    order = VariableOrder.row_major(len(chain), P.n)
    if not order.lex_key(u_new) > order.lex_key(u):
        raise VerificationError("decomposition did not increase the generator")
    # set_of(new_chain) need not be contained in set_of(chain): inserting p_j
    # can expose new minimal elements of the complement.  The resolution
    # treats symbols whose sigma escapes the target's quotient set as zero,
    # and the squared differential is checked to vanish regardless.
    return new_chain


def projdim_and_reg(P: Poset, r: int) -> tuple[int, int]:
    """Projective dimension of the Hibi ideal and regularity of the quotient
    by the multichain ideal; both equal (r-1) times the width."""
    predicted = (r - 1) * P.width()
    largest = max(
        len(set_of(P, chain)) for chain in P.multichains_of_ideals(r)
    )
    if largest != predicted:
        raise VerificationError(
            f"max quotient-set size {largest} != (r-1)*width = {predicted}"
        )
    return predicted, predicted


@dataclass(frozen=True)
class BettiTable:
    """Betti numbers of the quotient ring: entries[(i, j)] = beta_{i,j}."""

    entries: dict[tuple[int, int], int]

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), b in self.entries.items():
            out[i] = out.get(i, 0) + b
        return out

    def total_vector(self) -> tuple[int, ...]:
        totals = self.totals()
        return tuple(totals.get(i, 0) for i in range(max(totals) + 1))


def betti_from_sets(P: Poset, r: int) -> BettiTable:
    """Betti numbers of S/H from quotient-set sizes: beta_i = sum C(|set(u)|, i-1),
    with the linear internal degree n + i - 1."""
    sizes = [len(set_of(P, c)) for c in P.multichains_of_ideals(r)]
    entries = {(0, 0): 1}
    for i in range(1, max(sizes, default=0) + 2):
        b = sum(math.comb(s, i - 1) for s in sizes)
        if b:
            entries[(i, P.n + i - 1)] = b
    return BettiTable(entries)


# -- Gorenstein / complete intersection status --------------------------------------


@dataclass(frozen=True)
class GorensteinIdealReport:
    n: int
    r: int
    quotient_dim: int
    height: int
    is_antichain: bool
    is_complete_intersection: bool
    is_gorenstein: bool


def gorenstein_status_I(P: Poset, r: int) -> GorensteinIdealReport:
    """Dimension, height, and the antichain = complete intersection = Gorenstein
    equivalence for the multichain ideal at s = r."""
    ideal = multichain_ideal_I(P, r, r)
    heights = {len(p) for p in ideal.minimal_primes()}
    height = min(heights)
    if height != P.n:
        raise VerificationError(f"height of the multichain ideal is {height}, not n")
    gens = sorted(ideal.gens, key=lambda m: m.items())
    ci = all(a.coprime(b) for a, b in itertools.combinations(gens, 2))
    antichain = P.is_antichain()
    if ci != antichain:
        raise VerificationError("complete intersection does not match antichain status")
    return GorensteinIdealReport(
        n=P.n,
        r=r,
        quotient_dim=P.n * (r - 1),
        height=height,
        is_antichain=antichain,
        is_complete_intersection=ci,
        is_gorenstein=ci,
    )
