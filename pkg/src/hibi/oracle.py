"""Brute-force verifiers that share no code path with the main constructions.

Everything here is exact: integer Bareiss elimination for ranks over the
rationals, an optional mod-p recomputation, raw subset enumeration for
transversals, and direct evaluation for kernel membership.  Only public
monomial/poset values cross the boundary into this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .monomials import GridVariable, Monomial, MonomialIdeal
from .posets import Poset

MODP = 32003


# -- exact linear algebra --------------------------------------------------------


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    pr = 0
    for c in range(ncols):
        piv = next((i for i in range(pr, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        p = m[pr][c]
        for i in range(pr + 1, len(m)):
            row = m[i]
            if row[c]:
                f = row[c]
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * p - f * m[pr][j]) // prev
                row[c] = 0
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * p) // prev
        prev = p
        pr += 1
        rank += 1
        if pr == len(m):
            break
    return rank


def modp_rank(rows: list[list[int]], p: int = MODP) -> int:
    m = [[x % p for x in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    pr = 0
    for c in range(ncols):
        piv = next((i for i in range(pr, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        inv = pow(m[pr][c], p - 2, p)
        prow = [(x * inv) % p for x in m[pr]]
        m[pr] = prow
        for i in range(pr + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], prow)]
        pr += 1
        rank += 1
        if pr == len(m):
            break
    return rank


def _rank(rows, char: int) -> int:
    if not rows:
        return 0
    return bareiss_rank(rows) if char == 0 else modp_rank(rows, char)


# -- simplicial complexes --------------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract complex on grid variables, stored by its facets."""

    vertices: tuple[GridVariable, ...]
    facets: tuple[frozenset[GridVariable], ...]

    @staticmethod
    def of_squarefree_ideal(ideal: MonomialIdeal) -> "SimplicialComplex":
        """Stanley-Reisner complex: faces are subsets containing no generator support."""
        if not ideal.is_squarefree:
            raise ValueError("Stanley-Reisner complex requires a squarefree ideal")
        vertices = tuple(sorted({v for g in ideal.gens for v in g.support}))
        supports = [g.support for g in ideal.gens]
        facets = _restriction_facets(supports, frozenset(vertices))
        return SimplicialComplex(vertices, tuple(facets))

    def faces(self) -> set[frozenset[GridVariable]]:
        out: set[frozenset[GridVariable]] = set()
        for f in self.facets:
            for k in range(len(f) + 1):
                out.update(map(frozenset, itertools.combinations(sorted(f), k)))
        return out


def _minimal_transversals(supports) -> list[frozenset]:
    """All inclusion-minimal hitting sets, by Berge multiplication with
    stepwise minimization (transversals are rebuilt edge by edge)."""
    edges = sorted(set(map(frozenset, supports)), key=lambda s: (len(s), sorted(s)))
    trans: list[frozenset] = [frozenset()]
    for edge in edges:
        candidates = [t for t in trans if t & edge]
        candidates.extend(
            t | {v} for t in trans if not (t & edge) for v in sorted(edge)
        )
        candidates.sort(key=len)
        new: list[frozenset] = []
        for c in candidates:
            if not any(m <= c for m in new):
                new.append(c)
        trans = new
    return sorted(trans, key=lambda s: (len(s), sorted(s)))


def _restriction_facets(supports, sigma: frozenset) -> list[frozenset]:
    """Facets of the Stanley-Reisner complex restricted to sigma."""
    local = [s for s in supports if s <= sigma]
    if not local:
        return [frozenset(sigma)]
    return [sigma - t for t in _minimal_transversals(local)]


def _boundary_rank(lower: list[frozenset], upper: list[frozenset], char: int) -> int:
    """Rank of the simplicial boundary map from span(upper) to span(lower)."""
    if not lower or not upper:
        return 0
    index = {f: i for i, f in enumerate(lower)}
    rows = []
    for face in upper:
        row = [0] * len(lower)
        verts = sorted(face)
        for k, v in enumerate(verts):
            sub = frozenset(verts[:k] + verts[k + 1 :])
            if sub in index:
                row[index[sub]] = -1 if k % 2 else 1
        rows.append(row)
    return _rank(rows, char)


def homology_of_facets(facets, char: int = 0) -> dict[int, int]:
    """Reduced homology ranks of the complex with the given facets.

    Returns only the nonzero ranks, indexed by homological degree; degree -1
    appears exactly for the complex whose only face is the empty set.
    """
    facets = [frozenset(f) for f in facets]
    if not facets or facets == [frozenset()]:
        return {-1: 1}
    if len(facets) == 1:
        return {}
    faces: set[frozenset] = set()
    for f in facets:
        elems = sorted(f)
        for k in range(len(elems) + 1):
            faces.update(map(frozenset, itertools.combinations(elems, k)))
    by_dim: dict[int, list[frozenset]] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for fs in by_dim.values():
        fs.sort(key=sorted)
    top = max(by_dim)
    ranks = {}
    out = {}
    for d in range(0, top + 2):
        ranks[d] = _boundary_rank(by_dim.get(d - 1, []), by_dim.get(d, []), char)
    for d in range(0, top + 1):
        h = len(by_dim.get(d, [])) - ranks[d] - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


def _nerve_facet_homology(facets, char: int) -> dict[int, int]:
    """Homology via the nerve of the facet cover (a good closed cover)."""
    facets = [frozenset(f) for f in facets]
    if not facets or facets == [frozenset()]:
        return {-1: 1}
    if len(facets) == 1:
        return {}
    nerve_facets = []
    n = len(facets)

    def grow(j0: int, members: tuple[int, ...], inter: frozenset):
        extended = False
        for j in range(j0, n):
            nxt = inter & facets[j]
            if nxt:
                grow(j + 1, members + (j,), nxt)
                extended = True
        if not extended:
            nerve_facets.append(frozenset(members))

    for j in range(n):
        grow(j + 1, (j,), facets[j])
    maximal = []
    for f in sorted(set(nerve_facets), key=len, reverse=True):
        if not any(f <= g for g in maximal):
            maximal.append(f)
    return homology_of_facets(maximal, char)


# -- Hochster-formula Betti numbers ----------------------------------------------


@dataclass
class GradedBetti:
    """Graded Betti numbers of S/I: entries[(i, j)] = beta_{i,j}."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def add(self, i: int, j: int, count: int = 1):
        if count:
            self.entries[(i, j)] = self.entries.get((i, j), 0) + count

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), b in self.entries.items():
            out[i] = out.get(i, 0) + b
        return out

    def total_vector(self) -> tuple[int, ...]:
        totals = self.totals()
        return tuple(totals.get(i, 0) for i in range(max(totals) + 1))

    def regularity(self) -> int:
        return max(j - i for (i, j), b in self.entries.items() if b)

    def projdim(self) -> int:
        return max(i for (i, _), b in self.entries.items() if b)


def hochster_betti(
    ideal: MonomialIdeal, char: int = 0, max_vars: int = 14, use_nerve: bool = True
) -> GradedBetti:
    """Graded Betti numbers of S/I for a squarefree ideal, one squarefree
    multidegree at a time: beta_{i,sigma} is the rank of reduced homology of
    the Stanley-Reisner complex restricted to sigma in degree |sigma|-i-1.

    Restrictions where some vertex lies in no support are cones and are
    skipped.  Each remaining restriction is evaluated through the nerve of
    its facet cover, which is homotopy equivalent to it.
    """
    if not ideal.is_squarefree:
        raise ValueError("Hochster formula requires a squarefree ideal")
    variables = sorted({v for g in ideal.gens for v in g.support})
    if len(variables) > max_vars:
        raise ValueError(f"too many variables for the desk-scale oracle: {len(variables)}")
    supports = [g.support for g in ideal.gens]
    betti = GradedBetti()
    betti.add(0, 0, 1)
    homology = _nerve_facet_homology if use_nerve else homology_of_facets
    for size in range(1, len(variables) + 1):
        for combo in itertools.combinations(variables, size):
            sigma = frozenset(combo)
            local = [s for s in supports if s <= sigma]
            covered = frozenset().union(*local) if local else frozenset()
            if covered != sigma:
                continue
            facets = [sigma - t for t in _minimal_transversals(local)]
            for d, h in homology(facets, char).items():
                i = size - d - 1
                if i >= 1:
                    betti.add(i, size, h)
    return betti


# -- Hilbert series ----------------------------------------------------------------


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_add(a, b, shift=0, scale=1):
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for j, y in enumerate(b):
        out[shift + j] += scale * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def hilbert_numerator(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Numerator polynomial of the Hilbert series of S/I over (1-t)^(r*n).

    Pivot recursion: split on a variable occurring in at least two minimal
    generators; base cases are the zero ideal and pairwise-coprime generators.
    """
    memo: dict[frozenset[Monomial], tuple[int, ...]] = {}

    def recurse(gens: frozenset[Monomial]) -> tuple[int, ...]:
        if gens in memo:
            return memo[gens]
        if not gens:
            result = (1,)
        elif any(g.degree == 0 for g in gens):
            result = (0,)
        else:
            counts: dict[GridVariable, int] = {}
            for g in gens:
                for v in g.support:
                    counts[v] = counts.get(v, 0) + 1
            pivot = max(sorted(counts), key=lambda v: counts[v])
            if counts[pivot] < 2:
                result = (1,)
                for g in sorted(gens, key=lambda m: m.items()):
                    result = _poly_mul(result, _poly_add((1,), (1,), shift=g.degree, scale=-1))
            else:
                xv = Monomial.variable(pivot)
                plus = frozenset(
                    {xv} | {g for g in gens if not g.exponent(pivot)}
                )
                from .monomials import minimalize

                colon = minimalize(g // g.gcd(xv) for g in gens)
                result = _poly_add(recurse(plus), recurse(colon), shift=1)
        memo[gens] = result
        return result

    return recurse(ideal.gens)


# -- direct definitional checks -----------------------------------------------------


def definitional_dual(ideal: MonomialIdeal, max_vars: int = 20) -> MonomialIdeal:
    """Alexander dual by raw subset enumeration over the occurring variables."""
    if not ideal.is_squarefree:
        raise ValueError("dual requires a squarefree ideal")
    variables = sorted({v for g in ideal.gens for v in g.support})
    if len(variables) > max_vars:
        raise ValueError("too many variables for raw enumeration")
    supports = [g.support for g in ideal.gens]
    covers = []
    for size in range(0, len(variables) + 1):
        for combo in itertools.combinations(variables, size):
            cand = frozenset(combo)
            if any(c <= cand for c in covers):
                continue
            if all(cand & s for s in supports):
                covers.append(cand)
    return MonomialIdeal((Monomial.from_vars(c) for c in covers), ideal.ambient)


def count_isotone_maps(P: Poset, r: int) -> int:
    """Number of order-preserving maps P -> {1..r}; counts first-appearance
    vectors of multichains of ideals."""
    strict = [
        (i, j)
        for i in range(P.n)
        for j in range(P.n)
        if i != j and P.le(i, j)
    ]
    count = 0
    for f in itertools.product(range(r), repeat=P.n):
        if all(f[i] <= f[j] for i, j in strict):
            count += 1
    return count


def kernel_membership(
    gen_map: Mapping[str, Monomial],
    base_map: Mapping[str, GridVariable],
    lead: Mapping[str, int],
    trail: Mapping[str, int],
) -> bool:
    """Whether a binomial lies in the kernel of the monomial map.

    Fiber variables map to their monomial times an implicit degree variable,
    base variables to themselves; membership is exact equality of images.
    """

    def image(side: Mapping[str, int]):
        exps: dict[GridVariable, int] = {}
        tdeg = 0
        for name, e in side.items():
            if not e:
                continue
            if name in base_map:
                v = base_map[name]
                exps[v] = exps.get(v, 0) + e
            else:
                tdeg += e
                for v, ge in gen_map[name].items():
                    exps[v] = exps.get(v, 0) + ge * e
        return {v: e for v, e in exps.items() if e}, tdeg

    return image(lead) == image(trail)
