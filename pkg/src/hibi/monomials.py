"""Monomials over the r x n variable grid and monomial-ideal machinery.

Variables are pairs x[i,j] with level i in 1..r and element column j in 1..n.
Everything here is exact integer arithmetic on sparse exponent maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional


class GridVariable(NamedTuple):
    level: int
    elem: int

    @property
    def text(self) -> str:
        return f"x[{self.level},{self.elem}]"


class Monomial:
    """Immutable sparse monomial: map GridVariable -> positive exponent."""

    __slots__ = ("_exps", "_key", "_hash", "degree")

    def __init__(self, exps: dict[GridVariable, int]):
        clean = {v: e for v, e in exps.items() if e}
        if any(e < 0 for e in clean.values()):
            raise ValueError("negative exponent")
        self._exps = clean
        self._key = tuple(sorted(clean.items()))
        self._hash = hash(self._key)
        self.degree = sum(clean.values())

    @staticmethod
    def one() -> "Monomial":
        return _ONE

    @staticmethod
    def variable(v: GridVariable) -> "Monomial":
        return Monomial({v: 1})

    @staticmethod
    def from_vars(vs: Iterable[GridVariable]) -> "Monomial":
        exps: dict[GridVariable, int] = {}
        for v in vs:
            exps[v] = exps.get(v, 0) + 1
        return Monomial(exps)

    def exponent(self, v: GridVariable) -> int:
        return self._exps.get(v, 0)

    def items(self):
        return self._key

    @property
    def support(self) -> frozenset[GridVariable]:
        return frozenset(self._exps)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for e in self._exps.values())

    def __mul__(self, other: "Monomial") -> "Monomial":
        exps = dict(self._exps)
        for v, e in other._exps.items():
            exps[v] = exps.get(v, 0) + e
        return Monomial(exps)

    def divides(self, other: "Monomial") -> bool:
        if self.degree > other.degree:
            return False
        oe = other._exps
        return all(oe.get(v, 0) >= e for v, e in self._exps.items())

    def __floordiv__(self, other: "Monomial") -> "Monomial":
        exps = dict(self._exps)
        for v, e in other._exps.items():
            have = exps.get(v, 0) - e
            if have < 0:
                raise ValueError(f"{other} does not divide {self}")
            exps[v] = have
        return Monomial(exps)

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(
            {v: min(e, other._exps[v]) for v, e in self._exps.items() if v in other._exps}
        )

    def lcm(self, other: "Monomial") -> "Monomial":
        exps = dict(self._exps)
        for v, e in other._exps.items():
            exps[v] = max(exps.get(v, 0), e)
        return Monomial(exps)

    def coprime(self, other: "Monomial") -> bool:
        return not (self._exps.keys() & other._exps.keys())

    @property
    def text(self) -> str:
        if not self._exps:
            return "1"
        parts = []
        for v, e in sorted(self._exps.items()):
            parts.append(v.text if e == 1 else f"{v.text}^{e}")
        return "*".join(parts)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.text


_ONE = Monomial({})


class VariableOrder:
    """A total order on grid variables; index 0 is the largest variable."""

    __slots__ = ("variables", "rank", "name")

    def __init__(self, variables: tuple[GridVariable, ...], name: str = "custom"):
        self.variables = tuple(variables)
        self.rank = {v: t for t, v in enumerate(self.variables)}
        self.name = name

    @staticmethod
    def row_major(r: int, n: int) -> "VariableOrder":
        """x[1,1] > x[1,2] > ... > x[1,n] > x[2,1] > ... > x[r,n]."""
        vs = tuple(
            GridVariable(i, j) for i in range(1, r + 1) for j in range(1, n + 1)
        )
        return VariableOrder(vs, "row-major")

    @staticmethod
    def column_major(r: int, n: int) -> "VariableOrder":
        """x[1,1] > x[2,1] > ... > x[r,1] > x[1,2] > ... > x[r,n]."""
        vs = tuple(
            GridVariable(i, j) for j in range(1, n + 1) for i in range(1, r + 1)
        )
        return VariableOrder(vs, "column-major")

    def exponent_tuple(self, m: Monomial) -> tuple[int, ...]:
        return tuple(m.exponent(v) for v in self.variables)

    def lex_key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key: u > v lexicographically iff lex_key(u) > lex_key(v)."""
        return self.exponent_tuple(m)

    def sorted_desc(self, monomials) -> list[Monomial]:
        return sorted(monomials, key=self.lex_key, reverse=True)


def minimalize(gens: Iterable[Monomial]) -> frozenset[Monomial]:
    """Divisibility-minimal subset of a generator set."""
    by_degree = sorted(set(gens), key=lambda m: m.degree)
    kept: list[Monomial] = []
    for m in by_degree:
        if not any(g.divides(m) for g in kept):
            kept.append(m)
    return frozenset(kept)


class MonomialIdeal:
    """Monomial ideal given by its minimal generators over an (r, n) grid."""

    __slots__ = ("gens", "ambient", "_cache")

    def __init__(self, gens: Iterable[Monomial], ambient: tuple[int, int]):
        self.gens = minimalize(gens)
        self.ambient = (int(ambient[0]), int(ambient[1]))
        self._cache = {}

    @property
    def r(self) -> int:
        return self.ambient[0]

    @property
    def n(self) -> int:
        return self.ambient[1]

    @property
    def num_vars(self) -> int:
        return self.r * self.n

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.gens)

    @property
    def single_degree(self) -> Optional[int]:
        degrees = {g.degree for g in self.gens}
        return degrees.pop() if len(degrees) == 1 else None

    def sorted_gens(self, order: Optional[VariableOrder] = None) -> list[Monomial]:
        order = order or VariableOrder.row_major(*self.ambient)
        return order.sorted_desc(self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.gens == other.gens
            and self.ambient == other.ambient
        )

    def __hash__(self):
        return hash((self.gens, self.ambient))

    def __repr__(self):
        gens = ", ".join(m.text for m in self.sorted_gens())
        return f"MonomialIdeal({gens})"

    # -- operations -----------------------------------------------------------

    def power(self, k: int) -> "MonomialIdeal":
        """Minimal generators of the k-th ordinary power."""
        if k < 1:
            raise ValueError("k must be >= 1")
        gens = sorted(self.gens, key=lambda m: m.items())
        if self.single_degree is not None:
            # all k-fold products share one degree, so dedupe is enough
            products = set()
            for combo in itertools.combinations_with_replacement(gens, k):
                m = combo[0]
                for g in combo[1:]:
                    m = m * g
                products.add(m)
            return MonomialIdeal(products, self.ambient)
        products = set()
        for combo in itertools.combinations_with_replacement(gens, k):
            m = combo[0]
            for g in combo[1:]:
                m = m * g
            products.add(m)
        return MonomialIdeal(minimalize(products), self.ambient)

    def squarefree_power(self, k: int) -> "MonomialIdeal":
        """The ideal generated by the squarefree elements of the k-th power.

        Enumerates k-fold products with pruning of non-squarefree partials;
        the generators of a squarefree ideal all have degree k*d, so the
        distinct squarefree products are already the minimal generators.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self.is_squarefree:
            raise ValueError("squarefree power requires a squarefree ideal")
        gens = sorted(self.gens, key=lambda m: m.items())
        supports = [g.support for g in gens]
        out: set[Monomial] = set()

        def extend(start: int, product: Monomial, used: frozenset, depth: int):
            if depth == k:
                out.add(product)
                return
            for t in range(start, len(gens)):
                if used & supports[t]:
                    continue
                extend(t, product * gens[t], used | supports[t], depth + 1)

        extend(0, Monomial.one(), frozenset(), 0)
        return MonomialIdeal(out, self.ambient)

    def minimal_primes(self) -> tuple[frozenset[GridVariable], ...]:
        """Inclusion-minimal transversals of the generator supports."""
        if not self.is_squarefree:
            raise ValueError("minimal primes implemented for squarefree ideals")
        if "minimal_primes" not in self._cache:
            supports = sorted(
                (g.support for g in self.gens), key=lambda s: (len(s), sorted(s))
            )
            covers: set[frozenset[GridVariable]] = set()

            def extend(chosen: frozenset[GridVariable], idx: int):
                for t in range(idx, len(supports)):
                    if not (chosen & supports[t]):
                        support = supports[t]
                        for v in sorted(support):
                            extend(chosen | {v}, t + 1)
                        return
                covers.add(chosen)

            extend(frozenset(), 0)
            by_size = sorted(covers, key=len)
            minimal: list[frozenset[GridVariable]] = []
            for c in by_size:
                if not any(m <= c for m in minimal):
                    minimal.append(c)
            minimal.sort(key=lambda s: sorted(s))
            self._cache["minimal_primes"] = tuple(minimal)
        return self._cache["minimal_primes"]

    def alexander_dual(self) -> "MonomialIdeal":
        """Dual ideal: one squarefree generator per minimal prime."""
        return MonomialIdeal(
            (Monomial.from_vars(p) for p in self.minimal_primes()), self.ambient
        )


# -- exchange-order machinery ---------------------------------------------------


@dataclass(frozen=True)
class WeakPolymatroidalResult:
    holds: bool
    order: VariableOrder
    witness: Optional[tuple[Monomial, Monomial, GridVariable]] = None

    def __bool__(self):
        return self.holds


def is_weakly_polymatroidal(
    ideal: MonomialIdeal, order: VariableOrder
) -> WeakPolymatroidalResult:
    """Exchange check: whenever u and v agree above position t and u wins at
    x_t, some smaller variable of v can be swapped for x_t inside the ideal.

    Generators must live in one degree, so ideal membership of the exchanged
    monomial reduces to a hash lookup.
    """
    if ideal.single_degree is None:
        raise ValueError("weakly polymatroidal is defined for one-degree ideals")
    vs = order.variables
    tuples = {g: order.exponent_tuple(g) for g in ideal.gens}
    genset = frozenset(tuples.values())
    gens = sorted(ideal.gens, key=lambda g: tuples[g], reverse=True)
    for u, v in itertools.combinations(gens, 2):
        a, b = tuples[u], tuples[v]
        t = next(i for i in range(len(vs)) if a[i] != b[i])
        if a[t] < b[t]:
            u, v, a, b = v, u, b, a
        swapped = False
        for l in range(t + 1, len(vs)):
            if b[l] == 0:
                continue
            candidate = list(b)
            candidate[t] += 1
            candidate[l] -= 1
            if tuple(candidate) in genset:
                swapped = True
                break
        if not swapped:
            return WeakPolymatroidalResult(False, order, (u, v, vs[t]))
    return WeakPolymatroidalResult(True, order)


@dataclass(frozen=True)
class LinearQuotientsResult:
    holds: bool
    gen_order: tuple[Monomial, ...]
    sets: Optional[tuple[frozenset[GridVariable], ...]]
    failed_index: Optional[int] = None

    def __bool__(self):
        return self.holds


def linear_quotients(
    ideal: MonomialIdeal,
    gen_order: Optional[Iterable[Monomial]] = None,
    order: Optional[VariableOrder] = None,
) -> LinearQuotientsResult:
    """Colon ideals (u_1..u_{i-1}) : u_i along a generator order.

    Succeeds when every colon ideal is generated by variables; the default
    order is decreasing lexicographic for the row-major variable order.
    """
    order = order or VariableOrder.row_major(*ideal.ambient)
    if gen_order is None:
        gens = tuple(ideal.sorted_gens(order))
    else:
        gens = tuple(gen_order)
        if frozenset(gens) != ideal.gens:
            raise ValueError("gen_order must be a permutation of the generators")
    sets = []
    for i, u in enumerate(gens):
        quotients = minimalize(g // g.gcd(u) for g in gens[:i])
        if any(q.degree != 1 for q in quotients):
            return LinearQuotientsResult(False, gens, None, failed_index=i)
        sets.append(frozenset(v for q in quotients for v in q.support))
    return LinearQuotientsResult(True, gens, tuple(sets))
