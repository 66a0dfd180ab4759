"""Finite posets with linear-extension labeling, their ideal lattices, and
multichains.

Elements are indexed 0..n-1; the index order is always a linear extension
(p_i < p_j implies i < j), which downstream variable orders rely on.  Subsets
of elements (in particular poset ideals) are represented as bitmasks, and a
multichain of ideals I_1 <= ... <= I_r = P as a tuple of r masks.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import PosetError, VerificationError

Mask = int
Multichain = tuple[Mask, ...]


def bits(mask: Mask):
    """Ascending indices of the set bits of ``mask``."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ideal_key(mask: Mask) -> tuple:
    """Canonical sort key for ideals: cardinality, then membership."""
    return (mask.bit_count(), tuple(bits(mask)))


def multichain_key(chain: Multichain) -> tuple:
    return tuple(ideal_key(m) for m in chain)


def multichain_le(a: Multichain, b: Multichain) -> bool:
    return all(x & y == x for x, y in zip(a, b))


def multichain_meet(a: Multichain, b: Multichain) -> Multichain:
    return tuple(x & y for x, y in zip(a, b))


def multichain_join(a: Multichain, b: Multichain) -> Multichain:
    return tuple(x | y for x, y in zip(a, b))


def multichain_rank(chain: Multichain) -> int:
    """Sum of the proper-part cardinalities; the rank function of the lattice."""
    return sum(m.bit_count() for m in chain[:-1])


class Poset:
    """Immutable finite poset.  ``le[i]`` is the bitmask of j with p_i <= p_j."""

    __slots__ = ("names", "_le", "_down", "_cache")

    def __init__(self, names: tuple[str, ...], le: tuple[Mask, ...]):
        n = len(names)
        if n == 0:
            raise PosetError("empty poset is not supported")
        if len(set(names)) != n:
            raise PosetError("duplicate element names")
        if len(le) != n:
            raise PosetError("relation size mismatch")
        full = (1 << n) - 1
        for i, up in enumerate(le):
            if up & ~full:
                raise PosetError("relation refers to unknown elements")
            if not (up >> i) & 1:
                raise PosetError("relation is not reflexive")
            if up & ((1 << i) - 1):
                raise PosetError("labeling is not a linear extension")
        for i in range(n):
            for j in bits(le[i]):
                if i != j and (le[j] >> i) & 1:
                    raise PosetError("not a poset")
                if le[j] & ~le[i]:
                    raise PosetError("relation is not transitive")
        self.names = tuple(names)
        self._le = tuple(le)
        down = [0] * n
        for i in range(n):
            for j in bits(le[i]):
                down[j] |= 1 << i
        self._down = tuple(down)
        self._cache = {}

    # -- basic relations ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> Mask:
        return (1 << self.n) - 1

    def le(self, i: int, j: int) -> bool:
        return bool((self._le[i] >> j) & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.le(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.le(i, j) or self.le(j, i)

    def up_mask(self, i: int) -> Mask:
        return self._le[i]

    def down_mask(self, i: int) -> Mask:
        return self._down[i]

    def principal(self, i: int) -> Mask:
        """The principal ideal generated by p_i."""
        return self._down[i]

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (i, j) with p_i < p_j and nothing in between."""
        if "covers" not in self._cache:
            out = []
            for i in range(self.n):
                above = self._le[i] & ~(1 << i)
                for j in bits(above):
                    between = self._le[i] & self._down[j] & ~(1 << i) & ~(1 << j)
                    if not between:
                        out.append((i, j))
            self._cache["covers"] = tuple(out)
        return self._cache["covers"]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PosetError(f"unknown element {name!r}") from None

    def names_of(self, mask: Mask) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))

    # -- ideals and multichains ---------------------------------------------

    def is_ideal(self, mask: Mask) -> bool:
        down = 0
        for i in bits(mask):
            down |= self._down[i]
        return down == mask

    def ideal_of_names(self, names) -> Mask:
        mask = 0
        for name in names:
            mask |= 1 << self.index_of(name)
        if not self.is_ideal(mask):
            raise PosetError(f"{tuple(names)} is not downward closed")
        return mask

    def ideals(self) -> tuple[Mask, ...]:
        """All poset ideals, in canonical order."""
        if "ideals" not in self._cache:
            found = [m for m in range(1 << self.n) if self.is_ideal(m)]
            found.sort(key=ideal_key)
            self._cache["ideals"] = tuple(found)
        return self._cache["ideals"]

    def multichains_of_ideals(self, r: int) -> tuple[Multichain, ...]:
        """All chains I_1 <= ... <= I_r = P of poset ideals, canonical order."""
        if r < 1:
            raise ValueError("r must be >= 1")
        key = ("multichains", r)
        if key not in self._cache:
            ideals = self.ideals()
            chains: list[tuple[Mask, ...]] = [()]
            for step in range(r - 1):
                chains = [
                    c + (i,)
                    for c in chains
                    for i in ideals
                    if not c or (c[-1] & i) == c[-1]
                ]
            full = self.full_mask
            result = [c + (full,) for c in chains if not c or (c[-1] & full) == c[-1]]
            result.sort(key=multichain_key)
            self._cache[key] = tuple(result)
        return self._cache[key]

    def element_multichains(self, r: int) -> tuple[tuple[int, ...], ...]:
        """All weakly increasing element sequences p_{j_1} <= ... <= p_{j_r}."""
        if r < 1:
            raise ValueError("r must be >= 1")
        seqs: list[tuple[int, ...]] = [(i,) for i in range(self.n)]
        for _ in range(r - 1):
            seqs = [s + (j,) for s in seqs for j in bits(self._le[s[-1]])]
        seqs.sort()
        return tuple(seqs)

    def min_elements(self, mask: Mask) -> Mask:
        """Minimal elements of the sub-poset induced on ``mask``."""
        out = 0
        for i in bits(mask):
            if self._down[i] & mask == (1 << i):
                out |= 1 << i
        return out

    # -- global invariants ----------------------------------------------------

    def width(self) -> int:
        """Maximum cardinality of an antichain (exhaustive, desk scale)."""
        if "width" not in self._cache:
            comp = [self._le[i] | self._down[i] for i in range(self.n)]
            best = 0
            for mask in range(1, 1 << self.n):
                if mask.bit_count() <= best:
                    continue
                if all(comp[i] & mask == (1 << i) for i in bits(mask)):
                    best = mask.bit_count()
            self._cache["width"] = best
        return self._cache["width"]

    def maximal_chains(self) -> tuple[tuple[int, ...], ...]:
        if "maxchains" not in self._cache:
            succ = [[] for _ in range(self.n)]
            for i, j in self.covers():
                succ[i].append(j)
            minimal = [i for i in range(self.n) if self._down[i] == 1 << i]
            out = []

            def extend(chain):
                last = chain[-1]
                if not succ[last]:
                    out.append(tuple(chain))
                    return
                for j in succ[last]:
                    extend(chain + [j])

            for i in minimal:
                extend([i])
            self._cache["maxchains"] = tuple(sorted(out))
        return self._cache["maxchains"]

    def is_pure(self) -> bool:
        lengths = {len(c) for c in self.maximal_chains()}
        return len(lengths) == 1

    def is_antichain(self) -> bool:
        return all(self._le[i] == 1 << i for i in range(self.n))

    # -- constructions --------------------------------------------------------

    def direct_product(self, other: "Poset") -> "Poset":
        """Product poset on pairs with componentwise order."""
        pairs = [(i, k) for i in range(self.n) for k in range(other.n)]
        index = {p: t for t, p in enumerate(pairs)}
        names = tuple(
            f"({self.names[i]},{other.names[k]})" for i, k in pairs
        )
        le = []
        for i, k in pairs:
            up = 0
            for j in bits(self._le[i]):
                for l in bits(other._le[k]):
                    up |= 1 << index[(j, l)]
            le.append(up)
        return Poset(names, tuple(le))

    def canonical_form(self) -> tuple:
        """Isomorphism-invariant encoding (minimum over relabelings)."""
        n = self.n
        strict = [
            (i, j) for i in range(n) for j in bits(self._le[i]) if i != j
        ]
        best = None
        for perm in itertools.permutations(range(n)):
            enc = tuple(sorted((perm[i], perm[j]) for i, j in strict))
            if best is None or enc < best:
                best = enc
        return (n, best)

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.names == other.names
            and self._le == other._le
        )

    def __hash__(self):
        return hash((self.names, self._le))

    def __repr__(self):
        rels = ", ".join(
            f"{self.names[i]}<{self.names[j]}" for i, j in self.covers()
        )
        return f"Poset({list(self.names)}{'; ' + rels if rels else ''})"


# -- construction helpers ------------------------------------------------------


def _closure_and_relabel(names: list[str], arrows: list[tuple[int, int]]) -> Poset:
    n = len(names)
    up = [1 << i for i in range(n)]
    for a, b in arrows:
        up[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            for j in bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    for i in range(n):
        for j in bits(up[i]):
            if i != j and (up[j] >> i) & 1:
                raise PosetError("not a poset")
    # stable topological order: repeatedly take the earliest element whose
    # strict lower set is already placed
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    placed = 0
    order = []
    while len(order) < n:
        for i in range(n):
            if not (placed >> i) & 1 and down[i] & ~placed & ~(1 << i) == 0:
                order.append(i)
                placed |= 1 << i
                break
    pos = {old: k for k, old in enumerate(order)}
    new_names = tuple(names[old] for old in order)
    new_up = tuple(
        sum(1 << pos[j] for j in bits(up[old])) for old in order
    )
    return Poset(new_names, new_up)


def parse_poset(doc) -> Poset:
    """Build a poset from a JSON document or the line-based ``a < b`` DSL.

    The canonical document is ``{"elements": [...], "covers": [[a, b], ...]}``.
    Elements are relabeled to a linear extension by a stable topological sort
    of the input order; the original names are preserved.
    """
    if isinstance(doc, str):
        text = doc.strip()
        if text.startswith("{"):
            doc = json.loads(text)
        else:
            names: list[str] = []
            covers = []
            for line in text.splitlines():
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "<" in line:
                    a, b = (part.strip() for part in line.split("<", 1))
                    covers.append([a, b])
                    for x in (a, b):
                        if x not in names:
                            names.append(x)
                else:
                    if line not in names:
                        names.append(line)
            doc = {"elements": names, "covers": covers}
    if not isinstance(doc, dict):
        raise PosetError("poset document must be a JSON object or DSL text")
    names = [str(x) for x in doc.get("elements", [])]
    if not names:
        raise PosetError("poset must have at least one element")
    if len(set(names)) != len(names):
        raise PosetError("duplicate element names")
    index = {x: i for i, x in enumerate(names)}
    arrows = []
    for pair in doc.get("covers", []):
        if len(pair) != 2:
            raise PosetError(f"bad cover pair {pair!r}")
        a, b = str(pair[0]), str(pair[1])
        if a not in index or b not in index:
            raise PosetError(f"cover {pair!r} uses an undeclared element")
        if a == b:
            raise PosetError("not a poset")
        arrows.append((index[a], index[b]))
    return _closure_and_relabel(names, arrows)


def chain_poset(m: int) -> Poset:
    """The totally ordered poset on m elements (named 1..m)."""
    if m < 1:
        raise PosetError("chain length must be >= 1")
    names = tuple(str(i + 1) for i in range(m))
    le = tuple(((1 << m) - 1) & ~((1 << i) - 1) for i in range(m))
    return Poset(names, le)


def antichain_poset(m: int, names=None) -> Poset:
    if m < 1:
        raise PosetError("antichain size must be >= 1")
    if names is None:
        names = tuple(f"p{i + 1}" for i in range(m))
    return Poset(tuple(names), tuple(1 << i for i in range(m)))


def point_poset() -> Poset:
    return Poset(("p",), (1,))


def all_posets(max_n: int) -> tuple[Poset, ...]:
    """All posets with 1 <= n <= max_n elements, one per isomorphism class.

    Enumerates transitively closed strict relations that are upper
    triangular (every poset admits such a labeling) and dedupes by
    canonical form.
    """
    out: list[Poset] = []
    for n in range(1, max_n + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = set()
        for picks in itertools.product((0, 1), repeat=len(pairs)):
            rel = {p for p, take in zip(pairs, picks) if take}
            if any(
                (i, j) in rel and (j, k) in rel and (i, k) not in rel
                for i in range(n)
                for j in range(i + 1, n)
                for k in range(j + 1, n)
            ):
                continue
            up = [1 << i for i in range(n)]
            for i, j in rel:
                up[i] |= 1 << j
            poset = Poset(tuple(f"p{i + 1}" for i in range(n)), tuple(up))
            form = poset.canonical_form()
            if form not in seen:
                seen.add(form)
                out.append(poset)
    return tuple(out)


# -- join irreducibles of the multichain lattice -------------------------------


@dataclass(frozen=True)
class JoinIrreducibleData:
    """Join irreducibles of the lattice of r-multichains of ideals.

    ``poset`` is the induced subposet, ``multichains[t]`` the multichain at
    index t, and ``product_map[t] = (j, k)`` its image in P x [r-1]: the
    multichain with k copies of the principal ideal of p_j on top of empties.
    """

    poset: Poset
    multichains: tuple[Multichain, ...]
    product_map: tuple[tuple[int, int], ...]


def join_irreducibles_of_multichain_lattice(P: Poset, r: int) -> JoinIrreducibleData:
    if r < 2:
        raise ValueError("r must be >= 2")
    chains = P.multichains_of_ideals(r)
    by_rank: dict[int, list[Multichain]] = {}
    for c in chains:
        by_rank.setdefault(multichain_rank(c), []).append(c)
    irreducible = []
    for c in chains:
        rank = multichain_rank(c)
        lower = [
            d
            for d in by_rank.get(rank - 1, [])
            if multichain_le(d, c)
        ]
        if len(lower) == 1:
            irreducible.append(c)
    # explicit description: k copies of a principal ideal over empties
    expected = {}
    for j in range(P.n):
        pj = P.principal(j)
        for k in range(1, r):
            chain = (0,) * (r - 1 - k) + (pj,) * k + (P.full_mask,)
            expected[chain] = (j, k)
    if set(irreducible) != set(expected):
        raise VerificationError(
            "join irreducibles do not match the principal-ideal description: "
            f"found {len(irreducible)}, expected {len(expected)}"
        )
    irreducible.sort(key=lambda c: (multichain_rank(c), multichain_key(c)))
    names = tuple(multichain_label(P, c) for c in irreducible)
    index = {c: t for t, c in enumerate(irreducible)}
    le = []
    for c in irreducible:
        up = 0
        for d in irreducible:
            if multichain_le(c, d):
                up |= 1 << index[d]
        le.append(up)
    sub = Poset(names, tuple(le))
    return JoinIrreducibleData(
        poset=sub,
        multichains=tuple(irreducible),
        product_map=tuple(expected[c] for c in irreducible),
    )


def multichain_label(P: Poset, chain: Multichain) -> str:
    parts = []
    for mask in chain:
        parts.append("{" + ",".join(P.names_of(mask)) + "}")
    return ";".join(parts)


def multichain_to_lists(P: Poset, chain: Multichain) -> list[list[str]]:
    return [list(P.names_of(mask)) for mask in chain]
