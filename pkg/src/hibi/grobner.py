"""Binomial Buchberger engine plus the structured toric Groebner bases:
Hibi relations, sorted quadrics, the reverse-lexicographic family, and the
Rees-ideal basis.

Kernels of monomial maps are computed by adjoining image variables, running
Buchberger in a block elimination order, and intersecting with the target
ring.  All intermediate elements are binomials; the graph ideal of a monomial
map is prime, so common monomial factors may be divided out at every step.
Exponent vectors are packed into integers (16-bit limbs) so that divisibility
tests and monomial products are single big-int operations.
"""

from __future__ import annotations

import heapq
import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import BudgetExceeded, VerificationError
from .ideals import generalized_hibi_H, hibi_generators, u_of_multichain
from .monomials import GridVariable, Monomial, VariableOrder
from .posets import (
    Multichain,
    Poset,
    multichain_join,
    multichain_key,
    multichain_label,
    multichain_le,
    multichain_meet,
    multichain_rank,
    point_poset,
)

DEFAULT_BUDGET = 2_000_000
LETTERS = "abcdefghijklmnopqrstuvwxyz"


def step_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("HIBI_STEP_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- presentations ------------------------------------------------------------------


@dataclass
class ToricPresentation:
    """Monomial map data: fiber variables (largest first) onto grid monomials."""

    ambient: tuple[int, int]
    fiber_names: tuple[str, ...]
    gen_map: dict[str, Monomial]
    labels: dict[str, object]
    base_names: tuple[str, ...] = ()
    base_map: dict[str, GridVariable] = field(default_factory=dict)

    @property
    def has_base(self) -> bool:
        return bool(self.base_names)

    def monomial_of(self, name: str) -> Monomial:
        return self.gen_map[name]

    def name_of_monomial(self) -> dict[Monomial, str]:
        return {m: n for n, m in self.gen_map.items()}

    def exponent_rows(self) -> list[list[int]]:
        r, n = self.ambient
        grid = [GridVariable(i, j) for i in range(1, r + 1) for j in range(1, n + 1)]
        return [
            [self.gen_map[name].exponent(v) for v in grid]
            for name in self.fiber_names
        ]

    def with_base(self) -> "ToricPresentation":
        if self.has_base:
            return self
        r, n = self.ambient
        order = VariableOrder.column_major(r, n)
        base_names = tuple(v.text for v in order.variables)
        base_map = {v.text: v for v in order.variables}
        return ToricPresentation(
            self.ambient,
            self.fiber_names,
            dict(self.gen_map),
            dict(self.labels),
            base_names,
            base_map,
        )


def presentation_R_r(P: Poset, r: int) -> ToricPresentation:
    """Fiber presentation of the toric ring on all multichain generators.

    The variable order extends the lattice order: a smaller multichain gets a
    larger variable (sorted by rank, then membership).
    """
    gens = hibi_generators(P, r)
    chains = sorted(gens, key=lambda c: (multichain_rank(c), multichain_key(c)))
    names = tuple(f"y[{multichain_label(P, c)}]" for c in chains)
    gen_map = {name: gens[chain] for name, chain in zip(names, chains)}
    labels = {name: chain for name, chain in zip(names, chains)}
    return ToricPresentation((r, P.n), names, gen_map, labels)


def presentation_R_rs(
    P: Poset, r: int, s: int, letters: bool = False
) -> ToricPresentation:
    """Fiber presentation on the generators of the generalized Hibi ideal.

    Variables are ordered by the column-major lexicographic order of the
    generator monomials, largest monomial first; for the one-point poset this
    is the natural lexicographic naming used with letter variables.
    """
    gh = generalized_hibi_H(P, r, s)
    order = VariableOrder.column_major(r, P.n)
    monos = sorted(gh.ideal.gens, key=order.lex_key, reverse=True)
    use_letters = letters and len(monos) <= len(LETTERS)
    names = []
    for t, m in enumerate(monos):
        if use_letters:
            names.append(LETTERS[t])
        else:
            chains = gh.factorizations[m]
            names.append(
                "y[" + "|".join(multichain_label(P, c) for c in chains) + "]"
            )
    gen_map = {name: m for name, m in zip(names, monos)}
    labels = {name: gh.factorizations[m] for name, m in zip(names, monos)}
    return ToricPresentation((r, P.n), tuple(names), gen_map, labels)


def veronese_presentation(r: int, d: int) -> ToricPresentation:
    """Squarefree degree-d monomials in r variables, with letter fiber names.

    This is the one-point presentation used to reproduce the worked
    examples; it equals the type-(r, r-d+1) presentation of the point.
    """
    if not 1 <= d <= r:
        raise ValueError("need 1 <= d <= r")
    return presentation_R_rs(point_poset(), r, r - d + 1, letters=True)


# -- Groebner basis values -----------------------------------------------------------

Side = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class GBElement:
    lead: Side
    trail: Side

    def lead_dict(self) -> dict[str, int]:
        return dict(self.lead)

    def trail_dict(self) -> dict[str, int]:
        return dict(self.trail)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.lead)

    def text(self) -> str:
        return f"{_side_text(self.lead)} - {_side_text(self.trail)}"


def _side_text(side: Side) -> str:
    if not side:
        return "1"
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in side)


@dataclass
class GroebnerBasis:
    elements: tuple[GBElement, ...]
    order_name: str
    var_order: tuple[str, ...]
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element_set(self) -> frozenset[tuple[Side, Side]]:
        return frozenset((e.lead, e.trail) for e in self.elements)

    def max_degree(self) -> int:
        return max((e.degree for e in self.elements), default=0)

    def leads(self) -> list[Side]:
        return [e.lead for e in self.elements]

    def initials_squarefree(self) -> bool:
        return all(all(e == 1 for _, e in el.lead) for el in self.elements)

    def to_json(self) -> list[dict]:
        return [
            {
                "lead": _side_text(e.lead),
                "trail": _side_text(e.trail),
                "degree": e.degree,
            }
            for e in self.elements
        ]


def _element(names: tuple[str, ...], rank: dict[str, int], lead, trail) -> GBElement:
    lead_side = tuple(
        (n, e) for n, e in sorted(lead.items(), key=lambda kv: rank[kv[0]]) if e
    )
    trail_side = tuple(
        (n, e) for n, e in sorted(trail.items(), key=lambda kv: rank[kv[0]]) if e
    )
    return GBElement(lead_side, trail_side)


# -- the binomial engine --------------------------------------------------------------

_LIMB = 16
_MAXEXP = 1 << 14


class _Packed:
    def __init__(self, nvars: int):
        self.nvars = nvars
        top = 0
        for i in range(nvars):
            top |= 0x8000 << (_LIMB * i)
        self.top = top

    def pack(self, t) -> int:
        p = 0
        for i, e in enumerate(t):
            if e:
                p |= e << (_LIMB * i)
        return p

    def divides(self, a: int, b: int) -> bool:
        t = b - a
        return t >= 0 and not (t & self.top)


def _spair_sides(lcm, f, g):
    a = tuple(l - x + y for l, x, y in zip(lcm, f[0], f[1]))
    b = tuple(l - x + y for l, x, y in zip(lcm, g[0], g[1]))
    return a, b


class _Engine:
    """Buchberger completion for binomial ideals whose graph ideal is prime."""

    def __init__(self, nvars: int, key: Callable, budget: int):
        self.ops = _Packed(nvars)
        self.key = key
        self.budget = budget
        self.steps = 0
        self.basis: list[tuple] = []
        self.heap: list = []
        self._seq = 0

    def _tick(self, amount: int = 1):
        self.steps += amount
        if self.steps > self.budget:
            raise BudgetExceeded(
                f"step budget {self.budget} exceeded (set HIBI_STEP_BUDGET to raise)"
            )

    def _make(self, a: tuple, b: tuple):
        """Primitive, oriented binomial record, or None when the sides agree."""
        if any(x and y for x, y in zip(a, b)):
            g = tuple(min(x, y) for x, y in zip(a, b))
            a = tuple(x - y for x, y in zip(a, g))
            b = tuple(x - y for x, y in zip(b, g))
        if a == b:
            return None
        if self.key(a) < self.key(b):
            a, b = b, a
        if max(a) >= _MAXEXP or max(b) >= _MAXEXP:
            raise VerificationError("exponent overflow in the binomial engine")
        return (a, b, self.ops.pack(a), self.ops.pack(b), sum(a))

    def _find_reducer(self, packed: int, degree: int, skip: int = -1):
        for t, rec in enumerate(self.basis):
            if t != skip and rec[4] <= degree and self.ops.divides(rec[2], packed):
                return rec
        return None

    def _normal_form(self, rec):
        """Full normal form; primitive part and orientation refreshed after
        every replacement, so both sides end up irreducible."""
        lt, tt, lp, tp, _ = rec
        while True:
            red = self._find_reducer(lp, sum(lt))
            if red is not None:
                self._tick()
                lt = tuple(x - y + z for x, y, z in zip(lt, red[0], red[1]))
            else:
                red = self._find_reducer(tp, sum(tt))
                if red is None:
                    return (lt, tt, lp, tp, sum(lt))
                self._tick()
                tt = tuple(x - y + z for x, y, z in zip(tt, red[0], red[1]))
            nxt = self._make(lt, tt)
            if nxt is None:
                return None
            lt, tt, lp, tp, _ = nxt

    def _push_pairs(self, new_idx: int):
        f = self.basis[new_idx]
        for i in range(new_idx):
            g = self.basis[i]
            if not any(x and y for x, y in zip(f[0], g[0])):
                continue  # coprime leads: the S-pair reduces to zero
            lcm = tuple(max(x, y) for x, y in zip(f[0], g[0]))
            self._seq += 1
            heapq.heappush(
                self.heap, (self.key(lcm), self._seq, i, new_idx, lcm)
            )

    def run(self, seeds) -> list[tuple]:
        for a, b in seeds:
            rec = self._make(tuple(a), tuple(b))
            if rec is not None:
                rec = self._normal_form(rec)
            if rec is not None:
                self.basis.append(rec)
                self._push_pairs(len(self.basis) - 1)
        while self.heap:
            self._tick()
            _, _, i, j, lcm = heapq.heappop(self.heap)
            a, b = _spair_sides(lcm, self.basis[i], self.basis[j])
            rec = self._make(a, b)
            if rec is None:
                continue
            rec = self._normal_form(rec)
            if rec is None:
                continue
            self.basis.append(rec)
            self._push_pairs(len(self.basis) - 1)
        return self._interreduce()

    def _interreduce(self) -> list[tuple]:
        records = sorted(set(self.basis), key=lambda rec: self.key(rec[0]))
        kept: list[tuple] = []
        seen_leads: list[tuple] = []
        for rec in records:
            if any(
                self.ops.divides(k[2], rec[2]) for k in kept
            ):
                continue
            kept.append(rec)
            seen_leads.append(rec[0])
        self.basis = kept
        reduced = []
        for t, rec in enumerate(kept):
            lt, tt = rec[0], rec[1]
            tp = rec[3]
            while True:
                red = self._find_reducer(tp, sum(tt), skip=t)
                if red is None:
                    break
                self._tick()
                tt = tuple(x - y + z for x, y, z in zip(tt, red[0], red[1]))
                tp = self.ops.pack(tt)
            if lt == tt:
                raise VerificationError("interreduction collapsed a basis element")
            reduced.append((lt, tt, rec[2], tp, rec[4]))
        self.basis = reduced
        reduced.sort(key=lambda rec: self.key(rec[0]), reverse=True)
        return reduced


# -- order keys ------------------------------------------------------------------------


def _grevlex_part(idxs):
    rev = tuple(reversed(idxs))

    def part(t):
        return (sum(t[i] for i in idxs),) + tuple(-t[i] for i in rev)

    return part


def _lex_part(idxs):
    def part(t):
        return tuple(t[i] for i in idxs)

    return part


def _sharp_part(idxs, weights):
    rev = tuple(reversed(idxs))
    wt = tuple(weights)

    def part(t):
        return (
            sum(w * t[i] for w, i in zip(wt, idxs)),
            sum(t[i] for i in idxs),
        ) + tuple(-t[i] for i in rev)

    return part


def _compose(parts):
    def key(t):
        out = ()
        for p in parts:
            out += p(t)
        return out

    return key


# -- engine soundness ----------------------------------------------------------------


def _image_of_side(pres: ToricPresentation, side: dict[str, int]):
    exps: dict[GridVariable, int] = {}
    tdeg = 0
    for name, e in side.items():
        if not e:
            continue
        if name in pres.base_map:
            v = pres.base_map[name]
            exps[v] = exps.get(v, 0) + e
        else:
            tdeg += e
            for v, ge in pres.gen_map[name].items():
                exps[v] = exps.get(v, 0) + ge * e
    return tuple(sorted((v, e) for v, e in exps.items() if e)), tdeg


def _check_kernel(pres: ToricPresentation, elements) -> None:
    for el in elements:
        if _image_of_side(pres, el.lead_dict()) != _image_of_side(
            pres, el.trail_dict()
        ):
            raise VerificationError(f"engine produced a non-kernel element: {el.text()}")


# -- toric_gb ---------------------------------------------------------------------------


def toric_gb(
    pres: ToricPresentation,
    order: str = "revlex",
    weights: Optional[dict[str, int]] = None,
    budget: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the kernel of the monomial map.

    ``order`` is "revlex" (graded reverse lexicographic on the fiber
    variables, largest variable first in ``fiber_names``) or
    "bigraded-sharp" (column-major lexicographic on the base grid variables,
    then a weight order realizing the sorting relations on the fiber).
    """
    if order not in ("revlex", "bigraded-sharp"):
        raise ValueError(f"unsupported order {order!r}")
    if order == "bigraded-sharp":
        pres = pres.with_base()
        if weights is None:
            weights = sorting_weights(pres, _sorting_rules(pres)[0])
    r, n = pres.ambient
    grid = [
        GridVariable(i, j) for j in range(1, n + 1) for i in range(1, r + 1)
    ]
    image_names = ["Z" + v.text[1:] for v in grid] + ["T"]
    target_names = list(pres.base_names) + list(pres.fiber_names)
    all_names = image_names + target_names
    index = {name: t for t, name in enumerate(all_names)}
    nvars = len(all_names)
    grid_index = {v: index["Z" + v.text[1:]] for v in grid}

    def vec(entries: dict[int, int]) -> tuple:
        row = [0] * nvars
        for i, e in entries.items():
            row[i] = e
        return tuple(row)

    seeds = []
    for name in pres.fiber_names:
        image = {grid_index[v]: e for v, e in pres.gen_map[name].items()}
        image[index["T"]] = 1
        seeds.append((vec({index[name]: 1}), vec(image)))
    for name in pres.base_names:
        v = pres.base_map[name]
        seeds.append((vec({index[name]: 1}), vec({grid_index[v]: 1})))

    elim_idx = tuple(index[name] for name in image_names)
    fiber_idx = tuple(index[name] for name in pres.fiber_names)
    parts = [_grevlex_part(elim_idx)]
    if order == "revlex":
        if pres.base_names:
            parts.append(_grevlex_part(tuple(index[n] for n in pres.base_names)))
        parts.append(_grevlex_part(fiber_idx))
    else:
        parts.append(_lex_part(tuple(index[n] for n in pres.base_names)))
        parts.append(
            _sharp_part(fiber_idx, [weights[n] for n in pres.fiber_names])
        )
    key = _compose(parts)

    engine = _Engine(nvars, key, step_budget(budget))
    records = engine.run(seeds)

    rank = {name: t for t, name in enumerate(target_names)}
    target_offset = len(image_names)
    elements = []
    for lt, tt, _, _, _ in records:
        if any(lt[i] for i in elim_idx) or any(tt[i] for i in elim_idx):
            continue
        lead = {target_names[i - target_offset]: lt[i] for i in range(target_offset, nvars) if lt[i]}
        trail = {target_names[i - target_offset]: tt[i] for i in range(target_offset, nvars) if tt[i]}
        elements.append(_element(tuple(target_names), rank, lead, trail))
    basis = GroebnerBasis(
        tuple(elements), order, tuple(target_names), reduced=True
    )
    _check_kernel(pres, basis.elements)
    return basis


# -- marked quadratic families ----------------------------------------------------------

Rules = dict[frozenset, tuple[str, str]]


def _quadratic_normal_form(multiset: tuple[str, ...], rules: Rules, tick) -> tuple[str, ...]:
    current = sorted(multiset)
    while True:
        hit = None
        for a, b in itertools.combinations(sorted(set(current)), 2):
            pair = frozenset((a, b))
            if pair in rules:
                hit = (a, b, rules[pair])
                break
        if hit is None:
            return tuple(current)
        tick()
        a, b, (c, d) = hit
        current.remove(a)
        current.remove(b)
        current.extend((c, d))
        current.sort()


def _verify_marked_quadratic(rules: Rules, budget: int) -> int:
    """Reduces every overlapping S-pair of a marked quadratic family to zero.

    Pairs with coprime leads are skipped (the product criterion); the marking
    is applied directly, so termination within the budget together with zero
    remainders certifies the family as a Groebner basis for any order
    realizing the marking.
    """
    steps = 0

    def tick():
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceeded(
                f"marked reduction exceeded {budget} steps; possible cycle"
            )

    by_var: dict[str, list[frozenset]] = {}
    for pair in rules:
        for name in pair:
            by_var.setdefault(name, []).append(pair)
    for name in sorted(by_var):
        group = sorted(by_var[name], key=sorted)
        for p1, p2 in itertools.combinations(group, 2):
            (b,) = p1 - {name}
            (e,) = p2 - {name}
            if b == e:
                continue
            side1 = _quadratic_normal_form(rules[p1] + (e,), rules, tick)
            side2 = _quadratic_normal_form(rules[p2] + (b,), rules, tick)
            if side1 != side2:
                raise VerificationError(
                    f"marked S-pair {sorted(p1)} / {sorted(p2)} does not reduce to zero"
                )
    return steps


def _rules_to_basis(
    rules: Rules, pres: ToricPresentation, order_name: str
) -> GroebnerBasis:
    rank = {name: t for t, name in enumerate(pres.fiber_names)}
    elements = []
    for pair in sorted(rules, key=lambda p: sorted(p, key=lambda n: rank[n])):
        a, b = sorted(pair, key=lambda n: rank[n])
        c, d = sorted(rules[pair], key=lambda n: rank[n])
        lead = {a: 1, b: 1}
        if a == b:
            lead = {a: 2}
        trail: dict[str, int] = {}
        for nm in (c, d):
            trail[nm] = trail.get(nm, 0) + 1
        elements.append(_element(pres.fiber_names, rank, lead, trail))
    elements.sort(key=lambda e: tuple(rank[n] for n, _ in e.lead))
    return GroebnerBasis(
        tuple(elements), order_name, tuple(pres.fiber_names), reduced=True
    )


# -- Hibi relations -----------------------------------------------------------------------


def hibi_relations(
    P: Poset,
    r: int,
    compare_engine: bool = False,
    budget: Optional[int] = None,
    presentation: Optional[ToricPresentation] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the defining ideal of the multichain toric
    ring: one binomial per incomparable pair, product minus meet times join,
    marked at the incomparable product.

    Always verifies kernel membership, reverse-lexicographic lead selection,
    and zero reduction of all overlapping marked S-pairs; optionally compares
    against the elimination engine.
    """
    pres = presentation or presentation_R_r(P, r)
    chains = [pres.labels[name] for name in pres.fiber_names]
    name_of = {chain: name for chain, name in zip(chains, pres.fiber_names)}
    rank = {name: t for t, name in enumerate(pres.fiber_names)}
    rules: Rules = {}
    for c1, c2 in itertools.combinations(chains, 2):
        if multichain_le(c1, c2) or multichain_le(c2, c1):
            continue
        meet, join = multichain_meet(c1, c2), multichain_join(c1, c2)
        if u_of_multichain(P, c1) * u_of_multichain(P, c2) != u_of_multichain(
            P, meet
        ) * u_of_multichain(P, join):
            raise VerificationError("meet-join identity failed")
        rules[frozenset((name_of[c1], name_of[c2]))] = (
            name_of[meet],
            name_of[join],
        )
    # revlex check: the trail contains the join, which is the smallest
    # variable among the four, so the incomparable product must win
    nfiber = len(pres.fiber_names)
    for pair, (c, d) in rules.items():
        a, b = sorted(pair, key=lambda n: rank[n])
        lead_vec = [0] * nfiber
        lead_vec[rank[a]] += 1
        lead_vec[rank[b]] += 1
        trail_vec = [0] * nfiber
        trail_vec[rank[c]] += 1
        trail_vec[rank[d]] += 1
        if not _revlex_greater(lead_vec, trail_vec):
            raise VerificationError("marked lead is not the revlex lead")
        if frozenset((c, d)) in rules:
            raise VerificationError("basis is not reduced: trail is a lead")
    _verify_marked_quadratic(rules, step_budget(budget))
    basis = _rules_to_basis(rules, pres, "revlex")
    if compare_engine:
        engine = toric_gb(pres, "revlex", budget=budget)
        if engine.element_set() != basis.element_set():
            raise VerificationError(
                "Hibi relations differ from the engine-computed reduced basis"
            )
    return basis


def _revlex_greater(a: list[int], b: list[int]) -> bool:
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


# -- sorting ---------------------------------------------------------------------------


def sort_pair(
    u: Monomial, v: Monomial, order: VariableOrder
) -> tuple[Monomial, Monomial]:
    """Merge the variables of u*v in weakly increasing column-major order and
    deal them alternately; idempotent on its image."""
    if u.degree != v.degree:
        raise ValueError("sorting requires equal degrees")
    merged = []
    for mono in (u, v):
        for var, e in mono.items():
            merged.extend([var] * e)
    merged.sort(key=lambda var: order.rank[var])
    return Monomial.from_vars(merged[0::2]), Monomial.from_vars(merged[1::2])


def is_sortable(monomials, order: VariableOrder):
    """Whether the sorting operator maps the set into itself; on failure the
    witness is the first offending pair with its sorted image."""
    pool = sorted(set(monomials), key=order.lex_key, reverse=True)
    known = set(pool)
    for u, v in itertools.combinations_with_replacement(pool, 2):
        a, b = sort_pair(u, v, order)
        if a not in known or b not in known:
            return False, (u, v, a, b)
    return True, None


def _sorting_rules(pres: ToricPresentation):
    r, n = pres.ambient
    order = VariableOrder.column_major(r, n)
    by_mono = pres.name_of_monomial()
    monos = [pres.gen_map[name] for name in pres.fiber_names]
    ok, witness = is_sortable(monos, order)
    if not ok:
        u, v, a, b = witness
        raise VerificationError(
            f"generator set is not sortable: sort({u}, {v}) leaves the set"
        )
    rules: Rules = {}
    for u, v in itertools.combinations(sorted(set(monos), key=order.lex_key), 2):
        a, b = sort_pair(u, v, order)
        if {a, b} == {u, v}:
            continue
        rules[frozenset((by_mono[u], by_mono[v]))] = (by_mono[a], by_mono[b])
    return rules, order


@dataclass
class SortingBasis:
    presentation: ToricPresentation
    rules: Rules
    basis: GroebnerBasis
    steps_used: int


def sorting_gb(
    P: Poset,
    r: int,
    s: int,
    budget: Optional[int] = None,
    presentation: Optional[ToricPresentation] = None,
) -> SortingBasis:
    """Marked quadratic basis from the sorting operator: one binomial per
    unsorted pair, marked there; S-pair reduction certifies the basis."""
    pres = presentation or presentation_R_rs(P, r, s)
    rules, _ = _sorting_rules(pres)
    for pair, (c, d) in rules.items():
        a, b = sorted(pair)
        if pres.gen_map[a] * pres.gen_map[b] != pres.gen_map[c] * pres.gen_map[d]:
            raise VerificationError("sorting relation is not in the kernel")
        if frozenset((c, d)) in rules:
            raise VerificationError("sorted pair appears among the leads")
    steps = _verify_marked_quadratic(rules, step_budget(budget))
    basis = _rules_to_basis(rules, pres, "sorting")
    return SortingBasis(pres, rules, basis, steps)


def sorting_weights(pres: ToricPresentation, rules: Rules) -> dict[str, int]:
    """Integer fiber weights realizing the sorting marking: every unsorted
    product weighs strictly more than its sorted image.  Solved as a linear
    program, then rounded and verified exactly."""
    names = list(pres.fiber_names)
    if not rules:
        return {n: 0 for n in names}
    index = {n: t for t, n in enumerate(names)}
    constraints = []
    for pair, (c, d) in sorted(rules.items(), key=lambda kv: sorted(kv[0])):
        a, b = sorted(pair)
        row = [0] * len(names)
        row[index[a]] += 1
        row[index[b]] += 1
        row[index[c]] -= 1
        row[index[d]] -= 1
        constraints.append(row)

    def verify(w: list[int]) -> bool:
        return all(
            sum(x * y for x, y in zip(row, w)) >= 1 for row in constraints
        )

    from scipy.optimize import linprog

    result = linprog(
        c=[1] * len(names),
        A_ub=[[-x for x in row] for row in constraints],
        b_ub=[-1] * len(constraints),
        bounds=[(0, None)] * len(names),
        method="highs",
    )
    if not result.success:
        raise VerificationError("no weight order realizes the sorting marking")
    for scale in (1, 2, 6, 12, 60, 840, 2520, 27720, 720720):
        w = [round(x * scale) for x in result.x]
        if verify(w):
            return {n: w[index[n]] for n in names}
    raise VerificationError("could not round the sorting weights exactly")


# -- reverse-lexicographic family ---------------------------------------------------------


@dataclass
class RevlexResult:
    presentation: ToricPresentation
    basis: GroebnerBasis
    degree_bound_ok: bool
    squarefree_initials_ok: bool


def revlex_gb_L(
    P: Optional[Poset] = None,
    r: int = 2,
    s: int = 2,
    budget: Optional[int] = None,
    presentation: Optional[ToricPresentation] = None,
) -> RevlexResult:
    """Reduced reverse-lexicographic basis of the defining ideal of the
    generalized toric ring; reports whether all elements have degree at most
    three with squarefree initial monomials."""
    pres = presentation or presentation_R_rs(P, r, s)
    basis = toric_gb(pres, "revlex", budget=budget)
    return RevlexResult(
        pres,
        basis,
        degree_bound_ok=basis.max_degree() <= 3,
        squarefree_initials_ok=basis.initials_squarefree(),
    )


# -- the ell-exchange property --------------------------------------------------------------


def l_exchange_core(
    pres: ToricPresentation,
    forbidden_pairs,
    order: VariableOrder,
    max_degree: int = 2,
):
    """Checks the exchange condition over pairs of standard monomials of each
    degree up to ``max_degree``; standard means no forbidden (unsorted) pair
    among the factors.  Returns (True, None) or (False, witness)."""
    genset = {order.exponent_tuple(m) for m in pres.gen_map.values()}
    vs = order.variables

    def standard(multiset):
        return all(
            frozenset((a, b)) not in forbidden_pairs
            for a, b in itertools.combinations(sorted(set(multiset)), 2)
        )

    for d in range(1, max_degree + 1):
        monos = [
            ms
            for ms in itertools.combinations_with_replacement(pres.fiber_names, d)
            if standard(ms)
        ]
        images = {}
        for ms in monos:
            exps = [0] * len(vs)
            for name in ms:
                for t, e in enumerate(order.exponent_tuple(pres.gen_map[name])):
                    exps[t] += e
            images[ms] = tuple(exps)
        for A, B in itertools.permutations(monos, 2):
            xa, xb = images[A], images[B]
            if xa == xb:
                continue
            q = next(t for t in range(len(vs)) if xa[t] != xb[t])
            if xa[q] > xb[q]:
                continue
            ok = False
            for name in set(A):
                u = order.exponent_tuple(pres.gen_map[name])
                for j in range(q + 1, len(vs)):
                    if u[j]:
                        cand = list(u)
                        cand[q] += 1
                        cand[j] -= 1
                        if tuple(cand) in genset:
                            ok = True
                            break
                if ok:
                    break
            if not ok:
                return False, (A, B, vs[q])
    return True, None


def l_exchange_check(P: Poset, r: int, s: int, max_degree: int = 2):
    pres = presentation_R_rs(P, r, s)
    rules, order = _sorting_rules(pres)
    return l_exchange_core(pres, set(rules), order, max_degree)


# -- Rees basis --------------------------------------------------------------------------------


@dataclass
class ReesResult:
    presentation: ToricPresentation
    family: GroebnerBasis
    engine: GroebnerBasis
    equal: bool
    initial_quadratic: bool
    initial_squarefree: bool
    x_condition: bool


def rees_gb(P: Poset, r: int, s: int, budget: Optional[int] = None) -> ReesResult:
    """Rees-ideal basis: the sorting relations together with the linear
    relations x_a y_k - x_b y_l, where x_b is the smallest variable dividing
    x_a u_k with quotient still a generator (so the trail is standard),
    compared against the engine under the bigraded sharp order."""
    pres = presentation_R_rs(P, r, s).with_base()
    sorting = sorting_gb(P, r, s, budget=budget, presentation=pres)
    weights = sorting_weights(pres, sorting.rules)
    order = VariableOrder.column_major(*pres.ambient)
    by_mono = pres.name_of_monomial()
    var_order = tuple(pres.base_names) + tuple(pres.fiber_names)
    rank = {name: t for t, name in enumerate(var_order)}
    elements = list(sorting.basis.elements)
    for k in pres.fiber_names:
        uk = pres.gen_map[k]
        for xa in order.variables:
            m = uk * Monomial.variable(xa)
            best = None
            for x in sorted(m.support, key=lambda v: order.rank[v], reverse=True):
                quotient = m // Monomial.variable(x)
                if quotient in by_mono:
                    best = (x, by_mono[quotient])
                    break
            if best is None or best[0] == xa:
                continue
            xb, l = best
            elements.append(
                _element(
                    var_order,
                    rank,
                    {xa.text: 1, k: 1},
                    {xb.text: 1, l: 1},
                )
            )
    family = GroebnerBasis(tuple(elements), "bigraded-sharp", var_order)
    engine = toric_gb(pres, "bigraded-sharp", weights=weights, budget=budget)
    equal = family.element_set() == engine.element_set()
    quadratic = engine.max_degree() <= 2
    squarefree = engine.initials_squarefree()
    xcond = all(
        all(e <= 1 for name, e in el.lead if name in pres.base_map)
        for el in engine.elements
    )
    return ReesResult(pres, family, engine, equal, quadratic, squarefree, xcond)


# -- Krull dimension ----------------------------------------------------------------------------


def krull_dim(pres: ToricPresentation) -> int:
    """Dimension of the monomial algebra: exact integer rank of the exponent
    matrix, with a homogenizing column when all images share one degree."""
    rows = pres.exponent_rows()
    degrees = {sum(row) for row in rows}
    if len(degrees) == 1:
        rows = [row + [1] for row in rows]
    pivots: list[list[Fraction]] = []
    pivot_cols: list[int] = []
    for row in rows:
        work = [Fraction(x) for x in row]
        for pc, prow in zip(pivot_cols, pivots):
            if work[pc]:
                f = work[pc]
                for t in range(len(work)):
                    work[t] -= f * prow[t]
        lead = next((t for t, x in enumerate(work) if x), None)
        if lead is None:
            continue
        inv = work[lead]
        pivots.append([x / inv for x in work])
        pivot_cols.append(lead)
    return len(pivots)
