"""The explicit minimal free resolution of the quotient by a Hibi ideal.

Basis symbols are pairs (sigma, generator multichain) with sigma inside the
generator's quotient set; the differential follows the iterated-mapping-cone
formula driven by the decomposition function, with the convention that a
symbol whose sigma escapes the target's quotient set is zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import VerificationError
from .ideals import decomposition_g, set_of, u_of_multichain
from .monomials import GridVariable, Monomial, VariableOrder
from .posets import Multichain, Poset, bits, multichain_key, multichain_to_lists

UNIT = "1"  # basis symbol of the rank-one module at homological degree zero

Symbol = tuple[Multichain, frozenset[GridVariable]]
Row = dict  # target symbol -> (sign, coefficient monomial)


@dataclass
class ResolutionComplex:
    poset: Poset
    r: int
    modules: tuple[tuple, ...]
    differential: dict
    twists: dict

    def betti_numbers(self) -> tuple[int, ...]:
        return tuple(len(basis) for basis in self.modules)

    def k_polynomial(self) -> tuple[int, ...]:
        """Alternating sum of the twist degrees; the quotient's Hilbert numerator."""
        coeffs = [0]
        for i, basis in enumerate(self.modules):
            sign = -1 if i % 2 else 1
            for sym in basis:
                d = 0 if sym == UNIT else self.twists[sym].degree
                if d >= len(coeffs):
                    coeffs.extend([0] * (d - len(coeffs) + 1))
                coeffs[d] += sign
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def check_exactness_identities(self):
        """d composed with itself vanishes, and every row is multigraded."""
        for sym, row in self.differential.items():
            if sym == UNIT:
                continue
            source_twist = self.twists[sym]
            for target, (sign, mono) in row.items():
                target_twist = (
                    Monomial.one() if target == UNIT else self.twists[target]
                )
                if mono.degree == 0:
                    raise VerificationError("unit coefficient breaks minimality")
                if mono * target_twist != source_twist:
                    raise VerificationError("differential row is not homogeneous")
        for basis in self.modules[2:]:
            for sym in basis:
                acc: dict = {}
                for mid, (s1, m1) in self.differential[sym].items():
                    for target, (s2, m2) in self.differential[mid].items():
                        key = (target, m1 * m2)
                        acc[key] = acc.get(key, 0) + s1 * s2
                if any(acc.values()):
                    raise VerificationError("differential does not square to zero")

    def to_json(self) -> dict:
        P = self.poset

        def sym_json(sym):
            if sym == UNIT:
                return {"unit": True}
            chain, sigma = sym
            return {
                "generator": multichain_to_lists(P, chain),
                "sigma": [v.text for v in sorted(sigma)],
            }

        def sym_name(sym):
            if sym == UNIT:
                return "1"
            chain, sigma = sym
            ideals = ";".join(
                "{" + ",".join(P.names_of(m)) + "}" for m in chain
            )
            sig = ",".join(v.text for v in sorted(sigma))
            return f"f[{sig}|{ideals}]"

        out = {"modules": [], "differential": []}
        for basis in self.modules:
            out["modules"].append([sym_json(sym) for sym in basis])
        for basis in self.modules[1:]:
            for sym in basis:
                for target, (sign, mono) in sorted(
                    self.differential[sym].items(), key=lambda kv: sym_name(kv[0])
                ):
                    coeff = ("-" if sign < 0 else "") + mono.text
                    out["differential"].append(
                        {"from": sym_name(sym), "to": sym_name(target), "coeff": coeff}
                    )
        return out


def resolution_of_H(P: Poset, r: int) -> ResolutionComplex:
    """Minimal free resolution of S modulo the level-r Hibi ideal."""
    if r < 1:
        raise ValueError("r must be >= 1")
    order = VariableOrder.row_major(r, P.n)
    chains = sorted(
        P.multichains_of_ideals(r),
        key=lambda c: order.lex_key(u_of_multichain(P, c)),
        reverse=True,
    )
    sets = {c: set_of(P, c) for c in chains}
    by_degree: dict[int, list[Symbol]] = {}
    differential: dict = {UNIT: {}}
    twists: dict = {}
    for chain in chains:
        u = u_of_multichain(P, chain)
        svars = sorted(sets[chain], key=lambda v: order.rank[v])
        for size in range(len(svars) + 1):
            for combo in itertools.combinations(svars, size):
                sigma = frozenset(combo)
                sym: Symbol = (chain, sigma)
                by_degree.setdefault(size + 1, []).append(sym)
                twist = u
                for v in combo:
                    twist = twist * Monomial.variable(v)
                twists[sym] = twist
                if not sigma:
                    differential[sym] = {UNIT: (1, u)}
                    continue
                row: Row = {}
                for v in combo:
                    alpha = sum(1 for w in combo if order.rank[w] < order.rank[v])
                    sign = -1 if alpha % 2 else 1
                    m, elem = v
                    j = elem - 1
                    t = next(
                        level
                        for level, mask in enumerate(chain, start=1)
                        if (mask >> j) & 1
                    )
                    new_chain = decomposition_g(P, v, chain)
                    rest = sigma - {v}
                    if rest <= sets[new_chain]:
                        row[(new_chain, rest)] = (
                            sign,
                            Monomial.variable(GridVariable(t, elem)),
                        )
                    row[(chain, rest)] = (-sign, Monomial.variable(v))
                differential[sym] = row
    top = max(by_degree, default=0)
    modules = ((UNIT,),) + tuple(
        tuple(
            sorted(
                by_degree.get(i, []),
                key=lambda sym: (
                    multichain_key(sym[0]),
                    sorted(order.rank[v] for v in sym[1]),
                ),
            )
        )
        for i in range(1, top + 1)
    )
    complex_ = ResolutionComplex(P, r, modules, differential, twists)
    complex_.check_exactness_identities()
    return complex_
