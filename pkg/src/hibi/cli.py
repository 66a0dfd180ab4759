"""Command-line surface: batch computation and verification.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import oracle
from .errors import BudgetExceeded, PosetError, VerificationError
from .grobner import (
    hibi_relations,
    presentation_R_r,
    presentation_R_rs,
    rees_gb,
    revlex_gb_L,
    sorting_gb,
    toric_gb,
    veronese_presentation,
    krull_dim,
)
from .ideals import (
    betti_from_sets,
    generalized_hibi_H,
    multichain_ideal_I,
)
from .invariants import full_report, verify_hibi_isomorphism
from .monomials import VariableOrder, is_weakly_polymatroidal
from .posets import Poset, all_posets, parse_poset, point_poset
from .resolution import resolution_of_H


def _emit(data, fmt: str, text_renderer=None):
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))
    else:
        if text_renderer is not None:
            click.echo(text_renderer())
        else:
            click.echo(json.dumps(data, sort_keys=True, indent=2))


def _load_poset(poset_file, point) -> Poset:
    if point:
        return point_poset()
    if not poset_file:
        raise PosetError("provide --poset FILE or --point")
    return parse_poset(Path(poset_file).read_text())


poset_opt = click.option("--poset", "poset_file", type=click.Path(exists=True))
point_opt = click.option("--point", is_flag=True, help="use the one-element poset")
r_opt = click.option("--r", "r", type=int, default=2, show_default=True)
s_opt = click.option("--s", "s", type=int, default=None)
fmt_opt = click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="json"
)


@click.group(name="hibi")
def main():
    """Monomial ideals and toric rings of a finite poset."""


def _run(body):
    try:
        body()
    except (PosetError, ValueError, click.UsageError, FileNotFoundError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except (VerificationError, BudgetExceeded) as exc:
        click.echo(f"verification failure: {exc}", err=True)
        sys.exit(2)


@main.command()
@poset_opt
@point_opt
@r_opt
@s_opt
@click.option("--kind", type=click.Choice(["I", "H"]), default="I", show_default=True)
@fmt_opt
def ideal(poset_file, point, r, s, kind, fmt):
    """Print the minimal generators of the multichain or generalized Hibi ideal."""

    def body():
        P = _load_poset(poset_file, point)
        s_ = s if s is not None else r
        if kind == "I":
            gens = multichain_ideal_I(P, r, s_).sorted_gens()
        else:
            gens = generalized_hibi_H(P, r, s_).ideal.sorted_gens()
        _emit([m.text for m in gens], fmt, lambda: "\n".join(m.text for m in gens))

    _run(body)


@main.command()
@poset_opt
@point_opt
@r_opt
@s_opt
@fmt_opt
def dual(poset_file, point, r, s, fmt):
    """Print the Alexander dual of the multichain ideal."""

    def body():
        P = _load_poset(poset_file, point)
        s_ = s if s is not None else r
        gens = multichain_ideal_I(P, r, s_).alexander_dual().sorted_gens()
        _emit([m.text for m in gens], fmt, lambda: "\n".join(m.text for m in gens))

    _run(body)


@main.command()
@poset_opt
@point_opt
@r_opt
@fmt_opt
@click.option("--verify", is_flag=True, help="cross-check against the homology oracle")
def betti(poset_file, point, r, fmt, verify):
    """Betti numbers of the quotient by the generalized Hibi ideal."""

    def body():
        P = _load_poset(poset_file, point)
        table = betti_from_sets(P, r)
        data = {
            "totals": list(table.total_vector()),
            "graded": {f"{i},{j}": b for (i, j), b in sorted(table.entries.items())},
        }
        if verify:
            from .ideals import hibi_ideal_H

            graded = oracle.hochster_betti(hibi_ideal_H(P, r))
            if graded.total_vector() != table.total_vector():
                raise VerificationError(
                    "Betti numbers from quotient sets disagree with the homology oracle"
                )
            data["oracle_confirmed"] = True
        _emit(
            data,
            fmt,
            lambda: "betti " + " ".join(map(str, table.total_vector()))
            + ("  [oracle confirmed]" if verify else ""),
        )

    _run(body)


@main.command()
@poset_opt
@point_opt
@r_opt
@fmt_opt
def resolution(poset_file, point, r, fmt):
    """Emit the minimal free resolution of the quotient as JSON."""

    def body():
        P = _load_poset(poset_file, point)
        complex_ = resolution_of_H(P, r)
        _emit(complex_.to_json(), fmt)

    _run(body)


@main.command()
@poset_opt
@point_opt
@r_opt
@s_opt
@click.option(
    "--family",
    type=click.Choice(["hibi", "sorting", "revlex", "rees"]),
    default="hibi",
    show_default=True,
)
@click.option(
    "--order",
    "order_flag",
    type=click.Choice(["revlex", "sorting", "bigraded-sharp"]),
    default=None,
    help="informational; the family fixes its order",
)
@click.option("--y-order-seed", type=int, default=None, help="reserved for alternate extensions")
@fmt_opt
def gb(poset_file, point, r, s, family, order_flag, y_order_seed, fmt):
    """Emit one of the structured Groebner bases.

    With --point the presentation follows the worked one-point convention:
    the fiber consists of the squarefree degree-s monomials in r variables,
    named alphabetically.
    """

    def body():
        P = _load_poset(poset_file, point)
        s_ = s if s is not None else r
        if point:
            pres = veronese_presentation(r, s_)
            s_eff = r - s_ + 1
        else:
            pres = None
            s_eff = s_
        if family == "hibi":
            basis = hibi_relations(P, r)
        elif family == "sorting":
            basis = sorting_gb(P, r, s_eff, presentation=pres).basis
        elif family == "revlex":
            result = revlex_gb_L(P, r, s_eff, presentation=pres)
            if not (result.degree_bound_ok and result.squarefree_initials_ok):
                click.echo(
                    "note: degree-3/squarefree expectation violated for this order",
                    err=True,
                )
            basis = result.basis
        else:
            result = rees_gb(P, r, s_eff)
            if not result.equal:
                raise VerificationError("Rees family differs from the engine basis")
            basis = result.engine
        _emit(
            basis.to_json(),
            fmt,
            lambda: "\n".join(e.text() for e in basis.elements),
        )

    _run(body)


@main.command()
@poset_opt
@point_opt
@r_opt
@s_opt
@fmt_opt
def report(poset_file, point, r, s, fmt):
    """Structural invariant report for the poset at level (r, s)."""

    def body():
        P = _load_poset(poset_file, point)
        s_ = s if s is not None else r
        rep = full_report(P, r, s_)
        _emit(rep.to_json(), fmt, rep.text)

    _run(body)


@main.command()
@poset_opt
@point_opt
@r_opt
@fmt_opt
def iso(poset_file, point, r, fmt):
    """Verify the identification with the classical ring of the product poset."""

    def body():
        P = _load_poset(poset_file, point)
        proof = verify_hibi_isomorphism(P, r)
        data = {
            "product_elements": list(proof.product.names),
            "relations": proof.relation_count,
            "verified": True,
        }
        _emit(data, fmt, lambda: f"verified; {proof.relation_count} relations correspond")

    _run(body)


@main.command()
@click.option("--max-n", type=int, default=3, show_default=True)
@click.option("--max-r", type=int, default=3, show_default=True)
@fmt_opt
def check(max_n, max_r, fmt):
    """Run the invariant suite over all posets up to the size bounds."""

    def body():
        failures = []
        lines = []
        for P in all_posets(max_n):
            for r in range(1, max_r + 1):
                for claim, ok in _checks_for(P, r):
                    line = f"{'PASS' if ok else 'FAIL'} {claim}"
                    lines.append(line)
                    if not ok:
                        failures.append(claim)
        _emit(
            {"checked": len(lines), "failures": failures},
            fmt,
            lambda: "\n".join(lines),
        )
        if failures:
            raise VerificationError("; ".join(failures))

    _run(body)


def _checks_for(P, r):
    from .ideals import hibi_ideal_H, set_of, u_of_multichain
    from .monomials import linear_quotients

    label = f"{P!r} r={r}"
    checks = []
    try:
        for s in range(1, r + 1):
            gh = generalized_hibi_H(P, r, s)
            order = VariableOrder.row_major(r, P.n)
            checks.append(
                (f"{label} s={s}: dual = squarefree power and weakly polymatroidal",
                 bool(is_weakly_polymatroidal(gh.ideal, order))),
            )
        ideal = hibi_ideal_H(P, r)
        row_major = VariableOrder.row_major(r, P.n)
        lq = linear_quotients(ideal)
        sets_match = False
        if lq.holds:
            chains = sorted(
                P.multichains_of_ideals(r),
                key=lambda c: row_major.lex_key(u_of_multichain(P, c)),
                reverse=True,
            )
            sets_match = all(
                set_of(P, c) == lq.sets[t] for t, c in enumerate(chains)
            )
        checks.append((f"{label}: quotient sets match colon ideals", sets_match))
        basis = hibi_relations(P, r, compare_engine=(P.n * r <= 8))
        checks.append((f"{label}: quadratic relations verified", True))
        dim = krull_dim(presentation_R_r(P, r))
        checks.append((f"{label}: dim = n(r-1)+1", dim == P.n * (r - 1) + 1))
        if r >= 2:
            verify_hibi_isomorphism(P, r)
            checks.append((f"{label}: product-poset isomorphism", True))
    except (VerificationError, BudgetExceeded) as exc:
        checks.append((f"{label}: {exc}", False))
    return checks


if __name__ == "__main__":
    main()
