"""Buchberger's algorithm and multivariate division over the rationals.

Pairs are selected by the normal strategy (smallest lcm of leading
monomials first). A pair is skipped when its leading monomials are coprime,
or when a third basis element's leading monomial divides their lcm and both
of its pairs with the pair's members have already been treated (the chain
criterion).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import Monomial, QPolynomial, _sub, monomial_divides, monomial_lcm, order_key

__all__ = ["normal_form", "s_polynomial", "groebner_basis", "reduced_groebner_basis", "is_groebner_basis"]


def normal_form(f: QPolynomial, basis: Sequence[QPolynomial]) -> QPolynomial:
    """Remainder of ``f`` on full division by ``basis``."""
    basis = [g for g in basis if not g.is_zero()]
    for g in basis:
        f._check(g)
    key = order_key(f.order)
    remainder: list[tuple[Monomial, Fraction]] = []
    p: dict[Monomial, Fraction] = dict(f.terms)
    leads = [(g.LM, g.LC, g) for g in basis]
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, g in leads:
            if monomial_divides(lm, m):
                shift = _sub(m, lm)
                q = c / lc
                for gm, gc in g.terms:
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = p.get(t, Fraction(0)) - q * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            remainder.append((m, c))
            del p[m]
    return QPolynomial(remainder, f.variables, f.order)


def s_polynomial(f: QPolynomial, g: QPolynomial) -> QPolynomial:
    lcm = monomial_lcm(f.LM, g.LM)
    return f.mul_term(_sub(lcm, f.LM), 1 / f.LC) - g.mul_term(_sub(lcm, g.LM), 1 / g.LC)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def groebner_basis(gens: Iterable[QPolynomial]) -> list[QPolynomial]:
    """A (not necessarily reduced) Gröbner basis of the ideal of ``gens``."""
    basis: list[QPolynomial] = []
    for f in gens:
        if basis:
            basis[0]._check(f)
        if not f.is_zero():
            basis.append(f.monic())
    if not basis:
        return []
    key = order_key(basis[0].order)
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pending:
        i, j = min(pending, key=lambda p: (key(monomial_lcm(basis[p[0]].LM, basis[p[1]].LM)), p))
        pending.remove((i, j))
        fi, fj = basis[i], basis[j]
        if _coprime(fi.LM, fj.LM):
            continue
        lcm = monomial_lcm(fi.LM, fj.LM)
        if any(
            k not in (i, j)
            and monomial_divides(basis[k].LM, lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        h = normal_form(s_polynomial(fi, fj), basis)
        if not h.is_zero():
            basis.append(h.monic())
            n = len(basis) - 1
            pending |= {(k, n) for k in range(n)}
    return basis


def _interreduce(basis: list[QPolynomial]) -> list[QPolynomial]:
    minimal: list[QPolynomial] = []
    for i, g in enumerate(basis):
        dominated = any(
            monomial_divides(h.LM, g.LM) and (h.LM != g.LM or j < i)
            for j, h in enumerate(basis)
            if j != i
        )
        if not dominated:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        out.append(normal_form(g, others).monic())
    key = order_key(out[0].order) if out else None
    out.sort(key=lambda g: key(g.LM), reverse=True)
    return out


@lru_cache(maxsize=4096)
def _reduced_cached(gens: tuple[QPolynomial, ...]) -> tuple[QPolynomial, ...]:
    return tuple(_interreduce(groebner_basis(gens)))


def reduced_groebner_basis(gens: Sequence[QPolynomial], order: str | None = None) -> list[QPolynomial]:
    """The unique monic, auto-reduced Gröbner basis, leading monomials descending.

    Raises:
        ValueError: if the generators do not share variables and order.
    """
    gens = tuple(gens)
    for g in gens[1:]:
        gens[0]._check(g)
    if order is not None and gens and gens[0].order != order:
        raise ValueError(f"generators use order {gens[0].order!r}, requested {order!r}")
    return list(_reduced_cached(gens))


def is_groebner_basis(basis: Sequence[QPolynomial]) -> bool:
    """Every S-polynomial of ``basis`` reduces to zero."""
    basis = [g for g in basis if not g.is_zero()]
    return all(
        normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()
        for j in range(len(basis))
        for i in range(j)
    )
