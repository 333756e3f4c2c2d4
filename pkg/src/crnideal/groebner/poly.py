"""Sparse multivariate polynomials over the rationals with a fixed monomial order."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

__all__ = ["Monomial", "QPolynomial", "ORDERS", "order_key", "monomial_lcm", "monomial_divides"]

Monomial = tuple[int, ...]


def _degrevlex(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex(m: Monomial):
    return m


ORDERS: dict[str, Callable[[Monomial], object]] = {"degrevlex": _degrevlex, "lex": _lex}


def order_key(order: str) -> Callable[[Monomial], object]:
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r} (expected one of {', '.join(ORDERS)})") from None


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class QPolynomial:
    """Polynomial in ``variables`` with ``Fraction`` coefficients.

    Terms are kept sorted by the monomial order, leading term first.
    """

    __slots__ = ("variables", "order", "_terms", "_key")

    def __init__(
        self,
        terms: Mapping[Monomial, Fraction] | Iterable[tuple[Monomial, object]],
        variables: Sequence[str],
        order: str = "degrevlex",
    ):
        self.variables = tuple(variables)
        self.order = order
        self._key = order_key(order)
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Monomial, Fraction] = {}
        nv = len(self.variables)
        for m, c in terms:
            m = tuple(m)
            if len(m) != nv:
                raise ValueError(f"monomial {m} has {len(m)} exponents, ring has {nv} variables")
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        items = [(m, c) for m, c in acc.items() if c != 0]
        items.sort(key=lambda t: self._key(t[0]), reverse=True)
        self._terms = tuple(items)

    @classmethod
    def zero(cls, variables: Sequence[str], order: str = "degrevlex") -> QPolynomial:
        return cls((), variables, order)

    @classmethod
    def monomial(cls, m: Monomial, variables: Sequence[str], order: str = "degrevlex", coeff=1) -> QPolynomial:
        return cls({tuple(m): Fraction(coeff)}, variables, order)

    def _new(self, terms) -> QPolynomial:
        return QPolynomial(terms, self.variables, self.order)

    def _check(self, other: QPolynomial) -> None:
        if self.variables != other.variables or self.order != other.order:
            raise ValueError("polynomials live in different rings (variables or order differ)")

    @property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def LM(self) -> Monomial:
        return self._terms[0][0]

    @property
    def LC(self) -> Fraction:
        return self._terms[0][1]

    def __add__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        return self._new(self._terms + other._terms)

    def __neg__(self) -> QPolynomial:
        return self._new((m, -c) for m, c in self._terms)

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        self._check(other)
        return self._new(self._terms + tuple((m, -c) for m, c in other._terms))

    def __mul__(self, other) -> QPolynomial:
        if isinstance(other, QPolynomial):
            self._check(other)
            acc: dict[Monomial, Fraction] = {}
            for m1, c1 in self._terms:
                for m2, c2 in other._terms:
                    m = _add(m1, m2)
                    acc[m] = acc.get(m, Fraction(0)) + c1 * c2
            return self._new(acc)
        c = Fraction(other)
        return self._new((m, c * x) for m, x in self._terms)

    __rmul__ = __mul__

    def mul_term(self, m: Monomial, c: Fraction) -> QPolynomial:
        return self._new((_add(m, x), c * y) for x, y in self._terms)

    def monic(self) -> QPolynomial:
        if not self._terms:
            return self
        lc = self.LC
        return self._new((m, c / lc) for m, c in self._terms)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QPolynomial)
            and self.variables == other.variables
            and self.order == other.order
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.order, self._terms))

    def format(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self._terms):
            mono = "*".join(
                f"x_{v}" if e == 1 else f"x_{v}^{e}" for v, e in zip(self.variables, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"QPolynomial({self.format()!r}, order={self.order!r})"
