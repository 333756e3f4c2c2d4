"""Mass-action steady-state polynomials and reactant structure.

Each species derivative is an integer combination of ``kappa_i * x^{y_i}``
terms. Rate constants stay symbolic: a term is keyed by its rate label and
its monomial, the coefficient is the net stoichiometric change.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .network import Complex, Network, RingContext

__all__ = [
    "RatePolynomial",
    "SteadyStateSystem",
    "steady_state_system",
    "minimal_reactants",
    "reactant_support_generators",
    "format_rate",
    "format_monomial",
]

Term = tuple[str, Complex]


class RatePolynomial:
    """Sum of ``c * kappa_label * x^monomial`` with integer ``c``, no zeros stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Term, int] | Iterable[tuple[Term, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Term, int] = {}
        for key, c in terms:
            acc[key] = acc.get(key, 0) + c
        self._terms = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def term(cls, rate: str, monomial: Complex, coeff: int = 1) -> RatePolynomial:
        return cls({(rate, monomial): coeff})

    @property
    def terms(self) -> dict[Term, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Term, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, rate: str, monomial: Complex) -> int:
        return self._terms.get((rate, monomial), 0)

    def __add__(self, other: RatePolynomial) -> RatePolynomial:
        return RatePolynomial(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> RatePolynomial:
        return RatePolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: RatePolynomial) -> RatePolynomial:
        return self + (-other)

    def __mul__(self, k: int) -> RatePolynomial:
        if not isinstance(k, int):
            return NotImplemented
        return RatePolynomial({t: c * k for t, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatePolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def format(
        self,
        rate_order: Sequence[str] = (),
        species_order: Sequence[str] | None = None,
        style: str = "unicode",
    ) -> str:
        """Render terms in ``rate_order`` (unlisted labels go last, sorted)."""
        if not self._terms:
            return "0"
        rank = {r: i for i, r in enumerate(rate_order)}
        keys = sorted(self._terms, key=lambda t: (rank.get(t[0], len(rank)), t[0], t[1]))
        out = []
        for n, (rate, mono) in enumerate(keys):
            c = self._terms[rate, mono]
            mag = abs(c)
            if style == "unicode":
                body = ("" if mag == 1 else str(mag)) + format_rate(rate) + format_monomial(mono, species_order)
                neg, pos = "−", "+"
            else:
                parts = ([] if mag == 1 else [str(mag)]) + [rate]
                parts += [s if e == 1 else f"{s}^{e}" for s, e in _ordered(mono, species_order)]
                body = "*".join(parts)
                neg, pos = "-", "+"
            if n == 0:
                out.append((neg if c < 0 else "") + body)
            else:
                out.append(f" {neg if c < 0 else pos} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatePolynomial({self.format(style='ascii')!r})"


_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_rate(label: str) -> str:
    """``k3`` -> ``κ₃``, ``k3_p`` -> ``κ₃′``; other labels -> ``κ_label``."""
    m = re.fullmatch(r"k(\d+)((?:_p)*)(_\w+)?", label)
    if m is None:
        return f"κ_{label}"
    return "κ" + m.group(1).translate(_SUB) + "′" * (len(m.group(2)) // 2) + (m.group(3) or "")


def _ordered(mono: Complex, order: Sequence[str] | None):
    exps = mono.exponents
    names = [s for s in (order or ()) if s in exps]
    names += sorted(s for s in exps if s not in names)
    return [(s, exps[s]) for s in names]


def format_monomial(mono: Complex, order: Sequence[str] | None = None) -> str:
    if mono.is_empty():
        return "1"
    return "".join(f"x_{s}" + ("" if e == 1 else str(e).translate(_SUP)) for s, e in _ordered(mono, order))


@dataclass(frozen=True)
class SteadyStateSystem:
    """One rate polynomial per species, in the network's species order."""

    network: Network
    polynomials: tuple[tuple[str, RatePolynomial], ...]

    @property
    def context(self) -> RingContext:
        return RingContext.of(self.network)

    def __getitem__(self, species: str) -> RatePolynomial:
        for s, p in self.polynomials:
            if s == species:
                return p
        raise KeyError(species)

    def __iter__(self):
        return iter(self.polynomials)

    def generators(self) -> list[RatePolynomial]:
        return [p for _, p in self.polynomials]

    def format(self, style: str = "unicode") -> str:
        lines = []
        for s, p in self.polynomials:
            body = p.format(self.network.rates, self.network.species, style)
            lhs = f"ẋ_{s}" if style == "unicode" else f"d{s}/dt"
            lines.append(f"{lhs} = {body}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.format()


def steady_state_system(n: Network) -> SteadyStateSystem:
    """Species derivatives under mass action, kept symbolic in the rates."""
    polys = []
    for s in n.species:
        terms = []
        for r in n.reactions:
            gamma = r.product[s] - r.reactant[s]
            if gamma:
                terms.append(((r.rate, r.reactant), gamma))
        polys.append((s, RatePolynomial(terms)))
    return SteadyStateSystem(n, tuple(polys))


def reactant_support_generators(n: Network) -> list[Complex]:
    """Distinct reactant complexes, in reaction order."""
    return list(n.reactants)


def minimal_reactants(n: Network) -> list[Complex]:
    """Reactants not strictly divisible by another reactant, in reaction order."""
    reactants = n.reactants
    return [y for y in reactants if not any(z != y and z.divides(y) for z in reactants)]
