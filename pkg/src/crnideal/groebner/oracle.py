"""Randomized specialization oracle for steady-state ideals.

Rate constants are replaced by random positive rationals and the resulting
ideals in ``Q[x]`` are compared through reduced Gröbner bases. Each trial
uses an independent generator seeded from ``(seed, trial)``, so verdicts
are reproducible. Answers are high-confidence, not proofs: if the trials
disagree the oracle refuses to answer.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..massaction import RatePolynomial, reactant_support_generators, steady_state_system
from ..network import Complex, Network, RingContext
from .buchberger import normal_form, reduced_groebner_basis
from .poly import QPolynomial, order_key

__all__ = [
    "MAX_NUMERATOR",
    "SpecializationError",
    "UnluckySpecializationError",
    "TrialRecord",
    "Verdict",
    "random_assignment",
    "specialize",
    "specialized_generators",
    "network_basis",
    "monomial_polynomial",
    "ideal_equal",
    "contains_monomial",
    "is_monomial_ideal",
]

MAX_NUMERATOR = 997


class SpecializationError(ValueError):
    pass


class UnluckySpecializationError(RuntimeError):
    """Trials disagree; a rerun with more trials or another seed is needed."""

    def __init__(self, answers: Sequence[str], seed: int):
        self.answers = tuple(answers)
        self.seed = seed
        super().__init__(
            f"unlucky specialization: trials disagree ({', '.join(answers)}) with seed {seed}; "
            "rerun with more trials or a different seed"
        )


def random_assignment(rates: Sequence[str], seed: int, trial: int) -> dict[str, Fraction]:
    """Uniform draws from the rationals ``p/q`` with ``0 < p <= q <= 997``."""
    rng = random.Random(f"crnideal:{seed}:{trial}")
    out = {}
    for label in rates:
        q = rng.randint(1, MAX_NUMERATOR)
        out[label] = Fraction(rng.randint(1, q), q)
    return out


def specialize(
    p: RatePolynomial,
    assignment: Mapping[str, Fraction],
    species: Sequence[str],
    order: str = "degrevlex",
) -> QPolynomial:
    """Substitute rate values into ``p`` and collect terms over ``species``.

    Raises:
        SpecializationError: a rate label is missing or assigned zero, or a
            monomial mentions a species outside ``species``.
    """
    index = {s: k for k, s in enumerate(species)}
    terms = []
    for (rate, mono), c in p:
        if rate not in assignment:
            raise SpecializationError(f"no value for rate constant {rate!r}")
        value = Fraction(assignment[rate])
        if value == 0:
            raise SpecializationError(f"rate constant {rate!r} must be nonzero")
        exps = [0] * len(species)
        for s, e in mono:
            if s not in index:
                raise SpecializationError(f"species {s!r} is not a ring variable")
            exps[index[s]] = e
        terms.append((tuple(exps), c * value))
    return QPolynomial(terms, species, order)


def specialized_generators(
    n: Network, assignment: Mapping[str, Fraction], species: Sequence[str], order: str = "degrevlex"
) -> list[QPolynomial]:
    return [specialize(p, assignment, species, order) for p in steady_state_system(n).generators()]


def monomial_polynomial(y: Complex, species: Sequence[str], order: str) -> QPolynomial:
    index = {s: k for k, s in enumerate(species)}
    exps = [0] * len(species)
    for s, e in y:
        exps[index[s]] = e
    return QPolynomial.monomial(tuple(exps), species, order)


def network_basis(n: Network, assignment: Mapping[str, Fraction], species: Sequence[str] | None = None, order: str = "degrevlex") -> list[QPolynomial]:
    species = tuple(species or n.species)
    return reduced_groebner_basis(specialized_generators(n, assignment, species, order))


@dataclass
class TrialRecord:
    index: int
    assignment: dict[str, Fraction]
    answer: str
    generators: dict[str, list[QPolynomial]] = field(default_factory=dict)
    bases: dict[str, list[QPolynomial]] = field(default_factory=dict)
    witness: QPolynomial | None = None
    witness_normal_form: QPolynomial | None = None

    def to_dict(self) -> dict:
        out = {
            "trial": self.index,
            "answer": self.answer,
            "assignment": {k: str(v) for k, v in self.assignment.items()},
            "bases": {name: [g.format() for g in gb] for name, gb in self.bases.items()},
        }
        if self.witness is not None:
            out["witness"] = self.witness.format()
            out["witness_normal_form"] = self.witness_normal_form.format()
        return out


@dataclass
class Verdict:
    answer: str
    seed: int
    order: str
    variables: tuple[str, ...]
    records: list[TrialRecord]

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def assignments(self) -> list[dict[str, Fraction]]:
        return [r.assignment for r in self.records]

    @property
    def witness(self) -> QPolynomial | None:
        return next((r.witness for r in self.records if r.witness is not None), None)

    @property
    def witness_normal_form(self) -> QPolynomial | None:
        return next((r.witness_normal_form for r in self.records if r.witness is not None), None)

    def basis(self, name: str, trial: int = 0) -> list[QPolynomial]:
        return self.records[trial].bases[name]

    def __bool__(self) -> bool:
        return self.answer in ("EQUAL", "MEMBER", "MONOMIAL")

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "trials": self.trials,
            "seed": self.seed,
            "order": self.order,
            "variables": list(self.variables),
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _check_args(trials: int, order: str) -> None:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    order_key(order)


def _merge(records: list[TrialRecord], seed: int, order: str, variables) -> Verdict:
    answers = [r.answer for r in records]
    if len(set(answers)) > 1:
        raise UnluckySpecializationError(answers, seed)
    return Verdict(answers[0], seed, order, tuple(variables), records)


def _first_outside(gens: Sequence[QPolynomial], basis: Sequence[QPolynomial]):
    for g in gens:
        r = normal_form(g, basis)
        if not r.is_zero():
            return g, r
    return None


def ideal_equal(n1: Network, n2: Network, trials: int = 3, seed: int = 0, order: str = "degrevlex") -> Verdict:
    """EQUAL iff, in every trial, each generator of either ideal reduces to 0
    modulo the other's reduced basis (both embedded in the union ring)."""
    _check_args(trials, order)
    ctx = RingContext.of(n1, n2)
    records = []
    for t in range(trials):
        a = random_assignment(ctx.rates, seed, t)
        g1 = specialized_generators(n1, a, ctx.species, order)
        g2 = specialized_generators(n2, a, ctx.species, order)
        b1, b2 = reduced_groebner_basis(g1), reduced_groebner_basis(g2)
        rec = TrialRecord(t, a, "EQUAL", {"n1": g1, "n2": g2}, {"n1": b1, "n2": b2})
        hit = _first_outside(g1, b2) or _first_outside(g2, b1)
        if hit is not None:
            rec.answer = "NOT_EQUAL"
            rec.witness, rec.witness_normal_form = hit
        records.append(rec)
    return _merge(records, seed, order, ctx.species)


def contains_monomial(n: Network, m: Complex | Mapping[str, int], trials: int = 3, seed: int = 0, order: str = "degrevlex") -> Verdict:
    """MEMBER iff ``x^m`` has normal form 0 in every trial."""
    _check_args(trials, order)
    m = m if isinstance(m, Complex) else Complex(m)
    ctx = RingContext.of(n)
    species = ctx.species + tuple(s for s, _ in m if s not in ctx.species)
    records = []
    for t in range(trials):
        a = random_assignment(ctx.rates, seed, t)
        gens = specialized_generators(n, a, species, order)
        basis = reduced_groebner_basis(gens)
        mono = monomial_polynomial(m, species, order)
        r = normal_form(mono, basis)
        rec = TrialRecord(t, a, "MEMBER", {"n": gens}, {"n": basis})
        if not r.is_zero():
            rec.answer = "NOT_MEMBER"
            rec.witness, rec.witness_normal_form = mono, r
        records.append(rec)
    return _merge(records, seed, order, species)


def is_monomial_ideal(n: Network, trials: int = 3, seed: int = 0, order: str = "degrevlex") -> Verdict:
    """MONOMIAL iff every trial's reduced basis is made of monomials and
    coincides with the reduced basis of the reactant monomials."""
    _check_args(trials, order)
    ctx = RingContext.of(n)
    records = []
    monos = [monomial_polynomial(y, ctx.species, order) for y in reactant_support_generators(n)]
    reference = reduced_groebner_basis(monos)
    for t in range(trials):
        a = random_assignment(ctx.rates, seed, t)
        gens = specialized_generators(n, a, ctx.species, order)
        basis = reduced_groebner_basis(gens)
        rec = TrialRecord(t, a, "MONOMIAL", {"n": gens, "reactants": monos}, {"n": basis, "reactants": reference})
        if not (all(g.is_monomial() for g in basis) and basis == reference):
            rec.answer = "NOT_MONOMIAL"
            witness = next((g for g in basis if not g.is_monomial()), None)
            if witness is None:
                hit = _first_outside(reference, basis)
                witness = hit[0] if hit else basis[0]
            rec.witness, rec.witness_normal_form = witness, normal_form(witness, reference)
        records.append(rec)
    return _merge(records, seed, order, ctx.species)
