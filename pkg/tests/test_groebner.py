from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from crnideal import Complex, parse_network, steady_state_system
from crnideal.groebner import (
    QPolynomial,
    SpecializationError,
    UnluckySpecializationError,
    contains_monomial,
    groebner_basis,
    ideal_equal,
    is_groebner_basis,
    is_monomial_ideal,
    normal_form,
    random_assignment,
    reduced_groebner_basis,
    specialize,
)
from crnideal.groebner import oracle

from conftest import CONVERSE, EX26_N1, EX26_N2, EX48_N1, EX48_N2, FIG1, FIG6

V = ("A", "B", "C")


def poly(terms, variables=V, order="degrevlex"):
    return QPolynomial(terms, variables, order)


def x(name, variables=V, order="degrevlex", power=1):
    return QPolynomial.monomial(tuple(power if v == name else 0 for v in variables), variables, order)


def test_specialize_examples(fig6, fig1):
    sys6 = steady_state_system(fig6)
    p = specialize(sys6["C"], {"k1": 1, "k2": 1, "k3": Fraction(1, 2)}, fig6.species)
    assert p == Fraction(1, 2) * x("A", fig6.species)
    sys1 = steady_state_system(fig1)
    p = specialize(sys1["A"], {"k1": 1, "k2": 1, "k3": 1}, fig1.species)
    assert p.format() == "-3*x_A^2 - x_A*x_B"
    assert specialize(steady_state_system(parse_network("A + B -> B + C"))["B"], {}, ("A", "B", "C")).is_zero()


def test_specialize_errors(fig6):
    p = steady_state_system(fig6)["A"]
    with pytest.raises(SpecializationError, match="no value"):
        specialize(p, {"k1": 1, "k2": 1}, fig6.species)
    with pytest.raises(SpecializationError, match="nonzero"):
        specialize(p, {"k1": 1, "k2": 0, "k3": 1}, fig6.species)


def test_reduced_basis_examples():
    vs = ("A", "B", "C", "D")
    gens = [-x("A", vs), x("A", vs) + x("C", vs), -2 * x("C", vs), x("C", vs)]
    assert reduced_groebner_basis(gens) == [x("A", vs), x("C", vs)]
    assert reduced_groebner_basis([x("A", power=2), x("A")]) == [x("A")]
    assert reduced_groebner_basis([]) == []


def test_mixed_rings_rejected():
    with pytest.raises(ValueError):
        reduced_groebner_basis([x("A"), x("A", order="lex")])
    with pytest.raises(ValueError):
        reduced_groebner_basis([x("A"), x("A", ("A", "B"))])


def test_normal_form_examples():
    gb = [x("A"), x("C")]
    assert normal_form(x("A"), gb).is_zero()
    assert normal_form(x("B"), gb) == x("B")
    assert normal_form(x("A") * x("B") + x("B"), gb) == x("B")


def test_unknown_order():
    with pytest.raises(ValueError):
        poly({(1, 0, 0): 1}, order="grlex")


def test_degrevlex_and_lex_leading_terms():
    f = poly({(1, 0, 1): 1, (0, 2, 0): 1})
    assert f.LM == (0, 2, 0)
    assert poly(f.terms, order="lex").LM == (1, 0, 1)


@st.composite
def polynomial_systems(draw):
    order = draw(st.sampled_from(["degrevlex", "lex"]))
    nvars = draw(st.integers(1, 3))
    names = V[:nvars]
    count = draw(st.integers(1, 3))
    gens = []
    for _ in range(count):
        terms = draw(st.lists(
            st.tuples(st.tuples(*[st.integers(0, 2)] * nvars), st.integers(-3, 3)),
            min_size=1, max_size=3,
        ))
        gens.append(QPolynomial(terms, names, order))
    return names, order, gens


def _sympy_basis(names, order, gens):
    syms = sp.symbols(names)
    exprs = [sum(c * sp.Mul(*[s**e for s, e in zip(syms, m)]) for m, c in g.terms) for g in gens]
    exprs = [e for e in exprs if e != 0]
    if not exprs:
        return []
    gb = sp.groebner(exprs, *syms, order="grevlex" if order == "degrevlex" else "lex")
    out = []
    for p in gb.exprs:
        pp = sp.Poly(p, *syms)
        out.append(QPolynomial([(m, Fraction(int(c.p), int(c.q))) for m, c in pp.terms()], names, order).monic())
    return sorted(out, key=lambda g: g.format())


@settings(max_examples=150, deadline=None)
@given(polynomial_systems())
def test_reduced_basis_matches_sympy(system):
    names, order, gens = system
    ours = reduced_groebner_basis(gens)
    assert sorted(ours, key=lambda g: g.format()) == _sympy_basis(names, order, gens)
    assert is_groebner_basis(ours)
    assert all(normal_form(g, ours).is_zero() for g in gens)
    assert all(g.LC == 1 for g in ours)


@settings(max_examples=100, deadline=None)
@given(polynomial_systems(), st.data())
def test_normal_form_idempotent(system, data):
    names, order, gens = system
    gb = groebner_basis(gens)
    f = gens[data.draw(st.integers(0, len(gens) - 1))] * gens[0] + QPolynomial.monomial((1,) * len(names), names, order)
    once = normal_form(f, gb)
    assert normal_form(once, gb) == once


def test_random_assignment_properties():
    a = random_assignment(["k1", "k2", "k3"], seed=4, trial=1)
    assert a == random_assignment(["k1", "k2", "k3"], seed=4, trial=1)
    assert a != random_assignment(["k1", "k2", "k3"], seed=4, trial=2)
    for _ in range(50):
        for v in random_assignment([f"k{i}" for i in range(20)], seed=_, trial=0).values():
            assert 0 < v <= 1 and v.denominator <= 997 and v.numerator <= 997


def test_ideal_equal_examples(fig1):
    n1, n2 = parse_network(EX26_N1), parse_network(EX26_N2)
    assert ideal_equal(n1, n2).answer == "EQUAL"
    assert ideal_equal(parse_network(EX48_N1), parse_network(EX48_N2)).answer == "EQUAL"
    v = ideal_equal(fig1, n1)
    assert v.answer == "NOT_EQUAL"
    assert not v.witness_normal_form.is_zero()
    assert v.to_dict()["records"][0]["witness"]


def test_contains_monomial_examples(fig6, fig1):
    assert contains_monomial(fig6, Complex.of("B")).answer == "MEMBER"
    assert contains_monomial(fig1, Complex({"A": 2})).answer == "NOT_MEMBER"
    assert contains_monomial(parse_network(EX48_N2), Complex.of("A")).answer == "MEMBER"
    assert contains_monomial(fig6, Complex.of("Z")).answer == "NOT_MEMBER"


def test_is_monomial_ideal_examples(fig1):
    v = is_monomial_ideal(parse_network(EX26_N1))
    assert v.answer == "MONOMIAL"
    assert [g.format() for g in v.basis("n")] == ["x_A", "x_C"]
    assert is_monomial_ideal(fig1).answer == "NOT_MONOMIAL"
    v = is_monomial_ideal(parse_network(CONVERSE))
    assert v.answer == "MONOMIAL"
    assert [g.format() for g in v.basis("n")] == ["x_A", "x_B"]


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_verdicts_stable_across_seeds(seed, fig6):
    assert ideal_equal(parse_network(EX26_N1), parse_network(EX26_N2), seed=seed).answer == "EQUAL"
    assert contains_monomial(fig6, Complex.of("A"), seed=seed).answer == "MEMBER"


def test_verdict_is_deterministic():
    n1, n2 = parse_network(EX26_N1), parse_network(EX26_N2)
    assert ideal_equal(n1, n2, seed=9).to_json() == ideal_equal(n1, n2, seed=9).to_json()


def test_trial_disagreement_is_an_error(monkeypatch):
    # the two ideals coincide exactly when k2 == k3
    n1 = parse_network("A -> B, k1\nB -> A, k2")
    n2 = parse_network("A -> B, k1\nB -> A, k3")
    values = [
        {"k1": Fraction(1), "k2": Fraction(1, 2), "k3": Fraction(1, 2)},
        {"k1": Fraction(1), "k2": Fraction(1, 2), "k3": Fraction(1, 3)},
    ]
    monkeypatch.setattr(oracle, "random_assignment", lambda rates, seed, t: values[t])
    with pytest.raises(UnluckySpecializationError, match="rerun") as info:
        ideal_equal(n1, n2, trials=2)
    assert info.value.answers == ("EQUAL", "NOT_EQUAL")


def test_trials_must_be_positive(fig6):
    with pytest.raises(ValueError):
        ideal_equal(fig6, fig6, trials=0)
