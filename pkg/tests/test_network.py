import pytest
from hypothesis import given, settings

from crnideal import Complex, Network, ParseError, Reaction, complex_divides, format_network, is_zero_one, parse_network, validate_network
from crnideal.network import network_from_json, network_to_json, parse_complex

from conftest import EX26_N1, FIG1, complexes, zero_one_networks


def test_parse_example_network():
    n = parse_network(EX26_N1)
    assert n.species == ("A", "B", "C", "D")
    assert [r.rate for r in n.reactions] == ["k1", "k2", "k3"]
    assert n.reaction(3).reactant == Complex.of("C")
    assert n.reaction(3).product == Complex.of("B")


def test_species_in_first_appearance_order():
    n = parse_network("B + A -> C, k1\nD -> A, k2\n")
    assert n.species == ("B", "A", "C", "D")


def test_species_names_that_are_substrings():
    n = parse_network("AB -> A, k1\n")
    assert n.species == ("AB", "A")


def test_coefficients_and_empty_complex():
    n = parse_network("2A + B -> 0, kd\n")
    r = n.reaction(1)
    assert r.reactant.exponents == {"A": 2, "B": 1}
    assert r.product.is_empty()
    assert n.complexes == (r.reactant, Complex())


def test_reversible_expansion():
    n = parse_network("A <-> B, kf\nB <-> C\n")
    assert [(str(r.reactant), str(r.product), r.rate) for r in n.reactions] == [
        ("A", "B", "kf_f"),
        ("B", "A", "kf_b"),
        ("B", "C", "k3_f"),
        ("C", "B", "k3_b"),
    ]


def test_default_labels_and_comments():
    n = parse_network("# header\nA -> B\n\nB -> 0   # decay\n")
    assert n.rates == ("k1", "k2")


@pytest.mark.parametrize(
    "text, fragment, line",
    [
        ("A -> A, k1", "self-loop", 1),
        ("0 -> A, k1", "production", 1),
        ("A -> B, k1\nB -> C, k1", "duplicate rate label", 2),
        ("A -> B, k1\nA -> B, k2", "duplicate reaction", 2),
        ("A -> , k1", "expected species name", 1),
        ("A => B", "unexpected", 1),
        ("A -> B k1", "unexpected", 1),
        ("A <-> 0, k1", "production", 1),
        ("0A -> B", "zero coefficient", 1),
    ],
)
def test_parse_errors(text, fragment, line):
    with pytest.raises(ParseError) as info:
        parse_network(text)
    assert fragment in str(info.value)
    assert info.value.line == line
    assert info.value.column is not None or fragment == "duplicate reaction"


def test_parse_error_column_points_at_offender():
    with pytest.raises(ParseError) as info:
        parse_network("A + B -> C, k1\nA + -> B")
    assert (info.value.line, info.value.column) == (2, 5)


def test_validate_parsed_network_is_clean():
    assert validate_network(parse_network(EX26_N1)) == []


def test_validate_reports_injected_orphan_complex():
    n = parse_network(EX26_N1)
    bad = Network(n.species, n.reactions, n.complexes + (Complex.of("A", "D"),))
    assert [f.kind for f in validate_network(bad)] == ["orphan-complex"]


def test_validate_reports_injected_self_loop():
    n = parse_network(EX26_N1)
    loop = Reaction(4, Complex.of("A"), Complex.of("A"), "k4")
    bad = Network(n.species, n.reactions + (loop,), n.complexes)
    assert [f.kind for f in validate_network(bad)] == ["self-loop"]


def test_validate_reports_production_and_uncovered_species():
    prod = Reaction(1, Complex(), Complex.of("A"), "k1")
    bad = Network(("A", "Z"), (prod,), (Complex(), Complex.of("A")))
    kinds = sorted(f.kind for f in validate_network(bad))
    assert kinds == ["production", "uncovered-species"]


def test_is_zero_one():
    assert not is_zero_one(parse_network(FIG1))
    assert is_zero_one(parse_network(EX26_N1))
    assert is_zero_one(parse_network("A -> 0, k1"))


def test_complex_divides_examples():
    assert complex_divides(Complex.of("A"), Complex.of("A", "B"))
    assert not complex_divides(Complex({"A": 2}), Complex.of("A"))
    y = Complex({"A": 1, "C": 2})
    assert complex_divides(y, y)


def test_complex_arithmetic_and_format():
    y = parse_complex("2A + B")
    assert y + "C" == parse_complex("2A + B + C")
    assert y - Complex.of("A") == parse_complex("A + B")
    assert y.format(["B", "A"]) == "B + 2A"
    assert Complex().format() == "0"
    with pytest.raises(ValueError):
        Complex.of("A") - Complex.of("B")


@given(complexes(), complexes(), complexes())
def test_divides_is_a_partial_order(a, b, c):
    assert a.divides(a)
    if a.divides(b) and b.divides(a):
        assert a == b
    if a.divides(b) and b.divides(c):
        assert a.divides(c)


@settings(max_examples=200)
@given(zero_one_networks())
def test_text_round_trip(n):
    back = parse_network(format_network(n))
    assert back.species == n.species
    assert back.reactions == n.reactions
    assert back.complexes == n.complexes
    assert validate_network(back) == []


@settings(max_examples=100)
@given(zero_one_networks())
def test_json_round_trip(n):
    back = network_from_json(network_to_json(n))
    assert back == n


def test_json_rejects_malformed():
    with pytest.raises(ParseError):
        network_from_json('{"reactions": [{"reactant": {}}]}')
    with pytest.raises(ParseError) as info:
        network_from_json("{bad")
    assert info.value.line == 1
