import json

import pytest
from hypothesis import given, settings

from crnideal import (
    Complex,
    TransformError,
    TransformRequest,
    add_degradation,
    add_species_to_product,
    add_species_to_reactant,
    apply_script,
    build_hypergraph,
    format_network,
    ideal_equal,
    is_zero_one,
    parse_network,
    validate_network,
    verify_certificate,
)
from crnideal.transforms import NoQualifyingCertificateError, NotAlmostBalancedError, ScriptError

from conftest import FIG6, zero_one_networks

FIG7 = "A -> B, k1\nB -> A, k2\nA -> B + C, k3_p\n"
FIG8 = "A + B -> B, k1_p\nB -> A, k2\nA -> B + C, k3_p\n"
FIG9 = FIG8 + "A -> 0, k4\n"
SCRIPT = [TransformRequest("product", 3, "B"), TransformRequest("reactant", 1, "B", 3), TransformRequest("degradation", 3)]


def test_add_product_species_transcript(fig6):
    res = add_species_to_product(fig6, 3, "B")
    assert format_network(res.network) == FIG7
    assert res.new_rate == "k3_p"
    assert json.loads(res.to_json()) == {
        "op": "add_product_species",
        "reaction": 3,
        "species": "B",
        "certificate": {"vertex": "u3", "red": {"E_r3": 1}, "blue": {"E_C": 1}, "k": 1, "monomial": "x_A", "rate": "k3"},
        "new_rate": "k3_p",
    }


def test_add_product_species_errors(fig6):
    with pytest.raises(NotAlmostBalancedError) as info:
        add_species_to_product(fig6, 1, "C")
    assert info.value.obstructions[0].kind == "ReversiblePair"
    with pytest.raises(TransformError, match="already in the product"):
        add_species_to_product(fig6, 3, "C")
    with pytest.raises(TransformError, match="0,1"):
        add_species_to_product(parse_network("2A -> B, k1"), 1, "C")
    with pytest.raises(TransformError, match="no reaction"):
        add_species_to_product(fig6, 7, "C")


def test_add_product_species_new_species(fig6):
    res = add_species_to_product(fig6, 3, "E")
    assert res.network.species == ("A", "B", "C", "E")
    assert ideal_equal(fig6, res.network).answer == "EQUAL"


def test_no_qualifying_certificate_is_distinct():
    n = parse_network("A -> B, k3\nB -> A, k4\nA -> 0, k5\n")
    with pytest.raises(NoQualifyingCertificateError) as info:
        add_species_to_product(n, 3, "A")
    assert info.value.forbidden == "E_A"


def test_add_reactant_species_example():
    n1 = parse_network(FIG7)
    res = add_species_to_reactant(n1, 1, "B", 3)
    assert format_network(res.network) == FIG8
    assert res.aux == 3
    assert res.to_dict()["aux_reaction"] == 3


def test_add_reactant_species_errors():
    n1 = parse_network(FIG7)
    with pytest.raises(TransformError, match="i == j"):
        add_species_to_reactant(n1, 1, "B", 1)
    with pytest.raises(TransformError, match="does not divide"):
        add_species_to_reactant(n1, 1, "B", 2)
    with pytest.raises(TransformError, match="already in the reactant"):
        add_species_to_reactant(n1, 1, "A", 3)


def test_add_degradation_example():
    n2 = parse_network(FIG8)
    res = add_degradation(n2, 3)
    assert format_network(res.network) == FIG9
    assert res.certificate.red_edges == {"E_C": 1}
    assert res.certificate.blue_edges == {}
    assert res.new_rate == "k4"


def test_add_degradation_errors():
    with pytest.raises(NotAlmostBalancedError):
        add_degradation(parse_network("A -> B, k1\nB -> A, k2"), 1)
    with pytest.raises(TransformError, match="already"):
        add_degradation(parse_network("A -> 0, k1\nB -> 0, k2"), 1)


def test_fresh_labels_avoid_clashes():
    n = parse_network("A -> C, k1\nB -> 0, k3\n")
    res = add_degradation(n, 1)
    assert res.new_rate == "k3_p"
    assert res.network.reaction(3).rate == "k3_p"
    n2 = parse_network("A -> 0, k1\nA + B -> C, k2\nB -> 0, k2_p\n")
    res = add_species_to_product(n2, 2, "D")
    assert res.new_rate == "k2_p_p"


def test_script_reproduces_chain(fig6):
    out, results = apply_script(fig6, SCRIPT)
    assert format_network(out) == FIG9
    assert [r.op for r in results] == ["add_product_species", "add_reactant_species", "add_degradation"]


def test_empty_script_is_identity(fig6):
    out, results = apply_script(fig6, [])
    assert out is fig6 and results == []


def test_script_failure_names_step(fig6):
    before = format_network(fig6)
    with pytest.raises(ScriptError) as info:
        apply_script(fig6, [SCRIPT[0], TransformRequest("reactant", 1, "B", 2), SCRIPT[2]])
    assert info.value.step == 2
    assert "step 2" in str(info.value)
    assert format_network(fig6) == before


def test_request_parsing():
    assert TransformRequest.parse("product(3, B)") == SCRIPT[0]
    assert TransformRequest.parse("reactant(1,B,3)") == SCRIPT[1]
    assert TransformRequest.parse("degradation(3)") == SCRIPT[2]
    for bad in ("product(3)", "swap(1,2)", "degradation(x)", "product 3 B"):
        with pytest.raises(TransformError):
            TransformRequest.parse(bad)


def _all_requests(n):
    for r in n.reactions:
        yield TransformRequest("degradation", r.index)
        for s in n.species:
            yield TransformRequest("product", r.index, s)
            for q in n.reactions:
                yield TransformRequest("reactant", r.index, s, q.index)


def _check_result(n, res):
    out = res.network
    assert validate_network(out) == []
    assert is_zero_one(out)
    verify_certificate(n, res.certificate.vertex, res.certificate)
    forbidden = {"add_product_species": f"E_{res.species}", "add_reactant_species": f"E_{res.species}",
                 "add_degradation": f"E_r{res.reaction}"}[res.op]
    assert not res.certificate.uses(forbidden)
    # the same colouring still certifies the vertex after the rewrite
    verify_certificate(out, res.certificate.vertex, res.certificate)
    assert ideal_equal(n, out, trials=2).answer == "EQUAL"


@settings(max_examples=30, deadline=None)
@given(zero_one_networks(max_species=4, max_reactions=4))
def test_successful_transforms_preserve_the_ideal(n):
    for req in _all_requests(n):
        try:
            res = req.apply(n)
        except TransformError:
            continue
        _check_result(n, res)
