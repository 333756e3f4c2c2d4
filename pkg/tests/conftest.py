import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from crnideal import Complex, Network, parse_network

NETWORK_DIR = Path(__file__).resolve().parent.parent / "networks"

FIG1 = "2A -> A + B, k1\n2A -> 2B, k2\nA + B -> 2B, k3\n"
FIG4 = "A + B -> D, k1\nA + C -> D, k2\nB + C -> D, k3\n"
FIG6 = "A -> B, k1\nB -> A, k2\nA -> C, k3\n"
EX26_N1 = "A -> B, k1\nC -> D, k2\nC -> B, k3\n"
EX26_N2 = "A -> B + C, k1\nC -> B + D, k2\nA -> C, k3\n"
EX26_N3 = "A -> B + E, k1\nC -> D + F, k2\nA + E -> F, k3\n"
EX48_N1 = "A -> 0, k1\nB -> 0, k2\n"
EX48_N2 = "A -> B, k3\nB -> A, k4\nA -> 0, k5\n"
CONVERSE = "A -> B, k1\nB -> A, k2\nB -> C, k3\n"
CYCLE3 = "A -> B, k1\nB -> C, k2\nC -> A, k3\n"


@pytest.fixture
def fig1():
    return parse_network(FIG1)


@pytest.fixture
def fig4():
    return parse_network(FIG4)


@pytest.fixture
def fig6():
    return parse_network(FIG6)


@pytest.fixture
def converse():
    return parse_network(CONVERSE)


SPECIES_POOL = "ABCDEF"


def random_zero_one_network(rng: random.Random, max_species: int = 5, max_reactions: int = 6) -> Network:
    """A valid 0,1-network with distinct reactions and no production reactions."""
    ns = rng.randint(1, max_species)
    pool = SPECIES_POOL[:ns]
    target = rng.randint(1, max_reactions)
    seen = set()
    rxns = []
    for _ in range(target * 10):
        if len(rxns) == target:
            break
        reactant = frozenset(s for s in pool if rng.random() < 0.4) or frozenset(rng.choice(pool))
        product = frozenset(s for s in pool if rng.random() < 0.35)
        if reactant == product or (reactant, product) in seen:
            continue
        seen.add((reactant, product))
        rxns.append((Complex.of(*sorted(reactant)), Complex.of(*sorted(product)), f"k{len(rxns) + 1}"))
    return Network.from_reactions(rxns)


def random_networks(count: int, seed: int, **kwargs) -> list[Network]:
    rng = random.Random(seed)
    return [random_zero_one_network(rng, **kwargs) for _ in range(count)]


@st.composite
def zero_one_networks(draw, max_species: int = 5, max_reactions: int = 6):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_zero_one_network(random.Random(seed), max_species, max_reactions)


@st.composite
def complexes(draw, species: str = "ABCD", max_exp: int = 3):
    exps = draw(st.lists(st.integers(0, max_exp), min_size=len(species), max_size=len(species)))
    return Complex({s: e for s, e in zip(species, exps) if e})
