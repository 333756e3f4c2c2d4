"""Almost balanced vertices: search, verification and structural obstructions.

A vertex ``w`` is almost balanced when some 2-coloured multiset of edges
covers ``w`` ``k > 0`` more times in red than in blue and covers every other
vertex equally often in both colours. Writing the multiset as a signed
integer vector ``z`` (red positive, blue negative) this reads
``A z = k e_w`` for the incidence matrix ``A``. Multiplicities are
unbounded, so ``w`` is almost balanced iff ``e_w`` lies in the rational
column span of ``A``; a rational solution scales to an integer one.

For a 0,1-network such a certificate at ``u_j`` or ``v_j`` is an explicit
combination of species derivatives equal to ``k kappa_j x^{y_j}``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping

import numpy as np

from .hypergraph import NetworkHypergraph, build_hypergraph, incidence_matrix
from .linalg import solve
from .massaction import RatePolynomial, minimal_reactants, steady_state_system
from .network import Complex, Network, is_zero_one

__all__ = [
    "BalanceCertificate",
    "CertificateError",
    "SearchSpaceError",
    "Obstruction",
    "find_certificate",
    "verify_certificate",
    "brute_force_certificate",
    "brute_force_certificates",
    "structural_obstructions",
    "monomial_ideal_certificate",
    "certificate_to_dict",
    "certificate_from_dict",
    "vertex_degrees",
    "is_weakly_reversible",
]

# Budget for the minimum-support search in find_certificate; past it the
# inclusion-minimal support found greedily is used instead.
MAX_SUPPORT_CANDIDATES = 20_000


@dataclass(frozen=True)
class BalanceCertificate:
    """Red/blue edge multiplicities making ``vertex`` almost balanced with excess ``k``."""

    vertex: str
    red: tuple[tuple[str, int], ...]
    blue: tuple[tuple[str, int], ...]
    k: int

    @classmethod
    def make(cls, vertex: str, red: Mapping[str, int], blue: Mapping[str, int], k: int) -> BalanceCertificate:
        return cls(vertex, tuple(red.items()), tuple(blue.items()), k)

    @property
    def red_edges(self) -> dict[str, int]:
        return dict(self.red)

    @property
    def blue_edges(self) -> dict[str, int]:
        return dict(self.blue)

    @property
    def edges(self) -> set[str]:
        return {e for e, _ in self.red} | {e for e, _ in self.blue}

    def uses(self, edge_id: str) -> bool:
        return edge_id in self.edges


class CertificateError(ValueError):
    """A certificate fails verification."""


class SearchSpaceError(RuntimeError):
    """Brute-force enumeration would exceed its configured cap."""


def vertex_degrees(h: NetworkHypergraph, cert: BalanceCertificate) -> dict[str, int]:
    """Red degree minus blue degree at every vertex."""
    edges = h.edges
    diff = dict.fromkeys(h.vertices, 0)
    for sign, part in ((1, cert.red), (-1, cert.blue)):
        for e, mult in part:
            for w in edges[e]:
                diff[w] += sign * mult
    return diff


# -- search ------------------------------------------------------------------


def _check_vertex(h: NetworkHypergraph, v: str) -> None:
    if v not in h.vertices:
        raise KeyError(f"unknown vertex {v!r}")


def _restrict(entries, cols):
    return [[row[j] for j in cols] for row in entries]


def _greedy_prune(entries, target, cols: list[int]) -> list[int]:
    keep = list(cols)
    for j in reversed(cols):
        trial = [c for c in keep if c != j]
        if trial and solve(_restrict(entries, trial), target) is not None:
            keep = trial
    return keep


def _min_support(entries, target, ncols: int) -> tuple[list[int], list[Fraction]] | None:
    z = solve(entries, target)
    if z is None:
        return None
    best = _greedy_prune(entries, target, [j for j in range(ncols) if z[j] != 0])
    budget = MAX_SUPPORT_CANDIDATES
    for size in range(1, len(best)):
        found = None
        for cols in combinations(range(ncols), size):
            budget -= 1
            if budget < 0:
                break
            if solve(_restrict(entries, cols), target) is not None:
                found = list(cols)
                break
        if found is not None or budget < 0:
            if found is not None:
                best = found
            break
    sol = solve(_restrict(entries, best), target)
    return best, sol


def find_certificate(h: NetworkHypergraph, v: str, forbidden: Iterable[str] = ()) -> BalanceCertificate | None:
    """Certificate that ``v`` is almost balanced without ``forbidden`` edges, or None.

    Feasibility is decided exactly. Among feasible colourings the one with
    fewest distinct edges is returned (ties broken by edge order), scaled to
    coprime integer multiplicities.
    """
    _check_vertex(h, v)
    mat = incidence_matrix(h, forbidden)
    if not mat.columns:
        return None
    target = [int(w == v) for w in mat.rows]
    found = _min_support(mat.entries, target, len(mat.columns))
    if found is None:
        return None
    cols, sol = found
    den = reduce(lcm, (x.denominator for x in sol), 1)
    ints = [int(x * den) for x in sol]
    g = reduce(gcd, ints, den)
    red = {mat.columns[j]: x // g for j, x in zip(cols, ints) if x > 0}
    blue = {mat.columns[j]: -x // g for j, x in zip(cols, ints) if x < 0}
    order = {e: i for i, e in enumerate(mat.columns)}
    return BalanceCertificate(
        v,
        tuple(sorted(red.items(), key=lambda t: order[t[0]])),
        tuple(sorted(blue.items(), key=lambda t: order[t[0]])),
        den // g,
    )


@lru_cache(maxsize=32)
def _graded_vectors(m: int, bound: int) -> np.ndarray:
    """All of ``[-bound, bound]^m``: by support size, then support, then values.

    Values run ``1, -1, 2, -2, ...`` so the first hit on a support is primitive.
    """
    values = np.array([s * a for a in range(1, bound + 1) for s in (1, -1)], dtype=np.int16)
    blocks = [np.zeros((1, m), dtype=np.int16)]
    for size in range(1, m + 1):
        grid = np.array(np.meshgrid(*([values] * size), indexing="ij")).reshape(size, -1).T
        for cols in combinations(range(m), size):
            block = np.zeros((len(grid), m), dtype=np.int16)
            block[:, cols] = grid
            blocks.append(block)
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def brute_force_certificate(
    h: NetworkHypergraph,
    v: str,
    bound: int = 1,
    forbidden: Iterable[str] = (),
    cap: int = 5_000_000,
) -> BalanceCertificate | None:
    """Exhaustive search over multiplicities in ``[-bound, bound]`` per edge.

    Independent of the linear-algebra route in :func:`find_certificate`;
    intended for hypergraphs with at most about eight edges. Candidates are
    scanned by support size, then support, then values, and the first hit
    is returned.

    Raises:
        SearchSpaceError: if ``(2*bound + 1) ** edges`` exceeds ``cap``.
    """
    _check_vertex(h, v)
    return brute_force_certificates(h, bound, forbidden, cap, vertices=[v])[v]


def brute_force_certificates(
    h: NetworkHypergraph,
    bound: int = 1,
    forbidden: Iterable[str] = (),
    cap: int = 5_000_000,
    vertices: Iterable[str] | None = None,
) -> dict[str, BalanceCertificate | None]:
    """:func:`brute_force_certificate` for several vertices in one scan."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    targets = list(h.vertices if vertices is None else vertices)
    for v in targets:
        _check_vertex(h, v)
    mat = incidence_matrix(h, forbidden)
    m = len(mat.columns)
    if (2 * bound + 1) ** m > cap:
        raise SearchSpaceError(f"{(2 * bound + 1) ** m} candidates exceed the cap of {cap}")
    found: dict[str, BalanceCertificate | None] = {v: None for v in targets}
    if m == 0:
        return found
    a = mat.to_numpy().astype(np.int32)
    rows = {v: mat.rows.index(v) for v in targets}
    pending = set(targets)
    zs = _graded_vectors(m, bound)
    chunk = 1 << 15
    for start in range(0, len(zs), chunk):
        z = zs[start : start + chunk].astype(np.int32)
        degrees = z @ a.T
        single = np.count_nonzero(degrees, axis=1) == 1
        for v in sorted(pending, key=targets.index):
            r = rows[v]
            hits = np.flatnonzero(single & (degrees[:, r] > 0))
            if hits.size:
                best = z[hits[0]]
                red = tuple((mat.columns[j], int(x)) for j, x in enumerate(best) if x > 0)
                blue = tuple((mat.columns[j], int(-x)) for j, x in enumerate(best) if x < 0)
                found[v] = BalanceCertificate(v, red, blue, int(degrees[hits[0], r]))
                pending.discard(v)
        if not pending:
            break
    return found


# -- verification --------------------------------------------------------------


def verify_certificate(n: Network, v: str, cert: BalanceCertificate) -> tuple[int, RatePolynomial]:
    """Check ``cert`` combinatorially and algebraically.

    For a reactant vertex ``u_j`` the blue minus red sum of species
    derivatives (weighted by multiplicity) must equal ``k kappa_j x^{y_j}``;
    for a product vertex ``v_j`` it is red minus blue. Reaction edges only
    take part in the degree count.

    Returns:
        ``(k, kappa_j x^{y_j})``.

    Raises:
        CertificateError: on any failed condition.
    """
    if not is_zero_one(n):
        raise CertificateError("certificates are only meaningful for 0,1-networks")
    h = build_hypergraph(n)
    if v not in h.vertices:
        raise CertificateError(f"unknown vertex {v!r}")
    if cert.vertex != v:
        raise CertificateError(f"certificate is for {cert.vertex}, not {v}")
    edges = h.edges
    for e, mult in cert.red + cert.blue:
        if e not in edges:
            raise CertificateError(f"unknown edge {e!r}")
        if not isinstance(mult, int) or mult <= 0:
            raise CertificateError(f"multiplicity of {e} must be a positive integer")
    if len({e for e, _ in cert.red}) != len(cert.red) or len({e for e, _ in cert.blue}) != len(cert.blue):
        raise CertificateError("an edge is listed twice within one colour")
    both = {e for e, _ in cert.red} & {e for e, _ in cert.blue}
    if both:
        raise CertificateError(f"edges coloured both red and blue: {', '.join(sorted(both))}")

    diff = vertex_degrees(h, cert)
    unbalanced = [w for w in h.vertices if w != v and diff[w] != 0]
    if unbalanced:
        raise CertificateError(f"vertices not balanced: {', '.join(unbalanced)}")
    if diff[v] <= 0:
        raise CertificateError(f"excess at {v} is {diff[v]}, not positive")
    if diff[v] != cert.k:
        raise CertificateError(f"excess at {v} is {diff[v]} but certificate claims k={cert.k}")

    j, side = h.vertex(v)
    system = steady_state_system(n)
    total = RatePolynomial()
    sign = 1 if side == "v" else -1
    for part_sign, part in ((sign, cert.red), (-sign, cert.blue)):
        for e, mult in part:
            s = h.species_of_edge(e)
            if s is not None:
                total = total + (part_sign * mult) * system[s]
    r = n.reaction(j)
    term = RatePolynomial.term(r.rate, r.reactant)
    if total != cert.k * term:
        raise CertificateError(f"combination of derivatives is {total.format(n.rates, n.species, 'ascii')}, expected {cert.k}*{r.rate}*x^{r.reactant}")
    return cert.k, term


# -- obstructions -------------------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    """A structural reason a vertex cannot be almost balanced.

    ``kind`` is ``"ReversiblePair"`` (witness: the two reaction indices),
    ``"ReactionCycle"`` (witness: the complexes of a cycle, starting at the
    vertex's reactant) or ``"WeaklyReversible"`` (witness: all reaction
    indices).
    """

    kind: str
    witness: tuple

    def describe(self, species_order=None) -> str:
        if self.kind == "ReactionCycle":
            cyc = [c.format(species_order) for c in self.witness]
            return "reaction cycle " + " -> ".join(cyc + cyc[:1])
        if self.kind == "ReversiblePair":
            return f"reversible pair r{self.witness[0]}, r{self.witness[1]}"
        return "network is weakly reversible"


_VERTEX = re.compile(r"([uv])(\d+)")


def _reaction_of_vertex(n: Network, v: str):
    m = _VERTEX.fullmatch(v)
    if m is None:
        raise KeyError(f"malformed vertex id {v!r}")
    return n.reaction(int(m.group(2)))


def _successors(n: Network) -> dict[Complex, list[Complex]]:
    succ: dict[Complex, list[Complex]] = {}
    for r in n.reactions:
        succ.setdefault(r.reactant, []).append(r.product)
        succ.setdefault(r.product, [])
    return succ


def _shortest_path(succ, start: Complex, goal: Complex, banned_edge: tuple[Complex, Complex] | None = None):
    prev = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if c == goal:
            path = []
            while c is not None:
                path.append(c)
                c = prev[c]
            return path[::-1]
        for d in succ.get(c, ()):
            if (c, d) == banned_edge or d in prev:
                continue
            prev[d] = c
            queue.append(d)
    return None


def is_weakly_reversible(n: Network) -> bool:
    succ = _successors(n)
    return all(_shortest_path(succ, r.product, r.reactant) is not None for r in n.reactions)


def structural_obstructions(n: Network, v: str) -> list[Obstruction]:
    """Every known structural reason that ``v`` is not almost balanced."""
    r = _reaction_of_vertex(n, v)
    out = []
    for other in n.reactions:
        if other.reactant == r.product and other.product == r.reactant:
            out.append(Obstruction("ReversiblePair", tuple(sorted((r.index, other.index)))))
            break
    # cycles through r of length >= 3; length 2 is the reversible pair above
    succ = _successors(n)
    path = _shortest_path(succ, r.product, r.reactant, banned_edge=(r.product, r.reactant))
    if path is not None:
        out.append(Obstruction("ReactionCycle", (r.reactant, *path[:-1])))
    if is_weakly_reversible(n):
        out.append(Obstruction("WeaklyReversible", tuple(x.index for x in n.reactions)))
    return out


# -- monomial ideals -----------------------------------------------------------


def monomial_ideal_certificate(n: Network) -> list[tuple[Complex, BalanceCertificate]] | None:
    """One certificate per minimal reactant, or None if some reactant has none.

    When every minimal reactant has a reaction with an almost balanced vertex
    the steady-state ideal is generated by the minimal reactant monomials.
    None is inconclusive: the ideal may still be monomial.
    """
    if not is_zero_one(n):
        raise ValueError("monomial ideal certificates require a 0,1-network")
    h = build_hypergraph(n)
    out = []
    for y in minimal_reactants(n):
        cert = None
        for r in n.reactions:
            if r.reactant != y:
                continue
            for side in ("u", "v"):
                cert = find_certificate(h, f"{side}{r.index}")
                if cert is not None:
                    break
            if cert is not None:
                break
        if cert is None:
            return None
        out.append((y, cert))
    return out


# -- JSON ----------------------------------------------------------------------


def certificate_to_dict(cert: BalanceCertificate, n: Network | None = None) -> dict:
    out = {"vertex": cert.vertex, "red": dict(cert.red), "blue": dict(cert.blue), "k": cert.k}
    if n is not None:
        r = _reaction_of_vertex(n, cert.vertex)
        out["monomial"] = _ascii_monomial(r.reactant, n.species)
        out["rate"] = r.rate
    return out


def certificate_from_dict(data: Mapping) -> BalanceCertificate:
    return BalanceCertificate(
        data["vertex"],
        tuple((e, int(m)) for e, m in data.get("red", {}).items()),
        tuple((e, int(m)) for e, m in data.get("blue", {}).items()),
        int(data["k"]),
    )


def _ascii_monomial(y: Complex, order) -> str:
    exps = y.exponents
    names = [s for s in order if s in exps] + sorted(s for s in exps if s not in order)
    return "*".join(f"x_{s}" if exps[s] == 1 else f"x_{s}^{exps[s]}" for s in names) or "1"
