"""The network hypergraph and its vertex/edge incidence matrix.

Every reaction ``i`` contributes a reactant vertex ``u<i>`` and a product
vertex ``v<i>`` (vertices are never merged, even when complexes repeat).
Species edges ``E_<s>`` cover the vertices whose complex contains ``s``;
reaction edges ``E_r<i>`` cover ``{u<i>, v<i>}`` and are empty when the
product is the empty complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .massaction import RatePolynomial
from .network import Network, is_zero_one

__all__ = [
    "NetworkHypergraph",
    "IncidenceMatrix",
    "build_hypergraph",
    "incidence_matrix",
    "species_edge_polynomial",
    "species_edge_id",
    "reaction_edge_id",
    "hypergraph_to_dot",
    "hypergraph_to_dict",
    "hypergraph_to_json",
]


def species_edge_id(species: str) -> str:
    return f"E_{species}"


def reaction_edge_id(index: int) -> str:
    return f"E_r{index}"


@dataclass(frozen=True)
class NetworkHypergraph:
    vertices: tuple[str, ...]
    species_edges: tuple[tuple[str, frozenset[str]], ...]
    reaction_edges: tuple[tuple[int, frozenset[str]], ...]
    # vertex id -> (reaction index, "u" | "v")
    vertex_info: tuple[tuple[str, tuple[int, str]], ...]

    @property
    def edges(self) -> dict[str, frozenset[str]]:
        """All edges by id, species edges first (species order), then reactions."""
        out = {species_edge_id(s): e for s, e in self.species_edges}
        out.update((reaction_edge_id(i), e) for i, e in self.reaction_edges)
        return out

    def edge(self, edge_id: str) -> frozenset[str]:
        try:
            return self.edges[edge_id]
        except KeyError:
            raise KeyError(f"unknown edge {edge_id!r}") from None

    def species_of_edge(self, edge_id: str) -> str | None:
        for s, _ in self.species_edges:
            if species_edge_id(s) == edge_id:
                return s
        return None

    def vertex(self, vertex_id: str) -> tuple[int, str]:
        """``(reaction index, side)`` of a vertex id such as ``"u3"``."""
        for v, info in self.vertex_info:
            if v == vertex_id:
                return info
        raise KeyError(f"unknown vertex {vertex_id!r}")

    def nonempty_edge_ids(self) -> list[str]:
        return [e for e, members in self.edges.items() if members]


def build_hypergraph(n: Network) -> NetworkHypergraph:
    vertices: list[str] = []
    info = []
    for r in n.reactions:
        for side in ("u", "v"):
            vid = f"{side}{r.index}"
            vertices.append(vid)
            info.append((vid, (r.index, side)))
    species_edges = []
    for s in n.species:
        members = {f"u{r.index}" for r in n.reactions if s in r.reactant.support}
        members |= {f"v{r.index}" for r in n.reactions if s in r.product.support}
        species_edges.append((s, frozenset(members)))
    reaction_edges = [
        (r.index, frozenset() if r.product.is_empty() else frozenset({f"u{r.index}", f"v{r.index}"}))
        for r in n.reactions
    ]
    ids = [species_edge_id(s) for s in n.species] + [reaction_edge_id(r.index) for r in n.reactions]
    if len(set(ids)) != len(ids):
        raise ValueError("a species name collides with a reaction edge id (species named like 'r<digits>')")
    return NetworkHypergraph(tuple(vertices), tuple(species_edges), tuple(reaction_edges), tuple(info))


@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 matrix, rows = vertices, columns = edges (empty edges omitted)."""

    rows: tuple[str, ...]
    columns: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def row_index(self, vertex: str) -> int:
        return self.rows.index(vertex)

    def column_index(self, edge: str) -> int:
        return self.columns.index(edge)

    def column(self, edge: str) -> tuple[int, ...]:
        j = self.column_index(edge)
        return tuple(row[j] for row in self.entries)

    def to_numpy(self):
        import numpy as np

        return np.array(self.entries, dtype=np.int64).reshape(self.shape)


def incidence_matrix(h: NetworkHypergraph, forbidden: Iterable[str] = ()) -> IncidenceMatrix:
    """Incidence matrix over the nonempty edges that are not ``forbidden``.

    Raises:
        KeyError: if a forbidden edge id does not exist in ``h``.
    """
    edges = h.edges
    forbidden = set(forbidden)
    unknown = sorted(forbidden - set(edges))
    if unknown:
        raise KeyError(f"unknown edge id(s): {', '.join(unknown)}")
    cols = [e for e, members in edges.items() if members and e not in forbidden]
    entries = tuple(tuple(int(v in edges[e]) for e in cols) for v in h.vertices)
    return IncidenceMatrix(h.vertices, tuple(cols), entries)


def species_edge_polynomial(n: Network, h: NetworkHypergraph, species: str) -> RatePolynomial:
    """Derivative of ``species`` read off its species edge (0,1-networks only).

    Product vertices in the edge contribute ``+kappa_i x^{y_i}``, reactant
    vertices ``-kappa_i x^{y_i}``.
    """
    if not is_zero_one(n):
        raise ValueError("species edge polynomial requires a 0,1-network")
    members = dict(h.species_edges).get(species)
    if members is None:
        raise KeyError(f"unknown species {species!r}")
    terms = []
    for vid in members:
        i, side = h.vertex(vid)
        r = n.reaction(i)
        terms.append(((r.rate, r.reactant), 1 if side == "v" else -1))
    return RatePolynomial(terms)


def hypergraph_to_dict(h: NetworkHypergraph) -> dict:
    return {
        "vertices": list(h.vertices),
        "species_edges": {species_edge_id(s): _sorted_vertices(h, e) for s, e in h.species_edges},
        "reaction_edges": {reaction_edge_id(i): _sorted_vertices(h, e) for i, e in h.reaction_edges},
    }


def _sorted_vertices(h: NetworkHypergraph, members: frozenset[str]) -> list[str]:
    return [v for v in h.vertices if v in members]


_PALETTE = ("#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45")


def hypergraph_to_dot(h: NetworkHypergraph, n: Network | None = None) -> str:
    """Graphviz rendering: species edges as coloured clusters, reaction edges as segments.

    A vertex can sit in several species edges, so clusters are drawn as
    dotted hulls of per-edge copies linked to the vertex by colour instead.
    """
    labels = {}
    if n is not None:
        for r in n.reactions:
            labels[f"u{r.index}"] = r.reactant.format(n.species)
            labels[f"v{r.index}"] = "∅" if r.product.is_empty() else r.product.format(n.species)
    lines = ["graph hypergraph {", "  node [shape=circle, fontsize=10];"]
    for v in h.vertices:
        text = f"{v}\\n{labels[v]}" if v in labels else v
        lines.append(f'  "{v}" [label="{text}"];')
    for k, (s, members) in enumerate(h.species_edges):
        colour = _PALETTE[k % len(_PALETTE)]
        lines.append(f'  subgraph "cluster_E_{s}" {{')
        lines.append(f'    label="{species_edge_id(s)}"; style="rounded,filled"; color="{colour}"; fillcolor="{colour}22";')
        for v in _sorted_vertices(h, members):
            lines.append(f'    "{species_edge_id(s)}:{v}" [shape=point, color="{colour}"];')
        lines.append("  }")
        for v in _sorted_vertices(h, members):
            lines.append(f'  "{species_edge_id(s)}:{v}" -- "{v}" [color="{colour}", style=dotted];')
    for i, members in h.reaction_edges:
        if members:
            lines.append(f'  "u{i}" -- "v{i}" [label="{reaction_edge_id(i)}", penwidth=2];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def hypergraph_to_json(h: NetworkHypergraph, **kwargs) -> str:
    return json.dumps(hypergraph_to_dict(h), **kwargs)
