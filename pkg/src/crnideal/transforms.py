"""Ideal-preserving rewrites of 0,1-networks.

Three operations leave the steady-state ideal unchanged (in the ring that
contains both networks' species and rate constants):

* adding a species ``s`` to the product of reaction ``i``, given a
  certificate at ``u_i`` that does not use ``E_s``;
* adding ``s`` to the reactant of reaction ``i``, given another reaction
  ``j`` whose reactant divides ``y_i`` and a certificate at ``u_j`` that
  does not use ``E_s``;
* adding the degradation ``y_i -> 0``, given a certificate at ``v_i`` that
  does not use the reaction edge of ``i``.

Certificates are searched afresh on the network each operation is applied
to and re-verified before the result is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .balance import (
    BalanceCertificate,
    CertificateError,
    certificate_to_dict,
    find_certificate,
    structural_obstructions,
    verify_certificate,
)
from .hypergraph import build_hypergraph, reaction_edge_id, species_edge_id
from .network import Complex, Network, Reaction, is_zero_one, validate_network

__all__ = [
    "TransformError",
    "NotAlmostBalancedError",
    "NoQualifyingCertificateError",
    "ScriptError",
    "TransformResult",
    "TransformRequest",
    "add_species_to_product",
    "add_species_to_reactant",
    "add_degradation",
    "apply_script",
    "reactant_transform_candidates",
    "OPS",
]

OPS = {
    "product": "add_product_species",
    "reactant": "add_reactant_species",
    "degradation": "add_degradation",
}


class TransformError(ValueError):
    """A precondition of a transform does not hold."""


class NotAlmostBalancedError(TransformError):
    """The vertex has no certificate at all, whatever edges are allowed."""

    def __init__(self, message: str, vertex: str, obstructions=()):
        super().__init__(message)
        self.vertex = vertex
        self.obstructions = tuple(obstructions)


class NoQualifyingCertificateError(TransformError):
    """The vertex is almost balanced, but every certificate uses the forbidden edge."""

    def __init__(self, message: str, vertex: str, forbidden: str):
        super().__init__(message)
        self.vertex = vertex
        self.forbidden = forbidden


class ScriptError(TransformError):
    def __init__(self, step: int, cause: Exception):
        super().__init__(f"step {step}: {cause}")
        self.step = step
        self.cause = cause


@dataclass(frozen=True)
class TransformResult:
    network: Network
    op: str
    reaction: int
    certificate: BalanceCertificate
    new_rate: str
    source: Network = field(repr=False, compare=False, default=None)
    species: str | None = None
    aux: int | None = None

    def to_dict(self) -> dict:
        out = {"op": self.op, "reaction": self.reaction}
        if self.species is not None:
            out["species"] = self.species
        if self.aux is not None:
            out["aux_reaction"] = self.aux
        out["certificate"] = certificate_to_dict(self.certificate, self.source)
        out["new_rate"] = self.new_rate
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _require_zero_one(n: Network) -> None:
    if not is_zero_one(n):
        raise TransformError("transforms apply to 0,1-networks only")


def _reaction(n: Network, i: int) -> Reaction:
    try:
        return n.reaction(i)
    except KeyError:
        raise TransformError(f"no reaction with index {i}") from None


def _fresh_label(n: Network, base: str) -> str:
    taken = set(n.rates)
    label = base
    while label in taken:
        label += "_p"
    return label


def _certificate(n: Network, vertex: str, forbidden: str | None) -> BalanceCertificate:
    """A certificate at ``vertex`` avoiding ``forbidden`` (verified), or a precise error."""
    h = build_hypergraph(n)
    avoid = [forbidden] if forbidden is not None and forbidden in h.edges else []
    cert = find_certificate(h, vertex, forbidden=avoid)
    if cert is None:
        if find_certificate(h, vertex) is None:
            obs = structural_obstructions(n, vertex)
            detail = "; ".join(o.describe(n.species) for o in obs)
            raise NotAlmostBalancedError(
                f"{vertex} is not almost balanced" + (f" ({detail})" if detail else ""), vertex, obs
            )
        raise NoQualifyingCertificateError(
            f"{vertex} is almost balanced, but every certificate uses {forbidden}", vertex, forbidden
        )
    try:
        verify_certificate(n, vertex, cert)
    except CertificateError as exc:  # pragma: no cover - find_certificate is sound
        raise TransformError(f"internal error: certificate at {vertex} failed verification: {exc}") from exc
    return cert


def _replace(n: Network, i: int, new: Reaction, species: Sequence[str]) -> Network:
    rxns = [new if r.index == i else r for r in n.reactions]
    return _finish(rxns, species)


def _finish(rxns: Iterable[Reaction], species: Sequence[str]) -> Network:
    out = Network.from_reactions(rxns, species=species)
    findings = validate_network(out)
    if findings:
        raise TransformError("; ".join(f.message for f in findings))
    return out


def _species_after(n: Network, s: str) -> list[str]:
    return list(n.species) + ([s] if s not in n.species else [])


def add_species_to_product(n: Network, i: int, s: str) -> TransformResult:
    """Replace ``y_i -> y_i'`` by ``y_i -> y_i' + s`` with a fresh rate label.

    Raises:
        NotAlmostBalancedError: ``u_i`` has no certificate at all.
        NoQualifyingCertificateError: every certificate at ``u_i`` uses ``E_s``.
        TransformError: non-0,1 input, ``s`` already in the product, or the
            rewritten reaction already exists.
    """
    _require_zero_one(n)
    r = _reaction(n, i)
    if s in r.product.support:
        raise TransformError(f"species {s} is already in the product {r.product.format(n.species)} of reaction {i}")
    cert = _certificate(n, f"u{i}", species_edge_id(s))
    rate = _fresh_label(n, f"{r.rate}_p")
    out = _replace(n, i, Reaction(i, r.reactant, r.product + s, rate), _species_after(n, s))
    return TransformResult(out, OPS["product"], i, cert, rate, source=n, species=s)


def add_species_to_reactant(n: Network, i: int, s: str, j: int) -> TransformResult:
    """Replace ``y_i -> y_i'`` by ``y_i + s -> y_i'`` using auxiliary reaction ``j``.

    Raises:
        NotAlmostBalancedError: ``u_j`` has no certificate at all.
        NoQualifyingCertificateError: every certificate at ``u_j`` uses ``E_s``.
        TransformError: ``i == j``, ``y_j`` does not divide ``y_i``, ``s`` is
            already in ``y_i``, or the result is not a valid network.
    """
    _require_zero_one(n)
    if i == j:
        raise TransformError("the auxiliary reaction must differ from the rewritten one (i == j)")
    r = _reaction(n, i)
    aux = _reaction(n, j)
    if not aux.reactant.divides(r.reactant):
        raise TransformError(
            f"reactant {aux.reactant.format(n.species)} of reaction {j} does not divide "
            f"reactant {r.reactant.format(n.species)} of reaction {i}"
        )
    if s in r.reactant.support:
        raise TransformError(f"species {s} is already in the reactant {r.reactant.format(n.species)} of reaction {i}")
    cert = _certificate(n, f"u{j}", species_edge_id(s))
    rate = _fresh_label(n, f"{r.rate}_p")
    out = _replace(n, i, Reaction(i, r.reactant + s, r.product, rate), _species_after(n, s))
    return TransformResult(out, OPS["reactant"], i, cert, rate, source=n, species=s, aux=j)


def add_degradation(n: Network, i: int) -> TransformResult:
    """Append ``y_i -> 0`` with rate label ``k<m+1>`` (made fresh if taken).

    Raises:
        NotAlmostBalancedError: ``v_i`` has no certificate at all.
        NoQualifyingCertificateError: every certificate at ``v_i`` uses ``E_r<i>``.
        TransformError: ``y_i -> 0`` is already a reaction.
    """
    _require_zero_one(n)
    r = _reaction(n, i)
    if any(q.reactant == r.reactant and q.product.is_empty() for q in n.reactions):
        raise TransformError(f"degradation {r.reactant.format(n.species)} -> 0 is already in the network")
    cert = _certificate(n, f"v{i}", reaction_edge_id(i))
    rate = _fresh_label(n, f"k{len(n.reactions) + 1}")
    out = _finish(list(n.reactions) + [Reaction(len(n.reactions) + 1, r.reactant, Complex(), rate)], n.species)
    return TransformResult(out, OPS["degradation"], i, cert, rate, source=n)


@dataclass(frozen=True)
class TransformRequest:
    """One step of a script: ``kind`` is ``product``, ``reactant`` or ``degradation``."""

    kind: str
    reaction: int
    species: str | None = None
    aux: int | None = None

    def apply(self, n: Network) -> TransformResult:
        if self.kind == "product":
            if self.species is None:
                raise TransformError("product step needs a species")
            return add_species_to_product(n, self.reaction, self.species)
        if self.kind == "reactant":
            if self.species is None or self.aux is None:
                raise TransformError("reactant step needs a species and an auxiliary reaction")
            return add_species_to_reactant(n, self.reaction, self.species, self.aux)
        if self.kind == "degradation":
            return add_degradation(n, self.reaction)
        raise TransformError(f"unknown transform {self.kind!r} (expected product, reactant or degradation)")

    @classmethod
    def parse(cls, text: str) -> TransformRequest:
        """Read ``product(3,B)``, ``reactant(1,B,3)`` or ``degradation(3)``."""
        text = text.strip()
        head, sep, rest = text.partition("(")
        if not sep or not rest.endswith(")"):
            raise TransformError(f"cannot read transform step {text!r}")
        args = [a.strip() for a in rest[:-1].split(",")]
        kind = head.strip()
        try:
            if kind == "product" and len(args) == 2:
                return cls(kind, int(args[0]), args[1])
            if kind == "reactant" and len(args) == 3:
                return cls(kind, int(args[0]), args[1], int(args[2]))
            if kind == "degradation" and len(args) == 1:
                return cls(kind, int(args[0]))
        except ValueError:
            pass
        raise TransformError(f"cannot read transform step {text!r}")


def apply_script(n: Network, ops: Sequence[TransformRequest]) -> tuple[Network, list[TransformResult]]:
    """Apply ``ops`` in order; all-or-nothing.

    Raises:
        ScriptError: naming the 1-based step that failed.
    """
    current = n
    results: list[TransformResult] = []
    for step, op in enumerate(ops, start=1):
        try:
            res = op.apply(current)
        except TransformError as exc:
            raise ScriptError(step, exc) from exc
        results.append(res)
        current = res.network
    return current, results


def reactant_transform_candidates(n: Network, i: int) -> list[int]:
    """Reactions ``j != i`` whose reactant divides that of reaction ``i``."""
    r = _reaction(n, i)
    return [q.index for q in n.reactions if q.index != i and q.reactant.divides(r.reactant)]
