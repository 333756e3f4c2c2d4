"""Reaction network data model, text parser, validation and JSON persistence.

A network is a list of species, a list of indexed reactions ``y -> y'`` with
rate labels, and the complexes those reactions use. Everything here is
immutable; edits produce new objects.

Text format, one reaction per line (``#`` starts a comment)::

    A + B -> D, k1
    2A <-> B + C, kf       # '<->' expands into kf_f / kf_b
    A -> 0                 # '0' is the empty complex
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Complex",
    "Reaction",
    "Network",
    "RingContext",
    "ParseError",
    "Finding",
    "parse_network",
    "parse_complex",
    "format_network",
    "validate_network",
    "is_zero_one",
    "complex_divides",
    "network_to_dict",
    "network_from_dict",
    "network_to_json",
    "network_from_json",
]


class Complex:
    """A nonnegative integer combination of species, keyed by species name.

    Only strictly positive exponents are stored; ``Complex()`` is the empty
    complex.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        if isinstance(exponents, Mapping):
            exponents = exponents.items()
        acc: dict[str, int] = {}
        for name, exp in exponents:
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError(f"exponent of {name!r} must be an int, got {exp!r}")
            if exp < 0:
                raise ValueError(f"negative exponent for species {name!r}")
            acc[name] = acc.get(name, 0) + exp
        self._items = tuple(sorted((n, e) for n, e in acc.items() if e > 0))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *names: str) -> Complex:
        """Shorthand: ``Complex.of("A", "B")`` is ``A + B``."""
        out: dict[str, int] = {}
        for n in names:
            out[n] = out.get(n, 0) + 1
        return cls(out)

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._items)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(n for n, _ in self._items)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_empty(self) -> bool:
        return not self._items

    def __getitem__(self, name: str) -> int:
        for n, e in self._items:
            if n == name:
                return e
        return 0

    def __iter__(self):
        return iter(self._items)

    def __add__(self, other: Complex | str) -> Complex:
        if isinstance(other, str):
            other = Complex({other: 1})
        return Complex(self._items + other._items)

    def __sub__(self, other: Complex) -> Complex:
        diff = {n: e - other[n] for n, e in self._items}
        for n, _ in other._items:
            if diff.get(n, -1) < 0:
                raise ValueError(f"{other} does not divide {self}")
        return Complex(diff)

    def divides(self, other: Complex) -> bool:
        return all(e <= other[n] for n, e in self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Complex) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Complex) -> bool:
        return self._items < other._items

    def format(self, order: Sequence[str] | None = None) -> str:
        """Render as text, terms in ``order`` (default: alphabetical)."""
        if not self._items:
            return "0"
        exps = dict(self._items)
        names = [n for n in order if n in exps] if order is not None else sorted(exps)
        names += sorted(n for n in exps if n not in names)
        return " + ".join(n if exps[n] == 1 else f"{exps[n]}{n}" for n in names)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Complex({dict(self._items)!r})"


def complex_divides(y: Complex, y2: Complex) -> bool:
    """True iff every exponent of ``y`` is at most the matching one in ``y2``."""
    return y.divides(y2)


@dataclass(frozen=True)
class Reaction:
    index: int
    reactant: Complex
    product: Complex
    rate: str

    def format(self, order: Sequence[str] | None = None) -> str:
        return f"{self.reactant.format(order)} -> {self.product.format(order)}, {self.rate}"

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class Network:
    """Species, reactions and complexes of a reaction network.

    Use :meth:`from_reactions` to derive species and complexes; the raw
    constructor accepts arbitrary (possibly invalid) data so that
    :func:`validate_network` has something to report on.
    """

    species: tuple[str, ...]
    reactions: tuple[Reaction, ...]
    complexes: tuple[Complex, ...] = field(default=())

    @classmethod
    def from_reactions(
        cls,
        reactions: Iterable[Reaction | tuple],
        species: Sequence[str] | None = None,
    ) -> Network:
        """Build a network; reactions may be ``Reaction`` or
        ``(reactant, product, rate)`` tuples (indices are renumbered 1..m)."""
        rxns = []
        for i, r in enumerate(reactions, start=1):
            if isinstance(r, Reaction):
                rxns.append(Reaction(i, r.reactant, r.product, r.rate))
            else:
                reactant, product, rate = r
                rxns.append(Reaction(i, _as_complex(reactant), _as_complex(product), rate))
        order = list(species or ())
        for r in rxns:
            for c in (r.reactant, r.product):
                for n, _ in c:
                    if n not in order:
                        order.append(n)
        return cls(tuple(order), tuple(rxns), _derive_complexes(rxns))

    def reaction(self, index: int) -> Reaction:
        for r in self.reactions:
            if r.index == index:
                return r
        raise KeyError(f"no reaction with index {index}")

    @property
    def rates(self) -> tuple[str, ...]:
        return tuple(r.rate for r in self.reactions)

    @property
    def reactants(self) -> tuple[Complex, ...]:
        seen: dict[Complex, None] = {}
        for r in self.reactions:
            seen.setdefault(r.reactant)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self.reactions)

    def __str__(self) -> str:
        return format_network(self)


def _as_complex(c) -> Complex:
    if isinstance(c, Complex):
        return c
    if isinstance(c, str):
        return _parse_complex_text(c)
    return Complex(c)


def _derive_complexes(reactions: Iterable[Reaction]) -> tuple[Complex, ...]:
    seen: dict[Complex, None] = {}
    for r in reactions:
        seen.setdefault(r.reactant)
        seen.setdefault(r.product)
    return tuple(seen)


@dataclass(frozen=True)
class RingContext:
    """Variable order (species) and parameter order (rate labels) of a ring."""

    species: tuple[str, ...]
    rates: tuple[str, ...]

    @classmethod
    def of(cls, *networks: Network) -> RingContext:
        species: dict[str, None] = {}
        rates: dict[str, None] = {}
        for n in networks:
            for s in n.species:
                species.setdefault(s)
            for k in n.rates:
                rates.setdefault(k)
        return cls(tuple(species), tuple(rates))


# -- parsing -----------------------------------------------------------------


class ParseError(ValueError):
    """Syntax or structural error in network text, with a 1-based location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow><->|->)|(?P<plus>\+)|(?P<comma>,)|(?P<uint>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str, lineno: int) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return tokens


class _LineParser:
    def __init__(self, tokens, lineno: int, line_len: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.eol = line_len + 1
        self.seen: list[str] = []

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eol", "", self.eol)

    def take(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            found = "end of line" if tok[0] == "eol" else repr(tok[1])
            raise ParseError(f"expected {what}, found {found}", self.lineno, tok[2])
        self.i += 1
        return tok

    def complex(self) -> Complex:
        kind, value, col = self.peek()
        if kind == "uint" and value == "0":
            nxt = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else ("eol", "", self.eol)
            if nxt[0] != "ident":
                self.i += 1
                return Complex()
        terms: list[tuple[str, int]] = [self.term()]
        while self.peek()[0] == "plus":
            self.i += 1
            terms.append(self.term())
        return Complex(terms)

    def term(self) -> tuple[str, int]:
        coeff = 1
        if self.peek()[0] == "uint":
            _, value, col = self.take("uint", "coefficient")
            coeff = int(value)
            if coeff == 0:
                raise ParseError("zero coefficient", self.lineno, col)
        _, name, _ = self.take("ident", "species name")
        self.seen.append(name)
        return name, coeff


def _parse_complex_text(text: str) -> Complex:
    p = _LineParser(_tokenize(text, 1), 1, len(text))
    c = p.complex()
    if p.peek()[0] != "eol":
        raise ParseError(f"unexpected {p.peek()[1]!r}", 1, p.peek()[2])
    return c


def parse_complex(text: str) -> Complex:
    """Parse a single complex such as ``"A + 2B"`` or ``"0"``."""
    return _parse_complex_text(text)


def parse_network(text: str) -> Network:
    """Parse the line-oriented reaction format into a :class:`Network`.

    Species are ordered by first appearance, reactions by line order. A line
    without a rate label gets ``k<index>``; ``<->`` produces two reactions
    labelled ``<label>_f`` and ``<label>_b``.

    Raises:
        ParseError: on syntax errors, self-loops, production reactions
            (``0 -> y``) and duplicate rate labels or reactions.
    """
    reactions: list[Reaction] = []
    species: dict[str, None] = {}
    labels: dict[str, int] = {}
    pairs: dict[tuple[Complex, Complex], int] = {}

    def add(reactant: Complex, product: Complex, rate: str, lineno: int, col: int) -> None:
        if rate in labels:
            raise ParseError(f"duplicate rate label {rate!r} (first used on line {labels[rate]})", lineno, col)
        if (reactant, product) in pairs:
            raise ParseError(
                f"duplicate reaction {reactant} -> {product} (first on line {pairs[reactant, product]})",
                lineno,
            )
        labels[rate] = lineno
        pairs[reactant, product] = lineno
        reactions.append(Reaction(len(reactions) + 1, reactant, product, rate))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        p = _LineParser(_tokenize(line, lineno), lineno, len(line.rstrip()))
        lhs_col = p.peek()[2]
        lhs = p.complex()
        _, arrow, arrow_col = p.take("arrow", "'->' or '<->'")
        rhs = p.complex()
        label_col = p.peek()[2]
        label = None
        if p.peek()[0] == "comma":
            p.i += 1
            _, label, label_col = p.take("ident", "rate label")
        if p.peek()[0] != "eol":
            kind, value, col = p.peek()
            raise ParseError(f"unexpected {value!r} after reaction", lineno, col)

        if lhs == rhs:
            raise ParseError(f"self-loop reaction {lhs} -> {rhs}", lineno, arrow_col)
        if lhs.is_empty() or (arrow == "<->" and rhs.is_empty()):
            raise ParseError("production reaction 0 -> y is not allowed", lineno, lhs_col if lhs.is_empty() else arrow_col)

        for name in p.seen:
            species.setdefault(name)
        base = label or f"k{len(reactions) + 1}"
        if arrow == "->":
            add(lhs, rhs, base, lineno, label_col)
        else:
            add(lhs, rhs, f"{base}_f", lineno, label_col)
            add(rhs, lhs, f"{base}_b", lineno, label_col)

    return Network(tuple(species), tuple(reactions), _derive_complexes(reactions))


def format_network(n: Network) -> str:
    """Serialize to the text format; ``parse_network`` reads it back."""
    return "".join(r.format(n.species) + "\n" for r in n.reactions)


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str
    reaction: int | None = None


def validate_network(n: Network) -> list[Finding]:
    """Check the structural requirements on a network; an empty list means valid."""
    findings: list[Finding] = []
    used = set()
    seen_labels: dict[str, int] = {}
    seen_pairs: dict[tuple[Complex, Complex], int] = {}
    for r in n.reactions:
        used.add(r.reactant)
        used.add(r.product)
        if r.reactant == r.product:
            findings.append(Finding("self-loop", f"reaction {r.index} is a self-loop {r}", r.index))
        if r.reactant.is_empty():
            findings.append(Finding("production", f"reaction {r.index} has an empty reactant: {r}", r.index))
        if r.rate in seen_labels:
            findings.append(
                Finding("duplicate-rate", f"rate label {r.rate!r} reused by reactions {seen_labels[r.rate]} and {r.index}", r.index)
            )
        seen_labels.setdefault(r.rate, r.index)
        if (r.reactant, r.product) in seen_pairs:
            findings.append(
                Finding("duplicate-reaction", f"reaction {r.index} repeats reaction {seen_pairs[r.reactant, r.product]}", r.index)
            )
        seen_pairs.setdefault((r.reactant, r.product), r.index)
        for c in (r.reactant, r.product):
            for s in c.support:
                if s not in n.species:
                    findings.append(Finding("unknown-species", f"species {s!r} of reaction {r.index} is not declared", r.index))
    for c in n.complexes:
        if c not in used:
            findings.append(Finding("orphan-complex", f"complex {c} belongs to no reaction"))
    for c in used:
        if c not in n.complexes:
            findings.append(Finding("undeclared-complex", f"complex {c} is used but not listed"))
    covered = set().union(*(c.support for c in n.complexes)) if n.complexes else set()
    for s in n.species:
        if s not in covered:
            findings.append(Finding("uncovered-species", f"species {s!r} appears in no complex"))
    return findings


def is_zero_one(n: Network) -> bool:
    """True iff every complex has all exponents in {0, 1}."""
    return all(e <= 1 for c in n.complexes for _, e in c) and all(
        e <= 1 for r in n.reactions for c in (r.reactant, r.product) for _, e in c
    )


# -- JSON --------------------------------------------------------------------


def network_to_dict(n: Network) -> dict:
    return {
        "species": list(n.species),
        "reactions": [
            {"reactant": r.reactant.exponents, "product": r.product.exponents, "rate": r.rate}
            for r in n.reactions
        ],
    }


def network_from_dict(data: Mapping) -> Network:
    try:
        species = list(data.get("species", []))
        rxns = [(Complex(d["reactant"]), Complex(d["product"]), d["rate"]) for d in data["reactions"]]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed network JSON: {exc}") from None
    return Network.from_reactions(rxns, species=species)


def network_to_json(n: Network, **kwargs) -> str:
    return json.dumps(network_to_dict(n), **kwargs)


def network_from_json(text: str) -> Network:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return network_from_dict(data)
