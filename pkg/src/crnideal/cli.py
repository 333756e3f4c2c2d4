"""``crn`` command-line front end.

Exit codes: 0 for success or an affirmative answer, 1 for a negative answer
(not equal, not a member, no certificate, invalid network), 2 for usage,
input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .balance import (
    SearchSpaceError,
    brute_force_certificate,
    certificate_to_dict,
    find_certificate,
    monomial_ideal_certificate,
    structural_obstructions,
    verify_certificate,
)
from .groebner import (
    ORDERS,
    UnluckySpecializationError,
    contains_monomial,
    ideal_equal,
    is_monomial_ideal,
    network_basis,
    random_assignment,
)
from .hypergraph import build_hypergraph, hypergraph_to_dict, hypergraph_to_dot
from .massaction import format_monomial, minimal_reactants, steady_state_system
from .network import (
    Network,
    ParseError,
    is_zero_one,
    network_from_json,
    network_to_dict,
    parse_complex,
    parse_network,
    validate_network,
)
from .transforms import (
    ScriptError,
    TransformError,
    TransformRequest,
    add_species_to_reactant,
    reactant_transform_candidates,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _load(path: str) -> Network:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        if path.endswith(".json"):
            return network_from_json(text)
        return parse_network(text)
    except ParseError as exc:
        where = ":".join(str(x) for x in (exc.line, exc.column) if x is not None)
        raise UsageError(f"{path}:{where + ':' if where else ''} error: {exc.message}") from None


def _vertices(n: Network, args) -> list[str]:
    h = build_hypergraph(n)
    if args.vertex:
        for v in args.vertex:
            if v not in h.vertices:
                raise UsageError(f"unknown vertex {v!r} (vertices are {', '.join(h.vertices)})")
        return list(args.vertex)
    return list(h.vertices)


def _forbid(args) -> list[str]:
    out = []
    for chunk in args.forbid or ():
        out.extend(e.strip() for e in chunk.split(",") if e.strip())
    return out


def _require_zero_one(n: Network, what: str) -> None:
    if not is_zero_one(n):
        raise UsageError(f"{what} requires a 0,1-network")


# -- subcommands ------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    n = _load(args.network)
    findings = validate_network(n)
    if args.format == "json":
        out.write(_dump({
            "valid": not findings,
            "zero_one": is_zero_one(n),
            "findings": [{"kind": f.kind, "message": f.message, "reaction": f.reaction} for f in findings],
            "network": network_to_dict(n),
        }) + "\n")
    else:
        for f in findings:
            out.write(f"{f.kind}: {f.message}\n")
        out.write(f"{'valid' if not findings else 'invalid'}; "
                  f"{len(n.species)} species, {len(n.reactions)} reactions, "
                  f"{'0,1-network' if is_zero_one(n) else 'not a 0,1-network'}\n")
    return OK if not findings else NEGATIVE


def cmd_odes(args, out) -> int:
    n = _load(args.network)
    system = steady_state_system(n)
    if args.format == "json":
        out.write(_dump({s: p.format(n.rates, n.species, "ascii") for s, p in system}) + "\n")
    else:
        out.write(system.format(args.style) + "\n")
    return OK


def cmd_hypergraph(args, out) -> int:
    n = _load(args.network)
    h = build_hypergraph(n)
    if args.format == "dot":
        out.write(hypergraph_to_dot(h, n))
    elif args.format == "json":
        out.write(_dump(hypergraph_to_dict(h)) + "\n")
    else:
        out.write("vertices: " + " ".join(h.vertices) + "\n")
        for e, members in h.edges.items():
            out.write(f"{e}: {{{', '.join(v for v in h.vertices if v in members)}}}\n")
    return OK


def cmd_balance(args, out) -> int:
    n = _load(args.network)
    _require_zero_one(n, "balance")
    h = build_hypergraph(n)
    forbidden = _forbid(args)
    unknown = [e for e in forbidden if e not in h.edges]
    if unknown:
        raise UsageError(f"unknown edge(s): {', '.join(unknown)}")
    results = {}
    for v in _vertices(n, args):
        if args.bound is not None:
            try:
                cert = brute_force_certificate(h, v, bound=args.bound, forbidden=forbidden)
            except SearchSpaceError as exc:
                raise UsageError(str(exc)) from None
        else:
            cert = find_certificate(h, v, forbidden=forbidden)
        if cert is not None:
            verify_certificate(n, v, cert)
        results[v] = cert
    found = any(c is not None for c in results.values())
    if args.format == "text":
        for v, cert in results.items():
            if cert is None:
                out.write(f"{v}: no certificate\n")
            else:
                d = certificate_to_dict(cert, n)
                red = ", ".join(f"{e}x{m}" if m > 1 else e for e, m in d["red"].items()) or "-"
                blue = ", ".join(f"{e}x{m}" if m > 1 else e for e, m in d["blue"].items()) or "-"
                out.write(f"{v}: red {{{red}}} blue {{{blue}}} k={d['k']} -> {d['monomial']} in I(N)\n")
    else:
        payload = {v: (certificate_to_dict(c, n) if c else None) for v, c in results.items()}
        if args.vertex and len(args.vertex) == 1:
            payload = payload[args.vertex[0]]
        out.write(_dump(payload) + "\n")
    return OK if (found if not args.vertex else all(results.values())) else NEGATIVE


def cmd_obstructions(args, out) -> int:
    n = _load(args.network)
    report = {v: structural_obstructions(n, v) for v in _vertices(n, args)}
    if args.format == "json":
        out.write(_dump({
            v: [{"kind": o.kind, "witness": [c.format(n.species) if hasattr(c, "format") else c for c in o.witness],
                 "description": o.describe(n.species)} for o in obs]
            for v, obs in report.items()
        }) + "\n")
    else:
        for v, obs in report.items():
            out.write(f"{v}: " + ("; ".join(o.describe(n.species) for o in obs) or "none") + "\n")
    return OK


def cmd_minimal_reactants(args, out) -> int:
    n = _load(args.network)
    mins = minimal_reactants(n)
    if args.format == "json":
        out.write(_dump([c.exponents for c in mins]) + "\n")
    else:
        for c in mins:
            out.write(c.format(n.species) + "\n")
    return OK


def cmd_monomial_ideal(args, out) -> int:
    n = _load(args.network)
    _require_zero_one(n, "monomial-ideal")
    certs = monomial_ideal_certificate(n)
    if args.format == "json":
        out.write(_dump(None if certs is None else {
            "ideal": [format_monomial(y, n.species) for y, _ in certs],
            "certificates": [certificate_to_dict(c, n) for _, c in certs],
        }) + "\n")
    elif certs is None:
        out.write("no certificate: some minimal reactant has no almost balanced vertex (inconclusive)\n")
    else:
        for y, c in certs:
            out.write(f"{y.format(n.species)}: certified at {c.vertex}\n")
        out.write("I(N) = <" + ", ".join(format_monomial(y, n.species) for y, _ in certs) + ">\n")
    return OK if certs is not None else NEGATIVE


def _reactant_search(n: Network, step: TransformRequest):
    """Try every auxiliary reaction for a ``reactant(i,s)`` step, first success wins."""
    errors = []
    for j in reactant_transform_candidates(n, step.reaction):
        try:
            return add_species_to_reactant(n, step.reaction, step.species, j)
        except TransformError as exc:
            errors.append(f"j={j}: {exc}")
    raise TransformError("no auxiliary reaction works" + (": " + "; ".join(errors) if errors else " (no reactant divides y_i)"))


def cmd_transform(args, out) -> int:
    n = _load(args.network)
    steps = []
    for text in args.steps:
        head = text.strip().split("(", 1)[0]
        if head == "reactant" and text.count(",") == 1:
            i, s = (a.strip() for a in text.strip()[len("reactant("):-1].split(","))
            try:
                steps.append(("search", TransformRequest("reactant", int(i), s)))
            except ValueError:
                raise UsageError(f"cannot read transform step {text!r}") from None
            continue
        try:
            steps.append(("plain", TransformRequest.parse(text)))
        except TransformError as exc:
            raise UsageError(str(exc)) from None
    current, results = n, []
    try:
        for k, (mode, step) in enumerate(steps, start=1):
            try:
                res = _reactant_search(current, step) if mode == "search" else step.apply(current)
            except TransformError as exc:
                raise ScriptError(k, exc) from exc
            results.append(res)
            current = res.network
    except ScriptError as exc:
        sys.stderr.write(f"crn: {exc}\n")
        return NEGATIVE
    if args.format == "json":
        out.write(_dump({"network": network_to_dict(current), "transcript": [r.to_dict() for r in results]}) + "\n")
    else:
        for r in results:
            out.write("# " + json.dumps(r.to_dict(), ensure_ascii=False) + "\n")
        out.write(str(current))
    return OK


def _verdict(v, args, out, text: str) -> int:
    if args.format == "json":
        out.write(_dump(v.to_dict()) + "\n")
    else:
        out.write(text + "\n")
    return OK if v else NEGATIVE


def cmd_compare(args, out) -> int:
    n1, n2 = _load(args.first), _load(args.second)
    v = ideal_equal(n1, n2, trials=args.trials, seed=args.seed, order=args.order)
    text = v.answer
    if v.witness is not None:
        text += f"\nwitness: {v.witness.format()} has normal form {v.witness_normal_form.format()}"
    return _verdict(v, args, out, text)


def cmd_member(args, out) -> int:
    n = _load(args.network)
    try:
        m = parse_complex(args.monomial.replace("*", "+"))
    except ParseError as exc:
        raise UsageError(f"bad monomial {args.monomial!r}: {exc.message}") from None
    v = contains_monomial(n, m, trials=args.trials, seed=args.seed, order=args.order)
    text = v.answer
    if v.witness is not None:
        text += f"\nnormal form: {v.witness_normal_form.format()}"
    return _verdict(v, args, out, text)


def cmd_gb(args, out) -> int:
    n = _load(args.network)
    if args.monomial:
        v = is_monomial_ideal(n, trials=args.trials, seed=args.seed, order=args.order)
        return _verdict(v, args, out, v.answer + "\n" + "\n".join(g.format() for g in v.basis("n")))
    rows = []
    for t in range(args.trials):
        a = random_assignment(n.rates, args.seed, t)
        rows.append((a, network_basis(n, a, order=args.order)))
    if args.format == "json":
        out.write(_dump([
            {"trial": t, "assignment": {k: str(x) for k, x in a.items()}, "basis": [g.format() for g in gb]}
            for t, (a, gb) in enumerate(rows)
        ]) + "\n")
    else:
        for t, (a, gb) in enumerate(rows):
            out.write(f"trial {t}: " + ", ".join(f"{k}={x}" for k, x in a.items()) + "\n")
            for g in gb:
                out.write(f"  {g.format()}\n")
    return OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crn", description="Steady-state ideals of mass-action reaction networks.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help, formats=("text", "json"), default=None):
        sp = sub.add_parser(name, help=help, description=help)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=formats, default=default or formats[0])
        return sp

    def oracle_flags(sp):
        sp.add_argument("--trials", type=int, default=3, help="independent specializations (default 3)")
        sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        sp.add_argument("--order", choices=sorted(ORDERS), default="degrevlex")

    sp = add("validate", cmd_validate, "check a network file")
    sp.add_argument("network")
    sp = add("odes", cmd_odes, "print the mass-action derivatives")
    sp.add_argument("network")
    sp.add_argument("--style", choices=("unicode", "ascii"), default="unicode")
    sp = add("hypergraph", cmd_hypergraph, "print the network hypergraph", ("text", "json", "dot"))
    sp.add_argument("network")
    sp = add("balance", cmd_balance, "find almost-balanced-vertex certificates", default="json")
    sp.add_argument("network")
    sp.add_argument("--vertex", action="append", help="vertex id such as u3 (repeatable; default all)")
    sp.add_argument("--forbid", action="append", help="comma-separated edge ids the certificate must avoid")
    sp.add_argument("--bound", type=int, help="use exhaustive search with multiplicities up to this bound")
    sp = add("obstructions", cmd_obstructions, "list structural obstructions per vertex")
    sp.add_argument("network")
    sp.add_argument("--vertex", action="append")
    sp = add("minimal-reactants", cmd_minimal_reactants, "list minimal reactant complexes")
    sp.add_argument("network")
    sp = add("monomial-ideal", cmd_monomial_ideal, "certify that the ideal is generated by minimal reactants")
    sp.add_argument("network")
    sp = add("transform", cmd_transform, "apply ideal-preserving transforms in order")
    sp.add_argument("network")
    sp.add_argument("steps", nargs="+", metavar="STEP",
                    help="product(i,s), reactant(i,s,j), reactant(i,s) (search j) or degradation(i)")
    sp = add("compare", cmd_compare, "decide whether two networks have the same steady-state ideal")
    sp.add_argument("first")
    sp.add_argument("second")
    oracle_flags(sp)
    sp = add("member", cmd_member, "decide whether a monomial lies in the steady-state ideal")
    sp.add_argument("network")
    sp.add_argument("monomial", help="e.g. A, A*B or 2A")
    oracle_flags(sp)
    sp = add("gb", cmd_gb, "reduced Gröbner bases at random rate constants")
    sp.add_argument("network")
    sp.add_argument("--monomial", action="store_true", help="decide whether the ideal is monomial")
    oracle_flags(sp)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "trials", 1) < 1:
        sys.stderr.write("crn: --trials must be at least 1\n")
        return USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"crn: {exc}\n")
        return USAGE
    except UnluckySpecializationError as exc:
        sys.stderr.write(f"crn: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
