"""Command-line surface.

Exit codes: 0 when a verdict or document was computed (whatever the
verdict), 1 for usage or parse errors, 2 for precondition failures such
as feeding an invalid graph to ``canonical`` or exceeding an oracle cap.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .abstraction import canonical_dmg, marginalize, represent, validate
from .equivalence import (
    DiscriminatingPath,
    condition1,
    discriminating_paths,
    m_markov_equivalent_oracle,
    sigma_markov_equivalent_oracle,
)
from .errors import DomainError, InputError, OracleCapError, ParseError, PreconditionError
from .generators import GeneratorConfig, random_dmg
from .graphs import ContextedDmg, MixedGraph
from .io_text import GraphDocument, export_dot, parse_graph, serialize_graph
from .separation import (
    SeparationQuery,
    inducing_paths,
    m_separated,
    sigma_inducing_paths,
    sigma_separated,
)
from .walks import Walk


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep usage problems on exit code 1
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load(path: str, kind: str):
    try:
        doc = parse_graph(_read(path), kind)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return doc.to_mixed() if kind == "mixed" else doc.to_contexted()


def _load_auto(path: str):
    """Mixed document first; anything mixed syntax rejects is read as dmg."""
    text = _read(path)
    try:
        return parse_graph(text, "mixed").to_mixed()
    except ParseError:
        try:
            return parse_graph(text, "dmg").to_contexted()
        except ParseError as exc:
            raise InputError(f"{path}: {exc}") from exc


def _nodes_arg(value: str | None) -> tuple[str, ...]:
    if not value:
        return ()
    return tuple(part for part in value.split(",") if part)


def _print_verdict(verdict) -> None:
    print(f"separated: {'true' if verdict.separated else 'false'}")
    if verdict.witness is not None:
        print(f"witness: {verdict.witness.render()}")


def _render_witness_item(item) -> str:
    if isinstance(item, Walk):
        return item.render()
    if isinstance(item, DiscriminatingPath):
        return " ".join(item.nodes)
    if isinstance(item, frozenset):
        return "{" + ", ".join(sorted(item)) + "}"
    return str(item)


def _render_witness(witness) -> str:
    if isinstance(witness, tuple) and all(isinstance(x, str) for x in witness):
        return "(" + ", ".join(witness) + ")"
    if isinstance(witness, tuple):
        return "; ".join(_render_witness_item(x) for x in witness)
    return _render_witness_item(witness)


def _dp_walk(h: MixedGraph, dp: DiscriminatingPath) -> Walk:
    edges = tuple(h.edge(u, v) for u, v in zip(dp.nodes, dp.nodes[1:]))
    return Walk(dp.nodes[0], edges)


def _cmd_validate(args) -> int:
    report = validate(_load(args.file, "mixed"))
    print(f"valid: {'true' if report.valid else 'false'}")
    for violation in report.violations:
        print(f"violation: {violation.kind.value}")
        print(f"witness: {_render_witness(violation.witness)}")
    return 0


def _cmd_abstract(args) -> int:
    h = represent(_load(args.file, "dmg"))
    sys.stdout.write(serialize_graph(GraphDocument.from_mixed(h)))
    return 0


def _cmd_marginalize(args) -> int:
    c = _load(args.file, "dmg")
    drop = _nodes_arg(args.drop)
    for v in drop:
        if v in c.selection:
            raise InputError(f"cannot marginalize out selection node {v!r}")
    g = marginalize(c.graph, drop)
    doc = GraphDocument.from_contexted(ContextedDmg(g, c.selection))
    sys.stdout.write(serialize_graph(doc))
    return 0


def _cmd_msep(args) -> int:
    h = _load(args.file, "mixed")
    q = SeparationQuery(_nodes_arg(args.x), _nodes_arg(args.y), _nodes_arg(args.z))
    _print_verdict(m_separated(h, q))
    return 0


def _cmd_ssep(args) -> int:
    c = _load(args.file, "dmg")
    z = set(_nodes_arg(args.z)) | set(c.selection)
    q = SeparationQuery(_nodes_arg(args.x), _nodes_arg(args.y), z)
    _print_verdict(sigma_separated(c.graph, q))
    return 0


def _cmd_canonical(args) -> int:
    c = canonical_dmg(_load(args.file, "mixed"))
    sys.stdout.write(serialize_graph(GraphDocument.from_contexted(c)))
    return 0


def _cmd_equiv(args) -> int:
    g1 = _load_auto(args.file1)
    g2 = _load_auto(args.file2)
    if type(g1) is not type(g2):
        raise InputError("cannot compare a mixed document with a dmg document")
    if isinstance(g1, MixedGraph):
        for path, h in ((args.file1, g1), (args.file2, g2)):
            report = validate(h)
            if not report.valid:
                raise PreconditionError(f"{path} is not a valid input graph")
        if args.oracle:
            ok, cex = m_markov_equivalent_oracle(g1, g2)
            _print_equiv_oracle(ok, cex)
        else:
            report = condition1(g1, g2)
            print(f"equivalent: {'true' if report.equivalent else 'false'}")
            if not report.equivalent:
                print(f"clause: {report.failed_clause.value}")
                print(f"witness: {_render_witness(report.witness)}")
    else:
        if args.oracle:
            ok, cex = sigma_markov_equivalent_oracle(g1, g2)
            _print_equiv_oracle(ok, cex)
        else:
            report = condition1(represent(g1), represent(g2))
            print(f"equivalent: {'true' if report.equivalent else 'false'}")
            if not report.equivalent:
                print(f"clause: {report.failed_clause.value}")
                print(f"witness: {_render_witness(report.witness)}")
    return 0


def _print_equiv_oracle(ok: bool, cex) -> None:
    print(f"equivalent: {'true' if ok else 'false'}")
    if cex is not None:
        a, b, z = cex
        print(f"witness: ({a}, {b}, {{{', '.join(sorted(z))}}})")


def _cmd_paths(args) -> int:
    if args.kind == "discriminating":
        h = _load(args.file, "mixed")
        for dp in discriminating_paths(h, for_node=args.b):
            print(f"{_dp_walk(h, dp).render()}  (for {dp.target})")
        return 0
    if args.a is None or args.b is None:
        raise InputError(f"--a and --b are required for {args.kind} paths")
    if args.kind == "inducing":
        h = _load(args.file, "mixed")
        for path in inducing_paths(h, args.a, args.b):
            print(path.render())
        return 0
    c = _load(args.file, "dmg")
    for path in sigma_inducing_paths(c.graph, c.selection, args.a, args.b):
        ends = (
            f"{'into' if path.is_into(args.a) else 'out of'} {args.a}, "
            f"{'into' if path.is_into(args.b) else 'out of'} {args.b}"
        )
        print(f"{path.render()}  ({ends})")
    return 0


def _cmd_random(args) -> int:
    cfg = GeneratorConfig(
        n_nodes=args.nodes,
        p_directed=args.p_dir,
        p_bidirected=args.p_bi,
        n_selection=args.selection,
        seed=args.seed,
    )
    c = random_dmg(cfg, allow_selection_children=args.allow_selection_children)
    sys.stdout.write(serialize_graph(GraphDocument.from_contexted(c)))
    return 0


def _cmd_export_dot(args) -> int:
    sys.stdout.write(export_dot(_load_auto(args.file)))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="cyclomag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a mixed graph for validity")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("abstract", help="abstract a dmg document into a mixed graph")
    p.add_argument("file")
    p.set_defaults(func=_cmd_abstract)

    p = sub.add_parser("marginalize", help="project latent nodes out of a dmg")
    p.add_argument("file")
    p.add_argument("--drop", required=True, help="comma-separated nodes to remove")
    p.set_defaults(func=_cmd_marginalize)

    p = sub.add_parser("msep", help="m-separation query on a mixed graph")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", default="")
    p.set_defaults(func=_cmd_msep)

    p = sub.add_parser("ssep", help="sigma-separation query on a dmg")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", default="", help="conditioning set; selection nodes are always added")
    p.set_defaults(func=_cmd_ssep)

    p = sub.add_parser("canonical", help="reconstruct one dmg a valid mixed graph abstracts")
    p.add_argument("file")
    p.set_defaults(func=_cmd_canonical)

    p = sub.add_parser("equiv", help="Markov-equivalence of two graph documents")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--oracle", action="store_true", help="use the exhaustive oracle")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("paths", help="enumerate special paths")
    p.add_argument("file")
    p.add_argument("--kind", required=True, choices=["inducing", "sigma-inducing", "discriminating"])
    p.add_argument("--a")
    p.add_argument("--b")
    p.set_defaults(func=_cmd_paths)

    p = sub.add_parser("random", help="generate a seeded random dmg document")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--p-dir", type=float, default=0.3, dest="p_dir")
    p.add_argument("--p-bi", type=float, default=0.15, dest="p_bi")
    p.add_argument("--selection", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-selection-children", action="store_true")
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("export-dot", help="emit Graphviz text for a graph document")
    p.add_argument("file")
    p.set_defaults(func=_cmd_export_dot)

    return parser


def cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, DomainError, OracleCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    try:
        return cli(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
