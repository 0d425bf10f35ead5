"""Command-line interface: ``springer-garside <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error.
Morphism words are comma-separated simple indices; ``^-1`` marks an inverse.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .dataset import DatasetError, load, save
from .garside import ContractError, Morphism
from .properties import positive_path
from .reflection import ConfigurationError
from .verify import SUBGROUP_TABLE, G31Instance, VerifyConfig, hasse_diagram, inclusion_order, verify_g31

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

_TOKEN = re.compile(r"^(\d+)(\^-1)?$")


class UsageError(Exception):
    pass


def parse_word(text: str, n_simples: int) -> list[tuple[int, int]]:
    text = text.strip()
    if not text:
        return []
    out = []
    for pos, tok in enumerate(text.split(","), start=1):
        m = _TOKEN.match(tok.strip())
        if not m:
            raise UsageError(f"malformed token {tok!r} at position {pos}")
        s = int(m.group(1))
        if s >= n_simples:
            raise UsageError(f"simple index {s} at position {pos} is out of range (0..{n_simples - 1})")
        out.append((s, -1 if m.group(2) else 1))
    return out


def fmt(f: Morphism, inst: G31Instance) -> str:
    tgt = inst.garside.target(f)
    body = " ".join(str(s) for s in f.factors)
    head = f"Δ^{f.k}, {len(f.factors)} factors"
    return f"{head}{': ' + body if body else ''} (object {f.source} -> {tgt})"


def _morphism(inst: G31Instance, text: str, source: int | None) -> Morphism:
    g = inst.garside
    word = parse_word(text, inst.data.n_simples)
    if source is not None and not 0 <= source < inst.data.n_objects:
        raise UsageError(f"object {source} is out of range (0..{inst.data.n_objects - 1})")
    if word and source is not None:
        first, sign = word[0]
        start = inst.data.src[first] if sign > 0 else inst.data.tgt[first]
        if start != source:
            raise UsageError(f"word starts at object {start}, not {source}")
    try:
        return g.from_signed_word(word, 0 if source is None else source)
    except ContractError as exc:
        raise UsageError(str(exc)) from exc


def _endo(inst: G31Instance, text: str, source: int | None) -> Morphism:
    x = _morphism(inst, text, source)
    if not inst.garside.is_endo(x):
        raise UsageError("word is not an endomorphism")
    return x


# ---------------------------------------------------------------------------- commands


def cmd_build(args) -> int:
    try:
        inst = G31Instance.build(args.type, args.d)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc
    save(inst.data, args.out)
    d = inst.data
    print(f"wrote {args.out}: {d.n_objects} objects, {d.n_simples} simples, {d.n_relations()} relations")
    return EXIT_OK


def cmd_info(args, inst: G31Instance) -> int:
    d, p = inst.data, inst.data.params
    print(f"type {inst.lattice.system.type_label}")
    print(f"d {p.d} h {p.h} p {p.p} q {p.q} eta {p.eta}")
    print(f"interval {len(inst.lattice)}")
    print(f"objects {d.n_objects}")
    print(f"simples {d.n_simples}")
    print(f"relations {d.n_relations()}")
    print(f"atoms {sum(len(a) for a in d.atoms_of)}")
    return EXIT_OK


def cmd_nf(args, inst: G31Instance) -> int:
    print(fmt(_morphism(inst, args.word, args.source), inst))
    return EXIT_OK


def cmd_swap_orbit(args, inst: G31Instance) -> int:
    x = _endo(inst, args.word, args.source)
    orb = inst.garside.recurrent_orbit(x)
    print(f"recurrent {fmt(orb.recurrent, inst)}")
    print(f"conjugator {fmt(orb.conjugator, inst)}")
    print(f"cycle length {len(orb.cycle)}")
    for y in orb.cycle:
        print(f"  {fmt(y, inst)}")
    return EXIT_OK


def cmd_conj_graph(args, inst: G31Instance) -> int:
    x = _endo(inst, args.word, args.source)
    try:
        graph = inst.garside.positive_conjugates_graph(x, args.limit)
    except ContractError as exc:
        raise UsageError(str(exc)) from exc
    except RuntimeError as exc:
        raise UsageError(f"{exc}; raise --limit (currently {args.limit})") from exc
    print(f"vertices {len(graph.vertices)}")
    for i, v in enumerate(graph.vertices):
        print(f"  v{i} {fmt(v, inst)}")
    print(f"edges {len(graph.edges)}")
    for a, rho, b in sorted(graph.edges, key=lambda e: (e[0], e[1].factors, e[2])):
        print(f"  v{a} -{' '.join(map(str, rho.factors))}-> v{b}")
    return EXIT_OK


def _print_handle(inst: G31Instance, x: Morphism) -> None:
    P = inst.parabolics
    h = P.pc(x)
    z = P.z_element(h.beta, h.base)
    print(f"beta {h.beta}")
    print(f"base {h.base}")
    print(f"conjugator {fmt(h.conjugator, inst)}")
    print(f"z {fmt(P.z_of_handle(h), inst)} (exponent {z.exponent})")


def cmd_pc(args, inst: G31Instance) -> int:
    _print_handle(inst, _endo(inst, args.word, args.source))
    return EXIT_OK


def cmd_z(args, inst: G31Instance) -> int:
    P = inst.parabolics
    if args.beta not in set(inst.data.b):
        raise UsageError(f"beta {args.beta} is not admissible")
    if not 0 <= args.object < inst.data.n_objects or not P.divides_object(args.beta, args.object):
        raise UsageError(f"object {args.object} is not in the parabolic of beta {args.beta}")
    z = P.z_element(args.beta, args.object)
    print(f"exponent {z.exponent}")
    print(f"z {fmt(z.morphism, inst)}")
    return EXIT_OK


def cmd_adjacent(args, inst: G31Instance) -> int:
    g, P = inst.garside, inst.parabolics
    x1 = _endo(inst, args.word1, None)
    x2 = _endo(inst, args.word2, None)
    if x2.source != x1.source:
        f = g.from_simples(x1.source, positive_path(g, x1.source, x2.source))
        x2 = g.conj(x2, g.inv(f))
    h1, h2 = P.pc(x1), P.pc(x2)
    print("true" if P.adjacent(h1, h2) else "false")
    return EXIT_OK


def cmd_verify(args, inst: G31Instance) -> int:
    cfg = VerifyConfig(depth=args.depth, seed=args.seed, samples=args.samples)
    report = verify_g31(inst, cfg, args.suite)
    print(report.format(timings=not args.no_timings))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_lattice(args, inst: G31Instance) -> int:
    ref = inst.reference
    P = inst.parabolics
    print(f"u0 object {ref.k}")
    for c, loop in ref.labels.items():
        print(f"  {c} = {' '.join(map(str, loop.factors))}")
    for row in SUBGROUP_TABLE:
        beta = inst.class_representatives[row.letters]
        rank = inst.data.length[P.delta_beta(beta, ref.k)]
        print(f"<{row.letters or '1'}> {row.type_name} beta {beta} rank {rank}")
    order = [row.letters for row in SUBGROUP_TABLE]
    hasse = hasse_diagram(inclusion_order(inst))
    for a, b in sorted(hasse, key=lambda e: (order.index(e[0]), order.index(e[1]))):
        print(f"  <{a or '1'}> < <{b or '1'}>")
    return EXIT_OK


# ---------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="springer-garside", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct and save a dataset")
    b.add_argument("--type", default="E8")
    b.add_argument("--d", type=int, default=4)
    b.add_argument("--out", required=True)
    b.add_argument("--jobs", type=int, default=1, help="accepted; the build runs serially")

    def with_file(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(run=fn)
        return p

    with_file("info", cmd_info, "counts and parameters")
    for name, fn, help_ in (
        ("nf", cmd_nf, "normal form of a word"),
        ("swap-orbit", cmd_swap_orbit, "recurrent orbit under swap"),
        ("conj-graph", cmd_conj_graph, "graph of positive conjugates"),
        ("pc", cmd_pc, "parabolic closure handle"),
    ):
        p = with_file(name, fn, help_)
        p.add_argument("word")
        p.add_argument("--source", type=int, default=None, help="object for an empty word")
        if name == "conj-graph":
            p.add_argument("--limit", type=int, default=10000)
    z = with_file("z", cmd_z, "z-element of a standard parabolic")
    z.add_argument("beta", type=int)
    z.add_argument("object", type=int)
    a = with_file("adjacent", cmd_adjacent, "curve-graph adjacency of two closures")
    a.add_argument("word1")
    a.add_argument("word2")
    v = with_file("verify", cmd_verify, "run the verification suites")
    v.add_argument("--suite", choices=("golden", "properties", "all"), default="golden")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--depth", type=int, default=6)
    v.add_argument("--samples", type=int, default=500)
    v.add_argument("--jobs", type=int, default=1, help="accepted; checks run serially")
    v.add_argument("--no-timings", action="store_true", help="omit elapsed times for diffable output")
    with_file("lattice", cmd_lattice, "the nine classes of parabolic subgroups")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "build":
            return cmd_build(args)
        path = Path(args.file)
        if not path.exists():
            print(f"error: no such dataset {path}", file=sys.stderr)
            return EXIT_DATA
        inst = G31Instance(load(path))
        return args.run(args, inst)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DatasetError, ConfigurationError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except LookupError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
