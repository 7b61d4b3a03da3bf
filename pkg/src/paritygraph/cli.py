"""Command-line front end for the parity compilation pipeline.

Exit codes: 0 success, 1 negative decision, 2 input error, 3 resource guard.
Inputs are hypergraph JSON files ({"vertices": [...], "edges": [[...], ...]})
or problem files with one interaction term per line (``J a b`` or ``a b``).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .compiled import (
    DEFAULT_BASIS_CAP,
    CompiledHypergraph,
    compile_hypergraph,
    compiled_set,
    default_basis,
    enumerate_bases,
    par_equal,
)
from .errors import InputError, ResourceGuardError, UnsupportedLayoutError
from .gf2 import classify_basis, constraint_space_basis, cycle_basis
from .hypergraph import Graph, Hypergraph, isomorphism
from .labeling import SearchOptions, preimage
from .rect import rect_compile, render_ascii

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


@dataclass
class ProblemSpec:
    """Two-body terms of an Ising-type problem; coefficients are not kept."""

    terms: list[tuple[str, str]] = field(default_factory=list)
    ids: dict[str, int] = field(default_factory=dict)
    notices: list[str] = field(default_factory=list)

    def graph(self) -> Graph:
        return Graph(self.ids.values(), ({self.ids[a], self.ids[b]} for a, b in self.terms))


def parse_problem_spec(text: str) -> ProblemSpec:
    spec = ProblemSpec()
    names: list[str] = []
    pairs: list[tuple[str, str]] = []
    dropped = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for raw in line.split(";"):
            tokens = raw.replace("*", " ").split()
            if not tokens:
                continue
            if len(tokens) == 3 and _NUMBER.match(tokens[0]):
                tokens = tokens[1:]
                dropped += 1
            if len(tokens) != 2:
                raise InputError(f"line {lineno}: expected a two-variable term, got {raw.strip()!r}")
            a, b = tokens
            for t in (a, b):
                if _NUMBER.match(t) and not t.isdigit():
                    raise InputError(f"line {lineno}: {raw.strip()!r} is not a two-variable term")
            if a == b:
                raise InputError(f"line {lineno}: self-interaction {a} {b}")
            pairs.append((a, b))
            for t in (a, b):
                if t not in names:
                    names.append(t)
    if names and all(t.isdigit() and int(t) > 0 for t in names):
        spec.ids = {t: int(t) for t in names}
    else:
        spec.ids = {t: i for i, t in enumerate(names, start=1)}
    seen: set[frozenset[str]] = set()
    for a, b in pairs:
        key = frozenset((a, b))
        if key in seen:
            spec.notices.append(f"warning: duplicate term {a} {b} merged")
            continue
        seen.add(key)
        spec.terms.append((a, b))
    if dropped:
        spec.notices.append(f"note: ignored {dropped} coefficient(s)")
    return spec


def parse_problem(text: str) -> Graph:
    """Graph of a term list: one vertex per variable, one edge per distinct pair."""
    spec = parse_problem_spec(text)
    for msg in spec.notices:
        print(msg, file=sys.stderr)
    return spec.graph()


def load_hypergraph(path: str) -> Hypergraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    if path.endswith(".json") or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc
        if isinstance(data, dict) and "num_vertices" in data:
            return CompiledHypergraph.from_json(data).hypergraph
        h = Hypergraph.from_json(data)
        return h.as_graph() if h.is_graph and h.edges else h
    return parse_problem(text)


def load_graph(path: str) -> Graph:
    h = load_hypergraph(path)
    if isinstance(h, Graph):
        return h
    if not h.edges:
        return Graph(h.vertices, ())
    raise InputError(f"{path}: expected a graph (all edges of size 2)")


def _emit(obj: object) -> None:
    print(json.dumps(obj))


# ---------------------------------------------------------------------------
# subcommands


def cmd_cycles(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    basis = cycle_basis(g)
    _emit({"dim": basis.dim, **basis.to_json()})
    return EXIT_OK


def cmd_constraints(args: argparse.Namespace) -> int:
    h = load_hypergraph(args.input)
    basis = constraint_space_basis(h)
    _emit({"dim": basis.dim, "kind": classify_basis(basis).kind, **basis.to_json()})
    return EXIT_OK


def cmd_compile(args: argparse.Namespace) -> int:
    h = load_hypergraph(args.input)
    if args.basis == "auto":
        basis = default_basis(h)
    else:
        try:
            k = int(args.basis)
        except ValueError as exc:
            raise InputError("--basis takes 'auto' or a basis index") from exc
        bases, _ = enumerate_bases(constraint_space_basis(h), cap=k + 1)
        if not 0 <= k < len(bases):
            raise InputError(f"basis index {k} out of range (there are {len(bases)})")
        basis = bases[k]
    _emit(compile_hypergraph(h, basis).to_json())
    return EXIT_OK


def cmd_compiled_set(args: argparse.Namespace) -> int:
    h = load_hypergraph(args.input)
    cs = compiled_set(h, cap=args.cap, workers=args.threads)
    forms = sorted(cs.forms, key=lambda f: f.key)
    _emit({
        "classes": [f.to_hypergraph().to_json() for f in forms],
        "exhaustive": cs.exhaustive,
        "bases_examined": cs.bases_examined,
    })
    if not cs.exhaustive:
        print(f"basis enumeration stopped at --cap {args.cap}", file=sys.stderr)
        return EXIT_GUARD
    return EXIT_OK


def cmd_par_equal(args: argparse.Namespace) -> int:
    equal = par_equal(load_graph(args.a), load_graph(args.b), cap=args.cap)
    print("equal" if equal else "not equal")
    return EXIT_OK if equal else EXIT_NO


def cmd_preimage(args: argparse.Namespace) -> int:
    p = load_hypergraph(args.layout)
    res = preimage(p, SearchOptions(max_labels=args.max_labels))
    _emit(res.to_json())
    if not res.exhaustive:
        return EXIT_GUARD
    return EXIT_OK if res.graphs else EXIT_NO


def cmd_rect_compile(args: argparse.Namespace) -> int:
    rc = rect_compile(load_graph(args.problem))
    if rc is None:
        print("not complete bipartite", file=sys.stderr)
        return EXIT_NO
    if args.ascii:
        print(render_ascii(rc.layout))
    else:
        _emit(rc.to_json())
    return EXIT_OK


def cmd_iso(args: argparse.Namespace) -> int:
    mapping = isomorphism(load_hypergraph(args.a), load_hypergraph(args.b))
    if mapping is None:
        print("not isomorphic")
        return EXIT_NO
    print("isomorphic")
    print(json.dumps({str(k): v for k, v in sorted(mapping.items())}), file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paritygraph", description="Parity compilation of problem graphs.")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for basis scans")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cycles", help="fundamental cycle basis and dimension of a graph")
    p.add_argument("input")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("constraints", help="constraint-space basis of a hypergraph")
    p.add_argument("input")
    p.set_defaults(func=cmd_constraints)

    p = sub.add_parser("compile", help="compiled hypergraph of one basis")
    p.add_argument("input")
    p.add_argument("--basis", default="auto", help="'auto' (fundamental) or index into the basis enumeration")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("compiled-set", help="isomorphism classes of compiled hypergraphs over all bases")
    p.add_argument("input")
    p.add_argument("--cap", type=int, default=DEFAULT_BASIS_CAP)
    p.set_defaults(func=cmd_compiled_set)

    p = sub.add_parser("par-equal", help="whether two graphs share their compiled hypergraphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--cap", type=int, default=DEFAULT_BASIS_CAP)
    p.set_defaults(func=cmd_par_equal)

    p = sub.add_parser("preimage", help="graphs compiling to a layout")
    p.add_argument("layout")
    p.add_argument("--max-labels", type=int, default=SearchOptions.max_labels)
    p.set_defaults(func=cmd_preimage)

    p = sub.add_parser("rect-compile", help="compile onto a rectangular plaquette layout")
    p.add_argument("problem")
    p.add_argument("--ascii", action="store_true", help="draw the grid instead of JSON")
    p.set_defaults(func=cmd_rect_compile)

    p = sub.add_parser("iso", help="hypergraph isomorphism test")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, UnsupportedLayoutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    raise SystemExit(main())
