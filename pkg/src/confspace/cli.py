"""Command-line front end: ``confspace <subcommand> ...``.

Exit codes: 0 success, 1 parse error, 2 model precondition failed,
3 internal boundary error, 4 subdivision check failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import braid as br
from .complex import BoundaryError, ComplexError, read_complex, write_complex
from .graph import (GraphError, branched_vertices, check_abrams, essential_vertices,
                    parse_graph, subdivide, sufficient_subdivision)
from .homology import collapse_free_faces, homology
from .models import (ModelDescriptor, ModelPreconditionError, build_model, escalate_nonk,
                     projected_cells)
from .morphism import MorphismError, induced_model_map, induced_homology_map, parse_embedding
from .plane import conf2_forward, conf2_inverse

CELL_LIMIT = 10**7

EXIT_PARSE, EXIT_MODEL, EXIT_INTERNAL, EXIT_CHECK = 1, 2, 3, 4


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    model: dict | None = None
    subdivision: int | None = None
    cell_counts: list[int] = field(default_factory=list)
    homology: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def write(self, path: str) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load_graph(path: str):
    text = _read(path)
    name = "stdin" if path == "-" else Path(path).stem
    return parse_graph(text, name=name), text


def _is_complex(text: str) -> bool:
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            return s.startswith("complex")
    return True


def _add_model_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--model", required=required,
                   choices=["abrams", "abrams-u", "abrams-unlabeled", "swiatkowski", "nonk", "non-k"])
    p.add_argument("-n", type=int, required=required)
    p.add_argument("-k", type=int)
    p.add_argument("--override-check", action="store_true", help="build even if the subdivision check fails")
    p.add_argument("--auto-subdivide", action="store_true")
    p.add_argument("--escalate", action="store_true",
                   help="non-k only: double the subdivision until Betti numbers are stable")
    p.add_argument("--unordered", action="store_true", help="swiatkowski only: unlabeled poset")
    p.add_argument("--force", action="store_true", help=f"allow more than {CELL_LIMIT} projected cells")


def _build(args, g, manifest: RunManifest | None):
    desc = ModelDescriptor(args.model, args.n, args.k, labeled=not args.unordered)
    sub = 1
    if args.auto_subdivide or args.escalate:
        sub = args.n + 1 if desc.kind in ("abrams", "abrams-unlabeled") else args.n
        if desc.kind == "swiatkowski":
            sub = 1
    bound = projected_cells(g, ModelDescriptor(desc.kind, desc.n, desc.k, subdivision=sub))
    if bound > CELL_LIMIT and not args.force:
        raise ModelPreconditionError(f"projected {bound} cells exceeds {CELL_LIMIT}; pass --force")
    if args.escalate:
        if desc.kind != "non-k":
            raise ModelPreconditionError("--escalate applies to the non-k model only")
        x, seg, history = escalate_nonk(g, desc.n, desc.k)
        for s, b in history:
            print(f"# escalation segments={s} betti={b}", file=sys.stderr)
        applied = seg
    else:
        x, desc, report = build_model(g, desc, override=args.override_check, auto_subdivide=args.auto_subdivide)
        applied = report.segments if report else 1
    if not x.faithful:
        print("# warning: subdivision check failed; model may not be faithful", file=sys.stderr)
    if manifest is not None:
        manifest.model = {"kind": desc.kind, "n": desc.n, "k": desc.k, "labeled": desc.labeled}
        manifest.subdivision = applied
        manifest.cell_counts = x.counts()
    return x, desc


def cmd_graph(args) -> int:
    g, _ = _load_graph(args.file)
    if args.action == "validate":
        print(f"vertices {g.num_vertices}")
        print(f"edges {g.num_edges}")
        print("essential " + " ".join(essential_vertices(g)))
        print("branched " + " ".join(branched_vertices(g)))
    else:
        sub, _ = subdivide(g, args.segments)
        sys.stdout.write(sub.to_text())
    return 0


def cmd_check(args) -> int:
    g, _ = _load_graph(args.file)
    if args.auto_subdivide:
        g, report = sufficient_subdivision(g, args.n, "abrams")
        print(f"subdivided: {report.segments} segments per edge")
    report = check_abrams(g, args.n)
    print(report.render())
    return 0 if report.passed else EXIT_CHECK


def cmd_build(args) -> int:
    start = time.perf_counter()
    g, text = _load_graph(args.file)
    manifest = RunManifest(sys.argv[1:] if args.argv is None else args.argv, {args.file: _digest(text)})
    x, desc = _build(args, g, manifest)
    out = write_complex(x, model=desc.kind)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    if args.manifest:
        manifest.wall_time = time.perf_counter() - start
        manifest.write(args.manifest)
    return 0


def _complex_from_args(args, manifest: RunManifest | None):
    text = _read(args.file)
    if manifest is not None:
        manifest.inputs[args.file] = _digest(text)
    if _is_complex(text):
        x = read_complex(text)
        if manifest is not None:
            manifest.cell_counts = x.counts()
        return x
    if not args.model:
        raise GraphError("a graph input needs --model and -n")
    g = parse_graph(text, name="stdin" if args.file == "-" else Path(args.file).stem)
    return _build(args, g, manifest)[0]


def cmd_homology(args) -> int:
    start = time.perf_counter()
    manifest = RunManifest(sys.argv[1:] if args.argv is None else args.argv)
    x = _complex_from_args(args, manifest)
    groups = homology(x)
    lines = [h.machine() if args.machine else str(h) for h in groups]
    for line in lines:
        print(line)
    if args.manifest:
        manifest.homology = [str(h) for h in groups]
        manifest.wall_time = time.perf_counter() - start
        manifest.write(args.manifest)
    return 0


def cmd_euler(args) -> int:
    x = _complex_from_args(args, None)
    print(x.euler_characteristic())
    return 0


def cmd_collapse(args) -> int:
    x = _complex_from_args(args, None)
    y = collapse_free_faces(x)
    print(f"# collapsed {x.counts()} -> {y.counts()}", file=sys.stderr)
    sys.stdout.write(write_complex(y))
    return 0


def cmd_induced(args) -> int:
    src, _ = _load_graph(args.source)
    tgt, _ = _load_graph(args.target)
    emb = parse_embedding(_read(args.embedding), src, tgt)
    desc = ModelDescriptor(args.model, args.n, args.k, labeled=not args.unordered)
    cmap = induced_model_map(emb, desc)
    for k, M in induced_homology_map(cmap).items():
        print(f"H{k}: {M.shape[0]}x{M.shape[1]}")
        for row in M.tolist():
            print("  " + " ".join(str(int(v)) for v in row))
    return 0


def cmd_braid(args) -> int:
    w = br.parse_word(" ".join(args.word), args.strands)
    if args.action == "reduce":
        print(br.free_reduce(w))
    elif args.action == "perm":
        print(br.cycle_notation(br.permutation_image(w)))
    elif args.action == "pure":
        print("true" if br.is_pure(w) else "false")
    elif args.action == "sum":
        print(br.exponent_sum(w))
    else:
        if args.position is None or args.kind is None:
            raise br.BraidError("move needs --position and --kind")
        print(br.apply_relation(w, args.position, args.kind))
    return 0


def cmd_plane(args) -> int:
    v = args.values
    if args.action == "fwd":
        if len(v) != 4:
            raise ValueError("plane fwd takes x1 x2 y1 y2")
        q = conf2_forward(v[0:2], v[2:4])
        print(" ".join(repr(float(c)) for c in (*q.a, q.t, *q.u)))
    else:
        if len(v) != 5:
            raise ValueError("plane inv takes a1 a2 t u1 u2")
        p = conf2_inverse(v[0:2], v[2], v[3:5])
        print(" ".join(repr(float(c)) for c in (*p.x, *p.y)))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="validate or subdivide a graph file")
    p.add_argument("action", choices=["validate", "subdivide"])
    p.add_argument("file")
    p.add_argument("-m", "--segments", type=int, default=2)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("check", help="run the subdivision check for n points")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--auto-subdivide", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="build a discrete model; writes a complex file")
    _add_model_args(p)
    p.add_argument("-o", "--output")
    p.add_argument("--manifest")
    p.add_argument("file")
    p.set_defaults(func=cmd_build)

    for name, func, help_ in (("homology", cmd_homology, "integer homology of a complex or graph model"),
                              ("euler", cmd_euler, "Euler characteristic"),
                              ("collapse", cmd_collapse, "free-face collapse; writes a complex file")):
        p = sub.add_parser(name, help=help_)
        _add_model_args(p, required=False)
        p.add_argument("file", nargs="?", default="-")
        if name == "homology":
            p.add_argument("--machine", action="store_true", help="print 'k betti d1 d2 ...'")
            p.add_argument("--manifest")
        p.set_defaults(func=func)

    p = sub.add_parser("induced", help="homology maps induced by a graph embedding")
    p.add_argument("--embedding", required=True)
    p.add_argument("--model", required=True, choices=["abrams", "abrams-u", "abrams-unlabeled", "swiatkowski", "nonk", "non-k"])
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int)
    p.add_argument("--unordered", action="store_true")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_induced)

    p = sub.add_parser("braid", help="braid word utilities")
    p.add_argument("action", choices=["reduce", "perm", "pure", "sum", "move"])
    p.add_argument("word", nargs="*")
    p.add_argument("--strands", type=int)
    p.add_argument("--position", type=int)
    p.add_argument("--kind", choices=list(br.RELATIONS))
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("plane", help="the Conf_2(R^2) homeomorphism")
    p.add_argument("action", choices=["fwd", "inv"])
    p.add_argument("values", nargs="+", type=float)
    p.set_defaults(func=cmd_plane)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    args.argv = list(argv) if argv is not None else None
    try:
        return args.func(args)
    except (GraphError, ComplexError, br.BraidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ModelPreconditionError, MorphismError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except BoundaryError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
