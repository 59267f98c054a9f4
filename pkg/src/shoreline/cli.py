"""Command-line entry point.

Exit codes: 0 everything passed, 1 a theorem check failed, 2 bad input or an
unmet precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import diagram_ops, spaces, theorems
from .filtration import GenericityError, VertexFunction, perturb, read_values, write_values
from .persistence import Pass, PersistenceDiagram, compute_diagram
from .simplicial import ConstructionError, Decomposition, MalformedInput, SimplicialComplex, read_complex, write_complex

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
GENERATORS = ("sphere", "solid-torus", "annulus-cx", "disk-pair", "random", "terrain")


class InputError(Exception):
    """Anything that should end the run with exit code 2."""


@dataclass
class RunConfig:
    command: str
    inputs: list[Path] = field(default_factory=list)
    output: Path | None = None
    seed: int = 0
    keep_diagonal: bool = False
    tolerance: float = 0.0
    count: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        inputs = [Path(p) for p in (getattr(args, "complex", None), getattr(args, "values", None),
                                    getattr(args, "input", None), getattr(args, "instance", None)) if p and p != "-"]
        cfg = cls(args.command, inputs, Path(args.out) if getattr(args, "out", None) else None,
                  args.seed, getattr(args, "keep_diagonal", False), getattr(args, "tolerance", 0.0),
                  getattr(args, "count", 0))
        for p in cfg.inputs:
            if not p.exists():
                raise InputError(f"{p}: no such file or directory")
        return cfg


def _read(path: str | Path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _parse(path, parser):
    try:
        return parser(_read(path))
    except MalformedInput as exc:
        raise InputError(f"{path}: {exc}") from None


# instance directories ------------------------------------------------------


def write_instance(inst: spaces.GeneratedInstance, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    dec = inst.dec
    (out / "ambient.complex").write_text(write_complex(dec.ambient, "ambient sphere"))
    (out / "u.complex").write_text(write_complex(dec.u, "U"))
    (out / "v.complex").write_text(write_complex(dec.v, "V"))
    (out / "m.complex").write_text(write_complex(dec.m, "M, the intersection of U and V"))
    (out / "values.csv").write_text(write_values(inst.f))
    meta = {"kind": "decomposition", "label": inst.label, "n": inst.n,
            "ambient_manifold_dim": dec.ambient_manifold_dim, "seed": inst.seed, "extra": inst.extra}
    (out / "instance.json").write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")


def write_region(region: spaces.Region, out: Path, label: str) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "a.complex").write_text(write_complex(region.a, "region A"))
    (out / "box.complex").write_text(write_complex(region.box, "bounding box"))
    (out / "values.csv").write_text(write_values(region.e))
    meta = {"kind": "region", "label": label, "n": region.n}
    (out / "instance.json").write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")


def read_instance(path: Path):
    meta = _parse(path / "instance.json", json.loads)
    f = _parse(path / "values.csv", read_values)
    if meta.get("kind") == "region":
        a = _parse(path / "a.complex", read_complex)
        box = _parse(path / "box.complex", read_complex)
        nv = box.n_vertices
        return spaces.Region(_widen(a, nv), f, int(meta["n"]), box)
    ambient = _parse(path / "ambient.complex", read_complex)
    nv = ambient.n_vertices
    u = _widen(_parse(path / "u.complex", read_complex), nv)
    v = _widen(_parse(path / "v.complex", read_complex), nv)
    dec = Decomposition(ambient, u, v, u.intersection(v), int(meta["ambient_manifold_dim"]))
    try:
        dec.validate()
    except ConstructionError as exc:
        raise InputError(f"{path}: invalid decomposition: {exc}") from None
    return spaces.GeneratedInstance(dec, f, dec.n, meta.get("label", str(path)), meta.get("seed"), meta.get("extra", {}))


def _widen(k: SimplicialComplex, n_vertices: int) -> SimplicialComplex:
    if k.n_vertices > n_vertices:
        raise InputError("subcomplex uses vertices outside the ambient complex")
    return SimplicialComplex(k.simplices, n_vertices)


def generate(name: str, args: argparse.Namespace):
    if name == "solid-torus":
        return spaces.solid_torus_decomposition()
    if name == "annulus-cx":
        return spaces.annulus_counterexample()
    if name == "disk-pair":
        return spaces.disk_pair_decomposition()
    if name == "random":
        return spaces.random_decomposition(args.dim or 2, args.seed)
    if name == "terrain":
        if not args.mask:
            raise InputError("terrain needs --mask FILE")
        grid = _parse(args.mask, spaces.read_mask)
        try:
            if isinstance(grid[0][0], list):
                return spaces.voxel_region(grid)
            return spaces.terrain_region(grid, args.axis)
        except MalformedInput as exc:
            raise InputError(f"{args.mask}: {exc}") from None
    raise InputError(f"unknown generator {name!r}")


# output helpers --------------------------------------------------------------


def plot_position(value: float, pass_: Pass) -> float:
    """Two copies of the range side by side: ascending values, then descending ones mirrored."""
    return value if pass_ is Pass.ASC else 2.0 - value


def plot_csv(dgm: PersistenceDiagram, keep_diagonal: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "dim", "subdiagram"])
    for d in dgm.dots if keep_diagonal else dgm.without_diagonal().dots:
        w.writerow([repr(plot_position(d.birth_value, d.birth_pass)),
                    repr(plot_position(d.death_value, d.death_pass)), d.dim, d.subdiagram.value])
    return buf.getvalue()


def pretty(dgm: PersistenceDiagram, keep_diagonal: bool) -> str:
    dots = dgm.dots if keep_diagonal else dgm.without_diagonal().dots
    lines = [f"# {dgm.source or 'diagram'} (n={dgm.n}); * marks the descending pass"]
    lines.append(f"{'dim':>4}  {'subdiagram':<10}  {'birth':>12}  {'death':>12}")
    for d in dots:
        b = f"{d.birth_value:.6g}{'*' if d.birth_pass is Pass.DESC else ' '}"
        e = f"{d.death_value:.6g}{'*' if d.death_pass is Pass.DESC else ' '}"
        lines.append(f"{d.dim:>4}  {d.subdiagram.value:<10}  {b:>12}  {e:>12}")
    return "\n".join(lines) + "\n"


def _emit(report: theorems.CheckReport, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(report.to_json())
    else:
        print(report.summary())
        for d in report.failures[:20]:
            print("  " + json.dumps(d, default=str))
    if report.precondition_failed:
        return EXIT_INPUT
    return EXIT_OK if report.passed else EXIT_FAIL


# commands ------------------------------------------------------------------------


def cmd_diagram(args) -> int:
    k = _parse(args.complex, read_complex)
    f = _parse(args.values, read_values)
    if args.restrict:
        sub = _parse(args.restrict, read_complex)
        if sub.is_empty():
            raise InputError(f"{args.restrict}: restriction is empty")
        if not SimplicialComplex(sub.simplices, max(sub.n_vertices, k.n_vertices)).is_subcomplex_of(
                SimplicialComplex(k.simplices, max(sub.n_vertices, k.n_vertices))):
            raise InputError(f"{args.restrict}: not a subcomplex of {args.complex}")
        k = sub
    if k.is_empty():
        raise InputError(f"{args.complex}: empty complex")
    if len(f) < k.n_vertices:
        raise InputError(f"{args.values}: {len(f)} values for {k.n_vertices} vertices")
    vals = f.on(k)
    if len(set(vals)) != len(vals):
        if args.no_perturb:
            raise InputError("vertex values are not distinct (drop --no-perturb to break ties)")
        f = perturb(f)
        print(f"note: tied values broken by perturbation of scale 2^-30 of the range", file=sys.stderr)
    source = f"{Path(args.complex).name}" + (f" restricted to {Path(args.restrict).name}" if args.restrict else "")
    dgm = compute_diagram(k, f, n=args.n, source=source)
    if args.emit_plot_csv:
        sys.stdout.write(plot_csv(dgm, args.keep_diagonal))
    elif args.pretty:
        sys.stdout.write(pretty(dgm, args.keep_diagonal))
    else:
        sys.stdout.write(dgm.to_json(args.keep_diagonal))
    return EXIT_OK


def _decomposition_instance(args) -> spaces.GeneratedInstance:
    if args.instance:
        inst = read_instance(Path(args.instance))
        if isinstance(inst, spaces.Region):
            raise InputError("this check needs a decomposition instance, not a region")
        return inst
    return generate(args.gen or "solid-torus", args)


def cmd_check(args) -> int:
    name = args.theorem
    if name == "counterexample":
        report = theorems.demonstrate_counterexample()
        if not args.json:
            dots = report.details[0].get("m_dots", [])
            print("values " + json.dumps(report.details[0].get("values", {}), sort_keys=True))
            print("Dgm(f|M): " + ", ".join(dots))
            print("Dgm(f|U): " + ", ".join(report.details[1].get("u_dots", [])))
        return _emit(report, args.json)
    if name == "euclid":
        if args.instance:
            region = read_instance(Path(args.instance))
            if not isinstance(region, spaces.Region):
                raise InputError("euclid needs a region instance")
        elif args.mask:
            args.gen = "terrain"
            region = generate("terrain", args)
        else:
            raise InputError("euclid needs --mask FILE or --instance DIR")
        try:
            return _emit(theorems.check_euclidean_shore(region.a, region.e, region.n, region.box), args.json)
        except MalformedInput as exc:
            raise InputError(str(exc)) from None
    inst = _decomposition_instance(args)
    dec, f = inst.dec, inst.f
    if name == "betti":
        if not theorems.morse_report(dec.ambient, f, dec.ambient_manifold_dim).ok:
            report = theorems.CheckReport("betti-relations", precondition_failed=True, passed=False)
            report.details.append({"ok": False, "precondition": "perfect Morse"})
        else:
            report = theorems.check_betti_relations(dec, f, args.t)
    elif name == "land-water":
        report = theorems.check_land_and_water(dec, f)
    elif name == "shore":
        try:
            report = theorems.check_general_shore(dec, f)
        except (theorems.UnsupportedDimension, ConstructionError) as exc:
            raise InputError(str(exc)) from None
    else:
        raise InputError(f"unknown theorem {name!r}")
    return _emit(report, args.json)


def _corpus_row(job: tuple[int, int, bool]) -> tuple[int, dict | str]:
    dim, seed, betti_relations = job
    try:
        inst = spaces.random_decomposition(dim, seed)
    except ConstructionError as exc:
        return seed, str(exc)
    rep = theorems.check_all(inst.dec, inst.f, inst.label, betti_relations=betti_relations)
    cols = {}
    for d in rep.details:
        key = d.get("check", "precondition").split(":")[0]
        cols[key] = cols.get(key, True) and d["ok"]
    return seed, cols


def cmd_corpus(args) -> int:
    if args.count < 1:
        raise InputError("--count must be at least 1")
    jobs = [(args.dim, args.seed + i, not args.skip_betti) for i in range(args.count)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            rows = list(ex.map(_corpus_row, jobs))
    else:
        rows = [_corpus_row(j) for j in jobs]
    rows.sort()
    names = ["betti-relations", "point-calculus", "land-and-water", "general-shore", "poincare"]
    if args.skip_betti:
        names.remove("betti-relations")
    print("seed  " + "  ".join(names))
    failures = gen_errors = 0
    for seed, cols in rows:
        if isinstance(cols, str):
            gen_errors += 1
            print(f"{seed:<4}  generation error: {cols}")
            continue
        cells = ["PASS" if cols.get(n, False) else "FAIL" for n in names]
        failures += "FAIL" in cells
        print(f"{seed:<4}  " + "  ".join(c.ljust(len(n)) for c, n in zip(cells, names)).rstrip())
    print(f"instances {len(rows)}  theorem failures {failures}  generation errors {gen_errors}")
    if failures:
        return EXIT_FAIL
    return EXIT_INPUT if gen_errors else EXIT_OK


def cmd_transform(args) -> int:
    dgm = _parse(args.input, PersistenceDiagram.from_json)
    op = args.op
    if op == "reflect":
        n = args.n if args.n is not None else dgm.n
        if n is None:
            raise InputError("reflect needs --n (the document has no n)")
        out = diagram_ops.reflect(dgm, n)
    elif op == "cascade":
        try:
            out, _ = diagram_ops.cascade(dgm, args.lo, args.hi)
        except (ValueError, GenericityError) as exc:
            raise InputError(str(exc)) from None
    elif op == "reduce":
        try:
            out = diagram_ops.reduced_diagram(dgm, args.lo, args.hi)
        except (ValueError, GenericityError) as exc:
            raise InputError(str(exc)) from None
    elif op == "union":
        if not args.other:
            raise InputError("union needs a second diagram file")
        out = diagram_ops.disjoint_union(dgm, _parse(args.other, PersistenceDiagram.from_json))
    else:
        raise InputError(f"unknown transform {op!r}")
    sys.stdout.write(out.to_json(args.keep_diagonal))
    return EXIT_OK


def cmd_gen(args) -> int:
    out = Path(args.out)
    name = args.generator
    if name == "sphere":
        s, f = spaces.sphere_instance(args.dim or 2)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sphere.complex").write_text(write_complex(s, f"cross-polytope sphere of dimension {args.dim or 2}"))
        (out / "values.csv").write_text(write_values(f))
    else:
        inst = generate(name, args)
        if isinstance(inst, spaces.Region):
            write_region(inst, out, Path(args.mask).stem)
        else:
            write_instance(inst, out)
    print(f"wrote {name} instance to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("SHORELINE_SEED", "0"))
    p = argparse.ArgumentParser(prog="shoreline", description="Extended persistence and duality checks on PL functions.")
    p.add_argument("--seed", type=int, default=default_seed, help="seed (default: $SHORELINE_SEED or 0)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diagram", help="extended persistence diagram of a vertex function")
    d.add_argument("complex")
    d.add_argument("values")
    d.add_argument("--restrict", metavar="SUBCOMPLEX")
    d.add_argument("--n", type=int, default=None, help="manifold dimension recorded in the output")
    d.add_argument("--no-perturb", action="store_true")
    d.add_argument("--keep-diagonal", action="store_true")
    d.add_argument("--pretty", action="store_true")
    d.add_argument("--emit-plot-csv", action="store_true")

    c = sub.add_parser("check", help="run one theorem check")
    c.add_argument("theorem", choices=["betti", "land-water", "shore", "euclid", "counterexample"])
    c.add_argument("--gen", choices=[g for g in GENERATORS if g not in ("sphere", "terrain")])
    c.add_argument("--instance", metavar="DIR")
    c.add_argument("--dim", type=int, default=None)
    c.add_argument("--seed", type=int, default=default_seed)
    c.add_argument("--mask", metavar="FILE")
    c.add_argument("--axis", default="y", choices=["x", "y"])
    c.add_argument("--t", type=float, default=None, help="single regular value for the betti check")
    c.add_argument("--json", action="store_true")

    k = sub.add_parser("corpus", help="random decompositions through every check")
    k.add_argument("--dim", type=int, default=2, choices=[2, 3])
    k.add_argument("--count", type=int, default=20)
    k.add_argument("--seed", type=int, default=default_seed)
    k.add_argument("--workers", type=int, default=1)
    k.add_argument("--skip-betti", action="store_true")

    t = sub.add_parser("transform", help="apply a diagram transform")
    t.add_argument("op", choices=["reflect", "cascade", "reduce", "union"])
    t.add_argument("input", help="diagram JSON file or - for stdin")
    t.add_argument("other", nargs="?", help="second diagram for union")
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--lo", type=float, default=0.0)
    t.add_argument("--hi", type=float, default=1.0)
    t.add_argument("--keep-diagonal", action="store_true")

    g = sub.add_parser("gen", help="write a generated instance to a directory")
    g.add_argument("generator", choices=GENERATORS)
    g.add_argument("--out", required=True)
    g.add_argument("--dim", type=int, default=None)
    g.add_argument("--seed", type=int, default=default_seed)
    g.add_argument("--mask", metavar="FILE")
    g.add_argument("--axis", default="y", choices=["x", "y"])
    return p


COMMANDS = {"diagram": cmd_diagram, "check": cmd_check, "corpus": cmd_corpus,
            "transform": cmd_transform, "gen": cmd_gen}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        RunConfig.from_args(args)
        return COMMANDS[args.command](args)
    except (InputError, MalformedInput, GenericityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
