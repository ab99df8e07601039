"""Command line front end.

Subcommands mirror the library layers: `analyze` and `canonical` work on an
explicit polynomial read from a file, `generate` and `pipeline` build seeded
random curves with prescribed singularities, `reproduce-table` replays the
built-in fixture tables, and `betti` resolves an arbitrary homogeneous ideal.

Exit codes: 0 success, 1 usage error, 2 the run produced only failures.
"""

from __future__ import annotations

import argparse
import sys

from .adjoint import adjoint_basis, canonical_ideal, substitution_check, validate_canonical
from .fixtures import FIXTURES, LARGE_GENUS_CUTOFF
from .groebner import GroebnerBasis
from .harness import (
    GenerationError,
    _encode_betti,
    generate_curve,
    parse_config,
    place_points,
    reproduce_table,
    run_pipeline,
)
from .poly import Ring
from .resolution import (
    betti_table,
    diagram_text,
    duality_check,
    first_strand,
    free_resolution,
    sequence_a,
    strand_nonzero_count,
)
from .singular import analyze


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the record contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _read_source(path: str) -> tuple[int | None, list[str] | None, list[str]]:
    p = None
    names = None
    body: list[str] = []
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ValueError(str(e)) from None
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split("=", 1)[0].strip()
        if head == "p":
            p = int(line.split("=", 1)[1])
        elif head == "vars":
            names = [v.strip() for v in line.split("=", 1)[1].split(",") if v.strip()]
        else:
            body.append(line)
    return p, names, body


def _read_poly(path: str):
    p, names, body = _read_source(path)
    if p is None:
        raise ValueError(f"{path}: missing 'p=<prime>' header")
    if not body:
        raise ValueError(f"{path}: no polynomial found")
    ring = Ring(p, names or ["x", "y", "z"])
    return ring, ring.parse(" ".join(body))


def _read_ideal(path: str):
    p, names, body = _read_source(path)
    if p is None:
        raise ValueError(f"{path}: missing 'p=<prime>' header")
    if not body:
        raise ValueError(f"{path}: no generators found")
    ring = Ring(p, names or ["x", "y", "z"])
    return ring, [ring.parse(line) for line in body]


def _guard_genus(genus: int, allow_large: bool, parser: argparse.ArgumentParser):
    if genus < 3:
        parser.error(f"genus {genus} is out of range: the canonical model needs genus >= 3")
    if genus == 3:
        print(
            "warning: genus 3 gives a plane quartic canonical model; "
            "the Betti table is a single relation",
            file=sys.stderr,
        )
    if genus >= LARGE_GENUS_CUTOFF:
        if not allow_large:
            parser.error(
                f"genus {genus} needs --allow-large (resolutions this size can take hours)"
            )
        print(f"warning: genus {genus} run may take a very long time", file=sys.stderr)


def _seq(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _pt(P) -> str:
    return "({}:{}:{})".format(*P)


def _print_analysis(rep) -> None:
    geo = rep.geometry
    print(f"degree={geo.degree} reduced={str(rep.reduced).lower()}")
    if not rep.reduced:
        print("check=4 verdict=unknown (non-reduced curves are not analyzed further)")
        return
    if rep.singularities:
        for s in rep.singularities:
            tangent = f" tangent={_pt(s.tangent)}" if s.tangent else ""
            print(f"singular {_pt(s.location)} {s.label()}{tangent} delta={s.delta}")
    else:
        print("no rational singular points")
    chk = rep.check
    print(f"check1={chk.check1} check2={chk.check2} check={chk.check}")
    print(f"delta={geo.delta_total} genus={geo.genus} flag_b={str(rep.flag_b).lower()}")
    irr = "-" if geo.irreducible is None else str(geo.irreducible).lower()
    print(f"irreducible={irr} verdict={geo.verdict}")
    if geo.witness is not None:
        print(f"factor: {geo.witness}")


def cmd_analyze(args, parser) -> int:
    try:
        ring, F = _read_poly(args.file)
    except ValueError as e:
        parser.error(str(e))
    print(f"p={ring.p}")
    _print_analysis(analyze(F))
    return 0


def cmd_canonical(args, parser) -> int:
    try:
        ring, F = _read_poly(args.file)
    except ValueError as e:
        parser.error(str(e))
    rep = analyze(F)
    if not rep.reduced:
        print("error: the curve is not reduced", file=sys.stderr)
        return 2
    genus = rep.geometry.genus
    _guard_genus(genus, args.allow_large, parser)
    adj = adjoint_basis(F, rep.singularities)
    ideal = canonical_ideal(F, adj)
    val = validate_canonical(ideal)
    val["substitution"] = substitution_check(F, adj, ideal)
    print(f"p={ring.p} degree={F.degree()} genus={genus}")
    print(
        f"adjoints: degree={adj.degree} dimension={len(adj.basis)} "
        f"expected={adj.expected_dimension}"
    )
    print(f"ambient: {ideal.ambient.nvars} variables, {len(ideal.generators)} generators")
    for g in ideal.generators:
        print(f"  {g}")
    checks = " ".join(f"{k}={str(bool(v)).lower()}" for k, v in sorted(val.items()))
    print(f"validation: {checks}")
    g = ideal.genus
    if args.method == "exact" or (args.method == "auto" and g <= 4):
        res = free_resolution(GroebnerBasis(ideal.ambient, ideal.generators))
    else:
        res = betti_table(ideal.ambient, ideal.generators)
    a = sequence_a(res, g)
    print(
        f"betti={_encode_betti(res)} a={_seq(a)} strand={_seq(first_strand(res, g))} "
        f"twoLP={strand_nonzero_count(res, g)} duality={str(duality_check(res, g)).lower()}"
    )
    if args.diagram:
        print(diagram_text(res))
    return 0


def _parse_placement(text: str, count: int, p: int):
    if text == "default":
        return None
    if text == "collinear":
        return place_points(count, p, variant="collinear")
    pts = []
    for chunk in text.replace("),(", ");(").split(";"):
        chunk = chunk.strip().strip("()")
        xs = [int(v) for v in chunk.split(":")]
        if len(xs) != 3:
            raise ValueError(f"bad point {chunk!r}")
        pts.append(tuple(x % p for x in xs))
    return pts


def cmd_generate(args, parser) -> int:
    try:
        cfg = parse_config(args.config)
        placement = (
            _parse_placement(args.placement, len(cfg), args.p)
            if args.placement
            else None
        )
    except ValueError as e:
        parser.error(str(e))
    try:
        gen = generate_curve(
            args.p, args.f, cfg, placement=placement, seed=args.seed, budget=args.budget
        )
    except (GenerationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(f"p={args.p} f={args.f} config={cfg.text} seed={gen.seed} attempts={gen.attempts}")
    print(f"F = {gen.F}")
    for (kind, m), P in zip(cfg.atoms, gen.points):
        tangent = f" tangent={_pt(gen.tangents[P])}" if P in gen.tangents else ""
        print(f"point {_pt(P)} {kind}{m}{tangent}")
    print(f"mismatch={str(gen.mismatch).lower()}")
    if gen.mismatch:
        for s in gen.achieved:
            print(f"achieved {_pt(s.location)} {s.label()}")
    return 0


def cmd_pipeline(args, parser) -> int:
    try:
        cfg = parse_config(args.config)
        placement = (
            _parse_placement(args.placement, len(cfg), args.p)
            if args.placement
            else None
        )
    except ValueError as e:
        parser.error(str(e))
    _guard_genus(cfg.genus(args.f), args.allow_large, parser)
    if args.seed is not None and args.trials != 1:
        parser.error("--seed fixes a single run; use --seed-base with --trials")
    seeds = [args.seed] if args.seed is not None else [
        args.seed_base + t for t in range(args.trials)
    ]
    reports = []
    sink = open(args.out, "w") if args.out else None
    try:
        for seed in seeds:
            rep = run_pipeline(
                args.p, args.f, cfg, placement=placement, seed=seed,
                budget=args.budget, method=args.method,
            )
            reports.append(rep)
            print(rep.line())
            if args.diagram and rep.diagram:
                print(rep.diagram)
            if sink:
                sink.write(rep.line(include_ms=False) + "\n")
    finally:
        if sink:
            sink.close()
    if all(r.stage != "done" for r in reports):
        return 2
    return 0


def cmd_reproduce(args, parser) -> int:
    if args.genus not in FIXTURES:
        low, high = min(FIXTURES), max(FIXTURES)
        parser.error(f"no built-in fixtures for genus {args.genus} (tables cover {low}..{high})")
    chars = None
    if args.chars:
        try:
            chars = tuple(int(c) for c in args.chars.split(","))
        except ValueError:
            parser.error(f"bad characteristic list {args.chars!r}")
    summary = reproduce_table(
        args.genus, chars=chars, trials=args.trials,
        seed_base=args.seed_base, budget=args.budget, method=args.method,
    )
    sink = open(args.out, "w") if args.out else None
    try:
        for rep in summary.reports:
            print(rep.line())
            if sink:
                sink.write(rep.line(include_ms=False) + "\n")
    finally:
        if sink:
            sink.close()
    for o in summary.outcomes:
        label = o.fixture.config or "{}"
        seqs = ", ".join(
            f"{_seq(a)}x{n}" for a, n in sorted(o.observed.items())
        ) or "none clean"
        state = "PASS" if o.passed else "FAIL"
        print(f"fixture {label}: observed {seqs} -> {state}")
    print(f"genus {args.genus} table: {'PASS' if summary.passed else 'FAIL'}")
    return 0 if summary.passed else 2


def cmd_betti(args, parser) -> int:
    try:
        ring, gens = _read_ideal(args.file)
    except ValueError as e:
        parser.error(str(e))
    if args.method == "koszul":
        try:
            res = betti_table(ring, gens)
        except ArithmeticError as e:
            print(f"error: {e}; retry with --method exact", file=sys.stderr)
            return 2
    else:
        res = free_resolution(GroebnerBasis(ring, gens))
    print(f"betti={_encode_betti(res)}")
    if args.diagram:
        print(diagram_text(res))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cancurve", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="singularity report for a plane curve")
    pa.add_argument("file", help="curve file: 'p=' header then the polynomial")
    pa.set_defaults(func=cmd_analyze)

    pc = sub.add_parser("canonical", help="canonical ideal and Betti data of a curve")
    pc.add_argument("file")
    pc.add_argument("--diagram", action="store_true", help="print the dot grid")
    pc.add_argument("--method", choices=("auto", "exact", "koszul"), default="auto")
    pc.add_argument("--allow-large", action="store_true")
    pc.set_defaults(func=cmd_canonical)

    pg = sub.add_parser("generate", help="random curve with prescribed singularities")
    pg.add_argument("-p", type=int, required=True, help="prime characteristic")
    pg.add_argument("-f", type=int, required=True, help="curve degree")
    pg.add_argument("-c", "--config", required=True, help="e.g. R2^4, D4*R3, {}")
    pg.add_argument("--seed", type=int)
    pg.add_argument("--placement", help="default, collinear, or explicit points")
    pg.add_argument("--budget", type=int, default=32, help="retry budget")
    pg.set_defaults(func=cmd_generate)

    pp = sub.add_parser("pipeline", help="generate and run the full record pipeline")
    pp.add_argument("-p", type=int, required=True)
    pp.add_argument("-f", type=int, required=True)
    pp.add_argument("-c", "--config", required=True)
    pp.add_argument("--seed", type=int, help="single explicit seed")
    pp.add_argument("--trials", type=int, default=1)
    pp.add_argument("--seed-base", type=int, default=0)
    pp.add_argument("--placement")
    pp.add_argument("--budget", type=int, default=32)
    pp.add_argument("--method", choices=("auto", "exact", "koszul"), default="auto")
    pp.add_argument("--out", help="also write ms-free records to this file")
    pp.add_argument("--diagram", action="store_true")
    pp.add_argument("--allow-large", action="store_true")
    pp.set_defaults(func=cmd_pipeline)

    pr = sub.add_parser("reproduce-table", help="replay the built-in table fixtures")
    pr.add_argument("-g", "--genus", type=int, required=True)
    pr.add_argument("--chars", help="comma-separated characteristics, e.g. 5,7")
    pr.add_argument("--trials", type=int)
    pr.add_argument("--seed-base", type=int, default=0)
    pr.add_argument("--budget", type=int, default=32)
    pr.add_argument("--method", choices=("auto", "exact", "koszul"), default="auto")
    pr.add_argument("--out")
    pr.add_argument("--allow-large", action="store_true")
    pr.set_defaults(func=cmd_reproduce)

    pb = sub.add_parser("betti", help="Betti table of a homogeneous ideal")
    pb.add_argument("file", help="ideal file: 'p=', 'vars=' headers, one generator per line")
    pb.add_argument("--diagram", action="store_true")
    pb.add_argument("--method", choices=("exact", "koszul"), default="exact")
    pb.set_defaults(func=cmd_betti)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (GenerationError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
