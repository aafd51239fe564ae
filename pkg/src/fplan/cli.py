"""Command-line front door: solve, augment, pareto, render.

Exit codes: 0 success, 1 usage or input error, 2 finished but found no
legal solution. Every subcommand is deterministic for identical flags and
inputs; all configuration is flags (no environment variables).
"""

import argparse
import os
import sys

from . import benchgen, io as fio
from .annealer import AnnealConfig
from .core import Block, DomainError, Problem, Terminal, validate_problem
from .cost import CASA, CLASSICAL, CostWeights, total_cost
from .parallel import PoolConfig, pareto_front, run_pool, solution_whitespace_pct


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"{self.prog}: error: {message}")


def _build_parser():
    parser = _Parser(prog="fplan", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the annealing pool on a benchmark")
    solve.add_argument("--blocks", required=True)
    solve.add_argument("--nets", required=True)
    solve.add_argument("--pl", required=True)
    solve.add_argument("--constraints")
    solve.add_argument("--outline", help="WxH, or 'auto' for a square with "
                                         "10%% whitespace over the block area")
    solve.add_argument("--mode", choices=[CASA, CLASSICAL], default=CASA)
    shape = solve.add_mutually_exclusive_group(required=True)
    shape.add_argument("--soft", action="store_true",
                       help="let block aspect ratios vary in [1/3, 3]")
    shape.add_argument("--hard", action="store_true",
                       help="freeze block shapes (no aspect-ratio moves)")
    solve.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    solve.add_argument("--steps", type=int, default=10_000_000)
    solve.add_argument("--seed", type=int, default=0)
    for flag, default in (("alpha", 1.0), ("beta", 0.0), ("gamma", 10.0),
                          ("eta", 10.0), ("zeta", 10.0), ("theta", 10.0),
                          ("mu", 10.0)):
        solve.add_argument(f"--{flag}", type=float, default=default)
    solve.add_argument("--out", required=True, help="records file (.jsonl)")

    augment = sub.add_parser("augment", help="generate a constraints file "
                                             "for an unconstrained benchmark")
    augment.add_argument("--blocks", required=True)
    augment.add_argument("--pl", required=True)
    augment.add_argument("--seed", type=int, default=0)
    augment.add_argument("--out", required=True)

    pareto = sub.add_parser("pareto", help="merge records and emit the legal "
                                           "Pareto front")
    pareto.add_argument("--records", nargs="+", required=True)
    pareto.add_argument("--out", required=True)
    pareto.add_argument("--plot", help="optional scatter SVG")

    render = sub.add_parser("render", help="draw one recorded floorplan as SVG")
    render.add_argument("--records", required=True)
    render.add_argument("--index", type=int, required=True)
    render.add_argument("--blocks", required=True)
    render.add_argument("--constraints")
    render.add_argument("--out", required=True)
    return parser


def _load_problem(args):
    bundle = fio.BookshelfBundle(blocks=args.blocks, nets=args.nets, pl=args.pl)
    problem = fio.parse_bookshelf(bundle)
    if args.soft:
        problem = fio.soften_blocks(problem)

    outline = None
    if args.constraints:
        cf = fio.parse_constraints(args.constraints, problem)
        problem = problem.with_constraints(cf.constraints)
        outline = cf.outline
    if args.outline == "auto":
        outline = benchgen.derive_fixed_outline(problem)
    elif args.outline:
        try:
            w, h = args.outline.lower().split("x")
            outline = (float(w), float(h))
        except ValueError:
            raise DomainError(f"--outline must be WxH or 'auto', "
                              f"got {args.outline!r}") from None
    if outline is not None:
        problem = problem.with_constraints(problem.constraints, outline)
    issues = validate_problem(problem)
    if issues:
        raise DomainError("invalid problem:\n" + "\n".join(str(i) for i in issues))
    return problem


def _cmd_solve(args):
    problem = _load_problem(args)
    config = AnnealConfig(
        steps=args.steps,
        mode=args.mode,
        weights=CostWeights(alpha=args.alpha, beta=args.beta, gamma=args.gamma,
                            eta=args.eta, zeta=args.zeta, theta=args.theta,
                            mu=args.mu),
        hard_blocks=args.hard,
    )
    pool = PoolConfig(n_workers=args.workers, base_seed=args.seed, anneal=config)
    records = run_pool(problem, pool)
    fio.write_records(records, args.out)

    failed = [r for r in records if not r.ok]
    legal = [r for r in records if r.ok and r.report.legal]
    print(f"workers: {len(records)}  legal: {len(legal)}  failed: {len(failed)}")
    for r in records:
        if r.ok:
            rep = r.report
            print(f"  seed {r.seed}: hpwl {rep.hpwl:.3f}  "
                  f"whitespace {solution_whitespace_pct(r):.2f}%  "
                  f"boundary violations {rep.boundary_violation_count}  "
                  f"split groups {sum(1 for z in rep.group_clusters if z > 1)}  "
                  f"outline overflow {rep.outline_overflow:.3f}  "
                  f"{'legal' if rep.legal else 'illegal'}")
        else:
            print(f"  seed {r.seed}: FAILED")
    if not legal:
        print("no legal solution found")
        return 2
    best = min(legal, key=lambda r: r.report.hpwl)
    print(f"best legal: seed {best.seed}  hpwl {best.report.hpwl:.3f}  "
          f"whitespace {solution_whitespace_pct(best):.2f}%")
    print(f"records written to {args.out}")
    return 0


def _cmd_augment(args):
    specs, term_names, _ = fio.parse_blocks_file(args.blocks)
    blocks = []
    for i, (name, area, ar_min, ar_max, soft) in enumerate(specs):
        ar = min(max(1.0, ar_min), ar_max)
        blocks.append(Block(id=i, name=name, area=area, aspect_ratio=ar,
                            ar_min=ar_min, ar_max=ar_max, is_soft=soft))
    positions = fio.parse_pl_file(args.pl)
    terminals = tuple(Terminal(n, *positions[n]) for n in term_names
                      if n in positions)
    problem = Problem(tuple(blocks), terminals)
    outline = benchgen.derive_fixed_outline(problem)
    problem = problem.with_constraints(problem.constraints, outline)
    spec = benchgen.AugmentSpec(seed=args.seed)
    constraints = benchgen.augment(problem, spec)
    fio.write_constraints(constraints, outline, problem, args.out)
    print(f"constrained {len(constraints.boundary)} boundary, "
          f"{sum(len(g) for g in constraints.groups)} grouped, "
          f"{len(constraints.preplaced)} preplaced blocks; "
          f"outline {outline[0]:.3f}x{outline[1]:.3f}")
    print(f"constraints written to {args.out}")
    return 0


def _reevaluate(record):
    """Recompute the report from placements; flag tampered wire-lengths."""
    problem = record.floorplan.problem
    fresh = total_cost(record.floorplan, problem, record.config.weights,
                       record.config.mode)
    stored = record.report.hpwl
    drift = abs(stored - fresh.hpwl) > 1e-9 * max(1.0, abs(fresh.hpwl))
    record.report = fresh
    return drift


def _cmd_pareto(args):
    records = []
    for path in args.records:
        records.extend(fio.read_records(path))
    for rec in records:
        if rec.ok and _reevaluate(rec):
            print(f"warning: record seed {rec.seed} had a stale stored "
                  f"wire-length; recomputed value used")
    front = pareto_front(records)
    fio.write_records([p.record for p in front], args.out)
    print(f"{len(records)} records in, {len(front)} on the legal front")
    if args.plot:
        points = [(r.report.hpwl, solution_whitespace_pct(r),
                   bool(r.report.legal)) for r in records if r.ok]
        fio.render_scatter(points, [(p.hpwl, p.whitespace_pct) for p in front],
                           args.plot)
        print(f"scatter written to {args.plot}")
    if not front:
        print("no legal solutions")
        return 2
    print(f"front written to {args.out}")
    return 0


def _cmd_render(args):
    records = fio.read_records(args.records)
    if not 0 <= args.index < len(records):
        raise DomainError(f"record index {args.index} out of range "
                          f"(file has {len(records)})")
    record = records[args.index]
    if not record.ok:
        raise DomainError(f"record {args.index} is a failed worker slot")
    specs, _, _ = fio.parse_blocks_file(args.blocks)
    embedded = record.floorplan.problem
    if len(specs) != len(embedded.blocks):
        raise DomainError(f"{args.blocks} has {len(specs)} blocks but the "
                          f"record was solved over {len(embedded.blocks)}")
    problem = embedded
    if args.constraints:
        cf = fio.parse_constraints(args.constraints, problem)
        problem = problem.with_constraints(cf.constraints, cf.outline)
    fp = record.floorplan
    fp.problem = problem
    fio.render_svg(fp, problem, args.out)
    print(f"floorplan written to {args.out}")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "augment": _cmd_augment,
    "pareto": _cmd_pareto,
    "render": _cmd_render,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse --help exits 0; usage errors map to 1
        if e.code in (0, None):
            return 0
        if isinstance(e.code, str):
            print(e.code, file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (DomainError, fio.ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
