"""Command-line front end: simulation sweeps, exact evaluation, structural
condition checks, single-session traces and the HTTP service."""

from __future__ import annotations

import argparse
import json
import sys

from .core import TieBreakPolicy
from .experiments import (
    ExperimentSpec,
    default_budget,
    run_experiment,
    sample_scenario,
    _derive_seed,
    _make_domain,
)
from .lattice import LatticeClass
from .learner import NoiseModel, run_session
from .optimal import cost_report
from .teachers import check_thm2_conditions, make_teacher
from .tworec import Rect, TwoRec, TwoRecClass


def _parse_hypothesis(klass: str, text: str):
    """lattice: "i,j"; tworec: "x1,y1,x2,y2" or "x1,y1,x2,y2;x1,y1,x2,y2"."""
    if klass == "lattice":
        i, j = (int(v) for v in text.split(","))
        return (i, j)
    rects = []
    for part in text.split(";"):
        x1, y1, x2, y2 = (int(v) for v in part.split(","))
        rects.append(Rect(x1, y1, x2, y2))
    return TwoRec(tuple(rects))


def _build_domain(klass: str, grid: int):
    if klass == "lattice":
        return LatticeClass(grid)
    return TwoRecClass(grid)


def cmd_simulate(args) -> int:
    with open(args.spec) as fh:
        spec = ExperimentSpec.from_json(json.load(fh))
    run_experiment(spec, out_path=args.out,
                   log=lambda msg: print(msg, file=sys.stderr))
    return 0


def cmd_optimal(args) -> int:
    domain = _build_domain(args.klass, args.grid)
    h0 = _parse_hypothesis(args.klass, args.h0)
    h_star = _parse_hypothesis(args.klass, args.target)
    report = cost_report(domain, h0, h_star, cap=args.cap,
                         nonadaptive_cap=args.nonadaptive_cap,
                         example_cap=args.example_cap)
    if args.json:
        print(report.to_json())
    else:
        print(f"adaptive_opt={report.adaptive_opt} "
              f"nonadaptive_opt={report.nonadaptive_opt} "
              f"greedy={report.greedy}")
    return 0


def cmd_check_conditions(args) -> int:
    if args.klass == "subset":
        from .abstract import subset_removal_class
        domain = subset_removal_class(args.m, args.k)
        h_star = int(args.target) if args.target else 0
    else:
        domain = _build_domain(args.klass, args.grid)
        h_star = (_parse_hypothesis(args.klass, args.target) if args.target
                  else domain.all_hypotheses()[0])
    res = check_thm2_conditions(domain, h_star, cap=args.cap)
    out = {
        "cond1": res["cond1"],
        "witness1": repr(res["witness1"]) if res["witness1"] else None,
        "cond2": res["cond2"],
        "witness2": repr(res["witness2"]) if res["witness2"] else None,
    }
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_trace(args) -> int:
    spec = ExperimentSpec(klass=args.klass, scenario=args.scenario,
                          algorithms=[args.teacher], grid_sizes=[args.grid],
                          trials=1, master_seed=args.seed)
    domain = _make_domain(spec, args.grid)
    scen_seed = _derive_seed(args.seed, args.klass, args.scenario, args.grid, 0)
    h0, h_star = sample_scenario(args.klass, args.scenario, args.grid,
                                 scen_seed)
    teacher = make_teacher(args.teacher, domain, h0, h_star, seed=args.seed,
                           strict=(args.epsilon == 0.0))
    budget = args.budget or default_budget(args.klass, args.grid)
    noise = NoiseModel(args.epsilon, seed=args.seed + 1) \
        if args.epsilon > 0.0 else None
    trace = run_session(domain, teacher, h0, h_star, budget,
                        tie_break=TieBreakPolicy.seeded(args.seed),
                        noise=noise, record_vs_size=args.vs_size)
    out = trace.to_jsonl()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(store_dir=args.store), host=args.host,
                port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vsteach")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run an experiment spec, write CSV")
    s.add_argument("--spec", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("optimal", help="exact minimax/non-adaptive costs")
    s.add_argument("--class", dest="klass", required=True,
                   choices=["tworec", "lattice"])
    s.add_argument("--grid", type=int, required=True)
    s.add_argument("--h0", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--cap", type=int, default=15)
    s.add_argument("--nonadaptive-cap", type=int, default=12)
    s.add_argument("--example-cap", type=int, default=12)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_optimal)

    s = sub.add_parser("check-conditions",
                       help="greedy-optimality structural conditions")
    s.add_argument("--class", dest="klass", required=True,
                   choices=["tworec", "lattice", "subset"])
    s.add_argument("--grid", type=int, default=4)
    s.add_argument("--m", type=int, default=4)
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--target", default=None)
    s.add_argument("--cap", type=int, default=12)
    s.set_defaults(func=cmd_check_conditions)

    s = sub.add_parser("trace", help="one teaching session as JSONL")
    s.add_argument("--class", dest="klass", required=True,
                   choices=["tworec", "lattice"])
    s.add_argument("--scenario", required=True)
    s.add_argument("--grid", type=int, required=True)
    s.add_argument("--teacher", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=float, default=0.0)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--vs-size", action="store_true")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("serve", help="run the interactive teaching service")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--store", default=None)
    s.set_defaults(func=cmd_serve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
