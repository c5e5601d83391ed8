"""Command-line entry point: ``conflictcol {solve,verify,gen,exact-ch,bounds,bench}``.

Exit codes: 0 colourable / success, 1 uncolourable or solver failure,
2 usage, parse or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from conflictcol import adversary, bounds, io
from conflictcol.model import InstanceError, graph_stats, validate_colouring
from conflictcol.reductions import AdaptableInstance, check_adapted
from conflictcol.solvers.adaptable import split_adaptable
from conflictcol.solvers.exact import solve_exact
from conflictcol.solvers.lll import DEFAULT_CAP, solve_lll
from conflictcol.solvers.orientation import solve_via_orientation
from conflictcol.solvers.result import SearchLimits, SolveResult, Status
from conflictcol.solvers.two_phase import ParameterError, TwoPhaseParams, two_phase

SCHEMA = "conflictcol.report/1"
SOLVERS = ("exact", "orient", "lll", "two-phase", "split")
RANDOMIZED = {"lll", "two-phase", "split"}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(report: dict, as_json: bool, human_lines: list[str]) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
    else:
        print("\n".join(human_lines))


def run_solver(path: str, solver: str, seed: int | None, cap: int, mode: str,
               limits: SearchLimits) -> dict:
    """Run one solver on one instance file and build the machine report."""
    if solver in RANDOMIZED and seed is None:
        raise UsageError(f"solver {solver!r} is randomized: --seed is required")
    data = io.read_json(path)
    start = time.perf_counter()
    if solver == "split":
        if not isinstance(data, dict) or "vertices" not in data:
            raise UsageError("the split solver reads the list-instance format")
        g, lists, labels = io.list_instance_from_dict(data)
        if labels is None:
            raise UsageError("the split solver needs a 'label' on every edge")
        inst = AdaptableInstance(g, lists, labels)
        res = split_adaptable(inst, seed, cap=cap)
        valid = check_adapted(inst, res.colouring) if res.ok else None
        stats = graph_stats(g)
    else:
        inst = io.instance_from_dict(data)
        stats = graph_stats(inst.graph)
        if solver == "exact":
            res = solve_exact(inst, limits)
        elif solver == "orient":
            res = solve_via_orientation(inst)
        elif solver == "lll":
            res = solve_lll(inst, seed, cap=cap)
        elif solver == "two-phase":
            params = TwoPhaseParams.for_graph(inst.graph, mode=mode, resample_cap=cap) \
                if inst.m else None
            res = two_phase(inst, params, seed=seed, mode=mode)
        else:
            raise UsageError(f"unknown solver {solver!r}")
        valid = not validate_colouring(inst, res.colouring) if res.ok else None
    seconds = time.perf_counter() - start
    counters = {k: v for k, v in res.counters.items() if k != "seconds"}
    return {
        "schema": SCHEMA,
        "instance": str(path),
        "solver": solver,
        "seed": seed,
        "verdict": res.status.value,
        "colouring": list(res.colouring) if res.colouring is not None else None,
        "valid": valid,
        "counters": counters,
        "stats": stats.as_dict(),
        "seconds": seconds,
        "detail": res.detail,
    }


def _verdict_exit(verdict: str) -> int:
    if verdict == Status.SAT.value:
        return EXIT_OK
    if verdict == Status.EXHAUSTED.value:
        return EXIT_USAGE
    return EXIT_FAIL


def cmd_solve(args) -> int:
    limits = SearchLimits(nodes=args.nodes, seconds=args.seconds)
    report = run_solver(args.file, args.solver, args.seed, args.cap, args.mode, limits)
    if report["colouring"] is not None:
        # a colouring leaves this process only after re-verification
        if not report["valid"]:
            raise AssertionError("solver produced an invalid colouring")
        if args.out:
            io.write_colouring(args.out, report["colouring"])
    lines = [
        f"instance   {report['instance']}",
        f"solver     {report['solver']} (seed {report['seed']})",
        f"verdict    {report['verdict']}" + (f"  [{report['detail']}]" if report["detail"] else ""),
        f"valid      {report['valid']}",
        "stats      " + " ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}"
                                 for k, v in report["stats"].items()),
        "counters   " + " ".join(f"{k}={v}" for k, v in sorted(report["counters"].items())),
        f"time       {report['seconds']:.3f}s",
    ]
    if report["colouring"] is not None and len(report["colouring"]) <= 64:
        lines.append(f"colouring  {report['colouring']}")
    _emit(report, args.json, lines)
    return _verdict_exit(report["verdict"])


def cmd_verify(args) -> int:
    inst = io.read_instance(args.file)
    colouring = io.read_colouring(args.colouring)
    bad = validate_colouring(inst, colouring)
    report = {"schema": SCHEMA, "valid": not bad, "violations": list(bad.edges)}
    lines = ["valid" if not bad else f"invalid: conflicting edges {list(bad.edges)}"]
    _emit(report, args.json, lines)
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "two-vertex":
        inst = adversary.gen_two_vertex(_need(args.k, "--k"))
    elif fam == "star":
        inst = adversary.gen_star(_need(args.mu, "--mu"))
    else:
        k = _need(args.k, "--k")
        seed = _need(args.seed, "--seed")
        if fam == "complete":
            g = adversary.gen_complete_multigraph(_need(args.n, "--n"), args.mu or 1)
        elif fam == "planar":
            g = adversary.gen_planar_triangulation(_need(args.n, "--n"), seed)
        elif fam == "random":
            g = adversary.gen_random_multigraph(_need(args.n, "--n"), _need(args.m, "--m"), seed,
                                                max_mult=args.mu or 1,
                                                max_degree=args.max_degree)
        else:
            raise UsageError(f"unknown family {fam!r}")
        inst = adversary.gen_random_partition(g, k, seed)
    io.write_instance(args.out, inst)
    print(f"wrote {args.out}: n={inst.n} m={inst.m} k={inst.k}")
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this family")
    return value


def cmd_exact_ch(args) -> int:
    inst = io.read_instance(args.file)
    value = adversary.exact_choosability(inst.graph, args.kmax, budget=args.budget)
    shown = str(value) if value is not None else f">{args.kmax}"
    _emit({"schema": SCHEMA, "choosability": value, "kmax": args.kmax}, args.json,
          [f"conflict choosability {shown}"])
    return EXIT_OK


def cmd_bounds(args) -> int:
    const = bounds.BoundConstants(C1=args.C1, C2=args.C2, C3=args.C3, C=args.C)
    name = args.formula
    if name == "lll-feasibility":
        if len(args.args) != 1:
            raise UsageError("lll-feasibility takes one argument: d")
        f = bounds.lll_feasibility_check(float(args.args[0]))
        report = {"schema": SCHEMA, "formula": name, "ok": f.ok, "slacks": list(f.slacks)}
        _emit(report, args.json, [f"feasible {f.ok}  slacks {', '.join(f'{s:.6g}' for s in f.slacks)}"])
        return EXIT_OK
    if name not in bounds.FORMULAS:
        raise UsageError(f"unknown formula {name!r}; choose from "
                         f"{', '.join(sorted(bounds.FORMULAS))}, lll-feasibility")
    fn, params = bounds.FORMULAS[name]
    if len(args.args) != len(params):
        raise UsageError(f"{name} takes {len(params)} argument(s): {', '.join(params)}")
    values = [float(a) if name == "avg-degree" else int(a) for a in args.args]
    kwargs = {}
    if name in ("edges", "surface", "adaptable-surface"):
        kwargs["constants"] = const
    b = fn(*values, **kwargs)
    report = {"schema": SCHEMA, "formula": name, "args": values, "exact": float(b.exact),
              "value": b.value, "ref": b.ref}
    _emit(report, args.json, [f"{name}{tuple(values)} = {float(b.exact):.6g}  ->  {b.value}   ({b.ref})"])
    return EXIT_OK


def _bench_cell(cell):
    path, solver, seed, cap, mode = cell
    try:
        rep = run_solver(path, solver, seed, cap, mode, SearchLimits())
    except (InstanceError, ParameterError, UsageError) as exc:
        return {"instance": Path(path).name, "solver": solver, "seed": seed,
                "verdict": "error", "detail": str(exc), "counters": {}, "seconds": 0.0}
    return {"instance": Path(path).name, "solver": solver, "seed": seed,
            "verdict": rep["verdict"], "valid": rep["valid"], "counters": rep["counters"],
            "m": rep["stats"]["m"], "seconds": rep["seconds"]}


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"corpus directory {corpus} not found")
    files = sorted(str(p) for p in corpus.glob("*.json"))
    solvers = [s for s in args.solvers.split(",") if s]
    for s in solvers:
        if s not in SOLVERS:
            raise UsageError(f"unknown solver {s!r}")
    seeds = [int(s) for s in args.seeds.split(",") if s] if args.seeds else []
    if any(s in RANDOMIZED for s in solvers) and not seeds:
        raise UsageError("--seeds is required for randomized solvers")
    cells = [(f, s, seed, args.cap, args.mode)
             for f in files for s in solvers
             for seed in (seeds if s in RANDOMIZED else [None])]
    if args.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_cell, cells))
    else:
        rows = [_bench_cell(c) for c in cells]
    rows.sort(key=lambda r: (r["instance"], r["solver"], -1 if r["seed"] is None else r["seed"]))
    summary = {}
    for s in solvers:
        mine = [r for r in rows if r["solver"] == s]
        ok = sum(r["verdict"] == Status.SAT.value for r in mine)
        summary[s] = {"runs": len(mine), "sat": ok,
                      "success_rate": ok / len(mine) if mine else None}
    machine_rows = rows if args.times else [{k: v for k, v in r.items() if k != "seconds"}
                                            for r in rows]
    report = {"schema": SCHEMA, "corpus": corpus.name, "rows": machine_rows, "summary": summary}
    if args.out:
        io.write_json(args.out, report)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"{'instance':<28} {'solver':<10} {'seed':>6} {'verdict':<16} {'counters':<28} {'time':>8}")
        for r in rows:
            ctr = " ".join(f"{k}={v}" for k, v in sorted(r["counters"].items())
                           if k in ("nodes", "resamples", "k_star", "attempts"))
            print(f"{r['instance']:<28} {r['solver']:<10} {str(r['seed']):>6} {r['verdict']:<16} "
                  f"{ctr:<28} {r['seconds']:>7.3f}s")
        for s, agg in summary.items():
            rate = "n/a" if agg["success_rate"] is None else f"{100 * agg['success_rate']:.1f}%"
            print(f"{s}: {agg['sat']}/{agg['runs']} colourable ({rate})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conflictcol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("file")
    p.add_argument("--solver", choices=SOLVERS, default="exact")
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="resampling cap")
    p.add_argument("--mode", choices=("paper", "desk"), default="desk")
    p.add_argument("--nodes", type=int, help="node budget for the exact solver")
    p.add_argument("--seconds", type=float, help="time budget for the exact solver")
    p.add_argument("--out", help="write the colouring here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a colouring against an instance")
    p.add_argument("file")
    p.add_argument("colouring")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--family", required=True,
                   choices=("two-vertex", "star", "random", "complete", "planar"))
    p.add_argument("--k", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("exact-ch", help="exact conflict choosability of a tiny graph")
    p.add_argument("file")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--budget", type=int, default=adversary.DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_exact_ch)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("--formula", required=True)
    p.add_argument("--args", nargs="+", default=[])
    for c in ("C1", "C2", "C3", "C"):
        p.add_argument(f"--{c}", type=float, default=1.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bench", help="run a solver matrix over a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--solvers", default="lll")
    p.add_argument("--seeds", default="")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--mode", choices=("paper", "desk"), default="desk")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--times", action="store_true", help="include wall times in machine output")
    p.add_argument("--out", help="write the machine-readable report here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InstanceError, ParameterError, adversary.WorkBudgetExceeded,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
