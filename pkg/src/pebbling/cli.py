"""Command-line front end: compute pebbling stats, run verification sweeps
over graph catalogs, check conjectures, export LP models, and build the
extremal graphs.

Exit codes: 0 all checks pass; 1 a violation was found (theorem failure or
conjecture counterexample); 2 a budget refusal occurred; 3 usage or parse
error. Text output renders rationals as "p/q", never as decimals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import construct
from .catalogs import load_catalog
from .engine import PebbleDistribution
from .errors import BudgetExceededError
from .exact import (
    Budget,
    arbitrary_target_number,
    optimal_pebbling_number,
    pebbling_number,
    rooted_pebbling_number,
)
from .formulas import (
    cycle_pebbling_formula,
    diam2_bounds,
    diambound_threshold,
    fractional_pebbling_number,
    maximal_path_partition,
    radius_bound,
    tree_pebbling_formula,
)
from .graphs import (
    Graph,
    GraphError,
    diameter,
    load_graph,
    make_family,
    parse_graph6,
    serialize_graph6,
    vertex_orbits,
)
from .optimize import (
    build_opt_model,
    export_lp,
    optimal_fractional_pebbling,
    rationalize_to_integer,
    solve_lp,
    vertex_transitive_m,
)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_REFUSAL = 2
EXIT_USAGE = 3

STATS = ("pi", "pi_t", "pi_rooted", "pi_star", "pi_arb", "pi_hat", "pi_hat_star")
SUITES = ("trees", "cycles", "radius", "diam2", "targets", "fracopt")
CONJECTURES = ("diamconj", "weakdiam", "targets", "gnd")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the harness reserves 2 for refusals.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class VerificationReport:
    """One sweep's outcome: per-instance rows plus aggregate counts."""

    suite: str
    rows: list[dict]
    elapsed_ms: float

    @property
    def summary(self) -> dict:
        statuses = [row["status"] for row in self.rows]
        return {
            "instances": len(self.rows),
            "passes": statuses.count("pass"),
            "failures": statuses.count("fail"),
            "refusals": statuses.count("refused"),
        }

    @property
    def exit_code(self) -> int:
        counts = self.summary
        if counts["failures"]:
            return EXIT_VIOLATION
        if counts["refusals"]:
            return EXIT_REFUSAL
        return EXIT_PASS

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "rows": self.rows,
            "summary": self.summary,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _clean(value):
    """Make row values JSON- and text-safe; rationals become 'p/q'."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, PebbleDistribution):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    return value


def _run_tasks(tasks, jobs: int) -> list[dict]:
    if jobs > 1:
        # Rows come back in task order regardless of completion order, so
        # reports are schedule-independent.
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda fn: fn(), tasks))
    return [fn() for fn in tasks]


def _task(base: dict, fn):
    def run() -> dict:
        row = dict(base)
        try:
            row.update(fn())
            row.setdefault("status", "pass")
        except BudgetExceededError as exc:
            row["status"] = "refused"
            row["reason"] = str(exc)
        return {k: _clean(v) for k, v in row.items()}

    return run


# -- verification suites ------------------------------------------------


def _suite_trees(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "trees_up_to_8", max_n=max_n
    )
    tasks = []
    for g in graphs:
        if g.n < 2 or g.n > max_n:
            continue
        gid = serialize_graph6(g)
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": diameter(g), "t": t}

            def check(g=g, t=t):
                formula = tree_pebbling_formula(maximal_path_partition(g), t)
                brute = pebbling_number(g, t, budget).value
                roots_ok = all(
                    tree_pebbling_formula(maximal_path_partition(g, r), t)
                    == rooted_pebbling_number(g, r, t, budget).value
                    for r in range(g.n)
                )
                ok = formula == brute and roots_ok
                return {
                    "formula": formula,
                    "brute": brute,
                    "roots_match": roots_ok,
                    "status": "pass" if ok else "fail",
                }

            tasks.append(_task(base, check))
    return tasks


def _suite_cycles(max_n, max_t, catalog, budget):
    tasks = []
    for n in range(3, max_n + 1):
        g = make_family("cycle", n)
        for t in range(1, max_t + 1):
            base = {"graph": f"cycle:{n}", "n": n, "diameter": n // 2, "t": t}

            def check(g=g, n=n, t=t):
                formula = cycle_pebbling_formula(n, t)
                brute = pebbling_number(g, t, budget).value
                return {
                    "formula": formula,
                    "brute": brute,
                    "status": "pass" if formula == brute else "fail",
                }

            tasks.append(_task(base, check))
    return tasks


def _suite_radius(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "connected_up_to_6", max_n=max_n
    )
    tasks = []
    for g in graphs:
        if g.n < 2 or g.n > max_n:
            continue
        gid = serialize_graph6(g)
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": diameter(g), "t": t}

            def check(g=g, t=t):
                # Eccentricity and rooted value are orbit-invariant; one
                # representative per orbit covers every root.
                worst = None
                ok = True
                for orbit in vertex_orbits(g):
                    r = orbit[0]
                    ecc = int(g.distances[r].max())
                    bound = radius_bound(g.n, ecc, t)
                    value = rooted_pebbling_number(g, r, t, budget).value
                    slack = bound - value
                    if value > bound:
                        ok = False
                    if worst is None or slack < worst:
                        worst = slack
                return {
                    "min_slack": worst,
                    "status": "pass" if ok else "fail",
                }

            tasks.append(_task(base, check))
    return tasks


def _suite_diam2(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "connected_up_to_6", max_n=max_n
    )
    tasks = []
    for g in graphs:
        if g.n > max_n or g.n < 2 or diameter(g) != 2:
            continue
        gid = serialize_graph6(g)
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": 2, "t": t}

            def check(g=g, t=t):
                pi_1 = pebbling_number(g, 1, budget).value
                pi_t = pebbling_number(g, t, budget).value
                reports = [
                    rep.with_exact(pi_t) for rep in diam2_bounds(g.n, pi_1, t)
                ]
                ok = all(rep.slack >= 0 for rep in reports)
                row = {rep.bound: rep.value for rep in reports}
                row["pi_t"] = pi_t
                row["slack"] = min(rep.slack for rep in reports)
                row["status"] = "pass" if ok else "fail"
                return row

            tasks.append(_task(base, check))
    return tasks


def _suite_targets(max_n, max_t, catalog, budget):
    instances: list[tuple[str, Graph]] = []
    if catalog is not None:
        instances = [(serialize_graph6(g), g) for g in catalog if g.n <= max_n]
    else:
        for g in load_catalog("trees_up_to_8", max_n=min(max_n, 6)):
            if g.n >= 2:
                instances.append((serialize_graph6(g), g))
        for n in range(3, max_n + 1):
            instances.append((f"cycle:{n}", make_family("cycle", n)))
        for n in range(2, max_n + 1):
            instances.append((f"complete:{n}", make_family("complete", n)))
    tasks = []
    for gid, g in instances:
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": diameter(g), "t": t}

            def check(g=g, t=t):
                arb = arbitrary_target_number(g, t, budget).value
                single = pebbling_number(g, t, budget).value
                return {
                    "targets": arb,
                    "single": single,
                    "status": "pass" if arb == single else "fail",
                }

            tasks.append(_task(base, check))
    # Even cycles and hypercubes additionally pin the closed value 2^D * t.
    for gid, g in [
        ("cycle:4", make_family("cycle", 4)),
        ("cycle:6", make_family("cycle", 6)),
        ("hypercube:2", make_family("hypercube", 2)),
    ]:
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": diameter(g), "t": t}

            def check(g=g, t=t):
                want = (1 << diameter(g)) * t
                arb = arbitrary_target_number(g, t, budget).value
                return {
                    "targets": arb,
                    "closed": want,
                    "status": "pass" if arb == want else "fail",
                }

            tasks.append(_task(base, check))
    return tasks


def _fracopt_families(max_n):
    fams: list[tuple[str, Graph, Fraction]] = []
    for n in range(2, 7):
        fams.append(
            ("complete:%d" % n, make_family("complete", n), Fraction(2 * n, n + 1))
        )
    for n in range(3, 9):
        k = n // 2
        if n % 2 == 0:
            closed = Fraction(k * (1 << (k + 1)), 3 * ((1 << k) - 1))
        else:
            closed = Fraction(n * (1 << (k - 1)), 3 * (1 << (k - 1)) - 1)
        fams.append(("cycle:%d" % n, make_family("cycle", n), closed))
    for k in range(1, 4):
        fams.append(
            ("hypercube:%d" % k, make_family("hypercube", k), Fraction(4**k, 3**k))
        )
    return [(gid, g, closed) for gid, g, closed in fams if g.n <= max_n]


def _suite_fracopt(max_n, max_t, catalog, budget):
    tasks = []
    for gid, g, closed in _fracopt_families(max_n):
        base = {"graph": gid, "n": g.n, "diameter": diameter(g)}

        def check(g=g, closed=closed):
            value = optimal_fractional_pebbling(g)
            uniform = Fraction(g.n) / vertex_transitive_m(g, 0)
            ok = value == closed == uniform
            return {
                "lp": value,
                "closed": closed,
                "uniform": uniform,
                "status": "pass" if ok else "fail",
            }

        tasks.append(_task(base, check))
    # Round trip: scale the fractional optimum to an engine-checked integer
    # distribution and confirm the size ratio survives.
    for gid, g in [
        ("complete:3", make_family("complete", 3)),
        ("cycle:4", make_family("cycle", 4)),
    ]:
        if g.n > max_n:
            continue
        base = {"graph": gid, "n": g.n, "diameter": diameter(g)}

        def check(g=g):
            sol = solve_lp(build_opt_model(g, 1, integral=False))
            t, dist = rationalize_to_integer(g, sol, budget)
            ok = Fraction(dist.size, t) == sol.objective
            return {
                "t": t,
                "distribution": dist,
                "ratio": Fraction(dist.size, t),
                "status": "pass" if ok else "fail",
            }

        tasks.append(_task(base, check))
    return tasks


SUITE_BUILDERS = {
    "trees": _suite_trees,
    "cycles": _suite_cycles,
    "radius": _suite_radius,
    "diam2": _suite_diam2,
    "targets": _suite_targets,
    "fracopt": _suite_fracopt,
}

SUITE_DEFAULTS = {
    "trees": (8, 3),
    "cycles": (8, 3),
    "radius": (6, 2),
    "diam2": (6, 3),
    "targets": (6, 2),
    "fracopt": (8, 1),
}


# -- conjecture sweeps ---------------------------------------------------


def _conjecture_diamconj(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "connected_up_to_6", max_n=max_n
    )
    tasks = []
    for g in graphs:
        if g.n > max_n:
            continue
        gid = serialize_graph6(g)
        d = diameter(g) if g.n > 1 else 0
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": d, "t": t}

            def check(g=g, d=d, t=t):
                now = pebbling_number(g, t, budget).value
                nxt = pebbling_number(g, t + 1, budget).value
                step = 1 << d
                ok = nxt <= now + step
                row = {"pi_t": now, "pi_next": nxt, "step_cap": step}
                # Past the threshold the step is a theorem, not a
                # conjecture: equality must hold exactly.
                if g.n >= 2 and t >= diambound_threshold(g.n, d):
                    row["regime"] = True
                    ok = ok and nxt == now + step
                else:
                    row["regime"] = False
                row["status"] = "pass" if ok else "fail"
                return row

            tasks.append(_task(base, check))
    return tasks


def _conjecture_weakdiam(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "connected_up_to_6", max_n=max_n
    )
    tasks = []
    for g in graphs:
        if g.n > max_n:
            continue
        gid = serialize_graph6(g)
        d = diameter(g) if g.n > 1 else 0
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": d, "t": t}

            def check(g=g, d=d, t=t):
                pi_1 = pebbling_number(g, 1, budget).value
                pi_t = pebbling_number(g, t, budget).value
                cap = pi_1 + (1 << d) * (t - 1)
                return {
                    "pi_t": pi_t,
                    "cap": cap,
                    "status": "pass" if pi_t <= cap else "fail",
                }

            tasks.append(_task(base, check))
    return tasks


def _conjecture_targets(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "connected_up_to_6", max_n=max_n
    )
    tasks = []
    for g in graphs:
        if g.n > max_n:
            continue
        gid = serialize_graph6(g)
        for t in range(1, max_t + 1):
            base = {"graph": gid, "n": g.n, "diameter": diameter(g), "t": t}

            def check(g=g, t=t):
                arb = arbitrary_target_number(g, t, budget).value
                single = pebbling_number(g, t, budget).value
                return {
                    "targets": arb,
                    "single": single,
                    "status": "pass" if arb == single else "fail",
                }

            tasks.append(_task(base, check))
    return tasks


def _conjecture_gnd(max_n, max_t, catalog, budget):
    graphs = catalog if catalog is not None else load_catalog(
        "connected_up_to_6", max_n=max_n
    )
    extremal_pi: dict[tuple[int, int], int] = {}

    def extremal_value(n: int, d: int) -> int:
        if (n, d) not in extremal_pi:
            extremal_pi[(n, d)] = pebbling_number(
                construct.build_gnd(n, d), 1, budget
            ).value
        return extremal_pi[(n, d)]

    tasks = []
    for g in graphs:
        if g.n > max_n or g.n < 2:
            continue
        gid = serialize_graph6(g)
        d = diameter(g)
        base = {"graph": gid, "n": g.n, "diameter": d}

        def check(g=g, d=d):
            mine = pebbling_number(g, 1, budget).value
            extremal = extremal_value(g.n, d)
            return {
                "pi": mine,
                "extremal_pi": extremal,
                "status": "pass" if mine <= extremal else "fail",
            }

        tasks.append(_task(base, check))
    return tasks


CONJECTURE_BUILDERS = {
    "diamconj": _conjecture_diamconj,
    "weakdiam": _conjecture_weakdiam,
    "targets": _conjecture_targets,
    "gnd": _conjecture_gnd,
}

CONJECTURE_DEFAULTS = {
    "diamconj": (5, 2),
    "weakdiam": (5, 3),
    "targets": (5, 2),
    "gnd": (6, 1),
}


# -- output plumbing -----------------------------------------------------


def _report_text(report: VerificationReport) -> str:
    counts = report.summary
    lines = [
        f"suite {report.suite}: {counts['instances']} instances, "
        f"{counts['passes']} passes, {counts['failures']} failures, "
        f"{counts['refusals']} refusals ({report.elapsed_ms:.0f} ms)"
    ]
    for row in report.rows:
        tag = {"pass": "ok  ", "fail": "FAIL", "refused": "SKIP"}[row["status"]]
        detail = " ".join(
            f"{k}={v}" for k, v in row.items() if k != "status"
        )
        lines.append(f"{tag} {detail}")
    return "\n".join(lines) + "\n"


def _flatten_csv(rows: list[dict]) -> str:
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(columns)
    for i, row in enumerate(rows):
        record = []
        for key in columns:
            value = row.get(key, "")
            # nested witnesses are referenced by row id, not inlined
            record.append(f"w{i}" if isinstance(value, (list, dict)) else value)
        writer.writerow(record)
    return buf.getvalue()


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(report: VerificationReport, args) -> None:
    if args.format == "json":
        _write_output(json.dumps(report.to_json(), indent=2) + "\n", args.out)
    elif args.format == "csv":
        _write_output(_flatten_csv(report.rows), args.out)
    else:
        _write_output(_report_text(report), args.out)


def _emit_counterexamples(name: str, rows: list[dict], outdir: str) -> list[Path]:
    paths = []
    fails = [row for row in rows if row["status"] == "fail"]
    if fails:
        Path(outdir).mkdir(parents=True, exist_ok=True)
    for i, row in enumerate(fails):
        path = Path(outdir) / f"counterexample-{name}-{i}.json"
        path.write_text(
            json.dumps({"conjecture": name, **row}, indent=2) + "\n",
            encoding="utf-8",
        )
        print(f"counterexample written: {path}", file=sys.stderr)
        paths.append(path)
    return paths


# -- subcommands ----------------------------------------------------------


def _budget_for_suite(args, max_n: int, max_t: int) -> Budget:
    return Budget(
        max_n=max(8, max_n),
        max_t=max(4, max_t + 1),
        max_pebbles=args.max_pebbles if args.max_pebbles else 80,
    )


def _sweep_limits(args, defaults) -> tuple[int, int]:
    max_n = args.max_n if args.max_n else defaults[0]
    max_t = args.max_t if args.max_t else defaults[1]
    return max_n, max_t


def _read_catalog(path: str | None):
    if path is None:
        return None
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(parse_graph6(line))
    return graphs


def _formula_stat(g: Graph, kind: str, value, started: float) -> dict:
    return {
        "graph": serialize_graph6(g),
        "kind": kind,
        "t": None,
        "value": _clean(value),
        "witness": None,
        "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
        "enumerated_count": 0,
    }


def _cmd_compute(args) -> int:
    g = load_graph(args.graph)
    budget = Budget(
        **{
            key: val
            for key, val in (
                ("max_n", args.max_n),
                ("max_t", args.max_t),
                ("max_pebbles", args.max_pebbles),
            )
            if val
        }
    )
    kind = "pi" if args.stat == "pi_t" else args.stat
    started = time.perf_counter()
    if kind == "pi":
        stat = pebbling_number(g, args.t, budget).to_json()
    elif kind == "pi_rooted":
        if args.root is None:
            raise ValueError("--root is required for pi_rooted")
        stat = rooted_pebbling_number(g, args.root, args.t, budget).to_json()
    elif kind == "pi_star":
        stat = optimal_pebbling_number(g, args.t, budget).to_json()
    elif kind == "pi_arb":
        stat = arbitrary_target_number(g, args.t, budget).to_json()
    elif kind == "pi_hat":
        stat = _formula_stat(g, "pi_hat", fractional_pebbling_number(g), started)
    else:
        stat = _formula_stat(
            g, "pi_hat_star", optimal_fractional_pebbling(g), started
        )
    if args.format == "json":
        _write_output(json.dumps(stat, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _write_output(_flatten_csv([stat]), args.out)
    else:
        lines = [str(stat["value"])]
        if stat.get("witness") is not None:
            lines.append(f"witness: {stat['witness']}")
        _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_PASS


def _cmd_verify(args) -> int:
    max_n, max_t = _sweep_limits(args, SUITE_DEFAULTS[args.suite])
    budget = _budget_for_suite(args, max_n, max_t)
    catalog = _read_catalog(args.catalog)
    started = time.perf_counter()
    tasks = SUITE_BUILDERS[args.suite](max_n, max_t, catalog, budget)
    rows = _run_tasks(tasks, args.jobs)
    report = VerificationReport(
        args.suite, rows, (time.perf_counter() - started) * 1000
    )
    _emit_report(report, args)
    return report.exit_code


def _cmd_conjecture(args) -> int:
    max_n, max_t = _sweep_limits(args, CONJECTURE_DEFAULTS[args.name])
    budget = _budget_for_suite(args, max_n, max_t)
    catalog = _read_catalog(args.catalog)
    started = time.perf_counter()
    tasks = CONJECTURE_BUILDERS[args.name](max_n, max_t, catalog, budget)
    rows = _run_tasks(tasks, args.jobs)
    report = VerificationReport(
        args.name, rows, (time.perf_counter() - started) * 1000
    )
    _emit_report(report, args)
    _emit_counterexamples(args.name, rows, args.artifact_dir)
    return report.exit_code


def _cmd_export_lp(args) -> int:
    g = load_graph(args.graph)
    lp = build_opt_model(g, args.t, integral=args.integral)
    path = export_lp(lp, args.out)
    print(path)
    return EXIT_PASS


def _cmd_build_gnd(args) -> int:
    g = construct.build_gnd(args.n, args.d)
    payload: dict = {
        "n": g.n,
        "d": args.d,
        "graph6": serialize_graph6(g),
        "edges": [list(e) for e in g.edges],
    }
    if args.witness:
        if args.d % 2 == 0:
            raise ValueError("--witness requires an odd diameter")
        root, dist = construct.unsolvable_witness_odd(args.n, args.d)
        payload["witness"] = {
            "root": root,
            "distribution": dist.to_json(),
            "size": dist.size,
        }
    if args.format == "text":
        lines = [payload["graph6"]]
        if "witness" in payload:
            wit = payload["witness"]
            lines.append(
                f"unsolvable for root {wit['root']}: {wit['distribution']}"
            )
        _write_output("\n".join(lines) + "\n", args.out)
    else:
        _write_output(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_PASS


# -- argument wiring ------------------------------------------------------


def _add_output_flags(sub, default_format="text"):
    sub.add_argument(
        "--format", choices=("json", "csv", "text"), default=default_format
    )
    sub.add_argument("--out", help="write output to this file instead of stdout")


def _add_budget_flags(sub):
    sub.add_argument("--max-n", type=int, dest="max_n")
    sub.add_argument("--max-t", type=int, dest="max_t")
    sub.add_argument("--max-pebbles", type=int, dest="max_pebbles")
    sub.add_argument("--node-budget", type=int, dest="node_budget")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pebble",
        description="Exact graph pebbling computations and sweeps.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    compute = subs.add_parser("compute", help="one stat for one graph")
    compute.add_argument("graph", help="family:params, file.g6, or file.json")
    compute.add_argument("--stat", choices=STATS, required=True)
    compute.add_argument("--t", type=int, default=1)
    compute.add_argument("--root", type=int)
    _add_output_flags(compute)
    _add_budget_flags(compute)
    compute.set_defaults(func=_cmd_compute)

    verify = subs.add_parser("verify", help="run a theorem verification sweep")
    verify.add_argument("--suite", choices=SUITES, required=True)
    verify.add_argument("--catalog", help="graph6 file overriding the instance set")
    verify.add_argument("--jobs", type=int, default=1)
    _add_output_flags(verify)
    _add_budget_flags(verify)
    verify.set_defaults(func=_cmd_verify)

    conj = subs.add_parser("conjecture", help="sweep a conjecture for counterexamples")
    conj.add_argument("--name", choices=CONJECTURES, required=True)
    conj.add_argument("--catalog", help="graph6 file overriding the instance set")
    conj.add_argument("--jobs", type=int, default=1)
    conj.add_argument(
        "--artifact-dir",
        default=".",
        help="directory for counterexample JSON artifacts",
    )
    _add_output_flags(conj)
    _add_budget_flags(conj)
    conj.set_defaults(func=_cmd_conjecture)

    export = subs.add_parser("export-lp", help="write the optimization model")
    export.add_argument("graph", help="family:params, file.g6, or file.json")
    export.add_argument("--t", type=int, default=1)
    group = export.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--int", dest="integral", action="store_true", help="integer program"
    )
    group.add_argument(
        "--frac", dest="integral", action="store_false", help="continuous relaxation"
    )
    export.add_argument("--out", required=True, help="output .lp path")
    export.set_defaults(func=_cmd_export_lp)

    gnd = subs.add_parser("build-gnd", help="build the extremal diameter-d graph")
    gnd.add_argument("n", type=int)
    gnd.add_argument("d", type=int)
    gnd.add_argument(
        "--witness",
        action="store_true",
        help="include the unsolvable distribution (odd d only)",
    )
    _add_output_flags(gnd, default_format="json")
    gnd.set_defaults(func=_cmd_build_gnd)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except (GraphError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
