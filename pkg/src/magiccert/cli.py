"""Command line front end.

Exit codes: 0 success (including a clean "none" verdict), 2 invalid
input, 1 internal failure. Console numbers carry 6 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from .graphs import classical_max, functional_by_name, functional_to_doc
from .network import (
    ScenarioValidationError,
    estimates_csv,
    report_to_doc,
    run_scenario,
    scenario_from_json,
)
from .oracle import full_set_magic_rows, mermin_demo, stabilizer_brute_max
from .seesaw import SeesawConfig, optimal_cycle_value, seesaw_maximize
from .stabilizer import enumerate_stabilizer_states, export_states

CYCLE_M_RANGE = (3, 20)
HUB_M_RANGE = (3, 8)


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


def _cli_functional(name: str):
    f = functional_by_name(name)
    lo, hi = CYCLE_M_RANGE if name.startswith("c") else HUB_M_RANGE
    if not lo <= f.graph.m <= hi:
        kind = "cycle" if name.startswith("c") else "hub"
        raise ValueError(f"{kind} functionals are supported for m in {lo}..{hi}")
    return f


def _cmd_enumerate(args) -> int:
    sset = enumerate_stabilizer_states(args.n)
    print(f"{len(sset)} states")
    if args.out:
        export_states(sset, args.out)
    return 0


def _cmd_bound(args) -> int:
    f = _cli_functional(args.functional)
    if args.method == "classical":
        value = classical_max(f) if f.graph.m <= 12 else f.classical_bound
        print(_fmt(value))
    elif args.method == "analytic":
        if not args.functional.startswith("c"):
            raise ValueError("analytic bound is available for cycle functionals only")
        print(_fmt(optimal_cycle_value(f.graph.m)))
    else:
        config = SeesawConfig(dim=args.dim, seed=args.seed)
        res = seesaw_maximize(f, config)
        print(
            f"{_fmt(res.value)} (seesaw: dim {args.dim}, {res.sweeps_used} sweeps, "
            f"{config.restarts} restarts, converged {str(res.converged).lower()})"
        )
    return 0


def _cmd_oracle(args) -> int:
    f = _cli_functional(args.functional)
    report = stabilizer_brute_max(
        f, args.n, mode=args.mode, budget=args.budget, seed=args.seed
    )
    print(
        f"max {_fmt(report.max_value)} over {report.tuples_checked} tuples ({report.claim})"
    )
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_doc(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_certify(args) -> int:
    with open(args.scenario) as fh:
        doc = json.load(fh)
    scenario = scenario_from_json(doc)
    stamp = datetime.now(timezone.utc).isoformat() if args.stamp else None
    report = run_scenario(scenario, timestamp=stamp)
    v = report.verdict
    rel = ">" if v.conservative_value > v.threshold else "<="
    label = v.kind.replace("_", "-").upper()
    print(
        f"{label} (conservative {_fmt(v.conservative_value)} {rel} {_fmt(v.threshold)}, "
        f"confidence {_fmt(v.confidence)})"
    )
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report_to_doc(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(estimates_csv(report))
    return 0


def _cmd_table1(args) -> int:
    rows = full_set_magic_rows(args.m_max)
    for m, constrained, unconstrained in rows:
        print(f"{m} {_fmt(constrained)} {_fmt(unconstrained)}")
    if args.out:
        lines = ["m,constrained_max,unconstrained_max"]
        lines += [f"{m},{c!r},{u!r}" for m, c, u in rows]
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def _cmd_mermin(args) -> int:
    report = mermin_demo()
    for k, value in enumerate(report.overlaps, start=1):
        print(f"state {k}: {_fmt(value)}")
    print(
        f"total {_fmt(report.total)} (claimed {_fmt(report.claimed_total)}, "
        f"match: {'yes' if report.matches_claim else 'no'})"
    )
    print(f"all product states stabilizer: {'yes' if report.all_stabilizer else 'no'}")
    return 0


def _cmd_export_functional(args) -> int:
    f = _cli_functional(args.functional)
    with open(args.out, "w") as fh:
        json.dump(functional_to_doc(f), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magiccert")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate n-qubit stabilizer states")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("bound", help="classical, analytic, or seesaw bound of a functional")
    p.add_argument("--functional", required=True)
    p.add_argument("--method", choices=["classical", "analytic", "seesaw"], required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("oracle", help="brute-force scan over stabilizer labelings")
    p.add_argument("--functional", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("certify", help="run a scenario file and certify the verdict")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--stamp", action="store_true",
                   help="record wall-clock time in the report (breaks byte stability)")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("table1", help="constrained and unconstrained cycle maxima")
    p.add_argument("--m-max", type=int, required=True, dest="m_max")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("mermin", help="GHZ versus 16 stabilizer product states")
    p.set_defaults(func=_cmd_mermin)

    p = sub.add_parser("export-functional", help="write a functional interchange file")
    p.add_argument("--functional", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export_functional)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioValidationError as exc:
        for problem in exc.errors:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
