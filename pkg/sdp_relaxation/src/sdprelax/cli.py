"""Command line entry point: functional file in, bound result file out.

Exit codes follow the certifier's convention: 0 on success, 1 when every
solver fell short of a clean optimum, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .interchange import load_functional
from .relax import MAX_LEVEL, upper_bound


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sdp-bound",
        description="certified upper bound of an edge functional via the sampled moment relaxation",
    )
    parser.add_argument("--functional", required=True, help="functional interchange JSON file")
    parser.add_argument("--level", type=int, required=True, help=f"relaxation level, 1..{MAX_LEVEL}")
    parser.add_argument("--dim", type=int, default=None, help="sampling dimension (default: twice the vertex count)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", required=True, help="result JSON file")
    args = parser.parse_args(argv)

    try:
        functional = load_functional(args.functional)
        result = upper_bound(functional, args.level, sample_dim=args.dim, seed=args.seed)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(result.to_doc(), fh, indent=2, sort_keys=True)
        fh.write("\n")

    if result.upper_bound is None:
        print(f"{result.functional} level {result.level} dim {result.sample_dim}: "
              f"no bound ({result.solver_status})", file=sys.stderr)
        return 1
    print(f"{result.functional} level {result.level} dim {result.sample_dim}: "
          f"upper bound {_fmt(result.upper_bound)} (basis {result.basis_size}, {result.solver_status})")
    return 0
