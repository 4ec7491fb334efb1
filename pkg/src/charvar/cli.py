"""Command-line front door.

Subcommands map one-to-one onto library operations; tuples travel as the
shared JSON schema on stdin/stdout or files, verdicts and reports as JSON,
grids and flow traces as CSV.  Every command is deterministic given --seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .groups import (
    GroupDescriptor,
    RepTuple,
    sample_tuple,
    tuple_from_json,
    tuple_to_json,
)
from .invariants import (
    SU2Rank2Coords,
    SU2Rank3Coords,
    Word,
    invariant_record,
    trace_word,
)
from .kempfness import FLOW_MAX_ITER, FLOW_TOL, composite_retraction, kn_flow
from .poincare import baird_poly, surface_counterexample_polys
from .reconstruct import su2_rank2_lift, su2_rank3_lift, unitary_conjugacy
from .retraction import retract_tuple
from .semialgebraic import region_grid
from .verify import SUITES, run_suite

DEFAULT_TOL_ENV = "CHARVAR_TOL"


def _default_tol() -> float:
    raw = os.environ.get(DEFAULT_TOL_ENV)
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError:
        raise SystemExit(f"bad {DEFAULT_TOL_ENV} value {raw!r}")
    if tol <= 0:
        raise SystemExit(f"{DEFAULT_TOL_ENV} must be positive")
    return tol


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    if isinstance(v, np.complexfloating):
        return [float(v.real), float(v.imag)]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj) -> None:
    _emit(args, json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n")


def _emit_csv(args, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    _emit(args, buf.getvalue())


def _read_tuple(path: str | None) -> RepTuple:
    if path is None or path == "-":
        data = sys.stdin.read()
    else:
        with open(path) as fh:
            data = fh.read()
    return tuple_from_json(json.loads(data))


# --- subcommands -------------------------------------------------------------


def cmd_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    rho = sample_tuple(GroupDescriptor(args.group, args.n), args.r, rng)
    _emit_json(args, tuple_to_json(rho))
    return 0


def cmd_invariants(args) -> int:
    rho = _read_tuple(args.input)
    _emit_json(args, invariant_record(rho, args.tol))
    return 0


def cmd_trace(args) -> int:
    rho = _read_tuple(args.input)
    w = Word.parse(args.word)
    _emit_json(args, {"word": str(w), "trace": trace_word(rho, w)})
    return 0


def cmd_retract(args) -> int:
    rho = _read_tuple(args.input)
    _emit_json(args, tuple_to_json(retract_tuple(rho, args.t, args.tol)))
    return 0


def cmd_flow(args) -> int:
    rho = _read_tuple(args.input)
    out, trace = kn_flow(rho, max_iter=args.max_iter, tol=args.flow_tol)
    if args.format == "csv":
        rows = trace.to_csv_rows()
        _emit_csv(args, next(rows), rows)
    else:
        _emit_json(
            args,
            {
                "converged": trace.converged,
                "iterations": trace.steps[-1].iter,
                "functional": trace.steps[-1].p,
                "residual": trace.steps[-1].residual,
                "tuple": tuple_to_json(out),
            },
        )
    return 0


def cmd_composite(args) -> int:
    rho = _read_tuple(args.input)
    result = composite_retraction(rho, args.t, tol=args.tol, max_iter=args.max_iter)
    _emit_json(
        args,
        {
            "before": result.before,
            "after": result.after,
            "converged": result.trace.converged,
            "tuple": tuple_to_json(result.tuple),
        },
    )
    return 0


def cmd_lift(args) -> int:
    record = json.loads(_read_text(args.input))
    keys2 = ("a1", "a2", "a3")
    keys3 = keys2 + ("a12", "a13", "a23")
    if all(k in record for k in keys3):
        coords = SU2Rank3Coords(*(float(_scalar(record[k])) for k in keys3))
        res = su2_rank3_lift(coords, sign=args.sign, tol=args.tol)
    elif all(k in record for k in keys2):
        coords = SU2Rank2Coords(*(float(_scalar(record[k])) for k in keys2))
        res = su2_rank2_lift(coords, tol=args.tol)
    else:
        raise SystemExit("lift needs an invariant record with a1..a3 (and a12..a23)")
    _emit_json(args, tuple_to_json(res.tuples[0]))
    return 0


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _scalar(v):
    if isinstance(v, list):  # [re, im] pair from our own JSON encoding
        if abs(v[1]) > 1e-9:
            raise SystemExit("lift needs real coordinates (unitary-derived record)")
        return v[0]
    return v


def cmd_conjugacy(args) -> int:
    rho1 = _read_tuple(args.a)
    rho2 = _read_tuple(args.b)
    k = unitary_conjugacy(rho1, rho2, args.tol)
    if k is None:
        _emit_json(args, {"conjugate": False, "k": None})
        return 1
    from .linalg import frob

    residual = max(
        frob(k @ a @ k.conj().T - b) for a, b in zip(rho1.matrices, rho2.matrices)
    )
    _emit_json(
        args,
        {
            "conjugate": True,
            "residual": residual,
            "k": [[[z.real, z.imag] for z in row] for row in k],
        },
    )
    return 0


def cmd_membership(args) -> int:
    """Case-appropriate membership verdicts for a tuple, as verdict JSON."""
    rho = _read_tuple(args.input)
    from .invariants import pq, su2_rank2_coords, su2_rank3_coords, su3_traces, u_coords
    from .semialgebraic import (
        classify_B,
        in_S_plus,
        in_su2_rank2_image,
        in_su2_rank3_image,
        su3_alcove_check,
    )

    case = (rho.r, rho.n, rho.descriptor.family)
    if case == (2, 2, "SU"):
        out = {"su2-rank2-image": in_su2_rank2_image(su2_rank2_coords(rho), args.tol).to_json()}
    elif case == (3, 2, "SU"):
        out = {"su2-rank3-image": in_su2_rank3_image(su2_rank3_coords(rho), args.tol).to_json()}
    elif case == (2, 3, "SU"):
        t = su3_traces(rho, args.tol)
        u = u_coords(t, unitary=True)
        out = {
            "S-plus": in_S_plus(u, pq(t, unitary=True), args.tol).to_json(),
            "B-class": classify_B(rho, args.tol),
            "factor-alcove": {
                f"tau_{k}": su3_alcove_check(u.tau(k), args.tol).to_json()
                for k in (1, 2, 3, 4)
            },
        }
    else:
        raise SystemExit(f"no membership test for (r, n, family) = {case}")
    _emit_json(args, out)
    return 0


def cmd_region(args) -> int:
    header, rows = region_grid(args.name, args.resolution)
    _emit_csv(args, header, ([repr(float(x)) for x in row] for row in rows))
    return 0


def cmd_poincare(args) -> int:
    if args.surface:
        bundles, higgs, differ = surface_counterexample_polys()
        _emit_json(
            args,
            {
                "vector_bundles": list(bundles.coefficients),
                "higgs_bundles": list(higgs.coefficients),
                "differ": differ,
            },
        )
        return 0
    _emit_json(args, {"r": args.r, "coefficients": list(baird_poly(args.r).coefficients)})
    return 0


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    ok = True
    for name in names:
        rep = run_suite(name, samples=args.samples, seed=args.seed, tol=args.tol)
        ok = ok and rep["passed"]
        print(f"[{'PASS' if rep['passed'] else 'FAIL'}] {name} ({rep['elapsed_s']}s)", file=sys.stderr)
        # stdout report stays byte-deterministic given --seed
        reports.append({k: v for k, v in rep.items() if k != "elapsed_s"})
    _emit_json(args, reports if len(reports) > 1 else reports[0])
    return 0 if ok else 1


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    tol = _default_tol()
    p = argparse.ArgumentParser(prog="charvar", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, input_arg=True):
        sp.add_argument("--tol", type=float, default=tol)
        sp.add_argument("--out", default=None)
        if input_arg:
            sp.add_argument("--input", default=None, help="tuple JSON file, default stdin")

    sp = sub.add_parser("sample", help="sample a random representation tuple")
    sp.add_argument("--group", choices=("SU", "SL"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, input_arg=False)
    sp.set_defaults(fn=cmd_sample)

    sp = sub.add_parser("invariants", help="invariant coordinates of a tuple")
    common(sp)
    sp.set_defaults(fn=cmd_invariants)

    sp = sub.add_parser("trace", help="trace of a word, e.g. 'x1 x2^-1'")
    sp.add_argument("--word", required=True)
    common(sp)
    sp.set_defaults(fn=cmd_trace)

    sp = sub.add_parser("retract", help="apply the retraction at time t")
    sp.add_argument("--t", type=float, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_retract)

    sp = sub.add_parser("flow", help="run the Kempf-Ness descent")
    sp.add_argument("--max-iter", type=int, default=FLOW_MAX_ITER)
    sp.add_argument("--flow-tol", type=float, default=FLOW_TOL)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    common(sp)
    sp.set_defaults(fn=cmd_flow)

    sp = sub.add_parser("composite", help="flow to critical set, then retract")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--max-iter", type=int, default=FLOW_MAX_ITER)
    common(sp)
    sp.set_defaults(fn=cmd_composite)

    sp = sub.add_parser("lift", help="lift invariant coordinates to an SU(2) tuple")
    sp.add_argument("--sign", type=int, choices=(-1, 1), default=1)
    common(sp)
    sp.set_defaults(fn=cmd_lift)

    sp = sub.add_parser("membership", help="semi-algebraic membership verdicts for a tuple")
    common(sp)
    sp.set_defaults(fn=cmd_membership)

    sp = sub.add_parser("conjugacy", help="find a unitary conjugator between tuples")
    sp.add_argument("--a", required=True, help="first tuple JSON file")
    sp.add_argument("--b", required=True, help="second tuple JSON file")
    common(sp, input_arg=False)
    sp.set_defaults(fn=cmd_conjugacy)

    sp = sub.add_parser("region", help="emit figure-data grids as CSV")
    sp.add_argument("--name", required=True)
    sp.add_argument("--resolution", type=int, default=64)
    common(sp, input_arg=False)
    sp.set_defaults(fn=cmd_region)

    sp = sub.add_parser("poincare", help="expand the rank-r Poincare polynomial")
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--surface", action="store_true", help="print the surface-group constants")
    common(sp, input_arg=False)
    sp.set_defaults(fn=cmd_poincare)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, input_arg=False)
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
