"""Command-line interface.

    geodiscord bounds    --family werner --p 1 | --state-file rho.txt
    geodiscord decompose --family eq52 --p 0.3 | --state-file rho.txt
    geodiscord sweep     --family eq52 [--p-min 0 --p-max 1 --steps 101] [--oracle] [--out f.csv]
    geodiscord verify    [--dims 2x2,3x3] [--instances 50] [--seed 0] [--state-file bad.txt]

Exit status: 0 success, 1 a verification check failed, 2 invalid input.
"""
import argparse
import sys

from .bloch import decompose
from .bounds import compute_bounds
from .errors import StateFileError, ValidationError
from .oracle import minimize_qubit_measurement, sample_measurement_upper_bound
from .states import FAMILIES, family_state, read_state
from .verification import SUPPORTED_DIMS, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2


def fmt(value):
    return f"{float(value):.17g}"


def fmt_list(values):
    return " ".join(fmt(v) for v in values)


def _load_state(args):
    if args.state_file is not None:
        if args.family is not None:
            raise ValidationError("give either --state-file or --family/--p, not both")
        return read_state(args.state_file), f"file={args.state_file}"
    if args.family is None or args.p is None:
        raise ValidationError("need --state-file, or --family together with --p")
    return family_state(args.family, args.p), f"family={args.family} p={fmt(args.p)}"


def cmd_bounds(args, out):
    rho, label = _load_state(args)
    rep = compute_bounds(decompose(rho))
    lines = [
        f"state: {label}",
        f"dims: m={rep.m} n={rep.n}",
        f"tight_bound_raw: {fmt(rep.tight_bound)}",
        f"tight_bound: {fmt(rep.tight_bound_clamped)}",
        f"luo_fu_bound: {fmt(rep.luo_fu_bound)}",
        f"tr_cct: {fmt(rep.tr_cct)}",
        f"dominance_ok: {'true' if rep.dominance_ok else 'false'}",
        f"eta: {fmt_list(rep.eta)}",
        f"lambda: {fmt_list(rep.lam)}",
    ]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_decompose(args, out):
    rho, label = _load_state(args)
    b = decompose(rho)
    rep = compute_bounds(b)
    lines = [f"state: {label}", f"dims: m={b.m} n={b.n}", f"x: {fmt_list(b.x)}", f"y: {fmt_list(b.y)}", "T:"]
    lines += [f"  {fmt_list(row)}" for row in b.T]
    lines.append(f"eta: {fmt_list(rep.eta)}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def sweep_grid(p_min, p_max, steps):
    if steps < 2:
        raise ValidationError(f"--steps must be >= 2, got {steps}")
    if not (0.0 <= p_min <= p_max <= 1.0):
        raise ValidationError(f"need 0 <= p_min <= p_max <= 1, got {p_min}, {p_max}")
    return [p_min + (p_max - p_min) * i / (steps - 1) for i in range(steps)]


def sweep_rows(family, grid, oracle=False, seed=0, samples=500):
    """One CSV row (list of formatted strings) per grid point, ordered by p."""
    rows = []
    for i, p in enumerate(grid):
        rho = family_state(family, p)
        rep = compute_bounds(decompose(rho))
        row = [fmt(p), fmt(rep.tight_bound), fmt(rep.tight_bound_clamped), fmt(rep.luo_fu_bound)]
        if oracle:
            if rho.m == 2:
                res = minimize_qubit_measurement(rho)
            else:
                res = sample_measurement_upper_bound(rho, samples, [seed, i])
            row.append(fmt(res.value))
        rows.append(row)
    return rows


def cmd_sweep(args, out):
    if args.family not in FAMILIES:
        raise ValidationError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES)}")
    grid = sweep_grid(args.p_min, args.p_max, args.steps)
    header = ["p", "tight_raw", "tight", "luo_fu"] + (["oracle_upper"] if args.oracle else [])
    rows = sweep_rows(args.family, grid, args.oracle, args.seed, args.samples)
    text = "\n".join(",".join(r) for r in [header] + rows) + "\n"
    if args.out is None:
        out.write(text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def parse_dims(text):
    dims = []
    for item in text.split(","):
        try:
            m, n = (int(v) for v in item.lower().split("x"))
        except ValueError:
            raise ValidationError(f"cannot parse dims {item!r}; use e.g. 2x3") from None
        if (m, n) not in SUPPORTED_DIMS:
            raise ValidationError(f"dims {m}x{n} not supported; choose from "
                                  + ", ".join(f"{a}x{b}" for a, b in SUPPORTED_DIMS))
        dims.append((m, n))
    return dims


def cmd_verify(args, out):
    dims = parse_dims(args.dims) if args.dims else list(SUPPORTED_DIMS)
    if args.instances < 1:
        raise ValidationError("--instances must be >= 1")
    extra = []
    failures = 0
    if args.state_file is not None:
        try:
            extra.append((args.state_file, read_state(args.state_file)))
            out.write(f"state_file_validation: 1/1 ({args.state_file})\n")
        except (ValidationError, StateFileError) as exc:
            out.write(f"state_file_validation: 0/1 FAIL ({exc})\n")
            failures += 1
    tally = run_suite(dims, args.instances, args.seed, args.mc_samples, extra)
    out.write(f"dims: {','.join(f'{m}x{n}' for m, n in dims)} instances: {args.instances} seed: {args.seed}\n")
    for name, (passed, total, worst) in tally.items():
        status = "ok" if passed == total else f"FAIL (first failing value {worst!r})"
        out.write(f"{name}: {passed}/{total} {status}\n")
        failures += total - passed
    out.write("result: " + ("PASS" if failures == 0 else f"FAIL ({failures} failed checks)") + "\n")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def _add_state_args(p):
    p.add_argument("--family", choices=sorted(FAMILIES), help="built-in state family")
    p.add_argument("--p", type=float, help="mixing parameter in [0, 1]")
    p.add_argument("--state-file", help="state file (see README for the format)")


def build_parser():
    parser = argparse.ArgumentParser(prog="geodiscord", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="tight and Luo-Fu lower bounds for one state")
    _add_state_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("decompose", help="print x, y, T and the eta spectrum")
    _add_state_args(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sweep", help="CSV of both bounds over a p grid")
    p.add_argument("--family", required=True, help="one of " + ", ".join(sorted(FAMILIES)))
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--oracle", action="store_true",
                   help="add an oracle_upper column (exact search for qubit A, Monte-Carlo otherwise)")
    p.add_argument("--samples", type=int, default=500, help="Monte-Carlo bases per point when m >= 3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the invariant suite on random states")
    p.add_argument("--dims", help="comma list such as 2x2,3x3 (default: all supported)")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mc-samples", type=int, default=200)
    p.add_argument("--state-file", help="additional state to validate and check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ValidationError, StateFileError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
