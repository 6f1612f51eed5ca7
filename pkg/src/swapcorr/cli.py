"""Command-line entry point: ``swapcorr <subcommand> [options]``.

Exit status is 0 on success, 1 when a verification or property check fails
and 2 for bad input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

import numpy as np

from . import io
from .bloch import bell_bloch, bell_effect, state_to_bloch
from .correlations import MEASURES, report
from .ensembles import coloured_noise, werner
from .exceptions import SwapCorrError
from .filtering import gamma_fs_diag, gamma_sf_diag
from .oracle import crosscheck_suite, pauli_trace_identities
from .pathways import VARIANTS, coloured_noise_scan, montecarlo_fs_sf
from .swapping import predict_obesity, predict_obesity_chain, swap_bloch, swap_chain

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
PROPERTY_TOL = 1e-9
PROBABILITY_TOL = 1e-10

FAMILIES = ("werner", "bell", "coloured-noise", "mixed")


class CheckFailed(Exception):
    pass


def parse_family(text: str, args) -> np.ndarray:
    """Bloch matrix of a named family, e.g. ``werner:p=0.9`` or ``bell:n=2``.

    Parameters not given inline fall back to ``--p``, ``--theta`` and ``--n``.
    """
    name, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise io.InputError(f"family parameter {item!r} is not key=value")
        params[key.strip()] = float(val)

    def get(key, fallback):
        v = params.get(key, getattr(args, key, None))
        return fallback if v is None else v

    name = name.strip().replace("_", "-")
    if name == "werner":
        return state_to_bloch(werner(get("p", 1.0)))
    if name == "bell":
        return bell_bloch(int(get("n", 0)))
    if name in ("coloured-noise", "colored-noise"):
        return state_to_bloch(coloured_noise(get("p", 0.9), get("theta", np.pi / 4)))
    if name == "mixed":
        return np.diag([1.0, 0, 0, 0])
    raise io.InputError(f"unknown family {name!r}; choose from {FAMILIES}")


def load_state(ref: str, args) -> np.ndarray:
    """A state reference is a JSON file path or a family string."""
    if ref.endswith(".json") or "/" in ref:
        return io.state_from_doc(io.read_json(ref))
    return parse_family(ref, args)


def load_effect(ref: str | None) -> np.ndarray:
    if ref is None:
        return bell_effect(0)
    if ref.strip().isdigit():
        return bell_effect(int(ref))
    return io.effect_from_doc(io.read_json(ref))


@contextlib.contextmanager
def output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def emit_json(obj, path):
    with output(path) as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _report_rows(rep):
    return [rep.B, rep.BF3, rep.D, rep.C, rep.Omega]


def cmd_correlations(args):
    if args.state:
        R = load_state(args.state, args)
    elif args.family:
        R = parse_family(args.family, args)
    else:
        raise io.InputError("give --state FILE or --family NAME")
    rep = report(R)
    if args.format == "csv":
        with output(args.out) as fh:
            io.write_csv(fh, list(MEASURES) + ["s1", "s2", "s3", "chi"], [_report_rows(rep) + list(rep.s) + [rep.chi]])
    else:
        emit_json(rep.to_dict(), args.out)


def cmd_swap(args):
    if not (args.ab and args.cd):
        raise io.InputError("swap needs --ab and --cd")
    R_ab, R_cd = load_state(args.ab, args), load_state(args.cd, args)
    N = load_effect(args.effect)
    out = swap_bloch(R_ab, N, R_cd)
    doc = {
        "R_AD": io.matrix_to_json(out.R_AD),
        "probability": out.probability,
        "predicted_obesity": predict_obesity(R_ab, N, R_cd),
    }
    if out.R_AD.shape == (4, 4):
        doc["report"] = report(out.R_AD).to_dict()
    emit_json(doc, args.out)


def cmd_chain(args):
    if not args.state:
        raise io.InputError("chain needs --state CHAIN.json")
    spec = io.chain_from_doc(io.read_json(args.state))
    out = swap_chain(spec)
    emit_json(
        {
            "N": spec.N,
            "R_AD": io.matrix_to_json(out.R_AD),
            "probability": out.probability,
            "predicted_obesity": predict_obesity_chain(spec),
            "report": report(out.R_AD).to_dict(),
        },
        args.out,
    )


def cmd_pathways(args):
    family = (args.family or "coloured-noise").split(":")[0].replace("_", "-")
    if family not in ("coloured-noise", "colored-noise"):
        raise io.InputError("pathway scans support the coloured-noise family only")
    p = 0.9 if args.p is None else args.p
    steps = 100 if args.steps is None else args.steps
    effect = 2 if args.effect is None else int(args.effect)
    if not 0 <= p <= 1 or steps < 2 or effect not in range(4):
        raise io.InputError("need p in [0, 1], steps >= 2 and a Bell effect 0..3")
    rows = coloured_noise_scan(p, steps, effect)
    with output(args.out) as fh:
        io.write_csv(
            fh,
            ["theta", "variant"] + list(MEASURES) + ["status"],
            [[r.theta, r.variant] + [float(v) for v in r.values] + ["ok" if r.ok else "unavailable"] for r in rows],
        )


def cmd_montecarlo(args):
    ensemble = (args.ensemble or args.family or "x_form").replace("-", "_")
    n = 100_000 if args.n is None else args.n
    if n < 1:
        raise io.InputError("--n must be at least 1")
    effect = None if args.effect is None else int(args.effect)
    res = montecarlo_fs_sf(ensemble, n, args.seed, effect=effect)
    if args.out:
        header = ["index", "effect"]
        for m in res.measures:
            header += [f"fs_{m}", f"sf_{m}"]
        rows = []
        for i in range(n):
            row = [i, int(res.effects[i])]
            for j in range(len(res.measures)):
                row += [float(res.fs[i, j]), float(res.sf[i, j])]
            rows.append(row)
        with output(args.out) as fh:
            io.write_csv(fh, header, rows)
    summary = res.summary()
    summary.update(ensemble=ensemble, seed=args.seed)
    emit_json(summary, args.summary)
    bad = [m for m, v in summary["measures"].items() if v["violations"]]
    if bad:
        raise CheckFailed(f"FS >= SF violated for {', '.join(bad)}")


def cmd_gamma_scan(args):
    alpha = 0.4 if args.alpha is None else args.alpha
    steps = 100 if args.steps is None else args.steps
    if not 0 < alpha < 1 or steps < 2:
        raise io.InputError("need alpha in (0, 1) and steps >= 2")
    r22 = np.linspace(0.0, alpha, steps)
    r22[-1] = alpha
    r11 = np.full_like(r22, (1 - alpha) / 2)
    pops = np.stack([r11, r22, alpha - r22, r11], axis=1)
    gfs = gamma_fs_diag(pops)
    g1, g2 = gamma_sf_diag(pops, 1), gamma_sf_diag(pops, 2)
    rows, failed = [], 0
    for i in range(steps):
        if not np.all(np.isfinite([gfs[i], g1[i], g2[i]])):
            status = "degenerate"
        elif gfs[i] < max(g1[i], g2[i]) - PROPERTY_TOL:
            status = "violation"
            failed += 1
        else:
            status = "ok"
        rows.append([float(r22[i]), float(gfs[i]), float(g1[i]), float(g2[i]), status])
    with output(args.out) as fh:
        io.write_csv(fh, ["rho22", "gamma_fs", "gamma_sf_1", "gamma_sf_2", "status"], rows)
    if failed:
        raise CheckFailed(f"gamma_fs below gamma_sf on {failed} rows")


def cmd_verify(args):
    n = 100 if args.n is None else args.n
    if n < 0:
        raise io.InputError("--n must be nonnegative")
    dev = crosscheck_suite(n, args.seed, fault=args.inject_fault)
    ident = pauli_trace_identities()
    checks = {}
    for name, value in dev.items():
        tol = PROBABILITY_TOL if name.endswith("probability") else PROPERTY_TOL
        checks[name] = {"max_deviation": value, "tolerance": tol, "passed": value <= tol}
    checks["pauli_trace_identities"] = {**ident, "passed": ident["mismatched"] == 0}
    failing = [k for k, v in checks.items() if not v["passed"]]
    emit_json({"n_trials": n, "seed": args.seed, "passed": not failing, "checks": checks}, args.out)
    if failing:
        raise CheckFailed(f"check failed: {failing[0]}")


COMMANDS = {
    "correlations": (cmd_correlations, "correlation measures of one state"),
    "swap": (cmd_swap, "swap two sources with one middle measurement"),
    "chain": (cmd_chain, "end-to-end state of a repeater chain"),
    "pathways": (cmd_pathways, "FS/SF stage measures along a coloured-noise scan"),
    "montecarlo": (cmd_montecarlo, "FS versus SF on random sources"),
    "gamma-scan": (cmd_gamma_scan, "Γ factors along an almost-Bell-diagonal line"),
    "verify": (cmd_verify, "cross-check the Bloch calculus against brute force"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--state", help="state JSON file or family string (chain JSON for 'chain')")
        p.add_argument("--ab", help="source AB: JSON file or family string")
        p.add_argument("--cd", help="source CD: JSON file or family string")
        p.add_argument("--effect", help="Bell outcome 0..3 or effect JSON file")
        p.add_argument("--family", help="named family, e.g. werner:p=0.9, bell:n=1, coloured-noise")
        p.add_argument("--ensemble", choices=["x_form", "general"], help="random ensemble for montecarlo")
        p.add_argument("--p", type=float, help="mixing parameter")
        p.add_argument("--theta", type=float, help="coloured-noise angle")
        p.add_argument("--n", type=int, help="Bell index for families, sample or trial count otherwise")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--steps", type=int, help="grid resolution")
        p.add_argument("--alpha", type=float, help="rho22 + rho33 for gamma-scan")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--summary", help="montecarlo summary JSON path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="json")
        p.add_argument("--inject-fault", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        fn(args)
    except CheckFailed as exc:
        print(f"swapcorr {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (SwapCorrError, ValueError, KeyError, OSError) as exc:
        print(f"swapcorr {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
