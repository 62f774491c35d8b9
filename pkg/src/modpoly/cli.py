"""Command-line entry point (``modpoly``).

Exit codes: 0 success, 1 precondition violated, 2 internal tripwire,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bench as benchmod
from .classical import SUPPORTED_ORACLE_ELLS, classical_phi, growth_report
from .crtlift import crt_lift
from .curves import curve_from_j
from .errors import (
    ModpolyError,
    NotSupersingularError,
    PreconditionError,
    TripwireError,
)
from .fields import QuadraticField, format_element, parse_fp2
from .globalphi import modular_poly_mod_p
from .localphi import local_modular_poly, random_l_isogeny
from .ssinit import hilbert_class_poly, supersingular_j

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_TRIPWIRE = 2
EXIT_USAGE = 64

log = logging.getLogger("modpoly")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int
    fmt: str = "text"
    output: str | None = None
    verbose: bool = False

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _default_seed() -> int:
    raw = os.environ.get("MODPOLY_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"MODPOLY_SEED must be an integer, got {raw!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_poly(cfg: RunConfig, poly):
    _emit(cfg, poly.to_json() if cfg.fmt == "json" else poly.to_text())


# -- commands ------------------------------------------------------------------


def cmd_phi_mod_p(args, cfg):
    _emit_poly(cfg, modular_poly_mod_p(args.p, args.ell, cfg.rng()))


def cmd_phi_int(args, cfg):
    _emit_poly(cfg, crt_lift(args.ell, args.primes, cfg.rng()))


def cmd_oracle_phi(args, cfg):
    if args.ell not in SUPPORTED_ORACLE_ELLS:
        raise PreconditionError(f"oracle supports l in {SUPPORTED_ORACLE_ELLS}")
    _emit_poly(cfg, classical_phi(args.ell))


def _parse_j(text: str, p: int):
    try:
        return parse_fp2(text, QuadraticField(p))
    except ValueError as exc:
        raise PreconditionError(str(exc))


def cmd_local(args, cfg):
    j = _parse_j(args.j, args.p)
    loc = local_modular_poly(j, args.p, args.ell, cfg.rng())
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(loc.to_dict(), sort_keys=True) + "\n")
    else:
        _emit(cfg, loc.to_text())


def cmd_ssj(args, cfg):
    _emit(cfg, format_element(supersingular_j(args.p, cfg.rng())) + "\n")


def cmd_hilbert(args, cfg):
    H = hilbert_class_poly(args.d)
    _emit(cfg, "".join(f"{c}\n" for c in H.coeffs))


def cmd_random_isogeny(args, cfg):
    j = _parse_j(args.j, args.p)
    E = curve_from_j(j)
    _, j2 = random_l_isogeny(E, args.ell, args.order, cfg.rng())
    _emit(cfg, format_element(j2) + "\n")


def cmd_appendix_growth(args, cfg):
    from .plotting import growth_figure

    rows, asym = growth_report(args.n, args.k)
    lines = ["n,k,logcoeff,upper,ratio"]
    lines += [f"{r.n},{r.k},{r.logcoeff:.10f},{r.upper:.10f},{r.ratio:.10f}" for r in rows]
    Path(args.csv).write_text("\n".join(lines) + "\n")
    asym_path = Path(args.csv).with_suffix(".asymptotic.csv")
    alines = ["n,logcoeff,ratio"] + [f"{a.n},{a.logcoeff:.10f},{a.ratio:.10f}" for a in asym]
    asym_path.write_text("\n".join(alines) + "\n")
    fig = args.figure or str(Path(args.csv).with_suffix(".png"))
    growth_figure(rows, asym, fig)
    worst = max(r.logcoeff - r.upper for r in rows)
    _emit(cfg, f"cells {len(rows)}\nmax(L-U) {worst:.6f}\ncsv {args.csv}\nfigure {fig}\n")


def cmd_bench(args, cfg):
    from .plotting import bench_figure

    def progress(row):
        log.info("%s l=%d n=%d %.3fs", row.kind, row.ell, row.n_used, row.seconds)

    rows = benchmod.run_bench(
        args.ells,
        args.p,
        args.reps,
        cfg.seed,
        full=not args.local_only,
        uniform_n=args.uniform_n,
        progress=progress,
    )
    text = benchmod.rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
        fig = args.figure or str(Path(args.csv).with_suffix(".png"))
        bench_figure(rows, fig)
    _emit(cfg, text)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modpoly", description="Modular polynomials via supersingular isogeny graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, fmt=False, seeded=True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        if seeded:
            sp.add_argument("--seed", type=int, default=None, help="RNG seed (default: $MODPOLY_SEED or 0)")
        if fmt:
            sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        return sp

    sp = add("phi-mod-p", cmd_phi_mod_p, "phi_l(x, y) mod p", fmt=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    sp = add("phi-int", cmd_phi_int, "phi_l(x, y) over the integers by CRT", fmt=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--primes", type=_int_list, default=None, help="comma-separated primes")

    sp = add("local", cmd_local, "phi_l(x, j) over F_p^2 and its roots", fmt=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--j", required=True, help="'a' or 'a,b' meaning a + b*i")

    sp = add("ssj", cmd_ssj, "a supersingular j-invariant in F_p^2")
    sp.add_argument("--p", type=int, required=True)

    sp = add("hilbert", cmd_hilbert, "Hilbert class polynomial H_D, constant term first", seeded=False)
    sp.add_argument("--d", type=int, required=True, help="negative discriminant D")

    sp = add("oracle-phi", cmd_oracle_phi, "phi_l from q-expansions (small l)", fmt=True, seeded=False)
    sp.add_argument("--ell", type=int, required=True)

    sp = add("appendix-growth", cmd_appendix_growth, "growth table for coefficients of j^k", seeded=False)
    sp.add_argument("--n", type=int, default=300)
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--csv", required=True)
    sp.add_argument("--figure", default=None, help="PNG path (default: next to the CSV)")

    sp = add("random-isogeny", cmd_random_isogeny, "j of a random l-isogenous curve")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--j", required=True)
    sp.add_argument("--order", type=int, default=None, help="#E(F_p^2) for ordinary curves")

    sp = add("bench", cmd_bench, "timing of local and full computations")
    sp.add_argument("--ells", type=_int_list, default=list(benchmod.DEFAULT_ELLS))
    sp.add_argument("--p", type=int, default=benchmod.DEFAULT_P)
    sp.add_argument("--reps", type=int, default=1)
    sp.add_argument("--csv", default=None)
    sp.add_argument("--figure", default=None)
    sp.add_argument("--local-only", action="store_true")
    sp.add_argument("--uniform-n", action="store_true", help="use extension degree 6(l-1) everywhere")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    seed = getattr(args, "seed", None)
    cfg = RunConfig(
        command=args.command,
        seed=_default_seed() if seed is None else seed,
        fmt=getattr(args, "format", "text"),
        output=args.output,
        verbose=args.verbose,
    )
    try:
        args.func(args, cfg)
    except (PreconditionError, NotSupersingularError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except (TripwireError, ModpolyError) as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_TRIPWIRE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
