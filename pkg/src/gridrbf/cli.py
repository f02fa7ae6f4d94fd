"""Command-line front end: every experiment writes a CSV table.

Output conventions: ``#``-prefixed metadata lines, one header row, comma
separated values, LF line endings. Floating-point results use seven
significant digits in scientific notation with a compact exponent
(``4.319455e-2``). Exit status is 0 on success, 2 on usage errors and 1 on
numerical failures.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .basis import RadialKernel
from .cardinal import (
    CardinalTransform,
    cardinal_function,
    chi_hat,
    gaussian_cardinal_coeffs,
    indicator_gap,
)
from .errors import DomainError, GridRBFError
from .krylov import (
    build_gaussian_precond,
    build_mq_precond,
    cg,
    constrained_pcg,
    lcg_uniform,
    squares_rhs,
)
from .matrices import assemble, euclid_integer_inverse, symmetric_eigenvalues
from .pnorm import build_gamma, find_pmn, find_pn, find_theta_star, verify_singular
from .symbol import gaussian_extrema, optimal_bound, szego_estimates
from .toeplitz import ToeplitzOperator

__all__ = ["main", "run", "fmt"]

_EXP = re.compile(r"e([+-])0*(\d)")

EPILOG = """\
reproductions:
  optimal multiquadric bounds     bound --kernel multiquadric --c-list 1,2,3,4,5,10,15
  smallest eigenvalue vs estimate spectrum --c 1 --order 100   (orders 100..350)
  Gaussian section coefficients   precond --kernel gaussian --section-n 64 --band-m 9
  multiquadric band coefficients  precond --kernel multiquadric --section-n 64 --band-m 9 --c 1
  Gaussian CG, no preconditioner  solve --kernel gaussian --grid-N 32768 --no-precond
  Gaussian CG, band m=9           solve --kernel gaussian --grid-N 32768 --band-m 9
  multiquadric CG, order 4097     solve --kernel multiquadric --grid-N 2048 --band-m 9
  multiquadric CG, order 65537    solve --kernel multiquadric --grid-N 32768 --band-m 9
  multiquadric CG, band m=1       solve --kernel multiquadric --grid-N 8192 --band-m 1
  unstable vs projected residual  solve --kernel multiquadric --grid-N 64 --band-m 9 --rhs squares --variant a --maxit 200
"""


def fmt(x: float) -> str:
    """Scientific notation with seven significant digits and a compact exponent."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    s = _EXP.sub(lambda m: "e" + ("-" if m.group(1) == "-" else "") + m.group(2), f"{x:.6e}")
    return s


def _param(x) -> str:
    return str(x)


class _Table:
    def __init__(self, header: Sequence[str], meta: Sequence[str] = ()):
        self.header = list(header)
        self.meta = list(meta)
        self.rows: list[list[str]] = []

    def add(self, *cells):
        self.rows.append([c if isinstance(c, str) else fmt(c) for c in cells])

    def render(self) -> str:
        buf = io.StringIO()
        for line in self.meta:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise DomainError(f"expected a comma-separated list of numbers, got {text!r}") from exc


def _int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"expected two comma-separated integers, got {text!r}")
    return int(parts[0]), int(parts[1])


def _range(text: str) -> range:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise DomainError(f"expected a range lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 2 or hi < lo:
        raise DomainError("range must satisfy 2 <= lo <= hi")
    return range(lo, hi + 1)


# ---------------------------------------------------------------- commands
def _cmd_bound(a) -> _Table:
    if a.kernel == "multiquadric":
        cs = _floats(a.c_list) if a.c_list else [a.c]
        t = _Table(["c", "optimal_bound"], [f"kernel=multiquadric dim={a.dim}"])
        for c in cs:
            t.add(_param(c), optimal_bound(RadialKernel.multiquadric(c), a.dim))
        return t
    if a.c_list:
        raise DomainError("--c-list applies to the multiquadric only")
    lo, hi = gaussian_extrema(a.lam, a.dim)
    t = _Table(["lambda", "optimal_bound", "symbol_max"], [f"kernel=gaussian dim={a.dim}"])
    t.add(_param(a.lam), lo, hi)
    return t


def _cmd_spectrum(a) -> _Table:
    if a.order < 2:
        raise DomainError("--order must be at least 2")
    kern = RadialKernel.multiquadric(a.c)
    eig = symmetric_eigenvalues(assemble(np.arange(a.order), kern))
    est = szego_estimates(kern, a.order)
    meta = [f"kernel=multiquadric c={a.c} order={a.order}"]
    if a.all_eigs:
        neg = np.sort(eig[eig < 0])[::-1]  # increasing modulus
        t = _Table(["k", "eigenvalue", "szego_estimate"], meta)
        for k, (lam, s) in enumerate(zip(neg, est), start=1):
            t.add(k, lam, s)
        return t
    t = _Table(["order", "computed", "szego_estimate"], meta)
    t.add(a.order, np.abs(eig).min(), abs(est[0]))
    return t


def _cmd_euclid(a) -> _Table:
    n = a.n
    inv = euclid_integer_inverse(n)
    A = assemble(np.arange(n + 1), RadialKernel.distance())
    err = np.abs(A @ inv - np.eye(n + 1)).max()
    t = _Table(["n", "identity_error", "norm_1", "norm_2", "lower_bound", "upper_bound"])
    t.add(n, err, np.abs(inv).sum(axis=0).max(), np.linalg.norm(inv, 2), 2.0 - math.pi ** 2 / (2.0 * n * n), 2.0)
    return t


def _cmd_precond(a) -> _Table:
    if a.kernel == "gaussian":
        P = build_gaussian_precond(a.section_n, a.band_m, a.lam)
    else:
        P = build_mq_precond(a.section_n, a.band_m, a.c)
    t = _Table(["j", "coefficient"], [f"kernel={a.kernel} section_n={a.section_n} band_m={a.band_m}"])
    for j in range(P.m + 1):
        t.add(j, P.coeffs[P.m + j])
    return t


def _cmd_solve(a) -> _Table:
    if a.kernel == "gaussian":
        T = ToeplitzOperator.from_kernel(RadialKernel.gaussian(a.lam), a.grid_N)
    else:
        T = ToeplitzOperator.from_kernel(RadialKernel.multiquadric(a.c), a.grid_N)
    b = lcg_uniform(T.order, a.seed) if a.rhs == "random" else squares_rhs(T.order)
    if a.kernel == "gaussian":
        if a.variant:
            raise DomainError("--variant applies to the multiquadric solver only")
        C = None if a.no_precond else build_gaussian_precond(a.section_n, a.band_m, a.lam)
        rep = cg(T, b, C, tol=a.tol, maxit=a.maxit, seed=a.seed)
    else:
        if a.no_precond:
            raise DomainError("the constrained solver needs a preconditioner with e in its kernel")
        C = build_mq_precond(a.section_n, a.band_m, a.c)
        rep = constrained_pcg(T, b, C, tol=a.tol, maxit=a.maxit, variant=a.variant or "b", seed=a.seed)
    meta = [
        f"seed={a.seed}",
        f"kernel={a.kernel} order={T.order} band_m={a.band_m} section_n={a.section_n} tol={a.tol} rhs={a.rhs}",
        f"converged={str(rep.converged).lower()} iterations={rep.iterations}",
    ]
    t = _Table(["iteration", "residual", "direction"], meta)
    for k, (r, d) in enumerate(zip(rep.residual_history, rep.direction_history)):
        t.add(k, r, d)
    return t


def _cmd_pnorm(a) -> _Table:
    if a.pn:
        t = _Table(["n", "p_n", "n_times_excess"])
        for n in _range(a.pn):
            p = find_pn(n).p_n
            t.add(n, p, n * (p - 2.0))
        return t
    if a.pmn:
        m, n = _int_pair(a.pmn)
        t = _Table(["m", "n", "p_mn", "p_n", "p_m"])
        t.add(m, n, find_pmn(m, n), find_pn(max(m, n)).p_n, find_pn(min(m, n)).p_n)
        return t
    parts = a.theta_star.split(",")
    if len(parts) != 2:
        raise DomainError("--theta-star expects n,p")
    n, p = int(parts[0]), float(parts[1])
    t = _Table(["n", "p", "theta_star"])
    t.add(n, _param(p), find_theta_star(n, p))
    return t


def _cmd_gamma(a) -> _Table:
    p = a.p if a.p is not None else find_pmn(a.m, a.n)
    rep = verify_singular(build_gamma(a.m, a.n, p, a.theta))
    t = _Table(["m", "n", "p", "theta", "order", "smallest_singular_value", "norm", "relative"])
    t.add(a.m, a.n, p, a.theta, 2 ** a.m + 2 ** a.n, rep.smallest, rep.norm, rep.relative)
    return t


def _cmd_cardinal(a) -> _Table:
    if a.coeffs:
        seq = gaussian_cardinal_coeffs(a.lam, a.m)
        t = _Table(["k", "coefficient"], [f"kernel=gaussian lambda={a.lam}"])
        for k in range(-seq.m, seq.m + 1):
            t.add(k, seq[k])
        return t
    if a.interp:
        x = np.linspace(-5.0, 5.0, 21)
        chi = cardinal_function(a.c, x)
        t = _Table(["x", "chi", "sinc", "error"], [f"kernel=multiquadric c={a.c}"])
        for xi, v in zip(x, chi):
            s = float(np.sinc(xi))
            t.add(_param(round(float(xi), 12)), v, s, abs(v - s))
        return t
    if not a.xi_list:
        raise DomainError("--c-list needs --xi-list")
    t = _Table(["c", "xi", "chi_hat", "indicator_gap"], ["kernel=multiquadric"])
    xis = np.array(_floats(a.xi_list))
    for c in _floats(a.c_list):
        tr = CardinalTransform(RadialKernel.multiquadric(c))
        vals = np.atleast_1d(chi_hat(tr, xis))
        gaps = np.atleast_1d(indicator_gap(tr, xis))
        for xi, v, g in zip(xis, vals, gaps):
            t.add(_param(c), _param(float(xi)), v, g)
    return t


# ------------------------------------------------------------------ parser
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="gridrbf",
        description="Radial basis function experiments on regular grids (CSV output).",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-o", "--output", help="write CSV to this file instead of standard output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("bound", help="optimal lower bound |sigma(pi e)| on eigenvalue moduli")
    s.add_argument("--kernel", choices=["gaussian", "multiquadric"], default="multiquadric")
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--dim", type=int, choices=[1, 2, 3], default=1)
    s.add_argument("--c-list", help="comma-separated shape parameters")
    s.set_defaults(func=_cmd_bound)

    s = sub.add_parser("spectrum", help="smallest eigenvalue modulus of a multiquadric matrix vs its symbol estimate")
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--all-eigs", action="store_true", help="list every negative eigenvalue with its estimate")
    s.set_defaults(func=_cmd_spectrum)

    s = sub.add_parser("euclid", help="closed-form inverse of the integer distance matrix and its norm bounds")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=_cmd_euclid)

    s = sub.add_parser("precond", help="banded preconditioner coefficients from a finite section")
    s.add_argument("--kernel", choices=["gaussian", "multiquadric"], required=True)
    s.add_argument("--section-n", type=int, default=64)
    s.add_argument("--band-m", type=int, default=9)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.set_defaults(func=_cmd_precond)

    s = sub.add_parser("solve", help="conjugate gradient solve on the grid [-N, N]")
    s.add_argument("--kernel", choices=["gaussian", "multiquadric"], required=True)
    s.add_argument("--grid-N", type=int, required=True)
    s.add_argument("--band-m", type=int, default=9)
    s.add_argument("--section-n", type=int, default=64)
    s.add_argument("--tol", type=float, default=1e-13)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--variant", choices=["a", "b"])
    s.add_argument("--no-precond", action="store_true")
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--rhs", choices=["random", "squares"], default="random")
    s.add_argument("--maxit", type=int, default=1000)
    s.set_defaults(func=_cmd_solve)

    s = sub.add_parser("pnorm", help="critical exponents of the cube construction")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--pn", metavar="LO..HI")
    g.add_argument("--pmn", metavar="M,N")
    g.add_argument("--theta-star", metavar="N,P")
    s.set_defaults(func=_cmd_pnorm)

    s = sub.add_parser("gamma", help="smallest singular value of the two-cube p-norm distance matrix")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--theta", type=float, default=1.0)
    s.add_argument("--p", type=float, help="norm exponent (default: the critical p_{m,n})")
    s.set_defaults(func=_cmd_gamma)

    s = sub.add_parser("cardinal", help="cardinal function transforms and coefficients")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--c-list", help="multiquadric shape parameters for chi_hat values")
    g.add_argument("--coeffs", action="store_true", help="Gaussian cardinal coefficients")
    g.add_argument("--interp", action="store_true", help="multiquadric cardinal function against sinc")
    s.add_argument("--xi-list")
    s.add_argument("--lambda", dest="lam", type=float, default=1.0)
    s.add_argument("--m", type=int, default=9)
    s.add_argument("--c", type=float, default=1.0)
    s.set_defaults(func=_cmd_cardinal)
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    """Run one command and return its exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        table = args.func(args)
    except DomainError as exc:
        print(f"gridrbf: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (GridRBFError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"gridrbf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = table.render()
    if args.output:
        with open(args.output, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
