"""Command-line front end: evaluation, tabulation and verification runs as CSV.

Exit status is 0 when every check passes, 1 when a check fails or a point
lies outside a convergence region, and 2 for invalid arguments.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from . import asymptotics, frobenius, heunlocal, integralform, series3trf
from .elliptic import complete_K, xi_of_z
from .errors import DomainError
from .frobenius import LameParams

ORACLE_TOL = 1e-10
INTEGRAL_TOL = 1e-6
RESIDUAL_TOL = 1e-5


def fmt(x):
    """17 significant digits, always recognisable as a float."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(x)
    s = f"{float(x):.17g}"
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


@dataclass
class Output:
    stream: object

    def row(self, *values):
        csv.writer(self.stream, lineterminator="\n").writerow(
            [v if isinstance(v, str) else fmt(v) for v in values])


def _grid(args):
    return np.linspace(args.start, args.stop, args.count)


def _params(args):
    return LameParams(args.rho, args.h, args.alpha)


def _spec(args, kind=series3trf.Kind.FIRST):
    return series3trf.SolutionSpec(kind, n_mu=args.n_mu, n_inner=args.n_inner)


def cmd_eval(args, out):
    kind = series3trf.Kind.FIRST if args.kind == "first" else series3trf.Kind.SECOND
    if args.family == "poly1":
        q = series3trf.Type1Quantization(args.j, args.alpha_j, series3trf.Branch(args.branch), kind.lam)
        alpha = series3trf.quantized_alpha(q)
        if args.alpha is not None and args.alpha != alpha:
            raise DomainError(f"--alpha {args.alpha} differs from the lattice value {alpha}")
        value = series3trf.lf_poly_type1(LameParams(args.rho, args.h, alpha), q, args.n_mu, args.xi)
    else:
        if args.alpha is None:
            raise DomainError("--alpha is required for the infinite series")
        p = _params(args)
        fn = series3trf.lf_infinite if kind is series3trf.Kind.FIRST else series3trf.ls_infinite
        value = fn(p, _spec(args, kind), args.xi)
    out.stream.write(fmt(value) + "\n")
    return 0


def cmd_table(args, out):
    p = _params(args)
    out.row("xi", "lf", "ls", "asymptotic", "in_domain")
    status = 0
    for xi in _grid(args):
        v = asymptotics.convergence_domain(xi, p.rho)
        if not v.inside:
            out.row(xi, "nan", "nan", "nan", False)
            status = 1
            continue
        lf = series3trf.lf_infinite(p, _spec(args), xi)
        ls = series3trf.ls_infinite(p, _spec(args, series3trf.Kind.SECOND), xi)
        out.row(xi, lf, ls, asymptotics.lame_asymptotic_limit(p, xi), True)
    return status


def _random_params(rng):
    while True:
        alpha = rng.uniform(-3.0, 3.0)
        if not (series3trf.on_lattice(alpha, 0.0) or series3trf.on_lattice(alpha, 0.5)):
            return LameParams(rng.uniform(0.1, 0.9), rng.uniform(-5.0, 5.0), alpha)


def oracle_errors(p, kind, orders, n_mu, n_inner):
    """Relative coefficient error per order between the nested sum and the recurrence."""
    spec = series3trf.SolutionSpec(kind, n_mu=n_mu, n_inner=n_inner)
    d = series3trf.expand_to_xi_coeffs(p, spec, orders).coeffs
    c = frobenius.frobenius_coefficients(p, kind.lam, orders).coeffs
    scale = np.maximum(np.abs(c), np.finfo(float).tiny)
    return np.abs(d - c) / scale


def cmd_verify_oracle(args, out):
    n_mu = args.orders if args.n_mu is None else args.n_mu
    if args.draws:
        rng = np.random.default_rng(args.seed)
        draws = [_random_params(rng) for _ in range(args.draws)]
    else:
        draws = [_params(args)]
    err = np.zeros(args.orders + 1)
    for p in draws:
        for kind in series3trf.Kind:
            err = np.maximum(err, oracle_errors(p, kind, args.orders, n_mu, args.n_inner))
    out.row("order", "max_rel_error")
    for m, e in enumerate(err):
        out.row(m, e)
    ok = bool(err.max() <= ORACLE_TOL)
    out.row("result", "PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_verify_integral(args, out):
    spec = integralform.QuadratureSpec(args.n_gl, args.n_contour, args.radius)
    branch = series3trf.Branch(args.branch)
    if args.draws:
        rng = np.random.default_rng(args.seed)
        configs = []
        for _ in range(args.draws):
            q = series3trf.Type1Quantization(int(rng.integers(0, 3)), int(rng.integers(0, 3)),
                                             branch, float(rng.choice([0.0, 0.5])))
            configs.append((q, rng.uniform(0.2, 0.8), rng.uniform(-3.0, 3.0), rng.uniform(0.02, 0.2)))
    else:
        configs = [(series3trf.Type1Quantization(args.j, args.alpha_j, branch, args.lam),
                    args.rho, args.h, args.xi)]
    out.row("j", "alpha_j", "lam", "rho", "h", "xi", "series", "integral", "rel_error")
    ok = True
    for q, rho, h, xi in configs:
        p = LameParams(rho, h, series3trf.quantized_alpha(q))
        ref = integralform.y1_series_reference(p, q, xi)
        val = integralform.y1_integral(p, q, xi, spec)
        rel = abs(val - ref) / abs(ref) if ref != 0 else abs(val)
        ok &= rel <= INTEGRAL_TOL
        out.row(q.j, q.alpha_j, q.lam, rho, h, xi, ref, val, rel)
    return 0 if ok else 1


def cmd_residual(args, out):
    p = _params(args)
    kind = series3trf.Kind.FIRST if args.kind == "first" else series3trf.Kind.SECOND
    spec = _spec(args, kind)
    fn = series3trf.lf_infinite if kind is series3trf.Kind.FIRST else series3trf.ls_infinite
    K = complete_K(p.rho)
    out.row("z", "xi", "abs_residual")
    ok = True
    for z in _grid(args) * K if args.in_quarter_periods else _grid(args):
        xi = xi_of_z(z, p.rho)
        r = abs(frobenius.ode_residual_z(lambda x: fn(p, spec, x), p, z))
        ok &= r <= args.tol
        out.row(z, xi, r)
    return 0 if ok else 1


def cmd_domain(args, out):
    v = asymptotics.convergence_domain(args.xi, args.rho)
    out.stream.write(f"inside={fmt(v.inside)},margin={fmt(v.margin)}\n")
    return 0 if v.inside else 1


def cmd_heun_local(args, out):
    p = _params(args)
    out.row("id", "variable", "value", "abs_residual", "in_domain")
    ok = True
    for d in heunlocal.DESCRIPTORS:
        v = heunlocal.heun_domain(d, heunlocal.Regime.GENERIC, args.xi, p.rho)
        if not v.inside:
            out.row(d.id, d.variable, "nan", "nan", False)
            continue

        def f(x, d=d):
            return heunlocal.local_solution(d, p, x, args.n_mu, args.n_inner)

        try:
            value = f(args.xi)
            if args.xi < 1.0:
                K = complete_K(p.rho)
                z = _z_of_xi(args.xi, p.rho, K)
                r = abs(frobenius.ode_residual_z(f, p, z))
            else:
                r = abs(frobenius.ode_residual_xi_fd(f, p, args.xi))
        except DomainError:
            out.row(d.id, d.variable, "nan", "nan", False)
            continue
        ok &= r <= RESIDUAL_TOL
        out.row(d.id, d.variable, value, r, True)
    return 0 if ok else 1


def _z_of_xi(xi, rho, K):
    """Invert xi = sn^2(z) on [0, K] by bisection (sn^2 is increasing there)."""
    lo, hi = 0.0, K
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if xi_of_z(mid, rho) < xi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _modulus(text):
    x = float(text)
    if not 0.0 < x < 1.0:
        raise argparse.ArgumentTypeError("rho must lie in (0, 1)")
    return x


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("count must be at least 1")
    return n


def build_parser():
    parser = argparse.ArgumentParser(prog="lame3trf", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write CSV here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def lame(sp, alpha_required=True):
        sp.add_argument("--rho", type=_modulus, required=True)
        sp.add_argument("--h", type=float, required=True)
        sp.add_argument("--alpha", type=float, required=alpha_required)

    def trunc(sp):
        sp.add_argument("--n-mu", type=int, default=series3trf.DEFAULT_N_MU)
        sp.add_argument("--n-inner", type=int, default=series3trf.DEFAULT_N_INNER)

    def grid(sp):
        sp.add_argument("--start", type=float, default=0.0)
        sp.add_argument("--stop", type=float, default=0.5)
        sp.add_argument("--count", type=_positive, default=11)

    def poly(sp):
        sp.add_argument("--j", type=int, default=0)
        sp.add_argument("--alpha-j", type=int, default=0)
        sp.add_argument("--branch", choices=["plus", "minus"], default="plus")

    sp = sub.add_parser("eval", help="evaluate one solution at one point")
    sp.add_argument("--kind", choices=["first", "second"], default="first")
    sp.add_argument("--family", choices=["infinite", "poly1"], default="infinite")
    lame(sp, alpha_required=False)
    sp.add_argument("--xi", type=float, required=True)
    trunc(sp)
    poly(sp)

    sp = sub.add_parser("table", help="tabulate both solutions and the limit function")
    lame(sp)
    trunc(sp)
    grid(sp)

    sp = sub.add_parser("verify-oracle", help="compare Taylor coefficients with the recurrence")
    sp.add_argument("--rho", type=_modulus, default=0.5)
    sp.add_argument("--h", type=float, default=1.3)
    sp.add_argument("--alpha", type=float, default=2.7)
    sp.add_argument("--orders", type=int, default=12)
    sp.add_argument("--n-mu", type=int, default=None, help="defaults to --orders")
    sp.add_argument("--n-inner", type=int, default=series3trf.DEFAULT_N_INNER)
    sp.add_argument("--draws", type=int, default=0, help="random parameter draws instead of one point")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("verify-integral", help="one-A-step block: series against quadrature")
    sp.add_argument("--rho", type=_modulus, default=0.5)
    sp.add_argument("--h", type=float, default=1.3)
    sp.add_argument("--lam", type=float, choices=[0.0, 0.5], default=0.0)
    sp.add_argument("--xi", type=float, default=0.1)
    poly(sp)
    sp.add_argument("--n-gl", type=int, default=64)
    sp.add_argument("--n-contour", type=int, default=256)
    sp.add_argument("--radius", type=float, default=0.5)
    sp.add_argument("--draws", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("residual", help="ODE residual of a series solution over a z grid")
    sp.add_argument("--kind", choices=["first", "second"], default="first")
    lame(sp)
    trunc(sp)
    grid(sp)
    sp.add_argument("--in-quarter-periods", action="store_true",
                    help="read the grid in units of K(rho)")
    sp.add_argument("--tol", type=float, default=RESIDUAL_TOL)

    sp = sub.add_parser("domain", help="convergence verdict at one point")
    sp.add_argument("--rho", type=_modulus, required=True)
    sp.add_argument("--xi", type=float, required=True)

    sp = sub.add_parser("heun-local", help="the nine local solutions and their residuals")
    lame(sp)
    sp.add_argument("--xi", type=float, required=True)
    sp.add_argument("--n-mu", type=int, default=None, help="default: chosen from the variables")
    sp.add_argument("--n-inner", type=int, default=None)
    return parser


COMMANDS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "verify-oracle": cmd_verify_oracle,
    "verify-integral": cmd_verify_integral,
    "residual": cmd_residual,
    "domain": cmd_domain,
    "heun-local": cmd_heun_local,
}


def run(args, stream=None):
    parser = build_parser()
    if getattr(args, "command", None) in ("table", "residual") and not args.start < args.stop:
        parser.error("grid needs start < stop")
    stream = stream if stream is not None else sys.stdout
    try:
        return COMMANDS[args.command](args, Output(stream))
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            return run(args, fh)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
