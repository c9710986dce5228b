"""Command-line interface: ``mievirial {compute,compare,boyle,asymptotic,brackets-demo}``.

Reduced values use ``B* = B / (2 pi sigma^3 / 3)``. Temperatures are given
either as ``--tstar`` (T* = kT / (A eps)) or as ``--kT-over-eps``; both are
echoed in every table.

Exit codes: 0 success, 1 comparison FAIL, 2 configuration error,
3 convergence failure in some method, 4 Boyle root not bracketed.
"""

from __future__ import annotations

import argparse
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__, brackets, virial
from .errors import BracketNotFoundError, ConvergenceError, DomainError, MieVirialError
from .mie import MiePotential
from .specfun import DEFAULT_TOLERANCE

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_NO_ROOT = 4

CSV_HEADER = ("t_star", "kT_over_eps", "method", "b_over_sigma3", "b_reduced",
              "terms_used", "error_estimate")
COMPARE_HEADER = ("t_star", "kT_over_eps", "max_rel_dev", "worst_pair", "status")

SCHEMA_VERSION = 1


class ConfigError(Exception):
    """Bad command-line configuration (exit code 2)."""


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def fmt17(x: float) -> str:
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return format(x, ".17g")


def fmt10(x: float) -> str:
    return format(x, ".10g")


def dumps_json(obj) -> str:
    """JSON text with every float written to 17 significant digits.

    Floats are swapped for placeholder tokens, serialized, then the quoted
    tokens are replaced by the formatted numbers. Non-finite floats become null.
    """
    floats = []

    def swap(o):
        if isinstance(o, float):
            floats.append(o)
            return f"\u0000{len(floats) - 1}\u0000"
        if isinstance(o, dict):
            return {k: swap(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [swap(v) for v in o]
        return o

    text = json.dumps(swap(obj), indent=2, ensure_ascii=False)
    for i, x in enumerate(floats):
        token = json.dumps(f"\u0000{i}\u0000")
        text = text.replace(token, fmt17(x) if math.isfinite(x) else "null", 1)
    return text + "\n"


def render_table(header, rows, fmt: str) -> str:
    """CSV or aligned plain text; float cells use 17 or 10 digits respectively."""
    if fmt == "csv":
        out = io.StringIO()
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(fmt17(c) if isinstance(c, float) else str(c) for c in row) + "\n")
        return out.getvalue()
    cells = [list(header)] + [[fmt10(c) if isinstance(c, float) else str(c) for c in row]
                              for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

def parse_values(text: str) -> list:
    """``"1,2,5"`` or ``"a:b:log:N"`` / ``"a:b:lin:N"`` (N points, ends included)."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 4 or parts[2] not in ("log", "lin"):
                raise ConfigError(f"range must look like a:b:log:N or a:b:lin:N, got {text!r}")
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[3])
            if count < 1:
                raise ConfigError("range needs at least one point")
            if count == 1:
                return [lo]
            if parts[2] == "log":
                if not (lo > 0 and hi > 0):
                    raise ConfigError("log range needs positive ends")
                step = math.log(hi / lo) / (count - 1)
                vals = [lo * math.exp(i * step) for i in range(count)]
            else:
                vals = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
            vals[-1] = hi
            return vals
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse temperature values {text!r}: {exc}") from None


@dataclass
class RunConfig:
    n: float
    m: float
    sigma: float = 1.0
    t_stars: list = field(default_factory=list)
    given_as: str = "tstar"
    methods: list = field(default_factory=list)
    tolerance: float = DEFAULT_TOLERANCE
    output_format: str = "csv"
    output_path: Optional[str] = None

    @property
    def potential(self) -> MiePotential:
        return MiePotential(self.n, self.m, self.sigma)

    def echo(self) -> dict:
        return {
            "n": self.n, "m": self.m, "sigma": self.sigma,
            "prefactor_A": self.potential.prefactor,
            "temperature_given_as": self.given_as,
            "t_star": list(self.t_stars),
            "methods": [mt.value for mt in self.methods],
            "tolerance": self.tolerance,
        }


def _method_by_name(name: str) -> virial.Method:
    for mt in virial.Method:
        if mt.value.lower() == name.strip().lower():
            return mt
    choices = ", ".join(mt.value for mt in virial.Method)
    raise ConfigError(f"unknown method {name!r}; choose from {choices}")


def build_config(args, need_temperature: bool = True) -> RunConfig:
    try:
        p = MiePotential(args.n, args.m, args.sigma)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    t_stars, given = [], "tstar"
    if getattr(args, "tstar", None) is not None:
        t_stars = parse_values(args.tstar)
    elif getattr(args, "kT_over_eps", None) is not None:
        given = "kT_over_eps"
        t_stars = [v / p.prefactor for v in parse_values(args.kT_over_eps)]
    elif need_temperature:
        raise ConfigError("give --tstar or --kT-over-eps")
    if need_temperature and not t_stars:
        raise ConfigError("no temperature values given")
    for t in t_stars:
        if not (t > 0 and math.isfinite(t)):
            raise ConfigError(f"temperatures must be positive, got {t!r}")
    if getattr(args, "methods", None):
        methods = [_method_by_name(s) for s in args.methods.split(",") if s.strip()]
        bad = [mt.value for mt in methods if mt not in virial.applicable_methods(p.n, p.m, True)]
        if bad:
            raise ConfigError(f"method(s) {', '.join(bad)} do not apply to (n, m) = ({p.n:g}, {p.m:g})")
        methods = sorted(set(methods), key=list(virial.Method).index)
    else:
        methods = virial.applicable_methods(p.n, p.m)
    tol = getattr(args, "tolerance", DEFAULT_TOLERANCE)
    if not tol > 0:
        raise ConfigError("tolerance must be positive")
    return RunConfig(p.n, p.m, p.sigma, t_stars, given, methods, tol,
                     getattr(args, "format", "csv"), getattr(args, "output", None))


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

METHOD_NOTES = {
    virial.Method.QUADRATURE: "adaptive Gauss-Kronrod 15, abs_tol 1e-13, rel_tol 1e-12 (independent of --tolerance)",
    virial.Method.LOW_T_ASYMPTOTIC: "truncated at order 2; approximation",
    virial.Method.HIGH_T_LEADING: "k = 0 term only; approximation",
}


def _compute_rows(cfg: RunConfig):
    p = cfg.potential
    rows, results, failures = [], {}, []
    for t in cfg.t_stars:
        tau = t * p.prefactor
        for mt in cfg.methods:
            try:
                r = virial.evaluate(mt, p, t, cfg.tolerance)
            except ConvergenceError as exc:
                failures.append(f"{mt.value} at t_star={fmt17(t)}: {exc}")
                continue
            results[(t, mt)] = r
            rows.append((t, tau, mt.value, r.b_over_sigma3, r.b_reduced, r.terms_used,
                         r.error_estimate))
    return rows, results, failures


def _diagnostics(cfg: RunConfig, failures) -> dict:
    notes = {mt.value: METHOD_NOTES[mt] for mt in cfg.methods if mt in METHOD_NOTES}
    return {"method_notes": notes, "failures": list(failures)}


def cmd_compute(cfg: RunConfig) -> int:
    rows, _, failures = _compute_rows(cfg)
    if cfg.output_format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "config": cfg.echo(),
            "rows": [dict(zip(CSV_HEADER, r)) for r in rows],
            "diagnostics": _diagnostics(cfg, failures),
        }
        text = dumps_json(doc)
    else:
        text = render_table(CSV_HEADER, rows, cfg.output_format)
    _emit(text, cfg.output_path)
    for f in failures:
        print(f"convergence failure: {f}", file=sys.stderr)
    return EXIT_CONVERGENCE if failures else EXIT_OK


def relative_deviation(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def cmd_compare(cfg: RunConfig, max_dev: float) -> int:
    if len(cfg.methods) < 2:
        raise ConfigError("compare needs at least two applicable methods")
    _, results, failures = _compute_rows(cfg)
    p = cfg.potential
    rows = []
    all_pass = True
    for t in cfg.t_stars:
        got = [(mt, results[(t, mt)].b_over_sigma3) for mt in cfg.methods if (t, mt) in results]
        worst, pair = 0.0, "-"
        for (ma, va), (mb, vb) in itertools.combinations(got, 2):
            d = relative_deviation(va, vb)
            if d > worst or pair == "-":
                worst, pair = d, f"{ma.value}/{mb.value}"
        ok = len(got) >= 2 and worst <= max_dev
        all_pass &= ok
        rows.append((t, t * p.prefactor, worst, pair, "PASS" if ok else "FAIL"))
    if cfg.output_format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "config": {**cfg.echo(), "max_dev": max_dev},
            "rows": [dict(zip(COMPARE_HEADER, r)) for r in rows],
            "diagnostics": _diagnostics(cfg, failures),
        }
        text = dumps_json(doc)
    else:
        text = render_table(COMPARE_HEADER, rows, cfg.output_format)
    _emit(text, cfg.output_path)
    for f in failures:
        print(f"convergence failure: {f}", file=sys.stderr)
    if failures:
        return EXIT_CONVERGENCE
    return EXIT_OK if all_pass else EXIT_FAIL


def cmd_boyle(args) -> int:
    cfg = build_config(args, need_temperature=False)
    p = cfg.potential
    method = _method_by_name(args.method) if args.method else virial.Method.GENERAL_SERIES
    if method not in virial.applicable_methods(p.n, p.m) or method is virial.Method.BRACKETS:
        raise ConfigError(f"method {method.value} cannot be used for the Boyle search here")
    try:
        search = virial.boyle_search(p, cfg.tolerance, method)
    except BracketNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    tau = search.root * p.prefactor
    if cfg.output_format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "config": {"n": p.n, "m": p.m, "sigma": p.sigma, "prefactor_A": p.prefactor,
                       "method": method.value, "tolerance": cfg.tolerance},
            "rows": [{"t_star_boyle": search.root, "kT_over_eps_boyle": tau}],
            "diagnostics": {"bracket": list(search.bracket),
                            "history": [list(h) for h in search.history]},
        }
        text = dumps_json(doc)
    elif cfg.output_format == "csv":
        text = render_table(("method", "t_star_boyle", "kT_over_eps_boyle"),
                            [(method.value, search.root, tau)], "csv")
    else:
        text = (f"Boyle temperature for Mie ({p.n:g}, {p.m:g}) by {method.value}\n"
                f"  T*_B      = {fmt10(search.root)}\n"
                f"  kT_B/eps  = {fmt10(tau)}   (A = {fmt10(p.prefactor)})\n"
                f"  bisection steps = {len(search.history)}\n")
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_asymptotic(args) -> int:
    try:
        p = MiePotential(args.n, args.m, args.sigma)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    try:
        fam = virial.low_t_family(p.n, p.m)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    if args.order < 0:
        raise ConfigError("order must be nonnegative")
    tau = float(args.kT_over_eps)
    if not tau > 0:
        raise ConfigError("kT/eps must be positive")
    coefs = fam.coefficients(args.order)
    result = virial.b_low_t_asymptotic(p, tau, args.order)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "config": {"n": p.n, "m": p.m, "sigma": p.sigma, "kT_over_eps": tau,
                       "order": args.order},
            "rows": [{"order": k, "coefficient": str(c)} for k, c in enumerate(coefs)],
            "diagnostics": {"prefactor": f"-{fam.constant_text} sqrt(kT/eps) exp(eps/kT)",
                            "parameters": [str(fam.a1), str(fam.a2)],
                            "b_over_sigma3": result.b_over_sigma3,
                            "error_estimate": result.error_estimate},
        }
        text = dumps_json(doc)
    else:
        lines = [f"low-temperature expansion for Mie ({p.n:g}, {p.m:g})",
                 f"  B/sigma^3 ~ -{fam.constant_text} sqrt(kT/eps) exp(eps/kT)"
                 f" 2F0({fam.a1}, {fam.a2}; ; kT/eps)",
                 "  coefficients:"]
        lines += [f"    order {k}: {c}" for k, c in enumerate(coefs)]
        fmt = fmt17 if args.format == "csv" else fmt10
        lines += [f"  kT/eps = {fmt(tau)}",
                  f"  B/sigma^3 = {fmt(result.b_over_sigma3)}",
                  f"  error estimate = {fmt(result.error_estimate)}"]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


LAMBDA_DEMO = (1e4, 1e6, 1e8)


def brackets_demo_text(n: float, m: float, t_star: float = 1.0, terms: int = 10) -> str:
    """Stable plain-text trace of the bracket engine on the virial series."""
    series = brackets.virial_bracket_series(n, m)
    out = [f"bracket series for J, Mie ({n:g}, {m:g})",
           f"  indices: {', '.join(series.indices)}",
           f"  coefficient: -2 pi",
           f"  brackets: " + ", ".join(f"<{b}>" for b in series.brackets),
           f"  sign exponent: {series.sign_exponent}",
           "  parameter powers: " + ", ".join(f"{k}^({v})" for k, v in series.parameter_powers.items())]
    surviving = None
    for i, oc in enumerate(brackets.solve_choices(series), 1):
        out.append(f"choice {i}: solve {', '.join(oc.solved)}; free {', '.join(oc.free) or '-'}")
        if oc.basis is None:
            out.append(f"  skipped: {oc.skipped_reason}")
            continue
        b = oc.basis
        for name, form in b.solved_indices.items():
            out.append(f"  {name} = {form}")
        out.append(f"  determinant: {b.determinant_abs}")
        out.append("  gamma arguments: " + ", ".join(f"Gamma({g})" for g in b.gamma_arguments))
        out.append(f"  sign exponent: {b.sign_exponent}")
        out.append("  parameter powers: " + ", ".join(f"{k}^({v})" for k, v in b.parameter_powers.items()))
        out.append(f"  real: {'yes' if b.is_real else 'no'}")
        if b.is_real and surviving is None:
            surviving = b
    if surviving is None:
        out.append("no real branch")
        return "\n".join(out) + "\n"
    (k_name,) = surviving.free_indices
    params = {"inv_t": 1.0 / t_star, "sigma": 1.0}
    out.append(f"surviving branch: free {k_name}, T* = {fmt10(t_star)}, sigma = 1")
    for k in range(terms):
        out.append(f"  term {k}: {fmt10(brackets._basis_term(surviving, {k_name: k}, params))}")
    partial = brackets.evaluate_basis_series(surviving, params, fixed_terms=terms)
    full = brackets.evaluate_basis_series(surviving, params)
    out.append(f"  sum of first {terms} terms: {fmt10(partial.value)}")
    out.append(f"  full sum: {fmt10(full.value)} ({full.terms_used} terms)")
    ref = virial.b_general_series(MiePotential(n, m), t_star)
    out.append(f"  general series: {fmt10(ref.b_over_sigma3)}")
    out.append("regulator term J_Lambda (same branch at T* = Lambda):")
    for lam in LAMBDA_DEMO:
        jl = brackets.evaluate_basis_series(surviving, {"inv_t": 1.0 / lam, "sigma": 1.0})
        out.append(f"  Lambda = {lam:.0e}: J = {fmt10(jl.value)}, ratio to J(T*) = "
                   f"{fmt10(jl.value / full.value)}")
    out.append("  every exponent of 1/Lambda is positive, so the limit is taken as zero")
    return "\n".join(out) + "\n"


def cmd_brackets_demo(args) -> int:
    try:
        MiePotential(args.n, args.m)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    if not args.tstar > 0:
        raise ConfigError("--tstar must be positive")
    if args.terms < 1:
        raise ConfigError("--terms must be at least 1")
    _emit(brackets_demo_text(float(args.n), float(args.m), args.tstar, args.terms), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _positive_float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mievirial",
        description="Second virial coefficient of the Mie (n, m) potential. "
                    "Values are B/sigma^3 and the reduced B* = B / (2 pi sigma^3 / 3).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, temperature=True, fmt_default="csv"):
        sp.add_argument("--n", type=_positive_float, required=True, help="repulsive exponent")
        sp.add_argument("--m", type=_positive_float, required=True, help="attractive exponent")
        sp.add_argument("--sigma", type=_positive_float, default=1.0)
        if temperature:
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--tstar", help="T* values: list 'a,b,c' or range 'a:b:log:N'")
            g.add_argument("--kT-over-eps", dest="kT_over_eps",
                           help="kT/eps values, same syntax; converted with T* = (kT/eps)/A")
        sp.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE)
        sp.add_argument("--format", choices=("csv", "json", "text"), default=fmt_default)
        sp.add_argument("--output", help="write to this file instead of stdout")

    p_compute = sub.add_parser("compute", help="table of B by each method")
    common(p_compute)
    p_compute.add_argument("--methods", help="comma-separated method names (default: all exact ones)")

    p_compare = sub.add_parser("compare", help="max pairwise deviation between methods")
    common(p_compare)
    p_compare.add_argument("--methods")
    p_compare.add_argument("--max-dev", type=_positive_float, default=1e-8)

    p_boyle = sub.add_parser("boyle", help="Boyle temperature (B = 0)")
    common(p_boyle, temperature=False, fmt_default="text")
    p_boyle.add_argument("--method", default=None, help="GeneralSeries (default), Quadrature, ...")

    p_asym = sub.add_parser("asymptotic", help="low-temperature 2F0 expansion")
    common(p_asym, temperature=False, fmt_default="text")
    p_asym.add_argument("--kT-over-eps", dest="kT_over_eps", type=_positive_float, default=0.05)
    p_asym.add_argument("--order", type=int, default=2)

    p_demo = sub.add_parser("brackets-demo", help="trace of the method-of-brackets engine")
    p_demo.add_argument("--n", type=_positive_float, required=True)
    p_demo.add_argument("--m", type=_positive_float, required=True)
    p_demo.add_argument("--tstar", type=_positive_float, default=1.0)
    p_demo.add_argument("--terms", type=int, default=10)
    p_demo.add_argument("--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(build_config(args))
        if args.command == "compare":
            return cmd_compare(build_config(args), args.max_dev)
        if args.command == "boyle":
            return cmd_boyle(args)
        if args.command == "asymptotic":
            return cmd_asymptotic(args)
        return cmd_brackets_demo(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except MieVirialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
