"""Command-line front end: verification suites and reproducible JSON reports.

Every run embeds its full configuration in the output document.  Floats are
rendered with 17 significant digits and dictionaries keep insertion order, so
identical configurations produce byte-identical output.  Exit codes: 0 for
success, 1 for usage errors, 2 when the identity suite finds a nonzero
residual.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from fractions import Fraction
from typing import Any, Sequence

from .chebyshev import (
    ExactPoly,
    ZERO,
    chain_decomposition_residual,
    cheb_poly,
    difference_monomial_residual,
    inner_product,
    linearize_power,
    monomial_expansion,
    odd_reduction_residual,
    power_sum_identity_residual,
    vanishing_chain_sum,
)
from .constants import compute_constants, nu_max
from .explicit import (
    density_prediction,
    first_power_prime_sum,
    higher_power_prime_sum,
    prime_cutoffs,
    square_power_prime_sum,
)
from .forms import DISTRIBUTIONS, SyntheticForm, fejer_test_function
from .petersson import RAMANUJAN_TAU, default_c_max, old_part_terms, petersson_delta

DEFAULT_SEED = 1729


def render_json(value: Any, indent: int = 0) -> str:
    """Canonical JSON: insertion order, %.17g floats, fractions as "p/q"."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [f'{inner}{json.dumps(str(k))}: {render_json(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rows = [f"{inner}{render_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("reports must not contain NaN or infinity")
        return f"{value:.17g}"
    if isinstance(value, Fraction):
        return json.dumps(str(value))
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value).__name__}")


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="symlow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: _Parser, tabular: bool = False) -> None:
        p.add_argument("--threads", type=_positive, default=1,
                       help="parallelism cap (reserved; evaluation is single-threaded)")
        choices = ["json", "csv"] if tabular else ["json"]
        p.add_argument("--output", choices=choices, default="json")

    p = sub.add_parser("identities", help="run the exact identity suite")
    p.add_argument("--kmax", type=_positive, default=8,
                   help="bound for power-sum, chain, and reduction identities")
    p.add_argument("--coeff-kmax", type=_positive, default=40,
                   help="bound for the difference-monomial coefficient identity")
    p.add_argument("--lmax", type=_positive, default=60,
                   help="bound for the monomial-expansion reassembly")
    p.add_argument("--ortho-max", type=_positive, default=30,
                   help="bound for the orthonormality table")
    p.add_argument("--power-max", type=_positive, default=6,
                   help="bound for the linearization reassembly")
    common(p)

    p = sub.add_parser("constants", help="compute the expansion constants")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--kappa", type=_positive, required=True)
    p.add_argument("--cutoff", type=_positive, default=None,
                   help="prime cutoff applied to both sieved constants")
    common(p)

    p = sub.add_parser("predict", help="assemble the density prediction")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--kappa", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--nu", type=_fraction, required=True)
    p.add_argument("--phi", choices=["fejer"], default="fejer")
    p.add_argument("--cutoff", type=_positive, default=None)
    common(p)

    p = sub.add_parser("pterms", help="evaluate the prime sums on a synthetic form")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--kappa", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--nu", type=_fraction, required=True)
    p.add_argument("--phi", choices=["fejer"], default="fejer")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--dist", choices=list(DISTRIBUTIONS), default="sato-tate")
    p.add_argument("--eps", type=int, choices=[1, -1], default=1)
    common(p)

    p = sub.add_parser("petersson", help="truncated diagonal term with tail bound")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--kappa", type=_positive, required=True)
    p.add_argument("--cmax", type=_positive, default=None)
    common(p)

    p = sub.add_parser("tau-check", help="weight-12 coefficient comparison table")
    p.add_argument("--kappa", type=_positive, default=12)
    p.add_argument("--m-list", default="2,3,4,5",
                   help="comma-separated indices, each between 2 and 10")
    p.add_argument("--cmax", type=_positive, default=None)
    common(p, tabular=True)
    return parser


def _max_residual(polys: Sequence[ExactPoly]) -> Fraction:
    worst = Fraction(0)
    for p in polys:
        for c in p.coeffs:
            worst = max(worst, abs(c))
    return worst


def run_identity_suite(
    kmax: int = 8,
    coeff_kmax: int = 40,
    lmax: int = 60,
    ortho_max: int = 30,
    power_max: int = 6,
) -> tuple[list[dict[str, Any]], list[str]]:
    """Exact residuals of every polynomial identity; failures are nonzero ones."""
    checks: list[dict[str, Any]] = []

    def record(name: str, cases: int, residual: Fraction) -> None:
        checks.append({"name": name, "cases": cases, "max_residual": residual})

    record(
        "monomial_reassembly",
        lmax + 1,
        _max_residual([monomial_expansion(l) - cheb_poly(l) for l in range(lmax + 1)]),
    )

    worst = Fraction(0)
    cases = 0
    for i in range(ortho_max + 1):
        for j in range(i, ortho_max + 1):
            expected = Fraction(1 if i == j else 0)
            worst = max(worst, abs(inner_product(cheb_poly(i), cheb_poly(j)) - expected))
            cases += 1
    record("orthonormality", cases, worst)

    reassembled = []
    for varpi in range(1, power_max + 1):
        for r in range(1, power_max + 1):
            reassembled.append(linearize_power(varpi, r).to_poly() - cheb_poly(r) ** varpi)
    record("linearization_reassembly", len(reassembled), _max_residual(reassembled))

    record(
        "power_sum_identity",
        kmax * kmax,
        _max_residual(
            [power_sum_identity_residual(n, r)
             for n in range(1, kmax + 1) for r in range(1, kmax + 1)]
        ),
    )
    record(
        "chain_decomposition",
        kmax,
        _max_residual([chain_decomposition_residual(k0) for k0 in range(1, kmax + 1)]),
    )
    record(
        "odd_reduction",
        kmax,
        _max_residual([odd_reduction_residual(k) for k in range(1, kmax + 1)]),
    )
    vanish = max(
        [abs(vanishing_chain_sum(1) - 1)]
        + [abs(vanishing_chain_sum(k0)) for k0 in range(2, kmax + 1)]
    )
    record("vanishing_chain_sum", kmax, vanish)
    record(
        "difference_monomial",
        coeff_kmax,
        _max_residual([difference_monomial_residual(k) for k in range(1, coeff_kmax + 1)]),
    )

    failures = [c["name"] for c in checks if c["max_residual"] != 0]
    return checks, failures


def _cmd_identities(args: argparse.Namespace) -> tuple[int, str]:
    config = {
        "command": "identities",
        "kmax": args.kmax,
        "coeff_kmax": args.coeff_kmax,
        "lmax": args.lmax,
        "ortho_max": args.ortho_max,
        "power_max": args.power_max,
        "seed": DEFAULT_SEED,
        "threads": args.threads,
        "output": args.output,
    }
    checks, failures = run_identity_suite(
        args.kmax, args.coeff_kmax, args.lmax, args.ortho_max, args.power_max
    )
    doc = {"suite": "identities", "config": config, "checks": checks, "failures": failures}
    return (2 if failures else 0), render_json(doc)


def _bundle_for(r: int, kappa: int, cutoff: int | None):
    if cutoff is None:
        return compute_constants(r, kappa)
    return compute_constants(r, kappa, pnt_cutoff=cutoff, c_cutoff=cutoff)


def _cmd_constants(args: argparse.Namespace) -> tuple[int, str]:
    config = {
        "command": "constants",
        "r": args.r,
        "kappa": args.kappa,
        "cutoff": args.cutoff,
        "seed": DEFAULT_SEED,
        "threads": args.threads,
        "output": args.output,
    }
    bundle = _bundle_for(args.r, args.kappa, args.cutoff)
    doc = {
        "config": config,
        "bundle": dataclass_dict(bundle),
        "nu_limit": nu_max(args.r, args.kappa),
    }
    return 0, render_json(doc)


def dataclass_dict(obj: Any) -> dict[str, Any]:
    return dataclasses.asdict(obj)


def _cmd_predict(args: argparse.Namespace) -> tuple[int, str]:
    config = {
        "command": "predict",
        "r": args.r,
        "kappa": args.kappa,
        "q": args.q,
        "nu": args.nu,
        "phi": args.phi,
        "cutoff": args.cutoff,
        "seed": DEFAULT_SEED,
        "threads": args.threads,
        "output": args.output,
    }
    report = density_prediction(
        args.r, args.kappa, args.q,
        fejer_test_function(args.nu),
        constants=_bundle_for(args.r, args.kappa, args.cutoff),
    )
    doc = {"config": config, "report": report.as_dict()}
    return 0, render_json(doc)


def _cmd_pterms(args: argparse.Namespace) -> tuple[int, str]:
    config = {
        "command": "pterms",
        "r": args.r,
        "kappa": args.kappa,
        "q": args.q,
        "nu": args.nu,
        "phi": args.phi,
        "seed": args.seed,
        "dist": args.dist,
        "eps": args.eps,
        "threads": args.threads,
        "output": args.output,
    }
    form = SyntheticForm(
        kappa=args.kappa, q=args.q, eps_f=args.eps, seed=args.seed, distribution=args.dist
    )
    phi = fejer_test_function(args.nu)
    doc = {
        "config": config,
        "cutoffs": prime_cutoffs(args.q, args.r, args.nu),
        "first_power": first_power_prime_sum(form, phi, args.r),
        "square_power": [
            square_power_prime_sum(form, phi, args.r, m) for m in range(args.r)
        ],
        "higher_power": higher_power_prime_sum(form, phi, args.r),
    }
    return 0, render_json(doc)


def _cmd_petersson(args: argparse.Namespace) -> tuple[int, str]:
    c_max = args.cmax if args.cmax is not None else default_c_max(args.m)
    config = {
        "command": "petersson",
        "m": args.m,
        "k": args.k,
        "kappa": args.kappa,
        "cmax": c_max,
        "seed": DEFAULT_SEED,
        "threads": args.threads,
        "output": args.output,
    }
    term = petersson_delta(args.m, args.k, args.kappa, c_max)
    return 0, render_json({"config": config, "term": dataclass_dict(term)})


def _tau_rows(m_values: list[int], kappa: int, c_max: int | None) -> list[dict[str, Any]]:
    base = petersson_delta(1, 1, kappa, c_max)
    denom = max(abs(base.value) - base.tail_estimate, 1e-300)
    rows = []
    for m in m_values:
        term = petersson_delta(m, 1, kappa, c_max)
        ratio = term.value / base.value
        target = RAMANUJAN_TAU[m] / m ** ((kappa - 1) / 2.0)
        tail = (term.tail_estimate + abs(ratio) * base.tail_estimate) / denom
        rows.append(
            {
                "m": m,
                "ratio": ratio,
                "target": target,
                "abs_diff": abs(ratio - target),
                "tail_bound": tail,
            }
        )
    return rows


def _cmd_tau_check(args: argparse.Namespace) -> tuple[int, str]:
    if args.kappa != 12:
        raise ValueError("the coefficient table is defined for weight 12, level 1 only")
    try:
        m_values = [int(piece) for piece in args.m_list.split(",") if piece.strip()]
    except ValueError as exc:
        raise ValueError(f"--m-list must be comma-separated integers: {args.m_list!r}") from exc
    if not m_values:
        raise ValueError("--m-list must name at least one index")
    for m in m_values:
        if m not in RAMANUJAN_TAU or m == 1:
            raise ValueError(f"index {m} is outside the frozen table range 2..10")
    config = {
        "command": "tau-check",
        "kappa": args.kappa,
        "m_list": ",".join(str(m) for m in m_values),
        "cmax": args.cmax,
        "seed": DEFAULT_SEED,
        "threads": args.threads,
        "output": args.output,
    }
    rows = _tau_rows(m_values, args.kappa, args.cmax)
    if args.output == "csv":
        lines = [f"# {key}={value}" for key, value in config.items()]
        lines.append("m,ratio,target,abs_diff,tail_bound")
        for row in rows:
            lines.append(
                f'{row["m"]},{row["ratio"]:.17g},{row["target"]:.17g},'
                f'{row["abs_diff"]:.17g},{row["tail_bound"]:.17g}'
            )
        return 0, "\n".join(lines)
    doc = {
        "config": config,
        "rows": rows,
        "max_abs_diff": max(row["abs_diff"] for row in rows),
    }
    return 0, render_json(doc)


_HANDLERS = {
    "identities": _cmd_identities,
    "constants": _cmd_constants,
    "predict": _cmd_predict,
    "pterms": _cmd_pterms,
    "petersson": _cmd_petersson,
    "tau-check": _cmd_tau_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, document = _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"symlow: error: {exc}", file=sys.stderr)
        return 1
    print(document)
    return code


if __name__ == "__main__":
    sys.exit(main())
