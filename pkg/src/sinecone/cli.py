"""Command-line orchestration.

Subcommands: spectrum, stability, rigidity, verify-radial, verify-symbolic,
iterate, scan-products.  Exit codes: 0 success / verification pass; 2
verification failure; 3 unbounded-below regime; 4 invalid input or invariant
violation.  All errors are also emitted as structured JSON on stderr, and all
output ordering is deterministic (ascending eigenvalues, then block order).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, conemaps, radialoracle, rigidity, stability, symcheck
from .errors import SineconeError
from .exactreal import QuadReal, from_rational, quad_from_json, rational_ceiling, to_decimal
from .spectra import GeometricSpectrum, Spectrum, geometric_spectrum_to_json


def _parse_cutoff(text: str) -> QuadReal:
    text = text.strip()
    if text.startswith("{"):
        return quad_from_json(json.loads(text))
    return quad_from_json(text)


def _fmt_value(v: QuadReal) -> tuple[str, str]:
    return str(v), to_decimal(v, 6)


def _spectrum_table(spec: Spectrum, title: str) -> str:
    lines = [title, f"  {'value':>24} {'decimal':>16} {'mult':>5}  origins"]
    for line in spec.lines:
        exact, dec = _fmt_value(line.value)
        origins = ", ".join(f"{o.block}[{o.i}]+{o.j}(x{o.mult})" for o in line.origins)
        lines.append(f"  {exact:>24} {dec:>16} {line.multiplicity:>5}  {origins}")
    lines.append(f"  (complete up to {spec.cutoff})")
    return "\n".join(lines)


def _add_source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="path to a geometric-spectrum JSON file")
    src.add_argument("--sphere", type=int, metavar="N", help="round N-sphere base")
    src.add_argument(
        "--product",
        metavar="N1,N2",
        help="normalized Einstein product with strictly stable factors",
    )
    p.add_argument(
        "--allow-low-spectrum",
        action="store_true",
        help="accept spectra below the usual positive-eigenvalue bounds",
    )


def _resolve_source(args, spec0_need: Fraction) -> GeometricSpectrum:
    if args.input:
        return catalog.load_geometric_spectrum(
            args.input, hypothesis_override=args.allow_low_spectrum
        )
    if args.sphere is not None:
        return catalog.sphere_geometric_spectrum(
            args.sphere, from_rational(max(spec0_need, Fraction(0)))
        )
    n1, n2 = (int(x) for x in args.product.replace("x", ",").split(","))
    return catalog.product_geometric_spectrum(catalog.ProductMarker(n1, n2))


def _spec0_requirement(n: int, cutoff: QuadReal, shift: int) -> Fraction:
    need = conemaps.required_source_cutoff(n, cutoff, shift)
    return Fraction(-1) if need is None else rational_ceiling(need)


def _emit(args, payload: dict, tables: list[str]) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n\n".join(tables))


def _cmd_spectrum(args) -> int:
    cutoff = _parse_cutoff(args.cutoff)
    n_guess = args.sphere if args.sphere is not None else 0
    if args.operator == "laplace":
        need = _spec0_requirement(max(n_guess, 2), cutoff, 0)
    elif args.operator == "oneform":
        need = _spec0_requirement(max(n_guess, 2), cutoff, max(n_guess, 2))
    else:
        need = _spec0_requirement(max(n_guess, 3), cutoff, 2 * max(n_guess, 3))
    base = _resolve_source(args, need)

    if args.operator == "laplace":
        out = conemaps.map_functions(base, cutoff)
        payload = {"n": base.n, "operator": "laplace", "spectrum": out.to_json()}
        tables = [_spectrum_table(out, f"cone scalar spectrum (base n={base.n})")]
    elif args.operator == "oneform":
        out = conemaps.map_one_forms(base, cutoff)
        payload = {
            "n": base.n,
            "operator": "oneform",
            "exact_part": out.exact_part.to_json(),
            "coclosed_part": out.coclosed_part.to_json(),
        }
        tables = [
            _spectrum_table(out.exact_part, f"cone 1-form spectrum, exact part (base n={base.n})"),
            _spectrum_table(out.coclosed_part, "cone 1-form spectrum, coclosed part"),
        ]
    else:
        blocks = tuple(args.blocks.split(","))
        out = conemaps.map_einstein(base, cutoff, blocks=blocks)
        payload = {
            "n": base.n,
            "operator": "einstein",
            "conformal_block": out.conformal_block.to_json(),
            "vector_block": out.vector_block.to_json(),
            "tt_block": out.tt_block.to_json(),
            "scalar_boundary_case": out.scalar_boundary_case,
            "oneform_boundary_case": out.oneform_boundary_case,
        }
        tables = []
        if "conformal" in blocks:
            tables.append(_spectrum_table(out.conformal_block, "Einstein operator, conformal block"))
        if "vector" in blocks:
            tables.append(_spectrum_table(out.vector_block, "Einstein operator, vector block"))
        if "tt" in blocks:
            tables.append(_spectrum_table(out.tt_block, "Einstein operator, TT block"))
    _emit(args, payload, tables)
    return 0


def _verdict_row(name: str, v) -> str:
    if v.holds is None:
        return f"  {name:<12} undecided (insufficient spectral data)"
    flag = "yes" if v.holds else "no"
    strict = "strict" if v.strict else "non-strict"
    witness = "-" if v.witness_value is None else str(v.witness_value)
    return f"  {name:<12} {flag:<4} ({strict:<10})  witness {witness}"


def _cmd_stability(args) -> int:
    need = Fraction(2 * (args.sphere + 1)) if args.sphere is not None else Fraction(0)
    base = _resolve_source(args, need)
    report = stability.classify(base)
    predicted = stability.predict_cone(base)
    payload = {
        "base": report.to_json(),
        "cone_predicted": predicted.to_json(),
    }
    bounded = {True: "yes", False: "no", None: "undecided"}[report.bounded_below]
    tables = [
        "\n".join(
            [f"base classification (n={report.n})"]
            + [_verdict_row(k, getattr(report, k)) for k in ("eh", "linear", "tangential", "physical")]
            + [f"  bounded-below cone: {bounded}"]
        ),
        "\n".join(
            [f"cone prediction (n={predicted.n})"]
            + [_verdict_row(k, getattr(predicted, k)) for k in ("eh", "linear", "tangential", "physical")]
        ),
    ]
    if args.cross_check:
        result = stability.cross_check(base)
        payload["cross_check"] = result.to_json()
        status = "consistent" if result.consistent else "DISCREPANT"
        tables.append(
            "cross-check: " + status
            + ("".join("\n  " + d for d in result.discrepancies))
        )
    _emit(args, payload, tables)
    return 0


def _cmd_rigidity(args) -> int:
    base = _resolve_source(args, Fraction(0))
    certs = rigidity.find_ieds(base)
    payload = {"n": base.n, "certificates": [c.to_json() for c in certs]}
    rows = [f"deformation certificates (base n={base.n}):"]
    if not certs:
        rows.append("  none: the cone TT block has no zero modes from this data")
    for c in certs:
        kind = "bounded" if c.bounded else "unbounded-profile"
        rows.append(
            f"  source {str(c.kappa):>10}  ladder index {c.j}  {kind}  multiplicity {c.multiplicity}"
        )
    _emit(args, payload, rows)
    return 0


def _cmd_scan_products(args) -> int:
    rows = rigidity.product_rigidity_scan(args.start, args.end)
    payload = {"rows": [r.to_json() for r in rows]}
    table = ["product sine-cone scan:", f"  {'n':>4} {'tt-line':>10}  status"]
    for r in rows:
        if r.unbounded_below:
            status = "unbounded below"
        elif r.has_ied:
            js = ", ".join(f"j={c.j}" for c in r.certificates)
            status = f"L2 deformation ({js}, unbounded profile)"
        else:
            status = "rigid (no zero modes)"
        table.append(f"  {r.n:>4} {str(r.kappa):>10}  {status}")
    _emit(args, payload, ["\n".join(table)])
    return 0


def _cmd_verify_radial(args) -> int:
    coupling = Fraction(args.coupling)
    hardy = Fraction(-((args.n - 1) ** 2), 4)
    if args.block == "tt" and coupling < hardy:
        epsilons = [float(x) for x in args.epsilons.split(",")]
        quotients = radialoracle.rayleigh_unbounded_demo(args.n, float(coupling), epsilons)
        if args.csv:
            radialoracle.quotients_to_csv(args.csv, epsilons, quotients)
        payload = {
            "n": args.n,
            "coupling": str(coupling),
            "regime": "below the boundedness threshold",
            "epsilons": epsilons,
            "quotients": quotients,
            "eps2_quotients": [e * e * q for e, q in zip(epsilons, quotients)],
        }
        _emit(args, payload, [json.dumps(payload, indent=2, sort_keys=True)])
        return 0
    report = radialoracle.verify_line(
        args.n, args.block, coupling, args.modes, args.tol, args.grid, args.eps
    )
    _emit(args, {"report": report}, [json.dumps(report, indent=2, sort_keys=True)])
    return 0


def _cmd_verify_symbolic(args) -> int:
    reports = [symcheck.check_commutators(args.n)]
    for j in range(args.jmax + 1):
        symcheck.build_harmonic_family(args.n, args.k, j)
        reports.append(symcheck.verify_decomposition(args.n, args.k, j))
        if args.k >= 1:
            reports.append(symcheck.verify_formulas1(args.n, args.k, j))
        if args.k >= 2:
            reports.append(symcheck.verify_formulas2(args.n, args.k, j))
            reports.append(symcheck.verify_formulas3(args.n, args.k, j))
    payload = {"reports": reports, "passed": True}
    _emit(args, payload, [f"all {len(reports)} symbolic reports passed"])
    return 0


def _cmd_iterate(args) -> int:
    cutoff = _parse_cutoff(args.cutoff)
    parts = tuple(args.parts.split(","))
    if args.sphere is not None:
        reqs = conemaps.iterate_base_requirements(args.sphere, args.count, cutoff, parts)
        base = catalog.sphere_geometric_spectrum(
            args.sphere, from_rational(max(reqs[0], Fraction(0)))
        )
    else:
        base = _resolve_source(args, Fraction(0))
    out = conemaps.iterate(base, args.count, cutoff, parts=parts)
    payload = geometric_spectrum_to_json(out)
    tables = [
        _spectrum_table(out.spec0, f"iterated scalar spectrum (n={out.n})"),
        _spectrum_table(out.spec1D, "iterated coclosed 1-form spectrum"),
        _spectrum_table(out.specE_TT, "iterated TT spectrum"),
    ]
    _emit(args, payload, tables)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinecone",
        description="exact sine-cone spectra, stability and rigidity",
    )
    parser.add_argument("--output", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(*args, **kwargs):
        p = sub.add_parser(*args, **kwargs)
        # accept --output after the subcommand too; SUPPRESS keeps the
        # top-level value when the flag is not repeated
        p.add_argument("--output", choices=("table", "json"), default=argparse.SUPPRESS)
        return p

    p = add_parser("spectrum", help="transform base spectra to cone spectra")
    _add_source_args(p)
    p.add_argument("--operator", choices=("laplace", "oneform", "einstein"), default="laplace")
    p.add_argument("--cutoff", required=True, help="integer, p/q, or QuadReal JSON")
    p.add_argument("--blocks", default="conformal,vector,tt")
    p.set_defaults(func=_cmd_spectrum)

    p = add_parser("stability", help="classify a base and predict its cone")
    _add_source_args(p)
    p.add_argument("--cross-check", action="store_true")
    p.set_defaults(func=_cmd_stability)

    p = add_parser("rigidity", help="find cone deformation certificates")
    _add_source_args(p)
    p.set_defaults(func=_cmd_rigidity)

    p = add_parser("scan-products", help="classify product sine-cones by dimension")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.set_defaults(func=_cmd_scan_products)

    p = add_parser("verify-radial", help="numerically verify radial eigenvalue ladders")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block", choices=radialoracle.BLOCKS, default="function")
    p.add_argument("--coupling", required=True, help="rational coupling (p/q)")
    p.add_argument("--modes", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--grid", type=int, default=4000, metavar="N")
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--epsilons", default="0.4,0.2,0.1,0.05",
                   help="support sizes for the unbounded-regime demonstrator")
    p.add_argument("--csv", help="dump quotient sequence as CSV")
    p.set_defaults(func=_cmd_verify_radial)

    p = add_parser("verify-symbolic", help="exact symbolic identity suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--jmax", type=int, default=4)
    p.set_defaults(func=_cmd_verify_symbolic)

    p = add_parser("iterate", help="iterated sine-cone spectra")
    _add_source_args(p)
    p.add_argument("--count", "-k", type=int, required=True)
    p.add_argument("--cutoff", required=True)
    p.add_argument("--parts", default="functions,coclosed,tt")
    p.set_defaults(func=_cmd_iterate)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SineconeError as exc:
        print(
            json.dumps(
                {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True
            ),
            file=sys.stderr,
        )
        return exc.exit_code
    except ValueError as exc:
        print(
            json.dumps({"error": "ValueError", "message": str(exc)}, sort_keys=True),
            file=sys.stderr,
        )
        return 4


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
