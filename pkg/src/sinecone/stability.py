"""Stability classification of a normalized Einstein space from its spectra,
plus the base-to-cone transfer rules, cross-checked against each other.

Four notions, all decided exactly on a :class:`GeometricSpectrum` of
dimension m (Einstein constant m-1):

* variational (EH) stability: TT spectrum >= 0, strict for > 0;
* entropy-linear stability: EH and every positive scalar eigenvalue other
  than m itself at least 2(m-1);
* tangential stability: EH and no positive scalar eigenvalue inside the open
  gap (m, 2(m+1));
* physical stability: TT spectrum >= -(m-1)^2/4 (equivalently, the cone
  Einstein operator is bounded below).

Verdicts are three-valued: ``True``/``False`` when the declared spectrum
completeness reaches the relevant threshold, ``None`` when it does not (the
classification honestly refuses to guess beyond the data).

Two positions need the spelled-out conventions that make the direct and the
predicted classification of a sine-cone agree line for line:

* the scalar eigenvalue equal to the dimension m is excluded from threshold
  tests: its eigenfunctions have pure-trace Hessians (conformal gradient
  fields), so the conformal direction they would contribute to the
  divergence-free complement vanishes identically, and every sine-cone
  carries this eigenvalue;
* an eigenvalue exactly at the tangential threshold 2(m+1) does not break
  strictness: the associated zero mode of the cone-level tangential operator
  is a symmetrized derivative (a reparametrization, not an essential
  perturbation), and every sine-cone carries this eigenvalue as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .conemaps import (
    degree_eigenvalue,
    harmonic_degree,
    map_coclosed_one_forms,
    map_einstein,
    map_functions,
)
from .errors import UnboundedBelow
from .exactreal import (
    QuadReal,
    compare,
    from_rational,
    make_quad,
    rational_floor,
    sign,
)
from .spectra import GeometricSpectrum, Spectrum

Verdict = Optional[bool]  # None: undecidable from the declared completeness


@dataclass(frozen=True)
class NotionVerdict:
    holds: Verdict
    strict: Verdict
    witness_value: Optional[QuadReal]
    witness_origin: str

    def to_json(self) -> dict:
        return {
            "verdict": self.holds,
            "strict": self.strict,
            "witness_value": None if self.witness_value is None else self.witness_value.to_json(),
            "witness_origin": self.witness_origin,
        }


_UNDECIDED = NotionVerdict(None, None, None, "insufficient declared completeness")


@dataclass(frozen=True)
class StabilityReport:
    n: int
    eh: NotionVerdict
    linear: NotionVerdict
    tangential: NotionVerdict
    physical: NotionVerdict
    bounded_below: Verdict
    thresholds: tuple[tuple[str, QuadReal], ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "eh": self.eh.to_json(),
            "linear": self.linear.to_json(),
            "tangential": self.tangential.to_json(),
            "physical": self.physical.to_json(),
            "bounded_below": self.bounded_below,
            "thresholds": [(name, value.to_json()) for name, value in self.thresholds],
        }


def linear_transfer_threshold(n: int) -> QuadReal:
    """Scalar-spectrum bound a base must clear so its sine-cone stays
    entropy-linearly stable: 5n/2 - sqrt(n^2 + 8n)/2, exactly."""
    return make_quad(Fraction(5 * n, 2), Fraction(-1, 2), n * n + 8 * n)


def _positive_scalars(gs: GeometricSpectrum) -> list[QuadReal]:
    """Positive scalar lines with the dimension eigenvalue removed."""
    dim_value = from_rational(gs.n)
    return [
        line.value
        for line in gs.spec0.lines
        if sign(line.value) > 0 and line.value != dim_value
    ]


def _and3(a: Verdict, b: Verdict) -> Verdict:
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def classify(gs: GeometricSpectrum) -> StabilityReport:
    """Decide the four notions directly on the given spectra; notions whose
    thresholds lie beyond the declared completeness come back undecided."""
    m = gs.n
    zero = from_rational(0)
    hardy = from_rational(Fraction(-((m - 1) ** 2), 4))
    lin_bound = from_rational(2 * (m - 1))
    gap_hi = from_rational(2 * (m + 1))
    dim_value = from_rational(m)

    tt_known = compare(gs.specE_TT.cutoff, zero) >= 0
    tt_min = gs.specE_TT.min_value()
    if not tt_known:
        eh = _UNDECIDED
        physical = _UNDECIDED
    else:
        origin = "tt-min" if tt_min is not None else "tt-empty"
        eh_holds = tt_min is None or sign(tt_min) >= 0
        eh_strict = tt_min is None or sign(tt_min) > 0
        eh = NotionVerdict(eh_holds, eh_strict, tt_min, origin)
        phys = tt_min is None or compare(tt_min, hardy) >= 0
        physical = NotionVerdict(phys, phys, tt_min, origin)

    scalars = _positive_scalars(gs)

    if compare(gs.spec0.cutoff, lin_bound) < 0:
        linear = _UNDECIDED
    else:
        viol = [v for v in scalars if compare(v, lin_bound) < 0]
        viol_strict = [v for v in scalars if compare(v, lin_bound) <= 0]
        witness = viol[0] if viol else (scalars[0] if scalars else tt_min)
        if eh.holds is False:
            linear = NotionVerdict(False, False, eh.witness_value, eh.witness_origin)
        else:
            linear = NotionVerdict(
                _and3(eh.holds, not viol),
                _and3(eh.strict, not viol_strict),
                witness,
                "scalar" if scalars else "tt-min",
            )

    if compare(gs.spec0.cutoff, gap_hi) < 0:
        tangential = _UNDECIDED
    else:
        gap_viol = [
            v for v in scalars
            if compare(v, dim_value) > 0 and compare(v, gap_hi) < 0
        ]
        witness = gap_viol[0] if gap_viol else (scalars[0] if scalars else tt_min)
        if eh.holds is False:
            tangential = NotionVerdict(False, False, eh.witness_value, eh.witness_origin)
        else:
            tangential = NotionVerdict(
                _and3(eh.holds, not gap_viol),
                _and3(eh.strict, not gap_viol),
                witness,
                "scalar" if scalars else "tt-min",
            )

    return StabilityReport(
        n=m,
        eh=eh,
        linear=linear,
        tangential=tangential,
        physical=physical,
        bounded_below=physical.holds,
        thresholds=(
            ("eh", zero),
            ("linear", lin_bound),
            ("tangential-gap-low", dim_value),
            ("tangential-gap-high", gap_hi),
            ("physical", hardy),
        ),
    )


def predict_cone(gs: GeometricSpectrum) -> StabilityReport:
    """Stability of the sine-cone predicted from base data alone.

    EH and tangential stability transfer unchanged; linear stability needs
    the extra scalar bound :func:`linear_transfer_threshold`; the cone
    Einstein operator is bounded below iff the base is physically stable, in
    which case the cone is itself physically stable.
    """
    base = classify(gs)
    m = gs.n
    t = linear_transfer_threshold(m)

    scalars = _positive_scalars(gs)
    t_known = compare(gs.spec0.cutoff, t) >= 0
    clears: Verdict = None if not t_known else not any(compare(v, t) < 0 for v in scalars)
    clears_strictly: Verdict = (
        None if not t_known else not any(compare(v, t) <= 0 for v in scalars)
    )
    below = [v for v in scalars if compare(v, t) < 0]
    witness = below[0] if below else (scalars[0] if scalars else base.linear.witness_value)
    linear = NotionVerdict(
        _and3(base.linear.holds, clears),
        _and3(base.linear.strict, clears_strictly),
        witness,
        "scalar-transfer",
    )

    cone_physical = NotionVerdict(
        base.physical.holds,
        base.physical.holds,
        base.physical.witness_value,
        base.physical.witness_origin,
    )

    return StabilityReport(
        n=m + 1,
        eh=base.eh,
        linear=linear,
        tangential=base.tangential,
        physical=cone_physical,
        bounded_below=base.physical.holds,
        thresholds=base.thresholds + (("linear-transfer", t),),
    )


def _supported_window(n: int, source: Spectrum, inner: int, out: int) -> Fraction:
    """Largest cone window the declared source completeness can fill for one
    ladder family (rational lower bound, conservative)."""
    c = rational_floor(source.cutoff) + inner
    if c < Fraction(-((n - 1) ** 2), 4):
        return Fraction(-1)
    top = degree_eigenvalue(n + 1, harmonic_degree(n, c)) - out
    return rational_floor(top)


def cone_spectra_windows(gs: GeometricSpectrum) -> tuple[Fraction, Fraction, Fraction]:
    """Windows up to which the base data determines the cone's scalar,
    coclosed 1-form and TT spectra."""
    n = gs.n
    w0 = _supported_window(n, gs.spec0, 0, 0)
    w1 = min(
        _supported_window(n, gs.spec0, 0, 1),
        _supported_window(n, gs.spec1D, 1, 1),
    )
    w2 = min(
        _supported_window(n, gs.spec0, 0, 0),
        _supported_window(n, gs.spec1D, 1, 0),
        _supported_window(n, gs.specE_TT, 0, 0),
    )
    return w0, w1, w2


def compute_cone(gs: GeometricSpectrum, cutoff: Optional[QuadReal] = None) -> GeometricSpectrum:
    """One sine-cone step with per-spectrum windows clamped to what the base
    supports (and to ``cutoff`` when given)."""
    w0, w1, w2 = cone_spectra_windows(gs)
    if cutoff is not None:
        cap = rational_floor(cutoff)
        w0, w1, w2 = min(w0, cap), min(w1, cap), min(w2, cap)
    return GeometricSpectrum(
        n=gs.n + 1,
        spec0=map_functions(gs, from_rational(w0)),
        spec1D=map_coclosed_one_forms(gs, from_rational(w1)),
        specE_TT=map_einstein(gs, from_rational(w2), blocks=("tt",)).tt_block,
        normalized=True,
        hypothesis_override=gs.hypothesis_override,
        tags=gs.tags + (f"cone-of-{gs.n}",),
    )


@dataclass(frozen=True)
class CrossCheckResult:
    consistent: bool
    discrepancies: tuple[str, ...]
    predicted: StabilityReport
    direct: Optional[StabilityReport]
    cone_unbounded: bool

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "discrepancies": list(self.discrepancies),
            "predicted": self.predicted.to_json(),
            "direct": None if self.direct is None else self.direct.to_json(),
            "cone_unbounded": self.cone_unbounded,
        }


def cross_check(gs: GeometricSpectrum, cutoff: Optional[QuadReal] = None) -> CrossCheckResult:
    """Compute the cone spectra, classify them directly, and compare every
    mutually decidable verdict with the base-data prediction."""
    pred = predict_cone(gs)

    if pred.bounded_below is False:
        # the direct path must refuse with an unbounded-below diagnosis
        try:
            map_einstein(gs, from_rational(0), blocks=("tt",))
        except UnboundedBelow:
            return CrossCheckResult(True, (), pred, None, True)
        return CrossCheckResult(
            False,
            ("prediction says unbounded below but the cone transform succeeded",),
            pred,
            None,
            False,
        )

    cone = compute_cone(gs, cutoff)
    direct = classify(cone)

    problems = []
    for name in ("eh", "linear", "tangential", "physical"):
        p: NotionVerdict = getattr(pred, name)
        d: NotionVerdict = getattr(direct, name)
        for attr in ("holds", "strict"):
            pv, dv = getattr(p, attr), getattr(d, attr)
            if pv is None or dv is None:
                continue
            if pv != dv:
                problems.append(
                    f"{name}.{attr}: predicted {pv} (witness {p.witness_value}) "
                    f"vs direct {dv} (witness {d.witness_value})"
                )
    return CrossCheckResult(not problems, tuple(problems), pred, direct, False)
