"""Spectral transforms from an Einstein base to its sine-cone.

The sine-cone over an n-dimensional base normalized to Ric = (n-1)g is an
(n+1)-dimensional space normalized to Ric = n g.  Each eigenvalue family of
the base generates a ladder of cone eigenvalues through the degree dictionary

    harmonic_degree(n, x)  = -(n-1)/2 + sqrt((n-1)^2/4 + x)
    degree_eigenvalue(n, y) = y (y + n - 1)

which converts between eigenvalues and homogeneity degrees of harmonic
extensions: a base eigenvalue ``x`` feeds the cone ladder
``degree_eigenvalue(n+1, harmonic_degree(n, x) + j)`` for j = 0, 1, 2, ...

All enumeration is exact and completeness-aware: a transform refuses to run
(``InsufficientBaseCutoff``) when the base spectra are not known far enough to
make the requested output window complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BelowHardyBound,
    InsufficientBaseCutoff,
    InvariantViolation,
    NotRepresentable,
    UnboundedBelow,
)
from .exactreal import (
    QuadReal,
    compare,
    from_rational,
    make_quad,
    rational_ceiling,
)
from .spectra import GeometricSpectrum, Spectrum, empty_spectrum, merge

ConeFunctionSpectrum = Spectrum


def degree_eigenvalue(n: int, y: QuadReal | int | Fraction) -> QuadReal:
    """y (y + n - 1): the eigenvalue of a degree-y homogeneous harmonic
    restricted to the unit n-sphere of its cone."""
    if not isinstance(y, QuadReal):
        y = from_rational(Fraction(y))
    return y * (y + (n - 1))


def harmonic_degree(n: int, x: QuadReal | int | Fraction) -> QuadReal:
    """Right branch of the inverse of :func:`degree_eigenvalue`.

    Only rational inputs stay inside the quadratic-irrational system; an
    irrational input would need a nested radical and raises NotRepresentable.
    Inputs below -(n-1)^2/4 (the sharp lower bound of the radial quadratic
    form) raise BelowHardyBound.
    """
    if isinstance(x, QuadReal):
        if not x.is_rational():
            raise NotRepresentable(
                f"harmonic degree of irrational eigenvalue {x} leaves the "
                "quadratic-irrational system"
            )
        x = x.as_fraction()
    x = Fraction(x)
    rad = Fraction((n - 1) ** 2, 4) + x
    if rad < 0:
        raise BelowHardyBound(
            f"eigenvalue {x} lies below -(n-1)^2/4 = {-Fraction((n - 1) ** 2, 4)}"
        )
    return make_quad(Fraction(-(n - 1), 2), 1, rad)


def required_source_cutoff(
    n: int, cutoff: QuadReal, out_shift: int | Fraction, inner_shift: int = 0
) -> Optional[QuadReal]:
    """Completeness a source spectrum must certify so that every cone line

        degree_eigenvalue(n+1, harmonic_degree(n, beta + inner_shift) + j) - out_shift

    with value <= ``cutoff`` is enumerated.  ``None`` means no source value
    can land below the cutoff at all (nothing is required).  Irrational
    cutoffs are replaced by a rational upper bound, which can only demand
    slightly more completeness than strictly necessary.
    """
    x = cutoff + from_rational(Fraction(out_shift))
    if compare(x, from_rational(Fraction(-(n * n - 1), 4))) < 0:
        return None
    x_rat = x.as_fraction() if x.is_rational() else rational_ceiling(x)
    top_degree = harmonic_degree(n + 1, x_rat)
    return degree_eigenvalue(n, top_degree) - inner_shift


def _check_source(
    name: str, source: Spectrum, n: int, cutoff: QuadReal, out_shift, inner_shift=0
) -> None:
    need = required_source_cutoff(n, cutoff, out_shift, inner_shift)
    if need is None:
        return
    if compare(source.cutoff, need) < 0:
        raise InsufficientBaseCutoff(
            f"{name} is complete only up to {source.cutoff} but the requested "
            f"output window needs completeness up to {need}; refusing to "
            "truncate silently"
        )


def _family(
    n: int,
    degree: QuadReal,
    out_shift: int | Fraction,
    cutoff: QuadReal,
    mult: int,
    block: str,
    i: int,
    skip_first: bool = False,
) -> list[tuple[QuadReal, int, tuple]]:
    """Enumerate one ladder degree+j, j=0,1,...; monotone in j, so stop at
    the first value beyond the cutoff."""
    shift = from_rational(Fraction(out_shift))
    out = []
    j = 0
    while True:
        value = degree_eigenvalue(n + 1, degree + j) - shift
        if compare(value, cutoff) > 0:
            break
        if not (skip_first and j == 0):
            out.append((value, mult, (block, i, j)))
        j += 1
    return out


def map_functions(base: GeometricSpectrum, cutoff: QuadReal) -> ConeFunctionSpectrum:
    """Scalar Laplace spectrum of the sine-cone from the base scalar spectrum:
    the full ladder of every base line, multiplicities inherited."""
    n = base.n
    _check_source("scalar spectrum", base.spec0, n, cutoff, 0)
    raw: list = []
    for i, line in enumerate(base.spec0.lines):
        degree = harmonic_degree(n, line.value)
        raw.extend(_family(n, degree, 0, cutoff, line.multiplicity, "fun", i))
    return merge(raw, cutoff)


@dataclass(frozen=True)
class ConeOneFormSpectrum:
    """Connection-Laplacian spectrum of the cone on 1-forms, split into the
    exact part (differentials of functions) and the coclosed part."""

    exact_part: Spectrum
    coclosed_part: Spectrum


def map_coclosed_one_forms(base: GeometricSpectrum, cutoff: QuadReal) -> Spectrum:
    """Coclosed part of the cone 1-form spectrum: scalar ladders (positive
    lines only) shifted down by 1, plus 1-form ladders seeded at degree
    harmonic_degree(n, mu+1), also shifted down by 1."""
    n = base.n
    if n < 2:
        raise InvariantViolation("one-form transform needs base dimension >= 2")
    _check_source("scalar spectrum", base.spec0, n, cutoff, 1)
    _check_source("coclosed 1-form spectrum", base.spec1D, n, cutoff, 1, inner_shift=1)
    raw_co: list = []
    for i, line in enumerate(base.spec0.lines):
        if line.value == from_rational(0):
            continue  # the constant family produces no coclosed forms
        degree = harmonic_degree(n, line.value)
        raw_co.extend(_family(n, degree, 1, cutoff, line.multiplicity, "1f-co-scalar", i))
    for i, line in enumerate(base.spec1D.lines):
        degree = harmonic_degree(n, line.value + 1)
        raw_co.extend(_family(n, degree, 1, cutoff, line.multiplicity, "1f-co-form", i))
    return merge(raw_co, cutoff)


def map_one_forms(base: GeometricSpectrum, cutoff: QuadReal) -> ConeOneFormSpectrum:
    """1-form spectrum of the sine-cone.

    Exact part: scalar ladders shifted down by n, with the constant-function
    rung (i=0, j=0) absent.  Coclosed part: see
    :func:`map_coclosed_one_forms`.
    """
    n = base.n
    if n < 2:
        raise InvariantViolation("one-form transform needs base dimension >= 2")
    _check_source("scalar spectrum", base.spec0, n, cutoff, n)
    raw_exact: list = []
    for i, line in enumerate(base.spec0.lines):
        degree = harmonic_degree(n, line.value)
        raw_exact.extend(
            _family(n, degree, n, cutoff, line.multiplicity, "1f-exact", i,
                    skip_first=line.value == from_rational(0))
        )
    return ConeOneFormSpectrum(merge(raw_exact, cutoff), map_coclosed_one_forms(base, cutoff))


ALL_BLOCKS = ("conformal", "vector", "tt")


@dataclass(frozen=True)
class ConeEinsteinSpectrum:
    """Einstein-operator spectrum of the sine-cone in its invariant blocks.

    ``conformal_block``: directions built from functions times the metric and
    their Hessian partners.  ``vector_block``: symmetrized derivatives of
    coclosed 1-forms.  ``tt_block``: transverse traceless directions; this is
    the block that decides stability and rigidity.
    """

    conformal_block: Spectrum
    vector_block: Spectrum
    tt_block: Spectrum
    scalar_boundary_case: bool
    oneform_boundary_case: bool
    outside_hypotheses: bool = False


def _hardy_check(base: GeometricSpectrum) -> None:
    bound = from_rational(Fraction(-((base.n - 1) ** 2), 4))
    for line in base.specE_TT.lines:
        if compare(line.value, bound) < 0:
            raise UnboundedBelow(
                f"TT eigenvalue {line.value} lies below -(n-1)^2/4 = {bound}: "
                "the cone Einstein operator is unbounded below (shrinking "
                "radial bump profiles drive the Rayleigh quotient to -infinity)"
            )


def map_einstein(
    base: GeometricSpectrum,
    cutoff: QuadReal,
    blocks: Sequence[str] = ALL_BLOCKS,
) -> ConeEinsteinSpectrum:
    """Einstein-operator spectrum of the sine-cone, by block.

    Requesting a subset of blocks relaxes the completeness demands to the
    spectra that actually feed those blocks.
    """
    n = base.n
    if n < 3:
        raise InvariantViolation("Einstein transform needs base dimension >= 3")
    unknown = set(blocks) - set(ALL_BLOCKS)
    if unknown:
        raise ValueError(f"unknown blocks {sorted(unknown)}")
    _hardy_check(base)

    dim_line = from_rational(n)
    killing_line = from_rational(n - 1)
    scalar_boundary = any(l.value == dim_line for l in base.spec0.lines)
    oneform_boundary = any(l.value == killing_line for l in base.spec1D.lines)

    conformal = empty_spectrum(cutoff)
    vector = empty_spectrum(cutoff)
    tt = empty_spectrum(cutoff)

    if "conformal" in blocks:
        _check_source("scalar spectrum", base.spec0, n, cutoff, 2 * n)
        raw: list = []
        for i, line in enumerate(base.spec0.lines):
            degree = harmonic_degree(n, line.value)
            is_zero_line = line.value == from_rational(0)
            shift = from_rational(2 * n)
            j = 0
            while True:
                value = degree_eigenvalue(n + 1, degree + j) - shift
                if compare(value, cutoff) > 0:
                    break
                mult = 2 * line.multiplicity
                if is_zero_line and j in (0, 1):
                    mult = line.multiplicity  # single copy: Hessian partner vanishes
                if line.value == dim_line and j == 0:
                    mult = line.multiplicity  # single copy: Hessian partner vanishes
                raw.append((value, mult, ("E-conf", i, j)))
                j += 1
        conformal = merge(raw, cutoff)

    if "vector" in blocks:
        _check_source("scalar spectrum", base.spec0, n, cutoff, n + 1)
        _check_source("coclosed 1-form spectrum", base.spec1D, n, cutoff, n + 1, inner_shift=1)
        raw = []
        for i, line in enumerate(base.spec0.lines):
            if line.value == from_rational(0):
                continue
            degree = harmonic_degree(n, line.value)
            raw.extend(
                _family(n, degree, n + 1, cutoff, line.multiplicity, "E-vec-scalar", i,
                        skip_first=line.value == dim_line)
            )
        for i, line in enumerate(base.spec1D.lines):
            degree = harmonic_degree(n, line.value + 1)
            raw.extend(
                _family(n, degree, n + 1, cutoff, line.multiplicity, "E-vec-form", i,
                        skip_first=line.value == killing_line)
            )
        vector = merge(raw, cutoff)

    if "tt" in blocks:
        _check_source("scalar spectrum", base.spec0, n, cutoff, 0)
        _check_source("coclosed 1-form spectrum", base.spec1D, n, cutoff, 0, inner_shift=1)
        _check_source("TT spectrum", base.specE_TT, n, cutoff, 0)
        raw = []
        for i, line in enumerate(base.spec0.lines):
            if line.value == from_rational(0):
                continue
            if line.value == dim_line:
                continue  # whole scalar ladder absent at the boundary case
            degree = harmonic_degree(n, line.value)
            raw.extend(_family(n, degree, 0, cutoff, line.multiplicity, "E-tt-scalar", i))
        for i, line in enumerate(base.spec1D.lines):
            if line.value == killing_line:
                continue  # whole 1-form ladder absent at the Killing boundary
            degree = harmonic_degree(n, line.value + 1)
            raw.extend(_family(n, degree, 0, cutoff, line.multiplicity, "E-tt-form", i))
        for i, line in enumerate(base.specE_TT.lines):
            degree = harmonic_degree(n, line.value)
            raw.extend(_family(n, degree, 0, cutoff, line.multiplicity, "E-tt-tensor", i))
        tt = merge(raw, cutoff)

    return ConeEinsteinSpectrum(
        conformal_block=conformal,
        vector_block=vector,
        tt_block=tt,
        scalar_boundary_case=scalar_boundary,
        oneform_boundary_case=oneform_boundary,
        outside_hypotheses=base.hypothesis_override,
    )


ITERATE_PARTS = ("functions", "coclosed", "tt")


def _closure_of_parts(parts: Sequence[str]) -> tuple[str, ...]:
    parts = set(parts)
    unknown = parts - set(ITERATE_PARTS)
    if unknown:
        raise ValueError(f"unknown iterate parts {sorted(unknown)}")
    if "tt" in parts:
        parts |= {"functions", "coclosed"}
    if "coclosed" in parts:
        parts |= {"functions"}
    return tuple(p for p in ITERATE_PARTS if p in parts)


def _step_requirements(
    m: int, req: tuple[Fraction, Fraction, Fraction], parts: Sequence[str]
) -> tuple[Fraction, Fraction, Fraction]:
    """Input completeness (spec0, spec1D, TT) a dim-m base needs so one cone
    step can emit the three output spectra complete to ``req``."""
    c0_out, c1_out, c2_out = req

    def bound(target: Fraction, out_shift: int) -> Fraction:
        need = required_source_cutoff(m, from_rational(target), out_shift)
        return Fraction(-1) if need is None else rational_ceiling(need)

    t0 = [Fraction(-1)]
    t1 = [Fraction(-1)]
    t2 = [Fraction(-1)]
    if "functions" in parts:
        t0.append(bound(c0_out, 0))
    if "coclosed" in parts:
        t0.append(bound(c1_out, 1))
        t1.append(bound(c1_out, 1) - 1)
    if "tt" in parts:
        t0.append(bound(c2_out, 0))
        t1.append(bound(c2_out, 0) - 1)
        t2.append(bound(c2_out, 0))
    return max(t0), max(t1), max(t2)


def iterate_base_requirements(
    n: int, k: int, cutoff: QuadReal, parts: Sequence[str] = ITERATE_PARTS
) -> tuple[Fraction, Fraction, Fraction]:
    """Completeness (spec0, spec1D, TT) a dim-n base must certify so that
    ``iterate(base, k, cutoff, parts)`` can run."""
    parts = _closure_of_parts(parts)
    final = cutoff.as_fraction() if cutoff.is_rational() else rational_ceiling(cutoff)
    req = (final, final, final)
    for step in range(k, 0, -1):
        req = _step_requirements(n + step - 1, req, parts)
    return req


def _require_rational_lines(gs: GeometricSpectrum) -> None:
    for spec in (gs.spec0, gs.spec1D, gs.specE_TT):
        for line in spec.lines:
            if not line.value.is_rational():
                raise NotRepresentable(
                    f"iterated cone construction hit the irrational eigenvalue "
                    f"{line.value}; its further ladder would need nested radicals"
                )


def iterate(
    base: GeometricSpectrum,
    k: int,
    cutoff: QuadReal,
    parts: Sequence[str] = ITERATE_PARTS,
) -> GeometricSpectrum:
    """k-fold sine-cone of the base, carrying (spec0, coclosed 1-forms,
    TT tensors) through each step.  Intermediate completeness targets are
    derived backward from the requested final cutoff, and every intermediate
    eigenvalue must stay rational (a couple of radicals deep is not
    representable exactly)."""
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    if k == 0:
        return base
    parts = _closure_of_parts(parts)
    final = rational_ceiling(cutoff) if not cutoff.is_rational() else cutoff.as_fraction()

    reqs: list[tuple[Fraction, Fraction, Fraction]] = [None] * (k + 1)  # type: ignore
    reqs[k] = (final, final, final)
    for step in range(k, 0, -1):
        m = base.n + step - 1
        reqs[step - 1] = _step_requirements(m, reqs[step], parts)

    gs = base
    for step in range(k):
        if step > 0:
            _require_rational_lines(gs)
        c0, c1, c2 = reqs[step + 1]
        want_final = step == k - 1
        out_cut0 = cutoff if want_final else from_rational(c0)
        out_cut1 = cutoff if want_final else from_rational(c1)
        out_cut2 = cutoff if want_final else from_rational(c2)
        spec0 = (
            map_functions(gs, out_cut0)
            if "functions" in parts
            else empty_spectrum()
        )
        spec1d = (
            map_coclosed_one_forms(gs, out_cut1)
            if "coclosed" in parts
            else empty_spectrum()
        )
        tt = (
            map_einstein(gs, out_cut2, blocks=("tt",)).tt_block
            if "tt" in parts
            else empty_spectrum()
        )
        gs = GeometricSpectrum(
            n=gs.n + 1,
            spec0=spec0,
            spec1D=spec1d,
            specE_TT=tt,
            normalized=True,
            hypothesis_override=gs.hypothesis_override,
            tags=gs.tags + (f"cone-of-{gs.n}",),
        )
    return gs
