"""Multiset model of an operator spectrum with completeness bookkeeping.

A :class:`Spectrum` is a sorted list of distinct eigenvalues with
multiplicities plus an explicit ``cutoff``: the completeness contract is that
*every* eigenvalue of the represented operator up to ``cutoff`` appears with
its full multiplicity.  Coincident values arriving from different generating
families are merged, but the per-family counts stay recoverable through the
``origins`` tags.
"""

from __future__ import annotations

import functools
import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import exactreal
from .errors import CutoffTooSmall, InvariantViolation, ParseError
from .exactreal import QuadReal, compare, from_rational, quad_from_json

#: Sentinel cutoff for "no information": a spectrum complete up to -1 only.
#: Empty spectra of operators that are nonnegative (or whose window of
#: interest is above -1) carry this when their data is simply not available;
#: any enumeration that needs more raises InsufficientBaseCutoff downstream.
UNKNOWN_CUTOFF = from_rational(-1)


@dataclass(frozen=True)
class Origin:
    """One generating family's contribution to a spectral line."""

    block: str
    i: int
    j: int
    mult: int


@dataclass(frozen=True)
class SpectralLine:
    value: QuadReal
    multiplicity: int
    origins: tuple[Origin, ...] = ()

    def __post_init__(self):
        if self.multiplicity <= 0:
            raise InvariantViolation("multiplicity must be positive")
        if self.origins and sum(o.mult for o in self.origins) != self.multiplicity:
            raise InvariantViolation("multiplicity must equal the sum over origins")


def _sort_values(values: Iterable[QuadReal]) -> list[QuadReal]:
    return sorted(values, key=functools.cmp_to_key(compare))


@dataclass(frozen=True)
class Spectrum:
    """Ascending, distinct-valued eigenvalue lines, complete up to ``cutoff``."""

    lines: tuple[SpectralLine, ...]
    cutoff: QuadReal

    def __post_init__(self):
        for prev, cur in zip(self.lines, self.lines[1:]):
            if compare(prev.value, cur.value) >= 0:
                raise InvariantViolation("spectrum lines must be strictly ascending")
        for line in self.lines:
            if compare(line.value, self.cutoff) > 0:
                raise InvariantViolation("spectrum line exceeds its cutoff")

    def __iter__(self):
        return iter(self.lines)

    def __len__(self):
        return len(self.lines)

    def values(self) -> list[QuadReal]:
        return [line.value for line in self.lines]

    def min_value(self) -> Optional[QuadReal]:
        return self.lines[0].value if self.lines else None

    def multiplicity_of(self, value: QuadReal) -> int:
        for line in self.lines:
            if line.value == value:
                return line.multiplicity
        return 0

    def total_multiplicity(self) -> int:
        return sum(line.multiplicity for line in self.lines)

    def restrict(self, bound: QuadReal) -> "Spectrum":
        if compare(bound, self.cutoff) > 0:
            raise CutoffTooSmall("cannot extend a spectrum beyond its cutoff")
        kept = tuple(l for l in self.lines if compare(l.value, bound) <= 0)
        return Spectrum(kept, bound)

    def to_json(self) -> list:
        return [{"value": l.value.to_json(), "mult": l.multiplicity} for l in self.lines]


def empty_spectrum(cutoff: QuadReal = UNKNOWN_CUTOFF) -> Spectrum:
    return Spectrum((), cutoff)


def merge(
    raw: Iterable[tuple[QuadReal, int, Origin]] | Iterable[tuple[QuadReal, int, tuple]],
    cutoff: QuadReal,
) -> Spectrum:
    """Combine raw family contributions into a Spectrum.

    Coincident values (exact equality, which is representation equality) are
    merged with multiplicities summed and origins concatenated; values above
    the cutoff are dropped; the result is sorted ascending.  Order-insensitive
    up to origin bookkeeping order, which is normalized by sorting tags.
    """
    groups: dict[QuadReal, list[Origin]] = {}
    for value, mult, tag in raw:
        if mult <= 0:
            raise InvariantViolation("raw multiplicities must be positive")
        if compare(value, cutoff) > 0:
            continue
        if not isinstance(tag, Origin):
            block, i, j = tag
            tag = Origin(str(block), int(i), int(j), mult)
        elif tag.mult != mult:
            tag = Origin(tag.block, tag.i, tag.j, mult)
        groups.setdefault(value, []).append(tag)
    lines = []
    for value in _sort_values(groups):
        origins = tuple(sorted(groups[value], key=lambda o: (o.block, o.i, o.j)))
        lines.append(SpectralLine(value, sum(o.mult for o in origins), origins))
    return Spectrum(tuple(lines), cutoff)


def positive_min(s: Spectrum) -> Optional[QuadReal]:
    """Smallest strictly positive line value, or None."""
    for line in s.lines:
        if exactreal.sign(line.value) > 0:
            return line.value
    return None


def equal_up_to(s1: Spectrum, s2: Spectrum, bound: QuadReal) -> bool:
    """Exact value-and-multiplicity agreement of all lines <= bound."""
    if compare(bound, s1.cutoff) > 0 or compare(bound, s2.cutoff) > 0:
        raise CutoffTooSmall("comparison bound exceeds a spectrum cutoff")
    a = [(l.value, l.multiplicity) for l in s1.lines if compare(l.value, bound) <= 0]
    b = [(l.value, l.multiplicity) for l in s2.lines if compare(l.value, bound) <= 0]
    return a == b


@dataclass(frozen=True)
class GeometricSpectrum:
    """The closed triple of spectra the cone maps consume and produce.

    ``spec0`` is the scalar Laplacian (eigenvalue 0 included), ``spec1D`` the
    connection Laplacian restricted to coclosed 1-forms, ``specE_TT`` the
    Einstein operator restricted to transverse traceless tensors, all for an
    n-dimensional space normalized to Ricci curvature (n-1) times the metric.
    """

    n: int
    spec0: Spectrum
    spec1D: Spectrum
    specE_TT: Spectrum
    normalized: bool = True
    hypothesis_override: bool = False
    tags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        validate_geometric_spectrum(self)


def validate_geometric_spectrum(gs: GeometricSpectrum) -> None:
    n = gs.n
    if n < 2:
        raise InvariantViolation(f"dimension n={n} below 2")
    if not gs.normalized:
        raise InvariantViolation("spectra must be stated for the Ric = (n-1)g scaling")
    zero_mult = gs.spec0.multiplicity_of(exactreal.ZERO)
    if compare(gs.spec0.cutoff, exactreal.ZERO) >= 0:
        if zero_mult == 0:
            raise InvariantViolation("scalar spectrum must contain 0 (constants)")
        if zero_mult != 1:
            raise InvariantViolation(
                "eigenvalue 0 has multiplicity "
                f"{zero_mult}: multi-component bases are rejected"
            )
    for line in gs.spec0.lines:
        v = line.value
        if exactreal.sign(v) < 0:
            raise InvariantViolation(f"negative scalar eigenvalue {v}")
        if exactreal.sign(v) > 0 and compare(v, from_rational(n)) < 0:
            msg = (
                f"positive scalar eigenvalue {v} below the dimension bound n={n} "
                "(closed Einstein spaces with this normalization have no "
                "spectrum in (0, n))"
            )
            if gs.hypothesis_override:
                warnings.warn(msg + "; proceeding outside the usual hypotheses")
            else:
                raise InvariantViolation(msg)
    bound_1f = from_rational(n - 1)
    for line in gs.spec1D.lines:
        if compare(line.value, bound_1f) < 0:
            msg = (
                f"coclosed 1-form eigenvalue {line.value} below n-1={n - 1} "
                "(the Killing bound for this normalization)"
            )
            if gs.hypothesis_override:
                warnings.warn(msg + "; proceeding outside the usual hypotheses")
            else:
                raise InvariantViolation(msg)


def geometric_spectrum_to_json(gs: GeometricSpectrum) -> dict:
    return {
        "n": gs.n,
        "normalized": gs.normalized,
        "spec0": gs.spec0.to_json(),
        "spec1D": gs.spec1D.to_json(),
        "specE_TT": gs.specE_TT.to_json(),
        "cutoff": {
            "spec0": gs.spec0.cutoff.to_json(),
            "spec1D": gs.spec1D.cutoff.to_json(),
            "specE_TT": gs.specE_TT.cutoff.to_json(),
        },
    }


def _spectrum_from_json(entries, cutoff, block: str) -> Spectrum:
    raw = []
    for k, entry in enumerate(entries):
        try:
            value = quad_from_json(entry["value"])
            mult = int(entry["mult"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad spectrum entry {entry!r}") from exc
        raw.append((value, mult, (block, k, 0)))
    return merge(raw, cutoff)


def geometric_spectrum_from_json(obj: dict, *, hypothesis_override: bool = False) -> GeometricSpectrum:
    try:
        n = int(obj["n"])
        normalized = bool(obj.get("normalized", True))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("geometric spectrum JSON needs an integer 'n'") from exc
    cut_obj = obj.get("cutoff", 0)
    if isinstance(cut_obj, dict) and {"spec0", "spec1D", "specE_TT"} & set(cut_obj):
        cuts = {
            key: quad_from_json(cut_obj.get(key, -1))
            for key in ("spec0", "spec1D", "specE_TT")
        }
    else:
        shared = quad_from_json(cut_obj)
        cuts = {"spec0": shared, "spec1D": shared, "specE_TT": shared}
    return GeometricSpectrum(
        n=n,
        spec0=_spectrum_from_json(obj.get("spec0", []), cuts["spec0"], "input0"),
        spec1D=_spectrum_from_json(obj.get("spec1D", []), cuts["spec1D"], "input1"),
        specE_TT=_spectrum_from_json(obj.get("specE_TT", []), cuts["specE_TT"], "inputE"),
        normalized=normalized,
        hypothesis_override=hypothesis_override,
    )


def dumps(gs: GeometricSpectrum) -> str:
    return json.dumps(geometric_spectrum_to_json(gs), indent=2, sort_keys=True)
