"""Sources of base spectral data: round spheres, product markers, user files.

The scalar sphere spectrum is constructed from first principles (harmonic
polynomial dimensions).  Coclosed 1-form and TT spectra of model spaces are
*not* hardcoded; they may be supplied as data files under the directory named
by ``SINECONE_DATA_DIR`` (defaulting to ``./data``), layout::

    data/spheres/sphere<n>.json     full GeometricSpectrum for S^n (optional)
    data/user/...                   arbitrary user-supplied spectra

Pipelines that need the missing parts fail fast with a clear message.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InvariantViolation, ParseError
from .exactreal import QuadReal, from_rational
from .spectra import (
    GeometricSpectrum,
    Spectrum,
    UNKNOWN_CUTOFF,
    empty_spectrum,
    geometric_spectrum_from_json,
    geometric_spectrum_to_json,
    merge,
)

DATA_DIR_ENV = "SINECONE_DATA_DIR"


def data_dir() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, "data"))


@dataclass(frozen=True)
class SphereSpec:
    n: int
    cutoff: QuadReal

    def __post_init__(self):
        if self.n < 2:
            raise InvariantViolation("sphere dimension must be at least 2")


@dataclass(frozen=True)
class ProductMarker:
    """Einstein product of two factors, dimensions n1 + n2, normalized.

    Carries the single distinguished TT eigenvalue -2(n-1) coming from the
    trace-free combination of the factor metrics.  When
    ``factors_strictly_stable`` is set, that line is certified as the unique
    nonpositive TT eigenvalue (an input assertion about the factors), which
    is what makes the marker's TT spectrum complete up to 0.
    """

    n1: int
    n2: int
    factors_strictly_stable: bool = True

    def __post_init__(self):
        if self.n1 < 2 or self.n2 < 2:
            raise InvariantViolation("product factors must each have dimension >= 2")

    @property
    def n(self) -> int:
        return self.n1 + self.n2


def sphere_multiplicity(n: int, k: int) -> int:
    """dim of degree-k harmonic homogeneous polynomials in n+1 variables."""
    if k < 0:
        return 0
    return math.comb(n + k, k) - (math.comb(n + k - 2, k - 2) if k >= 2 else 0)


def sphere_functions(n: int, cutoff: QuadReal) -> Spectrum:
    """Scalar Laplace spectrum of the unit round n-sphere up to ``cutoff``:
    lines k(k+n-1) with harmonic-polynomial multiplicities."""
    if n < 2:
        raise InvariantViolation("sphere dimension must be at least 2")
    raw = []
    k = 0
    while True:
        value = from_rational(k * (k + n - 1))
        if value > cutoff:
            break
        raw.append((value, sphere_multiplicity(n, k), ("sphere", k, 0)))
        k += 1
    return merge(raw, cutoff)


def product_tt_marker(marker: ProductMarker) -> tuple[QuadReal, int]:
    """The distinguished TT line -2(n-1), multiplicity 1."""
    return from_rational(-2 * (marker.n - 1)), 1


def product_geometric_spectrum(marker: ProductMarker) -> GeometricSpectrum:
    """Minimal honest GeometricSpectrum of a normalized Einstein product.

    Only the pieces that are actually certain are asserted.  The scalar
    spectrum is {0} complete up to the dimension n: a closed space with this
    normalization has no positive scalar eigenvalue below n, and equality at
    n forces the round sphere, which a product never is.  The coclosed
    1-form spectrum is unknown but vacuously complete below its n-1 bound.
    With strictly stable factors the TT marker -2(n-1) is the unique
    nonpositive TT eigenvalue, making the TT spectrum complete up to 0;
    otherwise only the marker value itself is asserted.
    """
    n = marker.n
    value, mult = product_tt_marker(marker)
    tt_cutoff = from_rational(0) if marker.factors_strictly_stable else value
    return GeometricSpectrum(
        n=n,
        spec0=merge([(from_rational(0), 1, ("const", 0, 0))], from_rational(n)),
        spec1D=empty_spectrum(from_rational(Fraction(2 * n - 3, 2))),
        specE_TT=merge([(value, mult, ("product-tt", 1, 0))], tt_cutoff),
        normalized=True,
        tags=("product", f"{marker.n1}x{marker.n2}"),
    )


def sphere_geometric_spectrum(n: int, cutoff: QuadReal) -> GeometricSpectrum:
    """GeometricSpectrum of S^n: scalar part built in, 1-form/TT parts loaded
    from the data directory when present, otherwise left unknown."""
    path = data_dir() / "spheres" / f"sphere{n}.json"
    if path.exists():
        gs = load_geometric_spectrum(path)
        if gs.n != n:
            raise InvariantViolation(f"{path} declares n={gs.n}, expected {n}")
        return gs
    return GeometricSpectrum(
        n=n,
        spec0=sphere_functions(n, cutoff),
        spec1D=empty_spectrum(UNKNOWN_CUTOFF),
        specE_TT=empty_spectrum(UNKNOWN_CUTOFF),
        normalized=True,
        tags=("sphere",),
    )


def load_geometric_spectrum(path, *, hypothesis_override: bool = False) -> GeometricSpectrum:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: top level must be an object")
    return geometric_spectrum_from_json(obj, hypothesis_override=hypothesis_override)


def save_geometric_spectrum(gs: GeometricSpectrum, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(geometric_spectrum_to_json(gs), fh, indent=2, sort_keys=True)
        fh.write("\n")


#: Name-and-dimension stubs for the closed symmetric spaces whose sine-cones
#: are flow-stable; spectra intentionally not included.
SYMMETRIC_SPACE_STUBS: tuple[tuple[str, str], ...] = (
    ("Spin(p), p>=6, p!=7", "p(p-1)/2"),
    ("E6", "78"),
    ("E7", "133"),
    ("E8", "248"),
    ("F4", "52"),
    ("SO(2q+2p+1)/(SO(2q+1)xSO(2p)), p>=2, q>=1", "2p(2q+1)"),
    ("SO(8)/(SO(5)xSO(3))", "15"),
    ("SO(2p)/(SO(p)xSO(p)), p>=4", "p^2"),
    ("SO(2p+2)/(SO(p+2)xSO(p)), p>=4", "p(p+2)"),
    ("SO(2p)/(SO(2p-q)xSO(q)), p-2>=q>=3", "q(2p-q)"),
    ("SU(2p)/SO(p) family, n>=6", "varies"),
    ("E6/[Sp(4)/{+-I}]", "42"),
    ("E6/(SU(2)SU(6))", "40"),
    ("E7/[SU(8)/{+-I}]", "70"),
    ("E7/(SO(12)SU(2))", "64"),
    ("E8/SO(16)", "128"),
    ("E8/(E7 SU(2))", "112"),
    ("F4/(Sp(3)SU(2))", "28"),
)
