import random
from fractions import Fraction

import pytest

from sinecone.conemaps import iterate_base_requirements
from sinecone.exactreal import from_rational
from sinecone.spectra import GeometricSpectrum, merge


def synthetic_base(rng: random.Random, n: int | None = None, max_den: int = 6) -> GeometricSpectrum:
    """Random admissible base spectra: rational lines with small denominators,
    complete exactly as far as one cone step with window 2(n+2) requires."""
    if n is None:
        n = rng.randint(3, 10)
    window = Fraction(2 * (n + 2))
    c0, c1, c2 = iterate_base_requirements(n, 1, from_rational(window))

    def draw(lo: Fraction, hi: Fraction, count: int, specials) -> list[Fraction]:
        vals = set()
        for _ in range(count):
            if specials and rng.random() < 0.35:
                v = Fraction(rng.choice(specials))
            else:
                den = rng.randint(1, max_den)
                lo_i, hi_i = int(lo * den), int(hi * den)
                v = Fraction(rng.randint(lo_i, max(lo_i, hi_i)), den)
            if lo <= v <= hi:
                vals.add(v)
        return sorted(vals)

    scalar_specials = [Fraction(n), Fraction(2 * (n - 1)), Fraction(2 * (n + 1)),
                       Fraction(2 * n + 1), Fraction(4 * n + 1, 2)]
    s0 = [Fraction(0)] + draw(Fraction(n), c0, rng.randint(1, 4), scalar_specials)
    s1 = (
        draw(Fraction(n - 1), c1, rng.randint(0, 3), [Fraction(n - 1)])
        if c1 >= n - 1
        else []
    )
    hardy = Fraction(-((n - 1) ** 2), 4)
    s_tt = draw(hardy, c2, rng.randint(1, 4), [hardy, Fraction(0), Fraction(-1), Fraction(1)])

    raw0 = [
        (from_rational(v), 1 if v == 0 else rng.randint(1, 3), ("g0", i, 0))
        for i, v in enumerate(s0)
    ]
    raw1 = [(from_rational(v), rng.randint(1, 3), ("g1", i, 0)) for i, v in enumerate(s1)]
    raw_tt = [(from_rational(v), rng.randint(1, 3), ("gE", i, 0)) for i, v in enumerate(s_tt)]
    return GeometricSpectrum(
        n=n,
        spec0=merge(raw0, from_rational(c0)),
        spec1D=merge(raw1, from_rational(max(c1, Fraction(-1)))),
        specE_TT=merge(raw_tt, from_rational(c2)),
    )


@pytest.fixture
def rng():
    return random.Random(0x5EED)
