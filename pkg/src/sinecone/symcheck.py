"""Exact operator algebra on bivariate Laurent polynomials in (r, z).

This is the mechanical verifier for the two-variable identities that drive
the cone spectral transforms: the commutators of the rotation field
V = r dz - z dr with the weighted flat Laplacian

    L_n = -d^2/dz^2 - d^2/dr^2 - n r^-1 d/dr,

the harmonic ladder spaces and their direct-sum decomposition, and the three
coupled first-order systems whose closure makes the 1-form and tensor ladders
work.  Everything is exact rational arithmetic; a verification passes only
when the residual is the zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Mapping

from .errors import (
    DecompositionFailed,
    DimensionMismatch,
    IdentityFailed,
    InvariantViolation,
)

#: Terms map (r-exponent, z-exponent) -> nonzero rational coefficient.
Terms = dict[tuple[int, int], Fraction]


@dataclass(frozen=True)
class LaurentPoly2:
    """Sparse Laurent polynomial in r (integer exponents) and z (nonnegative
    exponents) over the rationals."""

    terms: tuple[tuple[tuple[int, int], Fraction], ...]

    @staticmethod
    def from_terms(terms: Mapping[tuple[int, int], Fraction] | Iterable) -> "LaurentPoly2":
        cleaned: Terms = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (p, q), c in items:
            if q < 0:
                raise InvariantViolation("z-exponents must stay nonnegative")
            c = Fraction(c)
            if c == 0:
                continue
            key = (int(p), int(q))
            c = cleaned.get(key, Fraction(0)) + c
            if c == 0:
                cleaned.pop(key, None)
            else:
                cleaned[key] = c
        return LaurentPoly2(tuple(sorted(cleaned.items())))

    @staticmethod
    def monomial(p: int, q: int, coeff=1) -> "LaurentPoly2":
        return LaurentPoly2.from_terms({(p, q): Fraction(coeff)})

    @staticmethod
    def zero() -> "LaurentPoly2":
        return LaurentPoly2(())

    def as_dict(self) -> Terms:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = self.as_dict()
        for key, c in other.terms:
            c = out.get(key, Fraction(0)) + c
            if c == 0:
                out.pop(key, None)
            else:
                out[key] = c
        return LaurentPoly2(tuple(sorted(out.items())))

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + other.scale(-1)

    def scale(self, c) -> "LaurentPoly2":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly2(())
        return LaurentPoly2(tuple((key, c * v) for key, v in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"{c}*r^{p}*z^{q}" for (p, q), c in self.terms]
        return " + ".join(bits)


def d_r(f: LaurentPoly2) -> LaurentPoly2:
    return LaurentPoly2.from_terms(((p - 1, q), p * c) for (p, q), c in f.terms if p)


def d_z(f: LaurentPoly2) -> LaurentPoly2:
    return LaurentPoly2.from_terms(((p, q - 1), q * c) for (p, q), c in f.terms if q)


def mul_monomial(f: LaurentPoly2, p: int, q: int, coeff=1) -> LaurentPoly2:
    return LaurentPoly2.from_terms(
        ((pp + p, qq + q), Fraction(coeff) * c) for (pp, qq), c in f.terms
    )


def hat_laplacian(n: int, f: LaurentPoly2) -> LaurentPoly2:
    """-d2/dz2 - d2/dr2 - n r^-1 d/dr, term by term: the monomial r^p z^q maps
    to -q(q-1) r^p z^(q-2) - p(p+n-1) r^(p-2) z^q."""
    out: Terms = {}
    for (p, q), c in f.terms:
        if q >= 2:
            key = (p, q - 2)
            v = out.get(key, Fraction(0)) - q * (q - 1) * c
            out[key] = v
        key = (p - 2, q)
        v = out.get(key, Fraction(0)) - (p * (p - 1) + n * p) * c
        out[key] = v
    return LaurentPoly2.from_terms(out)


def v_field(f: LaurentPoly2) -> LaurentPoly2:
    """The rotation derivation r d/dz - z d/dr."""
    return mul_monomial(d_z(f), 1, 0) + mul_monomial(d_r(f), 0, 1).scale(-1)


def apply(op, f: LaurentPoly2) -> LaurentPoly2:
    """String dispatch for the operator set: 'd_r', 'd_z', 'v_field',
    ('hat_laplacian', n), ('mul_monomial', p, q)."""
    if op == "d_r":
        return d_r(f)
    if op == "d_z":
        return d_z(f)
    if op == "v_field":
        return v_field(f)
    if isinstance(op, tuple) and op and op[0] == "hat_laplacian":
        return hat_laplacian(int(op[1]), f)
    if isinstance(op, tuple) and op and op[0] == "mul_monomial":
        return mul_monomial(f, int(op[1]), int(op[2]))
    raise ValueError(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# commutator identities


def _check_identity(name: str, lhs: LaurentPoly2, rhs: LaurentPoly2, witness) -> None:
    residual = lhs - rhs
    if not residual.is_zero():
        raise IdentityFailed(f"{name} failed on {witness}: residual {residual}")


def check_commutators(
    n: int, p_range: tuple[int, int] = (-6, 6), q_range: tuple[int, int] = (0, 6)
) -> dict:
    """Verify the five two-variable identities on every monomial in the box.

    (1) [V, L_n] f        = n r^-2 V f
    (2) [V, r^-2] f       = 2 z r^-3 f
    (3) [V, z r^-1] f     = (1 + z^2 r^-2) f
    (4) L_n(-z r^-1 f)    = -z r^-1 L_n f + (n-2) r^-2 (-z r^-1 f) + 2 r^-2 V f
    (5) r dz f + r dr(-z r^-1 f) = V f - (-z r^-1 f)
    """
    count = 0
    for p in range(p_range[0], p_range[1] + 1):
        for q in range(q_range[0], q_range[1] + 1):
            f = LaurentPoly2.monomial(p, q)
            witness = f"r^{p} z^{q} (n={n})"
            lap = lambda g: hat_laplacian(n, g)

            _check_identity(
                "commutator with the weighted Laplacian",
                v_field(lap(f)) - lap(v_field(f)),
                mul_monomial(v_field(f), -2, 0, n),
                witness,
            )
            _check_identity(
                "commutator with r^-2",
                v_field(mul_monomial(f, -2, 0)) - mul_monomial(v_field(f), -2, 0),
                mul_monomial(f, -3, 1, 2),
                witness,
            )
            _check_identity(
                "commutator with z r^-1",
                v_field(mul_monomial(f, -1, 1)) - mul_monomial(v_field(f), -1, 1),
                f + mul_monomial(f, -2, 2),
                witness,
            )
            g = mul_monomial(f, -1, 1).scale(-1)  # g = -z r^-1 f
            _check_identity(
                "Laplacian of the tilted partner",
                lap(g),
                mul_monomial(lap(f), -1, 1).scale(-1)
                + mul_monomial(g, -2, 0, n - 2)
                + mul_monomial(v_field(f), -2, 0, 2),
                witness,
            )
            _check_identity(
                "first-order recombination",
                mul_monomial(d_z(f), 1, 0) + mul_monomial(d_r(g), 1, 0),
                v_field(f) - g,
                witness,
            )
            count += 1
    return {"n": n, "monomials": count, "identities": 5, "passed": True}


# ---------------------------------------------------------------------------
# harmonic ladder spaces


def ladder_basis(k: int, j: int) -> list[tuple[int, int]]:
    """Monomial exponents spanning the ladder space at height j over degree k:
    r^(k+2l) z^(j-2l), l = 0 .. floor(j/2).  Homogeneous of degree k+j."""
    return [(k + 2 * l, j - 2 * l) for l in range(j // 2 + 1)]


def _nullspace(columns: list[dict], dim: int) -> list[list[Fraction]]:
    """Exact nullspace of the linear map sending coefficient vectors to
    sum(a_l * columns[l]); columns map arbitrary hashable keys to rationals."""
    keys = sorted({key for col in columns for key in col})
    mat = [[col.get(key, Fraction(0)) for col in columns] for key in keys]
    ncols = dim
    pivots: list[int] = []
    ri = 0
    for cidx in range(ncols):
        pivot_row = next((r for r in range(ri, len(mat)) if mat[r][cidx]), None)
        if pivot_row is None:
            continue
        mat[ri], mat[pivot_row] = mat[pivot_row], mat[ri]
        inv = 1 / mat[ri][cidx]
        mat[ri] = [x * inv for x in mat[ri]]
        for r in range(len(mat)):
            if r != ri and mat[r][cidx]:
                factor = mat[r][cidx]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[ri])]
        pivots.append(cidx)
        ri += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -mat[row][fc]
        basis.append(vec)
    return basis


def _rank(columns: list[dict], dim: int) -> int:
    return dim - len(_nullspace(columns, dim))


def reduced_operator(n: int, lam: Fraction) -> Callable[[LaurentPoly2], LaurentPoly2]:
    """L_n + lam r^-2: the operator whose kernel carries the harmonic ladder
    seeded by a base eigenvalue lam."""

    def op(f: LaurentPoly2) -> LaurentPoly2:
        return hat_laplacian(n, f) + mul_monomial(f, -2, 0, lam)

    return op


def build_harmonic_family(n: int, k: int, j: int) -> LaurentPoly2:
    """The one-dimensional kernel of the reduced operator on the ladder space
    at (k, j), with lam = k(k+n-1); integer-normalized basis vector."""
    if k < 0 or j < 0:
        raise InvariantViolation("ladder indices must be nonnegative")
    lam = Fraction(k * (k + n - 1))
    op = reduced_operator(n, lam)
    basis = ladder_basis(k, j)
    columns = [op(LaurentPoly2.monomial(p, q)).as_dict() for p, q in basis]
    null = _nullspace(columns, len(basis))
    if len(null) != 1:
        raise DimensionMismatch(
            f"harmonic ladder at (n={n}, k={k}, j={j}) has kernel dimension "
            f"{len(null)}, expected 1"
        )
    vec = null[0]
    scale = lcm(*(c.denominator for c in vec)) if len(vec) > 1 else vec[0].denominator
    return LaurentPoly2.from_terms(
        {basis[idx]: vec[idx] * scale for idx in range(len(basis))}
    )


def verify_decomposition(n: int, k: int, j: int) -> dict:
    """Ladder splitting: the (k, j) space is the kernel line plus
    (r^2 + z^2) times the (k, j-2) space, in direct sum."""
    if j < 2:
        return {"n": n, "k": k, "j": j, "vacuous": True, "passed": True}
    basis = ladder_basis(k, j)
    index = {key: pos for pos, key in enumerate(basis)}
    vectors: list[dict] = []
    h = build_harmonic_family(n, k, j)
    vectors.append({index[key]: c for key, c in h.terms})
    s2 = LaurentPoly2.from_terms({(2, 0): Fraction(1), (0, 2): Fraction(1)})
    for p, q in ladder_basis(k, j - 2):
        shifted = mul_monomial(s2, p, q)
        vectors.append({index[key]: c for key, c in shifted.terms})
    dim = len(basis)
    if len(vectors) != dim:
        raise DecompositionFailed(
            f"dimension count failed at (n={n}, k={k}, j={j}): "
            f"{len(vectors)} generators for a {dim}-dimensional space"
        )
    rank = _rank(vectors, dim)  # vectors-as-columns of the dim x dim matrix
    if rank != dim:
        raise DecompositionFailed(
            f"kernel line and shifted ladder overlap at (n={n}, k={k}, j={j})"
        )
    return {"n": n, "k": k, "j": j, "dim": dim, "rank": rank, "passed": True}


# ---------------------------------------------------------------------------
# coupled first-order systems behind the 1-form and tensor ladders


def _r2(f: LaurentPoly2, coeff) -> LaurentPoly2:
    return mul_monomial(f, -2, 0, coeff)


def _tilt(f: LaurentPoly2) -> LaurentPoly2:
    """-z r^-1 f."""
    return mul_monomial(f, -1, 1).scale(-1)


def _raise_residuals(tag: str, residuals: dict[str, LaurentPoly2]) -> dict:
    for name, res in residuals.items():
        if not res.is_zero():
            raise IdentityFailed(f"{tag}: residual {name} is nonzero: {res}")
    return {"checked": sorted(residuals), "passed": True}


def verify_formulas1(n: int, k: int, j: int) -> dict:
    """Closure of the two-component system behind the exact/coclosed 1-form
    ladder: from a kernel element P of L_n + lam r^-2 (lam = k(k+n-1), k >= 1)
    define Q = -z r^-1 P and lam R = r dz P + r dr Q + n Q; then

        L_n Q + (lam + n) r^-2 Q - 2 lam r^-2 R       = 0
        L_n R + (lam + 2 - n) r^-2 R - 2 r^-2 Q       = 0
    """
    if k < 1:
        raise InvariantViolation("need k >= 1 so the seed eigenvalue is positive")
    lam = Fraction(k * (k + n - 1))
    P = build_harmonic_family(n, k, j)
    Q = _tilt(P)
    R = (
        mul_monomial(d_z(P), 1, 0) + mul_monomial(d_r(Q), 1, 0) + Q.scale(n)
    ).scale(Fraction(1, lam))
    lap = lambda f: hat_laplacian(n, f)
    residuals = {
        "second-component": lap(Q) + _r2(Q, lam + n) + _r2(R, -2 * lam),
        "third-component": lap(R) + _r2(R, lam + 2 - n) + _r2(Q, -2),
    }
    out = _raise_residuals(f"one-form system (n={n}, k={k}, j={j})", residuals)
    out.update({"n": n, "k": k, "j": j, "lam": str(lam)})
    return out


def verify_formulas2(n: int, l: int, j: int) -> dict:
    """Closure of the system behind the 1-form-seeded tensor ladder: with
    mu = l(l+n-1) - 1 (l >= 2, so mu > n-1), a kernel element P of
    L_n + (mu+1) r^-2, Q = -z r^-1 P and
    (mu - (n-1))/2 * R = r dz P + r dr Q + (n+1) Q; then

        L_n Q + (mu + n + 3) r^-2 Q - (mu + 1 - n) r^-2 R  = 0
        L_n R + (mu + 1 - n) r^-2 R - 4 r^-2 Q             = 0
    """
    if l < 2:
        raise InvariantViolation("need l >= 2 so the seed clears the Killing bound")
    mu = Fraction(l * (l + n - 1) - 1)
    P = build_harmonic_family(n, l, j)  # kernel of L_n + (mu+1) r^-2
    Q = _tilt(P)
    R = (
        mul_monomial(d_z(P), 1, 0) + mul_monomial(d_r(Q), 1, 0) + Q.scale(n + 1)
    ).scale(Fraction(2, mu - (n - 1)))
    lap = lambda f: hat_laplacian(n, f)
    residuals = {
        "second-component": lap(Q) + _r2(Q, mu + n + 3) + _r2(R, -(mu + 1 - n)),
        "third-component": lap(R) + _r2(R, mu + 1 - n) + _r2(Q, -4),
    }
    out = _raise_residuals(f"tensor one-form system (n={n}, l={l}, j={j})", residuals)
    out.update({"n": n, "l": l, "j": j, "mu": str(mu)})
    return out


def verify_formulas3(n: int, k: int, j: int) -> dict:
    """Closure of the seven-variable system behind the scalar-seeded tensor
    ladder, lam = k(k+n-1) with k >= 2 (so lam > n): from a kernel element P1
    of L_n + lam r^-2 define

        P2 = -z r^-1 P1,  P3 = z^2 r^-2 P1,  n S = -(P1 + P3),
        lam Q1 = r dz P1 + r dr P2 + n P2,   Q2 = -z r^-1 Q1,
        (n-1)(lam-n) R = r dz Q1 + r dr Q2 + (n+1) Q2 + S,

    check that the second defining route to Q2 is consistent, and that all
    six second-order closure equations hold identically.
    """
    if k < 2:
        raise InvariantViolation("need k >= 2 so the seed clears the dimension bound")
    lam = Fraction(k * (k + n - 1))
    P1 = build_harmonic_family(n, k, j)
    P2 = _tilt(P1)
    P3 = mul_monomial(P1, -2, 2)
    S = (P1 + P3).scale(Fraction(-1, n))
    Q1 = (
        mul_monomial(d_z(P1), 1, 0) + mul_monomial(d_r(P2), 1, 0) + P2.scale(n)
    ).scale(Fraction(1, lam))
    Q2 = _tilt(Q1)
    R = (
        mul_monomial(d_z(Q1), 1, 0)
        + mul_monomial(d_r(Q2), 1, 0)
        + Q2.scale(n + 1)
        + S
    ).scale(Fraction(1, (n - 1) * (lam - n)))
    lap = lambda f: hat_laplacian(n, f)
    residuals = {
        "q2-definition-consistency": Q2.scale(lam)
        - (
            mul_monomial(d_z(P2), 1, 0)
            + mul_monomial(d_r(P3), 1, 0)
            + P3.scale(n)
            - S.scale(n)
        ),
        "mixed-component": lap(P2) + _r2(P2, lam + n) + _r2(Q1, -2 * lam),
        "mixed-gradient": lap(Q1) + _r2(Q1, lam - n + 2) + _r2(P2, -2),
        "radial-radial": lap(P3) + _r2(P3, lam + 2 * n) + _r2(S, -2 * n) + _r2(Q2, -4 * lam),
        "trace-partner": lap(S) + _r2(S, lam + 2) + _r2(P3, -2) + _r2(Q2, Fraction(4 * lam, n)),
        "radial-gradient": lap(Q2)
        + _r2(Q2, lam + 4)
        + _r2(P3, -2)
        + _r2(S, 2)
        + _r2(R, 2 * (n - 1) * (n - lam)),
        "hessian-component": lap(R) + _r2(R, lam - 2 * n + 2) + _r2(Q2, Fraction(-4, n)),
    }
    out = _raise_residuals(f"tensor scalar system (n={n}, k={k}, j={j})", residuals)
    out.update({"n": n, "k": k, "j": j, "lam": str(lam)})
    return out
