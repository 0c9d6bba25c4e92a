"""Generalized Yang-Baxter equations and their verification.

The (d, m, l) equation constrains an invertible operator R on the m-fold
tensor power of a d-dimensional space:

    (R ⊗ I^l)(I^l ⊗ R)(R ⊗ I^l) = (I^l ⊗ R)(R ⊗ I^l)(I^l ⊗ R)

where I is the identity on one tensor factor.  With m = 2, l = 1 this is the
ordinary Yang-Baxter equation.  Residuals are reported in the max-abs-entry
norm of the difference of the two triple products, which mirrors the
entrywise reading of the equation in the computational basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg

# Dense arithmetic stays comfortable below this side length.
MAX_MATRIX_SIDE = 2**10


@dataclass(frozen=True)
class GybeSignature:
    """The triple (d, m, l) indexing a generalized Yang-Baxter equation."""

    d: int
    m: int
    l: int

    def __post_init__(self):
        for name in ("d", "m", "l"):
            if getattr(self, name) < 1:
                raise ValueError(f"signature component {name} must be positive")

    @property
    def matrix_size(self) -> int:
        """Side length d^m of a conforming R-matrix."""
        return self.d**self.m

    @property
    def lifted_size(self) -> int:
        """Side length d^(m+l) on which the two lifted operators act."""
        return self.d ** (self.m + self.l)

    def __str__(self) -> str:
        return f"({self.d},{self.m},{self.l})"


def _freeze(m: np.ndarray) -> np.ndarray:
    out = linalg.as_matrix(m).copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class RMatrix:
    """A candidate or verified solution, tagged with its signature.

    Construction validates shape against the signature and invertibility at
    the global pivot threshold.  The stored matrix is an immutable copy.
    """

    signature: GybeSignature
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = _freeze(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise ValueError("an R-matrix must be square")
        if m.shape[0] != self.signature.matrix_size:
            raise ValueError(
                f"matrix side {m.shape[0]} does not match signature "
                f"{self.signature} (expected {self.signature.matrix_size})"
            )
        linalg.inverse(m)  # raises SingularMatrixError when not invertible
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def scaled(self, lam: complex, label: str | None = None) -> "RMatrix":
        if lam == 0:
            raise ValueError("scalar gauge factor must be nonzero")
        return RMatrix(
            self.signature,
            lam * self.matrix,
            label if label is not None else f"{self.label}*scalar",
        )


@dataclass(frozen=True)
class CheckReport:
    """Result of one verification: overall residual plus per-equation detail."""

    residual: float
    passed: bool
    tolerance: float
    detail: tuple[float, ...] = ()
    vacuous: bool = False

    def __post_init__(self):
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        if self.passed != (self.residual <= self.tolerance):
            raise ValueError("inconsistent report: passed must mean residual <= tolerance")

    def to_json_dict(self) -> dict:
        data = {
            "passed": bool(self.passed),
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "detail": [float(v) for v in self.detail],
        }
        if self.vacuous:
            data["vacuous"] = True
        return data


def _report(residuals: list[float], tol: float, vacuous: bool = False) -> CheckReport:
    residual = max(residuals) if residuals else 0.0
    return CheckReport(
        residual=residual,
        passed=residual <= tol,
        tolerance=tol,
        detail=tuple(residuals),
        vacuous=vacuous,
    )


def gybe_residual(matrix: np.ndarray, signature: GybeSignature) -> float:
    """max-abs entry of L S L - S L S for L = R ⊗ I^l, S = I^l ⊗ R."""
    m = linalg.as_matrix(matrix)
    if m.shape[0] != signature.matrix_size:
        raise ValueError(
            f"matrix side {m.shape[0]} does not match signature {signature}"
        )
    if signature.lifted_size > MAX_MATRIX_SIDE:
        raise ValueError("lifted dimension exceeds the dense-arithmetic cap")
    pad = linalg.identity(signature.d**signature.l)
    lifted_left = linalg.kron(m, pad)
    lifted_right = linalg.kron(pad, m)
    lhs = lifted_left @ lifted_right @ lifted_left
    rhs = lifted_right @ lifted_left @ lifted_right
    return linalg.max_abs_diff(lhs, rhs)


def check_gybe(r: RMatrix, tol: float = linalg.DEFAULT_TOL) -> CheckReport:
    """Verify the (d, m, l) equation for ``r`` at tolerance ``tol``."""
    return _report([gybe_residual(r.matrix, r.signature)], tol)


def check_ybe(x: np.ndarray, tol: float = linalg.DEFAULT_TOL) -> CheckReport:
    """Verify the ordinary Yang-Baxter equation for a d^2 x d^2 matrix."""
    m = linalg.as_matrix(x)
    if m.shape[0] != m.shape[1]:
        raise ValueError("YBE candidate must be square")
    d = math.isqrt(m.shape[0])
    if d * d != m.shape[0]:
        raise ValueError(f"YBE candidate side {m.shape[0]} is not a perfect square")
    return _report([gybe_residual(m, GybeSignature(d, 2, 1))], tol)


class DoubleLiftReport(NamedTuple):
    """YBE check of X paired with the (2,3,1) check of X (+) X."""

    ybe: CheckReport
    gybe: CheckReport

    @property
    def agree(self) -> bool:
        return self.ybe.passed == self.gybe.passed


def double_lift_check(x: np.ndarray, tol: float = linalg.DEFAULT_TOL) -> DoubleLiftReport:
    """Check a 4x4 X against the YBE and X (+) X against the (2,3,1) equation.

    The two verdicts agree for every invertible X; the paired report makes
    that equivalence observable.
    """
    m = linalg.as_matrix(x)
    if m.shape != (4, 4):
        raise ValueError("double_lift_check expects a 4x4 matrix")
    doubled = RMatrix(GybeSignature(2, 3, 1), linalg.direct_sum(m, m), "double-lift")
    return DoubleLiftReport(check_ybe(m, tol), check_gybe(doubled, tol))


def braid_generator_matrix(r: RMatrix, n: int, i: int) -> np.ndarray:
    """Matrix of the i-th braid generator on n strands.

    For a (d, m, l) solution this is I^(l(i-1)) ⊗ R ⊗ I^(l(n-i-1)), acting
    on d^(m + (n-2)l) dimensions.
    """
    if n < 2:
        raise ValueError("a braid group needs at least 2 strands")
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    sig = r.signature
    dim = sig.d ** (sig.m + (n - 2) * sig.l)
    if dim > MAX_MATRIX_SIDE:
        raise ValueError("representation dimension exceeds the dense cap")
    left = linalg.identity(sig.d ** (sig.l * (i - 1)))
    right = linalg.identity(sig.d ** (sig.l * (n - i - 1)))
    return linalg.kron_all([left, r.matrix, right])


def far_commutativity_indices(signature: GybeSignature) -> list[int]:
    """Generator indices j > 2 with (j-1) l < m; empty iff 2l >= m."""
    out = []
    j = 3
    while (j - 1) * signature.l < signature.m:
        out.append(j)
        j += 1
    return out


def check_far_commutativity(r: RMatrix, tol: float = linalg.DEFAULT_TOL) -> CheckReport:
    """Check R_s1 R_sj = R_sj R_s1 for every j > 2 with (j-1) l < m.

    Each pair is evaluated in the braid group on (j-1) l + 2 strands.  When
    no such j exists (exactly the case 2l >= m) the condition holds vacuously
    and the report carries the ``vacuous`` flag.
    """
    js = far_commutativity_indices(r.signature)
    if not js:
        return _report([], tol, vacuous=True)
    residuals = []
    for j in js:
        strands = (j - 1) * r.signature.l + 2
        g1 = braid_generator_matrix(r, strands, 1)
        gj = braid_generator_matrix(r, strands, j)
        residuals.append(linalg.max_abs_diff(g1 @ gj, gj @ g1))
    return _report(residuals, tol)


def ybe_summation_residual(matrix: np.ndarray, d: int) -> float:
    """Entrywise summation form of the YBE, as an independent cross-check.

    Writes the equation as d^6 cubic constraints on the coefficients
    R^{kl}_{ij} (row index kl, column index ij, row-major) and returns the
    largest violation.  Small d only; the lifted-product form is canonical.
    """
    m = linalg.as_matrix(matrix)
    if m.shape != (d * d, d * d):
        raise ValueError("matrix does not match the declared local dimension")
    if d > 4:
        raise ValueError("summation form is a small-d cross-check")

    def entry(k, l, i, j):
        return m[k * d + l, i * d + j]

    worst = 0.0
    rng = range(d)
    for x in rng:
        for y in rng:
            for z in rng:
                for u in rng:
                    for v in rng:
                        for w in rng:
                            lhs = sum(
                                entry(a, b, u, v) * entry(c, z, b, w) * entry(x, y, a, c)
                                for a in rng
                                for b in rng
                                for c in rng
                            )
                            rhs = sum(
                                entry(nn, p, v, w) * entry(x, mm, u, nn) * entry(y, z, mm, p)
                                for mm in rng
                                for nn in rng
                                for p in rng
                            )
                            worst = max(worst, abs(lhs - rhs))
    return worst
