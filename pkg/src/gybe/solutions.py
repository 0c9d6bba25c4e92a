"""Concrete unitary solutions of the (2,3,1) and (2,3,2) equations.

The 8x8 solutions handled here all split as R = X (+) Y with X and Y built
from 2x2 diagonal blocks scaled by 1/sqrt(2):

    X = (1/sqrt2) [[A, B], [C, D]],   Y = (1/sqrt2) [[Y1, Y2], [Y3, Y4]],

with A = diag(1, omega), B = diag(alpha, beta), D = diag(gamma, delta).
Unitarity of X pins C = -D B^dagger A, and the first of the eight block
equations pins Y1..Y4 in terms of the five unit-circle parameters.  The
admissible (omega, gamma, delta) fall into three categories, which yield
three families of solutions parameterized by (alpha, beta) on the circle,
or equivalently by the phase of beta/alpha.

Everything is constructed from analytic formulas (roots of unity, 1/sqrt2),
never from decimal literals, so verification residuals sit at machine
epsilon.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .core import CheckReport, GybeSignature, RMatrix

SQRT2 = math.sqrt(2.0)
INV_SQRT2 = 1.0 / SQRT2

# (omega, gamma, delta) for the three admissible categories, indexed by family.
FAMILY_PARAMS: dict[int, tuple[complex, complex, complex]] = {
    1: (1j, 1j, 1.0 + 0j),
    2: (1j, 1.0 + 0j, 1j),
    3: (1.0 + 0j, 1.0 + 0j, 1.0 + 0j),
}

_UNIT_TOL = 1e-12


def _require_unit(value: complex, name: str, tol: float = _UNIT_TOL) -> complex:
    value = complex(value)
    if abs(abs(value) - 1.0) > tol:
        raise ValueError(f"{name} must lie on the unit circle, got |{name}|={abs(value)}")
    return value


@dataclass(frozen=True)
class DiagBlock:
    """A 2x2 diagonal matrix, stored as its two diagonal entries."""

    p: complex
    q: complex

    def as_matrix(self) -> np.ndarray:
        return np.diag([complex(self.p), complex(self.q)]).astype(np.complex128)

    def dagger(self) -> "DiagBlock":
        return DiagBlock(self.p.conjugate(), self.q.conjugate())

    def conjugate(self) -> "DiagBlock":
        return self.dagger()

    def is_unitary(self, tol: float = _UNIT_TOL) -> bool:
        return abs(abs(complex(self.p)) - 1.0) <= tol and abs(abs(complex(self.q)) - 1.0) <= tol

    @staticmethod
    def identity() -> "DiagBlock":
        return DiagBlock(1.0 + 0j, 1.0 + 0j)


@dataclass(frozen=True)
class FamilyParams:
    """One of the three families together with an angle in [0, pi]."""

    family: int
    theta: float

    def __post_init__(self):
        if self.family not in FAMILY_PARAMS:
            raise ValueError(f"family must be 1, 2, or 3, got {self.family}")
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class GeneralParams:
    """A family index with free unit-circle parameters alpha and beta."""

    family: int
    alpha: complex
    beta: complex

    def __post_init__(self):
        if self.family not in FAMILY_PARAMS:
            raise ValueError(f"family must be 1, 2, or 3, got {self.family}")
        _require_unit(self.alpha, "alpha")
        _require_unit(self.beta, "beta")

    @property
    def ratio(self) -> complex:
        """beta / alpha, the local-conjugation invariant of the family member."""
        return complex(self.beta) / complex(self.alpha)


def derive_C(a: DiagBlock, b: DiagBlock, d: DiagBlock) -> DiagBlock:
    """The lower-left block forced by unitarity of X: C = -D B^dagger A.

    Requires A and B unitary (diagonal); D is unconstrained here.
    """
    if not a.is_unitary():
        raise ValueError("A must be a unitary diagonal block")
    if not b.is_unitary():
        raise ValueError("B must be a unitary diagonal block")
    return DiagBlock(
        -complex(d.p) * complex(b.p).conjugate() * complex(a.p),
        -complex(d.q) * complex(b.q).conjugate() * complex(a.q),
    )


def derive_Y(
    omega: complex,
    gamma: complex,
    delta: complex,
    alpha: complex = 1.0 + 0j,
    beta: complex = 1.0 + 0j,
) -> tuple[DiagBlock, DiagBlock, DiagBlock, DiagBlock]:
    """Solve the first block equation for the four lower blocks Y1..Y4.

    All five parameters must be unit modulus.  With alpha = beta = 1 this
    reproduces the three reduced solutions; general alpha, beta give the
    full families.
    """
    w = _require_unit(omega, "omega")
    g = _require_unit(gamma, "gamma")
    dd = _require_unit(delta, "delta")
    al = _require_unit(alpha, "alpha")
    be = _require_unit(beta, "beta")
    wc, gc, dc = w.conjugate(), g.conjugate(), dd.conjugate()
    ac, bc = al.conjugate(), be.conjugate()
    y1 = DiagBlock(w, w * gc * (1 + dd * w - w))
    y2 = DiagBlock(be * dc * (1 - g - wc), -ac * be * be)
    y3 = DiagBlock(bc * (1 + w * g - w), al * bc * bc * dd * dd * w * w * gc)
    y4 = DiagBlock(dc * g * (w + wc - g), 1 - dd + w)
    return y1, y2, y3, y4


@dataclass(frozen=True)
class BlockSolution:
    """The structured form R = X (+) Y with all eight 2x2 blocks diagonal.

    Construction checks that A, B, C, D are unitary and that C carries the
    value forced by unitarity of X; the Y blocks are free.
    """

    A: DiagBlock
    B: DiagBlock
    C: DiagBlock
    D: DiagBlock
    Y1: DiagBlock
    Y2: DiagBlock
    Y3: DiagBlock
    Y4: DiagBlock

    def __post_init__(self):
        for name in ("A", "B", "C", "D"):
            if not getattr(self, name).is_unitary():
                raise ValueError(f"block {name} must be unitary diagonal")
        forced = derive_C(self.A, self.B, self.D)
        err = max(abs(self.C.p - forced.p), abs(self.C.q - forced.q))
        if err > 1e-12:
            raise ValueError(
                f"C deviates from -D B^dagger A by {err:.3e}; X cannot be unitary"
            )

    @property
    def omega(self) -> complex:
        return complex(self.A.q)

    @property
    def alpha(self) -> complex:
        return complex(self.B.p)

    @property
    def beta(self) -> complex:
        return complex(self.B.q)

    @property
    def gamma(self) -> complex:
        return complex(self.D.p)

    @property
    def delta(self) -> complex:
        return complex(self.D.q)

    def x_matrix(self) -> np.ndarray:
        return assemble_quadrant(self.A, self.B, self.C, self.D)

    def y_matrix(self) -> np.ndarray:
        return assemble_quadrant(self.Y1, self.Y2, self.Y3, self.Y4)

    def r_matrix(self) -> np.ndarray:
        return linalg.direct_sum(self.x_matrix(), self.y_matrix())

    def to_rmatrix(self, label: str = "") -> RMatrix:
        return RMatrix(GybeSignature(2, 3, 1), self.r_matrix(), label)

    def conjugate(self) -> "BlockSolution":
        return BlockSolution(*(getattr(self, n).conjugate() for n in _BLOCK_NAMES))

    @staticmethod
    def from_params(
        omega: complex,
        gamma: complex,
        delta: complex,
        alpha: complex = 1.0 + 0j,
        beta: complex = 1.0 + 0j,
    ) -> "BlockSolution":
        a = DiagBlock(1.0 + 0j, _require_unit(omega, "omega"))
        b = DiagBlock(_require_unit(alpha, "alpha"), _require_unit(beta, "beta"))
        d = DiagBlock(_require_unit(gamma, "gamma"), _require_unit(delta, "delta"))
        c = derive_C(a, b, d)
        y1, y2, y3, y4 = derive_Y(omega, gamma, delta, alpha, beta)
        return BlockSolution(a, b, c, d, y1, y2, y3, y4)

    @staticmethod
    def from_matrices(x: np.ndarray, y: np.ndarray, tol: float = 1e-10) -> "BlockSolution":
        """Extract the eight diagonal blocks from explicit 4x4 matrices."""
        blocks = []
        for m in (x, y):
            for raw in split_quadrant(m):
                off = max(abs(raw[0, 1]), abs(raw[1, 0]))
                if off > tol:
                    raise ValueError(f"off-diagonal block entry {off:.3e} exceeds {tol:g}")
                blocks.append(DiagBlock(complex(raw[0, 0]), complex(raw[1, 1])))
        return BlockSolution(*blocks)


_BLOCK_NAMES = ("A", "B", "C", "D", "Y1", "Y2", "Y3", "Y4")


def assemble_quadrant(
    a: DiagBlock, b: DiagBlock, c: DiagBlock, d: DiagBlock
) -> np.ndarray:
    """(1/sqrt2) [[a, b], [c, d]] as a dense 4x4 matrix."""
    out = np.zeros((4, 4), dtype=np.complex128)
    out[:2, :2] = a.as_matrix()
    out[:2, 2:] = b.as_matrix()
    out[2:, :2] = c.as_matrix()
    out[2:, 2:] = d.as_matrix()
    return INV_SQRT2 * out


def split_quadrant(m: np.ndarray) -> tuple[np.ndarray, ...]:
    """The four 2x2 blocks of sqrt2 * m, in reading order."""
    m = linalg.as_matrix(m)
    if m.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    s = SQRT2 * m
    return s[:2, :2], s[:2, 2:], s[2:, :2], s[2:, 2:]


def split_blocks(r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """The 4x4 diagonal blocks X and Y of an 8x8 matrix."""
    m = linalg.as_matrix(r)
    if m.shape != (8, 8):
        raise ValueError("expected an 8x8 matrix")
    return m[:4, :4].copy(), m[4:, 4:].copy()


def rowell_solution() -> RMatrix:
    """The 8x8 unitary (2,3,1) solution built from the primitive 8th root zeta."""
    zeta = np.exp(2j * np.pi / 8)
    zi = 1.0 / zeta
    x = INV_SQRT2 * np.array(
        [
            [zi, 0, -zi, 0],
            [0, zeta, 0, zeta],
            [zeta, 0, zeta, 0],
            [0, -zi, 0, zi],
        ],
        dtype=np.complex128,
    )
    y = INV_SQRT2 * np.array(
        [
            [zeta, 0, zeta, 0],
            [0, zi, 0, -zi],
            [-zi, 0, zi, 0],
            [0, zeta, 0, zeta],
        ],
        dtype=np.complex128,
    )
    return RMatrix(GybeSignature(2, 3, 1), linalg.direct_sum(x, y), "rowell")


def xshape_solution() -> RMatrix:
    """The 8x8 unitary (2,3,2) solution whose nonzeros form an X shape."""
    m = np.zeros((8, 8), dtype=np.complex128)
    for i in range(8):
        m[i, i] = 1.0
        m[i, 7 - i] = 1.0 if i < 4 else -1.0
    return RMatrix(GybeSignature(2, 3, 2), INV_SQRT2 * m, "xshape")


def general_solution(family: int, alpha: complex, beta: complex) -> RMatrix:
    """The family member R(alpha, beta) for unit-circle alpha and beta."""
    params = GeneralParams(family, complex(alpha), complex(beta))
    omega, gamma, delta = FAMILY_PARAMS[params.family]
    block = BlockSolution.from_params(omega, gamma, delta, params.alpha, params.beta)
    label = (
        f"family{family}:alpha={params.alpha.real:.12g},{params.alpha.imag:.12g}"
        f":beta={params.beta.real:.12g},{params.beta.imag:.12g}"
    )
    return block.to_rmatrix(label)


def family_solution(family: int, theta: float) -> RMatrix:
    """The one-angle family member R(theta) = R(1, e^{i theta}), theta in [0, pi]."""
    params = FamilyParams(family, float(theta))
    r = general_solution(family, 1.0 + 0j, np.exp(1j * params.theta))
    return RMatrix(r.signature, r.matrix, f"family{family}:theta={params.theta:.12g}")


def base_solution(k: int) -> BlockSolution:
    """The reduced solution of family k, i.e. alpha = beta = 1."""
    if k not in FAMILY_PARAMS:
        raise ValueError(f"base solution index must be 1, 2, or 3, got {k}")
    omega, gamma, delta = FAMILY_PARAMS[k]
    return BlockSolution.from_params(omega, gamma, delta)


def conjugate_solution(r: RMatrix) -> RMatrix:
    """Entrywise complex conjugate; maps solutions to solutions."""
    return RMatrix(r.signature, np.conj(r.matrix), f"conj({r.label})")


def check_block_equations(
    x: np.ndarray, y: np.ndarray, tol: float = linalg.DEFAULT_TOL
) -> CheckReport:
    """Evaluate the eight block equations equivalent to the (2,3,1) equation.

    ``x`` and ``y`` are the 4x4 diagonal blocks of R = X (+) Y; their 2x2
    sub-blocks (times sqrt2) enter the equations.  The pass verdict agrees
    with a direct check of X (+) Y at the same tolerance.
    """
    x = linalg.as_matrix(x)
    y = linalg.as_matrix(y)
    a, b, c, d = split_quadrant(x)
    y1, y2, y3, y4 = split_quadrant(y)
    i2 = linalg.identity(2)

    def lift(m):
        return linalg.kron(m, i2)

    terms = [
        (a, x, a, b, y, c, x, a, x),
        (a, x, b, b, y, d, x, b, y),
        (c, x, a, d, y, c, y, c, x),
        (c, x, b, d, y, d, y, d, y),
        (y1, x, y1, y2, y, y3, x, y1, x),
        (y1, x, y2, y2, y, y4, x, y2, y),
        (y3, x, y1, y4, y, y3, y, y3, x),
        (y3, x, y2, y4, y, y4, y, y4, y),
    ]
    residuals = []
    for p1, mid1, p2, p3, mid2, p4, r1, p5, r2 in terms:
        lhs = lift(p1) @ mid1 @ lift(p2) + lift(p3) @ mid2 @ lift(p4)
        rhs = SQRT2 * (r1 @ lift(p5) @ r2)
        residuals.append(linalg.max_abs_diff(lhs, rhs))
    residual = max(residuals)
    return CheckReport(residual, residual <= tol, tol, tuple(residuals))


def param_constraint_residuals(
    omega: complex, gamma: complex, delta: complex
) -> tuple[float, ...]:
    """The ten scalar constraints on (omega, gamma, delta).

    The first four make the derived Y blocks consistent with the remaining
    block equations; the last six are the unitarity conditions on Y.
    """
    w = complex(omega)
    g = complex(gamma)
    d = complex(delta)
    wc, gc, dc = w.conjugate(), g.conjugate(), d.conjugate()
    values = (
        (d - 1) * w * w + (1 + d * d - d * g + g) * w - 2 * g,
        d * (2 - wc - g) - (-wc - g + 1 + wc * g - g * g + w * g),
        (d - 1) * g - (d * d - 1 + w * (1 - d)),
        d * (2 * w + wc - g) - (wc - 1 + g + wc * g + w * g - g * g),
        w + wc + g + gc - (w * g + wc * gc + 2),
        w + wc + d + dc - (w * d + wc * dc + 2),
        1 + w + wc + w * g - (g + gc + w * w + w * gc),
        2 + w * d - (d + dc + w * dc),
        w + wc + g + gc + w * gc + wc * g - (4 + w * w + wc * wc),
        d + dc + wc * d + w * dc - (2 + w + wc),
    )
    return tuple(abs(v) for v in values)


def check_param_constraints(
    omega: complex, gamma: complex, delta: complex, tol: float = 1e-9
) -> CheckReport:
    for name, value in (("omega", omega), ("gamma", gamma), ("delta", delta)):
        _require_unit(value, name, tol=1e-9)
    residuals = param_constraint_residuals(omega, gamma, delta)
    residual = max(residuals)
    return CheckReport(residual, residual <= tol, tol, residuals)


def classify_unitary_params(
    omega: complex, gamma: complex, delta: complex, tol: float = 1e-9
) -> str:
    """Name the admissible category of (omega, gamma, delta), or "none".

    Category A: omega = gamma = +/-i and delta = 1; category B: omega =
    delta = +/-i and gamma = 1; category C: all three equal 1.  The
    tolerance is looser than verification tolerance because inputs may come
    from numerical search.
    """
    w, g, d = complex(omega), complex(gamma), complex(delta)
    one = 1.0 + 0j
    for sign in (1j, -1j):
        if abs(w - sign) <= tol and abs(g - sign) <= tol and abs(d - one) <= tol:
            return "A"
        if abs(w - sign) <= tol and abs(d - sign) <= tol and abs(g - one) <= tol:
            return "B"
    if abs(w - one) <= tol and abs(g - one) <= tol and abs(d - one) <= tol:
        return "C"
    return "none"


class ReducedSolution(NamedTuple):
    """A block solution conjugated so that B = I, plus the removed phases."""

    solution: BlockSolution
    alpha: complex
    beta: complex


def reduce_to_B_identity(s: BlockSolution) -> ReducedSolution:
    """Conjugate away the B block: tilde(B) = I, keeping solution-hood.

    The X quadrant is conjugated by diag(I, B) and the Y quadrant by
    diag(I, conj(alpha) beta B); both preserve the eight block equations.
    """
    al, be = s.alpha, s.beta
    reduced = BlockSolution(
        A=s.A,
        B=DiagBlock.identity(),
        C=DiagBlock(-s.gamma, -s.delta * s.omega),
        D=s.D,
        Y1=s.Y1,
        Y2=DiagBlock(be.conjugate() * s.Y2.p, al * be.conjugate() ** 2 * s.Y2.q),
        Y3=DiagBlock(be * s.Y3.p, al.conjugate() * be**2 * s.Y3.q),
        Y4=s.Y4,
    )
    return ReducedSolution(reduced, al, be)


def restore(reduced: BlockSolution, b: DiagBlock) -> BlockSolution:
    """Invert :func:`reduce_to_B_identity` for a chosen unitary diagonal B."""
    if not b.is_unitary():
        raise ValueError("B must be a unitary diagonal block")
    al, be = complex(b.p), complex(b.q)
    return BlockSolution(
        A=reduced.A,
        B=b,
        C=derive_C(reduced.A, b, reduced.D),
        D=reduced.D,
        Y1=reduced.Y1,
        Y2=DiagBlock(be * reduced.Y2.p, al.conjugate() * be**2 * reduced.Y2.q),
        Y3=DiagBlock(be.conjugate() * reduced.Y3.p, al * be.conjugate() ** 2 * reduced.Y3.q),
        Y4=reduced.Y4,
    )


# --- named-solution registry -------------------------------------------------

_NAMED_BUILDERS = {
    "rowell": rowell_solution,
    "xshape": xshape_solution,
    "base1": lambda: base_solution(1).to_rmatrix("base1"),
    "base2": lambda: base_solution(2).to_rmatrix("base2"),
    "base3": lambda: base_solution(3).to_rmatrix("base3"),
}

_FAMILY_THETA_RE = re.compile(r"^family([123]):theta=([^:]+)$")
_FAMILY_AB_RE = re.compile(
    r"^family([123]):alpha=([^,:]+),([^,:]+):beta=([^,:]+),([^,:]+)$"
)


def registry_ids() -> tuple[str, ...]:
    """The fixed named entries; parametric family ids resolve as well."""
    return tuple(_NAMED_BUILDERS)


def resolve_solution(solution_id: str) -> RMatrix:
    """Resolve a registry id to an R-matrix.

    Accepts the named entries plus parametric forms
    ``family<k>:theta=<radians>`` and
    ``family<k>:alpha=<re>,<im>:beta=<re>,<im>``.
    """
    builder = _NAMED_BUILDERS.get(solution_id)
    if builder is not None:
        return builder()
    m = _FAMILY_THETA_RE.match(solution_id)
    if m:
        return family_solution(int(m.group(1)), float(m.group(2)))
    m = _FAMILY_AB_RE.match(solution_id)
    if m:
        alpha = complex(float(m.group(2)), float(m.group(3)))
        beta = complex(float(m.group(4)), float(m.group(5)))
        return general_solution(int(m.group(1)), alpha, beta)
    raise KeyError(f"unknown solution id: {solution_id!r}")


def registry_231_ids() -> tuple[str, ...]:
    """Named registry entries whose signature is (2,3,1)."""
    return tuple(
        name for name in _NAMED_BUILDERS if name != "xshape"
    )
