"""The gauge group acting on solutions, and equivalence certification.

Three operations map solutions to solutions: multiplication by a nonzero
scalar, inversion, and local conjugation R -> (Q^-1)^⊗m R Q^⊗m by an
invertible single-factor matrix Q.  Equivalence of two solutions is
certified constructively by a witness (a sequence of these operations found
by numerical search) and refuted by conjugacy invariants (eigenvalue
multisets, characteristic polynomials), which similarity cannot change.

The witness search solves the commutation system Q^⊗m · s = r · Q^⊗m by
damped least squares over structured shapes of Q: diagonal and antidiagonal
shapes suffice for the block-structured families handled in
:mod:`gybe.solutions`; a general dense shape is also available as a
heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .core import RMatrix
from .optimize import damped_least_squares
from .solutions import GeneralParams

WITNESS_TOL = 1e-9
SHAPES = ("diagonal", "antidiagonal", "general")


@dataclass(frozen=True)
class GaugeOp:
    """One gauge move: scalar(lambda), inverse, or local_conj(Q)."""

    kind: str
    lam: complex | None = None
    q: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == "scalar":
            if self.lam is None or self.lam == 0:
                raise ValueError("scalar gauge op needs a nonzero lambda")
        elif self.kind == "inverse":
            if self.lam is not None or self.q is not None:
                raise ValueError("inverse gauge op takes no parameters")
        elif self.kind == "local_conj":
            if self.q is None:
                raise ValueError("local conjugation needs a matrix Q")
            q = linalg.as_matrix(self.q)
            if q.shape[0] != q.shape[1]:
                raise ValueError("Q must be square")
            linalg.inverse(q)  # singular Q is rejected here
            q = q.copy()
            q.flags.writeable = False
            object.__setattr__(self, "q", q)
        else:
            raise ValueError(f"unknown gauge op kind: {self.kind!r}")

    @staticmethod
    def scalar(lam: complex) -> "GaugeOp":
        return GaugeOp("scalar", lam=complex(lam))

    @staticmethod
    def inverse() -> "GaugeOp":
        return GaugeOp("inverse")

    @staticmethod
    def local_conj(q: np.ndarray) -> "GaugeOp":
        return GaugeOp("local_conj", q=q)

    def to_json_dict(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.kind == "scalar":
            data["lambda"] = [self.lam.real, self.lam.imag]
        elif self.kind == "local_conj":
            data["Q"] = linalg.matrix_to_json_dict(self.q)
        return data


def apply_gauge(r: RMatrix, op: GaugeOp) -> RMatrix:
    """Apply one gauge operation; solutions stay solutions."""
    if op.kind == "scalar":
        return RMatrix(r.signature, op.lam * r.matrix, f"scale({r.label})")
    if op.kind == "inverse":
        return RMatrix(r.signature, linalg.inverse(r.matrix), f"inverse({r.label})")
    q = op.q
    if q.shape[0] != r.signature.d:
        raise ValueError(
            f"Q side {q.shape[0]} does not match local dimension {r.signature.d}"
        )
    lifted = linalg.kron_power(q, r.signature.m)
    lifted_inv = linalg.kron_power(linalg.inverse(q), r.signature.m)
    return RMatrix(
        r.signature, lifted_inv @ r.matrix @ lifted, f"local_conj({r.label})"
    )


def apply_gauge_sequence(r: RMatrix, ops: Iterable[GaugeOp]) -> RMatrix:
    out = r
    for op in ops:
        out = apply_gauge(out, op)
    return out


@dataclass(frozen=True)
class EquivalenceWitness:
    """A gauge sequence carrying ``source`` onto ``target`` up to ``residual``."""

    ops: tuple[GaugeOp, ...]
    source: str
    target: str
    residual: float

    def to_json_dict(self) -> dict:
        return {
            "ops": [op.to_json_dict() for op in self.ops],
            "source": self.source,
            "target": self.target,
            "residual": float(self.residual),
        }


@dataclass(frozen=True)
class ConjugacyInvariants:
    """Similarity invariants: eigenvalue multiset and characteristic polynomial."""

    eigenvalues: tuple[complex, ...]
    char_poly: tuple[complex, ...]


def conjugacy_invariants(m: np.ndarray) -> ConjugacyInvariants:
    """Invariants of ``m`` under similarity; differing multisets refute conjugacy."""
    mat = linalg.as_matrix(m)
    eigs = linalg.eigenvalues(mat)
    coeffs = linalg.char_poly_coefficients(mat)
    return ConjugacyInvariants(
        tuple(complex(v) for v in eigs), tuple(complex(c) for c in coeffs)
    )


def invariants_close(
    a: ConjugacyInvariants, b: ConjugacyInvariants, tol: float = 1e-8
) -> bool:
    if len(a.eigenvalues) != len(b.eigenvalues):
        return False
    if not linalg.eigenvalue_multisets_close(a.eigenvalues, b.eigenvalues, tol):
        return False
    ca = np.asarray(a.char_poly)
    cb = np.asarray(b.char_poly)
    scale = max(1.0, linalg.max_abs(ca), linalg.max_abs(cb))
    return bool(np.all(np.abs(ca - cb) <= tol * scale))


def is_locally_conjugate_params(
    p: GeneralParams, q: GeneralParams, tol: float = WITNESS_TOL
) -> bool:
    """Same-family criterion: members are locally conjugate iff beta/alpha agree."""
    if p.family != q.family:
        raise ValueError("local-conjugacy criterion applies within one family only")
    return abs(p.ratio - q.ratio) <= tol


# --- witness search ----------------------------------------------------------


def _shape_parameterizations(shape: str):
    """Yield (param_count, builder) pairs; builders map C^k to a 2x2 Q.

    Every invertible 2x2 matrix is a scalar multiple of one of the returned
    normalized forms, and local conjugation ignores the scalar.
    """
    if shape == "diagonal":
        yield 1, lambda z: np.array([[1.0, 0.0], [0.0, z[0]]], dtype=np.complex128)
    elif shape == "antidiagonal":
        yield 1, lambda z: np.array([[0.0, 1.0], [z[0], 0.0]], dtype=np.complex128)
    elif shape == "general":
        yield 3, lambda z: np.array([[1.0, z[0]], [z[1], z[2]]], dtype=np.complex128)
        yield 2, lambda z: np.array([[0.0, 1.0], [z[0], z[1]]], dtype=np.complex128)
    else:
        raise ValueError(f"unknown conjugator shape: {shape!r}")


def _to_complex(x: np.ndarray) -> np.ndarray:
    return x[0::2] + 1j * x[1::2]


def _search_conjugator(
    r: RMatrix,
    s: RMatrix,
    shapes: Sequence[str],
    *,
    with_scalar: bool,
    restarts: int,
    seed: int,
    tol: float,
    max_iterations: int,
):
    """Shared engine behind the witness searches.

    Minimizes the commutation residual Q^⊗m · s - r · Q^⊗m (with the
    Frobenius-optimal scalar folded in when ``with_scalar``), then scores
    the candidate by the explicit conjugation residual.  Returns the best
    (Q, lambda, residual) with deterministic tie-break by restart order.
    """
    if r.signature != s.signature:
        raise ValueError("witness search needs matching signatures")
    if r.size != s.size:
        raise ValueError("witness search needs matching dimensions")
    m_fold = r.signature.m
    r_mat, s_mat = r.matrix, s.matrix

    def conjugation_residual(q: np.ndarray):
        try:
            lifted = linalg.kron_power(q, m_fold)
            lifted_inv = linalg.kron_power(linalg.inverse(q), m_fold)
        except linalg.SingularMatrixError:
            return None, None
        image = lifted_inv @ r_mat @ lifted
        if with_scalar:
            denom = np.vdot(image, image).real
            if denom < 1e-300:
                return None, None
            lam = complex(np.vdot(image, s_mat) / denom)
            if abs(lam) < 1e-150:
                return None, None
        else:
            lam = 1.0 + 0.0j
        return float(linalg.max_abs(lam * image - s_mat)), lam

    best = None
    for shape in shapes:
        for n_complex, builder in _shape_parameterizations(shape):

            def residual_vec(x: np.ndarray) -> np.ndarray:
                q = builder(_to_complex(x))
                lifted = linalg.kron_power(q, m_fold)
                left = lifted @ s_mat
                right = r_mat @ lifted
                if with_scalar:
                    denom = np.vdot(right, right).real
                    lam = np.vdot(right, left) / denom if denom > 1e-300 else 1.0
                else:
                    lam = 1.0
                diff = left - lam * right
                return np.concatenate([diff.real.ravel(), diff.imag.ravel()])

            for restart in range(restarts):
                rng = np.random.default_rng([seed, restart])
                x0 = rng.standard_normal(2 * n_complex)
                fit = damped_least_squares(
                    residual_vec,
                    x0,
                    objective_tol=(tol / 10.0) ** 2,
                    max_iterations=max_iterations,
                )
                q = builder(_to_complex(fit.x))
                residual, lam = conjugation_residual(q)
                if residual is None:
                    continue
                if best is None or residual < best[2]:
                    best = (q, lam, residual)
    return best


def search_local_conjugation(
    r: RMatrix,
    s: RMatrix,
    shapes: Sequence[str] = ("diagonal", "antidiagonal"),
    *,
    restarts: int = 8,
    seed: int = 0,
    tol: float = WITNESS_TOL,
    max_iterations: int = 120,
) -> tuple[np.ndarray, float] | None:
    """Search for Q with (Q^-1)^⊗m r Q^⊗m = s over the given shapes.

    Returns the best (Q, residual) with residual <= tol, or None; absence
    of a witness is a valid outcome, not an error.
    """
    best = _search_conjugator(
        r,
        s,
        shapes,
        with_scalar=False,
        restarts=restarts,
        seed=seed,
        tol=tol,
        max_iterations=max_iterations,
    )
    if best is None or best[2] > tol:
        return None
    return best[0], best[2]


def search_equivalence(
    r: RMatrix,
    s: RMatrix,
    shapes: Sequence[str] = SHAPES,
    *,
    include_inverse: bool = True,
    restarts: int = 8,
    seed: int = 0,
    tol: float = WITNESS_TOL,
    max_iterations: int = 120,
) -> EquivalenceWitness | None:
    """Find a gauge sequence carrying ``r`` onto ``s``, or None.

    Tries a scalar combined with a local conjugation found by search, first
    on ``r`` directly and then (when ``include_inverse``) on its inverse.
    The returned witness lists the operations in application order.
    """
    candidates: list[tuple[GaugeOp, ...]] = [()]
    if include_inverse:
        candidates.append((GaugeOp.inverse(),))
    best: EquivalenceWitness | None = None
    for prefix in candidates:
        src = apply_gauge_sequence(r, prefix)
        hit = _search_conjugator(
            src,
            s,
            shapes,
            with_scalar=True,
            restarts=restarts,
            seed=seed,
            tol=tol,
            max_iterations=max_iterations,
        )
        if hit is None:
            continue
        q, lam, residual = hit
        ops = prefix + (GaugeOp.local_conj(q), GaugeOp.scalar(lam))
        if best is None or residual < best.residual:
            best = EquivalenceWitness(ops, r.label, s.label, residual)
    if best is None or best.residual > tol:
        return None
    return best
