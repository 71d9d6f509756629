"""Finite-dimensional complex-matrix kernel.

Cayley transforms between hermitian and unitary matrices, block operators
that are unitary for the indefinite form [x, y] = (x0, y0) - (x1, y1),
the induced linear fractional transform on contractions, wandering-subspace
detection for a unitary, and a shared relative singularity test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
KREIN_TOL = 1e-10

#: shared relative threshold for "0 is in the spectrum" style tests
SINGULARITY_TOL = 1e-10


def _as_matrix(a) -> np.ndarray:
    m = np.atleast_2d(np.asarray(a, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix entries must be finite")
    return m


def opnorm(a) -> float:
    return float(np.linalg.norm(np.atleast_2d(np.asarray(a, dtype=complex)), 2))


def min_singular_value(a) -> float:
    return float(np.linalg.svd(_as_matrix(a), compute_uv=False)[-1])


def is_singular(m, tol: float = SINGULARITY_TOL) -> bool:
    """True iff the smallest singular value is below tol * (1 + ||m||)."""
    m = _as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    return bool(s[-1] <= tol * (1 + s[0]))


def cayley(a) -> np.ndarray:
    """U = (A + iI)(A - iI)^(-1) for hermitian A; U is unitary without
    eigenvalue 1."""
    a = _as_matrix(a)
    herm = opnorm(a - a.conj().T)
    if herm > HERMITIAN_TOL:
        raise ValueError(f"matrix is not hermitian: ||A - A*|| = {herm:.3e}")
    eye = np.eye(a.shape[0])
    # (A+iI) and (A-iI)^(-1) commute, so a single left solve suffices
    return np.linalg.solve(a - 1j * eye, a + 1j * eye)


def inverse_cayley(u) -> np.ndarray:
    """A = i(U + I)(U - I)^(-1) for unitary U without eigenvalue 1."""
    u = _as_matrix(u)
    eye = np.eye(u.shape[0])
    udef = opnorm(u.conj().T @ u - eye)
    if udef > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary: ||U*U - I|| = {udef:.3e}")
    smin = min_singular_value(u - eye)
    if smin <= UNITARY_TOL:
        raise ValueError(
            f"U has (numerically) the eigenvalue 1: min sv of U - I is {smin:.3e}"
        )
    return 1j * np.linalg.solve(u - eye, u + eye)


@dataclass(frozen=True)
class KreinBlockOperator:
    """2x2 block operator, unitary for the form [x, y] = (x0,y0) - (x1,y1).

    Blocks are m x m; the constructor verifies K*JK = J and KJK* = J with
    J = diag(I, -I) to within KREIN_TOL.
    """

    k11: np.ndarray
    k12: np.ndarray
    k21: np.ndarray
    k22: np.ndarray

    def __post_init__(self):
        blocks = [_as_matrix(b) for b in (self.k11, self.k12, self.k21, self.k22)]
        m = blocks[0].shape[0]
        if any(b.shape != (m, m) for b in blocks):
            raise ValueError("all four blocks must be square with equal size")
        for name, b in zip(("k11", "k12", "k21", "k22"), blocks):
            object.__setattr__(self, name, b)
        res = self.krein_defect()
        if res > KREIN_TOL:
            raise ValueError(f"block operator is not Krein unitary: defect {res:.3e}")

    @property
    def m(self) -> int:
        return self.k11.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.k11, self.k12], [self.k21, self.k22]])

    @classmethod
    def from_matrix(cls, k) -> "KreinBlockOperator":
        k = _as_matrix(k)
        if k.shape[0] % 2:
            raise ValueError("full matrix must have even size")
        m = k.shape[0] // 2
        return cls(k[:m, :m], k[:m, m:], k[m:, :m], k[m:, m:])

    @classmethod
    def identity(cls, m: int) -> "KreinBlockOperator":
        eye = np.eye(m)
        zero = np.zeros((m, m))
        return cls(eye, zero, zero, eye)

    def krein_defect(self) -> float:
        k = self.matrix
        j = _fundamental_symmetry(self.m)
        return max(
            opnorm(k.conj().T @ j @ k - j),
            opnorm(k @ j @ k.conj().T - j),
        )

    def compose(self, other: "KreinBlockOperator") -> "KreinBlockOperator":
        """Block product self @ other (apply other first)."""
        return KreinBlockOperator.from_matrix(self.matrix @ other.matrix)


def _fundamental_symmetry(m: int) -> np.ndarray:
    return np.diag(np.concatenate([np.ones(m), -np.ones(m)]))


def interspherical(k: KreinBlockOperator, z) -> np.ndarray | complex:
    """Linear fractional transform (K21 + K22 Z)(K11 + K12 Z)^(-1).

    Defined for contractions Z (||Z|| <= 1); the denominator is invertible
    for every Krein-unitary K, so a singular denominator signals a broken K
    and is rejected.  A scalar z is accepted and a scalar is returned.
    """
    scalar = np.isscalar(z) or np.ndim(z) == 0
    zm = np.atleast_2d(np.asarray(z, dtype=complex))
    if zm.shape != (k.m, k.m):
        raise ValueError(f"contraction has shape {zm.shape}, expected {(k.m, k.m)}")
    if opnorm(zm) > 1 + 1e-10:
        raise ValueError(f"||Z|| = {opnorm(zm):.6f} exceeds 1")
    den = k.k11 + k.k12 @ zm
    if min_singular_value(den) <= 1e-12:
        raise ValueError("K11 + K12 Z is numerically singular; K is not Krein unitary")
    out = (k.k21 + k.k22 @ zm) @ np.linalg.inv(den)
    return complex(out[0, 0]) if (scalar and k.m == 1) else out


def random_krein_unitary(m: int, rng: np.random.Generator,
                         scale: float = 0.5) -> KreinBlockOperator:
    """Random Krein-unitary block operator as exp(X) with JX* = -XJ.

    X = [[iA, C], [C*, iB]] with hermitian A, B is J-skew-hermitian, so the
    exponential lies exactly (up to roundoff) in the Krein-unitary group.
    """
    def herm(n):
        g = rng.normal(scale=scale, size=(n, n)) + 1j * rng.normal(scale=scale, size=(n, n))
        return (g + g.conj().T) / 2

    a, b = herm(m), herm(m)
    c = rng.normal(scale=scale, size=(m, m)) + 1j * rng.normal(scale=scale, size=(m, m))
    x = np.block([[1j * a, c], [c.conj().T, 1j * b]])
    return KreinBlockOperator.from_matrix(scipy.linalg.expm(x))


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace, stored as matrix columns."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vectors, dtype=complex))
        if v.ndim != 2 or v.shape[1] == 0:
            raise ValueError("basis must contain at least one column")
        gram = v.conj().T @ v
        if opnorm(gram - np.eye(v.shape[1])) > 1e-12:
            raise ValueError("basis columns are not orthonormal")
        object.__setattr__(self, "vectors", v)

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @classmethod
    def span(cls, columns) -> "SubspaceBasis":
        """Orthonormalize the given (full-rank) columns."""
        v = np.atleast_2d(np.asarray(columns, dtype=complex))
        q, r = np.linalg.qr(v)
        if min_singular_value(r) <= 1e-12 * max(1.0, opnorm(r)):
            raise ValueError("columns are rank deficient")
        return cls(q)

    @classmethod
    def coordinate(cls, ambient_dim: int, index: int = 0) -> "SubspaceBasis":
        e = np.zeros((ambient_dim, 1), dtype=complex)
        e[index, 0] = 1.0
        return cls(e)


@dataclass(frozen=True)
class WanderingReport:
    first_violation: int | None
    defect_per_n: tuple[float, ...]

    @property
    def is_wandering(self) -> bool:
        return self.first_violation is None


def wandering_check(u, basis: SubspaceBasis, n_max: int,
                    tol: float = SINGULARITY_TOL) -> WanderingReport:
    """Sizes ||L* U^n L|| for n = 1..n_max and the first n exceeding tol.

    A subspace is wandering when all its images under positive powers of U
    stay orthogonal to it.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    u = _as_matrix(u)
    if opnorm(u.conj().T @ u - np.eye(u.shape[0])) > UNITARY_TOL:
        raise ValueError("U is not unitary")
    ell = basis.vectors
    defects = []
    first = None
    current = ell
    for n in range(1, n_max + 1):
        current = u @ current
        d = opnorm(ell.conj().T @ current)
        defects.append(d)
        if first is None and d > tol:
            first = n
    return WanderingReport(first, tuple(defects))
