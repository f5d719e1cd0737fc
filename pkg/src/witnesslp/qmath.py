"""Dense linear algebra for small bipartite quantum systems.

Everything operates on explicit complex matrices: Hermitian operators,
tensor products, partial transposition, the particle-swap operator,
generalized Gell-Mann generators and eigenvalue helpers.  Local dimensions
stay tiny (at most 6), so dense arithmetic is used throughout.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from functools import lru_cache

import numpy as np

# Tolerance for algebraic identities (hermiticity, norms, orthogonality).
ATOL = 1e-12
# Buffer applied to computed eigenvalues when deciding positivity.
EIG_ATOL = 1e-10


class DimensionError(ValueError):
    """Operator or state dimensions are inconsistent."""


@dataclass(frozen=True)
class HermitianOperator:
    """A dense complex square matrix, Hermitian within ``ATOL``.

    The cyclic-shift helper is real but not symmetric; it travels in the
    same container via :meth:`carrier`, which skips the hermiticity check.
    """

    mat: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        m = np.array(self.mat, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise DimensionError(f"expected a nonempty square matrix, got shape {m.shape}")
        if check and not np.allclose(m, m.conj().T, rtol=0.0, atol=ATOL):
            raise ValueError("matrix is not Hermitian within 1e-12")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @classmethod
    def carrier(cls, mat: np.ndarray) -> "HermitianOperator":
        """Wrap a matrix without the hermiticity check (unitary carriers)."""
        return cls(mat, check=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.mat).real)


@dataclass(frozen=True)
class PureState:
    """A normalized state vector with a canonical global phase.

    The amplitudes are normalized on construction and rotated so that the
    first component of largest modulus is real and non-negative.  That makes
    optimizer outputs directly comparable against tabulated states.
    """

    amp: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.amp, dtype=complex).ravel()
        if v.size < 1:
            raise DimensionError("empty state vector")
        nrm = np.linalg.norm(v)
        if nrm < 1e-14:
            raise ValueError("cannot normalize a (near) zero vector")
        v = v / nrm
        k = int(np.argmax(np.abs(v)))
        phase = v[k] / abs(v[k])
        v = v * phase.conjugate()
        v.setflags(write=False)
        object.__setattr__(self, "amp", v)

    @property
    def dim(self) -> int:
        return self.amp.size


@dataclass(frozen=True)
class ProductState:
    """A pair of local pure states |a> x |b> on equal local dimensions."""

    a: PureState
    b: PureState

    def __post_init__(self) -> None:
        if self.a.dim != self.b.dim:
            raise DimensionError(f"local dimensions differ: {self.a.dim} vs {self.b.dim}")

    @property
    def dim(self) -> int:
        return self.a.dim

    def ket(self) -> np.ndarray:
        return np.kron(self.a.amp, self.b.amp)

    def projector(self) -> HermitianOperator:
        k = self.ket()
        return HermitianOperator(np.outer(k, k.conj()), check=False)


def tensor(x: HermitianOperator, y: HermitianOperator) -> HermitianOperator:
    """Kronecker product of two operators."""
    return HermitianOperator(np.kron(x.mat, y.mat), check=False)


def partial_transpose(rho: HermitianOperator, subsystem_dim: int) -> HermitianOperator:
    """Transpose the second tensor factor of an operator on H_A x H_B.

    Both local dimensions must equal ``subsystem_dim``.
    """
    d = int(subsystem_dim)
    if d < 1 or rho.dim != d * d:
        raise DimensionError(
            f"operator of dimension {rho.dim} is not bipartite with local dimension {d}"
        )
    r = rho.mat.reshape(d, d, d, d)
    return HermitianOperator(r.transpose(0, 3, 2, 1).reshape(d * d, d * d), check=False)


def swap_operator(local_dim: int) -> HermitianOperator:
    """The permutation operator with Pi |ij> = |ji>; Hermitian and unitary."""
    d = int(local_dim)
    if d < 2:
        raise DimensionError("swap needs local dimension >= 2")
    pi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            pi[i * d + j, j * d + i] = 1.0
    return HermitianOperator(pi, check=False)


@lru_cache(maxsize=None)
def _gell_mann_mats(n: int) -> tuple[np.ndarray, ...]:
    mats: list[np.ndarray] = []
    for k in range(1, n):
        for j in range(k):
            sym = np.zeros((n, n), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            mats.append(sym)
            asym = np.zeros((n, n), dtype=complex)
            asym[j, k] = -1.0j
            asym[k, j] = 1.0j
            mats.append(asym)
        diag = np.zeros(n)
        diag[:k] = 1.0
        diag[k] = -k
        mats.append(np.sqrt(2.0 / (k * (k + 1))) * np.diag(diag).astype(complex))
    for m in mats:
        m.setflags(write=False)
    return tuple(mats)


def gell_mann_basis(n: int) -> list[HermitianOperator]:
    """The n^2 - 1 generalized Gell-Mann generators of su(n).

    Ordering follows the standard physics convention: for each subspace size
    k = 2..n, the symmetric/antisymmetric pair for every row j < k-1 comes
    first and the k-th diagonal generator closes the block.  For n = 3 this
    reproduces the usual lambda_1..lambda_8 with lambda_3 = diag(1,-1,0) and
    lambda_8 = diag(1,1,-2)/sqrt(3).  All generators are traceless with
    Tr(l_i l_j) = 2 delta_ij.
    """
    if n < 2:
        raise DimensionError("su(n) generators need n >= 2")
    return [HermitianOperator(m, check=False) for m in _gell_mann_mats(int(n))]


def min_eigenvalue(x: HermitianOperator) -> float:
    """Smallest eigenvalue of a Hermitian operator."""
    return float(np.linalg.eigvalsh(x.mat)[0])


def is_positive_semidefinite(x: HermitianOperator, atol: float = EIG_ATOL) -> bool:
    return min_eigenvalue(x) >= -atol


def identity(dim: int) -> HermitianOperator:
    return HermitianOperator(np.eye(dim, dtype=complex), check=False)
