"""The cyclic-shift operator family O_1..O_n used to coordinatize product states.

For local dimension n, O_k (k < n) averages the projectors |i, i+k mod n> and
O_n projects on the maximally entangled vector.  The family is mutually
orthogonal (O_i O_j = 0 for i != j) and each member is positive with unit
trace, which makes the expectation tuple (p_1, ..., p_n) a convenient
coordinate system for the separable set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qmath import ATOL, DimensionError, HermitianOperator


@dataclass(frozen=True)
class OperatorBasis:
    """Ordered operator family O_1, ..., O_{n-1}, O_n on dimension n^2."""

    local_dim: int
    ops: tuple[HermitianOperator, ...]

    def __post_init__(self) -> None:
        if len(self.ops) != self.local_dim:
            raise DimensionError("basis must contain exactly local_dim operators")

    def mats(self) -> tuple[np.ndarray, ...]:
        return tuple(o.mat for o in self.ops)


def shift_operator(n: int) -> HermitianOperator:
    """Cyclic shift S|i> = |i+1 mod n>, returned as a non-Hermitian carrier."""
    n = int(n)
    if n < 2:
        raise DimensionError("shift needs n >= 2")
    s = np.zeros((n, n), dtype=complex)
    for i in range(n):
        s[(i + 1) % n, i] = 1.0
    return HermitianOperator.carrier(s)


def max_entangled_ket(n: int) -> np.ndarray:
    """(1/sqrt(n)) sum_i |ii>."""
    psi = np.zeros(n * n, dtype=complex)
    psi[:: n + 1] = 1.0
    return psi / np.sqrt(n)


@lru_cache(maxsize=None)
def build_basis(n: int) -> OperatorBasis:
    """Construct O_k = (1/n) sum_i (I x S^k)|ii><ii|(I x S^k)^dag and O_n.

    O_k is the uniform mixture of the shifted pair projectors
    |i, i+k mod n><i, i+k mod n|; O_n is the maximally entangled projector.
    """
    n = int(n)
    if n < 2:
        raise DimensionError("basis needs n >= 2")
    ops = []
    for k in range(1, n):
        o = np.zeros((n * n, n * n), dtype=complex)
        for i in range(n):
            idx = i * n + (i + k) % n
            o[idx, idx] = 1.0 / n
        ops.append(HermitianOperator(o, check=False))
    psi = max_entangled_ket(n)
    ops.append(HermitianOperator(np.outer(psi, psi.conj()), check=False))
    return OperatorBasis(local_dim=n, ops=tuple(ops))


def permutation_images(basis: OperatorBasis) -> dict[int, int]:
    """Map i -> j (1-based) with Pi O_i Pi = O_j under the particle swap.

    Raises if some conjugated operator is not a member of the basis, which
    would signal a broken construction.
    """
    n = basis.local_dim
    d = n * n
    pi = np.zeros((d, d))
    for i in range(n):
        for j in range(n):
            pi[i * n + j, j * n + i] = 1.0
    images: dict[int, int] = {}
    for i, op in enumerate(basis.ops):
        conj = pi @ op.mat @ pi
        for j, other in enumerate(basis.ops):
            if np.allclose(conj, other.mat, rtol=0.0, atol=ATOL):
                images[i + 1] = j + 1
                break
        else:
            raise ValueError(f"swap conjugate of O_{i + 1} is not in the basis")
    return images
