"""Mixtures of the basis operators and their entanglement classification.

States of the form rho = sum_i a_i O_i have closed-form positivity conditions
under partial transposition: a_1 a_2 >= a_3^2 for n = 3, and both
a_1 a_3 >= a_4^2 and a_2 >= a_4 for n = 4.  Combining the transpose test with
witness-family sweeps sorts each mixture into free entangled, PPT entangled,
consistent with known separability, or unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .opbasis import OperatorBasis, build_basis
from .qmath import (
    EIG_ATOL,
    DimensionError,
    HermitianOperator,
    min_eigenvalue,
    partial_transpose,
)
from .witness import WitnessFamily

WEIGHT_TOL = 1e-9

FREE_ENTANGLED = "free_entangled"
PPT_ENTANGLED = "ppt_entangled"
SEPARABLE_CONSISTENT = "separable_consistent"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class MixtureState:
    n: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.weights, dtype=float).ravel()
        if a.size != self.n:
            raise DimensionError(f"expected {self.n} weights, got {a.size}")
        if a.min() < -WEIGHT_TOL:
            raise ValueError(f"negative mixture weight in {a}")
        if abs(a.sum() - 1.0) > WEIGHT_TOL:
            raise ValueError(f"mixture weights sum to {a.sum()}, not 1")
        a.setflags(write=False)
        object.__setattr__(self, "weights", a)


@dataclass(frozen=True)
class DetectionReport:
    n: int
    weights: np.ndarray
    ppt: bool
    detected_by: tuple[tuple[str, float, float], ...]
    classification: str

    def __post_init__(self) -> None:
        if not self.ppt and self.detected_by and self.classification != FREE_ENTANGLED:
            raise ValueError("a detected non-PPT state must be classified free_entangled")
        if self.ppt and self.detected_by and self.classification != PPT_ENTANGLED:
            raise ValueError("a detected PPT state must be classified ppt_entangled")


def horodecki_weights(beta: float) -> np.ndarray:
    """Weights (b/7, (5-b)/7, 2/7) of the one-parameter 3x3 mixture, 0 <= b <= 5."""
    if not 0.0 <= beta <= 5.0:
        raise ValueError("beta must lie in [0, 5]")
    return np.array([beta / 7.0, (5.0 - beta) / 7.0, 2.0 / 7.0])


def two_parameter_weights(beta: float, gamma: float) -> np.ndarray:
    """Weights (b, g, 10-b, 3)/(13+g) of the 4x4 mixture, 0 <= b <= 10, g >= 0."""
    if not 0.0 <= beta <= 10.0:
        raise ValueError("beta must lie in [0, 10]")
    if gamma < 0.0:
        raise ValueError("gamma must be non-negative")
    return np.array([beta, gamma, 10.0 - beta, 3.0]) / (13.0 + gamma)


def mixture(weights: Sequence[float], basis: OperatorBasis) -> HermitianOperator:
    """The density matrix sum_i a_i O_i."""
    state = MixtureState(n=basis.local_dim, weights=np.asarray(weights, dtype=float))
    rho = np.zeros_like(basis.ops[0].mat)
    for a, op in zip(state.weights, basis.ops):
        rho = rho + a * op.mat
    return HermitianOperator(rho, check=False)


def ppt_closed_form(weights: Sequence[float], n: int) -> bool:
    """Closed-form partial-transpose positivity for the basis mixtures."""
    a = np.asarray(weights, dtype=float)
    if n == 3:
        return bool(a[0] * a[1] >= a[2] ** 2)
    if n == 4:
        return bool(a[0] * a[2] >= a[3] ** 2 and a[1] >= a[3])
    raise ValueError(f"no closed form for local dimension {n}")


def ppt_eigen(rho: HermitianOperator, local_dim: int) -> bool:
    """Partial-transpose positivity decided by the smallest eigenvalue."""
    return min_eigenvalue(partial_transpose(rho, local_dim)) >= -EIG_ATOL


def trace_against_family(
    weights: Sequence[float],
    family: WitnessFamily,
    alpha: float,
    basis: Optional[OperatorBasis] = None,
) -> float:
    """Tr(W_alpha rho) for the mixture rho, by explicit matrix trace."""
    basis = basis or build_basis(family.n)
    rho = mixture(weights, basis)
    w = family.operator(alpha, basis)
    return float(np.einsum("ij,ji->", w.mat, rho.mat).real)


def _known_separable(weights: np.ndarray, n: int) -> bool:
    # The 3x3 one-parameter mixture is separable for beta in [2, 3]; that
    # interval is imported knowledge, used only for labeling.
    if n != 3:
        return False
    a = weights
    if abs(a[2] - 2.0 / 7.0) > WEIGHT_TOL:
        return False
    beta = 7.0 * a[0]
    return 2.0 - 1e-9 <= beta <= 3.0 + 1e-9


def classify(
    weights: Sequence[float],
    n: int,
    families: Sequence[WitnessFamily],
    alpha_samples: int = 25,
) -> DetectionReport:
    """Partial-transpose test plus witness-family sweeps.

    Every supplied family is sampled across its validity domain; a family
    detects the state when some sampled Tr(W rho) drops below -1e-10.  PPT
    and undetected mixtures stay unknown unless they match the known
    separable stretch of the one-parameter family.
    """
    basis = build_basis(n)
    state = MixtureState(n=n, weights=np.asarray(weights, dtype=float))
    rho = mixture(state.weights, basis)
    ppt = ppt_eigen(rho, n)
    detected: list[tuple[str, float, float]] = []
    for fam in families:
        if fam.n != n:
            raise DimensionError(f"family {fam.label} has n={fam.n}, expected {n}")
        best_alpha, best_val = None, 0.0
        for alpha in fam.domain.sample(alpha_samples):
            val = float(np.einsum("ij,ji->", fam.operator(alpha, basis).mat, rho.mat).real)
            if val < best_val:
                best_alpha, best_val = float(alpha), val
        if best_alpha is not None and best_val < -EIG_ATOL:
            detected.append((fam.label, best_alpha, best_val))
    if not ppt:
        label = FREE_ENTANGLED
    elif detected:
        label = PPT_ENTANGLED
    elif _known_separable(state.weights, n):
        label = SEPARABLE_CONSISTENT
    else:
        label = UNKNOWN
    return DetectionReport(
        n=n,
        weights=state.weights,
        ppt=ppt,
        detected_by=tuple(detected),
        classification=label,
    )
