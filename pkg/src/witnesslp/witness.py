"""Witness operators from supporting hyperplanes.

A plane c . p = 1 that does not cut the feasible region corresponds to the
operator W = I x I - sum_i c_i O_i, whose expectation on every product state
equals 1 - c . p >= 0.  The built-in parametric families realize the rotation
of the exact boundary facet around its lower-dimensional edges, one family
per edge and dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import region as _region
from .opbasis import OperatorBasis, build_basis
from .qmath import (
    ATOL,
    EIG_ATOL,
    DimensionError,
    HermitianOperator,
    min_eigenvalue,
)

# Finite stand-in for unbounded parameter intervals when sweeping.
ALPHA_CAP = 8.0


@dataclass(frozen=True)
class AlphaDomain:
    """A union of real intervals with open/closed ends, plus isolated points.

    Infinite endpoints are allowed; :meth:`sample` replaces them with
    +-ALPHA_CAP so sweeps stay finite.
    """

    pieces: tuple[tuple[float, float, bool, bool], ...]
    specials: tuple[float, ...] = ()

    def contains(self, alpha: float) -> bool:
        a = float(alpha)
        for s in self.specials:
            if a == s:
                return True
        for lo, hi, lo_open, hi_open in self.pieces:
            if (a > lo or (not lo_open and a == lo)) and (
                a < hi or (not hi_open and a == hi)
            ):
                return True
        return False

    def sample(self, count: int) -> np.ndarray:
        """``count`` points spread over the (capped) pieces, isolated points excluded."""
        capped = []
        for lo, hi, lo_open, hi_open in self.pieces:
            lo = max(lo, -ALPHA_CAP)
            hi = min(hi, ALPHA_CAP)
            if hi <= lo:
                continue
            capped.append((lo, hi, lo_open, hi_open))
        total = sum(hi - lo for lo, hi, *_ in capped)
        out: list[np.ndarray] = []
        remaining = count
        for idx, (lo, hi, lo_open, hi_open) in enumerate(capped):
            k = remaining if idx == len(capped) - 1 else max(
                2, round(count * (hi - lo) / total)
            )
            k = min(k, remaining)
            pts = np.linspace(lo, hi, k + lo_open + hi_open)
            if lo_open:
                pts = pts[1:]
            if hi_open:
                pts = pts[:-1]
            out.append(pts)
            remaining -= len(pts)
            if remaining <= 0:
                break
        return np.concatenate(out) if out else np.empty(0)

    def describe(self) -> str:
        parts = []
        for lo, hi, lo_open, hi_open in self.pieces:
            left = "(" if lo_open or math.isinf(lo) else "["
            right = ")" if hi_open or math.isinf(hi) else "]"
            parts.append(f"{left}{lo}, {hi}{right}")
        s = " u ".join(parts)
        if self.specials:
            s += " plus " + ", ".join(str(x) for x in self.specials)
        return s


@dataclass(frozen=True)
class WitnessFamily:
    """A parametric witness family with symbolic coefficient functions.

    ``coeff_fn`` maps alpha to the plane coefficients c(alpha) of the
    normalized plane c . p = 1; the operator is materialized on demand as
    I x I - sum c_i O_i.  Isolated special points of the domain (alpha = 0 in
    the unbounded families) materialize directly to the last basis operator.
    """

    n: int
    label: str
    coeff_fn: Callable[[float], np.ndarray]
    domain: AlphaDomain

    def coeffs(self, alpha: float) -> np.ndarray:
        self._check(alpha)
        if alpha in self.domain.specials:
            raise ValueError(
                f"alpha={alpha} is an isolated point of {self.label} with no "
                "normalized plane form; materialize the operator instead"
            )
        return np.asarray(self.coeff_fn(alpha), dtype=float)

    def operator(self, alpha: float, basis: Optional[OperatorBasis] = None) -> HermitianOperator:
        self._check(alpha)
        basis = basis or build_basis(self.n)
        if alpha in self.domain.specials:
            return basis.ops[-1]
        c = self.coeff_fn(alpha)
        w = np.eye(self.n * self.n, dtype=complex)
        for ci, op in zip(c, basis.ops):
            w = w - ci * op.mat
        return HermitianOperator(w, check=False)

    def _check(self, alpha: float) -> None:
        if not self.domain.contains(alpha):
            raise ValueError(
                f"alpha={alpha} outside the validity domain {self.domain.describe()} "
                f"of family {self.label}"
            )


@dataclass(frozen=True)
class WitnessCertificate:
    min_product_expectation: float
    detected_state_found: bool
    detecting_state: Optional[HermitianOperator]
    is_positive_operator: bool

    def __post_init__(self) -> None:
        if self.is_positive_operator and self.detected_state_found:
            raise ValueError("a positive operator cannot detect any state")


def witness_from_plane(h: _region.Hyperplane, basis: OperatorBasis) -> HermitianOperator:
    """I x I - sum_i c_i O_i for the plane rescaled to c . p = 1 form."""
    if abs(h.offset) <= ATOL:
        raise ValueError("a plane through the origin cannot be normalized to offset 1")
    if h.n != basis.local_dim:
        raise DimensionError("plane and basis dimensions differ")
    c = h.coeffs / h.offset
    w = np.eye(h.n * h.n, dtype=complex)
    for ci, op in zip(c, basis.ops):
        w = w - ci * op.mat
    return HermitianOperator(w, check=False)


def _unbounded_domain() -> AlphaDomain:
    return AlphaDomain(
        pieces=((-math.inf, 0.0, True, True), (1.0, math.inf, False, True)),
        specials=(0.0,),
    )


def builtin_families(n: int) -> list[WitnessFamily]:
    """The named parametric families for local dimension 3 or 4.

    Labels: W3, W3p, W3pp for n = 3 and W4, W4p, W4pp, W4ppp for n = 4 (one
    trailing p per prime).  The two unbounded families are positive operators
    on their whole domain; the others are genuine witnesses away from the
    exact-boundary end of their interval.
    """
    if n == 3:
        return [
            WitnessFamily(
                n=3,
                label="W3",
                coeff_fn=lambda a: np.array([1 / a, 3.0, 2 - 1 / (3 * a)]),
                domain=AlphaDomain(pieces=((1 / 3, 2 / 3, False, False),)),
            ),
            WitnessFamily(
                n=3,
                label="W3p",
                coeff_fn=lambda a: np.array([3.0, 1 / a, 2 - 1 / (3 * a)]),
                domain=AlphaDomain(pieces=((1 / 3, 2 / 3, False, False),)),
            ),
            WitnessFamily(
                n=3,
                label="W3pp",
                coeff_fn=lambda a: np.array([3.0, 3.0, 1 / a]),
                domain=_unbounded_domain(),
            ),
        ]
    if n == 4:
        rotated = AlphaDomain(pieces=((1 / 4, 1 / 3, True, False),))
        return [
            WitnessFamily(
                n=4,
                label="W4",
                coeff_fn=lambda a: np.array([1 / a, 4.0, 4.0, 2 - 1 / (4 * a)]),
                domain=rotated,
            ),
            WitnessFamily(
                n=4,
                label="W4p",
                coeff_fn=lambda a: np.array([4.0, 4.0, 1 / a, 2 - 1 / (4 * a)]),
                domain=rotated,
            ),
            WitnessFamily(
                n=4,
                label="W4pp",
                coeff_fn=lambda a: np.array([4.0, 1 / a, 4.0, 2 - 1 / (4 * a)]),
                # Tangent for every alpha >= 1/4; capped for finite sweeps.
                domain=AlphaDomain(pieces=((1 / 4, ALPHA_CAP, False, False),)),
            ),
            WitnessFamily(
                n=4,
                label="W4ppp",
                coeff_fn=lambda a: np.array([4.0, 4.0, 4.0, 1 / a]),
                domain=_unbounded_domain(),
            ),
        ]
    raise ValueError(f"no built-in families for local dimension {n}")


def family_by_label(label: str) -> WitnessFamily:
    for n in (3, 4):
        for fam in builtin_families(n):
            if fam.label == label:
                return fam
    raise KeyError(f"unknown witness family {label!r}")


def _mixture_scan(w: np.ndarray, basis: OperatorBasis, step: float) -> tuple[float, Optional[np.ndarray]]:
    """Most negative Tr(W rho) over the simplex of basis-operator mixtures."""
    traces = np.array([np.einsum("ij,ji->", w, op.mat).real for op in basis.ops])
    grid = _region._simplex_grid(basis.local_dim, int(round(1 / step)))
    vals = grid @ traces
    k = int(np.argmin(vals))
    return float(vals[k]), grid[k]


def certify_witness(
    w: HermitianOperator,
    basis: OperatorBasis,
    restarts: int = _region.DEFAULT_RESTARTS,
    seed: int = _region.DEFAULT_SEED,
    random_states: int = 10_000,
) -> WitnessCertificate:
    """Probe an operator for the two witness properties.

    ``min_product_expectation`` is the seesaw minimum of <ab|W|ab> over
    product states (non-negative for a valid witness).  Detection is scanned
    over the simplex of basis-operator mixtures, which contains the named
    mixed-state families, plus ``random_states`` Haar-random pure states;
    absence of a detection is reported, never asserted.
    """
    n = basis.local_dim
    if w.dim != n * n:
        raise DimensionError(f"operator dimension {w.dim} does not match basis {n}x{n}")
    vals, a, b, iters, conv = _region._extremize(
        w.mat, n, restarts, seed, minimize=True
    )
    best = _region._best_index(vals, conv, minimize=True)
    min_expect = float(vals[best])

    positive = min_eigenvalue(w) >= -EIG_ATOL

    detected = False
    detecting: Optional[HermitianOperator] = None
    if not positive:
        mix_val, mix_weights = _mixture_scan(w.mat, basis, step=0.02 if n == 3 else 0.05)
        if mix_val < -EIG_ATOL:
            detected = True
            rho = np.zeros_like(w.mat)
            for wt, op in zip(mix_weights, basis.ops):
                rho = rho + wt * op.mat
            detecting = HermitianOperator(rho, check=False)
        elif random_states > 0:
            rng = np.random.default_rng(seed)
            kets = rng.standard_normal((random_states, n * n)) + 1j * rng.standard_normal(
                (random_states, n * n)
            )
            kets /= np.linalg.norm(kets, axis=1, keepdims=True)
            expect = np.einsum("ri,ij,rj->r", kets.conj(), w.mat, kets).real
            k = int(np.argmin(expect))
            if expect[k] < -EIG_ATOL:
                detected = True
                detecting = HermitianOperator(
                    np.outer(kets[k], kets[k].conj()), check=False
                )
    return WitnessCertificate(
        min_product_expectation=min_expect,
        detected_state_found=detected,
        detecting_state=detecting,
        is_positive_operator=positive,
    )
