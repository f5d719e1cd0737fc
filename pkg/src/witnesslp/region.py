"""The product-state feasible region and its supporting hyperplanes.

A pure product state |a> x |b> on two n-level systems is mapped to the tuple
p = (p_1, ..., p_n) of expectations of the cyclic operator family.  The
feasible region is the convex hull of these tuples.  This module maximizes
linear functionals c . p over product states (seesaw ascent plus an
independent grid oracle), certifies whether a hyperplane is an exact boundary
facet, merely tangent, or cuts the region, walks the vertex-discovery
iteration, and locates the rotation limit of parametric plane families.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from ._backend import kernel
from .opbasis import OperatorBasis, build_basis
from .qmath import ATOL, DimensionError, ProductState, PureState

DEFAULT_SEED = 0x5EED
DEFAULT_RESTARTS = 64
MAX_ITER = 500
VALUE_TOL = 1e-12  # seesaw stop criterion on the functional value
CERT_TOL = 1e-6  # certification margin for boundary status decisions
AGREE_TOL = 1e-8  # restarts within this of the best count as agreeing
RANK_TOL = 1e-4  # singular-value cutoff for the contact-face rank probe

STATUS_UNVERIFIED = "unverified"
STATUS_EXACT = "exact_boundary"
STATUS_TANGENT = "tangent"
STATUS_INTERSECTING = "intersecting"


class ConvergenceError(RuntimeError):
    """The seesaw hit its iteration cap without a trustworthy maximum."""

    def __init__(self, message: str, best_value: float):
        super().__init__(message)
        self.best_value = best_value


class NonMonotoneError(RuntimeError):
    """Tangency sampling saw a non-monotone intersecting/non-intersecting pattern."""

    def __init__(self, message: str, statuses: list[tuple[float, str]]):
        super().__init__(message)
        self.statuses = statuses


class DegenerateVertexError(ValueError):
    """A vertex set is affinely dependent and cannot fix a hyperplane."""


@dataclass(frozen=True)
class PVector:
    """A point in expectation space, one coordinate per basis operator."""

    n: int
    p: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.p, dtype=float).ravel()
        if v.size != self.n:
            raise DimensionError(f"expected {self.n} coordinates, got {v.size}")
        if v.min() < -ATOL or v.max() > 1.0 / self.n + ATOL:
            raise ValueError(f"coordinates outside [0, 1/{self.n}]: {v}")
        if v.sum() > 1.0 + ATOL:
            raise ValueError(f"coordinate sum {v.sum()} exceeds 1")
        v.setflags(write=False)
        object.__setattr__(self, "p", v)


@dataclass(frozen=True)
class Hyperplane:
    """The plane c . p = offset, oriented so the region satisfies c . p <= offset.

    Coordinate faces p_i >= 0 are stored with the i-th coefficient negated and
    offset 0.
    """

    n: int
    coeffs: np.ndarray
    offset: float
    status: str = STATUS_UNVERIFIED

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size != self.n:
            raise DimensionError(f"expected {self.n} coefficients, got {c.size}")
        if np.all(c == 0.0):
            raise ValueError("hyperplane coefficients are all zero")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)


@dataclass(frozen=True)
class MaximizationResult:
    value: float
    argmax: ProductState
    pvec: PVector
    restarts_agreeing: int


def coordinate_face(n: int, index: int) -> Hyperplane:
    """The face p_index >= 0 in the stored sign convention (-p_index <= 0)."""
    c = np.zeros(n)
    c[index] = -1.0
    return Hyperplane(n=n, coeffs=c, offset=0.0)


# ---------------------------------------------------------------------------
# expectation coordinates


def _pvec_formula(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    aa = np.abs(a) ** 2
    bb = np.abs(b) ** 2
    p = np.empty(n)
    for k in range(1, n):
        p[k - 1] = aa @ np.roll(bb, -k) / n
    p[n - 1] = abs(np.dot(a, b)) ** 2 / n
    return p


def _pvecs_batch(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Row-wise expectation tuples for (R, n) amplitude arrays."""
    aa = np.abs(a) ** 2
    bb = np.abs(b) ** 2
    p = np.empty((a.shape[0], n))
    for k in range(1, n):
        p[:, k - 1] = np.einsum("ri,ri->r", aa, np.roll(bb, -k, axis=1)) / n
    p[:, n - 1] = np.abs(np.einsum("ri,ri->r", a, b)) ** 2 / n
    return p


def p_vector(s: ProductState, basis: OperatorBasis) -> PVector:
    """Expectation tuple of a product state, from the closed-form expressions.

    p_k (k < n) is (1/n) sum_i |a_i|^2 |b_{i+k mod n}|^2 and p_n is the squared
    modulus of the coherent overlap (1/n)|sum_i a_i b_i|^2.
    """
    n = basis.local_dim
    if s.dim != n:
        raise DimensionError(f"state dimension {s.dim} does not match basis {n}")
    return PVector(n=n, p=_pvec_formula(s.a.amp, s.b.amp, n))


def p_vector_expect(s: ProductState, basis: OperatorBasis) -> PVector:
    """Same tuple computed as matrix expectations <ab|O_i|ab> (cross-check path)."""
    n = basis.local_dim
    if s.dim != n:
        raise DimensionError(f"state dimension {s.dim} does not match basis {n}")
    ket = s.ket()
    p = np.array([np.vdot(ket, o.mat @ ket).real for o in basis.ops])
    return PVector(n=n, p=p)


def random_product_amplitudes(
    n: int, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Haar-random local amplitude pairs, shape (count, n) each."""
    a = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    b = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    return a, b


# ---------------------------------------------------------------------------
# seesaw driver


def _materialize(coeffs: np.ndarray, basis: OperatorBasis) -> np.ndarray:
    w = np.zeros_like(basis.ops[0].mat)
    for c, op in zip(coeffs, basis.ops):
        w = w + c * op.mat
    return w


def _extremize(
    mat: np.ndarray,
    n: int,
    restarts: int,
    seed: int,
    extra_starts: Sequence[np.ndarray] = (),
    minimize: bool = False,
):
    """Run the seesaw kernel on a full bipartite matrix; returns raw restart data."""
    if restarts < 1:
        raise ValueError("need at least one restart")
    rng = np.random.default_rng(seed)
    starts = rng.standard_normal((restarts, n)) + 1j * rng.standard_normal((restarts, n))
    if len(extra_starts):
        starts = np.vstack([starts, np.asarray(extra_starts, dtype=complex)])
    sign = -1.0 if minimize else 1.0
    w4 = np.ascontiguousarray((sign * mat).reshape(n, n, n, n))
    vals, a, b, iters, conv = kernel.run(w4, starts, MAX_ITER, VALUE_TOL)
    return sign * vals, a, b, iters, conv


def _best_index(vals: np.ndarray, conv: np.ndarray, minimize: bool = False) -> int:
    """Index of the best restart, insisting on a converged representative.

    If the best run hit the iteration cap, a converged run within 1e-9 of it
    is accepted instead; with none available the result cannot be trusted.
    """
    v = -vals if minimize else vals
    best = int(np.argmax(v))
    if conv[best]:
        return best
    ok = np.flatnonzero(conv & (v >= v[best] - 1e-9))
    if ok.size:
        return int(ok[np.argmax(v[ok])])
    raise ConvergenceError(
        f"seesaw failed to converge within {MAX_ITER} iterations "
        f"(best value so far {vals[best]})",
        best_value=float(vals[best]),
    )


def _maximize_raw(
    coeffs: np.ndarray,
    basis: OperatorBasis,
    restarts: int,
    seed: int,
    extra_starts: Sequence[np.ndarray] = (),
):
    n = basis.local_dim
    c = np.asarray(coeffs, dtype=float)
    if c.size != n:
        raise DimensionError(f"expected {n} coefficients, got {c.size}")
    mat = _materialize(c, basis)
    vals, a, b, iters, conv = _extremize(mat, n, restarts, seed, extra_starts)
    # Recompute values from the expectation formulas so that value and pvec
    # agree exactly.
    pv = _pvecs_batch(a, b, n)
    return pv @ c, a, b, pv, conv


def maximize_functional(
    coeffs: Sequence[float],
    basis: OperatorBasis,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
) -> MaximizationResult:
    """Maximize sum_i c_i p_i over product states by alternating ascent.

    Each restart starts from a complex Gaussian local vector and alternates
    exact top-eigenvector updates of the two sides until the value moves by
    less than 1e-12 or 500 sweeps elapse.  Deterministic for a fixed seed.
    """
    c = np.asarray(coeffs, dtype=float)
    vals, a, b, pv, conv = _maximize_raw(c, basis, restarts, seed)
    best = _best_index(vals, conv)
    state = ProductState(PureState(a[best]), PureState(b[best]))
    pvec = PVector(n=basis.local_dim, p=pv[best])
    agree = int(np.sum(vals > vals[best] - AGREE_TOL))
    return MaximizationResult(
        value=float(vals[best]),
        argmax=state,
        pvec=pvec,
        restarts_agreeing=agree,
    )


# ---------------------------------------------------------------------------
# grid oracle


def _simplex_grid(n: int, resolution: int) -> np.ndarray:
    """All nonnegative modulus-squared vectors summing to 1 with entries k/resolution."""
    combos = combinations(range(resolution + n - 1), n - 1)
    rows = []
    for dividers in combos:
        prev = -1
        row = []
        for d in dividers:
            row.append(d - prev - 1)
            prev = d
        row.append(resolution + n - 2 - prev)
        rows.append(row)
    return np.asarray(rows, dtype=float) / resolution


def grid_oracle_max(
    coeffs: Sequence[float], basis: OperatorBasis, resolution: int
) -> float:
    """Exhaustive lower bound on max c . p from a discretized state grid.

    The first n-1 coordinates depend only on amplitude moduli, and the
    coherent coordinate is maximized by phase alignment, so for c_n >= 0 the
    grid ranges over nonnegative real amplitudes on the probability simplex.
    For c_n < 0 a coarse grid of 8 relative phases per coordinate is scanned
    on one side as well.
    """
    n = basis.local_dim
    c = np.asarray(coeffs, dtype=float)
    if c.size != n:
        raise DimensionError(f"expected {n} coefficients, got {c.size}")
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    if n > 4:
        raise ValueError("grid oracle supports local dimension <= 4")
    moduli = _simplex_grid(n, int(resolution))
    amps = np.sqrt(moduli)
    mix = np.zeros_like(moduli)
    for k in range(1, n):
        mix += c[k - 1] * np.roll(moduli, -k, axis=1)
    if c[n - 1] < 0:
        grid_phases = np.exp(2j * np.pi * np.arange(8) / 8)
        combos = np.stack(
            np.meshgrid(*([grid_phases] * (n - 1)), indexing="ij"), axis=-1
        ).reshape(-1, n - 1)
        phases = np.concatenate(
            [np.ones((combos.shape[0], 1), dtype=complex), combos], axis=1
        )
    else:
        phases = np.ones((1, n), dtype=complex)

    best = -np.inf
    chunk = max(1, int(4_000_000 // max(1, moduli.shape[0])))
    for i0 in range(0, moduli.shape[0], chunk):
        base = moduli[i0 : i0 + chunk] @ mix.T / n
        block_a = amps[i0 : i0 + chunk]
        for ph in phases:
            s = block_a @ (amps * ph).T
            val = base + (c[n - 1] / n) * np.abs(s) ** 2
            best = max(best, float(val.max()))
    return best


# ---------------------------------------------------------------------------
# certification


def _affine_rank(points: np.ndarray) -> int:
    if points.shape[0] < 2:
        return 0
    d = points[1:] - points[0]
    sv = np.linalg.svd(d, compute_uv=False)
    return int(np.sum(sv > RANK_TOL))


def certify_plane(
    h: Hyperplane,
    basis: OperatorBasis,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
) -> Hyperplane:
    """Decide whether a plane is an exact boundary facet, tangent, or cutting.

    The functional is maximized over product states; if the maximum exceeds
    the offset (beyond 1e-6) the plane intersects the region.  Otherwise the
    expectation tuples of all restarts that attained the maximum are
    collected, and the dimension of their affine hull separates a full
    (n-1)-dimensional facet from contact on a lower-dimensional face.
    Coordinate faces (offset 0) are reported as tangent supports.
    """
    if h.offset < 0:
        raise ValueError("store planes with nonnegative offset (c . p <= offset)")
    n = basis.local_dim
    vals, a, b, pv, conv = _maximize_raw(h.coeffs, basis, restarts, seed)
    best = _best_index(vals, conv)
    mx = float(vals[best])
    if mx > h.offset + CERT_TOL:
        return replace(h, status=STATUS_INTERSECTING)
    if h.offset <= ATOL or abs(mx - h.offset) > CERT_TOL:
        return replace(h, status=STATUS_TANGENT)
    near = pv[vals > mx - AGREE_TOL]
    status = STATUS_EXACT if _affine_rank(near) == n - 1 else STATUS_TANGENT
    return replace(h, status=status)


def fit_hyperplane(vertices: Sequence[np.ndarray], n: int) -> Hyperplane:
    """The unique hyperplane through n affinely independent points.

    Planes not passing through the origin are normalized to offset 1; a
    through-origin plane falls back to unit coefficients with offset 0.
    """
    pts = np.vstack([np.asarray(getattr(v, "p", v), dtype=float) for v in vertices])
    if pts.shape != (n, n):
        raise DegenerateVertexError(f"need exactly {n} points of dimension {n}")
    if _affine_rank(pts) != n - 1:
        raise DegenerateVertexError("vertex set is affinely dependent")
    try:
        c = np.linalg.solve(pts, np.ones(n))
        return Hyperplane(n=n, coeffs=c, offset=1.0)
    except np.linalg.LinAlgError:
        # Plane through the origin: take the null direction of [V | -1].
        m = np.hstack([pts, -np.ones((n, 1))])
        _, _, vh = np.linalg.svd(m)
        x = vh[-1]
        c, r = x[:n], float(x[n])
        if r < 0 or (r == 0 and c.sum() < 0):
            c, r = -c, -r
        return Hyperplane(n=n, coeffs=c, offset=abs(r) if abs(r) > ATOL else 0.0)


def refine_boundary(
    seed_vertices: Sequence[PVector],
    basis: OperatorBasis,
    max_rounds: int = 1,
    select_next: Optional[Callable[[list[np.ndarray], PVector, int], Sequence]] = None,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
) -> list[tuple[Hyperplane, Optional[PVector]]]:
    """Re-enact the vertex-discovery walk.

    Each round fits the plane through the current n vertices and maximizes
    its functional.  If the maximum exceeds the offset, the maximizer's
    expectation tuple is recorded as a newly discovered vertex; the walk
    continues only when ``select_next`` supplies the next vertex subset (the
    choice is deliberately left to the caller).  Rounds stop early when the
    fitted plane certifies as exact boundary or tangent.
    """
    n = basis.local_dim
    current = [np.asarray(getattr(v, "p", v), dtype=float) for v in seed_vertices]
    rounds: list[tuple[Hyperplane, Optional[PVector]]] = []
    for round_no in range(max_rounds):
        h = fit_hyperplane(current, n)
        res = maximize_functional(h.coeffs, basis, restarts=restarts, seed=seed)
        if res.value > h.offset + CERT_TOL:
            rounds.append((replace(h, status=STATUS_INTERSECTING), res.pvec))
            if select_next is None:
                break
            current = [np.asarray(getattr(v, "p", v), dtype=float)
                       for v in select_next(list(current), res.pvec, round_no)]
        else:
            rounds.append((certify_plane(h, basis, restarts=restarts, seed=seed), None))
            break
    return rounds


# ---------------------------------------------------------------------------
# rotation limits of parametric plane families


def _collect_starts(vals: np.ndarray, a: np.ndarray, cap: int = 8) -> list[np.ndarray]:
    order = np.argsort(vals)[::-1]
    return [a[i] for i in order[:cap]]


def tangency_interval(
    plane_fn: Callable[[float], Sequence[float]],
    alpha_range: tuple[float, float],
    samples: int,
    basis: OperatorBasis,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    margin: float = 1e-9,
    accuracy: float = 1e-3,
) -> float:
    """Largest alpha in the range whose plane does not cut the region.

    ``plane_fn`` maps alpha to the coefficients of a plane in c . p = 1 form.
    The range is first sampled coarsely; the intersecting/non-intersecting
    pattern must be monotone, and the flip is then bisected to the requested
    absolute accuracy.  Near the threshold the cut region is a thin sliver
    that cold random restarts can miss, so the walk proceeds from high alpha
    to low, reusing the cutting maximizers as warm starts (the cutting branch
    deforms continuously in alpha).  The intersection margin is 1e-9, well
    above seesaw noise but tight enough to resolve the shallow onset of the
    cut.
    """
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if samples < 16:
        raise ValueError("need at least 16 samples")
    if not hi > lo:
        raise ValueError("empty alpha range")
    alphas = np.linspace(lo, hi, samples)
    warm: list[np.ndarray] = []

    def cuts(alpha: float) -> bool:
        nonlocal warm
        c = np.asarray(plane_fn(alpha), dtype=float)
        vals, a, b, pv, conv = _maximize_raw(c, basis, restarts, seed, extra_starts=warm)
        cut = float(vals.max()) > 1.0 + margin
        if cut:
            warm = _collect_starts(vals, a)
        return cut

    flags = np.zeros(samples, dtype=bool)
    for idx in reversed(range(samples)):
        flags[idx] = cuts(alphas[idx])
    statuses = [
        (float(al), STATUS_INTERSECTING if f else "non-intersecting")
        for al, f in zip(alphas, flags)
    ]
    if np.any(flags[:-1] & ~flags[1:]):
        raise NonMonotoneError(
            f"intersection pattern is not monotone over [{lo}, {hi}]: {statuses}",
            statuses,
        )
    if not flags.any():
        return hi
    if flags.all():
        raise NonMonotoneError(
            f"the plane cuts the region across the whole range [{lo}, {hi}]",
            statuses,
        )
    k = int(np.argmax(flags))
    a_lo, a_hi = float(alphas[k - 1]), float(alphas[k])
    while a_hi - a_lo > accuracy / 4:
        mid = 0.5 * (a_lo + a_hi)
        if cuts(mid):
            a_hi = mid
        else:
            a_lo = mid
    return 0.5 * (a_lo + a_hi)


# ---------------------------------------------------------------------------
# conjectured facet for general n


@dataclass(frozen=True)
class BoundaryCheck:
    n: int
    hyperplane: Hyperplane
    max_value: float
    maximizer: ProductState
    pvec: PVector


def conjectured_boundary_check(
    n: int,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
) -> BoundaryCheck:
    """Certify the plane n(p_1 + ... + p_{n-1}) + p_n = 1 and report the maximizer.

    For n = 3 and n = 4 this is a proven exact boundary facet; for other n the
    status is whatever the optimizer finds.
    """
    n = int(n)
    if not 2 <= n <= 5:
        raise ValueError("supported range is 2 <= n <= 5")
    basis = build_basis(n)
    c = np.full(n, float(n))
    c[-1] = 1.0
    h = certify_plane(Hyperplane(n=n, coeffs=c, offset=1.0), basis, restarts, seed)
    res = maximize_functional(c, basis, restarts=restarts, seed=seed)
    return BoundaryCheck(
        n=n, hyperplane=h, max_value=res.value, maximizer=res.argmax, pvec=res.pvec
    )
