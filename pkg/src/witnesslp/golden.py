"""Golden reference values and the runners behind the ``reproduce`` command.

Expected rationals are stored as :class:`fractions.Fraction` to avoid decimal
drift; every checker returns one :class:`GoldenItem` per verified fact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import decomp as _decomp
from . import region as _region
from . import states as _states
from . import witness as _witness
from .opbasis import build_basis
from .qmath import ProductState, PureState

_R2, _R3, _R6, _R10, _R14 = (math.sqrt(x) for x in (2, 3, 6, 10, 14))
_F = Fraction

# Product states and their expectation tuples for the 3x3 vertex table.
TABLE1_ROWS: list[tuple[tuple, tuple, tuple]] = [
    ((1, 0, 0), (0, 1, 0), (_F(1, 3), _F(0), _F(0))),
    ((1, 0, 0), (0, 0, 1), (_F(0), _F(1, 3), _F(0))),
    ((1, 0, 0), (1, 0, 0), (_F(0), _F(0), _F(1, 3))),
    ((1, 1, 1), (1, 1, 1), (_F(1, 9), _F(1, 9), _F(1, 3))),
    ((0, 1, _R3), (0, _R3, 1), (_F(1, 48), _F(3, 16), _F(1, 4))),
    ((0, _R2, _R14), (0, _R14, _R2), (_F(1, 192), _F(49, 192), _F(7, 48))),
    ((0, _R6, _R10), (0, _R10, _R6), (_F(3, 64), _F(25, 192), _F(5, 16))),
    ((0, _R3, 1), (0, 1, _R3), (_F(3, 16), _F(1, 48), _F(1, 4))),
    ((0, _R14, _R2), (0, _R2, _R14), (_F(49, 192), _F(1, 192), _F(7, 48))),
    ((0, _R10, _R6), (0, _R6, _R10), (_F(25, 192), _F(3, 64), _F(5, 16))),
]

# Named planes of the 3x3 walk in c . p = offset form.
PLANES_3 = {
    "sum=1": ((3, 3, 3), _F(1)),
    "sum-tangent": ((3, 3, 3), _F(5, 3)),
    "exact": ((3, 3, 1), _F(1)),
    "flip1": ((-3, 3, 3), _F(5, 4)),
    "steep": ((3, 9, 5), _F(73, 24)),
    "flip2": ((-3, 3, 6), _F(17, 8)),
    "limit": ((3, 6, 3), _F(2)),
    "limit-swapped": ((6, 3, 3), _F(2)),
}

MAXIMA_3 = [
    ("max 3(p1+p2+p3)", (3, 3, 3), _F(5, 3)),
    ("max 3(p1+p2)+p3", (3, 3, 1), _F(1)),
    ("max 3(-p1+p2+p3)", (-3, 3, 3), _F(5, 4)),
    ("max 3p1+9p2+5p3", (3, 9, 5), _F(73, 24)),
    ("max 3(-p1+p2)+6p3", (-3, 3, 6), _F(17, 8)),
]

DEFAULT_TOL = {
    "table1": 1e-12,
    "maximum": 1e-9,
    "argmax": 1e-8,
    "alpha": 1e-3,
    "coeff": 1e-12,
}


@dataclass(frozen=True)
class GoldenItem:
    section: str
    name: str
    passed: bool
    expected: str
    observed: str


def su3_coeff_table(alpha: float, primed: bool) -> tuple[float, dict[tuple[int, int], float]]:
    """Symbolic local-decomposition coefficients of the 3x3 rotated family.

    Keys are 1-based generator index pairs; absent pairs are zero.  The
    primed family is the particle-swap image, which flips the antisymmetric
    diagonal-sector cross term.
    """
    sign = -1.0 if primed else 1.0
    pair = (6 * alpha - 1) / (18 * alpha)
    diag = -(3 * alpha - 5) / (36 * alpha)
    cross = math.sqrt(3) * (3 * alpha - 1) / (12 * alpha)
    c = {}
    for i in (1, 4, 6):
        c[(i, i)] = -pair
    for i in (2, 5, 7):
        c[(i, i)] = pair
    c[(3, 3)] = diag
    c[(8, 8)] = diag
    c[(3, 8)] = sign * cross
    c[(8, 3)] = -sign * cross
    c00 = (12 * alpha - 2) / (27 * alpha)
    return c00, c


def su4_coeff_table(alpha: float, primed: bool) -> tuple[float, dict[tuple[int, int], float]]:
    """Symbolic local-decomposition coefficients of the 4x4 rotated family.

    The diagonal-sector cross terms are not antisymmetric here: the swap
    image fixes the relative factors (1, -1/3) and (1, -1/2) between the two
    orientations of the (3,8) and (8,15) pairs.
    """
    pair = (8 * alpha - 1) / (32 * alpha)
    c = {}
    for i in (1, 4, 6, 9, 11, 13):
        c[(i, i)] = -pair
    for i in (2, 5, 7, 10, 12, 14):
        c[(i, i)] = pair
    c[(3, 3)] = 3 / (32 * alpha)
    c[(8, 8)] = (16 * alpha + 5) / (96 * alpha)
    c[(15, 15)] = (8 * alpha + 7) / (96 * alpha)
    c[(3, 8)] = math.sqrt(3) * (4 * alpha - 1) / (16 * alpha)
    c[(8, 3)] = -math.sqrt(3) * (4 * alpha - 1) / (48 * alpha)
    c[(8, 15)] = math.sqrt(2) * (4 * alpha - 1) / (12 * alpha)
    c[(15, 8)] = -math.sqrt(2) * (4 * alpha - 1) / (24 * alpha)
    c[(15, 3)] = math.sqrt(6) * (1 - 4 * alpha) / (24 * alpha)
    if primed:
        c = {(j, i): v for (i, j), v in c.items()}
    c00 = (24 * alpha - 3) / (64 * alpha)
    return c00, c


def rho_beta_expected(beta: float) -> str:
    """Reference classification of the one-parameter 3x3 mixture."""
    if beta < 1:
        return _states.FREE_ENTANGLED
    if beta < 2:
        return _states.PPT_ENTANGLED
    if beta <= 3:
        return _states.SEPARABLE_CONSISTENT
    if beta <= 4:
        return _states.PPT_ENTANGLED
    return _states.FREE_ENTANGLED


def varrho_expected(beta: float, gamma: float) -> str:
    """Reference classification of the two-parameter 4x4 mixture."""
    if gamma < 3:
        return _states.FREE_ENTANGLED
    if beta < 1 or beta > 9:
        return _states.FREE_ENTANGLED
    if beta < 3 or beta > 7:
        return _states.PPT_ENTANGLED
    return _states.UNKNOWN


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _item(section, name, passed, expected, observed) -> GoldenItem:
    return GoldenItem(section, name, bool(passed), _fmt(expected), _fmt(observed))


def _table1_items(tol: dict, items: list[GoldenItem]) -> None:
    basis = build_basis(3)
    for row, (a, b, p) in enumerate(TABLE1_ROWS, start=1):
        state = ProductState(PureState(np.array(a, complex)), PureState(np.array(b, complex)))
        got = _region.p_vector(state, basis).p
        want = np.array([float(x) for x in p])
        err = float(np.max(np.abs(got - want)))
        items.append(
            _item("s2", f"vertex-table row {row}", err <= tol["table1"],
                  "(" + ", ".join(_fmt(x) for x in p) + ")", f"max err {err:.3e}")
        )


def _maxima_items(section, cases, basis, seed, restarts, tol, items) -> None:
    for name, coeffs, expected in cases:
        res = _region.maximize_functional(coeffs, basis, restarts=restarts, seed=seed)
        err = abs(res.value - float(expected))
        items.append(_item(section, name, err <= tol["maximum"], expected, res.value))


def _certify_items(section, cases, basis, seed, restarts, items) -> None:
    for name, coeffs, offset, want in cases:
        h = _region.Hyperplane(n=basis.local_dim, coeffs=np.array(coeffs, float),
                               offset=float(offset))
        got = _region.certify_plane(h, basis, restarts=restarts, seed=seed).status
        items.append(_item(section, name, got == want, want, got))


def run_section2(seed: int, restarts: int, tol: Optional[dict] = None) -> list[GoldenItem]:
    tol = tol or DEFAULT_TOL
    items: list[GoldenItem] = []
    basis = build_basis(3)

    _table1_items(tol, items)
    _maxima_items("s2", MAXIMA_3, basis, seed, restarts, tol, items)

    res = _region.maximize_functional((3, 3, 3), basis, restarts=restarts, seed=seed)
    want = np.array([1 / 9, 1 / 9, 1 / 3])
    err = float(np.max(np.abs(res.pvec.p - want)))
    items.append(_item("s2", "argmax of 3(p1+p2+p3)", err <= tol["argmax"],
                       "(1/9, 1/9, 1/3)", f"max err {err:.3e}"))

    _certify_items(
        "s2",
        [
            ("certify 3(p1+p2+p3)=1", (3, 3, 3), 1, _region.STATUS_INTERSECTING),
            ("certify 3(p1+p2)+p3=1", (3, 3, 1), 1, _region.STATUS_EXACT),
            ("certify 3p1+6p2+3p3=2", (3, 6, 3), 2, _region.STATUS_TANGENT),
            ("certify 6p1+3p2+3p3=2", (6, 3, 3), 2, _region.STATUS_TANGENT),
        ],
        basis, seed, restarts, items,
    )

    fam = _witness.family_by_label("W3")
    alpha_star = _region.tangency_interval(
        fam.coeff_fn, (1 / 3, 1.0), 16, basis, restarts=restarts, seed=seed
    )
    items.append(_item("s2", "rotation limit of W3 plane",
                       abs(alpha_star - 2 / 3) <= tol["alpha"], _F(2, 3), alpha_star))

    fams3 = _witness.builtin_families(3)
    bad = []
    for k in range(0, 51):
        beta = k / 10
        got = _states.classify(_states.horodecki_weights(beta), 3, fams3).classification
        if got != rho_beta_expected(beta):
            bad.append((beta, got))
    items.append(_item("s2", "one-parameter mixture grid (51 points)",
                       not bad, "intervals free/ppt/separable/ppt/free",
                       "all match" if not bad else f"mismatches {bad[:4]}"))

    _decomp_items("s2", 3, tol, items)
    return items


def _decomp_items(section: str, n: int, tol: dict, items: list[GoldenItem]) -> None:
    basis = build_basis(n)
    table = su3_coeff_table if n == 3 else su4_coeff_table
    labels = ("W3", "W3p") if n == 3 else ("W4", "W4p")
    alphas = np.linspace(0.35, 0.65, 10) if n == 3 else np.linspace(0.26, 1 / 3, 10)
    want_settings = 10 if n == 3 else 20
    m = n * n - 1
    for label, primed in zip(labels, (False, True)):
        fam = _witness.family_by_label(label)
        worst = 0.0
        counts = set()
        for alpha in alphas:
            d = _decomp.decompose(fam.operator(alpha, basis), n)
            c00, table_c = table(float(alpha), primed)
            full = np.zeros((m, m))
            for (i, j), v in table_c.items():
                full[i - 1, j - 1] = v
            worst = max(
                worst,
                abs(d.c00 - c00),
                float(np.max(np.abs(d.cij - full))),
                float(np.max(np.abs(d.ci0))),
                float(np.max(np.abs(d.c0j))),
            )
            counts.add(_decomp.settings_count(d))
        items.append(_item(section, f"local decomposition of {label}",
                           worst <= tol["coeff"], "coefficient table",
                           f"max err {worst:.3e}"))
        items.append(_item(section, f"settings count of {label}",
                           counts == {want_settings}, want_settings, sorted(counts)))


def run_section3(seed: int, restarts: int, tol: Optional[dict] = None) -> list[GoldenItem]:
    tol = tol or DEFAULT_TOL
    items: list[GoldenItem] = []
    basis = build_basis(4)

    _maxima_items("s3", [("max 4(p1+p2+p3)+p4", (4, 4, 4, 1), _F(1))],
                  basis, seed, restarts, tol, items)
    _certify_items(
        "s3",
        [("certify 4(p1+p2+p3)+p4=1", (4, 4, 4, 1), 1, _region.STATUS_EXACT)],
        basis, seed, restarts, items,
    )

    res = _region.maximize_functional((4, 4, 4, 4), basis, restarts=restarts, seed=seed)
    want = np.array([1 / 16, 1 / 16, 1 / 16, 1 / 4])
    err = float(np.max(np.abs(res.pvec.p - want)))
    items.append(_item("s3", "argmax of 4(p1+p2+p3+p4)", err <= tol["argmax"],
                       "(1/16, 1/16, 1/16, 1/4)", f"max err {err:.3e}"))

    for label in ("W4", "W4p"):
        fam = _witness.family_by_label(label)
        alpha_star = _region.tangency_interval(
            fam.coeff_fn, (1 / 4, 1 / 2), 16, basis, restarts=restarts, seed=seed
        )
        items.append(_item("s3", f"rotation limit of {label} plane",
                           abs(alpha_star - 1 / 3) <= tol["alpha"], _F(1, 3), alpha_star))

    fam = _witness.family_by_label("W4pp")
    bad_contacts = []
    for alpha in (0.26, 0.5, 1.0, 2.0, 4.0):
        h = _region.Hyperplane(n=4, coeffs=fam.coeff_fn(alpha), offset=1.0)
        status = _region.certify_plane(h, basis, restarts=restarts, seed=seed).status
        if status == _region.STATUS_INTERSECTING:
            bad_contacts.append((alpha, status))
    items.append(_item("s3", "W4pp plane stays in contact on the sample grid",
                       not bad_contacts, "tangent at all sampled alpha",
                       "all tangent" if not bad_contacts else str(bad_contacts)))

    fams4 = _witness.builtin_families(4)
    bad = []
    for beta in range(0, 11):
        for gamma in (0.0, 2.0, 3.0, 4.0, 6.0):
            got = _states.classify(
                _states.two_parameter_weights(beta, gamma), 4, fams4
            ).classification
            if got != varrho_expected(beta, gamma):
                bad.append((beta, gamma, got))
    items.append(_item("s3", "two-parameter mixture grid (55 points)",
                       not bad, "regions free/ppt/unknown per gamma and beta",
                       "all match" if not bad else f"mismatches {bad[:4]}"))

    _decomp_items("s3", 4, tol, items)
    return items


def run_golden(section: str, seed: int, restarts: int,
               tol_override: Optional[float] = None) -> list[GoldenItem]:
    tol = dict(DEFAULT_TOL)
    if tol_override is not None:
        tol = {k: float(tol_override) for k in tol}
    items: list[GoldenItem] = []
    if section in ("s2", "all"):
        items.extend(run_section2(seed, restarts, tol))
    if section in ("s3", "all"):
        items.extend(run_section3(seed, restarts, tol))
    return items
