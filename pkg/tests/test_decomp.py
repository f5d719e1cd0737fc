import math

import numpy as np
import pytest

from witnesslp import (
    DimensionError,
    HermitianOperator,
    decompose,
    family_by_label,
    identity,
    one_sided_terms,
    reconstruct,
    settings_count,
)


def test_identity_decomposition():
    d = decompose(identity(9), 3)
    assert d.c00 == pytest.approx(1.0, abs=1e-14)
    assert np.max(np.abs(d.cij)) < 1e-14
    assert np.max(np.abs(d.ci0)) < 1e-14
    assert np.max(np.abs(d.c0j)) < 1e-14
    assert settings_count(d) == 0


def test_decompose_dim_mismatch():
    with pytest.raises(DimensionError):
        decompose(identity(9), 4)


@pytest.mark.parametrize("n", [3, 4])
def test_roundtrip_random_hermitian(n, rng):
    d2 = n * n
    for _ in range(40):
        a = rng.standard_normal((d2, d2)) + 1j * rng.standard_normal((d2, d2))
        x = HermitianOperator(a + a.conj().T)
        back = reconstruct(decompose(x, n))
        assert np.max(np.abs(back.mat - x.mat)) < 1e-12


def test_rotated_family_coefficients_su3(basis3):
    fam = family_by_label("W3")
    for alpha in (0.35, 0.5, 2 / 3):
        d = decompose(fam.operator(alpha, basis3), 3)
        # identity term and the two cross terms in the diagonal sector
        assert d.c00 == pytest.approx((12 * alpha - 2) / (27 * alpha), abs=1e-12)
        cross = math.sqrt(3) * (3 * alpha - 1) / (12 * alpha)
        assert d.cij[2, 7] == pytest.approx(cross, abs=1e-12)
        assert d.cij[7, 2] == pytest.approx(-cross, abs=1e-12)
        assert d.cij[2, 2] == pytest.approx(-(3 * alpha - 5) / (36 * alpha), abs=1e-12)


def test_rotated_family_coefficients_su4(basis4):
    fam = family_by_label("W4")
    for alpha in (0.27, 0.30, 1 / 3):
        d = decompose(fam.operator(alpha, basis4), 4)
        assert d.cij[2, 2] == pytest.approx(3 / (32 * alpha), abs=1e-12)
        assert d.cij[7, 7] == pytest.approx((16 * alpha + 5) / (96 * alpha), abs=1e-12)
        assert d.cij[14, 14] == pytest.approx((8 * alpha + 7) / (96 * alpha), abs=1e-12)
        # the diagonal-sector cross terms are not antisymmetric in 4 x 4
        assert d.cij[2, 7] == pytest.approx(
            math.sqrt(3) * (4 * alpha - 1) / (16 * alpha), abs=1e-12
        )
        assert d.cij[7, 2] == pytest.approx(
            -math.sqrt(3) * (4 * alpha - 1) / (48 * alpha), abs=1e-12
        )
        assert d.cij[14, 2] == pytest.approx(
            math.sqrt(6) * (1 - 4 * alpha) / (24 * alpha), abs=1e-12
        )
        assert abs(d.cij[2, 14]) < 1e-12


def test_settings_counts(basis3, basis4):
    d3 = decompose(family_by_label("W3").operator(0.5, basis3), 3)
    assert settings_count(d3) == 10
    d3p = decompose(family_by_label("W3p").operator(0.5, basis3), 3)
    assert settings_count(d3p) == 10
    d4 = decompose(family_by_label("W4").operator(0.3, basis4), 4)
    assert settings_count(d4) == 20
    d4p = decompose(family_by_label("W4p").operator(0.3, basis4), 4)
    assert settings_count(d4p) == 20


def test_families_have_no_one_sided_terms(basis3, basis4):
    for n, basis in ((3, basis3), (4, basis4)):
        from witnesslp import builtin_families

        for fam in builtin_families(n):
            for alpha in fam.domain.sample(4):
                d = decompose(fam.operator(alpha, basis), n)
                assert one_sided_terms(d) == [], (fam.label, alpha)


def test_primed_family_is_index_mirror(basis4):
    d = decompose(family_by_label("W4").operator(0.3, basis4), 4)
    dp = decompose(family_by_label("W4p").operator(0.3, basis4), 4)
    assert np.max(np.abs(dp.cij - d.cij.T)) < 1e-12
