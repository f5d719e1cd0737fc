import numpy as np
import pytest

from witnesslp import (
    DimensionError,
    Hyperplane,
    ProductState,
    PureState,
    PVector,
    build_basis,
    certify_plane,
    conjectured_boundary_check,
    coordinate_face,
    fit_hyperplane,
    grid_oracle_max,
    maximize_functional,
    p_vector,
    p_vector_expect,
    permutation_images,
    refine_boundary,
)
from witnesslp import NonMonotoneError, tangency_interval
from witnesslp.region import (
    DegenerateVertexError,
    STATUS_EXACT,
    STATUS_INTERSECTING,
    STATUS_TANGENT,
    random_product_amplitudes,
)


def product(a, b):
    return ProductState(PureState(np.asarray(a, complex)), PureState(np.asarray(b, complex)))


def test_p_vector_computational_kets(basis3, basis4):
    p = p_vector(product([1, 0, 0], [0, 1, 0]), basis3)
    assert np.allclose(p.p, [1 / 3, 0, 0], atol=1e-15)
    p = p_vector(product([1, 0, 0, 0], [1, 0, 0, 0]), basis4)
    assert np.allclose(p.p, [0, 0, 0, 1 / 4], atol=1e-15)


def test_p_vector_uniform_state(basis3):
    p = p_vector(product([1, 1, 1], [1, 1, 1]), basis3)
    assert np.allclose(p.p, [1 / 9, 1 / 9, 1 / 3], atol=1e-15)


def test_p_vector_unbalanced_vertex(basis3):
    p = p_vector(product([0, np.sqrt(2), np.sqrt(14)], [0, np.sqrt(14), np.sqrt(2)]), basis3)
    assert np.allclose(p.p, [1 / 192, 49 / 192, 7 / 48], atol=1e-15)


def test_p_vector_dim_mismatch(basis4):
    with pytest.raises(DimensionError):
        p_vector(product([1, 0, 0], [1, 0, 0]), basis4)


@pytest.mark.parametrize("n", [3, 4])
def test_formula_path_agrees_with_matrix_path(n, rng):
    basis = build_basis(n)
    a, b = random_product_amplitudes(n, 1000, rng)
    for k in range(0, 1000, 7):
        s = ProductState(PureState(a[k]), PureState(b[k]))
        p1 = p_vector(s, basis).p
        p2 = p_vector_expect(s, basis).p
        assert np.max(np.abs(p1 - p2)) < 1e-12


def test_maximize_symmetric_functional(basis3):
    res = maximize_functional((3, 3, 3), basis3)
    assert res.value == pytest.approx(5 / 3, abs=1e-9)
    assert np.allclose(res.pvec.p, [1 / 9, 1 / 9, 1 / 3], atol=1e-8)
    assert res.restarts_agreeing >= 2
    # value and argmax are mutually consistent by construction
    assert res.value == pytest.approx(float(np.array([3, 3, 3]) @ res.pvec.p), abs=1e-12)


def test_maximize_flipped_functional_hits_tabulated_vertex(basis3):
    res = maximize_functional((-3, 3, 3), basis3)
    assert res.value == pytest.approx(5 / 4, abs=1e-9)
    assert np.allclose(res.pvec.p, [1 / 48, 3 / 16, 1 / 4], atol=1e-8)


def test_maximize_facet_functionals(basis3, basis4):
    assert maximize_functional((3, 3, 1), basis3).value == pytest.approx(1.0, abs=1e-9)
    assert maximize_functional((4, 4, 4, 1), basis4).value == pytest.approx(1.0, abs=1e-9)


def test_maximize_requires_restarts(basis3):
    with pytest.raises(ValueError):
        maximize_functional((3, 3, 3), basis3, restarts=0)


def test_grid_oracle_brackets_known_maxima(basis3):
    g = grid_oracle_max((3, 3, 3), basis3, 64)
    assert 5 / 3 - 1e-2 <= g <= 5 / 3 + 1e-12
    g = grid_oracle_max((3, 9, 5), basis3, 64)
    assert abs(g - 73 / 24) <= 1e-2
    g = grid_oracle_max((0, 0, 1), basis3, 64)
    assert abs(g - 1 / 3) <= 1e-2


def test_grid_oracle_validates_input(basis3):
    with pytest.raises(ValueError):
        grid_oracle_max((3, 3, 3), basis3, 4)
    with pytest.raises(ValueError):
        grid_oracle_max((5,) * 5, build_basis(5), 16)


@pytest.mark.parametrize(
    "coeffs", [(3, 3, 3), (3, 9, 5), (-3, 3, 6), (2, 5, 1), (3, 3, -1)]
)
def test_seesaw_dominates_grid_oracle(basis3, coeffs):
    res = maximize_functional(coeffs, basis3)
    g = grid_oracle_max(coeffs, basis3, 32)
    assert res.value >= g - 1e-9


def test_maximum_invariant_under_swap_permutation(basis3, rng):
    images = permutation_images(basis3)
    for _ in range(3):
        c = rng.uniform(0.5, 4.0, size=3)
        swapped = np.empty(3)
        for i in range(3):
            swapped[images[i + 1] - 1] = c[i]
        v1 = maximize_functional(c, basis3).value
        v2 = maximize_functional(swapped, basis3).value
        assert v1 == pytest.approx(v2, abs=1e-9)


def test_maximizer_pvector_satisfies_invariants(basis4, rng):
    # PVector construction itself enforces the coordinate bounds
    for _ in range(3):
        c = rng.uniform(0.0, 5.0, size=4)
        res = maximize_functional(c, basis4)
        assert isinstance(res.pvec, PVector)
        assert res.pvec.p.sum() <= 1 + 1e-12


def test_certify_exact_boundary(basis3):
    h = certify_plane(Hyperplane(n=3, coeffs=(3, 3, 1), offset=1.0), basis3)
    assert h.status == STATUS_EXACT


def test_certify_intersecting(basis3):
    h = certify_plane(Hyperplane(n=3, coeffs=(3, 3, 3), offset=1.0), basis3)
    assert h.status == STATUS_INTERSECTING


def test_certify_tangent_at_segment(basis3):
    h = certify_plane(Hyperplane(n=3, coeffs=(3, 6, 3), offset=2.0), basis3)
    assert h.status == STATUS_TANGENT


def test_certify_coordinate_face(basis4):
    h = certify_plane(coordinate_face(4, 3), basis4)
    assert h.status == STATUS_TANGENT


def test_certify_rejects_negative_offset(basis3):
    with pytest.raises(ValueError):
        certify_plane(Hyperplane(n=3, coeffs=(3, 3, 3), offset=-1.0), basis3)


def test_fit_hyperplane_through_simplex_corners():
    pts = [np.array([1 / 3, 0, 0]), np.array([0, 1 / 3, 0]), np.array([0, 0, 1 / 3])]
    h = fit_hyperplane(pts, 3)
    assert np.allclose(h.coeffs, [3, 3, 3], atol=1e-12)
    assert h.offset == 1.0


def test_refine_discovers_uniform_vertex(basis3):
    seeds = [
        PVector(3, [1 / 3, 0, 0]),
        PVector(3, [0, 1 / 3, 0]),
        PVector(3, [0, 0, 1 / 3]),
    ]
    rounds = refine_boundary(seeds, basis3)
    assert len(rounds) == 1
    plane, vertex = rounds[0]
    assert plane.status == STATUS_INTERSECTING
    assert np.allclose(plane.coeffs, [3, 3, 3], atol=1e-12)
    assert np.allclose(vertex.p, [1 / 9, 1 / 9, 1 / 3], atol=1e-8)


def test_refine_discovers_edge_vertex(basis3):
    seeds = [
        PVector(3, [0, 1 / 3, 0]),
        PVector(3, [0, 0, 1 / 3]),
        PVector(3, [1 / 9, 1 / 9, 1 / 3]),
    ]
    rounds = refine_boundary(seeds, basis3)
    plane, vertex = rounds[0]
    assert np.allclose(plane.coeffs, [-3, 3, 3], atol=1e-10)
    assert np.allclose(vertex.p, [1 / 48, 3 / 16, 1 / 4], atol=1e-8)


def test_refine_discovers_uniform_vertex_4d(basis4):
    seeds = [
        PVector(4, [1 / 4, 0, 0, 0]),
        PVector(4, [0, 1 / 4, 0, 0]),
        PVector(4, [0, 0, 1 / 4, 0]),
        PVector(4, [0, 0, 0, 1 / 4]),
    ]
    rounds = refine_boundary(seeds, basis4)
    plane, vertex = rounds[0]
    assert plane.status == STATUS_INTERSECTING
    assert np.allclose(vertex.p, [1 / 16, 1 / 16, 1 / 16, 1 / 4], atol=1e-8)


def test_refine_stops_on_certified_plane(basis3):
    seeds = [
        PVector(3, [1 / 3, 0, 0]),
        PVector(3, [0, 1 / 3, 0]),
        PVector(3, [1 / 9, 1 / 9, 1 / 3]),
    ]
    rounds = refine_boundary(seeds, basis3, max_rounds=5)
    assert len(rounds) == 1
    plane, vertex = rounds[0]
    assert vertex is None
    assert plane.status == STATUS_EXACT


def test_refine_continues_with_caller_selection(basis3):
    seeds = [
        PVector(3, [1 / 3, 0, 0]),
        PVector(3, [0, 1 / 3, 0]),
        PVector(3, [0, 0, 1 / 3]),
    ]

    def keep_last_two(current, new_vertex, round_no):
        return [current[1], current[2], new_vertex]

    rounds = refine_boundary(seeds, basis3, max_rounds=2, select_next=keep_last_two)
    assert len(rounds) == 2
    assert np.allclose(rounds[1][1].p, [1 / 48, 3 / 16, 1 / 4], atol=1e-8)


def test_refine_rejects_degenerate_seeds(basis3):
    seeds = [np.array([1 / 3, 0, 0]), np.array([1 / 3, 0, 0]), np.array([0, 0, 1 / 3])]
    with pytest.raises(DegenerateVertexError):
        refine_boundary(seeds, basis3)


def test_fit_hyperplane_through_origin():
    pts = [np.array([0.1, 0, 0]), np.array([0, 0.1, 0]), np.array([0.1, 0.1, 0])]
    h = fit_hyperplane(pts, 3)
    assert h.offset == 0.0
    assert abs(h.coeffs[0]) < 1e-12 and abs(h.coeffs[1]) < 1e-12
    assert abs(h.coeffs[2]) > 0.9


def test_tangency_interval_returns_upper_end_when_never_cutting(basis4):
    # the swap-invariant plane family stays tangent across this whole range
    coeff_fn = lambda a: np.array([4.0, 1 / a, 4.0, 2 - 1 / (4 * a)])
    got = tangency_interval(coeff_fn, (0.26, 1.0), 16, basis4, restarts=32)
    assert got == 1.0


def test_tangency_interval_rejects_non_monotone_pattern(basis3):
    # artificial family: cuts at low alpha, supports at high alpha
    coeff_fn = lambda a: np.array([3.0, 3.0, 3.0 if a < 0.5 else 1.0])
    with pytest.raises(NonMonotoneError):
        tangency_interval(coeff_fn, (0.1, 1.0), 16, basis3, restarts=16)


def test_tangency_interval_rejects_always_cutting(basis3):
    coeff_fn = lambda a: np.array([3.0, 3.0, 3.0])
    with pytest.raises(NonMonotoneError):
        tangency_interval(coeff_fn, (0.1, 1.0), 16, basis3, restarts=16)


def test_tangency_interval_validates_arguments(basis3):
    coeff_fn = lambda a: np.array([3.0, 3.0, 1 / a])
    with pytest.raises(ValueError):
        tangency_interval(coeff_fn, (0.5, 1.0), 8, basis3)
    with pytest.raises(ValueError):
        tangency_interval(coeff_fn, (1.0, 0.5), 16, basis3)


def test_conjectured_boundary_small_dims():
    chk = conjectured_boundary_check(3, restarts=32)
    assert chk.hyperplane.status == STATUS_EXACT
    assert chk.max_value == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        conjectured_boundary_check(7)


def test_pvector_validation():
    with pytest.raises(ValueError):
        PVector(3, [0.5, 0, 0])  # above 1/3
    with pytest.raises(ValueError):
        PVector(3, [-0.01, 0.1, 0.1])
    with pytest.raises(DimensionError):
        PVector(3, [0.1, 0.1])


def test_hyperplane_validation():
    with pytest.raises(ValueError):
        Hyperplane(n=3, coeffs=(0, 0, 0), offset=1.0)
