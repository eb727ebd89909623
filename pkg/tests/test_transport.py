"""Tests for ordered exponentials, paths, parallel transport and holonomy."""

import numpy as np
import pytest
from scipy.linalg import expm

from gaugekit.errors import ChartError, ValidationError
from gaugekit.modules.algebra import MatrixLieGroup, mat_exp, su2_basis
from gaugekit.modules.connections import GaugePotential, LinearConnection
from gaugekit.modules.forms import Chart
from gaugekit.modules.transport import (
    HolonomyFit,
    Path,
    TransportOperator,
    composition_check,
    holonomy_curvature_fit,
    holonomy_log_defect,
    holonomy_rectangle,
    oracle_defect,
    parallel_transport_linear,
    parallel_transport_principal,
    picard_bound,
    picard_series,
    rectangle_loop,
    rk4_fundamental,
    time_ordered_exp,
    transport_transition_residual,
    unitarity_defect,
)
from gaugekit.numerics import observed_order


def su2_curve(t: float) -> np.ndarray:
    t1, t2, t3 = su2_basis()
    return 0.5 * (np.cos(t) * t1 + t * t2 + np.sin(t) * t3)


@pytest.fixture
def plane() -> Chart:
    return Chart.cube(2, -1.0, 1.0, name="R2")


@pytest.fixture
def plane_connection(plane) -> LinearConnection:
    t1, t2, t3 = su2_basis()
    return LinearConnection(plane, 2, lambda x: np.array([0.5 * t1 + x[1] * t3, 0.5 * t2 + x[0] ** 2 * t1]), "Γ_plane")


# -- ordered exponentials ------------------------------------------------------------


def test_constant_generator_gives_matrix_exponential():
    K = np.array([[0.0, 1.0], [-2.0, 0.3]])
    np.testing.assert_allclose(time_ordered_exp(lambda t: K, 0.0, 1.5, steps=7), expm(1.5 * K), atol=1e-12)


def test_commuting_generator():
    """For A(t) = f(t) K the ordered exponential is exp(∫f K)."""
    K = su2_basis()[0]
    W = time_ordered_exp(lambda t: np.cos(t) * K, 0.0, 1.0, steps=512)
    np.testing.assert_allclose(W, mat_exp(K, np.sin(1.0)), atol=1e-6)


@pytest.mark.parametrize("sampling,order", [("midpoint", 2.0), ("left", 1.0), ("right", 1.0)])
def test_product_converges_to_rk4(sampling, order):
    oracle = rk4_fundamental(su2_curve, 0.0, 1.0, 4096)
    steps = [32, 64, 128]
    errors = [np.max(np.abs(time_ordered_exp(su2_curve, 0.0, 1.0, n, sampling) - oracle)) for n in steps]
    assert observed_order([1.0 / n for n in steps], errors) == pytest.approx(order, abs=0.2)


def test_linear_factors_converge():
    oracle = rk4_fundamental(su2_curve, 0.0, 1.0, 4096)
    W = time_ordered_exp(su2_curve, 0.0, 1.0, 1024, factor="linear")
    assert np.max(np.abs(W - oracle)) < 1e-3


def test_oracle_defect_is_small():
    assert oracle_defect(su2_curve, 0.0, 1.0, 256) < 1e-6


def test_later_times_act_on_the_left():
    """A piecewise generator K1 then K2 transports to exp(K2/2) exp(K1/2)."""
    K1, K2 = su2_basis()[0], su2_basis()[1]
    A = lambda t: K1 if t < 0.5 else K2  # noqa: E731
    np.testing.assert_allclose(time_ordered_exp(A, 0.0, 1.0, 2), expm(K2 / 2) @ expm(K1 / 2), atol=1e-14)


def test_composition():
    assert composition_check(su2_curve, 0.0, 0.5, 1.0, 256) < 1e-12
    with pytest.raises(ValidationError):
        composition_check(su2_curve, 0.0, 1.0, 0.5)


def test_picard_series_within_bound():
    oracle = rk4_fundamental(su2_curve, 0.0, 1.0, 2048)
    norm = max(np.linalg.norm(su2_curve(t), 2) for t in np.linspace(0.0, 1.0, 101))
    for order in (1, 2, 4):
        W = picard_series(su2_curve, 0.0, 1.0, order)
        assert np.max(np.abs(W - oracle)) <= picard_bound(norm, 1.0, order) + 1e-6
    np.testing.assert_allclose(picard_series(su2_curve, 0.0, 1.0, 0), np.eye(2))


def test_ordered_exponential_validation():
    with pytest.raises(ValidationError):
        time_ordered_exp(su2_curve, 0.0, 1.0, 0)
    with pytest.raises(ValidationError):
        time_ordered_exp(su2_curve, 0.0, 1.0, 8, sampling="random")
    with pytest.raises(ValidationError):
        time_ordered_exp(lambda t: np.ones(3), 0.0, 1.0, 8)
    with pytest.raises(ValidationError):
        rk4_fundamental(su2_curve, 0.0, 1.0, 0)
    with pytest.raises(ValidationError):
        picard_series(su2_curve, 0.0, 1.0, 9)


# -- paths ---------------------------------------------------------------------


def test_polyline_steps_divide_evenly(plane):
    path = Path.polyline(plane, [(0.0, 0.0), (0.5, 0.0), (0.5, 0.5), (0.0, 0.5)], steps=10)
    assert path.steps == 12
    np.testing.assert_allclose(path.point(0.5), [0.5, 0.25])
    np.testing.assert_allclose(path.velocity(0.5), [0.0, 1.5])


def test_polyline_needs_two_points(plane):
    with pytest.raises(ValidationError):
        Path.polyline(plane, [(0.0, 0.0)])


def test_rectangle_loop_is_closed(plane):
    loop = rectangle_loop(plane, (0.1, 0.2), (1.0, 0.0), (0.0, 1.0), 0.3)
    np.testing.assert_allclose(loop.start, loop.end)
    np.testing.assert_allclose(loop.point(0.5), [0.4, 0.5])


def test_path_must_stay_in_chart(plane):
    path = Path.segment(plane, (0.0, 0.0), (2.0, 0.0))
    with pytest.raises(ChartError):
        path.check_inside()


def test_reparameterization_must_fix_endpoints(plane):
    path = Path.segment(plane, (0.0, 0.0), (0.5, 0.5))
    with pytest.raises(ValidationError):
        path.reparameterized(lambda t: 0.5 * t)


def test_concatenation_needs_one_chart(plane):
    other = Chart.cube(2, -2.0, 2.0, name="big")
    with pytest.raises(ValidationError):
        Path.segment(plane, (0.0, 0.0), (0.5, 0.0)).concatenate(Path.segment(other, (0.5, 0.0), (0.5, 0.5)))


# -- parallel transport ------------------------------------------------------------


def test_constant_abelian_transport(plane):
    conn = LinearConnection.constant(plane, [np.array([[0.4]]), np.array([[-1.0]])])
    T = parallel_transport_linear(conn, Path.segment(plane, (-0.5, 0.0), (0.5, 0.3)))
    assert T.matrix[0, 0] == pytest.approx(np.exp(-(0.4 * 1.0 - 1.0 * 0.3)))


def test_su2_transport_is_unitary(plane_connection):
    su2 = MatrixLieGroup.unitary(2, special=True)
    path = Path.polyline(plane_connection.chart, [(-0.5, -0.3), (0.4, -0.1), (0.2, 0.6)])
    T = parallel_transport_principal(GaugePotential.from_connection(plane_connection, su2), path)
    assert T.kind == "principal"
    assert unitarity_defect(T) < 1e-10
    assert T.group_residual() < 1e-10


def test_reversed_path_inverts_transport(plane_connection):
    path = Path.polyline(plane_connection.chart, [(-0.5, -0.3), (0.4, -0.1), (0.2, 0.6)])
    there = parallel_transport_linear(plane_connection, path)
    back = parallel_transport_linear(plane_connection, path.reversed())
    assert (back @ there).distance(np.eye(2)) < 1e-10
    assert back.distance(there.inverse()) < 1e-10


def test_concatenated_path_composes(plane_connection):
    chart = plane_connection.chart
    first = Path.segment(chart, (-0.5, -0.3), (0.4, -0.1), steps=128)
    second = Path.segment(chart, (0.4, -0.1), (0.2, 0.6), steps=128)
    whole = parallel_transport_linear(plane_connection, first.concatenate(second))
    split = parallel_transport_linear(plane_connection, second) @ parallel_transport_linear(plane_connection, first)
    assert whole.distance(split) < 1e-12


def test_transport_is_reparameterization_invariant(plane_connection):
    path = Path.segment(plane_connection.chart, (-0.5, -0.3), (0.4, 0.6), steps=512)
    slow = path.reparameterized(lambda t: t * t, lambda t: 2.0 * t)
    a = parallel_transport_linear(plane_connection, path)
    b = parallel_transport_linear(plane_connection, slow)
    assert a.distance(b) < 1e-4


def test_transport_follows_transition(plane_connection, rng):
    tau = su2_basis()
    c = 0.5 * rng.standard_normal((3, 3))
    g_VU = lambda x: mat_exp(sum((c[a, 0] + c[a, 1] * x[0] + c[a, 2] * x[1] ** 2) * tau[a] for a in range(3)))  # noqa: E731
    path = Path.polyline(plane_connection.chart, [(-0.5, -0.3), (0.4, -0.1), (0.2, 0.6)])
    assert transport_transition_residual(plane_connection, g_VU, path) < 1e-4


def test_transport_dimension_mismatch(plane_connection, r3):
    with pytest.raises(ValidationError):
        parallel_transport_linear(plane_connection, Path.segment(r3, (0.0, 0.0, 0.0), (0.1, 0.0, 0.0)))


def test_transport_operator_must_be_square():
    with pytest.raises(ValidationError):
        TransportOperator(np.ones((2, 3)))
    T = TransportOperator(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(T.apply(np.array([1.0, 2.0])), [2.0, 1.0])
    assert T.group_residual() == 0.0


# -- holonomy --------------------------------------------------------------------------


def test_abelian_holonomy_is_flux(plane):
    """∮ B x dy around an s × s square is B s²."""
    B, s = 0.7, 0.5
    conn = LinearConnection(plane, 1, lambda x: np.array([[[0.0]], [[B * x[0]]]]))
    T = holonomy_rectangle(conn, (0.1, 0.2), (1.0, 0.0), (0.0, 1.0), s, 256)
    assert T.matrix[0, 0] == pytest.approx(np.exp(-B * s**2), abs=1e-8)
    assert holonomy_log_defect(conn, (0.1, 0.2), (1.0, 0.0), (0.0, 1.0), s, 256) < 1e-8


def test_holonomy_matches_curvature_at_third_order(plane_connection):
    fit = holonomy_curvature_fit(plane_connection, (0.1, -0.2), (1.0, 0.0), (0.0, 1.0), 0.2, levels=3)
    assert fit.passed
    assert fit.order >= 2.9
    assert fit.defects[0] > fit.defects[-1]


def test_round_off_holonomy_fit_passes():
    assert HolonomyFit([0.2, 0.1], [1e-15, 2e-15], order=-1.0).passed
    assert not HolonomyFit([0.2, 0.1], [1e-3, 1e-3], order=0.0).passed
