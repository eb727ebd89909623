"""Tests for charts, exterior calculus, the Hodge star and quadrature."""

import itertools
import math

import numpy as np
import pytest

from gaugekit.errors import ChartError, DegreeError, SignatureError, SingularError, ValidationError
from gaugekit.modules.clifford import Signature
from gaugekit.modules.forms import (
    Chart,
    MetricField,
    PForm,
    codifferential,
    compound_matrix,
    d_squared_residual,
    delta_squared_residual,
    ext_d,
    hodge_laplacian,
    hodge_star,
    inner_product,
    integrate_nform,
    lower_index,
    pullback,
    raise_index,
    self_dual_split,
    sphere_flux,
    star_matrix,
    volume_form,
    wedge,
)
from gaugekit.numerics import observed_order

STEPS = [0.04, 0.02, 0.01]


def _wave(chart: Chart, degree: int, rng: np.random.Generator) -> PForm:
    size = math.comb(chart.dim, degree)
    K = rng.standard_normal((size, chart.dim))
    phase = rng.uniform(0.0, 2.0 * np.pi, size)
    return PForm(chart, degree, lambda x: np.sin(K @ x + phase))


def test_chart_rejects_coarse_step():
    with pytest.raises(ValidationError):
        Chart.cube(2, 0.0, 1.0, h=0.1)


def test_chart_rejects_points_outside():
    chart = Chart.cube(2)
    with pytest.raises(ChartError):
        chart.require(np.array([1.5, 0.0]))


def test_chart_grid_stays_inside(r3):
    pts = r3.grid(points=3)
    assert pts.shape == (27, 3)
    assert all(r3.contains(x) for x in pts)


def test_metric_rejects_degenerate(r3):
    g = MetricField.constant(r3, np.diag([1.0, 1.0, 1.0]))
    bad = MetricField(r3, lambda x: np.diag([1.0, 1.0, 0.0]), Signature(3, 0))
    assert g.volume_density(np.zeros(3)) == pytest.approx(1.0)
    with pytest.raises(SingularError):
        bad(np.zeros(3))


def test_metric_signature_is_checked(r4):
    g = MetricField(r4, lambda x: np.diag([1.0, -1.0, -1.0, -1.0]), Signature(4, 0))
    with pytest.raises(SignatureError):
        g.check_samples(r4.grid(points=1))


def test_wedge_determinant_convention(r3):
    dx = PForm.constant(r3, 1, np.array([1.0, 0.0, 0.0]))
    dy = PForm.constant(r3, 1, np.array([0.0, 1.0, 0.0]))
    dxdy = wedge(dx, dy)
    x = np.zeros(3)
    e1, e2 = np.eye(3)[0], np.eye(3)[1]
    assert dxdy.on_vectors(x, [e1, e2]) == pytest.approx(1.0)
    assert dxdy.on_vectors(x, [e2, e1]) == pytest.approx(-1.0)
    np.testing.assert_allclose(wedge(dx, dx)(x), 0.0)


def test_wedge_graded_commutativity(r3, rng):
    a = PForm.constant(r3, 1, rng.standard_normal(3))
    b = PForm.constant(r3, 1, rng.standard_normal(3))
    c = PForm.constant(r3, 2, rng.standard_normal(3))
    x = np.zeros(3)
    np.testing.assert_allclose(wedge(a, b)(x), -wedge(b, a)(x), atol=1e-14)
    np.testing.assert_allclose(wedge(a, c)(x), wedge(c, a)(x), atol=1e-14)


def test_wedge_overflow(r3):
    two = PForm.zero(r3, 2)
    with pytest.raises(DegreeError):
        wedge(two, two)


def test_ext_d_of_x_dy(r3):
    """d(x dy) = dx∧dy."""
    a = PForm.from_components(r3, 1, {(1,): lambda x: x[0]})
    np.testing.assert_allclose(ext_d(a)(np.array([0.2, -0.3, 0.1])), [1.0, 0.0, 0.0], atol=1e-9)


def test_ext_d_of_top_form_is_rejected(r3):
    with pytest.raises(DegreeError):
        ext_d(PForm.zero(r3, 3))


@pytest.mark.parametrize("degree", [0, 1])
def test_d_squared_converges_at_second_order(r3, rng, degree):
    a = _wave(r3, degree, rng)
    points = r3.grid(points=3)
    residuals = [d_squared_residual(a, h, points) for h in STEPS]
    assert observed_order(STEPS, residuals) >= 1.9


def test_delta_squared_converges_at_second_order(r3, euclidean3, rng):
    a = _wave(r3, 2, rng)
    points = r3.grid(points=3)
    residuals = [delta_squared_residual(a, euclidean3, h, points) for h in STEPS]
    assert observed_order(STEPS, residuals) >= 1.9


def test_delta_squared_needs_degree_two(r3, euclidean3):
    with pytest.raises(DegreeError):
        delta_squared_residual(PForm.zero(r3, 1), euclidean3, 0.01)


@pytest.mark.parametrize("r,s", [(3, 0), (1, 3), (4, 0)])
def test_double_star_sign(r, s, rng):
    """**ψ = (-1)^(s + p(n-p)) ψ, for diagonal and congruent metrics."""
    sig = Signature(r, s)
    n = sig.n
    P = np.eye(n) + 0.3 * rng.standard_normal((n, n))
    for G in (sig.eta_matrix, P.T @ sig.eta_matrix @ P):
        for p in range(n + 1):
            twice = star_matrix(G, n - p) @ star_matrix(G, p)
            expected = (-1) ** (s + p * (n - p)) * np.eye(math.comb(n, p))
            np.testing.assert_allclose(twice, expected, atol=1e-10)


@pytest.mark.parametrize("r,s", [(3, 0), (1, 3), (4, 0)])
def test_star_ignores_gram_schmidt_order(r, s, rng):
    sig = Signature(r, s)
    n = sig.n
    P = np.eye(n) + 0.3 * rng.standard_normal((n, n))
    G = P.T @ sig.eta_matrix @ P
    for p in range(n + 1):
        reference = star_matrix(G, p)
        for order in itertools.permutations(range(n)):
            np.testing.assert_allclose(star_matrix(G, p, order=order), reference, atol=1e-10)


def test_star_order_must_be_a_permutation():
    with pytest.raises(ValidationError):
        star_matrix(np.eye(3), 1, order=(0, 0, 2))


def test_star_characterisation(r3, rng):
    """a ∧ *b = ⟨a, b⟩ Ω for a non-diagonal metric."""
    P = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
    g = MetricField.constant(r3, P.T @ P)
    a = PForm.constant(r3, 1, rng.standard_normal(3))
    b = PForm.constant(r3, 1, rng.standard_normal(3))
    x = np.zeros(3)
    lhs = wedge(a, hodge_star(b, g))(x)[0]
    rhs = float(inner_product(a, b, g, x)) * volume_form(g)(x)[0]
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_self_dual_split_in_four_euclidean(r4, rng):
    g = MetricField.euclidean(r4)
    a = PForm.constant(r4, 2, rng.standard_normal(6))
    plus, minus = self_dual_split(a, g)
    x = np.zeros(4)
    np.testing.assert_allclose(hodge_star(plus, g)(x), plus(x), atol=1e-12)
    np.testing.assert_allclose(hodge_star(minus, g)(x), -minus(x), atol=1e-12)
    np.testing.assert_allclose(plus(x) + minus(x), a(x), atol=1e-12)


def test_self_dual_split_needs_real_eigenvalues(r4, minkowski):
    with pytest.raises(SignatureError):
        self_dual_split(PForm.zero(r4, 2), minkowski)


def test_codifferential_of_function_is_rejected(r3, euclidean3):
    with pytest.raises(DegreeError):
        codifferential(PForm.function(r3, lambda x: x[0]), euclidean3)


def test_codifferential_is_minus_divergence(r3, euclidean3):
    """In Euclidean ℝ³, δ(v_i dx^i) = -div v."""
    a = PForm(r3, 1, lambda x: np.array([x[0] ** 2, x[0] * x[1], np.sin(x[2])]))
    x = np.array([0.3, -0.2, 0.4])
    div = 2 * x[0] + x[0] + np.cos(x[2])
    assert codifferential(a, euclidean3)(x)[0] == pytest.approx(-div, abs=1e-6)


def test_integrate_area_form():
    chart = Chart.cube(2, -1.0, 1.0)
    area = PForm.constant(chart, 2, np.array([1.0]))
    assert integrate_nform(area, cells=8).value == pytest.approx(4.0)


def test_integrate_rejects_lower_degree(r3):
    with pytest.raises(DegreeError):
        integrate_nform(PForm.zero(r3, 2))


def test_compound_matrix(rng):
    A, B = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
    np.testing.assert_allclose(compound_matrix(A, 0), [[1.0]])
    np.testing.assert_allclose(compound_matrix(A, 1), A)
    np.testing.assert_allclose(compound_matrix(A, 3), [[np.linalg.det(A)]])
    np.testing.assert_allclose(compound_matrix(A @ B, 2), compound_matrix(A, 2) @ compound_matrix(B, 2), atol=1e-12)
    assert compound_matrix(rng.standard_normal((4, 2)), 2).shape == (6, 1)


def test_pullback_polar_area():
    """Polar coordinates pull dx∧dy back to r dr∧dθ."""
    plane = Chart.cube(2, -2.0, 2.0)
    polar = Chart((0.5, 0.0), (1.5, 1.0), name="polar")
    area = PForm.constant(plane, 2, np.array([1.0]))
    pulled = pullback(area, lambda u: np.array([u[0] * np.cos(u[1]), u[0] * np.sin(u[1])]), polar)
    u = np.array([1.2, 0.4])
    assert pulled(u)[0] == pytest.approx(1.2, abs=1e-8)


def test_sphere_flux_of_point_charge():
    chart = Chart.cube(3, -2.0, 2.0, name="R3")

    def field(x):
        r3 = np.linalg.norm(x) ** 3
        return np.array([x[2], -x[1], x[0]]) / r3

    flux = sphere_flux(PForm(chart, 2, field), radius=1.0, cells=64).value
    assert flux == pytest.approx(4.0 * np.pi, rel=5e-4)


def test_hodge_laplacian_of_function(r3, euclidean3):
    """δd f = -Δf in Euclidean ℝ³."""
    f = PForm.function(r3, lambda x: x[0] ** 2 + x[1] * x[2] + 0.5 * x[2] ** 2)
    assert hodge_laplacian(f, euclidean3, h=1e-3)(np.array([0.2, -0.1, 0.3]))[0] == pytest.approx(-3.0, abs=1e-6)


def test_raise_index_in_minkowski(r4, minkowski):
    dt = PForm.constant(r4, 1, np.array([1.0, 0.0, 0.0, 0.0]))
    dx = PForm.constant(r4, 1, np.array([0.0, 1.0, 0.0, 0.0]))
    x = np.zeros(4)
    np.testing.assert_allclose(raise_index(dt, minkowski)(x), [1.0, 0.0, 0.0, 0.0])
    np.testing.assert_allclose(raise_index(dx, minkowski)(x), [0.0, -1.0, 0.0, 0.0])


def test_lower_undoes_raise(r3, rng):
    M = rng.standard_normal((3, 3))
    g = MetricField.constant(r3, M @ M.T + 3.0 * np.eye(3))
    alpha = PForm.constant(r3, 1, rng.standard_normal(3))
    v = rng.standard_normal(3)
    x = np.array([0.1, 0.2, -0.3])
    raised = raise_index(alpha, g)
    np.testing.assert_allclose(lower_index(raised, g)(x), alpha(x), atol=1e-12)
    assert g(x) @ raised(x) @ v == pytest.approx(alpha(x) @ v)
    with pytest.raises(DegreeError):
        raise_index(PForm.zero(r3, 2), g)
