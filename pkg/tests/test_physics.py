"""Tests for Maxwell theory, the monopole, Dirac operators and spinor pairings."""

import logging

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from gaugekit.errors import ChartError, SignatureError, ValidationError
from gaugekit.modules.clifford import PinElement, Signature
from gaugekit.modules.forms import Chart, MetricField, PForm
from gaugekit.modules.physics import (
    EMField,
    SpinorField,
    assemble_F,
    charge_conjugation_matrix,
    charge_conjugation_residual,
    current_form,
    dirac4,
    dirac_rep,
    dirac_residual,
    dirac_square_check,
    euclidean_chart,
    helicity_exchange_residual,
    helicity_projectors,
    helicity_split,
    indefinite_pairing,
    is_quantized,
    maxwell_residuals,
    monopole_checks,
    monopole_fixture,
    null_plane_wave,
    pairing_invariance_residual,
    pauli_dirac,
    plane_wave_field,
    random_spin_matrix,
    self_duality_residual,
    shell_points,
    slash,
    spacetime_chart,
    sw_dirac,
    sw_positive_projector,
    sw_rep,
    sw_residuals,
    sw_sigma,
    uniform_magnetic_field,
)
from gaugekit.modules.physics.monopole import SHELL_RADII
from gaugekit.numerics import observed_order

STEPS = [0.04, 0.02, 0.01]


def _spinor(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


@pytest.fixture
def spacetime() -> Chart:
    return spacetime_chart()


@pytest.fixture
def spacetime_points(spacetime) -> np.ndarray:
    return spacetime.grid(points=3)


# -- Maxwell ----------------------------------------------------------------------


def test_plane_wave_solves_vacuum_equations(spacetime, spacetime_points):
    result = maxwell_residuals(assemble_F(plane_wave_field(spacetime)), points=spacetime_points)
    assert result.dF < 1e-6
    assert result.delta_F < 1e-6
    assert result.delta_j == 0.0


def test_field_strength_components(spacetime):
    em = EMField(spacetime, E=lambda x: np.array([1.0, 2.0, 3.0]), B=lambda x: np.array([4.0, 5.0, 6.0]))
    np.testing.assert_allclose(assemble_F(em)(np.zeros(4)), [-1.0, -2.0, -3.0, 6.0, -5.0, 4.0])


def test_static_sourced_field(spacetime, spacetime_points):
    """E = r/3 and B = (-y/2, x/2, 0) carry ρ = 1 and J = ẑ."""
    static = EMField(
        spacetime,
        E=lambda x: np.asarray(x[1:]) / 3.0,
        B=lambda x: np.array([-0.5 * x[2], 0.5 * x[1], 0.0]),
    )
    F = assemble_F(static)
    j = current_form(spacetime, lambda x: 1.0, lambda x: np.array([0.0, 0.0, 1.0]))
    result = maxwell_residuals(F, j, points=spacetime_points)
    assert result.dF < 1e-6
    assert result.delta_F < 1e-6
    assert result.delta_j < 1e-6

    wrong = current_form(spacetime, lambda x: 2.0, lambda x: np.array([0.0, 0.0, 1.0]))
    assert maxwell_residuals(F, wrong, points=spacetime_points).delta_F > 0.5


def test_maxwell_needs_lorentzian_metric(spacetime):
    F = assemble_F(plane_wave_field(spacetime))
    with pytest.raises(SignatureError):
        maxwell_residuals(F, g=MetricField.euclidean(spacetime))


def test_maxwell_needs_a_two_form(spacetime):
    with pytest.raises(ValidationError):
        maxwell_residuals(PForm.zero(spacetime, 1))


def test_potentials_reproduce_fields(spacetime, spacetime_points):
    assert plane_wave_field(spacetime).potential_residual(spacetime_points) < 1e-8
    assert uniform_magnetic_field(0.8, spacetime).potential_residual(spacetime_points) < 1e-8


def test_fields_from_potentials(spacetime, spacetime_points):
    wave = plane_wave_field(spacetime)
    derived = EMField.from_potentials(spacetime, wave.V, wave.A, name="derived")
    for x in spacetime_points:
        np.testing.assert_allclose(derived.E(x), wave.E(x), atol=1e-6)
        np.testing.assert_allclose(derived.B(x), wave.B(x), atol=1e-6)
    assert derived.potential_residual(spacetime_points) < 1e-12


def test_fields_without_potentials(spacetime):
    em = EMField(spacetime, E=lambda x: np.zeros(3), B=lambda x: np.zeros(3))
    with pytest.raises(ValidationError):
        em.potential_form()
    with pytest.raises(ValidationError):
        em.potential_residual()


def test_em_field_needs_spacetime_chart(r3):
    with pytest.raises(ValidationError):
        EMField(r3, E=lambda x: np.zeros(3), B=lambda x: np.zeros(3))


# -- monopole ---------------------------------------------------------------------


@pytest.mark.parametrize("g", [0.5, 1.0])
def test_quantized_monopole(g):
    report = monopole_checks(monopole_fixture(g))
    assert report.quantized
    assert report.passed
    assert all(c.passed for c in report.checks)
    assert report.flux == pytest.approx(4.0 * np.pi * g, abs=1e-3)


def test_unquantized_monopole_is_an_expected_failure(caplog):
    with caplog.at_level(logging.WARNING, logger="gaugekit.modules.physics.monopole"):
        report = monopole_checks(monopole_fixture(0.3), label="m")
    transition = next(c for c in report.checks if c.name == "m.transition")
    assert not report.quantized
    assert not transition.passed
    assert transition.ok
    assert report.passed
    assert "not quantized" in caplog.text


def test_quantization_condition():
    assert is_quantized(0.5)
    assert is_quantized(-1.5)
    assert not is_quantized(0.3)
    assert monopole_fixture(0.5).single_valuedness_defect() < 1e-12
    assert monopole_fixture(0.25).single_valuedness_defect() > 1.0


def test_monopole_potentials_exclude_their_strings():
    m = monopole_fixture(0.5)
    north, south = np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])
    with pytest.raises(ChartError):
        m.A_s(north)
    with pytest.raises(ChartError):
        m.A_n(south)
    np.testing.assert_allclose(m.A_n(north), 0.0)
    with pytest.raises(ChartError):
        m.A_n(np.zeros(3))


def test_monopole_difference_is_closed():
    m = monopole_fixture(1.0)
    x = np.array([0.6, -0.3, 0.4])
    np.testing.assert_allclose(m.A_n(x) - m.A_s(x), m.difference_form()(x), atol=1e-12)
    with pytest.raises(ChartError):
        m.difference_form()(np.array([0.0, 0.0, 1.0]))


def test_shell_points_are_reproducible():
    pts = shell_points(9, seed=7)
    assert pts.shape == (9, 3)
    np.testing.assert_allclose(sorted(set(np.round(np.linalg.norm(pts, axis=1), 12))), SHELL_RADII)
    np.testing.assert_array_equal(pts, shell_points(9, seed=7))


# -- Dirac operators ------------------------------------------------------------


def test_pauli_operator_squares_to_laplacian(r3):
    psi = SpinorField(
        r3, 2, lambda x: np.array([np.sin(x[0] + 2.0 * x[1]) + 1j * np.cos(x[2]), np.exp(0.5 * x[0]) * np.cos(x[1] - x[2])])
    )
    residuals = [dirac_square_check(psi, r3.grid(points=3), h) for h in STEPS]
    assert observed_order(STEPS, residuals) >= 1.9


def test_pauli_operator_shape_checks(r4):
    with pytest.raises(ValidationError):
        pauli_dirac(SpinorField.zero(r4, 2))


def test_spinor_field_checks_shape(r3):
    psi = SpinorField(r3, 2, lambda x: np.zeros(3))
    with pytest.raises(ValidationError):
        psi(np.zeros(3))


def test_helicity_projectors():
    p_plus, p_minus = helicity_projectors()
    np.testing.assert_allclose(p_plus + p_minus, np.eye(4), atol=1e-14)
    np.testing.assert_allclose(p_plus @ p_plus, p_plus, atol=1e-12)
    np.testing.assert_allclose(p_plus @ p_minus, 0.0, atol=1e-12)
    for gamma in dirac_rep().gammas:
        np.testing.assert_allclose(p_plus @ gamma, gamma @ p_minus, atol=1e-12)


def test_helicity_split_recombines(spacetime, spacetime_points):
    psi = SpinorField(spacetime, 4, lambda x: np.array([1.0, 1j * x[0], x[1] * x[2], np.cos(x[3])]))
    plus, minus = helicity_split(psi)
    p_plus, _ = helicity_projectors()
    for x in spacetime_points:
        np.testing.assert_allclose(plus(x) + minus(x), psi(x), atol=1e-12)
        np.testing.assert_allclose(p_plus @ minus(x), 0.0, atol=1e-12)


def test_coupled_dirac_on_constant_spinor(spacetime):
    """D u = 0, so the residual is (q A̸ - m) u."""
    u = np.array([1.0, 0.5j, -0.25, 2.0])
    a = np.array([0.3, -0.2, 0.1, 0.4])
    psi = SpinorField(spacetime, 4, lambda x: u)
    A_em = PForm.constant(spacetime, 1, a)
    x = np.array([0.1, -0.2, 0.3, 0.0])
    expected = 0.7 * slash(a) @ u - 1.5 * u
    np.testing.assert_allclose(dirac4(psi, 1.5, 0.7, A_em)(x), expected, atol=1e-10)
    with pytest.raises(ValidationError):
        dirac4(psi, 1.5, 0.7, PForm.zero(spacetime, 2))


def test_dirac_operator_exchanges_helicity(spacetime, spacetime_points):
    psi = SpinorField(
        spacetime,
        4,
        lambda x: np.array([np.sin(x[0] + x[1]), 1j * np.cos(x[2]), np.exp(0.3 * x[3]), x[0] * x[1]]),
    )
    assert helicity_exchange_residual(psi, spacetime_points) < 1e-8


@pytest.mark.parametrize("k,m", [((1.25, 0.0, 0.0, 0.75), 1.0), ((1.0, 0.0, 1.0, 0.0), 0.0)])
def test_plane_waves_solve_dirac_equation(spacetime, spacetime_points, k, m):
    psi = null_plane_wave(k, m, spacetime)
    assert dirac_residual(psi, m, points=spacetime_points) < 1e-6
    assert dirac_residual(psi, m + 0.5, points=spacetime_points) > 0.1


def test_plane_wave_needs_mass_shell(spacetime):
    with pytest.raises(ValidationError):
        null_plane_wave((1.0, 0.0, 0.0, 0.0), 2.0, spacetime)


def test_charge_conjugation_matrix():
    C = charge_conjugation_matrix()
    for gamma in dirac_rep().gammas:
        np.testing.assert_allclose(gamma @ C, -C @ np.conj(gamma), atol=1e-12)
    assert abs(np.linalg.det(C)) > 1e-6


def test_charge_conjugate_solves_opposite_charge(spacetime, spacetime_points):
    psi = null_plane_wave((1.25, 0.0, 0.0, 0.75), 1.0, spacetime)
    A_em = plane_wave_field(spacetime).potential_form()
    assert charge_conjugation_residual(psi, 1.0, 1.0, A_em, spacetime_points) < 1e-9


# -- pairings -----------------------------------------------------------------------


def test_indefinite_pairing_is_hermitian_and_indefinite(rng):
    a, b = _spinor(rng, 4), _spinor(rng, 4)
    assert indefinite_pairing(a, b) == pytest.approx(np.conj(indefinite_pairing(b, a)))
    values, vectors = np.linalg.eigh(dirac_rep().gammas[-1])
    assert indefinite_pairing(vectors[:, 0], vectors[:, 0]).real == pytest.approx(values[0])
    assert values[0] < 0 < values[-1]


def test_pairing_is_spin_invariant(rng):
    for _ in range(5):
        a, b = _spinor(rng, 4), _spinor(rng, 4)
        M = random_spin_matrix(rng)
        assert pairing_invariance_residual(M, a, b) < 1e-10 * np.linalg.norm(M) ** 2 * (1 + np.linalg.norm(a) * np.linalg.norm(b))


@pytest.mark.parametrize("axis,scale", [(0, -1.0), (3, 1.0)])
def test_pin_reflections_scale_pairing(rng, axis, scale):
    """A space reflection flips the pairing, a time reflection keeps it."""
    phi = PinElement(Signature(3, 1), (np.eye(4)[axis],))
    a, b = _spinor(rng, 4), _spinor(rng, 4)
    assert pairing_invariance_residual(phi, a, b) < 1e-12
    M = dirac_rep().gammas[axis]
    assert indefinite_pairing(M @ a, M @ b) == pytest.approx(scale * indefinite_pairing(a, b))


# -- Seiberg-Witten --------------------------------------------------------------


def test_sw_sigma_is_imaginary_self_dual_and_frame_independent(rng):
    P = sw_positive_projector()
    for _ in range(5):
        psi = P @ _spinor(rng, 4)
        sigma = sw_sigma(psi)
        assert np.max(np.abs(sigma.real)) < 1e-12
        assert self_duality_residual(sigma) < 1e-12
        R = special_ortho_group.rvs(4, random_state=rng)
        np.testing.assert_allclose(sw_sigma(psi, frame=R), sigma, atol=1e-10)


def test_sw_sigma_is_quadratic_in_the_spinor(rng):
    P = sw_positive_projector()
    for _ in range(5):
        psi = P @ _spinor(rng, 4)
        lam = complex(*rng.standard_normal(2))
        np.testing.assert_allclose(sw_sigma(lam * psi), abs(lam) ** 2 * sw_sigma(psi), rtol=1e-12, atol=1e-14)


def test_sw_sigma_needs_positive_spinor(rng):
    P = sw_positive_projector()
    psi = (np.eye(4) - P) @ _spinor(rng, 4)
    with pytest.raises(ValidationError):
        sw_sigma(psi)


def test_sw_sigma_needs_orthonormal_frame(rng):
    psi = sw_positive_projector() @ _spinor(rng, 4)
    with pytest.raises(ValidationError):
        sw_sigma(psi, frame=2.0 * np.eye(4))


def test_sw_trivial_solution():
    chart = euclidean_chart()
    result = sw_residuals(PForm.zero(chart, 1), SpinorField.zero(chart, 4), chart.grid(points=2))
    assert result.as_tuple() == (0.0, 0.0)


def test_sw_rep_is_euclidean():
    assert sw_rep().signature == Signature(4, 0)
    with pytest.raises(ValidationError):
        sw_residuals(PForm.zero(spacetime_chart(), 2), SpinorField.zero(spacetime_chart(), 4))


def test_sw_dirac_of_constant_spinor(rng):
    """For constant ψ and A, D_A ψ = i Σ A_j γ_j ψ."""
    chart = euclidean_chart()
    u = sw_positive_projector() @ _spinor(rng, 4)
    a = np.array([0.3, -0.1, 0.7, 0.2])
    D = sw_dirac(SpinorField(chart, 4, lambda x: u), PForm.constant(chart, 1, a))
    expected = 1j * sum(a[j] * sw_rep().gammas[j] for j in range(4)) @ u
    np.testing.assert_allclose(D(np.array([0.1, 0.2, -0.3, 0.4])), expected, atol=1e-12)
