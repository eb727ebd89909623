"""Tests for covers, transition cocycles, fixtures and derived bundles."""

import itertools
import json

import numpy as np
import pytest

from gaugekit.errors import ChartError, FixtureNotFoundError, UnsupportedError, ValidationError
from gaugekit.modules.algebra import MatrixLieGroup, mat_exp
from gaugekit.modules.bundles import (
    ChartMap,
    Cochain,
    Cocycle,
    ConnectionBundleGroupElement,
    Cover,
    GroupKind,
    OverlapComponent,
    apply_gauge_cochain,
    are_equivalent,
    box_region,
    cbg_act,
    cbg_distance,
    cbg_identity,
    cbg_inverse,
    cbg_mul,
    density_cocycle,
    dual_cocycle,
    exterior_power_cocycle,
    fixture_names,
    is_coboundary,
    jacobian_cocycle,
    load_fixture,
    piecewise_constant,
    section_transition,
    tensor_cocycle,
    validate_cocycle,
)
from gaugekit.modules.bundles.fixtures import FIXTURE_DIR


def _rotation(t: float) -> np.ndarray:
    return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])


def _triangle(last_angle: float) -> Cocycle:
    """Three charts sharing one sample point, rotations around the loop."""
    comp = OverlapComponent("W", np.array([[0.0]]))
    cover = Cover(("a", "b", "c"), {("a", "b"): (comp,), ("b", "c"): (comp,), ("a", "c"): (comp,)})
    transitions = {
        ("a", "b"): lambda x: _rotation(0.3),
        ("b", "c"): lambda x: _rotation(0.4),
        ("c", "a"): lambda x: _rotation(last_angle),
    }
    return Cocycle(cover, GroupKind.MATRIX, transitions, dim=2, name="triangle")


@pytest.fixture
def polar_jacobian() -> Cocycle:
    samples = np.array([[0.5, 0.1], [0.8, -0.4], [1.2, 0.7], [1.0, 1.0]])
    region = box_region(np.array([0.2, -1.5]), np.array([2.0, 1.5]))
    cover = Cover(("cartesian", "polar"), {("cartesian", "polar"): (OverlapComponent("right", samples, region),)})
    maps = {
        "cartesian": ChartMap(lambda p: np.asarray(p, dtype=float), lambda u: np.asarray(u, dtype=float)),
        "polar": ChartMap(
            lambda p: np.array([np.hypot(p[0], p[1]), np.arctan2(p[1], p[0])]),
            lambda u: np.array([u[0] * np.cos(u[1]), u[0] * np.sin(u[1])]),
        ),
    }
    return jacobian_cocycle(cover, maps)


# -- covers --------------------------------------------------------------------


def test_cover_mirrors_overlaps():
    comp = OverlapComponent("W", np.array([[0.0]]))
    cover = Cover(("a", "b"), {("a", "b"): (comp,)})
    assert cover.overlap("b", "a") == (comp,)
    assert cover.in_overlap("b", "a", np.array([0.0]))
    assert not cover.in_overlap("a", "b", np.array([0.5]))


def test_cover_rejects_self_overlap():
    comp = OverlapComponent("W", np.array([[0.0]]))
    with pytest.raises(ValidationError):
        Cover(("a", "b"), {("a", "a"): (comp,)})


def test_cover_rejects_unknown_chart():
    comp = OverlapComponent("W", np.array([[0.0]]))
    with pytest.raises(ValidationError):
        Cover(("a", "b"), {("a", "z"): (comp,)})


def test_cover_rejects_mismatched_mirror():
    with pytest.raises(ValidationError):
        Cover(
            ("a", "b"),
            {
                ("a", "b"): (OverlapComponent("W", np.array([[0.0]])),),
                ("b", "a"): (OverlapComponent("W", np.array([[1.0]])),),
            },
        )


def test_component_needs_samples():
    with pytest.raises(ValidationError):
        OverlapComponent("W", np.empty((0, 1)))


# -- fixtures and cocycle validation -------------------------------------------


def test_shipped_fixtures():
    assert fixture_names() == ["identity", "moebius", "spin_circle", "z2_constant", "z2_double_cover"]


@pytest.mark.parametrize("name", ["identity", "moebius", "spin_circle", "z2_constant", "z2_double_cover"])
def test_shipped_fixtures_are_cocycles(name):
    report = validate_cocycle(load_fixture(name).cocycle)
    assert report.passed
    assert report.samples == 16


def test_double_cover_is_not_a_coboundary():
    result = is_coboundary(load_fixture("z2_double_cover").cocycle)
    assert not result.found
    assert result.tried == 4


def test_constant_cocycle_is_a_coboundary():
    c = load_fixture("z2_constant").cocycle
    result = is_coboundary(c)
    assert result.found
    g = result.witness
    assert g.values["U1"] != g.values["U2"]


def test_identity_fixture_is_trivial():
    assert is_coboundary(load_fixture("identity").cocycle).found


def test_gauge_transformed_cocycle_is_equivalent():
    c = load_fixture("z2_double_cover").cocycle
    flip = c.group.index(-1)
    c2 = apply_gauge_cochain(c, Cochain(c.cover, GroupKind.FINITE, {"U1": flip, "U2": c.group.identity}))
    assert validate_cocycle(c2).passed
    assert c2.value("U1", "U2", np.array([3.0])) == flip
    assert are_equivalent(c, c2).found
    assert not is_coboundary(c2).found


def test_equivalence_is_an_equivalence_relation():
    """Every gauge transform of the double cover and of the trivial cocycle, compared pairwise."""
    c = load_fixture("z2_double_cover").cocycle
    trivial = c.with_transitions({pair: (lambda x: c.group.identity) for pair in c.transitions}, name="1")
    family = []
    for label, base in (("twisted", c), ("trivial", trivial)):
        for choice in itertools.product(c.group.elements, repeat=len(c.cover.charts)):
            phi = Cochain(c.cover, GroupKind.FINITE, dict(zip(c.cover.charts, choice)))
            family.append((label, apply_gauge_cochain(base, phi)))

    for (label_a, a), (label_b, b) in itertools.product(family, repeat=2):
        assert are_equivalent(a, b).found == (label_a == label_b)


def test_coboundary_search_needs_finite_group():
    with pytest.raises(UnsupportedError):
        is_coboundary(load_fixture("spin_circle").cocycle)


def test_value_outside_overlap():
    c = load_fixture("moebius").cocycle
    with pytest.raises(ChartError):
        c.value("U1", "U2", np.array([1.0]))


def test_moebius_flips_across_second_component():
    fixture = load_fixture("moebius")
    c = fixture.cocycle
    assert c.group.label(c.value("U1", "U2", np.array([3.0]))) == 1
    assert c.group.label(c.value("U2", "U1", np.array([0.1]))) == -1
    assert fixture.fiber["kind"] == "interval"


def test_triangle_cocycle_condition():
    assert validate_cocycle(_triangle(-0.7)).passed
    broken = validate_cocycle(_triangle(-0.6))
    assert not broken.passed
    assert broken.cocycle_residual > 0.05
    assert broken.inverse_residual < 1e-12


def test_validate_rejects_samples_outside_overlap():
    c = _triangle(-0.7)
    with pytest.raises(ChartError):
        validate_cocycle(c, samples={("a", "b"): np.array([[1.0]])})


def test_piecewise_constant_needs_every_component():
    cover = load_fixture("identity").cocycle.cover
    with pytest.raises(ValidationError):
        piecewise_constant(cover, "U1", "U2", {"W1": 0})


def test_unknown_fixture():
    with pytest.raises(FixtureNotFoundError):
        load_fixture("klein_bottle")


def test_fixture_from_path(tmp_path):
    data = json.loads((FIXTURE_DIR / "moebius.json").read_text())
    data["name"] = "copy"
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(data))
    assert load_fixture(path).name == "copy"


def test_fixture_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValidationError):
        load_fixture(bad)
    partial = tmp_path / "partial.json"
    partial.write_text(json.dumps({"name": "partial", "charts": ["U1"]}))
    with pytest.raises(ValidationError):
        load_fixture(partial)


# -- Jacobian and derived cocycles -----------------------------------------------


def test_jacobian_cocycle_is_valid(polar_jacobian):
    assert validate_cocycle(polar_jacobian, tol=1e-6).passed


def test_jacobian_of_polar_coordinates(polar_jacobian):
    p = np.array([1.0, 1.0])
    expected = np.array([[1.0, 1.0], [-0.5 * np.sqrt(2.0), 0.5 * np.sqrt(2.0)]]) / np.sqrt(2.0)
    np.testing.assert_allclose(polar_jacobian.value("polar", "cartesian", p), expected, atol=1e-7)


def test_tangent_vectors_transform_with_jacobian(polar_jacobian):
    """The radial field ∂_x + ∂_y at (1, 1) is √2 ∂_r in polar components."""
    to_polar = section_transition(lambda p: np.array([1.0, 1.0]), polar_jacobian, "cartesian", "polar")
    np.testing.assert_allclose(to_polar(np.array([1.0, 1.0])), [np.sqrt(2.0), 0.0], atol=1e-7)


def test_derived_cocycles_are_valid(polar_jacobian):
    for derived in (
        dual_cocycle(polar_jacobian),
        tensor_cocycle(polar_jacobian, polar_jacobian),
        exterior_power_cocycle(polar_jacobian, 2),
        density_cocycle(polar_jacobian, 1.0),
    ):
        assert validate_cocycle(derived, tol=1e-6).passed


def test_top_exterior_power_is_the_determinant(polar_jacobian):
    """det ∂(r, θ)/∂(x, y) = 1/r."""
    p = np.array([0.8, -0.4])
    top = exterior_power_cocycle(polar_jacobian, 2)
    assert top.dim == 1
    assert top.value("polar", "cartesian", p)[0, 0] == pytest.approx(1.0 / np.hypot(*p), abs=1e-7)


def test_exterior_power_range(polar_jacobian):
    with pytest.raises(ValidationError):
        exterior_power_cocycle(polar_jacobian, 3)


def test_derived_cocycles_need_matrices():
    with pytest.raises(ValidationError):
        dual_cocycle(load_fixture("moebius").cocycle)


def test_section_transition_on_moebius_fiber():
    c = load_fixture("moebius").cocycle
    flip = lambda g, s: c.group.label(g) * s  # noqa: E731
    to_u1 = section_transition(lambda x: 0.5, c, "U2", "U1", action=flip)
    assert to_u1(np.array([3.0])) == 0.5
    assert to_u1(np.array([6.1])) == -0.5
    with pytest.raises(ValidationError):
        section_transition(lambda x: 0.5, c, "U2", "U1")


# -- connection-bundle group -----------------------------------------------------


def _cbg_element(rng: np.random.Generator) -> ConnectionBundleGroupElement:
    su2 = MatrixLieGroup.unitary(2, special=True)
    J = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
    g = mat_exp(su2.random_algebra_element(rng))
    L = np.stack([su2.random_algebra_element(rng) for _ in range(3)])
    return ConnectionBundleGroupElement(J, g, L)


def test_cbg_group_laws(rng):
    a, b, c = (_cbg_element(rng) for _ in range(3))
    e = cbg_identity(3, 2)
    assert cbg_distance(cbg_mul(e, a), a) < 1e-12
    assert cbg_distance(cbg_mul(a, cbg_inverse(a)), e) < 1e-10
    assert cbg_distance(cbg_mul(cbg_mul(a, b), c), cbg_mul(a, cbg_mul(b, c))) < 1e-10


def test_cbg_is_a_left_action(rng):
    su2 = MatrixLieGroup.unitary(2, special=True)
    a, b = _cbg_element(rng), _cbg_element(rng)
    K = np.stack([su2.random_algebra_element(rng) for _ in range(3)])
    np.testing.assert_allclose(cbg_act(cbg_mul(a, b), K), cbg_act(a, cbg_act(b, K)), atol=1e-10)
    np.testing.assert_allclose(cbg_act(cbg_identity(3, 2), K), K, atol=1e-14)


def test_cbg_shape_checks():
    with pytest.raises(ValidationError):
        ConnectionBundleGroupElement(np.eye(2), np.eye(2), np.zeros((3, 2, 2)))
