"""Named acceptance checks and the runner that turns them into a report.

Each check is a function ``(config, rng) -> list[CheckResult]`` registered
under a short name. ``run`` evaluates the selected checks in name order,
publishes one event per result and collects everything into a ``RunReport``.
Every check draws from its own generator seeded with ``config.seed``, so a
check produces the same rows whether it runs alone or as part of ``all``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.stats import special_ortho_group

from gaugekit.config import settings, tolerance
from gaugekit.errors import GaugeKitError, ValidationError
from gaugekit.events import Event, EventBus, EventType, event_bus
from gaugekit.modules.algebra import (
    MatrixLieGroup,
    bch_defect,
    conjugacy_check,
    coset_action,
    coset_action_equivalence,
    cyclic_group,
    is_free,
    is_transitive,
    jacobi_residual,
    mat_exp,
    natural_action,
    one_parameter_defect,
    orbits,
    regular_action,
    stabilizer,
    su2_basis,
    symmetric_group,
)
from gaugekit.modules.bundles import (
    ChartMap,
    Cover,
    OverlapComponent,
    box_region,
    is_coboundary,
    jacobian_cocycle,
    load_fixture,
    validate_cocycle,
)
from gaugekit.modules.clifford import (
    CliffordElement,
    Signature,
    anticommutes_with_vectors,
    basis_rank,
    commutes_with_vectors,
    constructed_gamma_rep,
    idempotents,
    orthogonality_residual,
    pauli_rep,
    pin_to_orthogonal,
    random_pin,
    sign_defect,
    volume_element,
)
from gaugekit.modules.connections import (
    GaugePotential,
    LinearConnection,
    bianchi_residual,
    bpst_potential,
    christoffel,
    curvature_covariance_check,
    levi_civita,
    metric_compatibility_tensor,
    torsion_residual,
)
from gaugekit.modules.forms import (
    Chart,
    MetricField,
    PForm,
    d_squared_residual,
    delta_squared_residual,
    self_dual_split,
    star_matrix,
)
from gaugekit.modules.physics import (
    EMField,
    SpinorField,
    assemble_F,
    charge_conjugation_residual,
    current_form,
    dirac_residual,
    dirac_square_check,
    euclidean_chart,
    helicity_exchange_residual,
    monopole_checks,
    monopole_fixture,
    null_plane_wave,
    pairing_invariance_residual,
    plane_wave_field,
    random_spin_matrix,
    self_duality_residual,
    spacetime_chart,
    sw_positive_projector,
    sw_rep,
    sw_residuals,
    sw_sigma,
    uniform_magnetic_field,
)
from gaugekit.modules.physics.maxwell import maxwell_residuals
from gaugekit.modules.transport import (
    Path as TransportPath,
    composition_check,
    holonomy_curvature_fit,
    holonomy_rectangle,
    oracle_defect,
    parallel_transport_principal,
    transport_transition_residual,
    unitarity_defect,
)
from gaugekit.modules.transport.holonomy import MIN_HOLONOMY_ORDER
from gaugekit.numerics import max_norm, observed_order, seeded_rng, sweep_max
from gaugekit.reports import FORMATS, CheckResult, RunReport

logger = logging.getLogger(__name__)

COMMANDS = ("check", "monopole", "holonomy")
MODULES = ("algebra", "clifford", "forms", "bundles", "connections", "transport", "physics")
DEFAULT_CHARGES = (0.5, 1.0, 1.5, 0.3)
REFINEMENT_STEPS = (0.04, 0.02, 0.01)
MIN_FD_ORDER = 1.9
BIANCHI_COARSE_STEP = 1e-3


@dataclass
class RunConfig:
    """Everything one invocation needs; ``None`` knobs fall back to config.yaml."""

    command: str = "check"
    target: str = "all"
    fixture: str | None = None
    h: float | None = None
    n: int | None = None
    cells: int | None = None
    tol: float | None = None
    seed: int | None = None
    out: Path | None = None
    format: str | None = None
    workers: int | None = None
    charges: tuple[float, ...] = DEFAULT_CHARGES
    levels: int = 3

    def __post_init__(self) -> None:
        reports_cfg = settings.get("reports", {})
        if self.seed is None:
            self.seed = int(reports_cfg.get("seed", 42))
        if self.format is None:
            self.format = str(reports_cfg.get("format", "csv"))
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.format not in FORMATS:
            raise ValidationError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        for knob in ("h", "n", "cells", "tol", "workers"):
            value = getattr(self, knob)
            if value is not None and not value > 0:
                raise ValidationError(f"--{knob} must be positive, got {value!r}")
        if self.levels < 2:
            raise ValidationError(f"a scale sweep needs at least 2 levels, got {self.levels}")
        if self.command == "check" and self.target != "all" and self.target not in REGISTRY:
            raise ValidationError(f"unknown check {self.target!r}; run 'gaugekit list' for the names")
        if self.fixture is not None:
            load_fixture(self.fixture)

    @property
    def label(self) -> str:
        return f"check {self.target}" if self.command == "check" else self.command

    def selected(self) -> list[str]:
        if self.command != "check":
            return [self.command]
        return sorted(REGISTRY) if self.target == "all" else [self.target]

    def tolerance(self, kind: str) -> float:
        """``--tol`` if given, else the configured tolerance of that kind."""
        return self.tol if self.tol is not None else tolerance(kind)


CheckFn = Callable[[RunConfig, np.random.Generator], list[CheckResult]]


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    description: str
    fn: CheckFn = field(repr=False)


REGISTRY: dict[str, Check] = {}


def register(name: str, module: str, description: str) -> Callable[[CheckFn], CheckFn]:
    if module not in MODULES:
        raise ValueError(f"Unknown module {module!r} for check {name!r}")

    def wrap(fn: CheckFn) -> CheckFn:
        if name in REGISTRY:
            raise ValueError(f"Check {name!r} registered twice")
        REGISTRY[name] = Check(name, module, description, fn)
        return fn

    return wrap


def order_result(name: str, order: float, minimum: float, detail: str = "") -> CheckResult:
    """An observed convergence order as a check: the value is the shortfall below ``minimum``."""
    note = f"observed order {order:.3f}, need >= {minimum:g}"
    return CheckResult(name, max(minimum - order, 0.0), 0.0, f"{note}; {detail}" if detail else note)


def flag_result(name: str, ok: bool, detail: str = "") -> CheckResult:
    """A yes/no property as a check: 0 when it holds, 1 otherwise."""
    return CheckResult(name, 0.0 if ok else 1.0, 0.0, detail)


def run(config: RunConfig, bus: EventBus | None = None) -> RunReport:
    """Evaluate the selected checks and publish their outcomes."""
    bus = bus or event_bus
    names = config.selected()
    report = RunReport(config.label, int(config.seed))
    bus.publish(Event(EventType.RUN_STARTED, {"command": config.label, "checks": names, "seed": config.seed}))

    for name in names:
        check = REGISTRY[name]
        logger.info("Running %s (%s)", name, check.description)
        try:
            results = check.fn(config, seeded_rng(config.seed))
        except GaugeKitError as exc:
            logger.error("Check %s raised: %s", name, exc)
            results = [CheckResult(f"{name}.error", math.inf, 0.0, str(exc))]
        for result in results:
            report.add(result)
            event_type = EventType.for_outcome(result.ok)
            bus.publish(
                Event(
                    event_type,
                    {
                        "check": name,
                        "name": result.name,
                        "value": result.value,
                        "tolerance": result.tolerance,
                        "expect_pass": result.expect_pass,
                        "detail": result.detail,
                    },
                )
            )

    bus.publish(
        Event(
            EventType.RUN_FINISHED,
            {"command": config.label, "passed": report.passed, "failures": [c.name for c in report.failures]},
        )
    )
    logger.info("%s: %d results, %d unexpected", config.label, len(report.checks), len(report.failures))
    return report


# -- shared fixtures ----------------------------------------------------------------


def _wave_form(chart: Chart, degree: int, rng: np.random.Generator) -> PForm:
    """Form whose components are sin(k·x + c) with random k and c."""
    size = math.comb(chart.dim, degree)
    K = rng.standard_normal((size, chart.dim))
    phase = rng.uniform(0.0, 2.0 * np.pi, size)
    return PForm(chart, degree, lambda x: np.sin(K @ x + phase))


def _quadratic(rng: np.random.Generator, dim: int, scale: float = 0.5) -> Callable[[np.ndarray], float]:
    c0 = scale * rng.standard_normal()
    c1 = scale * rng.standard_normal(dim)
    Q = scale * rng.standard_normal((dim, dim))
    return lambda x: c0 + c1 @ x + x @ Q @ x


def _su2_field(rng: np.random.Generator, dim: int) -> Callable[[np.ndarray], np.ndarray]:
    """x ↦ Σ_a p_a(x) τ_a with quadratic p_a."""
    tau = su2_basis()
    coeffs = [_quadratic(rng, dim) for _ in tau]
    return lambda x: sum(p(x) * t for p, t in zip(coeffs, tau))


def _random_su2_potential(chart: Chart, rng: np.random.Generator) -> LinearConnection:
    components = [_su2_field(rng, chart.dim) for _ in range(chart.dim)]
    return LinearConnection(chart, 2, lambda x: np.array([c(x) for c in components]), "A")


def _su2_curve(t: float) -> np.ndarray:
    t1, t2, t3 = su2_basis()
    return 0.5 * (np.cos(t) * t1 + t * t2 + np.sin(t) * t3)


def _plane_su2_connection(chart: Chart) -> LinearConnection:
    t1, t2, t3 = su2_basis()
    return LinearConnection(
        chart, 2, lambda x: np.array([0.5 * t1 + x[1] * t3, 0.5 * t2 + x[0] ** 2 * t1]), "Γ_plane"
    )


def _random_spinor(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


# -- algebra ------------------------------------------------------------------------


@register("groups", "algebra", "finite group actions, stabilizers and coset models")
def check_groups(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    S3, S4 = symmetric_group(3), symmetric_group(4)
    actions = [natural_action(S3), natural_action(S4), regular_action(cyclic_group(5))]
    H = S4.generated_by([1])
    actions.append(coset_action(S4, H))

    orbit_defect = 0
    equivalence_failures = 0
    conjugacy_failures = 0
    for action in actions:
        for block in orbits(action):
            x = next(iter(block))
            orbit_defect = max(orbit_defect, abs(len(block) * len(stabilizer(action, x)) - action.group.order))
            equivalence_failures += not coset_action_equivalence(action, x).ok
            conjugacy_failures += sum(not conjugacy_check(action, x, g) for g in action.group.elements)

    regular = regular_action(S3)
    return [
        CheckResult("groups.orbit_stabilizer", float(orbit_defect), 0.0, "|orbit|·|stabilizer| = |G|"),
        CheckResult("groups.coset_equivalence", float(equivalence_failures), 0.0, "orbits are equivariantly G/K_x"),
        CheckResult("groups.conjugate_stabilizers", float(conjugacy_failures), 0.0, "K_{gx} = g K_x g⁻¹"),
        flag_result("groups.regular_action", is_free(regular) and is_transitive(regular), "left multiplication on S3"),
        flag_result("groups.natural_action", not is_free(actions[0]) and is_transitive(actions[0]), "S3 on 3 points"),
    ]


@register("lie", "algebra", "Jacobi identity, exponentials and BCH order on matrix Lie algebras")
def check_lie(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    groups = [
        MatrixLieGroup.unitary(2, special=True),
        MatrixLieGroup.orthogonal(3, 1),
        MatrixLieGroup.special_linear(3),
    ]
    jacobi = closure = one_param = 0.0
    for group in groups:
        for _ in range(10):
            a, b, c = (group.random_algebra_element(rng, 0.5) for _ in range(3))
            jacobi = max(jacobi, jacobi_residual(a, b, c))
            closure = max(closure, group.group_residual(mat_exp(a)))
            one_param = max(one_param, one_parameter_defect(a, 0.3, -0.7))

    su2 = groups[0]
    a, b = su2.random_algebra_element(rng), su2.random_algebra_element(rng)
    scales = [0.1, 0.05, 0.025]
    defects = [bch_defect(t * a, t * b) for t in scales]
    return [
        CheckResult("lie.jacobi", jacobi, config.tolerance("algebraic"), "su(2), so(3,1), sl(3)"),
        CheckResult("lie.exp_closure", closure, config.tolerance("geometric"), "exp maps the algebra into the group"),
        CheckResult("lie.one_parameter", one_param, config.tolerance("geometric"), "exp(sL)exp(tL) = exp((s+t)L)"),
        order_result("lie.bch_order", observed_order(scales, defects), 3.5, "third-order BCH truncation"),
    ]


# -- clifford -----------------------------------------------------------------------


def _signatures_up_to(n_max: int) -> list[Signature]:
    return [Signature(r, n - r) for n in range(1, n_max + 1) for r in range(n + 1)]


def _blade(sig: Signature, mask: int) -> CliffordElement:
    c = np.zeros(sig.dim, dtype=complex)
    c[mask] = 1.0
    return CliffordElement(sig, c)


@register("clifford", "clifford", "associativity, Clifford relations and dimension for every n <= 4")
def check_clifford(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    assoc = relations = dimension = 0.0
    for sig in _signatures_up_to(4):
        blades = [_blade(sig, m) for m in range(sig.dim)]
        for a in blades:
            for b in blades:
                ab = a * b
                for c in blades:
                    assoc = max(assoc, (ab * c).distance(a * (b * c)))
        gens = [CliffordElement.generator(sig, k) for k in range(sig.n)]
        for i, ei in enumerate(gens):
            for j, ej in enumerate(gens):
                target = CliffordElement.scalar(sig, -2.0 * sig.eta[i] if i == j else 0.0)
                relations = max(relations, (ei * ej + ej * ei).distance(target))
        dimension = max(dimension, float(abs(basis_rank(sig) - sig.dim)))
    tol = config.tolerance("algebraic")
    return [
        CheckResult("clifford.associativity", assoc, tol, "all blade triples"),
        CheckResult("clifford.relations", relations, tol, "e_i e_j + e_j e_i = -2 η_ij"),
        CheckResult("clifford.dimension", dimension, 0.0, "span of generator products has dimension 2^n"),
    ]


@register("volume", "clifford", "volume element, idempotents and centrality")
def check_volume(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    square = idem = center = 0.0
    for sig in (Signature(0, 1), Signature(2, 0), Signature(3, 0), Signature(3, 1), Signature(0, 3)):
        omega = volume_element(sig)
        one = CliffordElement.scalar(sig)
        square = max(square, (omega * omega).distance(one))
        p_plus, p_minus = idempotents(sig)
        zero = CliffordElement.scalar(sig, 0.0)
        idem = max(
            idem,
            (p_plus * p_plus).distance(p_plus),
            (p_minus * p_minus).distance(p_minus),
            (p_plus * p_minus).distance(zero),
            (p_minus * p_plus).distance(zero),
            (p_plus + p_minus).distance(one),
        )
        central = commutes_with_vectors(omega) if sig.n % 2 else anticommutes_with_vectors(omega)
        center = max(center, 0.0 if central else 1.0)
    tol = config.tolerance("algebraic")
    return [
        CheckResult("volume.square", square, tol, "ω² = 1"),
        CheckResult("volume.idempotents", idem, tol, "p±² = p±, p₊p₋ = 0, p₊ + p₋ = 1"),
        CheckResult("volume.center", center, 0.0, "ω commutes with V for odd n, anticommutes for even n"),
    ]


@register("double-cover", "clifford", "Pin(2,0) and Pin(3,0) cover O(n) two to one")
def check_double_cover(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    results = []
    for sig in (Signature(2, 0), Signature(3, 0)):
        sign = ortho = 0.0
        for k in range(50):
            phi = random_pin(sig, 1 + k % 4, rng)
            M = pin_to_orthogonal(phi)
            sign = max(sign, sign_defect(phi))
            ortho = max(ortho, orthogonality_residual(M, sig))
        tol = config.tolerance("geometric")
        tag = f"{sig.r}{sig.s}"
        results.append(CheckResult(f"double-cover.sign.{tag}", sign, tol, f"φ and -φ agree, {sig}"))
        results.append(CheckResult(f"double-cover.orthogonal.{tag}", ortho, tol, f"M η Mᵀ = η, {sig}"))
    return results


@register("reps", "clifford", "Pauli and constructed gamma representations")
def check_reps(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    pauli = pauli_rep()
    s1, s2, s3 = pauli.gammas
    reps = [pauli] + [constructed_gamma_rep(Signature(r, s)) for r, s in ((2, 0), (3, 1), (1, 3), (4, 0), (0, 3))]
    relations = max(rep.relations_residual() for rep in reps)
    unfaithful = [str(rep.signature) for rep in reps if rep.signature.n % 2 == 0 and not rep.is_faithful()]
    tol = config.tolerance("algebraic")
    return [
        CheckResult("reps.relations", relations, tol, "γ_i γ_j + γ_j γ_i + 2β_ij = 0"),
        CheckResult("reps.pauli_product", max_norm(s1 @ s2 - 1j * s3), tol, "σ¹σ² = iσ³"),
        flag_result("reps.faithful", not unfaithful, ", ".join(unfaithful) or "even-dimensional reps are faithful"),
    ]


# -- forms --------------------------------------------------------------------------


@register("exterior", "forms", "d² and δ² vanish at second order under step refinement")
def check_exterior(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    chart = Chart.cube(3, -1.0, 1.0, name="R3")
    points = chart.grid(points=3)
    g = MetricField.euclidean(chart)
    one_form, two_form = _wave_form(chart, 1, rng), _wave_form(chart, 2, rng)
    steps = list(REFINEMENT_STEPS)
    d2 = [d_squared_residual(one_form, h, points) for h in steps]
    delta2 = [delta_squared_residual(two_form, g, h, points) for h in steps]
    return [
        order_result("exterior.d_squared_order", observed_order(steps, d2), MIN_FD_ORDER, f"residual {d2[-1]:.3e}"),
        order_result(
            "exterior.delta_squared_order", observed_order(steps, delta2), MIN_FD_ORDER, f"residual {delta2[-1]:.3e}"
        ),
    ]


@register("hodge", "forms", "double star signs and self-dual splitting")
def check_hodge(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    double_star = 0.0
    for sig in (Signature(3, 0), Signature(1, 3), Signature(4, 0)):
        n = sig.n
        P = np.eye(n) + 0.3 * rng.standard_normal((n, n))
        for G in (sig.eta_matrix, P.T @ sig.eta_matrix @ P):
            for p in range(n + 1):
                sign = (-1) ** (sig.s + p * (n - p))
                twice = star_matrix(G, n - p) @ star_matrix(G, p)
                double_star = max(double_star, max_norm(twice - sign * np.eye(math.comb(n, p))))

    chart = euclidean_chart()
    g = MetricField.euclidean(chart)
    star = star_matrix(np.eye(4), 2)
    origin = np.zeros(4)
    split = 0.0
    for _ in range(5):
        a = PForm.constant(chart, 2, rng.standard_normal(6))
        plus, minus = self_dual_split(a, g)
        split = max(
            split,
            max_norm(star @ plus(origin) - plus(origin)),
            max_norm(star @ minus(origin) + minus(origin)),
            max_norm(plus(origin) + minus(origin) - a(origin)),
        )
    tol = config.tolerance("geometric")
    return [
        CheckResult("hodge.double_star", double_star, tol, "**ψ = (-1)^(s + p(n-p)) ψ for (3,0), (1,3), (4,0)"),
        CheckResult("hodge.self_dual", split, tol, "*a± = ±a± in (4,0)"),
    ]


# -- bundles ------------------------------------------------------------------------


def _polar_cover() -> tuple[Cover, dict[str, ChartMap]]:
    samples = np.array([[0.5, 0.1], [0.8, -0.4], [1.2, 0.7], [0.6, 0.9]])
    region = box_region(np.array([0.2, -1.5]), np.array([2.0, 1.5]))
    charts = ("cartesian", "polar", "shifted")
    overlaps = {
        (a, b): (OverlapComponent("right", samples, region),)
        for i, a in enumerate(charts)
        for b in charts[i + 1 :]
    }
    offset = np.array([1.0, 0.5])
    maps = {
        "cartesian": ChartMap(lambda p: np.asarray(p, dtype=float), lambda u: np.asarray(u, dtype=float)),
        "polar": ChartMap(
            lambda p: np.array([np.hypot(p[0], p[1]), np.arctan2(p[1], p[0])]),
            lambda u: np.array([u[0] * np.cos(u[1]), u[0] * np.sin(u[1])]),
        ),
        "shifted": ChartMap(lambda p: np.asarray(p, dtype=float) - offset, lambda u: np.asarray(u) + offset),
    }
    return Cover(charts, overlaps), maps


@register("cocycles", "bundles", "cocycle conditions and (non-)triviality of the shipped fixtures")
def check_cocycles(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    results = []
    for name in ("z2_double_cover", "z2_constant", "moebius", "spin_circle"):
        report = validate_cocycle(load_fixture(name).cocycle)
        results.append(CheckResult(f"cocycles.{name}.valid", report.residual, report.tolerance, f"{report.samples} samples"))

    double_cover = is_coboundary(load_fixture("z2_double_cover").cocycle)
    constant = is_coboundary(load_fixture("z2_constant").cocycle)
    results.append(
        flag_result("cocycles.z2_double_cover.nontrivial", not double_cover.found, f"{double_cover.tried} cochains tried")
    )
    results.append(flag_result("cocycles.z2_constant.trivial", constant.found, f"{constant.tried} cochains tried"))

    if config.fixture is not None:
        fixture = load_fixture(config.fixture)
        report = validate_cocycle(fixture.cocycle)
        results.append(CheckResult(f"cocycles.fixture.{fixture.name}", report.residual, report.tolerance, fixture.description))
    return results


@register("jacobian", "bundles", "chain-rule cocycle of Cartesian, polar and shifted coordinates")
def check_jacobian(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    cover, maps = _polar_cover()
    report = validate_cocycle(jacobian_cocycle(cover, maps), tol=config.tolerance("finite_difference"))
    return [CheckResult("jacobian.polar", report.residual, report.tolerance, f"{report.samples} samples")]


# -- connections --------------------------------------------------------------------


@register("levi-civita", "connections", "Christoffel symbols of the round sphere")
def check_levi_civita(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    h = config.h or 1e-4
    chart = Chart((0.4, -1.0), (2.7, 1.0), h=h, name="S2")
    g = MetricField.round_sphere(chart)
    frame = lambda x: np.diag([1.0, 1.0 / np.sin(x[0])])  # noqa: E731
    points = chart.grid(points=4)

    def symbols(x: np.ndarray) -> float:
        G = christoffel(g, x, h)
        th = x[0]
        return max(abs(G[1, 0, 1] + np.sin(th) * np.cos(th)), abs(G[0, 1, 1] - np.cos(th) / np.sin(th)))

    conn = levi_civita(g, h=h)
    nbein = levi_civita(g, frame, h=h)
    fd = config.tolerance("finite_difference")
    return [
        CheckResult("levi-civita.symbols", sweep_max(symbols, points), fd, "Γ^θ_φφ = -sinθcosθ, Γ^φ_θφ = cotθ"),
        CheckResult("levi-civita.torsion", torsion_residual(conn, points), config.tolerance("geometric")),
        CheckResult("levi-civita.compatibility", metric_compatibility_tensor(conn, g, points), fd, f"h = {h:g}"),
        CheckResult("levi-civita.nbein", sweep_max(lambda x: max_norm(nbein(x) - conn(x)), points), fd, "orthonormal frame agrees"),
    ]


@register("gauge-covariance", "connections", "F(A^φ) = φ F(A) φ⁻¹ on random su(2) fixtures")
def check_gauge_covariance(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    h = config.h or 1e-4
    chart = Chart.cube(3, -1.0, 1.0, h=h, name="R3")
    worst = 0.0
    for _ in range(50):
        A = _random_su2_potential(chart, rng)
        theta = _su2_field(rng, 3)
        phi = lambda x, theta=theta: mat_exp(theta(x))  # noqa: E731
        points = rng.uniform(-0.6, 0.6, (4, 3))
        worst = max(worst, curvature_covariance_check(A, phi, points, h))
    return [CheckResult("gauge-covariance.curvature", worst, config.tol or 1e-5, f"50 fixtures, h = {h:g}")]


@register("bianchi", "connections", "d_A F = 0 for the instanton, with h-refinement")
def check_bianchi(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    A = bpst_potential()
    points = A.chart.grid(points=3)
    tol = config.tolerance("loose")
    reported = sorted({BIANCHI_COARSE_STEP, config.h or 1e-4}, reverse=True)
    results = [
        CheckResult(f"bianchi.residual.h={h:g}", bianchi_residual(A, points, h), tol, f"h = {h:g}") for h in reported
    ]
    steps = [0.08, 0.04, 0.02]
    ladder = [bianchi_residual(A, points, s) for s in steps]
    table = ", ".join(f"{s:g}: {r:.3e}" for s, r in zip(steps, ladder))
    results.append(order_result("bianchi.order", observed_order(steps, ladder), MIN_FD_ORDER, table))
    return results


# -- transport ----------------------------------------------------------------------


@register("transport", "transport", "ordered exponentials against RK4, composition and transition laws")
def check_transport(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    n = config.n or int(settings.get("transport", {}).get("steps", 256))
    fd = config.tolerance("finite_difference")

    chart = Chart.cube(2, -1.0, 1.0, name="R2")
    conn = _plane_su2_connection(chart)
    path = TransportPath.polyline(chart, [(-0.5, -0.3), (0.4, -0.1), (0.2, 0.6)], steps=n)
    T = parallel_transport_principal(GaugePotential.from_connection(conn, MatrixLieGroup.unitary(2, special=True)), path)
    theta = _su2_field(rng, 2)
    g_VU = lambda x: mat_exp(theta(x))  # noqa: E731
    return [
        CheckResult("transport.rk4", oracle_defect(_su2_curve, 0.0, 1.0, n), fd, f"N = {n}"),
        CheckResult("transport.composition", composition_check(_su2_curve, 0.0, 0.5, 1.0, n), fd),
        CheckResult("transport.unitary", unitarity_defect(T), config.tolerance("geometric"), "su(2) transport is unitary"),
        CheckResult(
            "transport.transition",
            transport_transition_residual(conn, g_VU, path),
            config.tolerance("loose"),
            "T_V = g(x₁) T_U g(x₀)⁻¹",
        ),
    ]


@register("holonomy", "transport", "rectangle holonomy: exact abelian flux and third-order curvature fit")
def check_holonomy(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    n = config.n or int(settings.get("transport", {}).get("steps", 256))
    chart = Chart.cube(2, -1.0, 1.0, name="R2")
    B, s = 0.7, 0.5
    abelian = LinearConnection(chart, 1, lambda x: np.array([[[0.0]], [[B * x[0]]]]), "B x dy")
    T = holonomy_rectangle(abelian, (0.1, 0.2), (1.0, 0.0), (0.0, 1.0), s, n)
    exact = np.exp(-B * s**2)

    fit = holonomy_curvature_fit(
        _plane_su2_connection(chart), (0.1, -0.2), (1.0, 0.0), (0.0, 1.0), 0.2, config.levels, n
    )
    table = ", ".join(f"{sc:g}: {d:.3e}" for sc, d in zip(fit.scales, fit.defects))
    return [
        CheckResult("holonomy.abelian", abs(T.matrix[0, 0] - exact), 1e-8, f"exp(-B s²) = {exact:.12f}"),
        order_result("holonomy.order", fit.order, MIN_HOLONOMY_ORDER - 0.1, table),
    ]


# -- physics ------------------------------------------------------------------------


@register("maxwell", "physics", "Maxwell equations for the plane wave and a static sourced field")
def check_maxwell(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    fd = config.tolerance("finite_difference")
    chart = spacetime_chart()
    points = chart.grid(points=3)

    wave = plane_wave_field(chart)
    vacuum = maxwell_residuals(assemble_F(wave), points=points)

    static = EMField(
        chart,
        E=lambda x: np.asarray(x[1:]) / 3.0,
        B=lambda x: np.array([-0.5 * x[2], 0.5 * x[1], 0.0]),
        name="static",
    )
    j = current_form(chart, lambda x: 1.0, lambda x: np.array([0.0, 0.0, 1.0]))
    sourced = maxwell_residuals(assemble_F(static), j, points=points)

    potentials = max(
        wave.potential_residual(points),
        uniform_magnetic_field(0.8, chart).potential_residual(points),
    )
    return [
        CheckResult("maxwell.plane_wave.dF", vacuum.dF, fd),
        CheckResult("maxwell.plane_wave.delta_F", vacuum.delta_F, fd),
        CheckResult("maxwell.source.delta_F", sourced.delta_F, fd, "ρ = 1, J = (0, 0, 1)"),
        CheckResult("maxwell.source.continuity", sourced.delta_j, fd, "δj = 0"),
        CheckResult("maxwell.potentials", potentials, fd, "E = -∇V - ∂A/∂t, B = ∇×A"),
    ]


@register("monopole", "physics", "two-chart monopole: curvature, transition law and flux quantization")
def check_monopole(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    results = []
    for g in config.charges:
        report = monopole_checks(monopole_fixture(g), cells=config.cells, tol=config.tol, label=f"monopole.g{g:g}")
        results.extend(report.checks)
    return results


@register("dirac", "physics", "Pauli D² = Δ, Weyl exchange, plane waves and charge conjugation")
def check_dirac(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    r3 = Chart.cube(3, -1.0, 1.0, name="R3")
    psi2 = SpinorField(
        r3, 2, lambda x: np.array([np.sin(x[0] + 2.0 * x[1]) + 1j * np.cos(x[2]), np.exp(0.5 * x[0]) * np.cos(x[1] - x[2])])
    )
    steps = list(REFINEMENT_STEPS)
    square = [dirac_square_check(psi2, r3.grid(points=3), h) for h in steps]

    chart = spacetime_chart()
    points = chart.grid(points=3)
    psi4 = SpinorField(
        chart,
        4,
        lambda x: np.array([np.sin(x[0] + x[1]), 1j * np.cos(x[2]), np.exp(0.3 * x[3]), x[0] * x[1]]),
    )
    massive = null_plane_wave((1.25, 0.0, 0.0, 0.75), 1.0, chart)
    massless = null_plane_wave((1.0, 0.0, 1.0, 0.0), 0.0, chart)
    plane = max(dirac_residual(massive, 1.0, points=points), dirac_residual(massless, 0.0, points=points))
    A_em = plane_wave_field(chart).potential_form()
    conjugation = charge_conjugation_residual(massive, 1.0, 1.0, A_em, points)
    return [
        order_result("dirac.square_order", observed_order(steps, square), MIN_FD_ORDER, f"residual {square[-1]:.3e}"),
        CheckResult("dirac.helicity_exchange", helicity_exchange_residual(psi4, points), 1e-8, "D maps S± into S∓"),
        CheckResult("dirac.plane_wave", plane, config.tolerance("finite_difference"), "k·k = m², m ∈ {0, 1}"),
        CheckResult("dirac.charge_conjugation", conjugation, config.tolerance("geometric"), "Cψ̄ solves the q → -q equation"),
    ]


@register("seiberg-witten", "physics", "σ(ψ) is imaginary, self-dual and frame independent")
def check_seiberg_witten(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    rep = sw_rep()
    P = sw_positive_projector(rep)
    imaginary = self_dual = frame = 0.0
    for _ in range(20):
        psi = P @ _random_spinor(rng, rep.dim)
        sigma = sw_sigma(psi, rep=rep)
        R = special_ortho_group.rvs(4, random_state=rng)
        imaginary = max(imaginary, max_norm(sigma.real))
        self_dual = max(self_dual, self_duality_residual(sigma))
        frame = max(frame, max_norm(sw_sigma(psi, frame=R, rep=rep) - sigma))

    chart = euclidean_chart()
    zero = sw_residuals(PForm.zero(chart, 1), SpinorField.zero(chart, 4), chart.grid(points=2))
    tol = config.tol or 1e-9
    return [
        CheckResult("seiberg-witten.imaginary", imaginary, tol, "20 random spinors in S⁺"),
        CheckResult("seiberg-witten.self_dual", self_dual, tol),
        CheckResult("seiberg-witten.frame", frame, tol, "random SO(4) frames"),
        CheckResult("seiberg-witten.zero", max(zero.as_tuple()), 0.0, "(A, ψ) = (0, 0) solves exactly"),
    ]


@register("pairing", "physics", "the indefinite spinor pairing under Spin(3,1) and Pin(3,1)")
def check_pairing(config: RunConfig, rng: np.random.Generator) -> list[CheckResult]:
    spin = pin = 0.0
    sig = Signature(3, 1)
    for k in range(20):
        a, b = _random_spinor(rng, 4), _random_spinor(rng, 4)
        scale = 1.0 + np.linalg.norm(a) * np.linalg.norm(b)
        M = random_spin_matrix(rng)
        spin = max(spin, pairing_invariance_residual(M, a, b) / (scale * np.linalg.norm(M) ** 2))
        phi = random_pin(sig, 1 + k % 4, rng)
        weight = float(np.prod([np.linalg.norm(v) ** 2 for v in phi.factors]))
        pin = max(pin, pairing_invariance_residual(phi, a, b) / (scale * weight))
    tol = config.tolerance("geometric")
    return [
        CheckResult("pairing.spin", spin, tol, "relative to |M|²|a||b|"),
        CheckResult("pairing.pin", pin, tol, "λ = Π(-q(v_i)); relative to Π|v_i|² |a||b|"),
    ]
