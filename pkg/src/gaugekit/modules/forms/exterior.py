"""Scalar- and vector-valued p-forms, the wedge product and the exterior derivative.

A p-form stores its components over strictly increasing index tuples in
lexicographic order, so ``a(x)`` has shape ``(C(n, p), *value_shape)``.

The wedge uses the determinant convention: (dx^1 ∧ dx^2)(∂_1, ∂_2) = 1, with
no 1/p! normalisation.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

import numpy as np

from gaugekit.errors import DegreeError, ValidationError
from gaugekit.modules.forms.charts import Chart
from gaugekit.numerics import max_norm, sweep_max

logger = logging.getLogger(__name__)

FormField = Callable[[np.ndarray], np.ndarray]
ValueProduct = Callable[[np.ndarray, np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def basis(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(n), p))


@lru_cache(maxsize=None)
def positions(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {idx: k for k, idx in enumerate(basis(n, p))}


def permutation_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def wedge_table(n: int, p: int, q: int) -> tuple[tuple[int, int, int, int], ...]:
    """Entries (result index, left index, right index, sign) of dx^I ∧ dx^J."""
    out_pos = positions(n, p + q)
    table = []
    for i, I in enumerate(basis(n, p)):
        for j, J in enumerate(basis(n, q)):
            if set(I) & set(J):
                continue
            K = tuple(sorted(I + J))
            table.append((out_pos[K], i, j, permutation_sign(I + J)))
    return tuple(table)


@lru_cache(maxsize=None)
def derivative_table(n: int, p: int) -> tuple[tuple[int, int, int, int], ...]:
    """Entries (result index, coordinate, source index, sign) with (da)_K = Σ_m (-1)^m ∂_{k_m} a_{K∖k_m}."""
    src_pos = positions(n, p)
    table = []
    for k, K in enumerate(basis(n, p + 1)):
        for m, coord in enumerate(K):
            rest = K[:m] + K[m + 1 :]
            table.append((k, coord, src_pos[rest], -1 if m % 2 else 1))
    return tuple(table)


def compound_matrix(M: np.ndarray, p: int) -> np.ndarray:
    """p-th compound: entry [I, J] = det(M[I, J]) over increasing index tuples."""
    M = np.asarray(M)
    rows, cols = M.shape
    if p == 0:
        return np.ones((1, 1), dtype=M.dtype)
    out = np.empty((comb(rows, p), comb(cols, p)), dtype=np.result_type(M, float))
    for a, I in enumerate(basis(rows, p)):
        for b, J in enumerate(basis(cols, p)):
            out[a, b] = np.linalg.det(M[np.ix_(I, J)])
    return out


@dataclass(frozen=True, eq=False)
class PForm:
    chart: Chart
    degree: int
    field: FormField
    value_shape: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= self.chart.dim:
            raise DegreeError(f"degree {self.degree} out of range for a {self.chart.dim}-dimensional chart")
        object.__setattr__(self, "value_shape", tuple(self.value_shape))

    @property
    def n(self) -> int:
        return self.chart.dim

    @property
    def size(self) -> int:
        return comb(self.n, self.degree)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.size, *self.value_shape)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = self.chart.require(x)
        val = np.asarray(self.field(x))
        if val.shape != self.shape:
            raise ValidationError(f"form field returned shape {val.shape}, expected {self.shape}")
        return val

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_components(
        cls,
        chart: Chart,
        degree: int,
        components: dict[tuple[int, ...], Callable[[np.ndarray], object]],
        value_shape: tuple[int, ...] = (),
    ) -> PForm:
        """Form from ``{increasing index tuple: component field}``; missing components vanish."""
        pos = positions(chart.dim, degree)
        for idx in components:
            if idx not in pos:
                raise ValidationError(f"{idx} is not an increasing {degree}-tuple in dimension {chart.dim}")
        items = [(pos[idx], f) for idx, f in components.items()]
        shape = (comb(chart.dim, degree), *value_shape)

        def field(x: np.ndarray) -> np.ndarray:
            out = np.zeros(shape, dtype=complex)
            for k, f in items:
                out[k] = f(x)
            return _demote(out)

        return cls(chart, degree, field, value_shape)

    @classmethod
    def constant(cls, chart: Chart, degree: int, values: np.ndarray) -> PForm:
        values = np.asarray(values)
        size = comb(chart.dim, degree)
        if values.shape[:1] != (size,):
            raise ValidationError(f"constant {degree}-form needs {size} components, got {values.shape}")
        return cls(chart, degree, lambda x: values, values.shape[1:])

    @classmethod
    def zero(cls, chart: Chart, degree: int, value_shape: tuple[int, ...] = ()) -> PForm:
        return cls.constant(chart, degree, np.zeros((comb(chart.dim, degree), *value_shape)))

    @classmethod
    def function(cls, chart: Chart, f: Callable[[np.ndarray], object], value_shape: tuple[int, ...] = ()) -> PForm:
        """0-form from a (possibly vector- or matrix-valued) function."""
        return cls(chart, 0, lambda x: np.asarray(f(x))[np.newaxis, ...], value_shape)

    # -- algebra ------------------------------------------------------------

    def _compatible(self, other: PForm) -> None:
        if other.chart != self.chart or other.degree != self.degree or other.value_shape != self.value_shape:
            raise ValidationError(
                f"cannot combine a {self.degree}-form {self.value_shape} with a {other.degree}-form {other.value_shape}"
            )

    def __add__(self, other: PForm) -> PForm:
        self._compatible(other)
        return PForm(self.chart, self.degree, lambda x: self.field(x) + other.field(x), self.value_shape)

    def __sub__(self, other: PForm) -> PForm:
        self._compatible(other)
        return PForm(self.chart, self.degree, lambda x: self.field(x) - other.field(x), self.value_shape)

    def __neg__(self) -> PForm:
        return PForm(self.chart, self.degree, lambda x: -self.field(x), self.value_shape)

    def __mul__(self, c: complex) -> PForm:
        return PForm(self.chart, self.degree, lambda x: c * self.field(x), self.value_shape)

    __rmul__ = __mul__

    def map_values(self, fn: Callable[[np.ndarray], np.ndarray], value_shape: tuple[int, ...]) -> PForm:
        """Apply ``fn`` to every component value (e.g. a trace)."""
        return PForm(
            self.chart,
            self.degree,
            lambda x: np.array([fn(v) for v in self.field(x)]).reshape((self.size, *value_shape)),
            value_shape,
        )

    def component(self, idx: tuple[int, ...]) -> Callable[[np.ndarray], np.ndarray]:
        k = positions(self.n, self.degree)[idx]
        return lambda x: self(x)[k]

    def on_vectors(self, x: np.ndarray, vectors: Sequence[np.ndarray]) -> np.ndarray:
        """a(v_1, ..., v_p) = Σ_I a_I det(V[I, :])."""
        if len(vectors) != self.degree:
            raise DegreeError(f"a {self.degree}-form takes {self.degree} vectors, got {len(vectors)}")
        V = np.column_stack([np.asarray(v) for v in vectors]) if vectors else np.zeros((self.n, 0))
        weights = compound_matrix(V, self.degree)[:, 0]
        return np.tensordot(weights, self(x), axes=(0, 0))


def _demote(arr: np.ndarray) -> np.ndarray:
    """Drop a zero imaginary part so real data stays real."""
    if np.iscomplexobj(arr) and not np.any(arr.imag):
        return arr.real
    return arr


def _default_product(a_shape: tuple[int, ...], b_shape: tuple[int, ...]) -> tuple[ValueProduct, tuple[int, ...]]:
    if not a_shape or not b_shape:
        return np.multiply, np.broadcast_shapes(a_shape, b_shape)
    if len(a_shape) == 2 and len(b_shape) in (1, 2) and a_shape[1] == b_shape[0]:
        return np.matmul, (a_shape[0], *b_shape[1:])
    raise ValidationError(f"no default product for values of shape {a_shape} and {b_shape}")


def wedge(a: PForm, b: PForm, product: ValueProduct | None = None) -> PForm:
    """a ∧ b. Matrix-valued forms multiply their values as matrices."""
    if a.chart != b.chart:
        raise ValidationError("wedge needs forms on the same chart")
    n, p, q = a.n, a.degree, b.degree
    if p + q > n:
        raise DegreeError(f"wedge of degrees {p} and {q} overflows dimension {n}")
    default, shape = _default_product(a.value_shape, b.value_shape)
    mult = product or default
    table = wedge_table(n, p, q)
    size = comb(n, p + q)

    def field(x: np.ndarray) -> np.ndarray:
        av, bv = a(x), b(x)
        out = np.zeros((size, *shape), dtype=np.result_type(av, bv))
        for k, i, j, sign in table:
            out[k] += sign * mult(av[i], bv[j])
        return out

    return PForm(a.chart, p + q, field, shape)


def ext_d(a: PForm, h: float | None = None) -> PForm:
    """Exterior derivative from central differences of the components."""
    n, p = a.n, a.degree
    if p >= n:
        raise DegreeError(f"d of a {p}-form on a {n}-dimensional chart has no room")
    step = a.chart.h if h is None else h
    table = derivative_table(n, p)
    size = comb(n, p + 1)

    def field(x: np.ndarray) -> np.ndarray:
        partials = []
        for i in range(n):
            e = np.zeros(n)
            e[i] = step
            partials.append((a(x + e) - a(x - e)) / (2.0 * step))
        out = np.zeros((size, *a.value_shape), dtype=partials[0].dtype)
        for k, coord, src, sign in table:
            out[k] += sign * partials[coord][src]
        return out

    return PForm(a.chart, p + 1, field, a.value_shape)


def d_squared_residual(a: PForm, h: float, points: np.ndarray | None = None, ratio: float = 2.0) -> float:
    """max |d(d a)| with the outer difference at ``ratio · h``.

    Central differences with equal steps commute exactly; unequal steps leave
    the O(h²) remainder that step refinement resolves.
    """
    dda = ext_d(ext_d(a, h), ratio * h)
    pts = a.chart.grid() if points is None else points
    return sweep_max(lambda x: max_norm(dda(x)), pts)
