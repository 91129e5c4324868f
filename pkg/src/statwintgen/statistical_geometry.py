"""Dualistic structures on coordinate charts.

A chart carries a metric field g_ij(x) and a pair of torsion-free connection
coefficient fields Gamma^k_ij(x), Gamma*^k_ij(x).  The pair is *dualistic*
when Z g(X,Y) = g(nabla_Z X, Y) + g(X, nabla*_Z Y); the module computes the
Levi-Civita reference connection, curvature tensors of all three connections,
the difference tensor K = nabla - nabla0, and residuals of every structural
identity so that a chart can be certified (or rejected) numerically.

Index conventions, fixed package-wide:
  gamma[k, i, j]      coefficient of d_k in nabla_{d_i} d_j  (symmetric in i,j)
  metric_partial[a, i, j]      d_a g_ij
  gamma_partial[a, k, i, j]    d_a Gamma^k_ij
  curvature R[l, k, i, j]      component on d_l of R(d_i, d_j) d_k, with
                               R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
                               (coordinate frames, so no bracket term)
Sectional-type contractions use K(X,Y) = g(R(X,Y)Y,X) / (|X|^2|Y|^2 - g(X,Y)^2).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping

import numpy as np

from .tensor_core import DEFAULT_FD_STEP

Array = np.ndarray
MatrixField = Callable[[Array], Array]

WHICH_CONNECTIONS = ("nabla", "nabla_star", "levi_civita")


@dataclass(frozen=True)
class DualisticChart:
    """Coordinate chart with metric and dual connection coefficient fields.

    Analytic first-derivative providers are optional; when absent, central
    differences with ``fd_step`` are used.  All fields must be pure functions.
    """

    dim: int
    metric: MatrixField
    gamma: MatrixField
    gamma_star: MatrixField
    metric_partial: MatrixField | None = None
    gamma_partial: MatrixField | None = None
    gamma_star_partial: MatrixField | None = None
    fd_step: float = DEFAULT_FD_STEP
    label: str = "chart"

    def without_analytic(self) -> "DualisticChart":
        """Copy of the chart with analytic derivative providers stripped.

        Forces every derivative onto the finite-difference path.
        """
        return replace(
            self, metric_partial=None, gamma_partial=None, gamma_star_partial=None
        )


@dataclass(frozen=True)
class CurvatureTensor:
    """Curvature components R[l, k, i, j] at a point (see module docstring)."""

    components: Array

    def vector(self, X: Array, Y: Array, Z: Array) -> Array:
        """Components of R(X,Y)Z."""
        return np.einsum("lkij,k,i,j->l", self.components, Z, X, Y)

    def scalar(self, g: Array, X: Array, Y: Array, Z: Array, W: Array) -> float:
        """g(R(X,Y)Z, W)."""
        return float(self.vector(X, Y, Z) @ g @ W)


@dataclass(frozen=True)
class ResidualRecord:
    """Named absolute residuals of structural identities at one sample point."""

    values: Mapping[str, float]

    def __getitem__(self, key: str) -> float:
        return self.values[key]

    def worst(self) -> float:
        return max(self.values.values()) if self.values else 0.0

    def as_dict(self) -> dict[str, float]:
        return dict(self.values)


def _tensor_field_partials(fn: MatrixField, x: Array, step: float) -> Array:
    """Central differences of an array-valued field along every axis."""
    x = np.asarray(x, dtype=float)
    slices = []
    for a in range(x.size):
        hi = x.copy()
        lo = x.copy()
        hi[a] += step
        lo[a] -= step
        slices.append((np.asarray(fn(hi), dtype=float) - np.asarray(fn(lo), dtype=float)) / (2.0 * step))
    return np.stack(slices, axis=0)


def metric_partials(chart: DualisticChart, point: Array) -> Array:
    if chart.metric_partial is not None:
        return np.asarray(chart.metric_partial(point), dtype=float)
    return _tensor_field_partials(chart.metric, np.asarray(point, dtype=float), chart.fd_step)


def levi_civita(chart: DualisticChart, point: Array) -> Array:
    """Christoffel symbols of the metric, Gamma0[k,i,j], from g and dg."""
    x = np.asarray(point, dtype=float)
    g = np.asarray(chart.metric(x), dtype=float)
    dg = metric_partials(chart, x)
    try:
        g_inv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"singular metric at {x.tolist()} on {chart.label}") from exc
    # lowered[l,i,j] = d_i g_lj + d_j g_li - d_l g_ij
    lowered = np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg
    return 0.5 * np.einsum("kl,lij->kij", g_inv, lowered)


def _gamma_field(chart: DualisticChart, which: str):
    """(field, analytic-partial-or-None) for the requested connection."""
    if which == "nabla":
        return chart.gamma, chart.gamma_partial
    if which == "nabla_star":
        return chart.gamma_star, chart.gamma_star_partial
    if which == "levi_civita":
        return (lambda x: levi_civita(chart, x)), None
    raise ValueError(f"unknown connection {which!r}; expected one of {WHICH_CONNECTIONS}")


def connection_at(chart: DualisticChart, which: str, point: Array) -> Array:
    fn, _ = _gamma_field(chart, which)
    return np.asarray(fn(np.asarray(point, dtype=float)), dtype=float)


def curvature_from_gamma(gamma: Array, dgamma: Array) -> Array:
    """Assemble R[l,k,i,j] from Gamma and its coordinate derivatives."""
    term_d = np.einsum("iljk->lkij", dgamma) - np.einsum("jlik->lkij", dgamma)
    term_q = np.einsum("lim,mjk->lkij", gamma, gamma) - np.einsum("ljm,mik->lkij", gamma, gamma)
    return term_d + term_q


def curvature(chart: DualisticChart, which: str, point: Array) -> CurvatureTensor:
    """Curvature tensor of nabla, nabla* or the Levi-Civita connection."""
    x = np.asarray(point, dtype=float)
    fn, analytic = _gamma_field(chart, which)
    gamma = np.asarray(fn(x), dtype=float)
    if analytic is not None:
        dgamma = np.asarray(analytic(x), dtype=float)
    else:
        step = chart.fd_step
        if which == "levi_civita" and chart.metric_partial is None:
            # The Christoffel field is itself finite-differenced here; a
            # coarser outer step balances truncation against the propagated
            # rounding noise of the inner differences.
            step = chart.fd_step * 20.0
        dgamma = _tensor_field_partials(fn, x, step)
    return CurvatureTensor(curvature_from_gamma(gamma, dgamma))


def difference_tensor(chart: DualisticChart, point: Array) -> Array:
    """K[k,i,j] = Gamma^k_ij - Gamma0^k_ij at the point."""
    return connection_at(chart, "nabla", point) - levi_civita(chart, point)


def kk_bracket(k: Array) -> Array:
    """[K,K][l,k,i,j], the curvature-like square K_X K_Y Z - K_Y K_X Z."""
    return np.einsum("lim,mjk->lkij", k, k) - np.einsum("ljm,mik->lkij", k, k)


def nabla_g_residual(chart: DualisticChart, gamma: Array, point: Array) -> float:
    """max |(nabla g)_{a;ij}| for the connection with coefficients ``gamma``."""
    x = np.asarray(point, dtype=float)
    g = np.asarray(chart.metric(x), dtype=float)
    dg = metric_partials(chart, x)
    cov = dg - np.einsum("mai,mj->aij", gamma, g) - np.einsum("maj,im->aij", gamma, g)
    return float(np.max(np.abs(cov)))


def sectional_curvature(chart: DualisticChart, which: str, point: Array, X: Array, Y: Array) -> float:
    """g(R(X,Y)Y,X) normalized by the Gram determinant of the plane."""
    x = np.asarray(point, dtype=float)
    g = np.asarray(chart.metric(x), dtype=float)
    R = curvature(chart, which, x)
    num = R.scalar(g, X, Y, Y, X)
    gram = (X @ g @ X) * (Y @ g @ Y) - (X @ g @ Y) ** 2
    if abs(gram) < 1e-12:
        raise ValueError("probe vectors are (numerically) linearly dependent")
    return num / gram


def axiom_residuals(
    chart: DualisticChart,
    point: Array,
    X: Array,
    Y: Array,
    Z: Array,
    W: Array,
) -> ResidualRecord:
    """Residuals of the dualistic-structure axioms with constant-frame probes.

    duality         |Z g(X,Y) - g(nabla_Z X, Y) - g(X, nabla*_Z Y)|
    codazzi         |(nabla_X g)(Y,Z) - (nabla_Y g)(X,Z)|
    k_symmetry      max-norm of K_X Y - K_Y X
    k_self_adjoint  |g(K_X Y, Z) - g(Y, K_X Z)|
    conjugate       |g(R(X,Y)Z, W) + g(Z, R*(X,Y)W)|
    curvature_sum   componentwise max of R + R* - 2 R0 - 2 [K,K]
    """
    x = np.asarray(point, dtype=float)
    X, Y, Z, W = (np.asarray(v, dtype=float) for v in (X, Y, Z, W))
    g = np.asarray(chart.metric(x), dtype=float)
    dg = metric_partials(chart, x)
    gam = connection_at(chart, "nabla", x)
    gam_star = connection_at(chart, "nabla_star", x)
    gam0 = levi_civita(chart, x)

    def nabla_vec(gamma: Array, A: Array, B: Array) -> Array:
        # covariant derivative of the constant field B along A
        return np.einsum("kab,a,b->k", gamma, A, B)

    def inner(u: Array, v: Array) -> float:
        return float(u @ g @ v)

    dir_g = np.einsum("aij,a->ij", dg, Z)
    duality = abs(float(X @ dir_g @ Y) - inner(nabla_vec(gam, Z, X), Y) - inner(X, nabla_vec(gam_star, Z, Y)))

    def nabla_g(A: Array, B: Array, C: Array) -> float:
        d = float(B @ np.einsum("aij,a->ij", dg, A) @ C)
        return d - inner(nabla_vec(gam, A, B), C) - inner(B, nabla_vec(gam, A, C))

    codazzi = abs(nabla_g(X, Y, Z) - nabla_g(Y, X, Z))

    k = gam - gam0
    k_sym = float(np.max(np.abs(np.einsum("kij,i,j->k", k, X, Y) - np.einsum("kij,i,j->k", k, Y, X))))
    k_self = abs(inner(np.einsum("kij,i,j->k", k, X, Y), Z) - inner(Y, np.einsum("kij,i,j->k", k, X, Z)))

    R = curvature(chart, "nabla", x)
    R_star = curvature(chart, "nabla_star", x)
    R0 = curvature(chart, "levi_civita", x)
    conjugate = abs(R.scalar(g, X, Y, Z, W) + R_star.scalar(g, X, Y, W, Z))

    total = R.components + R_star.components - 2.0 * R0.components - 2.0 * kk_bracket(k)
    curvature_sum = float(np.max(np.abs(total)))

    return ResidualRecord(
        {
            "duality": duality,
            "codazzi": codazzi,
            "k_symmetry": k_sym,
            "k_self_adjoint": k_self,
            "conjugate": conjugate,
            "curvature_sum": curvature_sum,
        }
    )


def check_almost_complex(g: Array, J: Array, tol: float = 1e-9) -> float:
    """Residual of J^2 = -Id and g(J.,J.) = g; raises when above ``tol``."""
    g = np.asarray(g, dtype=float)
    J = np.asarray(J, dtype=float)
    res = max(
        float(np.max(np.abs(J @ J + np.eye(J.shape[0])))),
        float(np.max(np.abs(J.T @ g @ J - g))),
    )
    if res > tol:
        raise ValueError(f"not an almost complex compatible pair (residual {res:.3e})")
    return res


def holomorphic_space_form_curvature(
    c: float,
    g: Array,
    J: Array,
    X: Array,
    Y: Array,
    Z: Array,
    tol: float = 1e-9,
) -> Array:
    """Curvature vector R(X,Y)Z of constant holomorphic sectional curvature c.

    Standard form (c/4)[g(Y,Z)X - g(X,Z)Y + g(JY,Z)JX - g(JX,Z)JY + 2g(X,JY)JZ];
    contracting with X at Y = JX, Z = JX reproduces sectional curvature c of the
    holomorphic plane, and c/4 on totally real planes.
    """
    g = np.asarray(g, dtype=float)
    J = np.asarray(J, dtype=float)
    X, Y, Z = (np.asarray(v, dtype=float) for v in (X, Y, Z))
    check_almost_complex(g, J, tol)

    def ip(u: Array, v: Array) -> float:
        return float(u @ g @ v)

    JX, JY, JZ = J @ X, J @ Y, J @ Z
    return (c / 4.0) * (
        ip(Y, Z) * X
        - ip(X, Z) * Y
        + ip(JY, Z) * JX
        - ip(JX, Z) * JY
        + 2.0 * ip(X, JY) * JZ
    )


def _const_field(value: Array) -> MatrixField:
    arr = np.asarray(value, dtype=float)
    return lambda x: arr.copy()


def builtin_r2_example() -> DualisticChart:
    """Flat-metric plane with the constant-curvature -1 dualistic structure.

    g = dx^2 + dy^2; the primal connection has Gamma^y_xx = 1 and
    Gamma^x_xy = Gamma^x_yx = 1, the dual one carries the opposite signs.
    All coefficient fields are constant, so analytic partials are exact zeros.
    """
    dim = 2
    gam = np.zeros((dim, dim, dim))
    gam[1, 0, 0] = 1.0  # nabla_dx dx = dy
    gam[0, 0, 1] = 1.0  # nabla_dx dy = dx
    gam[0, 1, 0] = 1.0  # nabla_dy dx = dx
    zeros3 = np.zeros((dim, dim, dim))
    zeros4 = np.zeros((dim, dim, dim, dim))
    return DualisticChart(
        dim=dim,
        metric=_const_field(np.eye(dim)),
        gamma=_const_field(gam),
        gamma_star=_const_field(-gam),
        metric_partial=_const_field(zeros3),
        gamma_partial=_const_field(zeros4),
        gamma_star_partial=_const_field(zeros4),
        label="r2-example",
    )


def trivial_chart(dim: int) -> DualisticChart:
    """Euclidean chart with nabla = nabla* = Levi-Civita = 0 (flat, trivial)."""
    zeros3 = np.zeros((dim, dim, dim))
    zeros4 = np.zeros((dim, dim, dim, dim))
    return DualisticChart(
        dim=dim,
        metric=_const_field(np.eye(dim)),
        gamma=_const_field(zeros3),
        gamma_star=_const_field(zeros3),
        metric_partial=_const_field(zeros3),
        gamma_partial=_const_field(zeros4),
        gamma_star_partial=_const_field(zeros4),
        label=f"flat-trivial-{dim}d",
    )
