"""Statistical warped products R x_f N and the induced almost-contact frame.

The product chart has coordinates (t, x^1, ..., x^{2n}) with metric
dt^2 + f(t)^2 g_N and connections assembled from the fiber's dualistic pair:

    nabla_{dt} dt = 0,   nabla_{dt} X = (f'/f) X,
    nabla_X  Y   = nabla^N_X Y - (<X,Y>/f) f' dt,

identically for the starred connection.  On top of the product chart the reeb
frame (phi, xi = dt, eta = dt-form) is built from the fiber's almost complex
structure J, and the classification into almost alpha-Kenmotsu / almost
cosymplectic is decided from the coordinate exterior derivatives of eta and
of the fundamental two-form Phi(X,Y) = <phi X, Y>.

Sign conventions: Omega(X,Y) = g(JX, Y) on the fiber, matching Phi's slot
order; with these the exact two-form identity of the warp is
dPhi = f^2 dOmega - 2 alpha eta ^ Phi for the reported alpha = -f'/f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .statistical_geometry import (
    DualisticChart,
    ResidualRecord,
    axiom_residuals,
    check_almost_complex,
    connection_at,
    curvature,
    levi_civita,
    trivial_chart,
    builtin_r2_example,
)
from .tensor_core import sample_points

Array = np.ndarray

CLOSED_FORM_CASES = ("a", "b", "c", "d", "a*", "b*", "c*", "d*")


@dataclass(frozen=True)
class Warping:
    """Warping function t -> f(t) with analytic first and second derivatives."""

    f: Callable[[float], float]
    f_prime: Callable[[float], float]
    f_double_prime: Callable[[float], float]
    name: str = "f"

    def at(self, t: float) -> tuple[float, float, float]:
        f = float(self.f(t))
        if not (math.isfinite(f) and f > 0.0):
            raise ValueError(f"warping {self.name} must stay positive, got f({t}) = {f}")
        return f, float(self.f_prime(t)), float(self.f_double_prime(t))


def exp_warping() -> Warping:
    return Warping(math.exp, math.exp, math.exp, name="exp(t)")


def const_warping(value: float) -> Warping:
    if value <= 0.0:
        raise ValueError("constant warping must be positive")
    return Warping(lambda t: value, lambda t: 0.0, lambda t: 0.0, name=f"const {value}")


def cosh_warping() -> Warping:
    return Warping(math.cosh, math.sinh, math.cosh, name="cosh(t)")


@dataclass(frozen=True)
class WarpedProductSpec:
    """Fiber chart + almost complex field + warping data for R x_f N.

    ``space_form_c`` declares the fiber as a holomorphic statistical space
    form of constant c (with vanishing [K,K]); it gates the closed
    four-slot curvature formula.
    """

    fiber: DualisticChart
    complex_structure: Callable[[Array], Array]
    warping: Warping
    space_form_c: float | None = None
    label: str = "warped product"

    @property
    def dim(self) -> int:
        return self.fiber.dim + 1

    def j_at(self, fiber_point: Array) -> Array:
        return np.asarray(self.complex_structure(np.asarray(fiber_point, dtype=float)), dtype=float)


def standard_complex_structure(n: int) -> Array:
    """Block-diagonal J with 2x2 rotation blocks: J d_{2k} = d_{2k+1}."""
    j2 = np.array([[0.0, -1.0], [1.0, 0.0]])
    out = np.zeros((2 * n, 2 * n))
    for k in range(n):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = j2
    return out


def flat_kaehler_spec(n: int, warping: Warping, space_form_c: float | None = 0.0) -> WarpedProductSpec:
    """Trivial flat fiber R^{2n} with the constant standard J."""
    j = standard_complex_structure(n)
    return WarpedProductSpec(
        fiber=trivial_chart(2 * n),
        complex_structure=lambda x: j.copy(),
        warping=warping,
        space_form_c=space_form_c,
        label=f"R x_{warping.name} C^{n} (flat)",
    )


def twisted_j_spec(epsilon: float, warping: Warping) -> WarpedProductSpec:
    """Flat R^4 fiber with a position-twisted compatible J, so dOmega != 0.

    J(x) = P(theta) J0 P(theta)^T with theta = epsilon (1/2 + x_3) and P a
    rotation in the (e1, e2) plane; J stays compatible (J^2 = -I, orthogonal)
    but its fundamental form is no longer closed.  Negative test case for the
    warped-Kenmotsu equivalence.
    """
    j0 = standard_complex_structure(2)

    def j_field(x: Array) -> Array:
        theta = epsilon * (0.5 + float(x[3]))
        p = np.eye(4)
        c, s = math.cos(theta), math.sin(theta)
        p[1, 1], p[1, 2], p[2, 1], p[2, 2] = c, -s, s, c
        return p @ j0 @ p.T

    return WarpedProductSpec(
        fiber=trivial_chart(4),
        complex_structure=j_field,
        warping=warping,
        label=f"twisted-J fiber (eps={epsilon})",
    )


def builtin_h3_example() -> WarpedProductSpec:
    """R x_{e^t} (constant-curvature -1 plane): warped model of hyperbolic 3-space."""
    j = standard_complex_structure(1)
    return WarpedProductSpec(
        fiber=builtin_r2_example(),
        complex_structure=lambda x: j.copy(),
        warping=exp_warping(),
        label="h3-example",
    )


def embed_fiber_vector(v: Array) -> Array:
    v = np.asarray(v, dtype=float)
    return np.concatenate(([0.0], v))


def warped_metric(spec: WarpedProductSpec, point: Array) -> Array:
    point = np.asarray(point, dtype=float)
    f, _, _ = spec.warping.at(point[0])
    g = np.zeros((spec.dim, spec.dim))
    g[0, 0] = 1.0
    g[1:, 1:] = f * f * np.asarray(spec.fiber.metric(point[1:]), dtype=float)
    return g


def default_sample_box(spec_dim: int) -> list[tuple[float, float]]:
    """t restricted to [-1/2, 1/2] to keep e^{2t} well conditioned."""
    return [(-0.5, 0.5)] + [(-1.0, 1.0)] * (spec_dim - 1)


def sample_warped_points(spec: WarpedProductSpec, count: int, rng: np.random.Generator) -> Array:
    return sample_points(spec.dim, count, rng, box=default_sample_box(spec.dim))


def _fiber_axiom_check(spec: WarpedProductSpec, tol: float, seed: int = 171) -> None:
    rng = np.random.default_rng(seed)
    fiber = spec.fiber
    pts = sample_points(fiber.dim, 3, rng)
    for p in pts:
        probes = [rng.uniform(-1.0, 1.0, fiber.dim) for _ in range(4)]
        worst = axiom_residuals(fiber, p, *probes).worst()
        if worst > tol:
            raise ValueError(
                f"fiber of {spec.label} violates the dualistic axioms "
                f"(residual {worst:.3e} > {tol:.1e} at {p.tolist()})"
            )


def build_warped_chart(spec: WarpedProductSpec, validate_fiber: bool = True, fiber_tol: float = 1e-6) -> DualisticChart:
    """Assemble the (2n+1)-dim dualistic chart of R x_f N.

    Analytic derivative providers are attached whenever the fiber has them.
    """
    if validate_fiber:
        _fiber_axiom_check(spec, fiber_tol)
    fiber = spec.fiber
    d = spec.dim
    w = spec.warping

    def metric(x: Array) -> Array:
        return warped_metric(spec, x)

    def _gamma_from(fiber_gamma_field) -> Callable[[Array], Array]:
        def gamma(x: Array) -> Array:
            x = np.asarray(x, dtype=float)
            f, fp, _ = w.at(x[0])
            g_n = np.asarray(fiber.metric(x[1:]), dtype=float)
            out = np.zeros((d, d, d))
            out[1:, 1:, 1:] = np.asarray(fiber_gamma_field(x[1:]), dtype=float)
            ratio = fp / f
            for a in range(1, d):
                out[a, 0, a] = ratio
                out[a, a, 0] = ratio
            out[0, 1:, 1:] = -f * fp * g_n
            return out

        return gamma

    def metric_partial(x: Array) -> Array:
        x = np.asarray(x, dtype=float)
        f, fp, _ = w.at(x[0])
        g_n = np.asarray(fiber.metric(x[1:]), dtype=float)
        dg_n = np.asarray(fiber.metric_partial(x[1:]), dtype=float)
        out = np.zeros((d, d, d))
        out[0, 1:, 1:] = 2.0 * f * fp * g_n
        out[1:, 1:, 1:] = f * f * dg_n
        return out

    def _gamma_partial_from(fiber_gamma_field, fiber_gamma_partial) -> Callable[[Array], Array]:
        def gamma_partial(x: Array) -> Array:
            x = np.asarray(x, dtype=float)
            f, fp, fpp = w.at(x[0])
            g_n = np.asarray(fiber.metric(x[1:]), dtype=float)
            dg_n = np.asarray(fiber.metric_partial(x[1:]), dtype=float)
            out = np.zeros((d, d, d, d))
            # d/dt blocks
            d_ratio = fpp / f - (fp / f) ** 2
            for a in range(1, d):
                out[0, a, 0, a] = d_ratio
                out[0, a, a, 0] = d_ratio
            out[0, 0, 1:, 1:] = -(fp * fp + f * fpp) * g_n
            # fiber-direction blocks
            out[1:, 1:, 1:, 1:] = np.asarray(fiber_gamma_partial(x[1:]), dtype=float)
            out[1:, 0, 1:, 1:] = -f * fp * dg_n
            return out

        return gamma_partial

    has_analytic = (
        fiber.metric_partial is not None
        and fiber.gamma_partial is not None
        and fiber.gamma_star_partial is not None
    )
    return DualisticChart(
        dim=d,
        metric=metric,
        gamma=_gamma_from(fiber.gamma),
        gamma_star=_gamma_from(fiber.gamma_star),
        metric_partial=metric_partial if fiber.metric_partial is not None else None,
        gamma_partial=_gamma_partial_from(fiber.gamma, fiber.gamma_partial) if has_analytic else None,
        gamma_star_partial=_gamma_partial_from(fiber.gamma_star, fiber.gamma_star_partial) if has_analytic else None,
        fd_step=fiber.fd_step,
        label=spec.label,
    )


def warped_curvature_closed_form(
    spec: WarpedProductSpec,
    point: Array,
    case: str,
    U: Array | None = None,
    V: Array | None = None,
    W: Array | None = None,
) -> Array:
    """Closed-form curvature of the warp, by case; probes are fiber vectors.

      a : R(V, dt) dt = -(f''/f) V
      b : R(V, U) dt = 0
      c : R(dt, V) W = -(f''/f) <V,W> dt
      d : R(V, W) U = R^N(V,W)U - (f'/f)^2 [<W,U> V - <V,U> W]

    Starred cases use the dual fiber curvature in (d*); <.,.> is the warped
    metric f^2 g_N on fiber vectors.  Returns total-chart components.
    """
    case = case.strip().lower().replace("_star", "*")
    if case not in CLOSED_FORM_CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {CLOSED_FORM_CASES}")
    point = np.asarray(point, dtype=float)
    t, xf = point[0], point[1:]
    f, fp, fpp = spec.warping.at(t)
    g_n = np.asarray(spec.fiber.metric(xf), dtype=float)
    which = "nabla_star" if case.endswith("*") else "nabla"
    base = case[0]

    def need(name: str, v: Array | None) -> Array:
        if v is None:
            raise ValueError(f"case {case!r} requires fiber probe {name}")
        v = np.asarray(v, dtype=float)
        if v.size != spec.fiber.dim:
            raise ValueError(f"probe {name} must be a fiber vector of dim {spec.fiber.dim}")
        return v

    if base == "a":
        v = need("V", V)
        return embed_fiber_vector(-(fpp / f) * v)
    if base == "b":
        need("V", V)
        need("U", U)
        return np.zeros(spec.dim)
    if base == "c":
        v = need("V", V)
        wv = need("W", W)
        warped_ip = f * f * float(v @ g_n @ wv)
        out = np.zeros(spec.dim)
        out[0] = -(fpp / f) * warped_ip
        return out
    # case d
    v = need("V", V)
    wv = need("W", W)
    u = need("U", U)
    r_fiber = curvature(spec.fiber, which, xf).vector(v, wv, u)
    warp = (fp / f) ** 2 * (f * f) * (float(wv @ g_n @ u) * v - float(v @ g_n @ u) * wv)
    return embed_fiber_vector(r_fiber - warp)


def phi_matrix(spec: WarpedProductSpec, point: Array) -> Array:
    """(1,1) frame tensor on the total chart: phi(dt) = 0, phi(X) = JX."""
    point = np.asarray(point, dtype=float)
    out = np.zeros((spec.dim, spec.dim))
    out[1:, 1:] = spec.j_at(point[1:])
    return out


def phi_apply(spec: WarpedProductSpec, point: Array, u: Array) -> Array:
    return phi_matrix(spec, point) @ np.asarray(u, dtype=float)


def space_form_warped_curvature(
    spec: WarpedProductSpec,
    point: Array,
    X: Array,
    Y: Array,
    Z: Array,
    W: Array,
) -> float:
    """Four-slot curvature scalar of R x_f N(c) (identical for both connections).

    <R(X,Y)Z, W> = A [<Y,Z><X,W> - <X,Z><Y,W>]
                 + B [<X,Z> Y_t W_t - <Y,Z> X_t W_t + <Y,W> X_t Z_t - <X,W> Y_t Z_t]
                 + (c/4f^2) [<X,phiZ><phiY,W> - <Y,phiZ><phiX,W> + 2<X,phiY><phiZ,W>]

    with A = c/4f^2 - (f'/f)^2 and B = A + f''/f; the subscript t denotes the
    dt-component.
    """
    if spec.space_form_c is None:
        raise ValueError(f"{spec.label}: fiber is not declared as a holomorphic statistical space form")
    point = np.asarray(point, dtype=float)
    c = float(spec.space_form_c)
    f, fp, fpp = spec.warping.at(point[0])
    g = warped_metric(spec, point)
    phi = phi_matrix(spec, point)
    X, Y, Z, W = (np.asarray(v, dtype=float) for v in (X, Y, Z, W))

    def ip(u: Array, v: Array) -> float:
        return float(u @ g @ v)

    a_coef = c / (4.0 * f * f) - (fp / f) ** 2
    b_coef = a_coef + fpp / f
    phi_x, phi_y, phi_z = phi @ X, phi @ Y, phi @ Z
    xt, yt, zt, wt = X[0], Y[0], Z[0], W[0]
    term1 = a_coef * (ip(Y, Z) * ip(X, W) - ip(X, Z) * ip(Y, W))
    term2 = b_coef * (
        ip(X, Z) * yt * wt - ip(Y, Z) * xt * wt + ip(Y, W) * xt * zt - ip(X, W) * yt * zt
    )
    term3 = (c / (4.0 * f * f)) * (
        ip(X, phi_z) * ip(phi_y, W) - ip(Y, phi_z) * ip(phi_x, W) + 2.0 * ip(X, phi_y) * ip(phi_z, W)
    )
    return term1 + term2 + term3


# ---------------------------------------------------------------------------
# Almost contact frame, exterior calculus, classification
# ---------------------------------------------------------------------------


def frame_invariant_residual(spec: WarpedProductSpec, point: Array) -> float:
    """Worst violation of the almost-contact-metric frame identities.

    phi xi = 0, eta o phi = 0, phi^2 = -Id + eta (x) xi,
    <phi u, phi v> = <u,v> - eta(u) eta(v).
    """
    point = np.asarray(point, dtype=float)
    d = spec.dim
    g = warped_metric(spec, point)
    phi = phi_matrix(spec, point)
    xi = np.zeros(d)
    xi[0] = 1.0
    eta = np.zeros(d)
    eta[0] = 1.0
    res = [
        float(np.max(np.abs(phi @ xi))),
        float(np.max(np.abs(eta @ phi))),
        float(np.max(np.abs(phi @ phi + np.eye(d) - np.outer(xi, eta)))),
        float(np.max(np.abs(phi.T @ g @ phi - g + np.outer(eta, eta)))),
    ]
    return max(res)


def fundamental_two_form(spec: WarpedProductSpec, point: Array) -> Array:
    """Phi_ab = <phi d_a, d_b> on the total chart."""
    return phi_matrix(spec, point).T @ warped_metric(spec, point)


def fiber_fundamental_form(spec: WarpedProductSpec, fiber_point: Array) -> Array:
    """Omega_ab = g_N(J d_a, d_b) on the fiber."""
    fiber_point = np.asarray(fiber_point, dtype=float)
    g_n = np.asarray(spec.fiber.metric(fiber_point), dtype=float)
    return spec.j_at(fiber_point).T @ g_n


def exterior_derivative_2form(form_field: Callable[[Array], Array], point: Array, step: float) -> Array:
    """d of a two-form on coordinate triples: (dw)_abc = d_a w_bc - d_b w_ac + d_c w_ab."""
    point = np.asarray(point, dtype=float)
    d = point.size
    partials = []
    for a in range(d):
        hi = point.copy()
        lo = point.copy()
        hi[a] += step
        lo[a] -= step
        partials.append((np.asarray(form_field(hi), dtype=float) - np.asarray(form_field(lo), dtype=float)) / (2.0 * step))
    dw = np.stack(partials, axis=0)  # dw[a,b,c] = d_a w_bc
    return dw - np.einsum("bac->abc", dw) + np.einsum("cab->abc", dw)


def wedge_eta_form(two_form_total: Array) -> Array:
    """(eta ^ w)_abc = eta_a w_bc - eta_b w_ac + eta_c w_ab with eta = dt."""
    d = two_form_total.shape[0]
    eta = np.zeros(d)
    eta[0] = 1.0
    return (
        np.einsum("a,bc->abc", eta, two_form_total)
        - np.einsum("b,ac->abc", eta, two_form_total)
        + np.einsum("c,ab->abc", eta, two_form_total)
    )


def lift_fiber_three_form(fiber_form: Array, total_dim: int) -> Array:
    out = np.zeros((total_dim,) * 3)
    out[1:, 1:, 1:] = fiber_form
    return out


@dataclass(frozen=True)
class ContactClassification:
    """Classification record at a sample point.

    ``alpha`` is the reported Kenmotsu coefficient -f'/f; the two-form
    identity itself holds with the opposite sign, dPhi = f^2 dOmega - 2 alpha
    eta^Phi, which is what ``d_phi_residual`` (without the dOmega term) and
    ``contact_identity_residual`` (with it) are measured against.
    """

    alpha: float
    d_eta_residual: float
    d_phi_residual: float
    contact_identity_residual: float
    d_omega_residual: float
    structure_tag: str


def contact_classification(
    spec: WarpedProductSpec,
    point: Array,
    tol: float = 1e-8,
    frame_tol: float = 1e-9,
) -> ContactClassification:
    point = np.asarray(point, dtype=float)
    frame_res = frame_invariant_residual(spec, point)
    if frame_res > frame_tol:
        raise ValueError(f"contact frame invariants violated (residual {frame_res:.3e})")
    step = spec.fiber.fd_step
    f, fp, _ = spec.warping.at(point[0])
    kappa = fp / f  # working coefficient; reported alpha is its negative
    # eta = dt has constant components, so its coordinate d vanishes identically
    d_eta = 0.0
    phi_form = fundamental_two_form(spec, point)
    d_phi = exterior_derivative_2form(lambda x: fundamental_two_form(spec, x), point, step)
    d_omega_fiber = exterior_derivative_2form(
        lambda xf: fiber_fundamental_form(spec, xf), point[1:], step
    )
    d_omega = lift_fiber_three_form(d_omega_fiber, spec.dim)
    wedge = wedge_eta_form(phi_form)

    d_phi_residual = float(np.max(np.abs(d_phi - 2.0 * kappa * wedge)))
    contact_identity_residual = float(np.max(np.abs(d_phi - f * f * d_omega - 2.0 * kappa * wedge)))
    d_omega_residual = float(np.max(np.abs(d_omega_fiber)))

    if d_eta <= tol and d_phi_residual <= tol:
        tag = "almost cosymplectic" if abs(kappa) <= 1e-12 else "almost alpha-kenmotsu"
    else:
        tag = "unclassified"
    return ContactClassification(
        alpha=-kappa if kappa != 0.0 else 0.0,
        d_eta_residual=d_eta,
        d_phi_residual=d_phi_residual,
        contact_identity_residual=contact_identity_residual,
        d_omega_residual=d_omega_residual,
        structure_tag=tag,
    )


# ---------------------------------------------------------------------------
# Hermitian / contact statistical identity residuals
# ---------------------------------------------------------------------------


def _covariant_two_form_derivative(
    form_field: Callable[[Array], Array],
    gamma: Array,
    point: Array,
    X: Array,
    Y: Array,
    Z: Array,
    step: float,
) -> float:
    """(nabla_X w)(Y,Z) for a two-form field and connection coefficients."""
    point = np.asarray(point, dtype=float)
    w = np.asarray(form_field(point), dtype=float)
    dir_w = np.zeros_like(w)
    for a in range(point.size):
        if X[a] == 0.0:
            continue
        hi = point.copy()
        lo = point.copy()
        hi[a] += step
        lo[a] -= step
        dir_w += X[a] * (np.asarray(form_field(hi), dtype=float) - np.asarray(form_field(lo), dtype=float)) / (2.0 * step)
    nx_y = np.einsum("kab,a,b->k", gamma, X, Y)
    nx_z = np.einsum("kab,a,b->k", gamma, X, Z)
    return float(Y @ dir_w @ Z - nx_y @ w @ Z - Y @ w @ nx_z)


def hermitian_statistical_residuals(
    chart: DualisticChart,
    j_field: Callable[[Array], Array],
    point: Array,
    X: Array,
    Y: Array,
    Z: Array,
    psi_field: Callable[[Array], Array] | None = None,
) -> ResidualRecord:
    """Residuals of the Hermitian-statistical identities at one point.

    omega_parallel                 |(nabla_X Omega)(Y,Z)|  (holomorphic-statistical test)
    omega_deriv_primal             (nabla_X Omega)(Y,Z) = g((nabla_X J)Y,Z) - 2 g(K_X JY, Z)
    omega_deriv_dual               starred version, + 2 g(K_X JY, Z)
    omega_deriv_levi_civita        (nabla_X Omega) = (nabla0_X Omega) - g(K_X JY + J K_X Y, Z)
    omega_deriv_levi_civita_dual   starred version, opposite sign
    skew_cyclic                    cyclic sum of g(K_X psi Y + psi K_X Y, Z) vanishes
                                   for any g-skew psi (default psi = J)
    """
    point = np.asarray(point, dtype=float)
    X, Y, Z = (np.asarray(v, dtype=float) for v in (X, Y, Z))
    step = chart.fd_step
    g = np.asarray(chart.metric(point), dtype=float)
    jmat = np.asarray(j_field(point), dtype=float)
    check_almost_complex(g, jmat)
    gam = connection_at(chart, "nabla", point)
    gam_star = connection_at(chart, "nabla_star", point)
    gam0 = levi_civita(chart, point)
    k = gam - gam0

    def omega_field(x: Array) -> Array:
        return np.asarray(j_field(x), dtype=float).T @ np.asarray(chart.metric(x), dtype=float)

    def ip(u: Array, v: Array) -> float:
        return float(u @ g @ v)

    def k_apply(A: Array, B: Array) -> Array:
        return np.einsum("kab,a,b->k", k, A, B)

    n_omega = _covariant_two_form_derivative(omega_field, gam, point, X, Y, Z, step)
    n_star_omega = _covariant_two_form_derivative(omega_field, gam_star, point, X, Y, Z, step)
    n0_omega = _covariant_two_form_derivative(omega_field, gam0, point, X, Y, Z, step)
    nxj_y = _nabla_endomorphism(j_field, gam, point, X, Y, step)
    nxj_star_y = _nabla_endomorphism(j_field, gam_star, point, X, Y, step)

    mixed = k_apply(X, jmat @ Y) + jmat @ k_apply(X, Y)

    psi = jmat if psi_field is None else np.asarray(psi_field(point), dtype=float)
    skew_res = float(np.max(np.abs(psi.T @ g + g @ psi)))
    if skew_res > 1e-9:
        raise ValueError(f"psi is not g-skew-symmetric (residual {skew_res:.3e})")

    def cyc_term(A: Array, B: Array, C: Array) -> float:
        return ip(k_apply(A, psi @ B) + psi @ k_apply(A, B), C)

    cyclic = abs(cyc_term(X, Y, Z) + cyc_term(Z, X, Y) + cyc_term(Y, Z, X))

    return ResidualRecord(
        {
            "omega_parallel": abs(n_omega),
            "omega_deriv_primal": abs(n_omega - ip(nxj_y, Z) + 2.0 * ip(k_apply(X, jmat @ Y), Z)),
            "omega_deriv_dual": abs(n_star_omega - ip(nxj_star_y, Z) - 2.0 * ip(k_apply(X, jmat @ Y), Z)),
            "omega_deriv_levi_civita": abs(n_omega - n0_omega + ip(mixed, Z)),
            "omega_deriv_levi_civita_dual": abs(n_star_omega - n0_omega - ip(mixed, Z)),
            "skew_cyclic": cyclic,
        }
    )


def _nabla_endomorphism(
    endo_field: Callable[[Array], Array],
    gamma: Array,
    point: Array,
    X: Array,
    Y: Array,
    step: float,
) -> Array:
    """(nabla_X T)Y = X^a d_a(T) Y + Gamma-corrections, for a (1,1) field T."""
    point = np.asarray(point, dtype=float)
    tmat = np.asarray(endo_field(point), dtype=float)
    dir_t = np.zeros_like(tmat)
    for a in range(point.size):
        if X[a] == 0.0:
            continue
        hi = point.copy()
        lo = point.copy()
        hi[a] += step
        lo[a] -= step
        dir_t += X[a] * (np.asarray(endo_field(hi), dtype=float) - np.asarray(endo_field(lo), dtype=float)) / (2.0 * step)
    ty = tmat @ Y
    # nabla_X (TY) with TY treated as the field x -> T(x) Y_const
    cov_ty = dir_t @ Y + np.einsum("kam,a,m->k", gamma, X, ty)
    nx_y = np.einsum("kab,a,b->k", gamma, X, Y)
    return cov_ty - tmat @ nx_y


def contact_statistical_residuals(
    spec: WarpedProductSpec,
    point: Array,
    X: Array,
    Y: Array,
    Z: Array,
    chart: DualisticChart | None = None,
) -> ResidualRecord:
    """Contact-frame statistical identity residuals on the total chart.

    phi_deriv_levi_civita        (nabla_X Phi)(Y,Z) = (nabla0_X Phi)(Y,Z) - g(K_X phi Y + phi K_X Y, Z)
    phi_deriv_levi_civita_dual   starred version, opposite sign
    phi_warp_deriv               (nabla_X phi)Y = (nabla^N_X J)Y - (f'/f)<X, phi Y> xi - (f'/f) eta(Y) phi X
    dphi_cyclic                  coordinate dPhi equals the cyclic covariant sums
                                 (both the Levi-Civita and the primal one)
    """
    point = np.asarray(point, dtype=float)
    X, Y, Z = (np.asarray(v, dtype=float) for v in (X, Y, Z))
    total = chart if chart is not None else build_warped_chart(spec, validate_fiber=False)
    step = total.fd_step
    g = warped_metric(spec, point)
    f, fp, _ = spec.warping.at(point[0])
    gam = connection_at(total, "nabla", point)
    gam_star = connection_at(total, "nabla_star", point)
    gam0 = levi_civita(total, point)
    k = gam - gam0
    phi = phi_matrix(spec, point)

    def phi_form_field(x: Array) -> Array:
        return fundamental_two_form(spec, x)

    def phi_field(x: Array) -> Array:
        return phi_matrix(spec, x)

    def ip(u: Array, v: Array) -> float:
        return float(u @ g @ v)

    def k_apply(A: Array, B: Array) -> Array:
        return np.einsum("kab,a,b->k", k, A, B)

    n_phi = _covariant_two_form_derivative(phi_form_field, gam, point, X, Y, Z, step)
    n_star_phi = _covariant_two_form_derivative(phi_form_field, gam_star, point, X, Y, Z, step)
    n0_phi = _covariant_two_form_derivative(phi_form_field, gam0, point, X, Y, Z, step)
    mixed = k_apply(X, phi @ Y) + phi @ k_apply(X, Y)

    bb1 = abs(n_phi - n0_phi + ip(mixed, Z))
    bb2 = abs(n_star_phi - n0_phi - ip(mixed, Z))

    # phi_warp_deriv: compare against the fiber (nabla^N_X J) Y lifted
    nx_phi_y = _nabla_endomorphism(phi_field, gam, point, X, Y, step)
    fiber_gam = connection_at(spec.fiber, "nabla", point[1:])
    nxj_fiber = _nabla_endomorphism(
        lambda xf: spec.j_at(xf), fiber_gam, point[1:], X[1:], Y[1:], spec.fiber.fd_step
    )
    xi = np.zeros(spec.dim)
    xi[0] = 1.0
    predicted = (
        embed_fiber_vector(nxj_fiber)
        - (fp / f) * ip(X, phi @ Y) * xi
        - (fp / f) * Y[0] * (phi @ X)
    )
    contact4 = float(np.max(np.abs(nx_phi_y - predicted)))

    d_phi = exterior_derivative_2form(phi_form_field, point, step)
    d_phi_xyz = float(np.einsum("abc,a,b,c->", d_phi, X, Y, Z))

    def cyc(gamma_used: Array) -> float:
        return (
            _covariant_two_form_derivative(phi_form_field, gamma_used, point, X, Y, Z, step)
            + _covariant_two_form_derivative(phi_form_field, gamma_used, point, Z, X, Y, step)
            + _covariant_two_form_derivative(phi_form_field, gamma_used, point, Y, Z, X, step)
        )

    contact5 = max(abs(d_phi_xyz - cyc(gam0)), abs(d_phi_xyz - cyc(gam)))

    return ResidualRecord(
        {
            "phi_deriv_levi_civita": bb1,
            "phi_deriv_levi_civita_dual": bb2,
            "phi_warp_deriv": contact4,
            "dphi_cyclic": contact5,
        }
    )


# ---------------------------------------------------------------------------
# Warped-Kenmotsu equivalence check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KenmotsuCheck:
    fiber_almost_kaehler: bool
    total_almost_kenmotsu: bool
    consistent: bool
    k_tilde_xi_residual: float
    details: dict


def kenmotsu_theorem_check(
    spec: WarpedProductSpec,
    samples: int = 5,
    seed: int = 23,
    tol: float = 1e-6,
) -> KenmotsuCheck:
    """Evaluate both sides of the warped-Kenmotsu equivalence numerically.

    Fiber side: J compatible with g_N and dOmega = 0.  Total side: contact
    frame invariants hold, d eta = 0, and dPhi = 2 (f'/f) eta ^ Phi.  Also
    verifies the difference-tensor identities K~_X xi = K~_xi xi = 0 and
    K~_X Y = K_X Y on fiber probes (these hold for every warp).
    """
    rng = np.random.default_rng(seed)
    pts = sample_warped_points(spec, samples, rng)
    fiber_ok = True
    total_ok = True
    worst_fiber = 0.0
    worst_total = 0.0
    k_xi_res = 0.0
    k_fiber_res = 0.0
    chart = build_warped_chart(spec, validate_fiber=False)
    for p in pts:
        xf = p[1:]
        g_n = np.asarray(spec.fiber.metric(xf), dtype=float)
        j = spec.j_at(xf)
        compat = max(
            float(np.max(np.abs(j @ j + np.eye(j.shape[0])))),
            float(np.max(np.abs(j.T @ g_n @ j - g_n))),
        )
        d_omega = exterior_derivative_2form(lambda x: fiber_fundamental_form(spec, x), xf, spec.fiber.fd_step)
        fiber_res = max(compat, float(np.max(np.abs(d_omega))))
        worst_fiber = max(worst_fiber, fiber_res)
        if fiber_res > tol:
            fiber_ok = False

        frame_res = frame_invariant_residual(spec, p)
        f, fp, _ = spec.warping.at(p[0])
        kappa = fp / f
        d_phi = exterior_derivative_2form(lambda x: fundamental_two_form(spec, x), p, spec.fiber.fd_step)
        wedge = wedge_eta_form(fundamental_two_form(spec, p))
        kenmotsu_res = float(np.max(np.abs(d_phi - 2.0 * kappa * wedge)))
        total_res = max(frame_res, kenmotsu_res)
        worst_total = max(worst_total, total_res)
        if total_res > tol:
            total_ok = False

        k_tilde = connection_at(chart, "nabla", p) - levi_civita(chart, p)
        k_xi_res = max(
            k_xi_res,
            float(np.max(np.abs(k_tilde[:, :, 0]))),
            float(np.max(np.abs(k_tilde[:, 0, :]))),
        )
        k_fiber = connection_at(spec.fiber, "nabla", xf) - levi_civita(spec.fiber, xf)
        k_fiber_res = max(k_fiber_res, float(np.max(np.abs(k_tilde[1:, 1:, 1:] - k_fiber))))

    return KenmotsuCheck(
        fiber_almost_kaehler=fiber_ok,
        total_almost_kenmotsu=total_ok,
        consistent=(fiber_ok == total_ok),
        k_tilde_xi_residual=k_xi_res,
        details={
            "worst_fiber_residual": worst_fiber,
            "worst_total_residual": worst_total,
            "k_tilde_fiber_match_residual": k_fiber_res,
            "samples": int(samples),
        },
    )
