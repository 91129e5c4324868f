"""Pointwise algebraic model of a Legendrian submanifold of R x_f N(c).

An instance holds the frame-level data of an n-dimensional Legendrian
submanifold at a point: the fiber curvature constant c, the warping values
f, f', and the two second fundamental forms h, h* expressed in the adapted
frames {e_1..e_n} (tangent) and {u_1 = phi e_1, ..., u_n = phi e_n,
u_{n+1} = xi} (normal).  Arrays are zero-based: ``h[alpha, i, j]`` is
<h(e_i, e_j), u_{alpha+1}>, the last normal slot (alpha = n) being xi.

The xi-slices are forced to -(f'/f) I by the structure of the warp (the
xi-shape operators of both connections are that multiple of the identity),
so they are a validity constraint rather than free data.

Every normalized curvature scalar is computed by two independent routes: a
definitional sum over frame pairs (path A) and the closed-form expression in
mean-curvature / traceless-norm data (path B); the two must agree to 1e-10.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

TWO_PATH_TOL = 1e-10
VALIDATE_TOL = 1e-12

Array = np.ndarray


class TwoPathMismatch(AssertionError):
    """Definitional and closed-form paths disagreed beyond tolerance."""


@dataclass(frozen=True)
class LegendrianPointInstance:
    n: int
    c: float
    f_val: float
    f_prime: float
    h: Array
    h_star: Array

    def __post_init__(self):
        h = np.array(self.h, dtype=float, copy=True)
        h_star = np.array(self.h_star, dtype=float, copy=True)
        h.flags.writeable = False
        h_star.flags.writeable = False
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "h_star", h_star)
        shape = (self.n + 1, self.n, self.n)
        if self.h.shape != shape or self.h_star.shape != shape:
            raise ValueError(f"h and h_star must have shape {shape}")
        if self.f_val <= 0.0:
            raise ValueError("f_val must be positive")

    def to_dict(self) -> dict:
        return {
            "n": int(self.n),
            "c": float(self.c),
            "f": float(self.f_val),
            "f_prime": float(self.f_prime),
            "h": self.h.tolist(),
            "h_star": self.h_star.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict) -> "LegendrianPointInstance":
        return LegendrianPointInstance(
            n=int(data["n"]),
            c=float(data["c"]),
            f_val=float(data["f"]),
            f_prime=float(data["f_prime"]),
            h=np.asarray(data["h"], dtype=float),
            h_star=np.asarray(data["h_star"], dtype=float),
        )

    @staticmethod
    def from_json(text: str) -> "LegendrianPointInstance":
        return LegendrianPointInstance.from_dict(json.loads(text))


def umbilic_instance(n: int = 2, c: float = 0.0, f_val: float = 1.0, f_prime: float = 1.0) -> LegendrianPointInstance:
    """phi-slices zero, xi-slices the forced -(f'/f) multiple of the identity."""
    h = np.zeros((n + 1, n, n))
    h[n] = -(f_prime / f_val) * np.eye(n)
    return LegendrianPointInstance(n=n, c=c, f_val=f_val, f_prime=f_prime, h=h, h_star=h.copy())


def validate(inst: LegendrianPointInstance, tol: float = VALIDATE_TOL) -> list[tuple[str, int, int, int]]:
    """Empty list when valid; else the violated (form, alpha, i, j) entries.

    Checks symmetry of every slice and the xi-slice constraint
    h[n][i][j] = -(f'/f) delta_ij for both forms.
    """
    violations: list[tuple[str, int, int, int]] = []
    target = -(inst.f_prime / inst.f_val) * np.eye(inst.n)
    for name, arr in (("h", inst.h), ("h_star", inst.h_star)):
        for alpha in range(inst.n + 1):
            asym = np.abs(arr[alpha] - arr[alpha].T)
            for i, j in zip(*np.nonzero(asym > tol)):
                if i < j:
                    violations.append((name, alpha, int(i), int(j)))
        bad = np.abs(arr[inst.n] - target)
        for i, j in zip(*np.nonzero(bad > tol)):
            violations.append((name, inst.n, int(i), int(j)))
    return violations


def require_valid(inst: LegendrianPointInstance) -> None:
    violations = validate(inst)
    if violations:
        raise ValueError(f"invalid Legendrian instance: first violations {violations[:5]}")


@dataclass(frozen=True)
class MeanData:
    """Mean curvature vectors (normal coordinates) and all squared norms."""

    H: Array
    H_star: Array
    H0: Array
    norm_H_sq: float
    norm_Hstar_sq: float
    norm_H0_sq: float
    norm_tau_sq: float
    norm_taustar_sq: float
    norm_tau0_sq: float
    norm_h_sq: float
    norm_hstar_sq: float
    norm_h0_sq: float


def _tau_norm_two_ways(form: Array, mean: Array, n: int) -> float:
    """||h - H g||^2 directly, cross-checked against ||h||^2 - n ||H||^2."""
    direct = form - mean[:, None, None] * np.eye(n)[None, :, :]
    direct_sq = float(np.sum(direct * direct))
    identity_sq = float(np.sum(form * form) - n * float(mean @ mean))
    if abs(direct_sq - identity_sq) > 1e-12 * max(1.0, abs(direct_sq)):
        raise TwoPathMismatch(
            f"traceless-norm identity violated: {direct_sq!r} vs {identity_sq!r}"
        )
    return direct_sq


def means_and_traceless(inst: LegendrianPointInstance) -> MeanData:
    require_valid(inst)
    n = inst.n
    h, hs = inst.h, inst.h_star
    H = np.einsum("aii->a", h) / n
    Hs = np.einsum("aii->a", hs) / n
    h0 = 0.5 * (h + hs)
    H0 = 0.5 * (H + Hs)
    return MeanData(
        H=H,
        H_star=Hs,
        H0=H0,
        norm_H_sq=float(H @ H),
        norm_Hstar_sq=float(Hs @ Hs),
        norm_H0_sq=float(H0 @ H0),
        norm_tau_sq=_tau_norm_two_ways(h, H, n),
        norm_taustar_sq=_tau_norm_two_ways(hs, Hs, n),
        norm_tau0_sq=_tau_norm_two_ways(h0, H0, n),
        norm_h_sq=float(np.sum(h * h)),
        norm_hstar_sq=float(np.sum(hs * hs)),
        norm_h0_sq=float(np.sum(h0 * h0)),
    )


@dataclass(frozen=True)
class ShapeOperators:
    """Shape operators per normal direction and their traceless parts.

    A[alpha] is the operator of u_{alpha+1} for the primal connection (dual
    pairing: <h*(X,Y), u> = g(A_u X, Y), so A comes from the h* slices), and
    A_star[alpha] from the h slices; A0 is their mean.  S-variants subtract
    (trace/n) I and are exactly trace-free.
    """

    A: Array
    A_star: Array
    A0: Array
    S: Array
    S_star: Array
    S0: Array


def _traceless(ops: Array, n: int) -> Array:
    traces = np.einsum("aii->a", ops) / n
    return ops - traces[:, None, None] * np.eye(n)[None, :, :]


def shape_operators(inst: LegendrianPointInstance) -> ShapeOperators:
    require_valid(inst)
    n = inst.n
    a = inst.h_star.copy()
    a_star = inst.h.copy()
    a0 = 0.5 * (a + a_star)
    return ShapeOperators(
        A=a,
        A_star=a_star,
        A0=a0,
        S=_traceless(a, n),
        S_star=_traceless(a_star, n),
        S0=_traceless(a0, n),
    )


def ambient_plane_curvature(inst: LegendrianPointInstance) -> float:
    """c/4f^2 - (f'/f)^2: ambient curvature of tangent planes of the warp."""
    return inst.c / (4.0 * inst.f_val**2) - (inst.f_prime / inst.f_val) ** 2


def gauss_sectional(inst: LegendrianPointInstance, i: int, j: int, which: str = "nabla") -> float:
    """g(R(e_i,e_j)e_j,e_i) of the induced connection, via the Gauss equation.

    Primal: base + <h*(e_i,e_i), h(e_j,e_j)> - <h(e_i,e_j), h*(e_i,e_j)>;
    starred form swaps h and h*.  Indices are zero-based and must differ.
    """
    if i == j:
        raise ValueError("sectional contraction needs i != j")
    if not (0 <= i < inst.n and 0 <= j < inst.n):
        raise ValueError("frame index out of range")
    base = ambient_plane_curvature(inst)
    h, hs = inst.h, inst.h_star
    if which == "nabla":
        return base + float(hs[:, i, i] @ h[:, j, j]) - float(h[:, i, j] @ hs[:, i, j])
    if which == "nabla_star":
        return base + float(h[:, i, i] @ hs[:, j, j]) - float(hs[:, i, j] @ h[:, i, j])
    raise ValueError(f"unknown connection {which!r}")


def rho_statistical_paths(inst: LegendrianPointInstance) -> tuple[float, float]:
    """Normalized dualistic scalar curvature by both routes, unchecked."""
    require_valid(inst)
    n = inst.n
    acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            acc += gauss_sectional(inst, i, j, "nabla") + gauss_sectional(inst, i, j, "nabla_star")
    path_a = acc / (n * (n - 1))

    m = means_and_traceless(inst)
    nn1 = n * (n - 1)
    path_b = (
        ambient_plane_curvature(inst)
        + 2.0 * m.norm_H0_sq
        - (2.0 / nn1) * m.norm_tau0_sq
        - 0.5 * m.norm_H_sq
        + m.norm_tau_sq / (2.0 * nn1)
        - 0.5 * m.norm_Hstar_sq
        + m.norm_taustar_sq / (2.0 * nn1)
    )
    return path_a, path_b


def rho_statistical(inst: LegendrianPointInstance, tol: float = TWO_PATH_TOL) -> float:
    a, b = rho_statistical_paths(inst)
    if abs(a - b) > tol:
        raise TwoPathMismatch(f"rho paths disagree: {a!r} vs {b!r}")
    return a


def normal_curvature_entry(
    inst: LegendrianPointInstance,
    ops: ShapeOperators,
    r: int,
    s: int,
    i: int,
    j: int,
) -> float:
    """Combined normal curvature <(R-perp + R*-perp)(e_i,e_j) u_{r+1}, u_{s+1}>.

    Bracket part [A*_r, A_s] + [A_r, A*_s] evaluated at (e_i, e_j), plus the
    space-form contribution -(2c/4f^2)(delta_ir delta_js - delta_is delta_jr);
    pairs involving xi (r or s = n) carry no space-form term and their
    brackets vanish because A_xi is a multiple of the identity.
    """
    a, a_star = ops.A, ops.A_star
    comm = (a_star[r] @ a[s] - a[s] @ a_star[r]) + (a[r] @ a_star[s] - a_star[s] @ a[r])
    value = float(comm[j, i])
    if r < inst.n and s < inst.n:
        cterm = 2.0 * inst.c / (4.0 * inst.f_val**2)
        delta = (1.0 if i == r else 0.0) * (1.0 if j == s else 0.0) - (
            1.0 if i == s else 0.0
        ) * (1.0 if j == r else 0.0)
        value -= cterm * delta
    return value


def rho_perp_statistical_paths(inst: LegendrianPointInstance) -> tuple[float, float]:
    """Normalized normal scalar curvature by both routes, unchecked.

    Path A: definitional double sum over all n+1 normal pairs with the
    resolved normal-curvature entries.  Path B: the phi-pair sum with the
    brackets rearranged through the mean operators,
    4[A0_r, A0_s] - [A_r, A_s] - [A*_r, A*_s].
    """
    require_valid(inst)
    n = inst.n
    ops = shape_operators(inst)
    cterm = 2.0 * inst.c / (4.0 * inst.f_val**2)

    total_a = 0.0
    for r in range(n + 1):
        for s in range(r + 1, n + 1):
            for i in range(n):
                for j in range(i + 1, n):
                    total_a += normal_curvature_entry(inst, ops, r, s, i, j) ** 2
    path_a = np.sqrt(total_a) / (n * (n - 1))

    total_b = 0.0
    a, a_star, a0 = ops.A, ops.A_star, ops.A0
    for r in range(n):
        for s in range(r + 1, n):
            comm = (
                4.0 * (a0[r] @ a0[s] - a0[s] @ a0[r])
                - (a[r] @ a[s] - a[s] @ a[r])
                - (a_star[r] @ a_star[s] - a_star[s] @ a_star[r])
            )
            for i in range(n):
                for j in range(i + 1, n):
                    delta = (1.0 if i == r else 0.0) * (1.0 if j == s else 0.0) - (
                        1.0 if i == s else 0.0
                    ) * (1.0 if j == r else 0.0)
                    total_b += (float(comm[j, i]) - cterm * delta) ** 2
    path_b = np.sqrt(total_b) / (n * (n - 1))
    return float(path_a), float(path_b)


def rho_perp_statistical(inst: LegendrianPointInstance, tol: float = TWO_PATH_TOL) -> float:
    a, b = rho_perp_statistical_paths(inst)
    if abs(a - b) > tol:
        raise TwoPathMismatch(f"rho_perp paths disagree: {a!r} vs {b!r}")
    return a


def rho_levicivita(inst: LegendrianPointInstance) -> float:
    """base + ||H0||^2 - ||tau0||^2/(n(n-1)), the Levi-Civita normalization."""
    m = means_and_traceless(inst)
    return ambient_plane_curvature(inst) + m.norm_H0_sq - m.norm_tau0_sq / (inst.n * (inst.n - 1))


@dataclass(frozen=True)
class CurvatureScalars:
    rho: float
    rho_perp: float
    rho_zero: float
    norm_H_sq: float
    norm_Hstar_sq: float
    norm_H0_sq: float
    norm_tau_sq: float
    norm_taustar_sq: float
    norm_tau0_sq: float


def curvature_scalars(inst: LegendrianPointInstance) -> CurvatureScalars:
    m = means_and_traceless(inst)
    return CurvatureScalars(
        rho=rho_statistical(inst),
        rho_perp=rho_perp_statistical(inst),
        rho_zero=rho_levicivita(inst),
        norm_H_sq=m.norm_H_sq,
        norm_Hstar_sq=m.norm_Hstar_sq,
        norm_H0_sq=m.norm_H0_sq,
        norm_tau_sq=m.norm_tau_sq,
        norm_taustar_sq=m.norm_taustar_sq,
        norm_tau0_sq=m.norm_tau0_sq,
    )
