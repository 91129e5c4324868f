"""Generalized Wintgen bound for Legendrian point data, with diagnostics.

``main_inequality`` evaluates the bound

    rho_perp <= 2 rho - 8 rho0 + (1/4f^2)(2f|c| - c + 4 f'^2)
               + 4||H0||^2 + ||H||^2 + ||H*||^2

term by term and reports the slack.  ``inequality_chain`` retraces the proof
skeleton step by step (Cauchy-Schwarz on the normal-curvature summands, the
S-operator bound, Lu's commutator inequality, the closed-form substitution,
the final constant), reporting an independent verdict per step.  The chain
carries a sixth diagnostic step, ``final_bound_rederived``: redoing the last
substitution gives the constant (1/4f^2)(2f|c| + 6c - 24 f'^2), which differs
from the printed one by 7(c/4f^2 - (f'/f)^2); the two coincide only when
c = 4 f'^2.  Sweeps therefore flag instances where the printed constant
fails while the rederived bound (and every earlier chain step) still holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .legendrian import (
    CurvatureScalars,
    LegendrianPointInstance,
    curvature_scalars,
    require_valid,
    shape_operators,
)
from .tensor_core import commutator, frobenius_norm_sq, instance_rng, symmetrize_upper

SLACK_TOL = 1e-9

Array = np.ndarray


# ---------------------------------------------------------------------------
# Lu's commutator inequality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LuResult:
    lhs: float
    rhs: float
    holds: bool
    gap: float


def lu_inequality(matrices: list[Array], ordered_pairs: bool = True, tol: float = 1e-9) -> LuResult:
    """sum_{a,b} ||[B_a,B_b]||^2 <= (sum_a ||B_a||^2)^2 for symmetric trace-free B.

    ``ordered_pairs`` counts (a,b) and (b,a) separately (the double-sum
    normalization); set it False for the halved a<b variant.
    """
    mats = [np.asarray(m, dtype=float) for m in matrices]
    if not mats:
        raise ValueError("need at least one matrix")
    dim = mats[0].shape[0]
    for m in mats:
        if m.shape != (dim, dim):
            raise ValueError("all matrices must share one square shape")
        if float(np.max(np.abs(m - m.T))) > tol:
            raise ValueError("matrices must be symmetric")
        if abs(float(np.trace(m))) > tol:
            raise ValueError("matrices must be trace-free")
    lhs = 0.0
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            lhs += frobenius_norm_sq(commutator(mats[a], mats[b]))
    if ordered_pairs:
        lhs *= 2.0
    rhs = sum(frobenius_norm_sq(m) for m in mats) ** 2
    return LuResult(lhs=lhs, rhs=rhs, holds=lhs <= rhs + tol, gap=rhs - lhs)


# ---------------------------------------------------------------------------
# Main inequality report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    step: str
    lhs: float
    rhs: float
    holds: bool

    def as_dict(self) -> dict:
        return {"step": self.step, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class WintgenReport:
    seed: str | None
    n: int
    c: float
    f: float
    f_prime: float
    lhs: float
    rhs_terms: dict[str, float]
    rhs: float
    slack: float
    holds: bool
    chain: list[ChainStep] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "c": self.c,
            "f": self.f,
            "f_prime": self.f_prime,
            "lhs": self.lhs,
            "rhs_terms": dict(self.rhs_terms),
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "chain": [s.as_dict() for s in self.chain],
        }


def curvature_constant(c: float, f: float, f_prime: float) -> float:
    """(1/4f^2)(2f|c| - c + 4 f'^2), the constant of the stated bound."""
    return (2.0 * f * abs(c) - c + 4.0 * f_prime * f_prime) / (4.0 * f * f)


def rederived_curvature_constant(c: float, f: float, f_prime: float) -> float:
    """(1/4f^2)(2f|c| + 6c - 24 f'^2) = |c|/2f + 6(c/4f^2 - (f'/f)^2).

    Constant obtained by redoing the final substitution of the proof chain;
    exceeds the printed one by -7(c/4f^2 - (f'/f)^2).
    """
    return (2.0 * f * abs(c) + 6.0 * c - 24.0 * f_prime * f_prime) / (4.0 * f * f)


def _rhs_terms(inst: LegendrianPointInstance, scalars: CurvatureScalars) -> dict[str, float]:
    return {
        "two_rho": 2.0 * scalars.rho,
        "minus_eight_rho_zero": -8.0 * scalars.rho_zero,
        "curvature_constant": curvature_constant(inst.c, inst.f_val, inst.f_prime),
        "four_norm_H0_sq": 4.0 * scalars.norm_H0_sq,
        "norm_H_sq": scalars.norm_H_sq,
        "norm_Hstar_sq": scalars.norm_Hstar_sq,
    }


def _holds_with_compensation(terms: dict[str, float], lhs: float, slack: float) -> bool:
    """Re-evaluate near-violations in compensated summation before flagging."""
    if slack >= -SLACK_TOL:
        return True
    compensated = math.fsum(list(terms.values()) + [-lhs])
    return compensated >= -SLACK_TOL


def inequality_chain(inst: LegendrianPointInstance, scalars: CurvatureScalars | None = None) -> list[ChainStep]:
    """Per-step verdicts of the proof skeleton, each against the exact rho_perp.

    cauchy_schwarz          per-summand (l+m+n+w)^2 <= 4(l^2+m^2+n^2+w^2)
    s_operator_bound        trace-free operator form with the c^2 n^2(n-1)^2/4f^2 term
    lu_bound                after Lu: |c|/2f + (4||tau0||^2 + ||tau||^2 + ||tau*||^2)/n(n-1)
    substitution_bound      lu_bound rewritten through the closed form of rho
    final_bound             the stated constant (1/4f^2)(2f|c| - c + 4f'^2)
    final_bound_rederived   the constant obtained by redoing the substitution
    """
    require_valid(inst)
    if scalars is None:
        scalars = curvature_scalars(inst)
    n = inst.n
    nn1 = n * (n - 1)
    f, fp, c = inst.f_val, inst.f_prime, inst.c
    ops = shape_operators(inst)
    lhs = scalars.rho_perp
    cterm = 2.0 * c / (4.0 * f * f)

    # Step 1: Cauchy-Schwarz applied inside every squared summand.
    total = 0.0
    for r in range(n + 1):
        for s in range(r + 1, n + 1):
            g0 = commutator(ops.A0[r], ops.A0[s])
            gp = commutator(ops.A[r], ops.A[s])
            gs = commutator(ops.A_star[r], ops.A_star[s])
            for i in range(n):
                for j in range(i + 1, n):
                    delta = 1.0 if (r < n and s < n and i == r and j == s) else 0.0
                    total += 4.0 * (
                        16.0 * g0[j, i] ** 2
                        + gp[j, i] ** 2
                        + gs[j, i] ** 2
                        + (cterm * delta) ** 2
                    )
    b1 = math.sqrt(total) / nn1

    # Step 2: operator norms with the quoted c-term.
    quad = 0.0
    for r in range(n):
        for s in range(n):
            quad += (
                16.0 * frobenius_norm_sq(commutator(ops.S0[r], ops.S0[s]))
                + frobenius_norm_sq(commutator(ops.S[r], ops.S[s]))
                + frobenius_norm_sq(commutator(ops.S_star[r], ops.S_star[s]))
            )
    b2 = (2.0 / nn1) * math.sqrt(c * c / (4.0 * f * f) * n * n * (n - 1) ** 2 + 0.25 * quad)

    # Step 3: Lu's inequality collapses the commutator sums to traceless norms.
    b3 = abs(c) / (2.0 * f) + (
        4.0 * scalars.norm_tau0_sq + scalars.norm_tau_sq + scalars.norm_taustar_sq
    ) / nn1

    # Step 4: eliminate ||tau||^2 + ||tau*||^2 through the closed form of rho.
    b4 = (
        abs(c) / (2.0 * f)
        + 8.0 * scalars.norm_tau0_sq / nn1
        + 2.0 * scalars.rho
        - 2.0 * c / (4.0 * f * f)
        + 2.0 * (fp / f) ** 2
        - 4.0 * scalars.norm_H0_sq
        + scalars.norm_H_sq
        + scalars.norm_Hstar_sq
    )

    mean_terms = 4.0 * scalars.norm_H0_sq + scalars.norm_H_sq + scalars.norm_Hstar_sq
    b5 = 2.0 * scalars.rho - 8.0 * scalars.rho_zero + curvature_constant(c, f, fp) + mean_terms
    b6 = 2.0 * scalars.rho - 8.0 * scalars.rho_zero + rederived_curvature_constant(c, f, fp) + mean_terms

    steps = [
        ("cauchy_schwarz", b1),
        ("s_operator_bound", b2),
        ("lu_bound", b3),
        ("substitution_bound", b4),
        ("final_bound", b5),
        ("final_bound_rederived", b6),
    ]
    return [ChainStep(step=name, lhs=lhs, rhs=rhs, holds=lhs <= rhs + SLACK_TOL) for name, rhs in steps]


def main_inequality(
    inst: LegendrianPointInstance,
    seed: str | None = None,
    include_chain: bool = True,
) -> WintgenReport:
    """Evaluate the generalized Wintgen bound on a validated instance."""
    require_valid(inst)
    scalars = curvature_scalars(inst)
    terms = _rhs_terms(inst, scalars)
    rhs = sum(terms.values())
    lhs = scalars.rho_perp
    slack = rhs - lhs
    holds = _holds_with_compensation(terms, lhs, slack)
    chain = inequality_chain(inst, scalars) if include_chain else []
    return WintgenReport(
        seed=seed,
        n=inst.n,
        c=inst.c,
        f=inst.f_val,
        f_prime=inst.f_prime,
        lhs=lhs,
        rhs_terms=terms,
        rhs=rhs,
        slack=slack,
        holds=holds,
        chain=chain,
    )


COROLLARY_VARIANTS = ("kenmotsu", "cosymplectic")


def corollary_constant(variant: str, c: float) -> float:
    if variant == "kenmotsu":
        return 1.0
    if variant == "cosymplectic":
        return (2.0 * abs(c) - c) / 4.0
    raise ValueError(f"unknown corollary variant {variant!r}; expected one of {COROLLARY_VARIANTS}")


def corollary_reports(inst: LegendrianPointInstance, variant: str, seed: str | None = None) -> WintgenReport:
    """Specialized bound for R x_{e^t} C^n (kenmotsu) or R x N(c) (cosymplectic).

    Parameter gates: kenmotsu needs c = 0 and f' = f; cosymplectic needs
    f = 1 and f' = 0.  The specialized constant must reproduce the general
    one exactly (checked to 1e-12).
    """
    if variant not in COROLLARY_VARIANTS:
        raise ValueError(f"unknown corollary variant {variant!r}; expected one of {COROLLARY_VARIANTS}")
    if variant == "kenmotsu" and not (inst.c == 0.0 and inst.f_prime == inst.f_val):
        raise ValueError("kenmotsu corollary needs c = 0 and f' = f")
    if variant == "cosymplectic" and not (inst.f_val == 1.0 and inst.f_prime == 0.0):
        raise ValueError("cosymplectic corollary needs f = 1 and f' = 0")
    base = main_inequality(inst, seed=seed, include_chain=False)
    special = corollary_constant(variant, inst.c)
    terms = dict(base.rhs_terms)
    terms["curvature_constant"] = special
    rhs = sum(terms.values())
    if abs(rhs - base.rhs) > 1e-12:
        raise AssertionError(
            f"corollary constant mismatch: specialized {rhs!r} vs general {base.rhs!r}"
        )
    slack = rhs - base.lhs
    return WintgenReport(
        seed=seed,
        n=base.n,
        c=base.c,
        f=base.f,
        f_prime=base.f_prime,
        lhs=base.lhs,
        rhs_terms=terms,
        rhs=rhs,
        slack=slack,
        holds=_holds_with_compensation(terms, base.lhs, slack),
        chain=[],
    )


# ---------------------------------------------------------------------------
# Random instances and sweeps
# ---------------------------------------------------------------------------


def random_instance(
    n: int,
    c_range: tuple[float, float] = (-4.0, 4.0),
    f_range: tuple[float, float] = (0.5, 3.0),
    fprime_range: tuple[float, float] = (-2.0, 2.0),
    magnitude: float = 1.0,
    seed: int = 0,
    index: int = 0,
) -> LegendrianPointInstance:
    """Validated random instance; deterministic in (seed, index).

    Draw order is fixed: c, f, f', then the phi-slices of h (alpha ascending),
    then those of h*; each slice is a symmetrized uniform [-magnitude,
    magnitude] matrix.  xi-slices are set to the forced -(f'/f) I exactly.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if f_range[0] <= 0.0:
        raise ValueError("f_range must be positive")
    rng = instance_rng(seed, index)
    c = float(rng.uniform(*c_range))
    f = float(rng.uniform(*f_range))
    fp = float(rng.uniform(*fprime_range))
    h = np.zeros((n + 1, n, n))
    hs = np.zeros((n + 1, n, n))
    for target in (h, hs):
        for alpha in range(n):
            target[alpha] = symmetrize_upper(rng.uniform(-magnitude, magnitude, size=(n, n)))
        target[n] = -(fp / f) * np.eye(n)
    return LegendrianPointInstance(n=n, c=c, f_val=f, f_prime=fp, h=h, h_star=hs)


def sweep(
    n: int,
    count: int,
    seed: int,
    c_range: tuple[float, float] = (-4.0, 4.0),
    f_range: tuple[float, float] = (0.5, 3.0),
    fprime_range: tuple[float, float] = (-2.0, 2.0),
    magnitude: float = 1.0,
    include_chain: bool = False,
) -> list[WintgenReport]:
    """Reports for ``count`` seeded instances, ordered by instance index."""
    out = []
    for index in range(count):
        inst = random_instance(
            n, c_range, f_range, fprime_range, magnitude, seed=seed, index=index
        )
        out.append(main_inequality(inst, seed=f"{seed}-{index}", include_chain=include_chain))
    return out


# ---------------------------------------------------------------------------
# Sharpness search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SharpnessResult:
    best_instance: LegendrianPointInstance
    min_slack: float
    trace: list[float]
    evaluations: int
    restarts: int
    hard_violation: bool


def _instance_from_params(
    n: int, c: float, f: float, fp: float, params: Array
) -> LegendrianPointInstance:
    """Decode a flat vector of upper-triangle phi-slice entries."""
    tri = n * (n + 1) // 2
    h = np.zeros((n + 1, n, n))
    hs = np.zeros((n + 1, n, n))
    iu = np.triu_indices(n)
    pos = 0
    for target in (h, hs):
        for alpha in range(n):
            sl = np.zeros((n, n))
            sl[iu] = params[pos : pos + tri]
            sl = sl + np.triu(sl, 1).T
            target[alpha] = sl
            pos += tri
        target[n] = -(fp / f) * np.eye(n)
    return LegendrianPointInstance(n=n, c=c, f_val=f, f_prime=fp, h=h, h_star=hs)


def sharpness_search(
    n: int,
    c: float,
    f: float,
    fprime: float,
    iterations: int,
    seed: int,
    start_magnitude: float = 1.0,
    initial_step: float = 0.25,
    min_step: float = 1e-6,
) -> SharpnessResult:
    """Random-restart coordinate hill climb minimizing the slack.

    Coordinates are the phi-slice entries of h and h*; each sweep tries +/-
    step on every coordinate, halves the step after a fruitless sweep, and
    restarts from a fresh random draw once the step drops below ``min_step``.
    ``iterations`` is the total slack-evaluation budget.  The trace records
    the best slack after every improvement (monotone non-increasing).
    A final slack below -1e-9 is re-checked and flagged as a hard violation.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    tri = n * (n + 1) // 2
    nparams = 2 * n * tri

    def slack_of(params: Array) -> float:
        inst = _instance_from_params(n, c, f, fprime, params)
        scalars = curvature_scalars(inst)
        terms = _rhs_terms(inst, scalars)
        return sum(terms.values()) - scalars.rho_perp

    rng = instance_rng(seed, 0)
    evaluations = 0
    restarts = 0
    best_params = None
    best_slack = math.inf
    trace: list[float] = []

    def fresh_start() -> tuple[Array, float]:
        nonlocal evaluations
        params = rng.uniform(-start_magnitude, start_magnitude, size=nparams)
        value = slack_of(params)
        evaluations += 1
        return params, value

    params, current = fresh_start()
    restarts += 1
    step = initial_step
    if current < best_slack:
        best_slack, best_params = current, params.copy()
        trace.append(current)

    while evaluations < iterations:
        improved = False
        for k in range(nparams):
            if evaluations >= iterations:
                break
            for direction in (1.0, -1.0):
                if evaluations >= iterations:
                    break
                trial = params.copy()
                trial[k] += direction * step
                value = slack_of(trial)
                evaluations += 1
                if value < current:
                    params, current = trial, value
                    improved = True
                    if current < best_slack:
                        best_slack, best_params = current, params.copy()
                        trace.append(current)
                    break
        if not improved:
            step *= 0.5
            if step < min_step:
                if evaluations >= iterations:
                    break
                params, current = fresh_start()
                restarts += 1
                step = initial_step
                if current < best_slack:
                    best_slack, best_params = current, params.copy()
                    trace.append(current)

    best_instance = _instance_from_params(n, c, f, fprime, best_params)
    hard = False
    if best_slack < -SLACK_TOL:
        report = main_inequality(best_instance, include_chain=False)
        hard = not report.holds
    return SharpnessResult(
        best_instance=best_instance,
        min_slack=best_slack,
        trace=trace,
        evaluations=evaluations,
        restarts=restarts,
        hard_violation=hard,
    )
