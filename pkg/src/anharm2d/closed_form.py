"""Closed-form bound states for V(r) = a r^2 + b r^-4 + c r^-6 in two dimensions.

Units: hbar = 1, mu = 1/2, so the radial problem after separating the angular
part exp(+-i m phi) and pulling out r^(-1/2) is

    -R'' + [V(r) + (m^2 - 1/4)/r^2] R = E R.

Exact solutions exist only on a constrained parameter surface.  The ground
state is R0 = r^kappa exp[-(sqrt(a) r^2 + sqrt(c) r^-2)/2] with
kappa = 1/2 +- sqrt(m^2 + 2 sqrt(ac)), valid when

    (b + 2 sqrt(c))^2 - 4c (m^2 + 2 sqrt(ac)) = 0,

and the first excited state (same m) adds the prefactor
sqrt(a) r^2 - sqrt(c) r^-2 with its own exponent kappa1 = (b + 7 sqrt(c)) /
(2 sqrt(c)), valid when b = -6 sqrt(c).  Both states coexist only when
m^2 + 2 sqrt(ac) = 4, which pins c = ((4 - m^2)/2)^2 / a and forces m in
{0, 1}; see excited_solve.

All functions here are pure and accept scalars or numpy arrays for r.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Natural-log threshold below which exp() underflows even subnormal doubles;
# evaluators return exactly 0 past it instead of subnormal noise.
UNDERFLOW_LOG = -745.0


class SolvabilityError(ValueError):
    """No joint ground+excited closed-form solution exists for the request."""


class SignBranch(enum.Enum):
    """Sign choice in kappa = 1/2 +- sqrt(m^2 + 2 sqrt(ac))."""

    PLUS = "plus"
    MINUS = "minus"


class Level(enum.Enum):
    GROUND = "ground"
    EXCITED = "excited"


@dataclass(frozen=True)
class PotentialParams:
    """Coefficients of V(r) = a r^2 + b r^-4 + c r^-6; a > 0 and c > 0."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ValueError(f"harmonic coefficient a must be > 0, got {self.a}")
        if not (self.c > 0.0):
            raise ValueError(f"r^-6 coefficient c must be > 0, got {self.c}")

    def evaluate(self, r):
        """V(r) for r > 0 (scalar or array)."""
        r = _check_positive_radius(r)
        return self.a * r**2 + self.b * r**-4 + self.c * r**-6


def centrifugal_coefficient(m: int) -> float:
    """2D centrifugal coefficient m^2 - 1/4 for angular momentum m >= 0."""
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise ValueError(f"angular momentum m must be a non-negative integer, got {m}")
    return m * m - 0.25


@dataclass(frozen=True)
class ClosedFormState:
    """One exact radial bound state.

    The wavefunction is

        R(r) = (poly_c2 r^2 + poly_c0 + poly_cm2 r^-2)
               * r^kappa * exp[(alpha r^2 + beta r^-2)/2],

    with alpha = -sqrt(a) and beta = -sqrt(c) (both strictly negative so the
    state decays at infinity and at the origin).  Ground states have
    poly_c2 = poly_cm2 = 0; excited states have poly_c0 = 0.  The overall
    scale of the polynomial prefactor is free (unnormalized by default).
    """

    kappa: float
    alpha: float
    beta: float
    poly_c2: float
    poly_c0: float
    poly_cm2: float
    energy: float
    level: Level

    def __post_init__(self):
        if not (self.alpha < 0.0 and self.beta < 0.0):
            raise ValueError("alpha and beta must both be negative for a bound state")
        if self.level is Level.GROUND and (self.poly_c2 != 0.0 or self.poly_cm2 != 0.0):
            raise ValueError("ground state must have a constant prefactor")
        if self.level is Level.EXCITED and self.poly_c0 != 0.0:
            raise ValueError("excited state prefactor has no constant term")

    def scaled(self, factor: float) -> "ClosedFormState":
        """Same state with the prefactor multiplied by `factor`."""
        return ClosedFormState(
            kappa=self.kappa,
            alpha=self.alpha,
            beta=self.beta,
            poly_c2=factor * self.poly_c2,
            poly_c0=factor * self.poly_c0,
            poly_cm2=factor * self.poly_cm2,
            energy=self.energy,
            level=self.level,
        )


def _check_positive_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("radius must be strictly positive")
    return r


def _maybe_scalar(x, scalar_in):
    return float(x) if scalar_in else x


# ---------------------------------------------------------------------------
# Ground state
# ---------------------------------------------------------------------------

def ground_kappa(m: int, a: float, c: float, branch: SignBranch) -> float:
    """Power-law exponent kappa = 1/2 +- sqrt(m^2 + 2 sqrt(ac))."""
    centrifugal_coefficient(m)  # validates m
    root = math.sqrt(m * m + 2.0 * math.sqrt(a * c))
    return 0.5 + root if branch is SignBranch.PLUS else 0.5 - root


def ground_constraint_b(a: float, c: float, m: int, branch: SignBranch) -> float:
    """The b that makes the ground ansatz exact for the given kappa branch.

    From 3*beta - 2*beta*kappa = b with beta = -sqrt(c) and
    kappa = 1/2 +- s, s = sqrt(m^2 + 2 sqrt(ac)):

        b = sqrt(c) * (2*kappa - 3) = -2 sqrt(c) +- sqrt(4c (m^2 + 2 sqrt(ac))).

    The roots-of-the-quadratic form on the right is evaluated with the same
    operation order as ground_constraint_residual, which keeps the residual
    at b within a few ulps; the kappa round-trip would lose a digit.
    """
    centrifugal_coefficient(m)
    y = 4.0 * c * (m * m + 2.0 * math.sqrt(a * c))
    root = math.sqrt(y)
    if branch is SignBranch.MINUS:
        root = -root
    return -2.0 * math.sqrt(c) + root


def ground_constraint_residual(params: PotentialParams, m: int) -> float:
    """(b + 2 sqrt(c))^2 - 4c (m^2 + 2 sqrt(ac)); zero iff b sits on the
    exact-solvability surface (either kappa branch)."""
    a, b, c = params.a, params.b, params.c
    centrifugal_coefficient(m)
    return (b + 2.0 * math.sqrt(c)) ** 2 - 4.0 * c * (m * m + 2.0 * math.sqrt(a * c))


def ground_energy(params: PotentialParams) -> float:
    """Ground-state energy sqrt(a) * (4 + b/sqrt(c)).

    Meaningful as an eigenvalue only when ground_constraint_residual
    vanishes; the formula itself is evaluated unconditionally.
    """
    return math.sqrt(params.a) * (4.0 + params.b / math.sqrt(params.c))


def ground_state(params: PotentialParams, m: int, branch: SignBranch) -> ClosedFormState:
    """Closed-form ground state for constrained parameters on `branch`."""
    kappa = ground_kappa(m, params.a, params.c, branch)
    sqrt_a = math.sqrt(params.a)
    # E = -(2 kappa + 1) alpha with alpha = -sqrt(a); coincides with
    # ground_energy when b is branch-matched.
    return ClosedFormState(
        kappa=kappa,
        alpha=-sqrt_a,
        beta=-math.sqrt(params.c),
        poly_c2=0.0,
        poly_c0=1.0,
        poly_cm2=0.0,
        energy=(2.0 * kappa + 1.0) * sqrt_a,
        level=Level.GROUND,
    )


def _log_envelope(state: ClosedFormState, r):
    """log of r^kappa * exp[(alpha r^2 + beta r^-2)/2].

    r^2 or r^-2 may overflow to inf for extreme radii; the result is then
    -inf (alpha, beta < 0) and gets clamped to 0 by the callers.
    """
    with np.errstate(over="ignore"):
        return state.kappa * np.log(r) + 0.5 * (state.alpha * r**2 + state.beta * r**-2)


def ground_radial_eval(state: ClosedFormState, r):
    """Unnormalized ground radial wavefunction at r > 0.

    Clamps to exactly 0 where the log of the envelope drops below the
    double-precision underflow threshold, so the tails never produce
    NaN/inf/subnormals.
    """
    if state.level is not Level.GROUND:
        raise ValueError("state is not a ground state")
    rr = _check_positive_radius(r)
    scalar_in = rr.ndim == 0
    rr = np.atleast_1d(rr)
    t = _log_envelope(state, rr)
    out = np.zeros_like(rr)
    ok = t > UNDERFLOW_LOG
    out[ok] = state.poly_c0 * np.exp(t[ok])
    return _maybe_scalar(out[0] if scalar_in else out, scalar_in)


def _envelope_derivatives(state: ClosedFormState, r):
    """p', p'' for p = (alpha r^2 + beta r^-2)/2 + kappa ln r."""
    p1 = state.alpha * r - state.beta * r**-3 + state.kappa / r
    p2 = state.alpha + 3.0 * state.beta * r**-4 - state.kappa * r**-2
    return p1, p2


def ground_residual(state: ClosedFormState, params: PotentialParams, m: int, r):
    """Analytic eigen-residual density p'' + (p')^2 + E - V - (m^2-1/4)/r^2.

    Identically zero (to roundoff) exactly when the ansatz parameters
    satisfy the matching equations for (params, m).
    """
    rr = _check_positive_radius(r)
    scalar_in = rr.ndim == 0
    rr = np.atleast_1d(rr)
    p1, p2 = _envelope_derivatives(state, rr)
    res = p2 + p1**2 + state.energy - params.evaluate(rr) - centrifugal_coefficient(m) / rr**2
    return _maybe_scalar(res[0] if scalar_in else res, scalar_in)


def ground_peak_radius(state: ClosedFormState) -> float:
    """Unique stationary point of |R0|: the positive root of
    sqrt(a) r^4 - kappa r^2 - sqrt(c) = 0."""
    if state.level is not Level.GROUND:
        raise ValueError("state is not a ground state")
    sqrt_a = -state.alpha
    sqrt_c = -state.beta
    r_sq = (state.kappa + math.sqrt(state.kappa**2 + 4.0 * sqrt_a * sqrt_c)) / (2.0 * sqrt_a)
    return math.sqrt(r_sq)


# ---------------------------------------------------------------------------
# First excited state
# ---------------------------------------------------------------------------

def excited_kappa1(b: float, c: float) -> float:
    """Excited-state exponent kappa1 = (b + 7 sqrt(c)) / (2 sqrt(c))."""
    if not c > 0.0:
        raise ValueError("c must be > 0")
    sqrt_c = math.sqrt(c)
    return (b + 7.0 * sqrt_c) / (2.0 * sqrt_c)


def excited_energy(params: PotentialParams) -> float:
    """First-excited energy sqrt(a) * (12 + b/sqrt(c))."""
    return math.sqrt(params.a) * (12.0 + params.b / math.sqrt(params.c))


def excited_state(params: PotentialParams) -> ClosedFormState:
    """Closed-form first excited state; exact only when b = -6 sqrt(c) and
    m^2 + 2 sqrt(ac) = 4."""
    sqrt_a = math.sqrt(params.a)
    sqrt_c = math.sqrt(params.c)
    return ClosedFormState(
        kappa=excited_kappa1(params.b, params.c),
        alpha=-sqrt_a,
        beta=-sqrt_c,
        poly_c2=sqrt_a,
        poly_c0=0.0,
        poly_cm2=-sqrt_c,
        energy=excited_energy(params),
        level=Level.EXCITED,
    )


def excited_radial_eval(state: ClosedFormState, r):
    """Unnormalized first-excited radial wavefunction at r > 0.

    Same underflow clamp as ground_radial_eval; the polynomial prefactor
    grows only algebraically, so masking on the log-envelope keeps the
    product finite everywhere on (0, inf).
    """
    if state.level is not Level.EXCITED:
        raise ValueError("state is not an excited state")
    rr = _check_positive_radius(r)
    scalar_in = rr.ndim == 0
    rr = np.atleast_1d(rr)
    t = _log_envelope(state, rr)
    out = np.zeros_like(rr)
    ok = t > UNDERFLOW_LOG
    pref = state.poly_c2 * rr[ok] ** 2 + state.poly_cm2 * rr[ok] ** -2
    out[ok] = pref * np.exp(t[ok])
    return _maybe_scalar(out[0] if scalar_in else out, scalar_in)


def excited_residual(state: ClosedFormState, params: PotentialParams, m: int, r):
    """Node-safe eigen-residual of the excited ansatz.

    Returns f * [p'' + (p')^2 + E - V - (m^2-1/4)/r^2] + f'' + 2 p' f'
    for the prefactor f = poly_c2 r^2 + poly_cm2 r^-2; this form avoids the
    division by f of the raw logarithmic-derivative identity and is defined
    at the node as well.
    """
    rr = _check_positive_radius(r)
    scalar_in = rr.ndim == 0
    rr = np.atleast_1d(rr)
    p1, p2 = _envelope_derivatives(state, rr)
    f = state.poly_c2 * rr**2 + state.poly_cm2 * rr**-2
    f1 = 2.0 * state.poly_c2 * rr - 2.0 * state.poly_cm2 * rr**-3
    f2 = 2.0 * state.poly_c2 + 6.0 * state.poly_cm2 * rr**-4
    bracket = p2 + p1**2 + state.energy - params.evaluate(rr) - centrifugal_coefficient(m) / rr**2
    res = f * bracket + f2 + 2.0 * p1 * f1
    return _maybe_scalar(res[0] if scalar_in else res, scalar_in)


def radial_eval(state: ClosedFormState, r):
    """Evaluate either level of closed-form state at r > 0."""
    if state.level is Level.GROUND:
        return ground_radial_eval(state, r)
    return excited_radial_eval(state, r)


# ---------------------------------------------------------------------------
# Joint ground + excited configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JointSolution:
    """Parameter set for which both closed-form states are simultaneously exact."""

    params: PotentialParams
    m: int
    kappa: float
    kappa1: float
    e0: float
    e1: float
    a1: float
    a2: float
    a3: float
    ground: ClosedFormState
    excited: ClosedFormState


def excited_solve(a: float, m: int) -> JointSolution:
    """Unique joint configuration with both states exact, given a > 0.

    Combining the excited-state condition b = -6 sqrt(c) with the ground
    constraint forces m^2 + 2 sqrt(ac) = 4, hence

        c = ((4 - m^2) / 2)^2 / a,   b = -6 sqrt(c),
        kappa = -3/2 (Minus branch), kappa1 = 1/2,
        E0 = -2 sqrt(a),             E1 = 6 sqrt(a).

    Only m in {0, 1} is solvable; m >= 2 would need sqrt(ac) <= 0.
    """
    if not a > 0.0:
        raise ValueError(f"a must be > 0, got {a}")
    centrifugal_coefficient(m)
    if m >= 2:
        raise SolvabilityError(
            f"no joint ground+excited solution for m={m}: "
            "m^2 + 2*sqrt(ac) = 4 would require sqrt(ac) <= 0"
        )
    sqrt_ac = (4.0 - m * m) / 2.0
    c = sqrt_ac**2 / a
    b = -6.0 * math.sqrt(c)
    params = PotentialParams(a=a, b=b, c=c)
    g = ground_state(params, m, SignBranch.MINUS)
    # kappa1 = 1/2 and E1 = 6 sqrt(a) hold exactly here; build the state
    # directly instead of round-tripping through b/sqrt(c)
    sqrt_a = math.sqrt(a)
    x = ClosedFormState(
        kappa=0.5,
        alpha=-sqrt_a,
        beta=-math.sqrt(c),
        poly_c2=sqrt_a,
        poly_c0=0.0,
        poly_cm2=-math.sqrt(c),
        energy=6.0 * sqrt_a,
        level=Level.EXCITED,
    )
    return JointSolution(
        params=params,
        m=m,
        kappa=g.kappa,
        kappa1=x.kappa,
        e0=g.energy,
        e1=x.energy,
        a1=0.0,
        a2=x.poly_c2,
        a3=x.poly_cm2,
        ground=g,
        excited=x,
    )
