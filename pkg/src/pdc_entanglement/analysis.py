"""Derived entanglement analytics: birth time, critical temperature,
phase boundary and the photon-number witness.

Everything here reduces to one scalar condition.  The thermally seeded
state is entangled exactly when

    |det gamma(tau)| > S0,      S0 = nbar1 nbar2 (nbar1+1)(nbar2+1),

with |det gamma| = m(m+1)K^2, m = sinh^2(x tau)/x^2, K = nbar1+nbar2+1.
The birth time solves the equality in closed form (quadratic in m); a
bracketed bisection on the same condition is kept as an independent
verification route.  The critical temperature is the root in T of the
separability indicator at fixed interaction time, found by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .pdc_dynamics import (
    PdcParams,
    X_DEGENERATE,
    det_gamma_closed_form,
    mean_photon_numbers,
    thermal_init,
)

BTE_ABS_TOL = 1e-10
TC_REL_TOL = 1e-6


@dataclass(frozen=True)
class BteResult:
    """Birth time of entanglement and the route that produced it."""

    tau_e: float
    method: str  # "closed_form" | "bisection"


@dataclass(frozen=True)
class PhasePoint:
    """One sample (y, T_c) of the separable/entangled boundary."""

    y: float
    t_c: float


@dataclass(frozen=True)
class WitnessValue:
    """Photon-number witness w = sqrt(S0) - <n>; negative means entangled."""

    w: float
    mean_pair_photons: float
    threshold: float


def s0_threshold(nbar1, nbar2):
    """Entanglement threshold S0 = nbar1 nbar2 (nbar1+1)(nbar2+1).

    This equals I1 - I2/4 + 1/16 evaluated on the initial thermal product
    state; it vanishes only for vacuum input.
    """
    if nbar1 < 0.0 or nbar2 < 0.0:
        raise ValidationError("occupations must be >= 0")
    return nbar1 * nbar2 * (nbar1 + 1.0) * (nbar2 + 1.0)


def _bisect(f, lo, hi, *, abs_tol=0.0, rel_tol=0.0, max_iter=200):
    """Sign-change bisection; assumes f(lo) <= 0 < f(hi)."""
    for _ in range(max_iter):
        if hi - lo <= abs_tol + rel_tol * max(abs(hi), 1.0):
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def birth_time(
    params: PdcParams,
    temperature,
    method: str = "closed_form",
    tau_max: float = 60.0,
) -> BteResult:
    """Minimum interaction time before the output state is entangled.

    Solves |det gamma(tau_E)| = S0.  For vacuum input (T = 0) the state
    is entangled immediately and tau_E = 0 for every mismatch.

    Parameters
    ----------
    method : "closed_form" solves the quadratic in m = sinh^2(x tau)/x^2
        and inverts it; "bisection" brackets the same condition and
        bisects to 1e-10 absolute, serving as the independent check.
    tau_max : cap for the bisection bracket expansion.
    """
    if method not in ("closed_form", "bisection"):
        raise ValidationError(f"unknown method {method!r}")
    init = thermal_init(params, temperature)
    s0 = s0_threshold(init.nbar1, init.nbar2)
    if s0 == 0.0:
        return BteResult(tau_e=0.0, method=method)
    big_k = init.nbar1 + init.nbar2 + 1.0

    if method == "closed_form":
        c = 4.0 * s0 / (big_k * big_k)
        m_star = c / (2.0 * (1.0 + np.sqrt(1.0 + c)))  # (-1+sqrt(1+c))/2, stable
        x = np.sqrt(1.0 - params.y * params.y)
        if x < X_DEGENERATE:
            tau_e = float(np.sqrt(m_star))
        else:
            tau_e = float(np.arcsinh(x * np.sqrt(m_star)) / x)
        return BteResult(tau_e=tau_e, method=method)

    def f(tau):
        return -det_gamma_closed_form(params, tau, temperature) - s0

    hi = 1.0
    while f(hi) <= 0.0:
        hi *= 2.0
        if hi > tau_max:
            raise ValidationError(
                f"no entanglement onset below tau_max={tau_max}; raise tau_max"
            )
    return BteResult(
        tau_e=float(_bisect(f, 0.0, hi, abs_tol=BTE_ABS_TOL)), method=method
    )


def _indicator_at(params: PdcParams, tau, temperature):
    """S(T) = S0(T) - |det gamma(tau; T)| without building the matrix."""
    init = thermal_init(params, temperature)
    s0 = s0_threshold(init.nbar1, init.nbar2)
    return s0 + det_gamma_closed_form(params, tau, temperature)


def critical_temperature(
    params: PdcParams, tau_i, t_max: float = 2000.0
) -> Optional[float]:
    """Temperature above which the state at fixed tau_i turns separable.

    Bisects S(T) = 0 over [0, t_max] to 1e-6 relative.  Returns None when
    there is no root in the bracket: either the state is never entangled
    (tau_i = 0) or it is still entangled at t_max.  S is checked by sign
    at both bracket ends rather than assumed monotone.
    """
    if tau_i < 0.0:
        raise ValidationError("tau_i must be >= 0")
    if t_max <= 0.0:
        raise ValidationError("t_max must be positive")
    if tau_i == 0.0:
        return None  # never entangled at any temperature
    if _indicator_at(params, tau_i, 0.0) >= 0.0:
        return None
    if _indicator_at(params, tau_i, t_max) < 0.0:
        return None  # still entangled at t_max: no root in bracket

    def f(temp):
        return _indicator_at(params, tau_i, temp)

    return float(_bisect(f, 0.0, t_max, rel_tol=TC_REL_TOL))


def phase_boundary(
    params: PdcParams, tau_i, y_grid: Sequence[float], t_max: float = 2000.0
) -> list[PhasePoint]:
    """Map critical_temperature over a mismatch grid.

    Points with no root (never entangled, or T_c beyond the bracket) are
    omitted rather than failing the scan.
    """
    points = []
    for y in y_grid:
        if not (0.0 <= y < 1.0):
            raise ValidationError(f"mismatch y must lie in [0, 1), got {y}")
        t_c = critical_temperature(replace(params, y=float(y)), tau_i, t_max=t_max)
        if t_c is not None:
            points.append(PhasePoint(y=float(y), t_c=t_c))
    return points


def witness(params: PdcParams, tau, temperature) -> WitnessValue:
    """Measurable witness w = sqrt(S0(T)) - (n1 + n2)/2 at time tau.

    Negative w certifies entanglement from the produced photon numbers
    and the medium temperature alone.  Its zero crossing in T sits close
    to (but not algebraically at) the critical temperature.
    """
    init = thermal_init(params, temperature)
    threshold = float(np.sqrt(s0_threshold(init.nbar1, init.nbar2)))
    n1, n2 = mean_photon_numbers(params, tau, temperature)
    mean = float((n1 + n2) / 2.0)
    return WitnessValue(w=threshold - mean, mean_pair_photons=mean, threshold=threshold)
