"""Closed-form constants and control functions of the mapping-class proofs.

Pure arithmetic: every derived quantity recomputes its defining formula, and
the two control functions with knots (eta' and theta0) are continuous across
their branch points by algebraic identity.  The overloaded letter M is split
into ring_M (the ring-property constant 2H^2(H+1)) and theta_M (the value of
the relativity control at 2c/(1+2c)).
"""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, asdict
from typing import Callable, Optional, Sequence, Union

from .errors import ConfigurationError, ValidationError

C0 = (1.0 + math.sqrt(3.0)) / 2.0  # quasiconvexity of a length space


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigurationError(msg)


# ---------------------------------------------------------------------------
# Elementary formulas
# ---------------------------------------------------------------------------

def ring_constants(H: float, c: float, q: float) -> tuple[float, float, float]:
    """Ring-property constants (M, alpha, beta) = (2H^2(H+1), 3, 6c/q)."""
    _require(H >= 1.0, "H must be >= 1")
    _require(c >= 1.0, "c must be >= 1")
    _require(0.0 < q < 1.0 or q == 1.0, "q must lie in (0, 1]")
    return 2.0 * H * H * (H + 1.0), 3.0, 6.0 * c / q


def chain_count_bound(c: float) -> float:
    """k0 = log 2 / (log(1+2c) - log(2c)) + 1, the chaining-step count bound."""
    _require(c >= 1.0, "c must be >= 1")
    return math.log(2.0) / (math.log(1.0 + 2.0 * c) - math.log(2.0 * c)) + 1.0


def locality_prime(c: float) -> float:
    """q' = 1/(2+c)^3, the locality radius produced from relativity."""
    _require(c >= 1.0, "c must be >= 1")
    return 1.0 / (2.0 + c) ** 3


def locality_from_semisolid(c: float) -> float:
    """q = 1/((2+c0)^3 c) with c0 = (1+sqrt(3))/2, the locality for the
    semisolid-to-locally-weak-QS direction."""
    _require(c >= 1.0, "c must be >= 1")
    return 1.0 / ((2.0 + C0) ** 3 * c)


def theta0_relative(t: float, c: float) -> float:
    """Two-branch seed control: 3c(3c+1)/(3c-1) t up to 1/(3c), then (1+t)/(1-t).

    Continuous at t = 1/(3c); domain [0, 1).
    """
    _require(c >= 1.0, "c must be >= 1")
    if not (0.0 <= t < 1.0):
        raise ConfigurationError(f"theta0 domain is [0, 1); got {t}")
    if t <= 1.0 / (3.0 * c):
        return 3.0 * c * (3.0 * c + 1.0) / (3.0 * c - 1.0) * t
    return (1.0 + t) / (1.0 - t)


def relative_control_from_semisolid(phi: Callable[[float], float], c: float) -> Callable[[float], float]:
    """theta = psi . phi . theta0 with psi(t) = e^t - 1, on [0, 1).

    The relativity control induced by a phi-semisolid map over a c-quasiconvex
    ambient space.
    """
    def theta(t: float) -> float:
        return math.expm1(phi(theta0_relative(t, c)))
    return theta


def eta_prime(t: float, c: float, thetaM: float, H: float,
              theta: Optional[Callable[[float], float]] = None) -> float:
    """Three-branch local quasisymmetry control.

    (H/thetaM) theta(t) on (0, 2c/(1+2c)], linear k0 t + k1 on the middle
    interval, and (1+ct) H^(1+ct) for t > 1.  Continuous at both knots when
    thetaM = theta(2c/(1+2c)); the first branch needs the theta callable.
    """
    _require(c >= 1.0, "c must be >= 1")
    _require(thetaM > 1.0, "thetaM must exceed 1")
    _require(H >= thetaM, "H must dominate thetaM")
    if t < 0.0:
        raise ConfigurationError("eta' domain is t >= 0")
    knot1 = 2.0 * c / (1.0 + 2.0 * c)
    if t <= knot1:
        if t == 0.0:
            return 0.0
        if theta is None:
            raise ConfigurationError("eta' below the first knot needs the theta control")
        return (H / thetaM) * theta(t)
    if t <= 1.0:
        # Linear branch k0 t + k1 with k0 = (1+2c)((1+c)H^(1+c) - H); evaluated
        # as the interpolation between its knot values H and (1+c)H^(1+c),
        # which avoids the catastrophic cancellation of the raw coefficients.
        top = (1.0 + c) * H ** (1.0 + c)
        return H + (top - H) * ((t - knot1) / (1.0 - knot1))
    return (1.0 + c * t) * H ** (1.0 + c * t)


def eta_prime_knot_residuals(c: float, thetaM: float, H: float,
                             theta: Callable[[float], float]) -> tuple[float, float]:
    """Relative residuals |left - right| / right across the two eta' knots."""
    knot1 = 2.0 * c / (1.0 + 2.0 * c)
    left1 = (H / thetaM) * theta(knot1)
    top = (1.0 + c) * H ** (1.0 + c)
    mid1 = H + (top - H) * ((knot1 - knot1) / (1.0 - knot1))
    mid2 = H + (top - H) * ((1.0 - knot1) / (1.0 - knot1))
    right2 = (1.0 + c * 1.0) * H ** (1.0 + c * 1.0)
    return abs(left1 - mid1) / abs(mid1), abs(mid2 - right2) / abs(right2)


def ring_relativity_t0(c: float, alpha_ring: float, beta: float) -> float:
    """t0 = 1 / (2c (2c alpha)^3 beta), the relativity window of the ring route."""
    _require(c >= 1.0 and alpha_ring > 1.0 and beta > 0.0, "bad ring parameters")
    return 1.0 / (2.0 * c * (2.0 * c * alpha_ring) ** 3 * beta)


def theta_ring(t: float, c: float, cprime: float, ring_M: float,
               alpha_ring: float, beta: float) -> float:
    """Relativity control from the ring property:
    theta(t) = 2 M^2 c' log(2 c alpha) / log(1 / (2c (2c alpha)^3 beta t)).

    Strictly increasing on (0, t0), 0+ at 0, unbounded at t0.
    """
    t0 = ring_relativity_t0(c, alpha_ring, beta)
    if not (0.0 < t < t0):
        raise ConfigurationError(f"theta domain is (0, {t0}); got {t}")
    num = 2.0 * ring_M * ring_M * cprime * math.log(2.0 * c * alpha_ring)
    den = math.log(1.0 / (2.0 * c * (2.0 * c * alpha_ring) ** 3 * beta * t))
    return num / den


def theta_ring_inverse(y: float, c: float, cprime: float, ring_M: float,
                       alpha_ring: float, beta: float) -> float:
    """Inverse of theta_ring: t = t0 exp(-A / y) with A the numerator constant."""
    _require(y > 0.0, "theta inverse needs y > 0")
    t0 = ring_relativity_t0(c, alpha_ring, beta)
    A = 2.0 * ring_M * ring_M * cprime * math.log(2.0 * c * alpha_ring)
    return t0 * math.exp(-A / y)


def semisolid_exponents(phi_t0: float, t0: float, K0: float, alpha_exp: float,
                        c: float, cprime: float, q: float) -> tuple[float, float, float]:
    """Power-law envelope constants:
    K1 = 3 c'^2 K0 (2+c)^(2 alpha) q^(-alpha), K2 = 2 phi(t0)/t0, K = max(K1, K2).
    """
    _require(t0 > 0.0, "t0 must be positive")
    _require(phi_t0 > 0.0 and K0 >= 1.0, "phi(t0) > 0 and K0 >= 1 required")
    _require(0.0 < alpha_exp <= 1.0, "alpha must lie in (0, 1]")
    _require(c >= 1.0 and cprime >= 1.0 and q > 0.0, "bad space constants")
    K1 = 3.0 * cprime * cprime * K0 * (2.0 + c) ** (2.0 * alpha_exp) * q ** (-alpha_exp)
    K2 = 2.0 * phi_t0 / t0
    return K1, K2, max(K1, K2)


# ---------------------------------------------------------------------------
# Monotone control-function tables and composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ControlTable:
    """Monotone increasing function table fixing 0, linearly interpolated."""

    ts: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.ts) != len(self.values) or len(self.ts) < 2:
            raise ValidationError("table needs matching t/value arrays, length >= 2")
        if self.ts[0] != 0.0 or self.values[0] != 0.0:
            raise ValidationError("control tables must start at (0, 0)")
        if any(b <= a for a, b in zip(self.ts, self.ts[1:])):
            raise ValidationError("table abscissae must be strictly increasing")
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise ValidationError("control table must be monotone non-decreasing")

    def __call__(self, t: float) -> float:
        if t < 0.0:
            raise ValidationError("control functions are defined for t >= 0")
        if t >= self.ts[-1]:
            # Linear continuation with the last slope keeps monotonicity.
            t0, t1 = self.ts[-2], self.ts[-1]
            v0, v1 = self.values[-2], self.values[-1]
            slope = (v1 - v0) / (t1 - t0)
            return v1 + slope * (t - t1)
        i = bisect_left(self.ts, t)
        if self.ts[i] == t:
            return self.values[i]
        t0, t1 = self.ts[i - 1], self.ts[i]
        v0, v1 = self.values[i - 1], self.values[i]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    @staticmethod
    def from_function(fn: Callable[[float], float], ts: Sequence[float]) -> "ControlTable":
        return ControlTable(tuple(ts), tuple(fn(t) for t in ts))


def compose_semisolid(phi1: Union[ControlTable, Callable[[float], float]],
                      phi2: Union[ControlTable, Callable[[float], float]],
                      ts: Optional[Sequence[float]] = None) -> ControlTable:
    """Pointwise composition phi2 . phi1 as a monotone table fixing 0.

    Composing the controls of two semisolid maps controls their composition.
    """
    if ts is None:
        if isinstance(phi1, ControlTable):
            ts = phi1.ts
        else:
            ts = tuple(i / 16.0 for i in range(0, 161))
    t1 = phi1 if isinstance(phi1, ControlTable) else ControlTable.from_function(phi1, ts)
    vals = tuple(phi2(v) for v in (t1(t) for t in ts))
    return ControlTable(tuple(ts), vals)


# ---------------------------------------------------------------------------
# The full constant chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantSet:
    """Every constant the equivalence pipeline produces from (H, q, c, c').

    ring_M/alpha_ring/beta come from the ring property; t0 and t1 bound the
    relativity and uniform-continuity windows of the ring route; theta_M and
    H_lemma41 belong to the reverse route built on the composite control
    psi . phi . theta0 (phi is the semisolid control, identity by default);
    K0/alpha_exp are quoted inputs and K1/K2/K the power-law envelope.
    """

    H: float
    q: float
    c: float
    cprime: float
    ring_M: float
    alpha_ring: float
    beta: float
    t0: float
    t1: float
    k0: float
    theta_M: float
    H_lemma41: float
    q_prime: float
    c0: float
    q_lemma42: float
    K0: float
    alpha_exp: float
    t0_exp: float
    K1: float
    K2: float
    K: float

    def as_dict(self) -> dict:
        return asdict(self)

    def pretty_lines(self) -> list[str]:
        d = self.as_dict()
        width = max(len(k) for k in d)
        return [f"{k.ljust(width)} = {v!r}" for k, v in d.items()]


def chain_constants(H: float, q: float, c: float, cprime: float, *,
                    K0: float = 1.0, alpha_exp: float = 1.0,
                    phi: Optional[Callable[[float], float]] = None,
                    phi_inverse: Optional[Callable[[float], float]] = None) -> ConstantSet:
    """Populate the full ConstantSet from a locally-weak-QS hypothesis (H, q).

    The forward route is ring -> relativity -> semisolidity (ring_M, beta, t0,
    theta, t1, psi); the reverse route contributes q', c0, q_lemma42, k0,
    theta_M, and H_lemma41 via the composite control with the supplied
    semisolid phi (identity when omitted).  K0 and alpha_exp are quoted
    inputs with no closed form here.
    """
    _require(H >= 1.0, "H must be >= 1")
    _require(0.0 < q < 1.0, "q must lie in (0, 1)")
    _require(c >= 1.0 and cprime >= 1.0, "c and c' must be >= 1")

    ring_M, alpha_ring, beta = ring_constants(H, c, q)
    t0 = ring_relativity_t0(c, alpha_ring, beta)
    theta_inv_at = theta_ring_inverse(1.0 / (3.0 * cprime), c, cprime, ring_M,
                                      alpha_ring, beta)
    t1 = 0.5 * min(t0, theta_inv_at)

    if phi is None:
        phi = lambda t: t
        phi_inverse = lambda t: t
    # Reverse route: in the length metric the ambient is c0-quasiconvex and the
    # induced map is phi(c t)-semisolid, so the composite control is evaluated
    # at c0 with the rescaled phi.
    phi_scaled = lambda t: phi(c * t)
    theta_rel = relative_control_from_semisolid(phi_scaled, C0)
    knot = 2.0 * C0 / (1.0 + 2.0 * C0)
    theta_M = theta_rel(knot)
    k0_c0 = chain_count_bound(C0)
    H41 = k0_c0 * theta_M ** k0_c0

    q42 = locality_from_semisolid(c)
    if phi_inverse is not None:
        phi_inv_val = phi_inverse(1.0 / (3.0 * cprime))
    else:
        phi_inv_val = _bisect_inverse(phi, 1.0 / (3.0 * cprime))
    t0_exp = min(phi_inv_val, q42 / (2.0 + c) ** 4)
    K1, K2, K = semisolid_exponents(phi(t0_exp), t0_exp, K0, alpha_exp, c, cprime, q42)

    return ConstantSet(
        H=H, q=q, c=c, cprime=cprime,
        ring_M=ring_M, alpha_ring=alpha_ring, beta=beta,
        t0=t0, t1=t1,
        k0=chain_count_bound(c),
        theta_M=theta_M, H_lemma41=H41,
        q_prime=locality_prime(c), c0=C0, q_lemma42=q42,
        K0=K0, alpha_exp=alpha_exp, t0_exp=t0_exp, K1=K1, K2=K2, K=K,
    )


def chain_functions(H: float, q: float, c: float, cprime: float, *,
                    phi: Optional[Callable[[float], float]] = None) -> dict:
    """Callable companions of chain_constants: theta (ring route), its
    uniform-continuity rescaling psi(t) = 3c' theta(2t), theta0, and the
    composite relativity control of the reverse route."""
    ring_M, alpha_ring, beta = ring_constants(H, c, q)
    if phi is None:
        phi = lambda t: t
    phi_scaled = lambda t: phi(c * t)

    def theta(t: float) -> float:
        return theta_ring(t, c, cprime, ring_M, alpha_ring, beta)

    def psi(t: float) -> float:
        return 3.0 * cprime * theta(2.0 * t)

    return {
        "theta": theta,
        "theta_inverse": lambda y: theta_ring_inverse(y, c, cprime, ring_M, alpha_ring, beta),
        "psi": psi,
        "theta0": lambda t: theta0_relative(t, c),
        "theta_rel": relative_control_from_semisolid(phi_scaled, C0),
    }


def _bisect_inverse(fn: Callable[[float], float], y: float,
                    hi: float = 1e6, iters: int = 200) -> float:
    lo = 0.0
    if fn(hi) < y:
        raise ConfigurationError("cannot invert control function: target too large")
    for _ in range(iters):
        mid = (lo + hi) / 2.0
        if fn(mid) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0
