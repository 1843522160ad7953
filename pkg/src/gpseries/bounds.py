"""Explicit convergence-radius machinery for the power series.

Two independent estimates are produced:

* a rigorous one: every constant in the inductive bound chain
  (mu1, mu2, C1, C2, beta, gamma, delta) is evaluated explicitly, the
  smallest admissible growth exponent alpha is solved for, and
  nu_star = exp(-alpha) is a certified lower bound on the radius;
* an empirical one: the observed geometric growth of |e_n| (median of
  successive ratios over the better-converged tail of the ratio list).

The C1/C2 constants come in a "lemma" flavor (the crude values a short proof
gives, C1 = 4*4.7^2 = 88.36, C2 = 2.70) and a "sharp" flavor (scanned maxima
of the actual index sums, C1 = 10.45, C2 = 1.52).  The scanned sums
J(n) and I(n) are reproduced here by direct summation so the sharp values
can be re-derived rather than trusted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple

import numpy as np

C1_LEMMA = 4.0 * 4.7 ** 2      # = 88.36
C1_SHARP = 10.45
C2_LEMMA = 2.70
C2_SHARP = 1.52


def mu_constants(Gamma: float, Lambda: float, e0: float, d: int = 1,
                 C6d: float = 1.0) -> Tuple[float, float]:
    """The two n-independent constants of the inductive step.

    mu1 = [1/Lambda^2 + 1/Lambda + (e0-Gamma)/Lambda^2]^{1/2}
    mu2 = C6d * Lambda^{-(1-rho)} * [1/Lambda + (e0-Gamma)/Lambda^2]^{rho/2}

    with rho = d/2 - d/6 (the Gagliardo-Nirenberg exponent at p = 6).
    """
    if Lambda <= 0:
        raise ValueError(f"Lambda must be positive, got {Lambda}")
    Gamma = float(Gamma)
    Lambda = float(Lambda)
    e0 = float(e0)
    rho = d / 2.0 - d / 6.0
    core = 1.0 / Lambda + (e0 - Gamma) / Lambda ** 2
    mu1 = math.sqrt(1.0 / Lambda ** 2 + core)
    mu2 = C6d * Lambda ** (-(1.0 - rho)) * core ** (rho / 2.0)
    return mu1, mu2


# --------------------------------------------------------------------------
# index sums behind C1 and C2 (direct summation throughout)
# --------------------------------------------------------------------------

def appendix_J(n: int) -> float:
    """J(n) = sum_{m=1}^{n-1} 1/((m+1)^2 (n-m+1)^2)."""
    if n <= 2:
        raise ValueError(f"J(n) needs n > 2, got {n}")
    m = np.arange(1, n, dtype=float)
    return float(np.sum(1.0 / ((m + 1.0) ** 2 * (n - m + 1.0) ** 2)))


def appendix_J_scan(n_max: int) -> Tuple[int, float]:
    """(argmax, max) of J(n)*(n+1)^2 over 3 <= n <= n_max."""
    inv_sq = 1.0 / np.arange(1.0, n_max + 2.0) ** 2   # inv_sq[i] = 1/(i+1)^2
    best_n, best = 0, -1.0
    for n in range(3, n_max + 1):
        J = float(inv_sq[1:n] @ inv_sq[n - 1:0:-1])
        g = J * (n + 1) ** 2
        if g > best:
            best_n, best = n, g
    return best_n, best


def appendix_f(n: int) -> float:
    """The closed-form majorant f(n) = 2(n^2 - 1 + 2n ln n) / ((n+1) n)."""
    return 2.0 * (n * n - 1.0 + 2.0 * n * math.log(n)) / ((n + 1.0) * n)


def appendix_bound_ok(n_max: int) -> bool:
    """Check J(n)(n+1)^2 <= min(f(n), 2.70) for every 3 <= n <= n_max."""
    inv_sq = 1.0 / np.arange(1.0, n_max + 2.0) ** 2
    for n in range(3, n_max + 1):
        g = float(inv_sq[1:n] @ inv_sq[n - 1:0:-1]) * (n + 1) ** 2
        if g > min(appendix_f(n), 2.70):
            return False
    return True


def _inner_S(t: int) -> float:
    """S(t) = sum_{l=0}^{t-1} 1/((l+1)^2 (t-l)^2)."""
    l = np.arange(0, t, dtype=float)
    return float(np.sum(1.0 / ((l + 1.0) ** 2 * (t - l) ** 2)))


def triple_sum_I(n: int) -> float:
    """I(n) = sum_{m=0}^{n-1} (m+1)^{-2} sum_{l=0}^{n-1-m} 1/((l+1)^2 (n-m-l)^2)."""
    if n < 1:
        raise ValueError(f"I(n) needs n >= 1, got {n}")
    total = 0.0
    for m in range(n):
        total += _inner_S(n - m) / (m + 1.0) ** 2
    return total


def triple_sum_I_scan(n_max: int) -> Tuple[int, float]:
    """(argmax, max) of I(n)*(n+1)^2 over 1 <= n <= n_max.

    Uses I(n) = sum_{t=1}^{n} S(t)/(n-t+1)^2 so the double scan stays
    O(n_max^2) instead of O(n_max^3); still plain direct summation.
    """
    S = np.empty(n_max + 1)
    S[0] = 0.0
    inv_sq = 1.0 / np.arange(1.0, n_max + 1.0) ** 2
    for t in range(1, n_max + 1):
        S[t] = float(inv_sq[:t] @ inv_sq[t - 1::-1])
    best_n, best = 0, -1.0
    for n in range(1, n_max + 1):
        I = float(S[1:n + 1] @ inv_sq[n - 1::-1])
        g = I * (n + 1) ** 2
        if g > best:
            best_n, best = n, g
    return best_n, best


# --------------------------------------------------------------------------
# the full chain
# --------------------------------------------------------------------------

@dataclass
class ConvergenceReport:
    Gamma: float
    Lambda: float
    d: int
    rho: float
    C6d: float
    mu1: float
    mu2: float
    C1: float
    C2: float
    beta: float
    gamma: float
    delta: float
    alpha: float
    nu_star: float
    empirical_radius: float
    empirical_growth_constant: float


class RadiusEstimate(NamedTuple):
    growth_constant: float
    radius: float
    root_estimate: float


def empirical_radius(e: Sequence[float]) -> RadiusEstimate:
    """Radius estimate from the observed growth of |e_n|.

    growth_constant is the median of |e_{n+1}|/|e_n| over the last half of
    the ratio list (early ratios are pre-asymptotic), radius its reciprocal.
    root_estimate is the alternate estimator |e_N|^{1/N} at the largest
    available order.  Signs are discarded: the coefficients alternate, so
    only |e_n| carries growth information.
    """
    arr = np.abs(np.asarray([float(x) for x in e]))
    if len(arr) < 6 or np.any(arr == 0.0):
        raise ValueError(
            f"need at least 6 nonzero coefficients, got {len(arr)} with "
            f"{int(np.sum(arr == 0.0))} zero(s)")
    ratios = arr[1:] / arr[:-1]
    growth = float(np.median(ratios[len(ratios) // 2:]))
    N = len(arr) - 1
    return RadiusEstimate(growth_constant=growth, radius=1.0 / growth,
                          root_estimate=float(arr[-1] ** (1.0 / N)))


def constant_chain(state, C1_mode: str = "sharp", C2_mode: str = "sharp",
                   d: int = 1, C6d: float = 1.0,
                   conservative_gamma: bool = False) -> ConvergenceReport:
    """Evaluate every constant of the bound chain and solve for nu_star.

    The inductive bounds b_n, c_n <= gamma e^{alpha n} (n+1)^{-2} and
    d_n <= delta gamma e^{alpha n} (n+1)^{-2} close as soon as

        e^{-alpha} * Lambda^{-1} * (2 C1 delta^3 / gamma + C2 beta) <= 1
        e^{-alpha} * mu2 * (2 C1 delta^2 + C2 beta gamma / delta)   <= 1

    so the minimal admissible alpha is the larger of the two logarithms,
    clamped below at 0 (the chain needs alpha > 0).  Then nu_star =
    exp(-alpha) is a rigorous lower bound for the convergence radius.

    gamma uses gamma = max(4 c1, 1); conservative_gamma=True applies an
    extra factor 4 (gamma = max(16 c1, 1)) for the stricter reading of the
    seed inequality.
    """
    c1_map = {"lemma": C1_LEMMA, "sharp": C1_SHARP}
    c2_map = {"lemma": C2_LEMMA, "sharp": C2_SHARP}
    if C1_mode not in c1_map:
        raise ValueError(f"C1_mode must be 'lemma' or 'sharp', got {C1_mode!r}")
    if C2_mode not in c2_map:
        raise ValueError(f"C2_mode must be 'lemma' or 'sharp', got {C2_mode!r}")
    if state.order < 1:
        raise ValueError("constant_chain needs the series through order 1 "
                         "(b1, c1)")
    C1 = c1_map[C1_mode]
    C2 = c2_map[C2_mode]
    spec = state.spec
    Gamma = float(spec.Gamma)
    Lambda = float(spec.gap_Lambda)
    e0 = float(spec.e0)
    mu1, mu2 = mu_constants(Gamma, Lambda, e0, d, C6d)
    rho = d / 2.0 - d / 6.0

    b1 = float(state.b[1])
    c1 = float(state.c[1])
    d0 = float(state.d[0])
    delta = max(1.0, d0)
    seed = 16.0 * c1 if conservative_gamma else 4.0 * c1
    gamma = max(seed, 1.0)
    beta = max(4.0 * b1, C1 * delta ** 3)

    arg1 = (2.0 * C1 * delta ** 3 / gamma + C2 * beta) / Lambda
    arg2 = mu2 * (2.0 * C1 * delta ** 2 + C2 * beta * gamma / delta)
    if not (math.isfinite(arg1) and math.isfinite(arg2)):
        raise ValueError(f"non-finite chain constants: {arg1}, {arg2}")
    alpha = max(math.log(arg1), math.log(arg2), 0.0)
    nu_star = math.exp(-alpha)

    try:
        emp = empirical_radius(state.e)
        emp_radius, emp_growth = emp.radius, emp.growth_constant
    except ValueError:
        emp_radius, emp_growth = float("nan"), float("nan")

    return ConvergenceReport(
        Gamma=Gamma, Lambda=Lambda, d=d, rho=rho, C6d=C6d,
        mu1=mu1, mu2=mu2, C1=C1, C2=C2,
        beta=beta, gamma=gamma, delta=delta,
        alpha=alpha, nu_star=nu_star,
        empirical_radius=emp_radius,
        empirical_growth_constant=emp_growth)
