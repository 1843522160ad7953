"""Exact stationary states of the cubic problem on the well, via Jacobi sn.

On (-pi, pi) with Dirichlet conditions, -psi'' + nu psi^3 = E psi is solved
exactly by psi(x) = chi * sn[zeta (x + pi), k].  Matching the boundary
condition quantizes zeta = K(k) m / pi (m = number of arches), and the
prescribed L2 norm fixes the modulus through

    defocusing (nu > 0):  K(k) [K(k) - E(k)]     = nu pi ||psi||^2 / (4 m^2)
    focusing  (nu < 0):   K(ik) [K(ik) - E(ik)]  = nu pi ||psi||^2 / (4 m^2)

The left sides are monotone (increasing / decreasing), so plain bisection is
used.  The focusing branch needs an imaginary modulus; it is evaluated
through the real transformation

    k1 = kappa/sqrt(1+kappa^2),  k1' = 1/sqrt(1+kappa^2),
    K(i kappa) = k1' K(k1),      E(i kappa) = E(k1)/k1',
    sn(x, i kappa) = k1' sd(x sqrt(1+kappa^2), k1),

so no complex arithmetic appears anywhere in this module.  Everything here
is float64: the role of this module is an *independent* check of the series
engine at 1e-6..1e-8 tolerances, not an extended-precision computation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import simpson

_AGM_TOL = 1e-15


def _agm_sequence(k: float):
    """AGM triples (a_i, b_i, c_i), c_0 = k, run until a and b coincide."""
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    seq = [(a, b, c)]
    while abs(a - b) > _AGM_TOL:
        a, b, c = (a + b) / 2.0, math.sqrt(a * b), (a - b) / 2.0
        seq.append((a, b, c))
    return seq


def elliptic_KE(k: float):
    """Complete elliptic integrals (K(k), E(k)) by the AGM iteration."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must satisfy 0 <= k < 1, got {k}")
    seq = _agm_sequence(k)
    K = math.pi / (2.0 * seq[-1][0])
    s = sum(2.0 ** (i - 1) * c * c for i, (_, _, c) in enumerate(seq))
    return K, K * (1.0 - s)


def elliptic_KE_imag(kappa: float):
    """(K(i kappa), E(i kappa)) through the real-modulus transformation."""
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    root = math.sqrt(1.0 + kappa * kappa)
    k1 = kappa / root
    K1, E1 = elliptic_KE(k1)
    return K1 / root, E1 * root


def _jacobi_amplitude(x, k: float):
    """Jacobi amplitude am(x, k) by the descending-Landen back-recursion."""
    seq = _agm_sequence(k)
    n = len(seq) - 1
    phi = 2.0 ** n * seq[-1][0] * np.asarray(x, dtype=float)
    for i in range(n, 0, -1):
        a_i, _, c_i = seq[i]
        phi = 0.5 * (phi + np.arcsin(np.clip((c_i / a_i) * np.sin(phi),
                                             -1.0, 1.0)))
    return phi


def jacobi_sn(x, k: float):
    return np.sin(_jacobi_amplitude(x, k))


def jacobi_cn(x, k: float):
    return np.cos(_jacobi_amplitude(x, k))


def jacobi_dn(x, k: float):
    """dn = sqrt(1 - k^2 sn^2): exact and branch-free for real arguments,
    where dn stays in [k', 1] (the amplitude-chain formula for dn picks the
    wrong branch beyond the first quarter-period)."""
    sn = np.sin(_jacobi_amplitude(x, k))
    return np.sqrt(1.0 - (k * sn) * (k * sn))


def jacobi_sd(x, k: float):
    sn = np.sin(_jacobi_amplitude(x, k))
    return sn / np.sqrt(1.0 - (k * sn) * (k * sn))


def jacobi_sn_imag(x, kappa: float):
    """sn(x, i kappa) = k1' sd(x sqrt(1+kappa^2), k1), all real."""
    root = math.sqrt(1.0 + kappa * kappa)
    return jacobi_sd(np.asarray(x, dtype=float) * root, kappa / root) / root


@dataclass
class EllipticSolution:
    branch: str                  # "defocusing" | "focusing"
    m: int
    k: Optional[float]           # real modulus (defocusing)
    kappa: Optional[float]       # imaginary-modulus parameter (focusing)
    zeta: float
    chi: float
    x0: float
    E: float
    target_norm2: float


def _quantization_defocusing(k: float) -> float:
    K, E = elliptic_KE(k)
    return K * (K - E)


def _quantization_focusing(kappa: float) -> float:
    K, E = elliptic_KE_imag(kappa)
    return K * (K - E)


def solve_defocusing(nu: float, norm2: float, m: int = 1) -> EllipticSolution:
    """Exact solution for nu > 0 with prescribed ||psi||^2 = norm2."""
    if nu <= 0:
        raise ValueError(f"defocusing branch needs nu > 0, got {nu}")
    if norm2 <= 0:
        raise ValueError(f"norm2 must be positive, got {norm2}")
    target = nu * math.pi * norm2 / (4.0 * m * m)
    lo, hi = 0.0, 0.5
    while _quantization_defocusing(hi) < target:
        hi = 0.5 * (1.0 + hi)
        if 1.0 - hi < 1e-15:
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g = _quantization_defocusing(mid)
        if abs(g - target) < 1e-13:
            lo = hi = mid
            break
        if g < target:
            lo = mid
        else:
            hi = mid
    k = 0.5 * (lo + hi)
    K, E = elliptic_KE(k)
    zeta = K * m / math.pi
    energy = zeta * zeta * (1.0 + k * k)
    chi = math.sqrt(K * k * k * norm2 / (2.0 * math.pi * (K - E)))
    return EllipticSolution(branch="defocusing", m=m, k=k, kappa=None,
                            zeta=zeta, chi=chi, x0=-math.pi, E=energy,
                            target_norm2=norm2)


def solve_focusing(nu: float, norm2: float, m: int = 1) -> EllipticSolution:
    """Exact solution for nu < 0; kappa found on an expanding bracket."""
    if nu >= 0:
        raise ValueError(f"focusing branch needs nu < 0, got {nu}")
    if norm2 <= 0:
        raise ValueError(f"norm2 must be positive, got {norm2}")
    target = nu * math.pi * norm2 / (4.0 * m * m)
    lo, hi = 0.0, 1.0
    while _quantization_focusing(hi) > target:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g = _quantization_focusing(mid)
        if abs(g - target) < 1e-13:
            lo = hi = mid
            break
        if g > target:
            lo = mid
        else:
            hi = mid
    kappa = 0.5 * (lo + hi)
    K, E = elliptic_KE_imag(kappa)
    zeta = K * m / math.pi
    energy = zeta * zeta * (1.0 - kappa * kappa)
    chi = math.sqrt(-2.0 * zeta * zeta * kappa * kappa / nu)
    return EllipticSolution(branch="focusing", m=m, k=None, kappa=kappa,
                            zeta=zeta, chi=chi, x0=-math.pi, E=energy,
                            target_norm2=norm2)


class ReconstructionCheck(NamedTuple):
    x: np.ndarray
    psi: np.ndarray
    residual_norm: float
    norm2_check: float


def reconstruct_and_check(sol: EllipticSolution, nu: float,
                          n_grid: int = 4097) -> ReconstructionCheck:
    """Sample psi, re-measure its norm, and check the ODE residual.

    The norm must match target_norm2 to 1e-8 relative and the L2 norm of
    -psi'' + nu psi^3 - E psi (psi'' by 4th-order central differences) must
    stay below 1e-6; a violation flags a modulus-evaluation bug.
    """
    x = np.linspace(-math.pi, math.pi, n_grid)
    arg = sol.zeta * (x - sol.x0)
    if sol.branch == "defocusing":
        psi = sol.chi * jacobi_sn(arg, sol.k)
    else:
        psi = sol.chi * jacobi_sn_imag(arg, sol.kappa)

    norm2 = float(simpson(psi * psi, x=x))
    if abs(norm2 - sol.target_norm2) > 1e-8 * sol.target_norm2:
        raise RuntimeError(
            f"norm round-trip failed: measured {norm2!r} vs target "
            f"{sol.target_norm2!r}")

    h = x[1] - x[0]
    d2 = (-psi[:-4] + 16.0 * psi[1:-3] - 30.0 * psi[2:-2]
          + 16.0 * psi[3:-1] - psi[4:]) / (12.0 * h * h)
    inner = psi[2:-2]
    r = -d2 + nu * inner ** 3 - sol.E * inner
    residual = float(math.sqrt(simpson(r * r, x=x[2:-2])))
    if residual > 1e-6:
        raise RuntimeError(
            f"ODE residual {residual:.3e} > 1e-6: modulus evaluation bug")
    return ReconstructionCheck(x=x, psi=psi, residual_norm=residual,
                               norm2_check=norm2)
