"""Function representation and the two linear backends (well, oscillator).

A :class:`FieldFunction` is stored coefficient-first: ``coeffs[j-1]`` is the
component on the j-th eigenfunction (j = 1..N2) of the backend, and the
quadrature-grid samples are regenerated from the coefficients, so every
function handled here lies in the truncated span by construction.  All real
arithmetic is done in ``numpy.longdouble``: the high-order residual columns
cancel through ~18 significant digits and float64 is not enough to expose
them cleanly.

Backends:

* ``well_spectrum(N2)`` -- Dirichlet Laplacian on (-pi, pi); lambda_j = j^2/4,
  eigenfunctions pi^{-1/2} cos(jx/2) (odd j) / pi^{-1/2} sin(jx/2) (even j).
* ``hermite_spectrum(N2, L, nodes)`` -- harmonic oscillator; lambda_j = 2j-1,
  normalized Hermite functions by the stable three-term recurrence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .quadrature import QuadratureRule, composite_gauss_legendre

# pi to long-double precision (np.pi is only a float64)
PI = np.longdouble("3.14159265358979323846264338327950288")

Scalar = Union[float, complex, np.longdouble]


@dataclass
class FieldFunction:
    """Real (or complex) function on the backend domain, coefficient-first."""

    coeffs: np.ndarray
    grid_values: np.ndarray
    basis_id: str
    spec: "LinearSpectrum"

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.coeffs)

    def __add__(self, other: "FieldFunction") -> "FieldFunction":
        self._check_same_basis(other)
        return FieldFunction(self.coeffs + other.coeffs,
                             self.grid_values + other.grid_values,
                             self.basis_id, self.spec)

    def __sub__(self, other: "FieldFunction") -> "FieldFunction":
        self._check_same_basis(other)
        return FieldFunction(self.coeffs - other.coeffs,
                             self.grid_values - other.grid_values,
                             self.basis_id, self.spec)

    def __mul__(self, a: Scalar) -> "FieldFunction":
        return FieldFunction(self.coeffs * a, self.grid_values * a,
                             self.basis_id, self.spec)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldFunction":
        return self * np.longdouble(-1.0)

    def inner(self, other: "FieldFunction") -> np.longdouble:
        """<self, other> in the Parseval (coefficient) form."""
        self._check_same_basis(other)
        if self.is_complex or other.is_complex:
            return np.conj(self.coeffs) @ other.coeffs
        return self.coeffs @ other.coeffs

    def norm2(self) -> np.longdouble:
        """L2 norm from the coefficients."""
        if self.is_complex:
            return np.sqrt(np.real(np.conj(self.coeffs) @ self.coeffs))
        return np.sqrt(self.coeffs @ self.coeffs)

    def _check_same_basis(self, other: "FieldFunction") -> None:
        if self.basis_id != other.basis_id:
            raise ValueError(
                f"mixed backends: {self.basis_id!r} vs {other.basis_id!r}")


class LinearSpectrum:
    """A linear backend: ordered eigenvalues, eigenfunctions on the grid,
    ground pair (e0, phi0), spectral gap Lambda and potential bound Gamma."""

    def __init__(self, basis_id: str, lam: np.ndarray, Q: np.ndarray,
                 quad: QuadratureRule, Gamma: float):
        self.basis_id = basis_id
        self.lam = lam                      # (N2,) long double
        self.Q = Q                          # (N2, nnodes) long double
        self.quad = quad
        self.truncation_N2 = len(lam)
        self.Gamma = np.longdouble(Gamma)
        self.domain = quad.interval
        self.e0 = lam[0]
        self.gap_Lambda = lam[1] - lam[0]
        coeffs = np.zeros(self.truncation_N2, dtype=np.longdouble)
        coeffs[0] = 1.0
        self.phi0 = self.from_coeffs(coeffs)

    # -- constructors ------------------------------------------------------
    def from_coeffs(self, coeffs: np.ndarray) -> FieldFunction:
        grid = self.Q.T @ coeffs
        return FieldFunction(coeffs, grid, self.basis_id, self)

    def zero(self) -> FieldFunction:
        return self.from_coeffs(np.zeros(self.truncation_N2, dtype=np.longdouble))

    def project(self, grid_values: np.ndarray) -> FieldFunction:
        """Orthogonal projection of grid samples onto the first N2 modes."""
        coeffs = self.Q @ (self.quad.weights * grid_values)
        return self.from_coeffs(coeffs)

    # -- 1-based accessors (j = 1 is the ground state) ---------------------
    def eigenvalue(self, j: int) -> np.longdouble:
        if not 1 <= j <= self.truncation_N2:
            raise ValueError(f"mode index {j} outside 1..{self.truncation_N2}")
        return self.lam[j - 1]

    def eigenfunction(self, j: int) -> FieldFunction:
        if not 1 <= j <= self.truncation_N2:
            raise ValueError(f"mode index {j} outside 1..{self.truncation_N2}")
        coeffs = np.zeros(self.truncation_N2, dtype=np.longdouble)
        coeffs[j - 1] = 1.0
        return self.from_coeffs(coeffs)


def well_spectrum(N2: int) -> LinearSpectrum:
    """Infinite well on (-pi, pi) with Dirichlet conditions."""
    if N2 < 8:
        raise ValueError(f"N2={N2} too small for a useful resolvent (need >= 8)")
    quad = composite_gauss_legendre(-PI, PI, panels=64, nodes_per_panel=16)
    j = np.arange(1, N2 + 1, dtype=np.longdouble)
    lam = j * j / 4.0
    x = quad.nodes
    Q = np.empty((N2, len(x)), dtype=np.longdouble)
    invsqrtpi = 1.0 / np.sqrt(PI)
    for ji in range(1, N2 + 1):
        if ji % 2 == 1:
            Q[ji - 1] = invsqrtpi * np.cos(ji * x / 2.0)
        else:
            Q[ji - 1] = invsqrtpi * np.sin(ji * x / 2.0)
    return LinearSpectrum(f"well[N2={N2}]", lam, Q, quad, Gamma=0.0)


def _hermite_rows(n_rows: int, x: np.ndarray) -> np.ndarray:
    """First n_rows normalized Hermite functions h_0..h_{n_rows-1} at x.

    Uses h_{j+1} = x sqrt(2/(j+1)) h_j - sqrt(j/(j+1)) h_{j-1}; the raw
    polynomial-times-Gaussian form overflows near j ~ 60.
    """
    H = np.empty((n_rows, len(x)), dtype=np.longdouble)
    H[0] = PI ** np.longdouble(-0.25) * np.exp(-x * x / 2.0)
    if n_rows > 1:
        H[1] = np.sqrt(np.longdouble(2.0)) * x * H[0]
    for jj in range(1, n_rows - 1):
        H[jj + 1] = (x * np.sqrt(np.longdouble(2.0) / (jj + 1)) * H[jj]
                     - np.sqrt(np.longdouble(jj) / (jj + 1)) * H[jj - 1])
    return H


def hermite_spectrum(N2: int, L: float = 16.0, nodes: int = 2048) -> LinearSpectrum:
    """Harmonic oscillator on [-L, L] with composite Gauss-Legendre quadrature.

    L must be far enough into the Gaussian tail that the last kept mode is
    negligible at the cut: q_N2(+-L)^2 < 1e-14 is enforced (for N2 = 60 this
    needs L >~ 14; the default is 16).
    """
    if N2 < 8:
        raise ValueError(f"N2={N2} too small for a useful resolvent (need >= 8)")
    edge = _hermite_rows(N2, np.array([-np.longdouble(L), np.longdouble(L)]))
    if float(np.max(edge[N2 - 1] ** 2)) >= 1e-14:
        raise ValueError(
            f"L={L} too small: q_{N2}(+-L)^2 = {float(np.max(edge[N2-1]**2)):.3e} "
            f">= 1e-14; enlarge the box")
    panels = -(-nodes // 16)
    quad = composite_gauss_legendre(-np.longdouble(L), np.longdouble(L),
                                    panels=panels, nodes_per_panel=16)
    Q = _hermite_rows(N2, quad.nodes)
    gram = (Q * quad.weights) @ Q.T
    err = float(np.max(np.abs(gram - np.eye(N2))))
    if err > 1e-8:
        raise RuntimeError(
            f"quadrature under-resolved: orthonormality defect {err:.3e} > 1e-8")
    j = np.arange(1, N2 + 1, dtype=np.longdouble)
    lam = 2.0 * j - 1.0
    return LinearSpectrum(f"hermite[N2={N2},L={L},nodes={16*panels}]", lam, Q,
                          quad, Gamma=0.0)


# --------------------------------------------------------------------------
# pointwise (cubic) products
# --------------------------------------------------------------------------

def _is_odd_cos(f: FieldFunction) -> bool:
    """True when f lives entirely on the odd-j (cos((2k+1)x/2)) well modes."""
    return (not f.is_complex) and bool(np.all(f.coeffs[1::2] == 0.0))


def _well_triple_exact(f: FieldFunction, g: FieldFunction,
                       h: FieldFunction) -> np.ndarray:
    """Exact cosine-algebra product of three odd-cos well functions.

    With C_k = pi^{-1/2} cos((2k+1)x/2):
        C_a C_b C_c = (1/(4 pi)) * [C_{a+b+c+1} + C_{fold(a+b-c)}
                                    + C_{fold(a-b+c)} + C_{fold(-a+b+c)}]
    where fold(K) = K for K >= 0 and -K-1 otherwise.  The result is then
    truncated (projected) to the first N2 modes.
    """
    N2 = f.spec.truncation_N2
    fa = f.coeffs[0::2]
    gb = g.coeffs[0::2]
    hc = h.coeffs[0::2]
    ia = np.nonzero(fa)[0]
    ib = np.nonzero(gb)[0]
    ic = np.nonzero(hc)[0]
    kmax = (ia.max() if len(ia) else 0) + (ib.max() if len(ib) else 0) \
        + (ic.max() if len(ic) else 0) + 1
    out_k = np.zeros(kmax + 1, dtype=np.longdouble)
    quarter = 1.0 / (4.0 * PI)
    for a in ia:
        wa = fa[a] * quarter
        for b in ib:
            wab = wa * gb[b]
            for c in ic:
                w = wab * hc[c]
                k1 = a + b + c + 1
                k2 = a + b - c
                k3 = a - b + c
                k4 = -a + b + c
                out_k[k1] += w
                out_k[k2 if k2 >= 0 else -k2 - 1] += w
                out_k[k3 if k3 >= 0 else -k3 - 1] += w
                out_k[k4 if k4 >= 0 else -k4 - 1] += w
    coeffs = np.zeros(N2, dtype=np.longdouble)
    n_keep = min(len(out_k), (N2 + 1) // 2)
    coeffs[0:2 * n_keep:2] = out_k[:n_keep]
    return coeffs


def triple_product(f: FieldFunction, g: FieldFunction,
                   h: FieldFunction) -> FieldFunction:
    """Pointwise product f*g*h projected onto the first N2 modes.

    On the well backend, products of odd half-integer cosines stay in that
    family, so the product is also computed exactly by cosine algebra and the
    two paths are required to agree to 1e-10 (a strong self-check on both the
    quadrature and the index bookkeeping).
    """
    f._check_same_basis(g)
    f._check_same_basis(h)
    spec = f.spec
    prod_grid = f.grid_values * g.grid_values * h.grid_values
    if np.iscomplexobj(prod_grid):
        coeffs = spec.Q @ (spec.quad.weights * prod_grid)
        return FieldFunction(coeffs, spec.Q.T @ coeffs, f.basis_id, spec)
    grid_path = spec.Q @ (spec.quad.weights * prod_grid)
    if f.basis_id.startswith("well") and _is_odd_cos(f) and _is_odd_cos(g) \
            and _is_odd_cos(h):
        exact = _well_triple_exact(f, g, h)
        gap = float(np.max(np.abs(exact - grid_path)))
        if gap > 1e-10:
            raise RuntimeError(
                f"well triple product: exact and quadrature paths disagree "
                f"by {gap:.3e} (> 1e-10)")
        return spec.from_coeffs(exact)
    return spec.from_coeffs(grid_path)


def resolvent_apply(spec: LinearSpectrum, phi: FieldFunction) -> FieldFunction:
    """[H - e0]^{-1} phi on span{q_2..q_N2}; requires phi orthogonal to phi0.

    The orthogonality precondition (|<phi, phi0>| <= 1e-8 ||phi||) is how a
    corrupted recursion shows up first, so its violation is reported with the
    measured overlap.
    """
    overlap = abs(float(phi.inner(spec.phi0)))
    nrm = float(phi.norm2())
    if overlap > 1e-8 * nrm:
        raise ValueError(
            f"resolvent input not orthogonal to phi0: |<phi,phi0>| = "
            f"{overlap:.3e} > 1e-8 * ||phi|| = {1e-8 * nrm:.3e}")
    den = spec.lam - spec.e0
    out = np.empty_like(phi.coeffs)
    out[0] = 0.0
    out[1:] = phi.coeffs[1:] / den[1:]
    return spec.from_coeffs(out) if not phi.is_complex else FieldFunction(
        out, spec.Q.T @ out, phi.basis_id, spec)


def lp_norm(f: FieldFunction, p) -> float:
    """Quadrature L^p norm for p in {2, 3, 6} or the grid max for p = inf."""
    absf = np.abs(f.grid_values)
    if p == np.inf or p == "inf":
        return float(np.max(absf))
    if p not in (2, 3, 6):
        raise ValueError(f"unsupported p={p}; use 2, 3, 6 or inf")
    return float((f.spec.quad.weights @ absf ** p) ** (1.0 / np.longdouble(p)))
