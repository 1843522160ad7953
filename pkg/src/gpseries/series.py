"""Order-by-order power-series construction for the cubic eigenproblem.

The stationary problem H psi + nu |psi|^2 psi = E psi is expanded around the
linear ground pair (e0, phi0):

    E = sum_n nu^n e_n,   psi = sum_n nu^n phi_n.

Matching powers of nu gives, at order n >= 1,

    e_n     = <phi0, v_{n-1}> / ||phi0||^2,
    w_n     = e_n phi0 + u_n - v_{n-1},          (called varphi_n below)
    phi_n   = [H - e0]^{-1} w_n,

with the cubic convolution v_t = sum_{m+l+j=t} phi_m phi_l phi_j and the
energy convolution u_n = sum_{m=1}^{n-1} e_m phi_{n-m} (u_1 = 0).  The choice
of e_n makes w_n orthogonal to phi0, which is asserted at every order: a
violation means the convolution bookkeeping is corrupted, not a tolerance
issue, so it is a hard error.

Residuals are assembled in the numerically stable grouping

    r_N = sum_{n=1}^{N} nu^n varphi_n  -  (E_N - e0) psi_N  +  nu P(psi_N^3)

(using H phi_n = e0 phi_n + varphi_n exactly on the truncated span), which
avoids forming H psi - E psi as a difference of O(1) quantities and keeps the
deep cancellations (residuals down to 1e-13 at nu = 0.1) resolvable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .spectral import FieldFunction, LinearSpectrum, resolvent_apply, \
    lp_norm, triple_product

Scalar = Union[float, complex, np.longdouble]


@dataclass
class SeriesState:
    """Coefficients of the series through the highest computed order.

    Lists are indexed by order: ``e[n]``, ``phi[n]`` for n = 0..N;
    ``varphi[n]`` and ``u[n]`` for n = 1..N (slot 0 is None); ``v[t]`` for
    t = 0..N-1.  ``b[n] = |e_n|``, ``c[n] = ||phi_n||_2``,
    ``d[n] = ||phi_n||_6`` feed the convergence-constant chain.
    """

    spec: LinearSpectrum
    e: list
    phi: list
    v: list
    u: list
    varphi: list
    b: list
    c: list
    d: list

    @property
    def order(self) -> int:
        return len(self.e) - 1


def series_init(spec: LinearSpectrum) -> SeriesState:
    """Order-0 state seeded at the linear ground pair (e0, phi0)."""
    nrm = float(spec.phi0.norm2())
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(
            f"phi0 not normalized: ||phi0|| = {nrm!r} (the constant chain "
            f"assumes ||phi0|| = 1)")
    return SeriesState(
        spec=spec,
        e=[spec.e0],
        phi=[spec.phi0],
        v=[],
        u=[None],
        varphi=[None],
        b=[abs(spec.e0)],
        c=[np.longdouble(nrm)],
        d=[np.longdouble(lp_norm(spec.phi0, 6))],
    )


def next_order(state: SeriesState) -> SeriesState:
    """Extend the series by one order; returns a new state."""
    spec = state.spec
    n = state.order + 1
    t = n - 1

    v_t = spec.zero()
    for m in range(t + 1):
        for l in range(t + 1 - m):
            v_t = v_t + triple_product(state.phi[m], state.phi[l],
                                       state.phi[t - m - l])

    u_n = spec.zero()
    for m in range(1, n):
        u_n = u_n + state.e[m] * state.phi[n - m]

    # normalization forces the denominator to 1, but keep the literal form
    e_n = spec.phi0.inner(v_t) / spec.phi0.inner(spec.phi0)

    w = e_n * spec.phi0 + u_n - v_t
    overlap = abs(float(w.inner(spec.phi0)))
    wnorm = float(w.norm2())
    if overlap > 1e-10 * max(wnorm, 1e-300):
        raise RuntimeError(
            f"order {n}: <varphi_n, phi0> = {overlap:.3e} exceeds "
            f"1e-10 * ||varphi_n|| = {1e-10 * wnorm:.3e}; recursion corrupted")
    wc = w.coeffs.copy()
    wc[0] = 0.0           # exact by construction of e_n; drop the fp residue
    w = spec.from_coeffs(wc)

    phi_n = resolvent_apply(spec, w)

    return SeriesState(
        spec=spec,
        e=state.e + [e_n],
        phi=state.phi + [phi_n],
        v=state.v + [v_t],
        u=state.u + [u_n],
        varphi=state.varphi + [w],
        b=state.b + [abs(e_n)],
        c=state.c + [phi_n.norm2()],
        d=state.d + [np.longdouble(lp_norm(phi_n, 6))],
    )


def run_series(spec: LinearSpectrum, N: int) -> SeriesState:
    """Convenience: series_init followed by N next_order steps."""
    state = series_init(spec)
    for _ in range(N):
        state = next_order(state)
    return state


@dataclass
class PerturbativeSolution:
    nu: Scalar
    N: int
    E_N: Scalar
    psi_N: FieldFunction
    psi_norm: float
    residual_norm: float


def _horner_scalar(coeffs: Sequence, nu) -> Scalar:
    acc = coeffs[-1] * (nu * 0 + 1)
    for a in coeffs[-2::-1]:
        acc = acc * nu + a
    return acc


def _horner_coeffs(fns: Sequence[FieldFunction], nu, spec: LinearSpectrum):
    """sum_n nu^n fns[n] as a coefficient vector (complex if nu is)."""
    if isinstance(nu, complex) and nu.imag != 0.0:
        acc = fns[-1].coeffs.astype(np.clongdouble)
    else:
        acc = fns[-1].coeffs.copy()
    for f in fns[-2::-1]:
        acc = acc * nu + f.coeffs
    return acc


def _as_internal(nu):
    """Promote nu to long-double (or complex long-double) precision."""
    if isinstance(nu, complex) and nu.imag != 0.0:
        return np.clongdouble(nu)
    return np.longdouble(np.real(nu))


def partial_sums(state: SeriesState, nu: Scalar, N: int) -> PerturbativeSolution:
    """Horner partial sums E_N, psi_N at nu, with norm and residual."""
    if N > state.order:
        raise ValueError(f"order N={N} exceeds computed order {state.order}")
    nu_i = _as_internal(nu)
    E_N = _horner_scalar(state.e[:N + 1], nu_i)
    coeffs = _horner_coeffs(state.phi[:N + 1], nu_i, state.spec)
    psi = FieldFunction(coeffs, state.spec.Q.T @ coeffs,
                        state.spec.basis_id, state.spec)
    return PerturbativeSolution(
        nu=nu, N=N, E_N=E_N, psi_N=psi,
        psi_norm=psi.norm2(),
        residual_norm=residual(state, nu, N))


def _cube_coeffs(psi: FieldFunction):
    """Coefficients of P(|psi|^2 psi), the cubic term projected in-span."""
    spec = psi.spec
    if not psi.is_complex:
        return triple_product(psi, psi, psi).coeffs
    re = spec.from_coeffs(np.real(psi.coeffs).astype(np.longdouble))
    im = spec.from_coeffs(np.imag(psi.coeffs).astype(np.longdouble))
    rrr = triple_product(re, re, re).coeffs
    iir = triple_product(im, im, re).coeffs
    rri = triple_product(re, re, im).coeffs
    iii = triple_product(im, im, im).coeffs
    return (rrr + iir) + 1j * (rri + iii)


def residual(state: SeriesState, nu: Scalar, N: int):
    """L2 norm of r_N = H psi_N + nu |psi_N|^2 psi_N - E_N psi_N.

    Assembled as sum_n nu^n varphi_n - (E_N - e0) psi_N + nu P(psi^3) so the
    order-<=N cancellation happens symbolically rather than in floating
    point.
    """
    if N > state.order:
        raise ValueError(f"order N={N} exceeds computed order {state.order}")
    spec = state.spec
    nu_i = _as_internal(nu)
    psi_c = _horner_coeffs(state.phi[:N + 1], nu_i, spec)
    psi = FieldFunction(psi_c, spec.Q.T @ psi_c, spec.basis_id, spec)
    if N >= 1:
        E_prime = nu_i * _horner_scalar(state.e[1:N + 1], nu_i)
        w_sum = nu_i * _horner_coeffs(state.varphi[1:N + 1], nu_i, spec)
    else:
        E_prime = nu_i * 0
        w_sum = psi_c * 0
    r = w_sum - E_prime * psi_c + nu_i * _cube_coeffs(psi)
    if np.iscomplexobj(r):
        return np.sqrt(np.real(np.conj(r) @ r))
    return np.sqrt(r @ r)


@dataclass
class CancellationReport:
    N: int
    nu_samples: list
    direct_norms: list
    tail_norms: list
    rel_mismatch: list
    slope: float


def cancellation_check(state: SeriesState, N: int,
                       nu_samples: Sequence[float]) -> CancellationReport:
    """Confirm the order-by-order cancellation behind the residual.

    All powers nu^n with n <= N cancel exactly from r_N, leaving only the
    tail

        r_N = sum_{s=N+1}^{3N+1} nu^s T_{s-1} - sum_{s=N+1}^{2N} nu^s U_s,

    where T_t clips the cubic convolution to indices <= N and U_s clips the
    energy convolution likewise.  The tail is assembled here term by term
    (an evaluation path independent of residual()) and must agree with the
    direct residual to 1e-9 relative at every sample; a mismatch is a hard
    error.  The log-log slope of the direct residual is fitted and reported
    (leading order is nu^{N+1}).
    """
    if N > state.order:
        raise ValueError(f"order N={N} exceeds computed order {state.order}")
    spec = state.spec
    phi = state.phi

    memo = {}

    def clipped_triple(m, l, j):
        key = (m, l, j) if m <= l <= j else tuple(sorted((m, l, j)))
        if key not in memo:
            memo[key] = triple_product(phi[key[0]], phi[key[1]],
                                       phi[key[2]]).coeffs
        return memo[key]

    tail_terms = []
    for s in range(N + 1, 3 * N + 2):
        t = s - 1
        acc = np.zeros(spec.truncation_N2, dtype=np.longdouble)
        for m in range(min(N, t) + 1):
            for l in range(min(N, t - m) + 1):
                j = t - m - l
                if j <= N:
                    acc = acc + clipped_triple(m, l, j)
        if s <= 2 * N:
            for m in range(max(1, s - N), min(N, s - 1) + 1):
                acc = acc - state.e[m] * phi[s - m].coeffs
        tail_terms.append(acc)

    direct_norms, tail_norms, rels = [], [], []
    for nu in nu_samples:
        nu_i = _as_internal(nu)
        acc = tail_terms[-1].copy()
        for term in tail_terms[-2::-1]:
            acc = acc * nu_i + term
        tail_c = acc * nu_i ** (N + 1)
        tail_norm = np.sqrt(tail_c @ tail_c)
        direct = residual(state, nu, N)
        rel = float(abs(direct - tail_norm) / tail_norm)
        if rel > 1e-9:
            raise RuntimeError(
                f"N={N}, nu={nu}: tail-formula residual {float(tail_norm):.6e}"
                f" vs direct {float(direct):.6e} differ by {rel:.3e} relative"
                f" (> 1e-9): convolution bookkeeping bug")
        direct_norms.append(float(direct))
        tail_norms.append(float(tail_norm))
        rels.append(rel)

    if len(nu_samples) >= 2:
        slope = float(np.polyfit(np.log10(np.abs(np.asarray(nu_samples,
                                                            dtype=float))),
                                 np.log10(np.asarray(direct_norms)), 1)[0])
    else:
        slope = float("nan")
    return CancellationReport(N=N, nu_samples=[float(x) for x in nu_samples],
                              direct_norms=direct_norms,
                              tail_norms=tail_norms,
                              rel_mismatch=rels, slope=slope)
