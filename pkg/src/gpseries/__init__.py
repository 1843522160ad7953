"""Power-series solutions of the cubic stationary Schrodinger problem.

The package has four layers:

* :mod:`gpseries.spectral` -- linear backends (infinite well, harmonic
  oscillator) and the in-span function representation;
* :mod:`gpseries.series` -- the order-by-order recursion, partial sums and
  residuals;
* :mod:`gpseries.bounds` -- rigorous and empirical convergence-radius
  estimates;
* :mod:`gpseries.elliptic` -- exact Jacobi-elliptic solutions on the well,
  used as an independent cross-check.

``gpseries.cli`` exposes all of it as the ``gpseries`` command.
"""

from .spectral import (FieldFunction, LinearSpectrum, hermite_spectrum,
                       lp_norm, resolvent_apply, triple_product,
                       well_spectrum)
from .series import (CancellationReport, PerturbativeSolution, SeriesState,
                     cancellation_check, next_order, partial_sums, residual,
                     run_series, series_init)
from .bounds import (ConvergenceReport, RadiusEstimate, appendix_J,
                     appendix_J_scan, appendix_bound_ok, appendix_f,
                     constant_chain, empirical_radius, mu_constants,
                     triple_sum_I, triple_sum_I_scan)
from .elliptic import (EllipticSolution, ReconstructionCheck, elliptic_KE,
                       elliptic_KE_imag, jacobi_cn, jacobi_dn, jacobi_sd,
                       jacobi_sn, jacobi_sn_imag, reconstruct_and_check,
                       solve_defocusing, solve_focusing)

__version__ = "0.1.0"

__all__ = [
    "FieldFunction", "LinearSpectrum", "well_spectrum", "hermite_spectrum",
    "triple_product", "resolvent_apply", "lp_norm",
    "SeriesState", "PerturbativeSolution", "CancellationReport",
    "series_init", "next_order", "run_series", "partial_sums", "residual",
    "cancellation_check",
    "ConvergenceReport", "RadiusEstimate", "mu_constants", "constant_chain",
    "empirical_radius", "appendix_J", "appendix_J_scan", "appendix_bound_ok",
    "appendix_f", "triple_sum_I", "triple_sum_I_scan",
    "EllipticSolution", "ReconstructionCheck", "elliptic_KE",
    "elliptic_KE_imag", "jacobi_sn", "jacobi_cn", "jacobi_dn", "jacobi_sd",
    "jacobi_sn_imag", "solve_defocusing", "solve_focusing",
    "reconstruct_and_check",
]
