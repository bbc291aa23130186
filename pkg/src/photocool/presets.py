"""Named parameter sets used by the figure jobs, scripts and tests."""
from __future__ import annotations

from .params import NormalizedParams, System, SteadyState, denormalize

# Absorption-dominated cavity used throughout: A = 0.01, T = 0.001, beta A = 100.
A_REF = 0.01
T_REF = 0.001
BETA_REF = 1e4
TAU_TH_FIG1B = 1e-3

FIG2A = NormalizedParams(b=0.01, phi=1.0, phi_nl=1.0, d=1.0, Q=1e6, T=T_REF, A=A_REF, beta=BETA_REF)
# Fig. 2b reuses the Fig. 2a cavity; phi_nl * Q is large so the
# strong-cooling variance sits at its large-coupling limit.
FIG2B = NormalizedParams(b=0.01, phi=1.0, phi_nl=1.0, d=1.0, Q=1e12, T=T_REF, A=A_REF, beta=BETA_REF)
FIG3 = NormalizedParams(b=0.1, phi=1.0, phi_nl=1.0, d=1.0, Q=1e12, T=T_REF, A=A_REF, beta=BETA_REF)
FIG3_BETA_A = (10.0, 100.0, 1000.0)


def flank_system(*, b: float = 0.01, d: float = 1.0, Q: float = 1e5, gamma_ratio: float = 1e3,
                 n_i: float = 0.0, A: float = A_REF, T: float = T_REF, beta: float = BETA_REF,
                 phi: float = 1.0, **kw) -> tuple[System, SteadyState]:
    """SI system on the red flank with a prescribed classical Gamma_eff/Gamma.

    The classical photothermal damping equals 2 phi phi_nl Q beta A d /((1+phi^2)(1+d^2)).
    """
    phi_nl = (gamma_ratio - 1) * (1 + phi ** 2) * (1 + d ** 2) / (2 * phi * Q * beta * A * d)
    p = NormalizedParams(b=b, phi=phi, phi_nl=phi_nl, d=d, Q=Q, T=T, A=A, beta=beta, n_i=n_i)
    return denormalize(p, **kw)
