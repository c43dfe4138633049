"""Element entropy error and the conservative entropy correction.

For element ``K`` with entropy-variable coefficients ``V_s`` the entropy
error is

    E_K = oint_{dK} g(V_h).n  -  sum_s V_s Phi_s^K

and the correction ``r_s = alpha (V_s - mean(V))`` with
``alpha = E_K / sum_s (V_s - mean(V))**2`` satisfies ``sum_s r_s = 0`` and
``sum_s V_s r_s = E_K``. The corrected residual ``Phi_s^K + r_s`` therefore
meets the discrete entropy identity without touching conservation.

The numerical entropy flux of the continuous approximation is the single
valued trace ``g(V_h).n``, integrated with the edge rule of the residual.
Elements whose ``V_s`` are (numerically) constant are flagged degenerate and
left uncorrected.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CorrectionReport",
    "DEGENERACY_THRESHOLD",
    "element_entropy_error",
    "entropy_errors",
    "correction_term",
    "corrections",
    "corrected_residual",
]

DEGENERACY_THRESHOLD = 1e-14


@dataclass(frozen=True)
class CorrectionReport:
    error: float
    r: np.ndarray
    alpha: float
    v_mean: float
    degenerate: bool


def element_entropy_error(law, disc, element, state, residual):
    """Entropy error of one element given its residual values."""
    U = np.asarray(getattr(state, "values", state))
    res = np.asarray(getattr(residual, "values", residual))
    V = law.entropy_variable(U[disc.elements[element]])
    gflux = disc.boundary_integral(law, U, "entropy", [element])[0]
    return float(gflux - V @ res)


def entropy_errors(law, disc, U, phi):
    """Vectorised entropy error of every element; ``phi`` is ``(E, n)``."""
    V = law.entropy_variable(np.asarray(U)[disc.elements])
    return disc.boundary_integral(law, U, "entropy") - np.einsum("en,en->e", V, phi)


def corrections(V, errors, threshold=DEGENERACY_THRESHOLD):
    """Correction terms for stacked element data.

    ``V`` is ``(E, n)`` entropy variables, ``errors`` is ``(E,)``. Returns the
    ``(E, n)`` corrections and the boolean degeneracy mask.
    """
    dev = V - V.mean(axis=1, keepdims=True)
    denom = np.einsum("en,en->e", dev, dev)
    degenerate = denom < threshold
    alpha = np.where(degenerate, 0.0, errors / np.where(degenerate, 1.0, denom))
    return alpha[:, None] * dev, degenerate


def correction_term(V, error, threshold=DEGENERACY_THRESHOLD):
    V = np.asarray(V, dtype=float)
    r, degenerate = corrections(V[None, :], np.array([error]), threshold)
    dev = V - V.mean()
    denom = dev @ dev
    alpha = 0.0 if degenerate[0] else error / denom
    return CorrectionReport(float(error), r[0], float(alpha), float(V.mean()), bool(degenerate[0]))


def corrected_residual(residual, correction):
    res = np.asarray(getattr(residual, "values", residual))
    r = correction.r if isinstance(correction, CorrectionReport) else np.asarray(correction)
    return res + r
