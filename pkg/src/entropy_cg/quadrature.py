"""Quadrature rules on the reference triangle and the unit segment.

Triangle rules are fully symmetric with strictly positive weights and
interior points. They are stored as orbits in barycentric coordinates:

* ``S3``   centroid, 1 point
* ``S21``  ``(a, a, 1-2a)`` and permutations, 3 points
* ``S111`` ``(a, b, 1-a-b)`` and permutations, 6 points

Orbit parameters for orders 3, 4, 6, 7 and 8 were obtained by solving the
symmetric moment equations in double precision; the test-suite checks every
rule against the closed-form monomial moments.

The reference triangle is ``(0,0), (1,0), (0,1)`` with area 1/2, and weights
sum to 1/2.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ConfigurationError

__all__ = ["QuadratureRule", "triangle_rule", "segment_rule", "MAX_ORDER"]

MAX_ORDER = 8

_S15 = sqrt(15.0)

# order -> list of (orbit, params); the last param of each orbit is the weight
_TRIANGLE_ORBITS = {
    1: [("S3", (0.5,))],
    2: [("S21", (1.0 / 6.0, 1.0 / 6.0))],
    3: [
        ("S21", (0.4465059001713004, 0.0818249732516539)),
        ("S21", (0.12786984356739803, 0.08484169341501277)),
    ],
    4: [
        ("S21", (0.44594849091596483, 0.11169079483900574)),
        ("S21", (0.09157621350977073, 0.05497587182766094)),
    ],
    5: [
        ("S3", (9.0 / 80.0,)),
        ("S21", ((6.0 + _S15) / 21.0, (155.0 + _S15) / 2400.0)),
        ("S21", ((6.0 - _S15) / 21.0, (155.0 - _S15) / 2400.0)),
    ],
    6: [
        ("S21", (0.219429982549783, 0.08566656207648868)),
        ("S21", (0.4801379641122129, 0.04036554479651685)),
        ("S111", (0.019371724361240315, 0.8390092597147899, 0.02031727989683057)),
    ],
    7: [
        ("S21", (0.061054627801692504, 0.023063025152493758)),
        ("S21", (0.4711207226879971, 0.02113221531076692)),
        ("S21", (0.2410930535135453, 0.06416446565009898)),
        ("S111", (0.27878946170868557, 0.045537009988609684, 0.029153480276653505)),
    ],
    8: [
        ("S3", (0.0721578038389208,)),
        ("S21", (0.4592925882927613, 0.047545817133623575)),
        ("S21", (0.17056930775180024, 0.051608685267363515)),
        ("S21", (0.050547228317031206, 0.016229248811597565)),
        ("S111", (0.2631128296345294, 0.7284923929554757, 0.013615157087220876)),
    ],
}


@dataclass(frozen=True)
class QuadratureRule:
    """Points and weights of a quadrature rule.

    For triangle rules ``points`` has shape ``(nq, 3)`` (barycentric), for
    segment rules shape ``(nq,)`` with abscissae in ``[0, 1]``.
    """

    points: np.ndarray
    weights: np.ndarray
    order: int

    def __len__(self):
        return len(self.weights)

    @property
    def xy(self):
        """Cartesian reference coordinates of a triangle rule."""
        return self.points[:, 1:]


def _expand(orbits):
    pts, wts = [], []
    for kind, params in orbits:
        if kind == "S3":
            pts.append((1 / 3, 1 / 3, 1 / 3))
            wts.append(params[0])
        elif kind == "S21":
            a, w = params
            c = 1.0 - 2.0 * a
            pts += [(c, a, a), (a, c, a), (a, a, c)]
            wts += [w] * 3
        else:
            a, b, w = params
            c = 1.0 - a - b
            pts += [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
            wts += [w] * 6
    return np.array(pts), np.array(wts)


def _check_order(order):
    if not (isinstance(order, (int, np.integer)) and 1 <= order <= MAX_ORDER):
        raise ConfigurationError(
            f"quadrature order must be an integer in [1, {MAX_ORDER}], got {order!r}"
        )


def triangle_rule(order):
    """Symmetric positive rule exact for polynomials of total degree ``order``."""
    _check_order(order)
    points, weights = _expand(_TRIANGLE_ORBITS[int(order)])
    return QuadratureRule(points, weights, int(order))


def segment_rule(order):
    """Gauss-Legendre rule on ``[0, 1]`` exact up to degree ``order``."""
    _check_order(order)
    n = int(order) // 2 + 1
    x, w = np.polynomial.legendre.leggauss(n)
    return QuadratureRule(0.5 * (x + 1.0), 0.5 * w, int(order))
