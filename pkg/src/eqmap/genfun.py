"""The torus map generating function e1 computed from endpoint data alone,
its power series in the perturbation coefficients, the single-valence
special case, and the residual suite for the string/Toda/scaling relations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Jet
from .endpoints import PotentialSpec, solve_endpoints, uz_jets
from .errors import OutsideOneCutError

__all__ = [
    "E1Result",
    "SeriesInT",
    "e1_value",
    "e1_monomial",
    "e1_series",
    "verify_relations",
]


@dataclass
class E1Result:
    """Value of e1 plus the endpoint data it was computed from."""

    value: float
    log_argument: float
    u: float
    z: float
    ux: float
    zx: float
    x: float


def e1_value(pot):
    """e1 = (1/24) log(x**2 (zx**2 - z ux**2) / z**2).

    The x**2 factor normalizes e1(x, t=0) to zero for every face weight (at
    x = 1 it is inert); a nonpositive log argument means the potential left
    the one-cut regime.
    """
    ep = uz_jets(pot, x_order=1)
    ux, zx = ep.du(1), ep.dz(1)
    arg = pot.x ** 2 * (zx * zx - ep.z * ux * ux) / ep.z ** 2
    if not arg > 0:
        raise OutsideOneCutError("log argument %.6g is not positive" % arg)
    return E1Result(math.log(arg) / 24, arg, ep.u, ep.z, ux, zx, pot.x)


def e1_monomial(j, t):
    """e1 for the single-valence potential y**2/2 + t y**j at x = 1.

    Closed form in (u, z) only, obtained by eliminating the derivatives with
    the scaling and string relations.
    """
    pot = PotentialSpec(1.0, {int(j): t})
    ep = solve_endpoints(pot)
    u, z = ep.u, ep.z
    num = 4 - u * u / z
    den = (j - (j - 2) * z) ** 2 - (j - 2) ** 2 * u * u * z
    if not num > 0 or not den > 0:
        raise OutsideOneCutError("monomial e1 argument is not positive")
    return math.log(num / den) / 24


@dataclass
class SeriesInT:
    """Truncated expansion of e1 in the perturbation coefficients.

    ``coeffs`` maps a tuple of powers (aligned with ``valences``) to the
    series coefficient; the constant term is zero because a map needs at
    least one vertex.
    """

    valences: tuple
    order: int
    x: float
    coeffs: dict

    def coeff(self, profile):
        """Series coefficient for a {valence: power} profile."""
        key = tuple(profile.get(j, 0) for j in self.valences)
        return self.coeffs.get(key, 0.0)


def e1_series(pot, order):
    """Expand e1 to the given order in every valence direction of ``pot``.

    The endpoint jets are pushed through the e1 formula with the jet log;
    the pure-t coefficients (x-offset power zero) form the series.  With the
    base perturbation at zero these are the map-counting coefficients.
    """
    if not pot.t:
        raise ValueError("potential carries no perturbation directions")
    if any(v != 0 for v in pot.t.values()):
        raise ValueError("e1_series expects a family based at t = 0; "
                         "mark directions with zero coefficients")
    ep = uz_jets(pot, x_order=2, t_order=order)
    U, Z = ep.u_jet, ep.z_jet
    X = Jet.variable(float(pot.x), 0, U.orders)
    ux, zx = U.dx(0), Z.dx(0)
    arg = X * X * (zx * zx - Z * (ux * ux)) / (Z * Z)
    e1 = arg.log() / 24

    valences = tuple(sorted(pot.t))
    coeffs = {}
    for idx in np.ndindex(e1.coeffs.shape):
        if idx[0] != 0:
            continue
        val = float(e1.coeffs[idx])
        coeffs[idx[1:]] = val
    zero = (0,) * len(valences)
    if abs(coeffs.get(zero, 0.0)) > 1e-10:
        raise OutsideOneCutError("series constant term %.3g is not zero" %
                                 coeffs.get(zero, 0.0))
    coeffs[zero] = 0.0
    return SeriesInT(valences, order, pot.x, coeffs)


def verify_relations(j, t, x=1.0):
    """Residuals of the string/Toda pair, the scaling pair, and the
    derivative-reducing rules for a single-valence potential.

    Everything is evaluated on jets in (x, t) and reduced to the largest
    absolute Taylor coefficient, so each residual checks the relation as a
    function germ rather than at a single number.
    """
    pot = PotentialSpec(x, {int(j): t})
    ep = uz_jets(pot, x_order=2, t_order=1)
    U, Z = ep.u_jet, ep.z_jet
    X = Jet.variable(float(x), 0, U.orders)
    T = Jet.variable(float(t), 1, U.orders)
    ux, zx = U.dx(0), Z.dx(0)
    ut, zt = U.dx(1), Z.dx(1)

    def flat(jet):
        return float(np.max(np.abs(jet.coeffs.astype(float))))

    den = (j * X - (j - 2) * Z) ** 2 - (j - 2) ** 2 * (U * U) * Z
    residuals = {
        "string_u": flat(U + j * T * ut - 2 * (ux * Z + U * zx)),
        "string_z": flat(2 * Z + j * T * zt - (2 * Z * U * ux + 2 * Z * zx)),
        "scaling_z": flat((j - 2) * T * zt + 2 * Z - 2 * X * zx),
        "scaling_u": flat((j - 2) * T * ut + U - 2 * X * ux),
        "reduce_z": flat(zx * den - (2 * Z * (j * X - (j - 2) * Z) + (j - 2) * (U * U) * Z)),
        "reduce_u": flat(ux * den - (j * X * U + (j - 2) * U * Z)),
    }
    return residuals
