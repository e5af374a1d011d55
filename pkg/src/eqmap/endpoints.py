"""Endpoint equations for the support of the one-cut equilibrium measure.

The support is [u - 2 sqrt(z), u + 2 sqrt(z)] where (u, z) solve a pair of
residue equations determined by the potential.  This module solves that
system numerically with a homotopy from the exactly solvable Gaussian point
(t = 0, where u = 0 and z = x), propagates Taylor jets of (u, z) in the face
weight x and the perturbation coefficients, and provides a positivity
certificate for the one-cut regime.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Jet, LaurentPoly
from .errors import DegeneratePotentialError, NoOneCutSolutionError

__all__ = [
    "PotentialSpec",
    "EndpointSolution",
    "endpoint_residuals",
    "solve_endpoints",
    "uz_jets",
    "one_cut_certificate",
    "xvprime_coeffs",
]


@dataclass(frozen=True)
class PotentialSpec:
    """Potential V(y) = (y**2/2 + sum_j t[j] * y**j) / x.

    x is the positive face weight; t maps a valence j >= 1 to its coefficient.
    """

    x: float = 1.0
    t: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.x > 0:
            raise ValueError("face weight x must be positive")
        clean = {}
        for j, v in self.t.items():
            j = int(j)
            if j < 1:
                raise ValueError("valences must be >= 1, got %d" % j)
            clean[j] = v
        object.__setattr__(self, "t", clean)

    @property
    def degree(self):
        """Degree of x*V(y); at least 2."""
        return max(2, max(self.t, default=2))

    @property
    def is_even(self):
        return all(j % 2 == 0 or v == 0 for j, v in self.t.items())

    def v(self, lam):
        out = lam * lam / 2
        for j, tj in self.t.items():
            out = out + tj * lam**j
        return out / self.x

    def vprime(self, lam):
        out = lam
        for j, tj in self.t.items():
            out = out + j * tj * lam ** (j - 1)
        return out / self.x

    def scaled(self, factor):
        """Same x, all perturbation coefficients multiplied by factor."""
        return PotentialSpec(self.x, {j: v * factor for j, v in self.t.items()})


def xvprime_coeffs(pot):
    """Ascending coefficients of x*V'(y) = y + sum_j j*t_j*y**(j-1).

    Integer base entries keep the list exact when the t_j are Fractions.
    """
    c = [0] * pot.degree
    c[1] = 1
    for j, tj in pot.t.items():
        c[j - 1] = c[j - 1] + j * tj
    return c


def endpoint_residuals(u, z, pot, _coeffs=None, _x=None):
    """Residuals (r1, r2) of the two endpoint equations at (u, z).

    Both vanish iff (u, z) parameterize the support for ``pot``.  Generic over
    the scalar type of u and z: floats, Fractions and jets all work, which is
    how Jacobians and Taylor jets of the solution are produced.
    """
    coeffs = xvprime_coeffs(pot) if _coeffs is None else _coeffs
    x = pot.x if _x is None else _x
    w = substitute_affine(coeffs, u, z)
    r1 = w.coeff(0) / x
    r2 = w.coeff(-1) / x - 1
    return r1, r2


def substitute_affine(coeffs, u, z):
    y = LaurentPoly({1: 1, 0: u, -1: z})
    out = LaurentPoly()
    for c in reversed(list(coeffs)):
        out = out * y + c
    return out


@dataclass
class EndpointSolution:
    """Solved (u, z) with the derived support endpoints and optional jets.

    When jets are attached (see :func:`uz_jets`) variable 0 is the face
    weight x and the remaining variables are the perturbation coefficients in
    increasing valence order; ``jet_vars`` records the layout.
    """

    u: float
    z: float
    potential: PotentialSpec
    residual_norm: float
    u_jet: Jet | None = None
    z_jet: Jet | None = None
    jet_vars: tuple = ()

    @property
    def alpha_minus(self):
        return self.u - 2 * math.sqrt(self.z)

    @property
    def alpha_plus(self):
        return self.u + 2 * math.sqrt(self.z)

    @property
    def x_order(self):
        return self.u_jet.orders[0] if self.u_jet is not None else 0

    def du(self, k=1):
        """k-th x-derivative of u at the base point."""
        return float(self._jet("u").partial((k,) + (0,) * (len(self.jet_vars) - 1)))

    def dz(self, k=1):
        """k-th x-derivative of z at the base point."""
        return float(self._jet("z").partial((k,) + (0,) * (len(self.jet_vars) - 1)))

    def _jet(self, which):
        jet = self.u_jet if which == "u" else self.z_jet
        if jet is None:
            raise ValueError("no jets attached; call uz_jets first")
        return jet

    def require_x_order(self, n):
        if self.u_jet is None or self.u_jet.orders[0] < n:
            raise ValueError("endpoint jets must carry x-order >= %d" % n)


def _residual_and_jacobian(u, z, pot):
    """Residual vector and (u, z)-Jacobian at a numeric point, via order-1 jets."""
    U = Jet.variable(float(u), 0, (1, 1))
    Z = Jet.variable(float(z), 1, (1, 1))
    r1, r2 = endpoint_residuals(U, Z, pot)
    r1 = _as_jet(r1, (1, 1))
    r2 = _as_jet(r2, (1, 1))
    r = np.array([float(r1.constant_term), float(r2.constant_term)])
    jac = np.array([
        [float(r1.partial((1, 0))), float(r1.partial((0, 1)))],
        [float(r2.partial((1, 0))), float(r2.partial((0, 1)))],
    ])
    return r, jac


def _as_jet(v, orders):
    return v if isinstance(v, Jet) else Jet.constant(v, orders)


def _newton(pot, u, z, tol, max_iter=30):
    initial = None
    for it in range(max_iter):
        r, jac = _residual_and_jacobian(u, z, pot)
        rn = float(np.max(np.abs(r)))
        if initial is None:
            initial = rn
        if rn < tol:
            # one polishing step: quadratic convergence puts the parameter
            # error at rounding level rather than at the residual tolerance
            det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
            if np.isfinite(det) and abs(det) > 1e-300:
                u2 = u - (r[0] * jac[1, 1] - r[1] * jac[0, 1]) / det
                z2 = z - (r[1] * jac[0, 0] - r[0] * jac[1, 0]) / det
                if np.isfinite(u2) and np.isfinite(z2) and z2 > 0:
                    r2, _ = _residual_and_jacobian(u2, z2, pot)
                    if np.max(np.abs(r2)) <= rn:
                        return u2, z2, float(np.max(np.abs(r2))), True
            return u, z, rn, True
        # quadratic convergence means a basin point is done in a handful of
        # iterations; anything still above its starting residual is diverging
        if rn > 1e6 or (it > 10 and rn > initial):
            return u, z, np.inf, False
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if not np.isfinite(det) or abs(det) < 1e-300:
            return u, z, np.inf, False
        du = (r[0] * jac[1, 1] - r[1] * jac[0, 1]) / det
        dz = (r[1] * jac[0, 0] - r[0] * jac[1, 0]) / det
        u, z = u - du, z - dz
        if not (np.isfinite(u) and np.isfinite(z)) or z <= 0:
            return u, z, np.inf, False
    r, _ = _residual_and_jacobian(u, z, pot)
    ok = np.max(np.abs(r)) < tol
    return u, z, float(np.max(np.abs(r))), ok


def solve_endpoints(pot, tol=1e-12, max_continuation_steps=64):
    """Solve the endpoint equations for (u, z) on the one-cut branch.

    Bivariate Newton started at the Gaussian point (0, x), continued along the
    linear homotopy t -> s*t with adaptive subdivision on Newton failure.  The
    branch through the Gaussian point is the one-cut branch; z > 0 is enforced
    throughout.
    """
    u, z = 0.0, float(pot.x)
    _, jac0 = _residual_and_jacobian(u, z, pot.scaled(0.0))
    if abs(np.linalg.det(jac0)) < 1e-14:
        raise DegeneratePotentialError("endpoint Jacobian singular at the Gaussian point")
    if all(v == 0 for v in pot.t.values()) or not pot.t:
        return EndpointSolution(u, z, pot, 0.0)

    s = 0.0
    step = 1.0
    steps = 0
    res = 0.0
    while s < 1.0:
        if steps >= max_continuation_steps:
            raise NoOneCutSolutionError(
                "homotopy continuation exhausted %d steps at s=%.6g; "
                "no one-cut solution reached" % (max_continuation_steps, s))
        target = min(1.0, s + step)
        u2, z2, res2, ok = _newton(pot.scaled(target), u, z, tol)
        steps += 1
        if ok:
            u, z, res, s = u2, z2, res2, target
            step = min(2 * step, 1.0 - s if s < 1.0 else 1.0)
        else:
            step /= 2
            if step < 1e-7:
                raise NoOneCutSolutionError(
                    "continuation step underflow at s=%.6g; "
                    "no one-cut solution reached" % s)
    return EndpointSolution(u, z, pot, res)


def uz_jets(pot, x_order, t_order=0, tol=1e-12):
    """Endpoint solution carrying Taylor jets of (u, z).

    Jets are expansions in offsets about (x, t): variable 0 is x, and when
    t_order > 0 one variable per valence in ``pot.t`` follows, in increasing
    valence order.  The jets are built order by order: each pass through the
    residual kills the lowest remaining order using the exact base-point
    Jacobian, so sum(orders) + 1 passes suffice.
    """
    base = solve_endpoints(pot, tol=tol)
    tkeys = sorted(pot.t) if t_order > 0 else []
    orders = (x_order,) + (t_order,) * len(tkeys)
    names = ("x",) + tuple("t%d" % j for j in tkeys)

    xj = Jet.variable(float(pot.x), 0, orders)
    coeffs = [0] * pot.degree
    coeffs[1] = 1
    for j, tj in pot.t.items():
        if j in tkeys:
            tj = Jet.variable(float(tj), 1 + tkeys.index(j), orders)
        coeffs[j - 1] = coeffs[j - 1] + j * tj

    _, jac = _residual_and_jacobian(base.u, base.z, pot)
    det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
    if not np.isfinite(det) or abs(det) < 1e-14:
        raise DegeneratePotentialError("endpoint Jacobian singular at the base point")
    inv = np.array([[jac[1, 1], -jac[0, 1]], [-jac[1, 0], jac[0, 0]]]) / det

    U = Jet.constant(base.u, orders)
    Z = Jet.constant(base.z, orders)
    for _ in range(sum(orders) + 1):
        w = substitute_affine(coeffs, U, Z)
        r1 = _as_jet(w.coeff(0), orders) / xj
        r2 = _as_jet(w.coeff(-1), orders) / xj - 1
        U = U - (inv[0, 0] * r1 + inv[0, 1] * r2)
        Z = Z - (inv[1, 0] * r1 + inv[1, 1] * r2)

    w = substitute_affine(coeffs, U, Z)
    r1 = _as_jet(w.coeff(0), orders) / xj
    r2 = _as_jet(w.coeff(-1), orders) / xj - 1
    worst = max(np.max(np.abs(r1.coeffs.astype(float))),
                np.max(np.abs(r2.coeffs.astype(float))))
    if worst > 1e-7:
        raise DegeneratePotentialError(
            "jet propagation failed to converge (residual %.3g)" % worst)
    return dataclasses.replace(base, u_jet=U, z_jet=Z, jet_vars=names)


def one_cut_certificate(h, alpha_minus, alpha_plus, grid=512):
    """True iff h stays strictly positive across the support interval.

    Checks positivity on a dense grid, then confirms the absence of real
    roots of h (and of sign dips between grid points, via the real critical
    points of h) inside [alpha_minus, alpha_plus].
    """
    lam = np.linspace(alpha_minus, alpha_plus, grid)
    vals = h.value(lam)
    if np.min(vals) <= 0:
        return False
    desc = np.asarray(h.monomial, dtype=float)[::-1]
    if len(desc) > 1:
        roots = np.roots(desc)
        real = roots[np.abs(roots.imag) < 1e-9].real
        if np.any((real >= alpha_minus) & (real <= alpha_plus)):
            return False
    if len(desc) > 2:
        crit = np.roots(np.polyder(desc))
        crit = crit[np.abs(crit.imag) < 1e-9].real
        inside = crit[(crit >= alpha_minus) & (crit <= alpha_plus)]
        if inside.size and np.min(h.value(inside)) <= 0:
            return False
    return True
