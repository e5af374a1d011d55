"""Exact rational coefficient tables for expanding (T - 2 + 1/T)**-(k+1)
in the phi-tilde / psi-tilde basis, plus exact verification of the
combinatorial identities that make the expansion possible.

All arithmetic in this module is over ``fractions.Fraction``; every check is
an exact polynomial identity, not a floating comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import LaurentPoly

__all__ = [
    "BasisFunction",
    "CoeffTable",
    "phi_tilde",
    "psi_tilde",
    "build_c_table",
    "verify_operator_closed_forms",
    "verify_parity_projection",
    "verify_binomial_identities",
    "check_diagonal_conjecture",
    "double_factorial",
]


def double_factorial(n):
    """n!! with the usual empty-product convention for n <= 0."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _binom(n, k):
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # generalized upper index, needed only for the m = 0 seed
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@dataclass(frozen=True)
class BasisFunction:
    """One basis element: ``numerator / (T - 1/T)**denom_power``."""

    kind: str
    m: int
    numerator: LaurentPoly
    denom_power: int

    def cleared(self, k):
        """numerator * (T - 1/T)**(2(k+1) - denom_power) * T**(k+1).

        Multiplying the defining identity for the order-k expansion through
        by (T - 1/T)**(2k+2) * T**(k+1) turns both sides into honest Laurent
        polynomials; this returns this basis element's contribution.
        """
        tm = LaurentPoly({1: 1, -1: -1})
        return (self.numerator * tm ** (2 * (k + 1) - self.denom_power)).shifted(k + 1)


def phi_tilde(m):
    num = LaurentPoly({2 * l - m: Fraction(math.factorial(m)) * _binom(m, l) ** 2
                       for l in range(m + 1)})
    return BasisFunction("phi", m, num, 2 * m)


def psi_tilde(m):
    num = LaurentPoly({2 * l + 1 - m: Fraction(math.factorial(m)) * _binom(m - 1, l) * _binom(m + 1, l + 1)
                       for l in range(m + 1)})
    return BasisFunction("psi", m, num, 2 * m)


def leading_pole_data(bf):
    """Exact leading Laurent coefficients of a basis element at T = 1 and T = -1.

    Near T = s the element behaves like A_s / (T - s)**denom_power with
    A_s = [numerator * T**denom_power](s) / (2s)**denom_power up to sign; the
    returned pair is (A at +1, A at -1).
    """
    p = bf.denom_power
    num = bf.numerator.shifted(p)  # clear the T**-p inside (T - 1/T)**p
    at_plus = num(Fraction(1)) / Fraction(2) ** p
    at_minus = num(Fraction(-1)) / Fraction(-2) ** p
    return at_plus, at_minus


@dataclass(frozen=True)
class CoeffTable:
    """Rows k = 0..kmax of the expansion coefficients, exact rationals."""

    kmax: int
    c_phi: tuple  # c_phi[k][m-1] for m = 1..k+1
    c_psi: tuple

    def phi(self, k, m):
        row = self.c_phi[k]
        return row[m - 1] if 1 <= m <= len(row) else Fraction(0)

    def psi(self, k, m):
        row = self.c_psi[k]
        return row[m - 1] if 1 <= m <= len(row) else Fraction(0)


def _solve_exact(rows, rhs):
    """Gaussian elimination over Fractions for a consistent overdetermined system."""
    m = len(rows)
    n = len(rows[0])
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_rows = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            raise RuntimeError("coefficient system is singular; this contradicts "
                               "the basis independence and must not happen")
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        piv_rows.append(col)
        r += 1
        if r == n:
            break
    if r < n:
        raise RuntimeError("coefficient system is rank deficient")
    for i in range(r, m):
        if any(v != 0 for v in a[i]):
            raise RuntimeError("coefficient system is inconsistent")
    sol = [Fraction(0)] * n
    for i, col in enumerate(piv_rows):
        sol[col] = a[i][n]
    return sol


def _solve_row(k):
    """Match coefficients of the cleared order-k identity and solve exactly."""
    target = LaurentPoly({1: 1, 0: 1}) ** (2 * k + 2)  # (T + 1)**(2k+2)
    basis = [phi_tilde(m).cleared(k) for m in range(1, k + 2)] + \
            [psi_tilde(m).cleared(k) for m in range(1, k + 2)]
    exps = sorted(set().union(*[set(b.coeffs) for b in basis], set(target.coeffs)))
    rows = [[Fraction(b.coeff(e)) for b in basis] for e in exps]
    rhs = [Fraction(target.coeff(e)) for e in exps]
    sol = _solve_exact(rows, rhs)
    return tuple(sol[: k + 1]), tuple(sol[k + 1:])


@lru_cache(maxsize=None)
def build_c_table(kmax):
    """Exact expansion coefficients for k = 0..kmax.

    Built row by row: clearing denominators in the defining identity gives,
    for each k, a small consistent linear system of dimension 2(k+1) solved
    in rational arithmetic.
    """
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    c_phi, c_psi = [], []
    for k in range(kmax + 1):
        row_phi, row_psi = _solve_row(k)
        c_phi.append(row_phi)
        c_psi.append(row_psi)
    return CoeffTable(kmax, tuple(c_phi), tuple(c_psi))


def reconstruction_holds(table, k):
    """Exact identity check: the table row reproduces (T - 2 + 1/T)**-(k+1).

    Verified after clearing denominators, i.e. the combination of cleared
    basis elements must equal (T + 1)**(2k+2) coefficient for coefficient.
    """
    target = LaurentPoly({1: 1, 0: 1}) ** (2 * k + 2)
    acc = LaurentPoly()
    for m in range(1, k + 2):
        acc = acc + phi_tilde(m).cleared(k) * table.phi(k, m)
        acc = acc + psi_tilde(m).cleared(k) * table.psi(k, m)
    return acc == target


# ---- identity suite --------------------------------------------------------


def _apply_operator(num, power, times):
    """Apply (-d/dT after multiplying by 1/(1 - T**-2)) repeatedly.

    State is a rational function num / (T**2 - 1)**power with a Laurent
    polynomial numerator; each application raises the denominator power by 2.
    """
    for _ in range(times):
        m = num.shifted(2)  # multiply by T**2 / (T**2 - 1)
        power += 1
        # -d/dT of m / (T**2 - 1)**power
        tsq = LaurentPoly({2: 1, 0: -1})
        num = LaurentPoly({1: 2 * power}) * m - m.derivative() * tsq
        power += 1
    return num, power


def verify_operator_closed_forms(m):
    """Exact check of the closed forms for the m-fold derivative operator.

    The operator applied to 1/T must match the phi-type closed form, and
    applied to 1 the psi-type closed form; both are compared as cleared
    polynomial identities.
    """
    got_phi, p1 = _apply_operator(LaurentPoly({-1: Fraction(1)}), 0, m)
    want_phi = LaurentPoly({m + 2 * l - 1: Fraction(math.factorial(m)) * _binom(m, l) ** 2
                            for l in range(m + 1)})
    got_psi, p2 = _apply_operator(LaurentPoly({0: Fraction(1)}), 0, m)
    want_psi = LaurentPoly({m + 2 * l: Fraction(math.factorial(m)) * _binom(m - 1, l) * _binom(m + 1, l + 1)
                            for l in range(m + 1)})
    return p1 == 2 * m and p2 == 2 * m and got_phi == want_phi and got_psi == want_psi


def verify_parity_projection(k):
    """Exact check of the parity-projection identity at order k.

    Both sides are multiplied by (T - 1/T)**(2k+2), which turns them into
    Laurent polynomials that are compared coefficient for coefficient.
    """
    tp = LaurentPoly({1: 1, 0: 1})
    tm = LaurentPoly({1: 1, 0: -1})
    lhs = (tp ** (2 * k + 2) + tm ** (2 * k + 2) * ((-1) ** k)).shifted(-(k + 1)) * Fraction(1, 2)
    kern = LaurentPoly({1: 1, -1: -1})
    rhs = LaurentPoly()
    for m in range((k + 1) // 2, k + 1):
        w = Fraction(2) ** (4 * m - 2 * k) * _binom(m, k - m)
        rhs = rhs + LaurentPoly({1: w, -1: w}) * kern ** (2 * k - 2 * m)
    return lhs == rhs


def verify_binomial_identities(m):
    """Exact check of the four closed-form sums behind basis independence.

    The alternating psi-type sum is parity split: zero for even m, a signed
    power-of-two ratio of double factorials for odd m.
    """
    plain_phi = sum(_binom(m, l) ** 2 for l in range(m + 1))
    ok = plain_phi == _binom(2 * m, m)

    plain_psi = sum(_binom(m - 1, l) * _binom(m + 1, l + 1) for l in range(m))
    ok = ok and plain_psi == _binom(2 * m, m)

    alt_phi = sum((-1) ** l * _binom(m, l) ** 2 for l in range(m + 1))
    if m % 2 == 0:
        ok = ok and alt_phi == (-1) ** (m // 2) * _binom(m, m // 2)
    else:
        ok = ok and alt_phi == 0

    alt_psi = sum((-1) ** l * _binom(m - 1, l) * _binom(m + 1, l + 1) for l in range(m))
    if m % 2 == 0:
        ok = ok and alt_psi == 0
    else:
        want = Fraction((-1) ** ((m - 1) // 2) * 2 ** m * double_factorial(m - 2),
                        double_factorial(m - 1))
        ok = ok and Fraction(alt_psi) == want
    return ok


def check_diagonal_conjecture(kmax, table=None):
    """True iff both diagonals equal 2**k / (2k+1)!! for all k <= kmax.

    Checked exactly; downstream code never assumes this pattern.
    """
    if table is None or table.kmax < kmax:
        table = build_c_table(kmax)
    for k in range(kmax + 1):
        want = Fraction(2 ** k, double_factorial(2 * k + 1))
        if table.phi(k, k + 1) != want or table.psi(k, k + 1) != want:
            return False
    return True
