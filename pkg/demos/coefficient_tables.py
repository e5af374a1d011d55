"""The exact rational coefficient tables and the identities behind them.

Everything here is integer/fraction arithmetic: the tables come from
solving small exact linear systems, and each identity check clears
denominators and compares Laurent polynomials coefficient by coefficient.
"""

from fractions import Fraction

from eqmap import build_c_table, check_diagonal_conjecture, verify_binomial_identities, \
    verify_operator_closed_forms, verify_parity_projection
from eqmap.coefftables import double_factorial, reconstruction_holds

table = build_c_table(6)

print("c_phi (rows k = 0..4, columns m = 1..k+1):")
for k in range(5):
    print("  k=%d: %s" % (k, "  ".join(str(table.phi(k, m)) for m in range(1, k + 2))))
print("c_psi:")
for k in range(5):
    print("  k=%d: %s" % (k, "  ".join(str(table.psi(k, m)) for m in range(1, k + 2))))

print("\nreconstruction identity (table row reproduces (T-2+1/T)^-(k+1)):")
for k in range(7):
    print("  k=%d: %s" % (k, reconstruction_holds(table, k)))

print("\ndiagonal pattern 2^k/(2k+1)!! for k <= 8:", check_diagonal_conjecture(8))
print("  e.g. k=8 entry:", build_c_table(8).phi(8, 9),
      "= 2^8/17!! =", Fraction(2**8, double_factorial(17)))

print("\noperator closed forms (m-fold application, exact):",
      all(verify_operator_closed_forms(m) for m in range(11)))
print("parity-projection identity (k <= 10, exact):",
      all(verify_parity_projection(k) for k in range(11)))
print("binomial summation identities (m <= 20, exact):",
      all(verify_binomial_identities(m) for m in range(1, 21)))
