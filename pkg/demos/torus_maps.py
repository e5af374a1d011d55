"""Counting maps on the torus two ways.

The generating function route: expand e1 = (1/24) log(x^2 (zx^2 - z ux^2)/z^2)
as a power series in the perturbation coefficients using Taylor jets of the
endpoint data.  The combinatorial route: enumerate every pairing of
half-edges around labeled vertices, keep the connected ones, read the genus
from the face count, and weight genus-1 gluings by x^faces with the
symmetry factor (-1)^k/k! per valence class.  The two must agree
coefficient by coefficient.
"""

from eqmap import PotentialSpec, census, e1_coeff_from_census, e1_series, e1_value

print("e1 value for the quartic ensemble at t4 = 0.01:",
      "%.12f" % e1_value(PotentialSpec(1.0, {4: 0.01})).value)

print("\ncensus of a single 4-valent vertex:")
cens = census({4: 1})
for (g, f), c in sorted(cens.entries.items()):
    print("  genus %d, %d faces: %d gluing(s)" % (g, f, c))

print("\nseries coefficients of e1 vs genus-1 census sums:")
for profile, order in (({4: 1}, 1), ({4: 2}, 2), ({3: 2}, 2), ({6: 1}, 1), ({4: 3}, 3)):
    (j, k), = profile.items()
    for x in (1.0, 2.0):
        ser = e1_series(PotentialSpec(x, {j: 0.0}), order=order)
        got = ser.coeff(profile)
        want = e1_coeff_from_census(profile, x)
        print("  t%d^%d at x=%g: series %14.6f   census %14.6f" % (j, k, x, got, want))

print("\nmixed profile (two 3-valent and one 4-valent vertex):")
fam = PotentialSpec(1.0, {3: 0.0, 4: 0.0})
ser = e1_series(fam, order=3)
got = ser.coeff({3: 2, 4: 1})
want = e1_coeff_from_census({3: 2, 4: 1})
print("  series %14.6f   census %14.6f" % (got, want))
