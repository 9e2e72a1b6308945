"""Multinomial limit measures and the Gaussian picture at large dilation."""

from fractions import Fraction

from qbrion import fixtures, measures

# exact limit measure of the trapezoid: supported on the top edge
trap = fixtures.load("trapezoid_f1")
mu = measures.mu_measure(trap)
print("trapezoid measure:")
for u in sorted(mu.atoms):
    print("  ", u, mu.atoms[u])

# the q-weight estimate converges to it in total variation as q -> 1
for q in (Fraction(9, 10), Fraction(99, 100), Fraction(999, 1000)):
    dist = measures.mu_limit_estimate(trap, q).total_variation(mu)
    print("TV at q=%s: %s (~%.2e)" % (q, dist, float(dist)))

# hexagon: potential minimizer, precision, covariance
hexagon = fixtures.load("hexagon")
model = measures.gaussian_model(hexagon)
print("\nhexagon minimizer:", model.minimizer)
print("precision rows:", model.precision)
print("covariance rows:", model.covariance)

# scaled moments of the dilated measures approach the Gaussian's
report = measures.convergence_report(hexagon, [5, 20, 80])
print("\n k   points   cov_rel_err")
for row in report["rows"]:
    print("%3d  %6d   %.5f" % (row["k"], row["points"], row["cov_rel_err"]))

# dilation is convolution on the measure side
seg = fixtures.load("segment_1")
m2 = measures.mu_measure(fixtures.load("segment_2"))
m1 = measures.mu_measure(seg)
print("\nconvolution check on segments:",
      m1.convolve(m1) == m2)
