"""Walk through the corner-sum identity on the hexagon.

The weighted point series (each lattice point carrying the inverse
Pochhammer product of its slacks) is matched, coefficient by coefficient in
q, against the sum of vertex corner terms.  Both sides are evaluated at
random rational points, so equality of truncated series is exact.
"""

from qbrion import brion, fixtures, lattice

P = fixtures.load("hexagon")
print("polytope: hexagon,", len(lattice.lattice_points(P)), "lattice points,",
      len(lattice.enumerate_vertices(P)), "vertices")

report = brion.verify_identity(P, order=12, trials=3, seed=7)
print("identity mod q^13:", "equal" if report.equal else "MISMATCH")
print("evaluation points:", report.points)
print("degree vectors used:", report.degree_vectors_used)

# the finite form multiplies both sides by (q;q)_{offset sum}, turning the
# weighted series into the symmetric-weight polynomial
finite = brion.verify_identity(P, order=12, trials=3, seed=7, finite_form=True)
print("finite form:", "equal" if finite.equal else "MISMATCH")

# each vertex owns its degree set: kernel vectors of the normal map that are
# nonnegative off the vertex's facet pair.  On the facet coordinates the
# integral completion can dip below zero; the corner factor then degenerates
# to a finite product instead of an infinite one.
vd = next(v for v in lattice.enumerate_vertices(P) if v.point == (0, 0))
signed = [b for b in lattice.enumerate_corner_degrees(P, vd, 4) if min(b) < 0]
print("\nvertex (0,0), facets", vd.facet_set)
print("signed degree vectors through level 4:")
for b in signed:
    print("  ", b, "valuation", lattice.corner_degree_valuation(P, vd, b))
