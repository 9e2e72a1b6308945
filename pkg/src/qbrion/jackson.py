"""Jackson q-derivative calculus on the symmetric-weight polynomials.

The Jackson derivative along axis i sends c(q) x^u to c(q) [u_i]_q x^(u - e_i)
termwise.  On the symmetric-weight polynomial of a first-orthant divisor it
obeys an exact recursion: differentiating along axis i multiplies by the
q-integer of the offset sum and passes to a derived divisor whose non-basis
offsets shift by the i-th normal coordinates.  Iterating the derivative up to
a coordinate-sum maximizer collapses the polynomial to an explicit nonzero
scalar in q, and together with multiplication operators built from elementary
symmetric polynomials it forms a raising/lowering ladder.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lattice
from .brion import LaurentQPoly, rs_polynomial
from .errors import InvalidInputError, PreconditionError
from .qalg import QPolynomial, q_factorial, q_integer, q_multinomial


def q_shift(f, axis):
    """Substitute x_axis -> q x_axis: c(q) x^u becomes q^(u_axis) c(q) x^u."""
    terms = {}
    for u, c in f.terms.items():
        if u[axis] < 0:
            raise PreconditionError("q-shift is defined for nonnegative exponents only")
        terms[u] = c.shift(u[axis]) if u[axis] else c
    return LaurentQPoly(terms)


def jackson_derivative(f, axis):
    """Jackson q-derivative along the given 0-based axis.

    Termwise c(q) x^u -> c(q) [u_axis]_q x^(u - e_axis); constant-in-axis
    terms vanish.  Equivalent to (f - q_shift(f, axis)) / ((1-q) x_axis),
    but computed without division.
    """
    terms = {}
    for u, c in f.terms.items():
        e = u[axis]
        if e < 0:
            raise PreconditionError("Jackson derivative needs nonnegative exponents")
        if e == 0:
            continue
        key = u[:axis] + (e - 1,) + u[axis + 1 :]
        val = c * q_integer(e)
        if key in terms:
            val = terms[key] + val
        terms[key] = val
    return LaurentQPoly(terms)


def iterated_jackson(f, axis, times):
    for _ in range(times):
        f = jackson_derivative(f, axis)
    return f


@dataclass(frozen=True)
class FirstOrthantDivisor:
    """A polytope whose first n facets are the coordinate half-spaces u_i >= 0.

    Construction permutes the facets so the standard basis normals with zero
    offset come first, and checks that the polytope sits inside the first
    orthant.  Emptiness is allowed: derived divisors can be empty, and their
    symmetric-weight polynomial is simply zero.
    """

    polytope: lattice.Polytope

    @classmethod
    def from_polytope(cls, P):
        n = P.dim
        basis_pos = []
        for i in range(n):
            e_i = tuple(1 if j == i else 0 for j in range(n))
            try:
                pos = P.normals.index(e_i)
            except ValueError:
                raise PreconditionError(
                    "first-orthant form needs the basis normal %r" % (list(e_i),)
                ) from None
            if P.offsets[pos] != 0:
                raise PreconditionError(
                    "basis facet %r must have offset 0, got %d" % (list(e_i), P.offsets[pos])
                )
            basis_pos.append(pos)
        rest = [j for j in range(P.facet_count) if j not in basis_pos]
        perm = basis_pos + rest
        reordered = lattice.Polytope(
            n,
            tuple(P.normals[j] for j in perm),
            tuple(P.offsets[j] for j in perm),
        )
        for p, _, _ in lattice.basic_solutions(reordered):
            if any(x < 0 for x in p):
                raise PreconditionError("polytope leaves the first orthant at %r" % (list(p),))
        return cls(reordered)

    @property
    def dim(self):
        return self.polytope.dim

    def offset_sum(self):
        return self.polytope.offset_sum()


def derived_divisor(D, axis):
    """Divisor after one Jackson derivative along the given 0-based axis.

    Basis offsets stay zero; every non-basis offset a_j picks up the axis
    coordinate of its normal: a_j -> a_j + v_j[axis].  Geometrically this is
    the polytope cut with u_axis >= 1 and translated back by one basis step;
    the result may be empty or lower-dimensional.
    """
    P = D.polytope
    n = P.dim
    if not 0 <= axis < n:
        raise InvalidInputError("axis out of range")
    offsets = list(P.offsets)
    for j in range(n, P.facet_count):
        offsets[j] = offsets[j] + P.normals[j][axis]
    derived = lattice.Polytope(n, P.normals, tuple(offsets))
    return FirstOrthantDivisor(derived)


def verify_derivative_identity(D, axis):
    """Check: Jackson derivative of the symmetric-weight polynomial equals
    [offset sum]_q times the symmetric-weight polynomial of the derived divisor.

    Returns a report dict; "holds" is the exact coefficientwise comparison.
    A zero offset sum (point polytope) makes both sides zero.
    """
    P = D.polytope
    lhs = jackson_derivative(rs_polynomial(P), axis)
    a_sum = P.offset_sum()
    derived = derived_divisor(D, axis)
    derived_rs = rs_polynomial(derived.polytope)
    factor = q_integer(a_sum) if a_sum >= 1 else QPolynomial.zero()
    rhs = derived_rs.scale(factor)
    return {
        "axis": axis,
        "offset_sum": a_sum,
        "derived_offsets": list(derived.polytope.offsets),
        "holds": lhs == rhs,
    }


def rogers_szego(n, k):
    """Degree-k symmetric-weight polynomial in n variables.

    Built from the standard simplex fan (basis normals plus the all-minus-one
    normal) with offset k on the non-basis facet; the coefficients are the
    q-multinomials [k; i_0 .. i_n]_q.
    """
    if n < 1 or k < 0:
        raise InvalidInputError("need n >= 1 variables and degree k >= 0")
    normals = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    normals.append(tuple(-1 for _ in range(n)))
    offsets = tuple([0] * n + [k])
    P = lattice.Polytope(n, tuple(normals), offsets)
    return rs_polynomial(P)


CONVENTIONS = ("vars_with_one", "vars_without_one")


def elementary_symmetric(n, degree, convention):
    """e_degree of the chosen variable family, as a Laurent polynomial.

    vars_with_one uses the n+1 variables (1, x_1, .., x_n); vars_without_one
    uses (x_1, .., x_n).  Degrees beyond the family size give zero.
    """
    if convention not in CONVENTIONS:
        raise InvalidInputError("unknown convention %r" % (convention,))
    zero_vec = tuple(0 for _ in range(n))
    variables = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    if convention == "vars_with_one":
        variables = [zero_vec] + variables
    if degree < 0 or degree > len(variables):
        return LaurentQPoly.zero()
    terms = {}
    for subset in itertools.combinations(variables, degree):
        key = tuple(sum(col) for col in zip(*subset)) if subset else zero_vec
        terms[key] = QPolynomial.one()
    return LaurentQPoly(terms)


def raising_operator(f, axis, n, convention="vars_with_one"):
    """Ladder raising operator along an axis:

        R_i f = sum_{l=0}^{n} e_{l+1}(vars) (q-1)^l (d/dx_i)_q^l f.

    The variable family for the elementary symmetric factors is fixed by the
    convention; see discriminate_convention for the data-driven choice.
    """
    q_minus_one = QPolynomial((-1, 1))
    out = LaurentQPoly.zero()
    d = f
    for level in range(n + 1):
        e_poly = elementary_symmetric(n, level + 1, convention)
        if not e_poly.is_zero and not d.is_zero:
            out = out + (e_poly * d).scale(q_minus_one ** level)
        if level < n:
            d = jackson_derivative(d, axis)
    return out


def lowering_operator(f, axis):
    """Ladder lowering operator: the Jackson derivative itself."""
    return jackson_derivative(f, axis)


def discriminate_convention():
    """Pick the elementary-symmetric variable family from the n=1 ladder data.

    Exactly one convention satisfies R(RS_0) = RS_1 in one variable; that one
    is returned.  (1, x) gives 1 + x which matches, (x) gives x which does not.
    """
    base = rogers_szego(1, 0)
    target = rogers_szego(1, 1)
    winners = [
        conv for conv in CONVENTIONS if raising_operator(base, 0, 1, conv) == target
    ]
    if len(winners) != 1:
        raise PreconditionError("ladder data does not single out one convention")
    return winners[0]


def verify_ladder(n, max_degree, convention=None):
    """Exact ladder check for the degree family RS_0 .. RS_max_degree.

    Verifies, for every axis: raising R_i(RS_{k-1}) = RS_k, lowering
    L_i(RS_k) = [k]_q RS_{k-1}, and the commutator (L_i R_i - R_i L_i)(RS_k)
    = q^k RS_k.  Returns a report dict with per-identity booleans and a list
    of any failing (identity, axis, degree) triples.
    """
    if convention is None:
        convention = discriminate_convention()
    rs = [rogers_szego(n, k) for k in range(max_degree + 2)]
    failures = []
    for axis in range(n):
        for k in range(1, max_degree + 1):
            if raising_operator(rs[k - 1], axis, n, convention) != rs[k]:
                failures.append(("raising", axis, k))
            if jackson_derivative(rs[k], axis) != rs[k - 1].scale(q_integer(k)):
                failures.append(("lowering", axis, k))
        for k in range(max_degree + 1):
            lr = jackson_derivative(raising_operator(rs[k], axis, n, convention), axis)
            rl = raising_operator(jackson_derivative(rs[k], axis), axis, n, convention)
            if lr - rl != rs[k].scale(QPolynomial.monomial(k)):
                failures.append(("commutator", axis, k))
    report = {
        "n": n,
        "max_degree": max_degree,
        "convention": convention,
        "raising_ok": not any(f[0] == "raising" for f in failures),
        "lowering_ok": not any(f[0] == "lowering" for f in failures),
        "commutator_ok": not any(f[0] == "commutator" for f in failures),
        "failures": failures,
    }
    report["all_ok"] = not failures
    return report


@dataclass(frozen=True)
class LeadingTermResult:
    maximizer: tuple
    value: QPolynomial


def coordinate_sum_maximizer(P):
    """Lattice point maximizing the coordinate sum, lexicographically greatest
    among ties."""
    pts = lattice.lattice_points(P)
    if not pts:
        raise PreconditionError("no lattice points to maximize over")
    return max(pts, key=lambda u: (sum(u), u))


def leading_term_check(P):
    """Iterate the Jackson derivative up to a coordinate-sum maximizer.

    For a radially symmetric first-orthant polytope, applying
    (d/dx_1)^(i_1) .. (d/dx_n)^(i_n) at the maximizer i kills every other
    monomial of the symmetric-weight polynomial (each has some coordinate
    below i), leaving an exact scalar in q.  Returns the maximizer and that
    scalar, which must be nonzero.
    """
    D = FirstOrthantDivisor.from_polytope(P)
    Q = D.polytope
    lattice.require_radially_symmetric(Q)
    maximizer = coordinate_sum_maximizer(Q)
    f = rs_polynomial(Q)
    for axis in range(Q.dim):
        f = iterated_jackson(f, axis, maximizer[axis])
    value = f.coefficient(tuple(0 for _ in range(Q.dim)))
    extra = [u for u in f.support() if any(u)]
    if extra:
        raise PreconditionError("iterated derivative left monomials %r" % (extra,))
    return LeadingTermResult(maximizer=maximizer, value=value)


def leading_term_expected(P):
    """Closed form of the iterated derivative at the maximizer:

        [slack-sum; slacks(maximizer)]_q * prod_k [i_k]_q!

    The q-multinomial is the coefficient of the surviving monomial and each
    axis contributes the q-factorial of its derivative count.
    """
    D = FirstOrthantDivisor.from_polytope(P)
    Q = D.polytope
    lattice.require_radially_symmetric(Q)
    maximizer = coordinate_sum_maximizer(Q)
    slacks = Q.slacks(maximizer)
    out = q_multinomial(sum(slacks), slacks)
    for i_k in maximizer:
        out = out * q_factorial(i_k)
    return out
