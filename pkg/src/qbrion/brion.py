"""Exact verification of the q-weighted corner decomposition.

For a polytope P with inward normals v_i and offsets a_i, the weighted
enumerator of its lattice points,

    sum over u in P  of  x^u / prod_i (q; q)_{slack_i(u)},

equals a sum of corner terms, one per vertex cone: the vertex monomial x^p
times a degree-vector sum of reversed-Pochhammer factors, divided by the
infinite products (x^{u_i(p)}; q)_infinity over the vertex's edge directions,
all scaled by 1/(q;q)_infinity^(r-n).  Each vertex carries its own degree
set: integer kernel vectors of the normal map that are nonnegative off the
vertex's facet coordinates; on those coordinates the unique integral
completion may be negative, in which case the corner factor degenerates to a
finite product.  (For products of simplices the completions are always
nonnegative and every vertex sees the same globally nonnegative set.)  Both sides are compared as truncated
power series in q with exact rational coefficients after substituting a
random rational point for x (a polynomial-identity test: agreement at generic
points pins the identity up to the stated order).

Everything here is exact; no floating point.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .errors import InvalidInputError, PoleError, PreconditionError
from .qalg import (
    QPolynomial,
    TruncatedQSeries,
    euler_inverse,
    inverse_reversed_pochhammer,
    pochhammer_finite,
    pochhammer_infinite_inverse,
    q_multinomial,
    q_pochhammer,
)


def thread_count():
    """Worker cap from the QBRION_THREADS environment variable (default 1)."""
    raw = os.environ.get("QBRION_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Order-preserving map, threaded when QBRION_THREADS > 1."""
    workers = thread_count()
    items = list(items)
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def monomial_value(x0, u):
    """x0^u = prod_j x0_j^(u_j) for a rational point and an integer exponent."""
    out = Fraction(1)
    for base, e in zip(x0, u):
        if e:
            out *= Fraction(base) ** e
    return out


class LaurentQPoly:
    """Sparse Laurent polynomial in x_1..x_n whose coefficients live in q.

    Coefficients are either QPolynomial (exact polynomial data) or
    TruncatedQSeries (order-limited data); a single instance never mixes the
    two.  Exponent vectors are integer tuples and may be negative.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for u, c in terms.items():
                if not c.is_zero:
                    self.terms[tuple(u)] = c

    @classmethod
    def zero(cls):
        return cls({})

    @property
    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def coefficient(self, u):
        return self.terms.get(tuple(u), QPolynomial.zero())

    def __add__(self, other):
        if not isinstance(other, LaurentQPoly):
            return NotImplemented
        out = dict(self.terms)
        for u, c in other.terms.items():
            if u in out:
                s = out[u] + c
                if s.is_zero:
                    del out[u]
                else:
                    out[u] = s
            else:
                out[u] = c
        return LaurentQPoly(out)

    def __sub__(self, other):
        if not isinstance(other, LaurentQPoly):
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, c):
        """Multiply every coefficient by c (int, QPolynomial, or series)."""
        if isinstance(c, int):
            if c == 0:
                return LaurentQPoly.zero()
            return LaurentQPoly({u: coeff * c for u, coeff in self.terms.items()})
        return LaurentQPoly({u: coeff * c for u, coeff in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentQPoly):
            return NotImplemented
        out = {}
        for u, cu in self.terms.items():
            for w, cw in other.terms.items():
                key = tuple(a + b for a, b in zip(u, w))
                prod = cu * cw
                if key in out:
                    prod = out[key] + prod
                if prod.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = prod
        return LaurentQPoly(out)

    def shift_x(self, e):
        """Multiply by the monomial x^e."""
        return LaurentQPoly({tuple(a + b for a, b in zip(u, e)): c for u, c in self.terms.items()})

    def evaluate_series(self, x0, order):
        """Substitute the rational point x0; result is a truncated q-series."""
        acc = TruncatedQSeries(order)
        for u, c in sorted(self.terms.items()):
            if isinstance(c, QPolynomial):
                c = c.to_series(order)
            else:
                c = c.truncate(min(order, c.order))
                if c.order < order:
                    raise PreconditionError(
                        "coefficient series order %d below requested order %d" % (c.order, order)
                    )
            acc = acc + c.scale(monomial_value(x0, u))
        return acc

    def __eq__(self, other):
        return isinstance(other, LaurentQPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "LaurentQPoly(%d terms on %s)" % (len(self.terms), self.support())


_INV_QQ_CACHE = {}


def _inverse_qq_series(s, order):
    """1/(q;q)_s modulo q^(order+1); factors beyond the order are 1."""
    key = (min(s, order), order)
    hit = _INV_QQ_CACHE.get(key)
    if hit is None:
        prod = TruncatedQSeries.one(order)
        for k in range(1, min(s, order) + 1):
            factor = [Fraction(1)] + [Fraction(0)] * order
            factor[k] = Fraction(-1)
            prod = prod * TruncatedQSeries(order, factor)
        hit = prod.inverse()
        _INV_QQ_CACHE[key] = hit
    return hit


def g_weight(slacks, order):
    """prod_i 1/(q;q)_{slack_i} as a truncated series (the lattice-point weight)."""
    out = TruncatedQSeries.one(order)
    for s in slacks:
        if s < 0:
            raise InvalidInputError("slacks must be nonnegative")
        out = out * _inverse_qq_series(s, order)
    return out


def lhs_series(P, order):
    """Weighted lattice-point enumerator: sum_u g_weight(slacks(u)) x^u."""
    terms = {}
    for u, slacks in lattice.points_with_slacks(P):
        terms[u] = g_weight(slacks, order)
    return LaurentQPoly(terms)


def rs_polynomial(P):
    """Symmetric-weight polynomial: sum_u [slack-sum; slacks(u)]_q x^u.

    Needs radially symmetric normals, which make the slack sum the same
    constant (the offset sum) at every lattice point, so each coefficient is
    an exact q-multinomial.  An empty polytope gives the zero polynomial.
    """
    lattice.require_radially_symmetric(P)
    terms = {}
    for u, slacks in lattice.points_with_slacks(P):
        terms[u] = q_multinomial(sum(slacks), slacks)
    return LaurentQPoly(terms)


def _edge_values(x0, vd):
    return [monomial_value(x0, e) for e in vd.edge_dirs]


def _sample_from_rng(P, rng, bound, vertices, max_attempts=10000):
    n = P.dim
    for _ in range(max_attempts):
        coords = []
        for _ in range(n):
            num = rng.randint(1, bound)
            den = rng.randint(1, bound)
            sign = 1 if rng.random() < 0.5 else -1
            coords.append(Fraction(sign * num, den))
        x0 = tuple(coords)
        if any(c in (0, 1, -1) for c in coords):
            continue
        ok = True
        for vd in vertices:
            for val in _edge_values(x0, vd):
                if val == 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return x0
    raise PreconditionError("could not sample a pole-free evaluation point")


def sample_generic_point(P, seed=0, bound=9):
    """Deterministic random rational point avoiding all evaluation poles.

    Coordinates are reduced fractions with numerator and denominator drawn
    from [1, bound] (random sign), resampled until no coordinate is 0 or +-1
    and no vertex edge monomial x0^{u_i(p)} evaluates to 1.
    """
    vertices = lattice.enumerate_vertices(P)
    return _sample_from_rng(P, random.Random(seed), bound, vertices)


def _term_parts(P, vd, b, x0, order, edge_vals, inf_prod):
    """One corner/degree summand as (qshift, scalar, series at the order
    needed so that qshift + trusted range reaches the requested order).

    Degree entries on the vertex's facet coordinates may be negative; such an
    entry contributes a finite product factor (no q-shift, no pole) instead of
    a reversed-Pochhammer reciprocal."""
    shift = lattice.corner_degree_valuation(P, vd, b)
    unit_order = order - shift
    if unit_order < 0:
        return shift, Fraction(0), TruncatedQSeries(0)
    sign = 1
    cpow = Fraction(1)
    series = inf_prod.truncate(unit_order) if inf_prod.order > unit_order else inf_prod
    facet_set = set(vd.facet_set)
    for pos, i in enumerate(vd.facet_set):
        d = b[i]
        if d == 0:
            continue
        if d < 0:
            series = series * pochhammer_finite(edge_vals[pos], -d, unit_order)
            continue
        s, p, _, ser = inverse_reversed_pochhammer(edge_vals[pos], d, unit_order)
        sign *= s
        cpow *= edge_vals[pos] ** p
        series = series * ser
    for j in range(P.facet_count):
        if j in facet_set:
            continue
        d = b[j]
        if d == 0:
            continue
        s, _, _, ser = inverse_reversed_pochhammer(Fraction(1), d, unit_order)
        sign *= s
        series = series * ser
    scalar = monomial_value(x0, vd.point) * cpow * sign
    return shift, scalar, series


def vertex_term(P, vd, b, x0, order):
    """Corner term of one vertex datum and one degree vector, as a series.

    The term's minimal q-power is sum_i [b_i(b_i+1)/2 + a_i b_i] over the
    nonnegative entries plus a_i b_i over negative facet entries; when that
    valuation is negative the term leaves the power-series ring and this
    public form refuses (rhs_series_at handles those internally, where the
    negative powers cancel across vertices).
    """
    edge_vals = _edge_values(x0, vd)
    for val in edge_vals:
        if val == 1:
            raise PoleError("evaluation point sits on a pole of a corner term")
    inf_prod = TruncatedQSeries.one(order)
    for val in edge_vals:
        inf_prod = inf_prod * pochhammer_infinite_inverse(val, order)
    shift, scalar, series = _term_parts(P, vd, b, x0, order, edge_vals, inf_prod)
    if shift < 0:
        raise PreconditionError("corner term has negative q-valuation %d" % shift)
    scaled = series.scale(scalar)
    coeffs = [Fraction(0)] * (order + 1)
    for j, c in enumerate(scaled.coeffs):
        if shift + j <= order:
            coeffs[shift + j] = c
    return TruncatedQSeries(order, coeffs)


def rhs_series_at(P, x0, order):
    """Corner-sum side of the identity, evaluated at the rational point x0.

    Each vertex is summed against its own signed degree vectors with
    valuation <= order, accumulating in a window of q-powers
    [min(0, min valuation), order]; any negative powers (possible with
    negative offsets or deep signed entries) must cancel in the total, which
    is asserted.  The result is multiplied by 1/(q;q)_infinity^(facets - dim).
    """
    vertices = lattice.enumerate_vertices(P)
    per_vertex = [lattice.enumerate_corner_degrees(P, vd, order) for vd in vertices]
    min_f = 0
    for vd, degs in zip(vertices, per_vertex):
        for b in degs:
            min_f = min(min_f, lattice.corner_degree_valuation(P, vd, b))
    window = order - min_f
    for val in (monomial_value(x0, e) for vd in vertices for e in vd.edge_dirs):
        if val == 1:
            raise PoleError("evaluation point sits on a pole of a corner term")

    def corner_sum(args):
        vd, degs = args
        edge_vals = _edge_values(x0, vd)
        inf_prod = TruncatedQSeries.one(window)
        for val in edge_vals:
            inf_prod = inf_prod * pochhammer_infinite_inverse(val, window)
        acc = [Fraction(0)] * (window + 1)
        for b in degs:
            shift, scalar, series = _term_parts(P, vd, b, x0, order, edge_vals, inf_prod)
            if scalar == 0:
                continue
            base = shift - min_f
            for j, c in enumerate(series.coeffs):
                if c != 0 and base + j <= window:
                    acc[base + j] += scalar * c
        return acc

    partials = parallel_map(corner_sum, list(zip(vertices, per_vertex)))
    acc = [Fraction(0)] * (window + 1)
    for part in partials:
        for j, c in enumerate(part):
            acc[j] += c
    prefactor = euler_inverse(window) ** (P.facet_count - P.dim)
    total = TruncatedQSeries(window, acc) * prefactor
    for j in range(-min_f):
        if total.coeffs[j] != 0:
            raise PreconditionError(
                "negative q-power q^%d survived the corner sum" % (j + min_f)
            )
    return TruncatedQSeries(order, total.coeffs[-min_f:])


def lhs_value_at(P, x0, order):
    """Weighted enumerator evaluated at the rational point x0."""
    acc = [Fraction(0)] * (order + 1)
    for u, slacks in lattice.points_with_slacks(P):
        xu = monomial_value(x0, u)
        for j, c in enumerate(g_weight(slacks, order).coeffs):
            if c != 0:
                acc[j] += xu * c
    return TruncatedQSeries(order, acc)


@dataclass
class VerificationReport:
    polytope_hash: str
    order: int
    trials: int
    seed: int
    finite_form: bool
    points: list
    equal: bool
    first_mismatch: object
    degree_vectors_used: int
    elapsed_ms: float

    def to_dict(self):
        return {
            "polytope_hash": self.polytope_hash,
            "order": self.order,
            "trials": self.trials,
            "seed": self.seed,
            "finite_form": self.finite_form,
            "points": self.points,
            "equal": self.equal,
            "first_mismatch": self.first_mismatch,
            "degree_vectors_used": self.degree_vectors_used,
            "elapsed_ms": self.elapsed_ms,
        }


def _first_difference(lhs, rhs):
    for j in range(min(lhs.order, rhs.order) + 1):
        if lhs.coeffs[j] != rhs.coeffs[j]:
            return j
    return None


def verify_identity(P, order=12, trials=3, seed=0, finite_form=False):
    """Randomized exact check of the corner decomposition up to q^order.

    Each trial substitutes a fresh deterministic random rational point and
    compares both sides coefficient by coefficient.  With finite_form=True
    (radially symmetric polytopes only) both sides are multiplied by
    (q;q)_{offset sum} and additionally compared against the exact
    symmetric-weight polynomial, whose coefficients are q-multinomials.
    """
    start = time.perf_counter()
    if finite_form:
        lattice.require_radially_symmetric(P)
    vertices = lattice.enumerate_vertices(P)
    used = {
        b
        for vd in vertices
        for b in lattice.enumerate_corner_degrees(P, vd, order)
    }
    rng = random.Random(seed)
    points = []
    equal = True
    first_mismatch = None
    rs = rs_polynomial(P) if finite_form else None
    qq = q_pochhammer(P.offset_sum()).to_series(order) if finite_form else None
    for t in range(trials):
        x0 = _sample_from_rng(P, rng, 9, vertices)
        points.append([str(c) for c in x0])
        lhs = lhs_value_at(P, x0, order)
        rhs = rhs_series_at(P, x0, order)
        pairs = [("corner_sum", lhs, rhs)]
        if finite_form:
            lhs_fin = lhs * qq
            rhs_fin = rhs * qq
            rs_val = rs.evaluate_series(x0, order)
            pairs = [
                ("corner_sum_finite", lhs_fin, rhs_fin),
                ("symmetric_polynomial", lhs_fin, rs_val),
            ]
        for label, a_side, b_side in pairs:
            j = _first_difference(a_side, b_side)
            if j is not None and equal:
                equal = False
                first_mismatch = {
                    "trial": t,
                    "comparison": label,
                    "power": j,
                    "lhs": str(a_side.coeffs[j]),
                    "rhs": str(b_side.coeffs[j]),
                    "point": [str(c) for c in x0],
                }
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return VerificationReport(
        polytope_hash=P.content_hash(),
        order=order,
        trials=trials,
        seed=seed,
        finite_form=finite_form,
        points=points,
        equal=equal,
        first_mismatch=first_mismatch,
        degree_vectors_used=len(used),
        elapsed_ms=elapsed_ms,
    )
