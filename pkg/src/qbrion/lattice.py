"""Lattice polytopes in half-space form, with exact integer arithmetic.

A polytope is stored as an intersection of half-spaces

    P = { u in R^n : <u, v_i> >= -a_i,  i = 1..r }

with primitive integer inward normals v_i and integer offsets a_i.  The slack
of a point u at facet i is <u, v_i> + a_i; lattice points are exactly the
integer vectors with all slacks nonnegative.

Vertex enumeration is facet-subset based: every n-element subset of facets
whose normal matrix is invertible and whose solution point satisfies the
remaining inequalities contributes one vertex datum.  For a full-dimensional
smooth polytope this is the usual vertex list; for degenerate offsets (for
example a segment shrunk to a point) the same point may carry several facet
subsets, and each is kept, because the downstream corner-term sums need one
summand per maximal cone of the normal fan, not per geometric point.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyPolytopeError,
    InvalidInputError,
    PreconditionError,
    SmoothnessError,
)


def _solve_square(rows, rhs):
    """Solve an n x n integer system exactly.  Returns (point, det).

    point is a tuple of Fractions (or None when the matrix is singular) and
    det the exact integer determinant.
    """
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return None, 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    det_int = int(det)
    assert det == det_int
    return tuple(m[r][n] for r in range(n)), det_int


def _inverse_unimodular(rows):
    """Inverse of an integer matrix with determinant +-1, as integer columns."""
    n = len(rows)
    cols = []
    for j in range(n):
        rhs = [1 if i == j else 0 for i in range(n)]
        col, det = _solve_square(rows, rhs)
        assert col is not None and det in (-1, 1)
        cols.append(tuple(int(x) for x in col))
    return cols


def _kernel_vector(rows, n):
    """Integer spanning vector of ker(rows) when the rank is exactly n-1."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    if rank != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for r, col in enumerate(pivots):
        vec[col] = -m[r][free]
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class Polytope:
    """Half-space description with primitive integer normals."""

    dim: int
    normals: tuple
    offsets: tuple

    def __post_init__(self):
        n, r = self.dim, len(self.normals)
        if n < 1:
            raise InvalidInputError("dimension must be at least 1")
        if r != len(self.offsets):
            raise InvalidInputError("need one offset per facet normal")
        if r == 0:
            raise InvalidInputError("a bounded polytope needs at least one facet")
        seen = set()
        for v in self.normals:
            if len(v) != n or any(not isinstance(x, int) for x in v):
                raise InvalidInputError("normals must be integer vectors of length %d" % n)
            if all(x == 0 for x in v):
                raise InvalidInputError("facet normals must be nonzero")
            g = 0
            for x in v:
                g = math.gcd(g, abs(x))
            if g != 1:
                raise InvalidInputError("facet normal %r is not primitive" % (list(v),))
            if v in seen:
                raise InvalidInputError("duplicate facet normal %r" % (list(v),))
            seen.add(v)
        for a in self.offsets:
            if not isinstance(a, int):
                raise InvalidInputError("facet offsets must be integers")
        if not self._is_bounded():
            raise InvalidInputError("the half-space intersection is unbounded")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_facets(cls, dim, facets):
        normals = tuple(tuple(int(x) for x in normal) for normal, _ in facets)
        offsets = tuple(int(a) for _, a in facets)
        return cls(dim, normals, offsets)

    @classmethod
    def from_dict(cls, data):
        try:
            dim = data["dim"]
            facets = [(f["normal"], f["offset"]) for f in data["facets"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError("polytope JSON needs 'dim' and 'facets' entries") from exc
        return cls.from_facets(dim, facets)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError("not valid JSON: %s" % exc) from exc
        return cls.from_dict(data)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return cls.from_json(fh.read())
        except OSError as exc:
            raise InvalidInputError("cannot read %s: %s" % (path, exc)) from exc

    def to_dict(self):
        return {
            "dim": self.dim,
            "facets": [
                {"normal": list(v), "offset": a}
                for v, a in zip(self.normals, self.offsets)
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def content_hash(self):
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    # -- basic geometry --------------------------------------------------------

    @property
    def facet_count(self):
        return len(self.normals)

    def slacks(self, u):
        return tuple(
            sum(x * y for x, y in zip(u, v)) + a
            for v, a in zip(self.normals, self.offsets)
        )

    def contains(self, u):
        return all(s >= 0 for s in self.slacks(u))

    def offset_sum(self):
        return sum(self.offsets)

    def normal_sum(self):
        return tuple(sum(v[j] for v in self.normals) for j in range(self.dim))

    def is_radially_symmetric(self):
        return all(x == 0 for x in self.normal_sum())

    def _is_bounded(self):
        """Recession cone check: bounded iff no nonzero u has all <u,v_i> >= 0.

        The normals must span R^n (otherwise the cone contains a line), and no
        candidate extreme-ray direction (kernel of n-1 independent normals) may
        satisfy all inequalities.
        """
        n = len(self.normals[0])
        probe = [[Fraction(x) for x in v] for v in self.normals]
        rank = 0
        for col in range(n):
            pivot = None
            for r in range(rank, len(probe)):
                if probe[r][col] != 0:
                    pivot = r
                    break
            if pivot is None:
                continue
            probe[rank], probe[pivot] = probe[pivot], probe[rank]
            inv = 1 / probe[rank][col]
            probe[rank] = [x * inv for x in probe[rank]]
            for r in range(len(probe)):
                if r != rank and probe[r][col] != 0:
                    f = probe[r][col]
                    probe[r] = [x - f * y for x, y in zip(probe[r], probe[rank])]
            rank += 1
        if rank < n:
            return False
        for subset in itertools.combinations(range(len(self.normals)), n - 1):
            w = _kernel_vector([self.normals[i] for i in subset], n)
            if w is None:
                continue
            if all(sum(x * y for x, y in zip(w, v)) >= 0 for v in self.normals):
                return False
            wneg = tuple(-x for x in w)
            if all(sum(x * y for x, y in zip(wneg, v)) >= 0 for v in self.normals):
                return False
        return True


@dataclass(frozen=True)
class VertexData:
    """One maximal corner of the polytope.

    point: the integer vertex; facet_set: indices of the n facets meeting
    there; edge_dirs: for each facet index i in facet_set, the primitive
    integer direction u_i with <u_i, v_j> = delta_ij over j in facet_set
    (the edge leaving the vertex that is NOT contained in facet i).
    """

    point: tuple
    facet_set: tuple
    edge_dirs: tuple  # aligned with facet_set

    def edge_dir(self, facet_index):
        return self.edge_dirs[self.facet_set.index(facet_index)]


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    radially_symmetric: bool
    all_facets_touch: bool
    full_dimensional: bool
    vertex_count: int
    lattice_point_count: int
    problems: tuple

    def to_dict(self):
        return {
            "smooth": self.smooth,
            "radially_symmetric": self.radially_symmetric,
            "all_facets_touch": self.all_facets_touch,
            "full_dimensional": self.full_dimensional,
            "vertex_count": self.vertex_count,
            "lattice_point_count": self.lattice_point_count,
            "problems": list(self.problems),
        }


def basic_solutions(P):
    """All (point, facet_subset, det) with invertible subset and feasible point."""
    out = []
    for subset in itertools.combinations(range(P.facet_count), P.dim):
        rows = [P.normals[i] for i in subset]
        rhs = [-P.offsets[i] for i in subset]
        point, det = _solve_square(rows, rhs)
        if point is None:
            continue
        slacks = [
            sum(x * y for x, y in zip(point, v)) + a
            for v, a in zip(P.normals, P.offsets)
        ]
        if all(s >= 0 for s in slacks):
            out.append((point, subset, det))
    return out


def _scan(P):
    """Shared vertex scan: (solutions, smooth, full_dimensional, problems)."""
    sols = basic_solutions(P)
    problems = []
    smooth = True
    for point, subset, det in sols:
        if det not in (-1, 1):
            smooth = False
            problems.append(
                "facets %r meet at a feasible point with determinant %d" % (list(subset), det)
            )
        if any(x.denominator != 1 for x in point):
            smooth = False
            problems.append(
                "facets %r meet at the non-integral point %r"
                % (list(subset), [str(x) for x in point])
            )
    points = sorted({tuple(p) for p, _, _ in sols})
    full_dimensional = False
    if points:
        base = points[0]
        diffs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
        rank = 0
        cols = list(range(P.dim))
        mat = [list(map(Fraction, d)) for d in diffs]
        for col in cols:
            pivot = None
            for r in range(rank, len(mat)):
                if mat[r][col] != 0:
                    pivot = r
                    break
            if pivot is None:
                continue
            mat[rank], mat[pivot] = mat[pivot], mat[rank]
            inv = 1 / mat[rank][col]
            mat[rank] = [x * inv for x in mat[rank]]
            for r in range(len(mat)):
                if r != rank and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
            rank += 1
        full_dimensional = rank == P.dim
    if smooth and full_dimensional:
        # Simplicity: a vertex of a smooth full-dimensional polytope lies on
        # exactly n facets.
        for p in points:
            tight = sum(1 for s in P.slacks(p) if s == 0)
            if tight != P.dim:
                smooth = False
                problems.append(
                    "vertex %r lies on %d facets, expected %d" % (list(p), tight, P.dim)
                )
    return sols, smooth, full_dimensional, tuple(problems)


def validate(P):
    """Validation report: smoothness, radial symmetry, touching facets, dimension.

    Raises EmptyPolytopeError when the half-space intersection has no point;
    everything else is reported as flags, not errors, so callers can decide
    which properties their operation actually needs.
    """
    sols, smooth, full_dimensional, problems = _scan(P)
    if not sols:
        raise EmptyPolytopeError("the half-space intersection is empty")
    touch = []
    for i in range(P.facet_count):
        v, a = P.normals[i], P.offsets[i]
        slack_min = min(
            sum(x * y for x, y in zip(p, v)) + a for p, _, _ in sols
        )
        touch.append(slack_min == 0)
    return ValidationReport(
        smooth=smooth,
        radially_symmetric=P.is_radially_symmetric(),
        all_facets_touch=all(touch),
        full_dimensional=full_dimensional,
        vertex_count=len({tuple(p) for p, _, _ in sols}),
        lattice_point_count=len(lattice_points(P)),
        problems=problems,
    )


def enumerate_vertices(P):
    """Vertex data for every feasible unimodular facet subset.

    Raises SmoothnessError if any feasible facet subset is non-unimodular or
    meets at a non-integral point, and (for full-dimensional P) if some vertex
    lies on more than n facets.  Degenerate offsets may legitimately produce
    several vertex data at one geometric point; each carries its own facet
    subset and edge directions.
    """
    sols, smooth, full_dimensional, problems = _scan(P)
    if not sols:
        raise EmptyPolytopeError("the half-space intersection is empty")
    if not smooth:
        raise SmoothnessError("; ".join(problems))
    out = []
    for point, subset, det in sorted(sols, key=lambda s: (s[0], s[1])):
        rows = [P.normals[i] for i in subset]
        cols = _inverse_unimodular(rows)
        out.append(
            VertexData(
                point=tuple(int(x) for x in point),
                facet_set=tuple(subset),
                edge_dirs=tuple(cols),
            )
        )
    return out


def vertex_points(P):
    """Sorted distinct vertex points (exact rationals cast to int when integral)."""
    pts = sorted({tuple(p) for p, _, _ in basic_solutions(P)})
    return [tuple(int(x) if x.denominator == 1 else x for x in p) for p in pts]


def _coordinate_box(P):
    sols = basic_solutions(P)
    if not sols:
        return None
    lo, hi = [], []
    for j in range(P.dim):
        vals = [p[j] for p, _, _ in sols]
        lo.append(math.ceil(min(vals)))
        hi.append(math.floor(max(vals)))
    return lo, hi


def lattice_points(P):
    """All integer points of P in lexicographic order."""
    return [u for u, _ in points_with_slacks(P)]


def points_with_slacks(P):
    """Yield (point, slack vector) pairs in lexicographic point order.

    The last coordinate is enumerated by an exact interval computed from the
    facet inequalities, and slack vectors are updated incrementally along each
    row, so the cost is proportional to the number of points plus rows.
    """
    box = _coordinate_box(P)
    if box is None:
        return
    lo, hi = box
    n = P.dim
    last_steps = [v[n - 1] for v in P.normals]
    for prefix in itertools.product(*[range(lo[j], hi[j] + 1) for j in range(n - 1)]):
        base = [
            sum(prefix[j] * v[j] for j in range(n - 1)) + a
            for v, a in zip(P.normals, P.offsets)
        ]
        row_lo, row_hi = lo[n - 1], hi[n - 1]
        feasible = True
        for b, w in zip(base, last_steps):
            if w == 0:
                if b < 0:
                    feasible = False
                    break
            elif w > 0:
                row_lo = max(row_lo, math.ceil(Fraction(-b, w)))
            else:
                row_hi = min(row_hi, math.floor(Fraction(-b, w)))
        if not feasible or row_lo > row_hi:
            continue
        slack = [b + w * row_lo for b, w in zip(base, last_steps)]
        for t in range(row_lo, row_hi + 1):
            yield prefix + (t,), tuple(slack)
            if t < row_hi:
                slack = [s + w for s, w in zip(slack, last_steps)]


def dilate(P, k):
    """k-fold dilation: same normals, offsets scaled by the positive integer k."""
    if not isinstance(k, int) or k < 1:
        raise InvalidInputError("dilation factor must be a positive integer")
    return Polytope(P.dim, P.normals, tuple(k * a for a in P.offsets))


def degree_valuation(P, b):
    """f(b) = sum_i [ b_i (b_i + 1)/2 + a_i b_i ], the q-power a degree vector
    contributes to its corner term."""
    return sum(bi * (bi + 1) // 2 + a * bi for bi, a in zip(b, P.offsets))


def _per_coordinate_minimum(a):
    """min over integers t >= 0 of g(t) = t(t+1)/2 + a t (convex in t)."""
    best = 0  # t = 0
    t_star = max(0, -a)  # real minimum is near t = -a - 1/2
    for t in (t_star - 1, t_star, t_star + 1):
        if t >= 0:
            best = min(best, t * (t + 1) // 2 + a * t)
    return best


def corner_degree_valuation(P, vd, b):
    """Minimal q-power of one corner summand, for a possibly signed vector.

    Entries on the vertex's own facet coordinates may be negative: such an
    entry turns its corner factor into a finite product with no quadratic
    q-shift, so only the linear offset part a_i b_i remains. Negative entries
    off the facet set are rejected."""
    facet_set = set(vd.facet_set)
    total = 0
    for i, (bi, a) in enumerate(zip(b, P.offsets)):
        if bi >= 0:
            total += bi * (bi + 1) // 2 + a * bi
        elif i in facet_set:
            total += a * bi
        else:
            raise InvalidInputError(
                "negative degree entry off the vertex facet set"
            )
    return total


def enumerate_corner_degrees(P, vd, order):
    """Signed degree vectors feeding one vertex's corner sum, valuation <= order.

    The kernel condition sum_i b_i v_i = 0 is solved coordinate by coordinate:
    entries off the vertex's facet set range over nonnegative integers (the
    free part), and the facet entries are the unique integral completion
    against the facet-normal basis, where they may go negative. b = 0 is
    always present; for product-of-simplex fans the completion is never
    negative and the result matches the globally nonnegative enumeration.

    The walk over free coordinates prunes with a penalized quadratic
    lower bound: free coordinate j costs at least
    g_j(t) = t(t+1)/2 + (a_j - pen_j) t, where pen_j bounds how much one unit
    of t can reduce the facet entries' linear offset contribution.
    """
    if order < 0:
        raise InvalidInputError("series order must be nonnegative")
    r, n = P.facet_count, P.dim
    facet_set = list(vd.facet_set)
    in_facet = set(facet_set)
    free = [j for j in range(r) if j not in in_facet]
    if not free:
        return [tuple([0] * r)] if 0 <= order else []
    # expansion of each free normal in the facet-normal basis, via duality
    expand = {}
    for j in free:
        expand[j] = [
            sum(e * v for e, v in zip(vd.edge_dirs[pos], P.normals[j]))
            for pos in range(n)
        ]
    penalties = {}
    for j in free:
        penalties[j] = sum(
            abs(P.offsets[facet_set[pos]]) * abs(expand[j][pos])
            for pos in range(n)
        )
    eff = {j: P.offsets[j] - penalties[j] for j in free}
    mins = {j: _per_coordinate_minimum(eff[j]) for j in free}
    total_min = sum(mins.values())
    bounds = {}
    for j in free:
        budget = order - (total_min - mins[j])
        t = 0
        while t * (t + 1) // 2 + eff[j] * t <= budget:
            t += 1
        bounds[j] = t - 1
    suffix_min = [0] * (len(free) + 1)
    for pos in range(len(free) - 1, -1, -1):
        suffix_min[pos] = suffix_min[pos + 1] + mins[free[pos]]
    out = []
    k = {}

    def emit():
        b = [0] * r
        derived = [0] * n
        for j, t in k.items():
            b[j] = t
            for pos in range(n):
                derived[pos] += t * expand[j][pos]
        for pos in range(n):
            b[facet_set[pos]] = -derived[pos]
        if corner_degree_valuation(P, vd, b) <= order:
            out.append(tuple(b))

    def walk(pos, val):
        if pos == len(free):
            emit()
            return
        j = free[pos]
        for t in range(bounds[j] + 1):
            g = t * (t + 1) // 2 + eff[j] * t
            if val + g + suffix_min[pos + 1] > order:
                if t >= max(0, -eff[j]):
                    break  # g only grows from here on
                continue
            k[j] = t
            walk(pos + 1, val + g)
        k.pop(j, None)

    walk(0, 0)
    return sorted(out)


def enumerate_degrees(P, order):
    """All nonnegative integer vectors b with sum_i b_i v_i = 0 and f(b) <= order.

    Depth-first scan with per-coordinate pruning: coordinate i is capped where
    g_i(b_i) = b_i(b_i+1)/2 + a_i b_i already exceeds what the remaining
    coordinates could still compensate (their exact integer minima, which can
    be negative when offsets are negative).
    """
    if order < 0:
        raise InvalidInputError("series order must be nonnegative")
    r, n = P.facet_count, P.dim
    mins = [_per_coordinate_minimum(a) for a in P.offsets]
    total_min = sum(mins)
    bounds = []
    for i, a in enumerate(P.offsets):
        budget = order - (total_min - mins[i])
        t = 0
        while t * (t + 1) // 2 + a * t <= budget:
            t += 1
        bounds.append(t - 1)
    out = []
    suffix_min = [0] * (r + 1)
    for i in range(r - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + mins[i]
    b = [0] * r
    vec = [0] * n

    def walk(i, val):
        if i == r:
            if all(x == 0 for x in vec) and val <= order:
                out.append(tuple(b))
            return
        v = P.normals[i]
        for t in range(bounds[i] + 1):
            g = t * (t + 1) // 2 + P.offsets[i] * t
            if val + g + suffix_min[i + 1] > order:
                if t >= max(0, -P.offsets[i]):
                    break  # g only grows from here on
                continue
            b[i] = t
            for j in range(n):
                vec[j] += t * v[j]
            walk(i + 1, val + g)
            for j in range(n):
                vec[j] -= t * v[j]
        b[i] = 0

    walk(0, 0)
    return sorted(out)


def require_radially_symmetric(P):
    if not P.is_radially_symmetric():
        raise PreconditionError(
            "operation needs radially symmetric normals (they must sum to zero)"
        )
