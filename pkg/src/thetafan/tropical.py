"""Rigid tropical disks and curves: enumeration, multiplicities, counts.

This module is the independent check on the broken-line machinery: it
never touches walls or scattering functions.  Counts are assembled from
scratch out of balanced trees in the plane matching affine constraints,
with multiplicities computed two ways (the lattice-index recursion and
the derivation-algebra recursion) that are asserted against each other.

Scope: rank(N-bar) = 2, matching the seeds the rest of the library can
complete.
"""

from fractions import Fraction
from itertools import combinations

from .errors import DomainError, GeometryError, InputError, InternalError, UnsupportedScopeError
from .linalg import (primitive, rational_solve_unique, vec_add, vec_dot,
                     vec_gcd, vec_is_zero, vec_sub)


# ---------------------------------------------------------------------------
# end/constraint records

class End:
    """A marked unbounded edge: weighted direction plus a constraint.

    delta is the weight-times-direction vector in bar coordinates (zero
    for contracted ends).  constraint is one of
      ("line", normal, value, alpha)  -- host vertex on a line, alpha the
                                         index-w covector attached to it
      ("point", position)            -- host vertex pinned
      ("plane",)                     -- unconstrained
    psi is the psi-class order (nonzero only on contracted ends).
    """

    __slots__ = ("label", "delta", "constraint", "psi", "lie_value", "contracted")

    def __init__(self, label, delta, constraint, psi=0, lie_value=None,
                 contracted=None):
        self.label = label
        self.delta = tuple(delta)
        self.constraint = constraint
        self.psi = psi
        self.lie_value = lie_value
        # the special output edge of a disk is contracted despite having
        # nonzero weight; every other edge is contracted iff its delta is 0
        self.contracted = vec_is_zero(self.delta) if contracted is None else contracted

    def codim(self):
        return {"line": 1, "point": 2, "plane": 0}[self.constraint[0]]


class TropicalCurve:
    """A solved, rigid tree in the plane."""

    __slots__ = ("positions", "compact_edges", "end_edges", "ends", "root")

    def __init__(self, positions, compact_edges, end_edges, ends, root):
        self.positions = positions        # vertex id -> (Fraction, Fraction)
        self.compact_edges = compact_edges  # (parent id, child id, a_vec)
        self.end_edges = end_edges        # (vertex id, end index)
        self.ends = ends                  # list of End
        self.root = root                  # id of the sink used for flows

    def vertex_count(self):
        return len(self.positions)


def rigidity_gap(ends, ambient_rank=2):
    """LHS - RHS of the dimension count; zero means rigid numbers."""
    total = sum(e.codim() for e in ends) + sum(e.psi for e in ends)
    return total - (len(ends) + ambient_rank - 3)


# ---------------------------------------------------------------------------
# tree shape enumeration

def binary_shapes(labels):
    """Leaf-labeled binary trees on labels (n >= 1), enumerated once each."""
    labels = sorted(labels)
    n = len(labels)
    if n == 1:
        yield labels[0]
        return
    first, rest = labels[0], labels[1:]
    # split rest into the part grouped with `first` and the complement;
    # the complement must be nonempty, so `first`'s side has < n leaves
    for k in range(0, len(rest)):
        for group in combinations(rest, k):
            remaining = [x for x in rest if x not in group]
            for left in binary_shapes([first] + list(group)):
                for right in binary_shapes(remaining):
                    yield (left, right)


def set_partitions(items, blocks):
    """Partitions of `items` into exactly `blocks` nonempty unordered blocks."""
    items = list(items)
    if blocks == 0:
        if not items:
            yield []
        return
    if len(items) < blocks:
        return

    def rec(idx, parts):
        if idx == len(items):
            if len(parts) == blocks:
                yield [list(p) for p in parts]
            return
        x = items[idx]
        for p in parts:
            p.append(x)
            yield from rec(idx + 1, parts)
            p.pop()
        if len(parts) < blocks:
            parts.append([x])
            yield from rec(idx + 1, parts)
            parts.pop()

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# solving one combinatorial type

class _TypeBuilder:
    """Vertices, edges, and the linear system of one combinatorial type."""

    def __init__(self, ends):
        self.ends = ends
        self.vertex_ids = []
        self.compact = []      # (parent, child, a_vec)
        self.end_at = []       # (vertex, end index)
        self._next = 0

    def new_vertex(self):
        vid = self._next
        self._next += 1
        self.vertex_ids.append(vid)
        return vid

    def attach_shape(self, shape, parent):
        """Recursively attach a binary shape under `parent`; returns the
        total delta of the shape's leaves."""
        if not isinstance(shape, tuple):
            self.end_at.append((parent, shape))
            return self.ends[shape].delta
        vid = self.new_vertex()
        d1 = self.attach_shape(shape[0], vid)
        d2 = self.attach_shape(shape[1], vid)
        total = vec_add(d1, d2)
        if vec_is_zero(total):
            raise _RejectType
        self.compact.append((parent, vid, total))
        return total

    def solve(self):
        """Solve for vertex positions; None when infeasible/degenerate."""
        index = {v: i for i, v in enumerate(self.vertex_ids)}
        ncols = 2 * len(self.vertex_ids)
        rows, rhs = [], []

        def var(v, c):
            return 2 * index[v] + c

        for vid, ei in self.end_at:
            cons = self.ends[ei].constraint
            if cons[0] == "line":
                row = [0] * ncols
                row[var(vid, 0)] = cons[1][0]
                row[var(vid, 1)] = cons[1][1]
                rows.append(row)
                rhs.append(cons[2])
            elif cons[0] == "point":
                for c in (0, 1):
                    row = [0] * ncols
                    row[var(vid, c)] = 1
                    rows.append(row)
                    rhs.append(cons[1][c])
        for parent, child, a in self.compact:
            # cross(a, X_child - X_parent) = 0
            row = [0] * ncols
            row[var(child, 0)] += -a[1]
            row[var(child, 1)] += a[0]
            row[var(parent, 0)] += a[1]
            row[var(parent, 1)] += -a[0]
            rows.append(row)
            rhs.append(0)
        if ncols == 0:
            for r, b in zip(rows, rhs):
                if b != 0:
                    return None
            return {}
        sol, status = rational_solve_unique(rows, rhs)
        if status == "inconsistent":
            return None
        if status == "underdetermined":
            raise _SlideFamily
        pos = {}
        for vid in self.vertex_ids:
            pos[vid] = (sol[var(vid, 0)], sol[var(vid, 1)])
        return pos

    def validate(self, pos):
        """Positive edge lengths; child = parent + lambda * a, lambda > 0."""
        for parent, child, a in self.compact:
            diff = vec_sub(pos[child], pos[parent])
            i = 0 if a[0] != 0 else 1
            lam = Fraction(diff[i], a[i])
            if lam == 0:
                # colliding vertices: a measure-zero constraint draw
                raise GeometryError("degenerate edge length; redraw translates")
            if lam < 0:
                return False
            if (diff[0] != lam * a[0]) or (diff[1] != lam * a[1]):
                raise InternalError("solved edge not collinear")
        return True


class _RejectType(Exception):
    pass


class _SlideFamily(Exception):
    """Underdetermined but consistent: a sliding family, not rigid."""


def enumerate_rigid(ends, check_dimension=True):
    """All rigid trees matching the marked-end data.

    `ends` is a list of End records.  Contracted ends with psi > 0 or no
    constraint are gathered at one distinguished vertex (valence forced
    by the psi-class equality); contracted point-constrained ends ride
    along edges as ordinary leaves.  Returns TropicalCurve objects.
    """
    if check_dimension and rigidity_gap(ends) != 0:
        raise DomainError("constraint codimensions do not cut dimension zero")
    psi_ends = [i for i, e in enumerate(ends) if e.contracted and e.psi > 0]
    free_ends = [i for i, e in enumerate(ends)
                 if e.contracted and e.psi == 0 and e.constraint[0] == "plane"]
    v0_ends = psi_ends + free_ends
    if free_ends and not psi_ends:
        # a free contracted end only sits rigidly at a pinned vertex
        pointed = [i for i, e in enumerate(ends)
                   if e.contracted and e.psi == 0 and e.constraint[0] == "point"]
        if not pointed:
            raise UnsupportedScopeError(
                "unconstrained contracted ends need a pinned or psi vertex")
        v0_ends = [pointed[0]] + free_ends
    ordinary = [i for i in range(len(ends)) if i not in v0_ends]
    out = []
    if v0_ends:
        # distinguished vertex: valence 3 + sum(psi), carrying the psi,
        # free, and co-located contracted ends; the rest hang off it in
        # `slots` subtrees
        total_psi = sum(ends[i].psi for i in v0_ends)
        slots = 3 + total_psi - len(v0_ends)
        if slots < 0:
            return []
        for blocks in set_partitions(ordinary, slots):
            for shapes in _shape_products([sorted(b) for b in blocks]):
                builder = _TypeBuilder(ends)
                root = builder.new_vertex()
                try:
                    for shape in shapes:
                        builder.attach_shape(shape, root)
                except _RejectType:
                    continue
                for i in v0_ends:
                    builder.end_at.append((root, i))
                curve = _solve_type(builder, root)
                if curve is not None:
                    out.append(curve)
        return out
    # no psi structure: plain trivalent curve; root the tree at the first end
    if not ordinary:
        return []
    anchor = ordinary[0]
    rest = ordinary[1:]
    for shape in binary_shapes(rest) if rest else []:
        builder = _TypeBuilder(ends)
        root = builder.new_vertex()
        builder.end_at.append((root, anchor))
        try:
            if isinstance(shape, tuple):
                d1 = builder.attach_shape(shape[0], root)
                d2 = builder.attach_shape(shape[1], root)
            else:
                raise _RejectType  # two ends, no vertex structure to solve
        except _RejectType:
            continue
        curve = _solve_type(builder, root)
        if curve is not None:
            out.append(curve)
    return out


def _shape_products(blocks):
    if not blocks:
        yield []
        return
    first, rest = blocks[0], blocks[1:]
    for shape in binary_shapes(first):
        for tail in _shape_products(rest):
            yield [shape] + tail


def _solve_type(builder, root):
    try:
        pos = builder.solve()
    except _SlideFamily:
        return None
    if pos is None:
        return None
    if not builder.validate(pos):
        return None
    return TropicalCurve(pos, list(builder.compact), list(builder.end_at),
                         builder.ends, root)


# ---------------------------------------------------------------------------
# multiplicities

def _wedge(f1, f2):
    """Product in the exterior algebra on two covector generators.

    Forms are triples (c0, (a, b), c2) for c0 + (a,b) + c2 * vol.
    """
    c0a, ua, c2a = f1
    c0b, ub, c2b = f2
    c0 = c0a * c0b
    u = (c0a * ub[0] + c0b * ua[0], c0a * ub[1] + c0b * ua[1])
    c2 = c0a * c2b + c0b * c2a + (ua[0] * ub[1] - ua[1] * ub[0])
    return (c0, u, c2)


def _contract(n, form):
    """Interior product iota_n, n a vector, on a form triple."""
    c0, u, c2 = form
    # iota_n(u) = <u, n>;  iota_n(vol) = n1 * b2^ - n2 * b1^
    new_c0 = u[0] * n[0] + u[1] * n[1]
    new_u = (-c2 * n[1], c2 * n[0])
    return (new_c0, new_u, Fraction(0))


_FORM_ONE = (Fraction(1), (Fraction(0), Fraction(0)), Fraction(0))
_FORM_VOL = (Fraction(0), (Fraction(0), Fraction(0)), Fraction(1))


def mult_gw(curve, sink=None):
    """Lattice-index multiplicity via the flow recursion.

    Flows every edge toward the sink, wedging and contracting constraint
    forms; the sink product must be a top-degree form, whose absolute
    coefficient is the multiplicity.
    """
    sink = curve.root if sink is None else sink
    values = {}
    adjacency = {v: [] for v in curve.positions}
    for parent, child, a in curve.compact_edges:
        adjacency[parent].append(child)
        adjacency[child].append(parent)
    ends_of = {}
    for vid, ei in curve.end_edges:
        ends_of.setdefault(vid, []).append(ei)

    def leaf_form(ei):
        end = curve.ends[ei]
        cons = end.constraint
        if cons[0] == "line":
            alpha = (Fraction(0), (Fraction(cons[3][0]), Fraction(cons[3][1])),
                     Fraction(0))
        elif cons[0] == "point":
            alpha = _FORM_VOL
        else:
            alpha = _FORM_ONE
        return (end.delta, alpha)

    def flow(v, parent):
        """Value flowing from vertex v toward `parent`."""
        parts = [leaf_form(ei) for ei in ends_of.get(v, [])]
        for w in adjacency[v]:
            if w != parent:
                parts.append(flow(w, v))
        n_v = (0, 0)
        form = _FORM_ONE
        for nz, f in parts:
            n_v = vec_add(n_v, nz)
            form = _wedge(form, f)
        return (n_v, _contract(n_v, form))

    parts = [leaf_form(ei) for ei in ends_of.get(sink, [])]
    for w in adjacency[sink]:
        parts.append(flow(w, sink))
    n_total = (0, 0)
    form = _FORM_ONE
    for nz, f in parts:
        n_total = vec_add(n_total, nz)
        form = _wedge(form, f)
    if not vec_is_zero(n_total):
        raise InternalError("exponents do not balance at the sink")
    c0, u, c2 = form
    if c0 != 0 or u != (0, 0) or c2 == 0:
        raise DomainError("degenerate wedge at the sink: curve not rigid")
    if c2.denominator != 1:
        raise InternalError("multiplicity is not an integer")
    return abs(int(c2))


class LieValue:
    """Element of the algebra A + h: monomials plus derivations.

    a maps exponent tuples (in N) to coefficients; h maps exponent tuples
    to covectors on N (coefficient folded in).
    """

    __slots__ = ("a", "h")

    def __init__(self, a=None, h=None):
        self.a = dict(a or {})
        self.h = dict(h or {})


def _lie_bracket(x, y):
    out_a = {}
    out_h = {}

    def add_a(expo, c):
        if c:
            out_a[expo] = out_a.get(expo, Fraction(0)) + c

    def add_h(expo, vec):
        if any(vec):
            cur = out_h.get(expo)
            if cur is None:
                out_h[expo] = tuple(vec)
            else:
                out_h[expo] = tuple(a + b for a, b in zip(cur, vec))

    for n1, m1 in x.h.items():
        for n2, c2 in y.a.items():
            add_a(vec_add(n1, n2), c2 * vec_dot(n2, m1))
    for n1, m1 in y.h.items():
        for n2, c2 in x.a.items():
            add_a(vec_add(n1, n2), -c2 * vec_dot(n2, m1))
    for n1, m1 in x.h.items():
        for n2, m2 in y.h.items():
            vec = tuple(vec_dot(n2, m1) * b - vec_dot(n1, m2) * a
                        for a, b in zip(m1, m2))
            add_h(vec_add(n1, n2), vec)
    return LieValue(out_a, out_h)


def mult_lie(curve):
    """Derivation-algebra multiplicity; returns (coefficient, exponent).

    Leaves carry the values stored on the ends (set by the caller);
    non-sink vertices bracket their two inflows, and the sink multiplies
    everything in A.  The sign is normalized at the end.
    """
    sink = curve.root
    adjacency = {v: [] for v in curve.positions}
    for parent, child, a in curve.compact_edges:
        adjacency[parent].append(child)
        adjacency[child].append(parent)
    ends_of = {}
    for vid, ei in curve.end_edges:
        ends_of.setdefault(vid, []).append(ei)

    def flow(v, parent):
        parts = [curve.ends[ei].lie_value for ei in ends_of.get(v, [])]
        for w in adjacency[v]:
            if w != parent:
                parts.append(flow(w, v))
        if len(parts) != 2:
            raise InternalError("non-sink vertex is not trivalent")
        return _lie_bracket(parts[0], parts[1])

    parts = [curve.ends[ei].lie_value for ei in ends_of.get(sink, [])]
    for w in adjacency[sink]:
        parts.append(flow(w, sink))
    for p in parts:
        if p.h:
            raise InternalError("derivation part survives to the sink")
    rank = _rank_of(parts)
    prod = {(0,) * rank: Fraction(1)}
    for p in parts:
        new = {}
        for n1, c1 in prod.items():
            for n2, c2 in p.a.items():
                key = vec_add(n1, n2)
                new[key] = new.get(key, Fraction(0)) + c1 * c2
        prod = {k: v for k, v in new.items() if v != 0}
    if len(prod) != 1:
        raise InternalError("sink product is not a single monomial")
    (expo, coeff), = prod.items()
    return coeff, expo


def _rank_of(parts):
    for p in parts:
        for n in p.a:
            return len(n)
        for n in p.h:
            return len(n)
    raise InternalError("no monomials at the sink")

# ---------------------------------------------------------------------------
# disk counts for theta coefficients

def partitions_ascending(total):
    """All ascending tuples of positive integers summing to `total`."""
    if total == 0:
        yield ()
        return

    def rec(remaining, minimum, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        for part in range(minimum, remaining + 1):
            acc.append(part)
            yield from rec(remaining - part, part, acc)
            acc.pop()

    yield from rec(total, 1, [])


def aut_order(weights):
    """|Aut| of an ascending weight tuple: product of multiplicity factorials."""
    from math import factorial

    out = 1
    i = 0
    while i < len(weights):
        j = i
        while j < len(weights) and weights[j] == weights[i]:
            j += 1
        out *= factorial(j - i)
        i = j
    return out


def a_coefficient(weight):
    """(-1)^(w+1) / w, the log-expansion coefficient carried by weight w."""
    return Fraction((-1) ** (weight + 1), weight)


class DegreeSpec:
    """Weight vectors per unfrozen index plus the point data of one count."""

    def __init__(self, weights, points, p, target):
        self.weights = weights      # dict unfrozen index -> ascending tuple
        self.points = points        # tuple of bar points
        self.p = tuple(p)
        self.target = tuple(target)  # n = phi(p) + r in N

    def aut(self):
        out = 1
        for w in self.weights.values():
            out *= aut_order(w)
        return out

    def a_weight(self):
        out = Fraction(1)
        for w in self.weights.values():
            for part in w:
                out *= a_coefficient(part)
        return out


def _draw_translate(rng, denom_min=10 ** 4):
    den = rng.randrange(denom_min, 10 * denom_min)
    num = 0
    while num == 0:
        num = rng.randrange(-5 * den, 5 * den + 1)
    return Fraction(num, den)


def near_ray_basepoint(diagram, p, rng, scale=10 ** 6):
    """A generic rational point far out along the ray through p.

    "Close to the ray" in the direction sense: the point is a large
    multiple of p nudged off the ray, so it dominates the bounded generic
    translates used for the disk constraints.  For p = 0 any generic
    point qualifies.
    """
    p = tuple(p)
    if vec_is_zero(p):
        from .scattering import random_generic_point
        return random_generic_point(diagram, rng)
    perp = (-p[1], p[0])
    for _ in range(1000):
        den = rng.randrange(10 ** 4, 10 ** 5)
        t = scale + Fraction(rng.randrange(1, den), den)
        delta = Fraction(rng.randrange(-3 * den, 3 * den + 1), den)
        if delta == 0:
            continue
        Q = (p[0] * t + perp[0] * delta, p[1] * t + perp[1] * delta)
        if not diagram.on_support(Q):
            return Q
    raise InternalError("could not place a near-ray basepoint")


def build_disk_ends(geom, section, spec, Q, rng):
    """End records for the disks of one weight vector and point tuple."""
    ends = []
    s = len(spec.points)
    for i, weights in sorted(spec.weights.items()):
        e_i = geom.seed.basis_vector(i)
        func = geom.functional(e_i)
        if vec_is_zero(func):
            raise InputError("pi1(e_%d) = 0; no wall line to translate" % (i + 1,))
        dir_bar = geom.to_bar(e_i)
        for j, w in enumerate(weights):
            value = _draw_translate(rng)
            lie = LieValue(h={tuple(w * c for c in e_i):
                              tuple(a_coefficient(w) * c for c in geom.pi1(e_i))})
            ends.append(End(("wall", i, j),
                            tuple(w * c for c in dir_bar),
                            ("line", func, value, func),
                            lie_value=lie))
    for k, p_k in enumerate(spec.points):
        phi_pk = section.lattice_value(p_k)
        lie = LieValue(a={phi_pk: Fraction(1)})
        ends.append(End(("point", k), p_k, ("plane",), lie_value=lie))
    out_delta = tuple(-c for c in geom.to_bar(spec.target))
    one = LieValue(a={(0,) * geom.rank: Fraction(1)})
    ends.append(End(("out",), out_delta, ("point", tuple(Q)), psi=s - 1,
                    lie_value=one, contracted=True))
    ends.append(End(("inf",), (0, 0), ("plane",), lie_value=one))
    return ends


def multinomial_factor(curve):
    """prod_V (val(V) - 3)! / prod s_j! over the psi ends at V.

    Rigidity forces the psi-class bound to be an equality at every
    vertex, so with a single nonzero psi order this is always 1; computed
    explicitly so the invariant stays checkable.
    """
    from math import factorial

    valence = {v: 0 for v in curve.positions}
    psi_at = {v: [] for v in curve.positions}
    for parent, child, _a in curve.compact_edges:
        valence[parent] += 1
        valence[child] += 1
    for vid, ei in curve.end_edges:
        valence[vid] += 1
        end = curve.ends[ei]
        if end.contracted and end.psi:
            psi_at[vid].append(end.psi)
    out = 1
    for v in curve.positions:
        numer = factorial(valence[v] - 3) if valence[v] >= 3 else 1
        denom = 1
        for s in psi_at[v]:
            denom *= factorial(s)
        if numer % denom:
            raise InternalError("non-integer multinomial vertex factor")
        out *= numer // denom
    return out


def disk_count(geom, section, spec, Q, rng, check_lie=True):
    """GW-style count sum <Gamma> Mult(Gamma) over rigid disks.

    The <Gamma> factor is provably 1 here (one psi condition, equality
    forced), which check_lie re-asserts together with the equality of the
    two multiplicity recursions on every disk.
    """
    ends = build_disk_ends(geom, section, spec, Q, rng)
    curves = enumerate_rigid(ends)
    total = 0
    for curve in curves:
        m = mult_gw(curve)
        gamma = multinomial_factor(curve)
        if check_lie:
            if gamma != 1:
                raise InternalError("multinomial factor is not 1 on a disk")
            coeff, expo = mult_lie(curve)
            expect = spec.a_weight() * m
            if expo != spec.target or abs(coeff) != abs(expect):
                raise InternalError(
                    "multiplicity recursions disagree: %s vs %s at %r"
                    % (coeff, expect, expo))
        total += gamma * m
    return total, curves


def weight_vectors(geom, m_vec):
    """All weight-vector families with sum_j w_ij = m_vec[i] per unfrozen i."""
    uf = [i for i in geom.seed.unfrozen]
    for i in range(geom.rank):
        if i not in uf and m_vec[i] != 0:
            return
    def rec(idx, acc):
        if idx == len(uf):
            yield dict(acc)
            return
        i = uf[idx]
        for part in partitions_ascending(m_vec[i]):
            acc[i] = part
            yield from rec(idx + 1, acc)
        acc.pop(uf[idx], None)

    yield from rec(0, {})


def tropical_alpha(geom, section, points, p, order, Q, rng, retries=4):
    """alpha(points; p) from rigid disk counts, as {K2 exponent: coeff}.

    Q must be generic and close to the ray through p (callers align it
    with the broken-line side).  Genericity failures in the constraint
    draws are retried with fresh translates.
    """
    if geom.r != 2:
        raise UnsupportedScopeError("tropical counts implemented for rank(N-bar) = 2")
    points = [tuple(q) for q in points]
    p = tuple(p)
    phi_p = section.lattice_value(p)
    sum_phi = tuple(0 for _ in range(geom.rank))
    for q in points:
        sum_phi = vec_add(sum_phi, section.lattice_value(q))
    out = {}
    for m_vec in _bounded_offsets(geom, order):
        n = vec_add(m_vec, sum_phi)
        r = vec_sub(n, phi_p)
        if not geom.in_K2(r):
            continue
        acc = Fraction(0)
        for weights in weight_vectors(geom, m_vec):
            spec = DegreeSpec(weights, tuple(points), p, n)
            count = None
            for attempt in range(retries):
                local = type(rng)(rng.randrange(1 << 30))
                try:
                    count, _ = disk_count(geom, section, spec, Q, local)
                    break
                except (GeometryError, DomainError):
                    if attempt == retries - 1:
                        raise
            acc += spec.a_weight() * Fraction(count) / spec.aut()
        if acc != 0:
            out[r] = acc
    return out


def _bounded_offsets(geom, budget):
    uf = list(geom.seed.unfrozen)
    rank = geom.rank

    def rec(idx, remaining, acc):
        if idx == len(uf):
            yield tuple(acc)
            return
        for a in range(remaining + 1):
            acc[uf[idx]] = a
            yield from rec(idx + 1, remaining - a, acc)
        acc[uf[idx]] = 0

    yield from rec(0, budget, [0] * rank)


def degree_curve_class(geom, spec):
    """Intersection profile of the curve class behind one degree spec.

    Unfrozen index: total weight against the exceptional; frozen index:
    boundary intersections of the marked points on its ray, minus the
    output leg when p sits on that ray.
    """
    seed = geom.seed
    profile = [0] * seed.rank
    for i, weights in spec.weights.items():
        profile[i] = sum(weights)
    for i in seed.frozen:
        vb = geom.to_bar(seed.basis_vector(i))
        if vec_is_zero(vb):
            continue
        ray = primitive(vb)
        total = 0
        for p_k in spec.points:
            if not vec_is_zero(p_k) and primitive(p_k) == ray:
                total += vec_gcd(p_k)
        if not vec_is_zero(spec.p) and primitive(spec.p) == ray:
            total -= vec_gcd(spec.p)
        profile[i] = total
    return tuple(profile)
