"""Walls, scattering diagrams, path-ordered products, and completion.

All supports live in N-bar basis coordinates and are cones with apex at
the origin: either a full line through 0 or a single ray.  That covers
the initial diagrams used here (one hyperplane per unfrozen index) and
their completions, whose added walls are rays out of the origin.

Conventions, fixed once and checked by the A2 pentagon test:
  * crossing a wall transversally at velocity g applies
        z^p -> z^p * f^{<u, pi2(p)>}
    with u the primitive covector on N-bar vanishing on the support and
    positive on -g;
  * a counterclockwise loop around the origin crosses the ray with
    primitive direction w carrying u = primitive((w2, -w1)).
"""

from fractions import Fraction

from .errors import (DomainError, GeometryError, InputError, InternalError,
                     UnsupportedScopeError)
from .linalg import angle_key, cross2, primitive, vec_dot, vec_gcd, vec_is_zero
from .series import Series, WallFunction


LINE = "line"
RAY = "ray"


class Wall:
    """A wall: support (line or ray through the origin) plus a function."""

    __slots__ = ("kind", "direction", "function", "normal")

    def __init__(self, kind, direction, function):
        if kind not in (LINE, RAY):
            raise InputError("wall kind must be 'line' or 'ray'")
        if vec_is_zero(direction):
            raise InputError("wall direction must be nonzero")
        self.kind = kind
        self.direction = primitive(direction)
        self.function = function
        w1, w2 = self.direction
        self.normal = primitive((w2, -w1))

    def contains_bar_point(self, x):
        """Exact membership of a rational 2d point in the support."""
        if cross2(self.direction, x) != 0:
            return False
        if self.kind == LINE:
            return True
        s = vec_dot(x, self.direction)
        return s >= 0

    def incoming(self, geom):
        """True when the support contains pi2(n) of the function exponent."""
        wbar = geom.to_bar(self.function.n)
        if vec_is_zero(wbar):
            return False
        return self.contains_bar_point(wbar)

    def crossing_rays(self):
        """Primitive ray directions at which a loop around 0 meets the wall."""
        if self.kind == LINE:
            return [self.direction, tuple(-x for x in self.direction)]
        return [self.direction]

    def to_json(self, geom, order):
        gens = [list(self.direction)]
        if self.kind == LINE:
            gens.append([-x for x in self.direction])
        return {
            "support_generators": gens,
            "span_normals": [list(self.normal)],
            "function": self.function.to_json(order),
            "incoming": self.incoming(geom),
        }


class ScatteringDiagram:
    """Finite set of walls at a fixed truncation order, over one seed."""

    def __init__(self, geom, walls, order):
        self.geom = geom
        self.order = order
        self.walls = sorted(
            (w for w in walls if not w.function.is_trivial(order)),
            key=lambda w: (angle_key(w.direction), w.kind, w.function.n))
        for w in self.walls:
            nbar = geom.to_bar(w.function.n)
            if cross2(w.direction, nbar) != 0:
                raise InputError("wall support does not contain pi2 of its "
                                 "function exponent")

    def supports_containing(self, x):
        return [w for w in self.walls if w.contains_bar_point(x)]

    def on_support(self, x):
        return any(w.contains_bar_point(x) for w in self.walls)

    def to_json(self):
        return {"order": self.order,
                "walls": [w.to_json(self.geom, self.order) for w in self.walls]}


def diagram_from_json(geom, data):
    """Rebuild a diagram from its JSON form (inverse of to_json)."""
    from fractions import Fraction as _F

    walls = []
    for wd in data["walls"]:
        gens = wd["support_generators"]
        kind = LINE if len(gens) == 2 else RAY
        coeffs = [_F(num, den) for num, den in wd["function"]["coeffs"]]
        f = WallFunction(geom.rank, tuple(wd["function"]["n"]), coeffs)
        walls.append(Wall(kind, tuple(gens[0]), f))
    return ScatteringDiagram(geom, walls, data["order"])


def initial_diagram(geom, order):
    """One full-hyperplane wall per unfrozen index (the incoming diagram)."""
    if geom.r not in (0, 2) and geom.seed.unfrozen:
        raise UnsupportedScopeError("scattering geometry implemented for rank(N-bar) = 2")
    walls = []
    for i in geom.seed.unfrozen:
        e_i = geom.seed.basis_vector(i)
        func = geom.functional(e_i)
        if vec_is_zero(func):
            raise InputError("pi1(e_%d) = 0; wall support undefined" % (i + 1,))
        mult = vec_gcd(func)
        direction = primitive((-func[1], func[0]))
        f = WallFunction.from_binomial(geom.rank, e_i, mult, order)
        walls.append(Wall(LINE, direction, f))
    return ScatteringDiagram(geom, walls, order)


def apply_wall_crossing(geom, wall, u, series, order=None):
    """Apply z^p -> z^p f^{<u, pi2(p)>} term by term.

    u must be a covector on N-bar vanishing on the wall's support (its
    sign encodes the crossing direction; callers supply it).
    """
    if vec_dot(u, wall.direction) != 0:
        raise DomainError("u does not annihilate the wall support")
    if order is None:
        order = series.order
    bar_cols = geom.bar_cols
    base_bar = [sum(c * b[j] for c, b in zip(series.base, bar_cols)) for j in range(geom.r)]
    out = Series(geom.rank, series.base, order)
    for offset, coeff in series.terms.items():
        pbar = list(base_bar)
        for i, o in enumerate(offset):
            if o:
                for j in range(geom.r):
                    pbar[j] += o * bar_cols[i][j]
        e = vec_dot(u, pbar)
        if e == 0:
            _add_term(out, offset, coeff)
            continue
        factor = wall.function.power(e, order)
        budget = order - sum(offset)
        for q, c in factor.terms.items():
            if sum(q) <= budget:
                _add_term(out, tuple(a + b for a, b in zip(offset, q)), coeff * c)
    return out


def _add_term(series, offset, coeff):
    new = series.terms.get(offset, Fraction(0)) + coeff
    if new == 0:
        series.terms.pop(offset, None)
    else:
        series.terms[offset] = new


class Crossing:
    """One wall crossing along a path: wall plus the signed covector."""

    __slots__ = ("wall", "u", "t", "wall_index")

    def __init__(self, wall, u, t=Fraction(0), wall_index=-1):
        self.wall = wall
        self.u = u
        self.t = t
        self.wall_index = wall_index


def segment_crossings(diagram, P, R):
    """Transverse crossings of the open segment P -> R, sorted by time.

    Raises GeometryError when an endpoint lies on a support, the segment
    passes through the origin, or it meets a wall non-transversally.
    """
    geom = diagram.geom
    move = (R[0] - P[0], R[1] - P[1])
    if vec_is_zero(move):
        return []
    out = []
    for idx, wall in enumerate(diagram.walls):
        w = wall.direction
        cP, cR = cross2(w, P), cross2(w, R)
        if cP == 0 and cR == 0:
            # segment inside the support line: tangential
            raise GeometryError("path runs along a wall; perturb the path")
        if cP == 0 or cR == 0:
            if (cP == 0 and wall.contains_bar_point(P)) or \
               (cR == 0 and wall.contains_bar_point(R)):
                raise GeometryError("path endpoint lies on a wall; perturb")
            # endpoint only on the extended line of a ray wall: harmless
        if cP * cR >= 0:
            continue
        t = Fraction(cP, cP - cR)
        point = (P[0] + t * move[0], P[1] + t * move[1])
        if vec_is_zero(point):
            raise GeometryError("path passes through the origin (a joint)")
        if wall.kind == RAY and vec_dot(point, w) < 0:
            continue
        sign_val = vec_dot(wall.normal, move)
        if sign_val == 0:
            raise GeometryError("non-transverse crossing; perturb the path")
        u = wall.normal if sign_val < 0 else tuple(-x for x in wall.normal)
        out.append(Crossing(wall, u, t, idx))
    out.sort(key=lambda c: c.t)
    for a, b in zip(out, out[1:]):
        if a.t == b.t and cross2(a.wall.direction, b.wall.direction) != 0:
            raise GeometryError("path meets two walls at one point (a joint)")
    return out


def path_crossings(diagram, waypoints):
    """Crossings along a polygonal path given by rational 2d waypoints."""
    crossings = []
    for P, R in zip(waypoints, waypoints[1:]):
        crossings.extend(segment_crossings(diagram, P, R))
    return crossings


class ChamberPath:
    """A validated combinatorial path: endpoints plus ordered crossings.

    Each crossing is (wall index, sign), the sign telling whether the
    canonical wall normal was positive on minus the velocity.
    """

    __slots__ = ("start", "end", "points", "crossings")

    def __init__(self, start, end, points, crossings):
        self.start = start
        self.end = end
        self.points = points
        self.crossings = crossings

    @classmethod
    def realize(cls, diagram, waypoints):
        """Build from straight segments; raises GeometryError off joints."""
        found = path_crossings(diagram, waypoints)
        marks = [(c.wall_index, 1 if c.u == c.wall.normal else -1)
                 for c in found]
        return cls(waypoints[0], waypoints[-1], list(waypoints), marks)

    def apply(self, diagram, series, order=None):
        return path_ordered_product(diagram, self.points, series, order)


def path_ordered_product(diagram, waypoints, series, order=None):
    """theta_{gamma, D} applied to a Series along a polygonal path."""
    if order is None:
        order = series.order
    out = series
    for crossing in path_crossings(diagram, waypoints):
        out = apply_wall_crossing(diagram.geom, crossing.wall, crossing.u, out, order)
    return out


def loop_crossings(diagram, start_direction):
    """Crossings of one counterclockwise loop around the origin.

    The loop starts just after the ray through start_direction (which must
    not be a crossing ray) and visits every crossing ray once, in angle
    order; at each ray the covector is primitive((w2, -w1)).
    """
    events = []
    for idx, wall in enumerate(diagram.walls):
        for w in wall.crossing_rays():
            if cross2(w, start_direction) == 0:
                raise GeometryError("loop basepoint direction lies on a wall")
            u = primitive((w[1], -w[0]))
            events.append((angle_key(w), Crossing(wall, u, wall_index=idx)))
    start_key = angle_key(start_direction)
    events.sort(key=lambda e: e[0])
    after = [c for k, c in events if k > start_key]
    before = [c for k, c in events if k < start_key]
    return after + before


def default_start_direction(diagram):
    """Deterministic direction not parallel to any crossing ray."""
    rays = [w for wall in diagram.walls for w in wall.crossing_rays()]
    for a in range(1, 1000):
        for b in (1, -1):
            v = (a, b)
            if all(cross2(w, v) != 0 for w in rays):
                return v
    raise InternalError("no generic start direction found")


def loop_product_on_generators(diagram, order, start_direction=None):
    """The loop automorphism's action on every generator z^{e_j}."""
    geom = diagram.geom
    if start_direction is None:
        start_direction = default_start_direction(diagram)
    crossings = loop_crossings(diagram, start_direction)
    out = []
    for j in range(geom.rank):
        s = Series.monomial(geom.rank, geom.seed.basis_vector(j), order)
        for crossing in crossings:
            s = apply_wall_crossing(geom, crossing.wall, crossing.u, s, order)
        out.append(s)
    return out


def consistent_completion(diagram, order, start_direction=None):
    """Add outgoing walls until every loop around the origin is trivial.

    Standard order-by-order construction: at order m the loop defect is a
    derivation sum c_n z^n d_{m_n}; each term is cancelled by a ray wall in
    direction -pi2(n) whose function is 1 - c z^n.  Input walls must be
    cones through the origin (full hyperplanes for the incoming ones).
    The loop basepoint (hence the processing order of crossings) does not
    change the result up to equivalence; start_direction exposes it for
    that check.
    """
    geom = diagram.geom
    if not diagram.walls:
        return ScatteringDiagram(geom, [], order)
    if geom.r != 2:
        raise UnsupportedScopeError("completion implemented for rank(N-bar) = 2")
    walls = list(diagram.walls)
    for m in range(1, order + 1):
        current = ScatteringDiagram(geom, walls, order)
        defects = _loop_defects(current, m, start_direction)
        if not defects:
            continue
        walls = list(current.walls)
        for n, m_n in defects.items():
            walls = _insert_correction(geom, walls, n, m_n, order,
                                       start_direction)
    result = ScatteringDiagram(geom, walls, order)
    final = _loop_defects(result, order, start_direction)
    if final:
        raise InternalError("completion failed to reach consistency: %r" % (final,))
    return result


def _loop_defects(diagram, m, start_direction=None):
    """Defect terms {n: covector m_n} of the loop product at order m.

    Requires the diagram to be consistent below order m; the returned
    covectors live on N (length-rank rational tuples).
    """
    geom = diagram.geom
    gens = loop_product_on_generators(diagram, m, start_direction)
    per_exponent = {}
    for j, s in enumerate(gens):
        for offset, coeff in s.terms.items():
            o = sum(offset)
            if o == 0:
                if coeff != 1:
                    raise InternalError("loop does not fix leading term")
                continue
            if o < m:
                raise InternalError(
                    "loop defect at order %d below current order %d" % (o, m))
            per_exponent.setdefault(offset, [Fraction(0)] * geom.rank)[j] = coeff
    defects = {}
    for n, comps in per_exponent.items():
        m_n = tuple(comps)
        if all(c == 0 for c in m_n):
            continue
        if vec_dot(n, m_n) != 0:
            raise InternalError("defect derivation not tangent to its exponent")
        for k2 in geom.k2_basis:
            if vec_dot(k2, m_n) != 0:
                raise InternalError("defect derivation does not kill K2")
        defects[n] = m_n
    return defects


def _insert_correction(geom, walls, n, m_n, order, start_direction=None):
    """Cancel the defect term z^n d_{m_n} with an outgoing ray wall."""
    wbar = geom.to_bar(n)
    if vec_is_zero(wbar):
        raise InternalError("defect with central exponent cannot be cancelled")
    ray = primitive(tuple(-x for x in wbar))
    u = primitive((ray[1], -ray[0]))  # the ccw-loop covector at this ray
    # m_n, as a functional on N-bar, must be proportional to u
    m_bar = tuple(vec_dot(m_n, t) for t in geom.bar_section)
    c = None
    for mb, uu in zip(m_bar, u):
        if uu != 0:
            c = Fraction(mb, uu)
            break
    if c is None or any(mb != c * uu for mb, uu in zip(m_bar, u)):
        raise InternalError("defect direction is not normal to its ray")
    new = WallFunction.from_single_term(geom.rank, n, -c)
    for idx, wall in enumerate(walls):
        if (wall.kind == RAY and wall.direction == ray
                and wall.function.n == new.n):
            merged = wall.function.multiplied(new, order)
            walls = list(walls)
            if merged.is_trivial(order):
                walls.pop(idx)
            else:
                walls[idx] = Wall(RAY, ray, merged)
            return walls
    return list(walls) + [Wall(RAY, ray, new)]


def consistency_check(diagram, order, trials, rng):
    """Sample loops around the origin; True iff all act trivially.

    Returns (ok, witness) where witness names the first failing loop and
    generator, or None.
    """
    geom = diagram.geom
    if not diagram.walls:
        return True, None
    if geom.r != 2:
        raise UnsupportedScopeError("consistency sampling implemented for rank(N-bar) = 2")
    for trial in range(trials):
        start = _random_generic_direction(diagram, rng)
        gens = loop_product_on_generators(diagram, order, start)
        for j, s in enumerate(gens):
            expect = Series.monomial(geom.rank, geom.seed.basis_vector(j), order)
            if s != expect:
                return False, {"trial": trial, "start_direction": list(start),
                               "generator": j,
                               "image": s.to_json(), "expected": expect.to_json()}
    return True, None


def _random_generic_direction(diagram, rng):
    for _ in range(1000):
        v = (rng.randrange(-10 ** 6, 10 ** 6 + 1), rng.randrange(-10 ** 6, 10 ** 6 + 1))
        if vec_is_zero(v):
            continue
        if all(cross2(w, v) != 0
               for wall in diagram.walls for w in wall.crossing_rays()):
            return v
    raise InternalError("could not sample a generic direction")


def random_generic_point(diagram, rng, denom_min=10 ** 4, box=20):
    """A rational point off Supp(D), drawn from the recorded PRNG."""
    for _ in range(1000):
        den = rng.randrange(denom_min, 10 * denom_min)
        x = Fraction(rng.randrange(-box * den, box * den + 1), den)
        y = Fraction(rng.randrange(-box * den, box * den + 1), den)
        if x == 0 and y == 0:
            continue
        if not diagram.on_support((x, y)):
            return (x, y)
    raise InternalError("could not sample a generic point")


def waypoints_between(diagram, P, R, rng):
    """Waypoints for a path P -> R avoiding the origin.

    A straight segment works unless it passes through or near-degenerately
    against the origin; in that case one generic intermediate point is
    inserted (resampled until the legs are transversal).
    """
    try:
        segment_crossings(diagram, P, R)
        return [P, R]
    except GeometryError:
        pass
    for _ in range(1000):
        mid = random_generic_point(diagram, rng)
        try:
            segment_crossings(diagram, P, mid)
            segment_crossings(diagram, mid, R)
            return [P, mid, R]
        except GeometryError:
            continue
    raise InternalError("could not route a path between basepoints")


def diagrams_equivalent(d1, d2, order, trials, rng):
    """Randomized equality of path-ordered products of two diagrams."""
    geom = d1.geom
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 50 * trials:
            raise InternalError("could not route enough generic paths")
        P = _generic_for_both(d1, d2, rng)
        if attempts % 2:
            # near-antipodal endpoints: the path passes close to the origin
            # and so crosses about half of all walls
            R = (-P[0] + 1, -P[1] + 1)
            if d1.on_support(R) or d2.on_support(R):
                continue
        else:
            R = _generic_for_both(d1, d2, rng)
        waypoints = _route_for_both(d1, d2, P, R, rng)
        if waypoints is None:
            continue
        for j in range(geom.rank):
            s = Series.monomial(geom.rank, geom.seed.basis_vector(j), order)
            a = path_ordered_product(d1, waypoints, s, order)
            b = path_ordered_product(d2, waypoints, s, order)
            if a != b:
                return False
        done += 1
    return True


def _route_for_both(d1, d2, P, R, rng):
    def legal(points):
        try:
            path_crossings(d1, points)
            path_crossings(d2, points)
            return True
        except GeometryError:
            return False

    if legal([P, R]):
        return [P, R]
    for _ in range(200):
        mid = _generic_for_both(d1, d2, rng)
        if legal([P, mid, R]):
            return [P, mid, R]
    return None


def _generic_for_both(d1, d2, rng):
    for _ in range(1000):
        p = random_generic_point(d1, rng)
        if not d2.on_support(p):
            return p
    raise InternalError("could not sample a point generic for both diagrams")
