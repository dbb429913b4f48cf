"""Broken lines, theta functions, and expansion in the theta basis.

Broken lines are enumerated by a backward depth-first walk from the
basepoint Q: candidate final exponents are phi(p) plus a bounded
nonnegative combination of unfrozen basis vectors, and the walk undoes
bends wall by wall, matching monomial factors against truncated wall
function powers.  Orders are bounded by the truncation, so the search is
finite and complete.

Theta-basis expansion peels the product series from its minimal-order
term: each theta function is z^{phi(r)} plus strictly higher terms, so
the system is unitriangular in the order filtration.
"""

from fractions import Fraction

from .errors import (DomainError, GeometryError, InputError, InternalError,
                     UnsupportedScopeError)
from .linalg import cross2, primitive, vec_add, vec_dot, vec_is_zero, vec_sub
from .series import Series
from .scattering import (path_ordered_product, random_generic_point,
                         waypoints_between)


class PLSection:
    """The integral piecewise-linear section phi of pi2 over the fan.

    Values on rays: e_i on the ray of a frozen pi2(e_i), the canonical
    integral lift elsewhere.  When K2 = 0 the section is forced and the
    fan is not consulted.
    """

    def __init__(self, geom, ray_values=None):
        self.geom = geom
        self.linear = not geom.k2_basis
        rays = geom.fan_rays_bar
        self.rays = []
        self.values = []
        if self.linear and not rays:
            return
        if not rays:
            raise InputError("seed has no fan rays; a piecewise-linear "
                             "section needs a complete fan when K2 != 0")
        seed = geom.seed
        frozen_by_ray = {}
        for i in seed.frozen:
            vb = geom.to_bar(seed.basis_vector(i))
            if not vec_is_zero(vb):
                frozen_by_ray[primitive(vb)] = i
        from .linalg import angle_key
        order = sorted(range(len(rays)), key=lambda k: angle_key(primitive(rays[k])))
        for k in order:
            ray = primitive(rays[k])
            if ray_values and ray in ray_values:
                val = tuple(ray_values[ray])
            elif ray in frozen_by_ray:
                i = frozen_by_ray[ray]
                vb = geom.to_bar(seed.basis_vector(i))
                if vb != ray:
                    raise InputError("frozen image pi2(e_%d) is not primitive; "
                                     "cannot pin the section" % (i + 1,))
                val = seed.basis_vector(i)
            else:
                val = geom.bar_lift(ray)
            if geom.to_bar(val) != ray:
                raise InputError("section value on ray %r does not project back" % (ray,))
            self.rays.append(ray)
            self.values.append(val)
        n = len(self.rays)
        for a in range(n):
            u, v = self.rays[a], self.rays[(a + 1) % n]
            if cross2(u, v) <= 0:
                raise InputError("fan is not complete; cannot extend the section")

    def __call__(self, x):
        """Evaluate at a rational point of N-bar; exact."""
        if self.linear:
            num = [Fraction(v) for v in x]
            # unique section: lift through the chosen basis preimages
            out = [Fraction(0)] * self.geom.rank
            for coef, t in zip(num, self.geom.bar_section):
                for i, c in enumerate(t):
                    out[i] += coef * c
            return tuple(out)
        n = len(self.rays)
        for a in range(n):
            u, v = self.rays[a], self.rays[(a + 1) % n]
            det = cross2(u, v)
            ca = Fraction(cross2(x, v), det)
            cb = Fraction(cross2(u, x), det)
            if ca >= 0 and cb >= 0:
                out = [Fraction(0)] * self.geom.rank
                for coef, val in ((ca, self.values[a]), (cb, self.values[(a + 1) % n])):
                    for i, c in enumerate(val):
                        out[i] += coef * c
                return tuple(out)
        raise InternalError("fan does not cover the plane")

    def lattice_value(self, p):
        """Value at a lattice point, as an integer vector in N."""
        val = self(tuple(Fraction(c) for c in p))
        if any(c.denominator != 1 for c in val):
            raise DomainError("section is not integral at %r (non-smooth fan?)" % (p,))
        return tuple(int(c) for c in val)


class BrokenLine:
    """A broken line contributing to a theta function."""

    __slots__ = ("label", "endpoint", "final_exponent", "coefficient", "bends")

    def __init__(self, label, endpoint, final_exponent, coefficient, bends):
        self.label = label
        self.endpoint = endpoint
        self.final_exponent = final_exponent
        self.coefficient = coefficient
        self.bends = bends          # list of (wall_index, point, j, exponent_before)

    def __repr__(self):
        return ("BrokenLine(p=%r, c=%s, v=%r, %d bends)"
                % (self.label, self.coefficient, self.final_exponent, len(self.bends)))


def _origin_on_ray(X, b):
    """Does {X + s b : s > 0} meet the origin?"""
    if cross2(b, X) != 0:
        return False
    t = [Fraction(x) for x in X]
    s_candidates = [Fraction(-t[i], b[i]) for i in range(2) if b[i] != 0]
    return bool(s_candidates) and s_candidates[0] > 0


def enumerate_broken_lines(diagram, section, p, Q, order):
    """All broken lines with ends (p, Q) and final order <= `order`.

    p is a nonzero N-bar point in bar coordinates; Q a generic rational
    point off Supp(D).
    """
    geom = diagram.geom
    if geom.r != 2:
        raise UnsupportedScopeError("broken lines implemented for rank(N-bar) = 2")
    p = tuple(p)
    if vec_is_zero(p):
        raise DomainError("broken lines need p != 0")
    Q = tuple(Fraction(c) for c in Q)
    if diagram.on_support(Q):
        raise GeometryError("Q lies on Supp(D); resample the basepoint")
    phi_p = section.lattice_value(p)
    found = []
    for offset in _unfrozen_offsets(geom, order):
        v_final = vec_add(phi_p, offset)
        _walk(diagram, geom, phi_p, v_final, Q, order, found, p)
    found.sort(key=lambda bl: bl.final_exponent)
    return found


def _unfrozen_offsets(geom, budget):
    """Nonnegative combinations of unfrozen basis vectors, sum <= budget."""
    uf = list(geom.seed.unfrozen)
    rank = geom.rank

    def rec(idx, remaining, acc):
        if idx == len(uf):
            yield tuple(acc)
            return
        i = uf[idx]
        for a in range(remaining + 1):
            acc[i] = a
            yield from rec(idx + 1, remaining - a, acc)
        acc[uf[idx]] = 0

    yield from rec(0, budget, [0] * rank)


def _walk(diagram, geom, phi_p, v_final, Q, order, found, label):
    """Backward DFS for broken lines with fixed final exponent."""

    def bar(v):
        cols = geom.bar_cols
        out = [0, 0]
        for c, col in zip(v, cols):
            if c:
                out[0] += c * col[0]
                out[1] += c * col[1]
        return tuple(out)

    def ray_hits(X, b):
        """Wall hits of {X + s b : s > 0}, sorted by s."""
        hits = []
        for idx, wall in enumerate(diagram.walls):
            w = wall.direction
            cwb = cross2(w, b)
            cwX = cross2(w, X)
            if cwb == 0:
                if cwX == 0:
                    raise GeometryError("broken line travels along a wall; resample Q")
                continue
            s = Fraction(-cwX, cwb)
            if s <= 0:
                continue
            Y = (X[0] + s * b[0], X[1] + s * b[1])
            if vec_is_zero(Y):
                raise GeometryError("broken line hits the origin; resample Q")
            if wall.kind == "ray" and vec_dot(Y, w) < 0:
                continue
            hits.append((s, idx, Y))
        hits.sort(key=lambda h: h[0])
        return hits

    def recurse(X, v_cur, hits, hit_idx, factor, bends):
        remaining = vec_sub(v_cur, phi_p)
        if vec_is_zero(remaining):
            b = bar(v_cur)
            if _origin_on_ray(X, b):
                raise GeometryError("initial segment passes a joint; resample Q")
            found.append(BrokenLine(label, Q, v_final, factor,
                                    list(reversed(bends))))
            return
        while hit_idx < len(hits):
            s, idx, Y = hits[hit_idx]
            hit_idx += 1
            wall = diagram.walls[idx]
            n_w = wall.function.n
            step = sum(n_w)
            jmax = sum(remaining)
            j = 1
            while j * step <= jmax:
                v_prev = tuple(a - j * c for a, c in zip(v_cur, n_w))
                if any(a - b_ < 0 for a, b_ in zip(v_prev, phi_p)):
                    j += 1
                    continue
                e = vec_dot(wall.normal, bar(v_prev))
                if e == 0:
                    break
                coeff = wall.function.power(abs(e), order).terms.get(
                    tuple(j * c for c in n_w))
                if coeff:
                    b_prev = bar(v_prev)
                    if vec_is_zero(b_prev):
                        j += 1
                        continue
                    new_hits = ray_hits(Y, b_prev)
                    recurse(Y, v_prev, new_hits, 0,
                            factor * coeff, bends + [(idx, Y, j, v_prev)])
                j += 1
        # all remaining hits passed straight through: dead end unless done
        return

    b0 = bar(v_final)
    if vec_is_zero(b0):
        return
    if _origin_on_ray(Q, b0):
        raise GeometryError("final segment passes a joint; resample Q")
    recurse(Q, v_final, ray_hits(Q, b0), 0, Fraction(1), [])


def theta_function(diagram, section, p, Q, order, _cache=None):
    """theta_{p, Q} as a Series with base phi(p); theta_0 = 1.

    _cache, when given, must be dedicated to one (diagram, section) pair.
    """
    geom = diagram.geom
    p = tuple(p)
    if vec_is_zero(p):
        return Series.one(geom.rank, order)
    key = (p, tuple(Q), order)
    if _cache is not None and key in _cache:
        return _cache[key]
    lines = enumerate_broken_lines(diagram, section, p, Q, order)
    phi_p = section.lattice_value(p)
    s = Series(geom.rank, base=phi_p, order=order)
    for bl in lines:
        offset = vec_sub(bl.final_exponent, phi_p)
        prev = s.terms.get(offset, Fraction(0)) + bl.coefficient
        if prev == 0:
            s.terms.pop(offset, None)
        else:
            s.terms[offset] = prev
    if _cache is not None:
        _cache[key] = s
    return s


def basepoint_transport(diagram, section, p, Q, Qp, order, rng):
    """CPS identity: theta_{p,Q'} == theta_{gamma,D}(theta_{p,Q})."""
    lhs = theta_function(diagram, section, p, Qp, order)
    rhs = path_ordered_product(
        diagram, waypoints_between(diagram, tuple(Q), tuple(Qp), rng),
        theta_function(diagram, section, p, Q, order), order)
    return lhs == rhs


class ThetaExpansion:
    """Expansion of a theta product in the theta basis at one basepoint.

    coeffs maps the label r (bar coordinates) to a dict {k2 exponent in N:
    Fraction}; base is the reference exponent sum(phi(p_i)) used by the
    order filtration.
    """

    def __init__(self, points, Q, order, base, coeffs, r_dim=2):
        self.points = points
        self.Q = Q
        self.order = order
        self.base = base
        self.coeffs = coeffs
        self.r_dim = r_dim

    def alpha(self, r):
        return dict(self.coeffs.get(tuple(r), {}))

    def trace(self):
        return self.alpha((0,) * self.r_dim)

    def labels(self):
        return sorted(self.coeffs)

    def term_order(self, r, k2, section):
        v = vec_add(k2, section.lattice_value(r))
        return sum(vec_sub(v, self.base))

    def to_json(self):
        out = []
        for r in sorted(self.coeffs):
            terms = self.coeffs[r]
            out.append({
                "r": list(r),
                "coefficient": [
                    {"exp": list(k2), "num": c.numerator, "den": c.denominator}
                    for k2, c in sorted(terms.items())],
            })
        return out

    def __eq__(self, other):
        if not isinstance(other, ThetaExpansion):
            return NotImplemented
        return self._clean() == other._clean()

    def _clean(self):
        return {r: {k: v for k, v in terms.items() if v != 0}
                for r, terms in self.coeffs.items()
                if any(v != 0 for v in terms.values())}


def theta_product_expand(diagram, section, points, order, Q=None, rng=None,
                         theta_cache=None):
    """Expand prod_i theta_{p_i} in the theta basis; exact mod m^(order+1).

    The coefficients do not depend on the generic basepoint Q (transport
    maps theta basis to theta basis); Q only fixes which representatives
    are multiplied.  Supply Q explicitly to align with a tropical count.
    """
    geom = diagram.geom
    if not points:
        raise InputError("need at least one point")
    if Q is None:
        if rng is None:
            raise InputError("pass Q or an rng to draw it from")
        # degenerate basepoints (a broken-line segment grazing the origin)
        # are rejected exactly; redraw until the enumeration goes through
        for _ in range(50):
            Q = random_generic_point(diagram, rng)
            try:
                return theta_product_expand(diagram, section, points, order,
                                            Q=Q, theta_cache=theta_cache)
            except GeometryError:
                continue
        raise InternalError("could not draw a workable basepoint")
    if theta_cache is None:
        theta_cache = {}
    work = Series.one(geom.rank, order)
    for p in points:
        th = theta_function(diagram, section, p, Q, order, _cache=theta_cache)
        work = work * th
    base = work.base
    coeffs = {}
    guard = 0
    while not work.is_zero():
        guard += 1
        if guard > 100000:
            raise InternalError("theta expansion did not terminate")
        offset, c = work.min_order_term()
        v = vec_add(base, offset)
        r = geom.to_bar(v)
        phi_r = section.lattice_value(r)
        k2 = vec_sub(v, phi_r)
        if not geom.in_K2(k2):
            raise InternalError("expansion coefficient exponent not in K2")
        th = theta_function(diagram, section, r, Q, order, _cache=theta_cache)
        # subtract c * z^k2 * theta_r; its term exponents are v + q_t, so
        # relative to `base` they sit at offset + q_t
        for q_t, c_t in th.terms.items():
            off = vec_add(offset, q_t)
            if sum(off) > order:
                continue
            prev = work.terms.get(off, Fraction(0)) - c * c_t
            if prev == 0:
                work.terms.pop(off, None)
            else:
                work.terms[off] = prev
        entry = coeffs.setdefault(r, {})
        entry[k2] = entry.get(k2, Fraction(0)) + c
    coeffs = {r: {k: v for k, v in terms.items() if v != 0}
              for r, terms in coeffs.items()}
    coeffs = {r: terms for r, terms in coeffs.items() if terms}
    return ThetaExpansion(tuple(map(tuple, points)), Q, order, base, coeffs,
                          r_dim=geom.r)


def support_report(diagram, section, points, order, Q=None, rng=None):
    """Expansion support at consecutive orders, with a stability flag.

    A stabilized support between orders k-1 and k is the behavioral
    evidence for polynomiality of the product that the boundary-ampleness
    situation predicts; no divisor geometry is consulted.
    """
    if Q is None:
        if rng is None:
            raise InputError("pass Q or an rng to draw it from")
        Q = random_generic_point(diagram, rng)
    cache = {}
    full = theta_product_expand(diagram, section, points, order, Q=Q,
                                theta_cache=cache)
    lower = theta_product_expand(diagram, section, points, max(order - 1, 0),
                                 Q=Q)
    return {
        "support": full.labels(),
        "support_previous_order": lower.labels(),
        "stable": full.labels() == lower.labels(),
    }


def trace_s(diagram, section, points, order, Q=None, rng=None):
    """The theta_0 coefficient of the s-fold product: the trace form."""
    expansion = theta_product_expand(diagram, section, points, order, Q=Q, rng=rng)
    return expansion.alpha((0,) * diagram.geom.r)


def gram_matrix(diagram, section, box, order, Q=None, rng=None):
    """[Tr^2(theta_p, theta_q)] over the box, plus full-rank mod m flag."""
    box = [tuple(p) for p in box]
    cache = {}
    entries = {}
    for a, p in enumerate(box):
        for b, q in enumerate(box):
            if (b, a) in entries:
                entries[(a, b)] = entries[(b, a)]
                continue
            expansion = theta_product_expand(diagram, section, [p, q], order,
                                             Q=Q, rng=rng, theta_cache=cache)
            entries[(a, b)] = expansion.alpha((0,) * diagram.geom.r)
    zero = (0,) * diagram.geom.rank
    const = [[entries[(a, b)].get(zero, Fraction(0)) for b in range(len(box))]
             for a in range(len(box))]
    from .linalg import rational_rank
    full_rank = rational_rank(const) == len(box)
    return entries, full_rank
