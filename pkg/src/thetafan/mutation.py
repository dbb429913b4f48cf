"""Seed mutation and the structure-constant invariance cross-check.

Mutation at an unfrozen index i replaces the basis by
    e_i' = -e_i,   e_j' = e_j + [sign * eps_ji]_+ e_i   (j != i),
with eps_jk = B(e_j, e_k) d_k / d_j, and rewrites B in the new basis.
The two signs give the two linear branches of one piecewise-linear
identification of the old and new label spaces; they agree on the wall
of e_i and both carry K2 to the mutated K2.  Structure constants of the
theta multiplication are invariant under this transport, which is the
effectiveness cross-check.
"""

from fractions import Fraction

from .errors import DomainError, InputError, InternalError
from .linalg import mat_mul_vec, rational_solve, vec_dot, vec_is_zero
from .scattering import consistent_completion, initial_diagram
from .seeds import Seed, SeedGeometry
from .theta import PLSection, theta_product_expand


def _epsilon(seed, j, i):
    """eps_ji = B(e_j, e_i) d_i / d_j, an integer for valid seed data."""
    dmap = dict(zip(seed.unfrozen, seed.d))
    scale = Fraction(dmap.get(i, 1)) / Fraction(dmap.get(j, 1))
    val = Fraction(seed.B[j][i]) * scale
    if val.denominator != 1:
        raise InputError("exchange data is not integral at (%d, %d)" % (j, i))
    return int(val)


def mutation_matrix(seed, i):
    """Basis matrix C: columns are the mutated basis expressed in E.

    e_i' = -e_i and e_j' = e_j + [eps_ji]_+ e_i; rewriting B in this
    basis realizes the standard exchange-matrix mutation.
    """
    if i not in seed.unfrozen:
        raise DomainError("mutation index %d is frozen" % (i + 1,))
    rank = seed.rank
    cols = []
    for j in range(rank):
        col = [0] * rank
        if j == i:
            col[i] = -1
        else:
            col[j] = 1
            col[i] = max(_epsilon(seed, j, i), 0)
        cols.append(tuple(col))
    return [tuple(cols[j][a] for j in range(rank)) for a in range(rank)]


def wall_shear(seed, i):
    """The kink map n -> n - B(e_i, n) e_i across the wall of e_i.

    It is the identity on the wall and on K2, and composing the basis
    identification with it gives the second linear branch of the label
    transport.
    """
    rank = seed.rank
    rows = []
    for a in range(rank):
        row = [1 if a == b else 0 for b in range(rank)]
        if a == i:
            row = [row[b] - seed.B[i][b] for b in range(rank)]
        rows.append(tuple(row))
    return rows


def _rewrite_form(seed, C):
    """B in the mutated basis: D C^T D^-1 B C, with D = diag(d), frozen 1.

    The symmetrizers stay attached to the index labels, so the skew part
    is rewritten by congruence and reweighted; for equal symmetrizers
    this is plain congruence.
    """
    rank = seed.rank
    dmap = dict(zip(seed.unfrozen, seed.d))
    d = [Fraction(dmap.get(a, 1)) for a in range(rank)]
    B = seed.B
    BC = [[sum(B[a][b] * C[b][j] for b in range(rank)) for j in range(rank)]
          for a in range(rank)]
    out = []
    for q in range(rank):
        row = []
        for j in range(rank):
            val = sum(Fraction(C[a][q]) / d[a] * BC[a][j] for a in range(rank))
            val *= d[q]
            if val.denominator != 1:
                raise InputError("mutated form is not integral")
            row.append(int(val))
        out.append(tuple(row))
    return tuple(out)


def _inverse_int(C):
    rank = len(C)
    cols = []
    for j in range(rank):
        rhs = [1 if a == j else 0 for a in range(rank)]
        sol = rational_solve([list(r) for r in C], rhs)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise InternalError("basis matrix is not unimodular")
        cols.append([int(x) for x in sol])
    return [tuple(cols[j][a] for j in range(rank)) for a in range(rank)]


class MutationStep:
    """Mutated seed plus the piecewise-linear transport of labels.

    transport_point maps N-bar labels of the original seed to labels of
    the mutated one; transport_exponent is the same map on N (used for
    K2 exponents, where the two branches agree).  `flipped` exchanges
    the branch-halfspace assignment; the default is the one under which
    structure constants match (checked by the tests).
    """

    def __init__(self, seed, i, flipped=False):
        self.seed = seed
        self.index = i
        self.flipped = flipped
        C = mutation_matrix(seed, i)
        B_new = _rewrite_form(seed, [list(c) for c in C])
        self.geom = SeedGeometry(seed)
        self.iota_plus = _inverse_int([list(c) for c in C])
        shear = wall_shear(seed, i)
        self.iota_minus = [tuple(sum(self.iota_plus[a][b] * shear[b][c]
                                     for b in range(seed.rank))
                                 for c in range(seed.rank))
                           for a in range(seed.rank)]
        for k2 in SeedGeometry(seed).k2_basis:
            if mat_mul_vec(shear, k2) != tuple(k2):
                raise InternalError("wall shear moves K2")
        func = self.geom.functional(seed.basis_vector(i))
        if vec_is_zero(func):
            raise DomainError("pi1(e_%d) = 0; no wall to mutate across" % (i + 1,))
        self._func = func
        mutated = Seed(rank=seed.rank, unfrozen=seed.unfrozen, B=B_new,
                       d=seed.d, fan_rays=(), name=seed.name + "-mu%d" % (i + 1,))
        self.geom_m = SeedGeometry(mutated)
        fan = tuple(self.geom_m.bar_to_ambient(self.transport_point(r))
                    for r in self._refined_rays())
        self.mutated = Seed(rank=seed.rank, unfrozen=seed.unfrozen, B=B_new,
                            d=seed.d, fan_rays=fan,
                            name=seed.name + "-mu%d" % (i + 1,))
        self.geom_m = SeedGeometry(self.mutated)

    def _refined_rays(self):
        """Original fan rays refined by the bend wall of the transport.

        The transport is linear on each side of pi1(e_i)-perp, so cones
        crossing that line must be split before their images make a fan
        again.
        """
        from .linalg import primitive
        rays = [tuple(r) for r in self.geom.fan_rays_bar]
        if not rays:
            return rays
        w = primitive((-self._func[1], self._func[0]))
        for extra in (w, tuple(-c for c in w)):
            if all(primitive(r) != extra for r in rays):
                rays.append(extra)
        return rays

    def _branch(self, side):
        if side >= 0:
            return self.iota_minus if self.flipped else self.iota_plus
        return self.iota_plus if self.flipped else self.iota_minus

    def transport_exponent(self, n):
        """PL map on N; branch picked by the side of pi2(n)."""
        side = vec_dot(self._func, self.geom.to_bar(n))
        return mat_mul_vec(self._branch(side), n)

    def transport_point(self, x):
        """Induced PL map N-bar(seed) -> N-bar(mutated seed)."""
        x = tuple(x)
        side = vec_dot(self._func, x)
        n = self.geom.bar_lift(x)
        return self.geom_m.to_bar(mat_mul_vec(self._branch(side), n))

    def transported_section(self, section):
        """The original section carried through the transport.

        Evaluated on the bend-refined rays, so the result is honestly
        piecewise linear on the image fan.
        """
        values = {}
        for ray in self._refined_rays():
            val = section.lattice_value(ray)
            side = vec_dot(self._func, ray)
            values[self.transport_point(ray)] = mat_mul_vec(self._branch(side), val)
        return PLSection(self.geom_m, ray_values=values)


def mutate_seed(seed, i):
    """The mutated seed (same frozen set and symmetrizers, mutated B)."""
    return MutationStep(seed, i).mutated


def structure_constant_agreement(seed, i, points, p_probe, order, rng,
                                 flipped=False):
    """Compare theta structure constants across a single mutation.

    Returns (agree, report) where report carries both expansions, the
    transported labels, and the exponent lists for effectiveness checks.
    `p_probe` is unused beyond being recorded; the comparison covers all
    labels of both expansions.
    """
    step = MutationStep(seed, i, flipped=flipped)
    geom, geom_m = step.geom, step.geom_m

    D = consistent_completion(initial_diagram(geom, order), order)
    section = PLSection(geom)
    exp = theta_product_expand(D, section, points, order, rng=rng)

    points_m = [step.transport_point(q) for q in points]
    D_m = consistent_completion(initial_diagram(geom_m, order), order)
    section_m = step.transported_section(section)
    exp_m = theta_product_expand(D_m, section_m, points_m, order, rng=rng)

    transported = {}
    for r, terms in exp.coeffs.items():
        r_m = step.transport_point(r)
        bucket = transported.setdefault(r_m, {})
        for k2, c in terms.items():
            if not geom.in_K2(k2):
                raise InternalError("structure constant exponent not in K2")
            k2_m = step.transport_exponent(k2)
            if not geom_m.in_K2(k2_m):
                raise InternalError("transported exponent leaves K2")
            bucket[tuple(k2_m)] = bucket.get(tuple(k2_m), Fraction(0)) + c
    transported = {r: {k: v for k, v in t.items() if v != 0}
                   for r, t in transported.items()}
    transported = {r: t for r, t in transported.items() if t}
    actual = exp_m._clean()
    agree = transported == actual
    report = {
        "original": exp,
        "mutated": exp_m,
        "transported": transported,
        "exponents_original": sorted(
            {k2 for terms in exp.coeffs.values() for k2 in terms}),
        "exponents_mutated": sorted(
            {k2 for terms in exp_m.coeffs.values() for k2 in terms}),
        "probe": tuple(p_probe) if p_probe is not None else None,
    }
    return agree, report
