"""Seed data for cluster-type scattering computations.

A seed is a lattice N = Z^rank with a distinguished basis E, a frozen
index subset, an integer bilinear form B on N (B[i][j] = B(e_i, e_j)),
positive rational symmetrizers for the unfrozen block, and the rays of a
fan in N-bar = pi2(N).

Derived structure lives on SeedGeometry: the two maps pi1(n) = B(n, .)
and pi2(n) = B(., n) into M = N^*, the kernel K2 = ker(pi2), a basis of
the image lattice N-bar together with integral preimages, and the
covector each pi1(n) induces on N-bar.  All downstream geometry (walls,
broken lines, tropical disks) is expressed in N-bar basis coordinates.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InputError
from .linalg import (
    angle_key,
    cross2,
    image_basis_and_section,
    integer_kernel_basis,
    mat_mul_vec,
    minors_gcd,
    primitive,
    vec_dot,
    vec_gcd,
    vec_is_zero,
)


@dataclass(frozen=True)
class Seed:
    """Immutable seed record.  Indices are 0-based internally."""

    rank: int
    unfrozen: tuple          # sorted tuple of unfrozen indices
    B: tuple                 # rank x rank, tuple of row-tuples, B[i][j] = B(e_i, e_j)
    d: tuple = ()            # symmetrizers, one positive Fraction per unfrozen index
    fan_rays: tuple = ()     # rays of the fan, ambient M-coordinates (length-rank ints)
    name: str = ""

    def __post_init__(self):
        if len(self.B) != self.rank or any(len(row) != self.rank for row in self.B):
            raise InputError("B must be a %d x %d integer matrix" % (self.rank, self.rank))
        if any(i < 0 or i >= self.rank for i in self.unfrozen):
            raise InputError("unfrozen indices out of range")
        if self.d and len(self.d) != len(self.unfrozen):
            raise InputError("need one symmetrizer per unfrozen index")
        if not self.d:
            object.__setattr__(self, "d", tuple(Fraction(1) for _ in self.unfrozen))

    @property
    def frozen(self):
        return tuple(i for i in range(self.rank) if i not in self.unfrozen)

    def basis_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))


def make_seed(B, unfrozen=None, d=None, fan_rays=(), name=""):
    """Convenience constructor; unfrozen defaults to every index."""
    rank = len(B)
    B = tuple(tuple(int(x) for x in row) for row in B)
    if unfrozen is None:
        unfrozen = tuple(range(rank))
    d = tuple(Fraction(x) for x in d) if d else ()
    fan_rays = tuple(tuple(int(x) for x in ray) for ray in fan_rays)
    return Seed(rank=rank, unfrozen=tuple(sorted(unfrozen)), B=B, d=d,
                fan_rays=fan_rays, name=name)


def pi_map(seed, n, which):
    """B(n, .) for which=1 or B(., n) for which=2, as a covector in M."""
    if len(n) != seed.rank:
        raise InputError("vector length != seed rank")
    if which == 1:
        return tuple(vec_dot(n, col) for col in zip(*seed.B))  # n^T B
    if which == 2:
        return mat_mul_vec(seed.B, n)                          # B n
    raise InputError("which must be 1 or 2")


def kernel_K2(seed):
    """Integral basis of K2 = ker(pi2) = {n : B(., n) = 0}."""
    return integer_kernel_basis([list(row) for row in seed.B])


def nplus_order(p, base):
    """Coordinate sum of p - base; the truncation grading.

    Raises DomainError when p - base has a negative coordinate.
    """
    diff = tuple(x - y for x, y in zip(p, base))
    if any(x < 0 for x in diff):
        raise DomainError("p - base is not in the positive span of the basis")
    return sum(diff)


class SeedGeometry:
    """Seed plus the derived lattice maps used by every other module.

    N-bar = pi2(N) carries its own lattice structure; `to_bar` rewrites
    pi2(n) in a fixed basis of that lattice and `functional` expresses
    B(n, .) as an integer covector on it.
    """

    def __init__(self, seed):
        self.seed = seed
        self.rank = seed.rank
        B_rows = [list(row) for row in seed.B]
        basis, section = image_basis_and_section(B_rows)
        self.r = len(basis)                    # rank of N-bar
        self.bar_basis = basis                 # ambient M-coordinates
        self.bar_section = section             # preimages: B @ section[j] = basis[j]
        self.k2_basis = integer_kernel_basis(B_rows)
        self._bar_cache = {}
        self._bar_cols = None

    @property
    def bar_cols(self):
        """to_bar of each basis vector, cached (columns of pi2 in bar coords)."""
        if self._bar_cols is None:
            self._bar_cols = [self.to_bar(self.seed.basis_vector(i))
                              for i in range(self.rank)]
        return self._bar_cols

    # -- lattice maps ------------------------------------------------------

    def pi1(self, n):
        return pi_map(self.seed, n, 1)

    def pi2(self, n):
        return pi_map(self.seed, n, 2)

    def to_bar(self, n):
        """pi2(n) in N-bar basis coordinates (length-r integer tuple)."""
        n = tuple(n)
        if n in self._bar_cache:
            return self._bar_cache[n]
        target = self.pi2(n)
        coords = self._bar_coords_of_ambient(target)
        self._bar_cache[n] = coords
        return coords

    def _bar_coords_of_ambient(self, m_vec):
        """Coordinates of an ambient M-vector in the N-bar basis.

        Raises DomainError when the vector is not in the image lattice.
        """
        from .linalg import rational_solve

        # rows indexed by ambient coordinates, columns by basis vectors
        mat = [[b[i] for b in self.bar_basis] for i in range(self.rank)]
        sol = rational_solve(mat, list(m_vec)) if self.bar_basis else (None if any(m_vec) else ())
        if sol is None:
            raise DomainError("vector is not in pi2(N)")
        if any(x.denominator != 1 for x in sol):
            raise DomainError("vector is not in the N-bar lattice")
        return tuple(int(x) for x in sol)

    def bar_to_ambient(self, x):
        """N-bar basis coordinates -> ambient M-coordinates."""
        out = [0] * self.rank
        for coef, b in zip(x, self.bar_basis):
            for i, v in enumerate(b):
                out[i] += coef * v
        return tuple(out)

    def bar_lift(self, x):
        """Canonical integral preimage in N of a bar-coordinate point."""
        out = [0] * self.rank
        for coef, t in zip(x, self.bar_section):
            for i, v in enumerate(t):
                out[i] += coef * v
        return tuple(out)

    def functional(self, n):
        """The covector on N-bar induced by pi1(n): j -> B(n, t_j)."""
        return tuple(vec_dot(self.pi1(n), t) for t in self.bar_section)

    def pair(self, u_bar, n):
        """Pair a covector on N-bar with (the pi2-image of) n in N."""
        return vec_dot(u_bar, self.to_bar(n))

    def in_K2(self, n):
        return vec_is_zero(self.pi2(n))

    # -- fan ---------------------------------------------------------------

    @property
    def fan_rays_bar(self):
        """Fan rays in bar coordinates, in input order."""
        return [self._bar_coords_of_ambient(ray) for ray in self.seed.fan_rays]


def kappa_profile(seed, k):
    """Intersection profile of k in K2: just its coordinates, validated.

    Coordinate i is the intersection number with the exceptional E_i for
    unfrozen i and with the boundary divisor D_i for frozen i.
    """
    if len(k) != seed.rank:
        raise InputError("vector length != seed rank")
    if not vec_is_zero(pi_map(seed, k, 2)):
        raise DomainError("vector is not in K2")
    return tuple(k)


def effective_shadow(seed, k):
    """True when k in K2 has all coordinates >= 0.

    Nonnegative coordinates place kappa(k) in the localized effective cone;
    this is the coordinate criterion used instead of any cone geometry.
    """
    if not vec_is_zero(pi_map(seed, k, 2)):
        raise DomainError("vector is not in K2")
    return all(x >= 0 for x in k)


def validate_seed(seed):
    """Check the seed against the standing assumptions; return violations.

    Returns a list of human-readable strings, empty when the seed is valid.
    Fan completeness/smoothness is only decidable here for rank(N-bar) = 2
    and is skipped (with no report) in other ranks.
    """
    problems = []
    geom = SeedGeometry(seed)
    uf = seed.unfrozen
    # skew-symmetrizability of the unfrozen block with the given d
    dmap = dict(zip(uf, seed.d))
    for i in uf:
        if dmap[i] <= 0:
            problems.append("symmetrizer d_%d is not positive" % (i + 1))
    for i in uf:
        for j in uf:
            if dmap[i] <= 0 or dmap[j] <= 0:
                continue
            if Fraction(seed.B[i][j]) / dmap[i] != -Fraction(seed.B[j][i]) / dmap[j]:
                problems.append(
                    "not skew-symmetrizable with given d at (%d, %d)" % (i + 1, j + 1))
    # pi2(e_i) constraints
    for i in uf:
        if vec_is_zero(geom.pi2(seed.basis_vector(i))):
            problems.append("pi2(e_%d) = 0 for unfrozen index %d" % (i + 1, i + 1))
    frozen_images = {}
    for i in seed.frozen:
        v = geom.pi2(seed.basis_vector(i))
        if vec_is_zero(v):
            problems.append("pi2(e_%d) = 0 for frozen index %d" % (i + 1, i + 1))
            continue
        vb = geom.to_bar(seed.basis_vector(i))
        if vec_gcd(vb) != 1:
            problems.append("pi2(e_%d) is not primitive in N-bar" % (i + 1,))
        if v in frozen_images:
            problems.append("pi2(e_%d) = pi2(e_%d) for distinct frozen indices"
                            % (frozen_images[v] + 1, i + 1))
        frozen_images.setdefault(v, i)
    # saturation of pi2(N) in M via the determinantal divisor
    if geom.r > 0 and minors_gcd([list(r) for r in seed.B], geom.r) != 1:
        problems.append("pi2(N) is not saturated in M")
    # fan rays: every ray through a frozen image must be generated by it
    rays_bar = []
    for ray in seed.fan_rays:
        try:
            rb = geom._bar_coords_of_ambient(ray)
        except DomainError:
            problems.append("fan ray %r is not in pi2(N)" % (ray,))
            continue
        if vec_is_zero(rb):
            problems.append("fan ray %r is zero" % (ray,))
            continue
        rays_bar.append(rb)
    for i in seed.frozen:
        vb = geom.to_bar(seed.basis_vector(i))
        if vec_is_zero(vb):
            continue
        vp = primitive(vb)
        for rb in rays_bar:
            if primitive(rb) == vp and rb != vb:
                problems.append(
                    "fan ray through pi2(e_%d) is not generated by it" % (i + 1,))
    if geom.r == 2 and rays_bar:
        problems.extend(_validate_fan_rank2(geom, rays_bar))
    return problems


def _validate_fan_rank2(geom, rays_bar):
    """Completeness/smoothness/ray-coverage checks, rank(N-bar) = 2 only."""
    problems = []
    prims = [primitive(r) for r in rays_bar]
    if len(set(prims)) != len(prims):
        problems.append("fan has repeated rays")
    order = sorted(range(len(prims)), key=lambda i: angle_key(prims[i]))
    cyc = [prims[i] for i in order]
    n = len(cyc)
    if n < 3:
        problems.append("fan is not complete (fewer than 3 rays)")
        return problems
    for a in range(n):
        u, v = cyc[a], cyc[(a + 1) % n]
        if cross2(u, v) <= 0:
            problems.append("fan is not complete (gap of at least a half turn)")
            break
    for a in range(n):
        u, v = cyc[a], cyc[(a + 1) % n]
        if cross2(u, v) > 0 and abs(cross2(u, v)) != 1:
            problems.append("fan is not smooth at cone (%r, %r)" % (u, v))
    # each unfrozen image must sit on a ray of the fan, and two distinct
    # unfrozen rays must not span a common 2-cone (adjacent in the fan)
    seed = geom.seed
    uf_rays = {}
    for i in seed.unfrozen:
        vb = geom.to_bar(seed.basis_vector(i))
        if vec_is_zero(vb):
            continue
        vp = primitive(vb)
        if vp not in cyc:
            problems.append("pi2(e_%d) is not on a ray of the fan" % (i + 1,))
        uf_rays.setdefault(vp, set()).add(i)
    distinct = [vp for vp in uf_rays if vp in cyc]
    for a_idx, vp in enumerate(distinct):
        for wq in distinct[a_idx + 1:]:
            pa, pb = cyc.index(vp), cyc.index(wq)
            if abs(pa - pb) in (1, n - 1):
                problems.append(
                    "rays of distinct unfrozen images %r, %r span a common cone"
                    % (vp, wq))
    return problems
