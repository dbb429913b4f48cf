"""Ready-made example seeds.

The frozen families are built from a plane model: pick vectors v_i in Z^2
(one per index) and set B(e_i, e_j) = cross(v_i, v_j).  Then pi2(e_i)
lands on v_i in suitable coordinates of N-bar, so fans and frozen rays
can be designed directly in the plane.  Fan rays are stored in ambient
M-coordinates as the seed format requires.
"""

from .linalg import cross2
from .seeds import make_seed


def _cross_seed(vectors, unfrozen, fan_design, name, d=None):
    rank = len(vectors)
    B = [[cross2(vectors[i], vectors[j]) for j in range(rank)]
         for i in range(rank)]
    # ambient coordinates of a design point x: rows sigma(v_i) applied to x
    sigma = [(-v[1], v[0]) for v in vectors]
    def ambient(x):
        return tuple(vec[0] * x[0] + vec[1] * x[1] for vec in sigma)
    fan_rays = [ambient(r) for r in fan_design]
    return make_seed(B, unfrozen=unfrozen, d=d, fan_rays=fan_rays, name=name), ambient


def a2_bare():
    """Rank 2, B = [[0,1],[-1,0]]; complete smooth fan of extra rays."""
    seed = make_seed([[0, 1], [-1, 0]],
                     fan_rays=[(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1)],
                     name="a2")
    return seed


def kronecker2_bare():
    """Rank 2, B = [[0,2],[-2,0]] (affine Kronecker quiver)."""
    seed = make_seed([[0, 2], [-2, 0]],
                     fan_rays=[(2, 0), (0, 2), (-2, 0), (0, -2), (2, -2)],
                     name="kronecker2")
    return seed


def b2_bare():
    """Rank 2, B = [[0,1],[-2,0]] with symmetrizers (1, 2)."""
    seed = make_seed([[0, 1], [-2, 0]], d=[1, 2],
                     fan_rays=[(1, 0), (0, 2), (-1, 0), (0, -2), (1, -2)],
                     name="b2")
    return seed


def g2_bare():
    """Rank 2, B = [[0,1],[-3,0]] with symmetrizers (1, 3); finite type."""
    seed = make_seed([[0, 1], [-3, 0]], d=[1, 3],
                     fan_rays=[(1, 0), (0, 3), (-1, 0), (0, -3), (1, -3)],
                     name="g2")
    return seed


def torus():
    """All indices frozen, unimodular B: empty diagram, monomial thetas."""
    return make_seed([[0, 1], [-1, 0]], unfrozen=[],
                     fan_rays=[(1, 0), (0, 1), (-1, 0), (0, -1)], name="torus")


def a2_frozen():
    """A2 exchange block with four frozen boundary directions.

    Every fan ray carries a frozen vector, so the section takes values in
    the frozen sublattice and curve-class bookkeeping matches the
    intersection profiles.  Returns (seed, design) with design mapping
    plane model points to ambient M-coordinates.
    """
    vectors = [(1, 0), (0, 1),           # unfrozen
               (1, 0), (0, 1), (-1, -1), (1, 1)]  # frozen
    fan = [(1, 0), (1, 1), (0, 1), (-1, -1)]
    return _cross_seed(vectors, (0, 1), fan, "a2f")


def kronecker_frozen():
    """Kronecker-2 exchange block with frozen boundary directions."""
    vectors = [(1, 0), (0, 2),
               (1, 0), (0, 1), (-1, -1), (1, 1)]
    fan = [(1, 0), (1, 1), (0, 1), (-1, -1)]
    return _cross_seed(vectors, (0, 1), fan, "kronecker2f")


def markov():
    """The rank-3 all-unfrozen Markov quiver; K2 is spanned by (1,1,1)."""
    return make_seed([[0, 2, -2], [-2, 0, 2], [2, -2, 0]], name="markov")


def exceptional_ray():
    """Rank 2, pi2(e_1) = 2 pi2(e_2) with e_2 frozen; K2 = Z(1,-2)."""
    return make_seed([[0, 0], [-2, -1]], unfrozen=[0],
                     fan_rays=[(0, -1), (0, 1)], name="exceptional")


NAMED = {
    "a2": a2_bare,
    "kronecker2": kronecker2_bare,
    "b2": b2_bare,
    "g2": g2_bare,
    "torus": torus,
    "markov": markov,
}
