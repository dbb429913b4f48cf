import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetafan.catalog import exceptional_ray, markov
from thetafan.errors import DomainError, InputError
from thetafan.seeds import (SeedGeometry, effective_shadow, kappa_profile,
                            kernel_K2, make_seed, nplus_order, pi_map,
                            validate_seed)


def test_validate_canonical_skew_seed():
    seed = make_seed([[0, 1], [-1, 0]],
                     fan_rays=[(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1)])
    assert validate_seed(seed) == []


def test_validate_zero_form_reports_unfrozen_image():
    seed = make_seed([[0, 0], [0, 0]], unfrozen=[0])
    problems = validate_seed(seed)
    assert any("pi2(e_1) = 0" in p for p in problems)


def test_validate_skew_symmetrizability_with_given_d():
    # solving d_1^-1 B[1][2] = -d_2^-1 B[2][1] for B = [[0,1],[-2,0]]
    # forces d = (1, 2) up to scale
    bad = make_seed([[0, 1, 0], [-2, 0, 0], [0, 0, 0]], unfrozen=[0, 1],
                    d=[1, 1])
    assert any("skew-symmetrizable" in p for p in validate_seed(bad))
    good = make_seed([[0, 1, 0], [-2, 0, 0], [1, 1, 0]], unfrozen=[0, 1],
                     d=[1, 2])
    assert not any("skew-symmetrizable" in p for p in validate_seed(good))


def test_validate_saturation():
    seed = make_seed([[0, 2], [-2, 0]])
    assert any("saturated" in p for p in validate_seed(seed))


def test_malformed_matrix_raises():
    with pytest.raises(InputError):
        make_seed([[0, 1], [-1]])


def test_pi_map_row_and_column():
    seed = make_seed([[0, 1], [-1, 0]])
    assert pi_map(seed, (1, 0), 1) == (0, 1)
    assert pi_map(seed, (1, 0), 2) == (0, -1)
    k2 = make_seed([[0, 2], [-2, 0]])
    assert pi_map(k2, (1, 1), 2) == (2, -2)


def test_kernel_K2_cases():
    assert kernel_K2(make_seed([[0, 1], [-1, 0]])) == []
    zero = kernel_K2(make_seed([[0, 0], [0, 0]], unfrozen=[]))
    assert sorted(zero) == [(0, 1), (1, 0)]
    k = kernel_K2(make_seed([[0, 1, -1], [-1, 0, 1], [1, -1, 0]]))
    assert len(k) == 1 and tuple(map(abs, k[0])) == (1, 1, 1)


def test_kappa_profile_reads_coordinates():
    seed = exceptional_ray()  # pi2(e_1) = 2 pi2(e_2), e_2 frozen
    assert kappa_profile(seed, (0, 0)) == (0, 0)
    # the exceptional class: kappa(-e_1 + 2 e_2) has profile (-1, 2)
    assert kappa_profile(seed, (-1, 2)) == (-1, 2)
    with pytest.raises(DomainError):
        kappa_profile(seed, (1, 0))


def test_kappa_linearity_and_exactness():
    seed = markov()
    basis = kernel_K2(seed)
    k = basis[0]
    k2 = tuple(2 * x for x in k)
    assert kappa_profile(seed, k2) == tuple(a + b for a, b in zip(k, k))
    for row in seed.B:
        assert sum(r * x for r, x in zip(row, k)) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_kappa_additive_on_random_kernel_vectors(a, b):
    seed = markov()
    (k,) = kernel_K2(seed)
    u = tuple(a * x for x in k)
    v = tuple(b * x for x in k)
    s = tuple(x + y for x, y in zip(u, v))
    assert kappa_profile(seed, s) == tuple(
        x + y for x, y in zip(kappa_profile(seed, u), kappa_profile(seed, v)))


def test_effective_shadow_nonnegative_coordinates():
    seed = markov()
    (k,) = kernel_K2(seed)
    k = k if all(x >= 0 for x in k) else tuple(-x for x in k)
    assert effective_shadow(seed, k)
    assert not effective_shadow(seed, tuple(-x for x in k))


def test_nplus_order():
    assert nplus_order((1, 2), (1, 2)) == 0
    assert nplus_order((3, 1), (0, 0)) == 4
    assert nplus_order((0, 7), (0, 0)) == 7
    with pytest.raises(DomainError):
        nplus_order((0, 0), (1, 0))


def test_geometry_bar_coordinates_and_functional():
    seed = make_seed([[0, 2], [-2, 0]])
    geom = SeedGeometry(seed)
    # pi2(N) has index 4 in M; e_1 maps to a primitive bar vector
    assert geom.r == 2
    b1 = geom.to_bar((1, 0))
    assert max(map(abs, b1)) == 1
    # the functional of e_1 has index 2 on N-bar, matching the column gcd
    from thetafan.linalg import vec_gcd
    assert vec_gcd(geom.functional((1, 0))) == 2
    # pairing of the functional against pi2 recovers B
    assert geom.pair(geom.functional((1, 0)), (0, 1)) == 2
