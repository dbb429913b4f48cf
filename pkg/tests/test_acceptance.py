"""Acceptance suite: one test per criterion, one printed line each.

Every tolerance is exact (arbitrary-precision rationals); runtime bounds
are asserted where stated.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

from thetafan.catalog import (a2_bare, a2_frozen, b2_bare, exceptional_ray,
                              kronecker2_bare, kronecker_frozen, markov, torus)
from thetafan.io import dumps, seed_to_dict, write_atomic
from thetafan.linalg import primitive, vec_is_zero
from thetafan.mutation import structure_constant_agreement
from thetafan.scattering import (RAY, consistency_check, consistent_completion,
                                 diagrams_equivalent, initial_diagram,
                                 random_generic_point)
from thetafan.seeds import SeedGeometry, kappa_profile, kernel_K2, make_seed
from thetafan.series import WallFunction
from thetafan.theta import (PLSection, basepoint_transport, theta_product_expand,
                            trace_s)
from thetafan.tropical import (DegreeSpec, degree_curve_class, disk_count,
                               mult_gw, mult_lie, near_ray_basepoint,
                               tropical_alpha)


def report(num, label, passed):
    print("%s  criterion %d: %s" % ("PASS" if passed else "FAIL", num, label))
    assert passed, "criterion %d failed: %s" % (num, label)


def _ctx(seed, order):
    geom = SeedGeometry(seed)
    diagram = consistent_completion(initial_diagram(geom, order), order)
    return geom, diagram, PLSection(geom)


def test_criterion_1_a2_scattering():
    t0 = time.time()
    seed = a2_bare()
    geom, diagram, _ = _ctx(seed, 8)
    added = [w for w in diagram.walls if w.kind == RAY]
    ok = (len(added) == 1
          and added[0].function.n == (1, 1)
          and added[0].function.unit_coeffs(8) == [Fraction(1), Fraction(0),
                                                   Fraction(0), Fraction(0)]
          and not added[0].incoming(geom))
    consistent, _w = consistency_check(diagram, 8, 100, random.Random(101))
    elapsed = time.time() - t0
    report(1, "A2 completion at order 8 adds exactly 1 + z^(e1+e2) "
              "(100 loops, %.2fs)" % elapsed,
           ok and consistent and elapsed < 1.0)


def test_criterion_2_kronecker_consistency():
    t0 = time.time()
    seed = kronecker2_bare()
    geom = SeedGeometry(seed)
    high = consistent_completion(initial_diagram(geom, 6), 6)
    consistent, _w = consistency_check(high, 6, 25, random.Random(202))
    low = consistent_completion(initial_diagram(geom, 4), 4)
    truncated_walls = []
    from thetafan.scattering import ScatteringDiagram, Wall
    for w in high.walls:
        truncated_walls.append(
            Wall(w.kind, w.direction,
                 WallFunction(geom.rank, w.function.n, w.function.unit_coeffs(4))))
    truncated = ScatteringDiagram(geom, truncated_walls, 4)
    stable = diagrams_equivalent(low, truncated, 4, 10, random.Random(203))
    elapsed = time.time() - t0
    report(2, "Kronecker-2 consistency at order 6 + truncation monotonicity "
              "(%.2fs)" % elapsed,
           consistent and stable and elapsed < 30.0)


def test_criterion_3_oracle_equivalence():
    t0 = time.time()
    rng = random.Random(303)
    total = 0
    ok = True

    def check(geom, diagram, section, points, order):
        nonlocal total, ok
        expansion = theta_product_expand(diagram, section, points, order,
                                         rng=rng)
        labels = set(expansion.labels())
        # probe every arising label plus one absent one
        probes = sorted(labels) + [(5, 5)]
        for p in probes:
            Q = near_ray_basepoint(diagram, p, rng)
            trop = tropical_alpha(geom, section, points, p, order, Q, rng)
            left = {k: v for k, v in expansion.alpha(p).items() if v != 0}
            right = {k: v for k, v in trop.items() if v != 0}
            if left != right:
                ok = False
        total += 1

    for seed in (a2_bare(), b2_bare(), kronecker2_bare()):
        geom, diagram, section = _ctx(seed, 4)
        check(geom, diagram, section, [(-1, -1)], 4)                      # s=1
        check(geom, diagram, section, [(-1, 0), (0, -1)], 4)              # s=2
        check(geom, diagram, section, [(-1, 1), (1, 0), (0, -1)], 4)      # s=3
        check(geom, diagram, section, [(0, -1), (0, -1)], 4)
        check(geom, diagram, section, [(1, 0), (0, 1)], 3)
    for builder in (a2_frozen, kronecker_frozen):
        seed, ambient = builder()
        geom, diagram, section = _ctx(seed, 3)
        bar = lambda x: geom._bar_coords_of_ambient(ambient(x))
        check(geom, diagram, section, [bar((-1, -1)), bar((1, 1))], 3)
        check(geom, diagram, section,
              [bar((1, 0)), bar((0, 1)), bar((-1, -1))], 3)
    elapsed = time.time() - t0
    report(3, "broken-line vs tropical-disk coefficients on %d point sets "
              "across 5 seeds (%.1fs)" % (total, elapsed),
           ok and total >= 15 and elapsed < 300.0)


def test_criterion_4_multiplicity_formula():
    rng = random.Random(404)
    seed, ambient = kronecker_frozen()
    geom, diagram, section = _ctx(seed, 4)
    bar = lambda x: geom._bar_coords_of_ambient(ambient(x))
    pts = (bar((-1, 1)), bar((1, -1)))
    checked = 0
    ok = True
    for m1 in range(0, 3):
        for m2 in range(0, 3):
            target = [m1, m2, 0, 0, 0, 0]
            for q in pts:
                target = [a + b for a, b in
                          zip(target, section.lattice_value(q))]
            n = tuple(target)
            p = geom.to_bar(n)
            spec = DegreeSpec({i: (m,) for i, m in ((0, m1), (1, m2)) if m},
                              pts, p, n)
            Q = near_ray_basepoint(diagram, p, rng)
            # disk_count asserts mult_lie == a_w Mult z^(n_out) on each disk
            count, curves = disk_count(geom, section, spec, Q,
                                       random.Random(405), check_lie=True)
            for curve in curves:
                sinks = {mult_gw(curve, sink=v) for v in curve.positions}
                if len(sinks) != 1:
                    ok = False
                coeff, expo = mult_lie(curve)
                if expo != n or abs(coeff) != abs(spec.a_weight()) * mult_gw(curve):
                    ok = False
                checked += 1
    # single-vertex closed form w1 w2 |det u1 u2|
    from thetafan.tropical import End, enumerate_rigid
    closed_ok = True
    for (w1, u1, w2, u2) in [(2, (1, 0), 3, (0, 1)), (2, (1, 1), 1, (-1, 2))]:
        d1 = tuple(w1 * c for c in u1)
        d2 = tuple(w2 * c for c in u2)
        d3 = tuple(-a - b for a, b in zip(d1, d2))
        ends = [End(1, d1, ("plane",)), End(2, d2, ("plane",)),
                End(3, d3, ("plane",)),
                End("a", (0, 0), ("point", (Fraction(13, 7), Fraction(29, 11)))),
                End("b", (0, 0), ("point", (Fraction(-17, 5), Fraction(3, 13))))]
        curves = enumerate_rigid(ends)
        det = abs(u1[0] * u2[1] - u1[1] * u2[0])
        if len(curves) != 1 or mult_gw(curves[0]) != w1 * w2 * det:
            closed_ok = False
    report(4, "mult identities on %d rigid disks + sink independence + "
              "closed form" % checked,
           ok and checked >= 5 and closed_ok)


def test_criterion_5_kappa_postconditions():
    rng = random.Random(505)
    seeds = [markov(), exceptional_ray(), a2_frozen()[0], kronecker_frozen()[0],
             make_seed([[0, 0], [0, 0]], unfrozen=[], name="zero")]
    checked = 0
    ok = True
    for seed in seeds:
        basis = kernel_K2(seed)
        if not basis:
            ok = False
        for _ in range(20):
            coeffs = [rng.randrange(-5, 6) for _ in basis]
            k = tuple(sum(c * b[i] for c, b in zip(coeffs, basis))
                      for i in range(seed.rank))
            k2 = tuple(2 * x for x in k)
            if kappa_profile(seed, k) != k:
                ok = False
            lhs = kappa_profile(seed, tuple(a + b for a, b in zip(k, k2)))
            rhs = tuple(a + b for a, b in zip(kappa_profile(seed, k),
                                              kappa_profile(seed, k2)))
            if lhs != rhs:
                ok = False
            checked += 1
    # Remark-4.5 matching on on-ray labels of a frozen seed
    seed, ambient = kronecker_frozen()
    geom, diagram, section = _ctx(seed, 4)
    bar = lambda x: geom._bar_coords_of_ambient(ambient(x))
    rays = [primitive(r) for r in geom.fan_rays_bar]
    matched = 0
    for design in ([(2, 2), (-1, -1)], [(0, 2), (-1, -1)], [(1, 1), (-2, -2)]):
        pts = [bar(x) for x in design]
        expansion = theta_product_expand(diagram, section, pts, 4, rng=rng)
        for label in expansion.labels():
            if not vec_is_zero(label) and primitive(label) not in rays:
                continue
            for k2, _c in expansion.alpha(label).items():
                phi_p = section.lattice_value(label)
                m_vec = tuple(k2[i] + phi_p[i]
                              - sum(section.lattice_value(q)[i] for q in pts)
                              for i in range(geom.rank))
                spec = DegreeSpec({i: (m_vec[i],) for i in seed.unfrozen
                                   if m_vec[i]}, tuple(pts), label,
                                  tuple(a + b for a, b in zip(k2, phi_p)))
                if degree_curve_class(geom, spec) != kappa_profile(seed, k2):
                    ok = False
                matched += 1
    report(5, "kappa linearity/coordinates on %d vectors + %d profile "
              "matches" % (checked, matched),
           ok and checked == 100 and matched >= 2)


def test_criterion_6_basepoint_transport():
    rng = random.Random(606)
    ok = True
    trials = 0
    for seed in (a2_bare(), b2_bare()):
        geom, diagram, section = _ctx(seed, 5)
        done = 0
        while done < 20:
            p = (rng.randrange(-3, 4), rng.randrange(-3, 4))
            if p == (0, 0):
                continue
            Q = random_generic_point(diagram, rng)
            Qp = random_generic_point(diagram, rng)
            if not basepoint_transport(diagram, section, p, Q, Qp, 5, rng):
                ok = False
            done += 1
            trials += 1
    report(6, "CPS transport on %d random (p, Q, Q') triples" % trials,
           ok and trials == 40)


def test_criterion_7_algebra_axioms():
    rng = random.Random(707)
    seed = a2_bare()
    geom, diagram, section = _ctx(seed, 4)
    Q = random_generic_point(diagram, rng)
    cache = {}
    ok = True
    labels = [(-1, 0), (0, -1), (1, 0), (0, 1), (-1, 1), (1, -1)]
    for _ in range(4):
        p1, p2, p3 = (labels[rng.randrange(len(labels))] for _ in range(3))
        e12 = theta_product_expand(diagram, section, [p1, p2], 4, Q=Q,
                                   theta_cache=cache)
        e21 = theta_product_expand(diagram, section, [p2, p1], 4, Q=Q,
                                   theta_cache=cache)
        if e12 != e21:
            ok = False
        e123 = theta_product_expand(diagram, section, [p1, p2, p3], 4, Q=Q,
                                    theta_cache=cache)
        composed = {}
        for r, terms in e12.coeffs.items():
            er3 = theta_product_expand(diagram, section, [r, p3], 4, Q=Q,
                                       theta_cache=cache)
            for q, terms2 in er3.coeffs.items():
                bucket = composed.setdefault(q, {})
                for ka, ca in terms.items():
                    for kb, cb in terms2.items():
                        key = tuple(x + y for x, y in zip(ka, kb))
                        bucket[key] = bucket.get(key, Fraction(0)) + ca * cb
        composed = {q: {k: v for k, v in t.items() if v != 0}
                    for q, t in composed.items()}
        composed = {q: t for q, t in composed.items() if t}
        if composed != e123._clean():
            ok = False
    ident = theta_product_expand(diagram, section, [(0, 0), (-1, 1)], 4, Q=Q,
                                 theta_cache=cache)
    if ident._clean() != {(-1, 1): {(0, 0): Fraction(1)}}:
        ok = False
    tr1 = trace_s(diagram, section, [(-1, 0), (0, -1), (1, 0)], 4, Q=Q)
    tr2 = trace_s(diagram, section, [(1, 0), (-1, 0), (0, -1)], 4, Q=Q)
    if tr1 != tr2:
        ok = False
    report(7, "commutativity, associativity, identity, trace symmetry", ok)


def test_criterion_8_mutation_invariance():
    rng = random.Random(808)
    ok = True
    seed, ambient = kronecker_frozen()
    geom = SeedGeometry(seed)
    bar = lambda x: geom._bar_coords_of_ambient(ambient(x))
    pts = [bar((-1, 1)), bar((1, -1))]
    for i in (0, 1):
        agree, rep = structure_constant_agreement(seed, i, pts, None, 3,
                                                  random.Random(809 + i))
        if not agree:
            ok = False
        geom_m = SeedGeometry(
            __import__("thetafan.mutation", fromlist=["MutationStep"])
            .MutationStep(seed, i).mutated)
        for k2 in rep["exponents_original"]:
            if not geom.in_K2(k2) or any(k2[j] < 0 for j in seed.unfrozen):
                ok = False
        for k2 in rep["exponents_mutated"]:
            if not geom_m.in_K2(k2) or any(k2[j] < 0 for j in seed.unfrozen):
                ok = False
    bare = a2_bare()
    for i in (0, 1):
        agree, _rep = structure_constant_agreement(
            bare, i, [(-1, 0), (0, -1)], None, 4, random.Random(811 + i))
        if not agree:
            ok = False
    report(8, "structure constants invariant under both mutations, "
              "exponents effective in K2", ok)


def test_criterion_9_gram_nondegeneracy():
    from thetafan.theta import gram_matrix

    rng = random.Random(909)
    ok = True
    seed = torus()
    geom, diagram, section = _ctx(seed, 4)
    box = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
    _entries, full = gram_matrix(diagram, section, box, 4, rng=rng)
    if not full:
        ok = False
    seed = a2_bare()
    geom, diagram, section = _ctx(seed, 4)
    _entries, full = gram_matrix(diagram, section, box, 4, rng=rng)
    if not full:
        ok = False
    report(9, "Gram matrix full rank mod m on a symmetric 5-point box "
              "(torus and A2)", ok)


def test_criterion_10_determinism(tmp_path):
    seed_file = str(tmp_path / "a2.json")
    write_atomic(seed_file, dumps(seed_to_dict(a2_bare())))
    commands = [
        ["scatter", "--order", "5"],
        ["scatter", "--order", "5", "--format", "svg"],
        ["theta", "--points=-1,0", "--order", "4"],
        ["product", "--points=-1,0;0,-1", "--order", "4"],
        ["product", "--points=-1,0;0,-1", "--order", "4", "--format", "csv"],
        ["tropical", "--points=-1,0;0,-1", "--p=-1,-1", "--order", "3"],
        ["verify", "--order", "4", "--trials", "6"],
        ["mutate", "--index", "1"],
    ]
    ok = True
    for cmd in commands:
        outputs = []
        for run in (1, 2):
            out = str(tmp_path / "out.bin")
            res = subprocess.run(
                [sys.executable, "-m", "thetafan"] + cmd +
                ["--seed-file", seed_file, "--rng-seed", "77", "--out", out],
                capture_output=True, text=True)
            if res.returncode != 0:
                ok = False
                break
            outputs.append(open(out, "rb").read())
        if len(outputs) != 2 or outputs[0] != outputs[1]:
            ok = False
    report(10, "byte-identical outputs across all commands with a fixed "
               "PRNG seed", ok)
