"""Batch command-line front end.

Commands: scatter, theta, product, tropical, verify, mutate.  All
randomness flows through the recorded --rng-seed, so outputs are
byte-identical across runs with the same configuration.
"""

import argparse
import random
import sys

from .errors import InputError, ThetafanError
from .io import (dumps, expansion_to_csv, load_seed, point_frac,
                 seed_to_dict, write_atomic)
from .mutation import mutate_seed, structure_constant_agreement
from .scattering import (consistency_check, consistent_completion,
                         diagrams_equivalent, initial_diagram,
                         random_generic_point)
from .seeds import SeedGeometry, validate_seed
from .theta import PLSection, basepoint_transport, theta_function, theta_product_expand
from .tropical import near_ray_basepoint, tropical_alpha


def _parse_points(text):
    """Parse '1,0;0,-1' or the shell-friendly '1,0:0,-1' into point tuples."""
    if not text:
        return []
    out = []
    for chunk in text.replace(":", ";").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        out.append(tuple(int(x) for x in chunk.split(",")))
    return out


def _build(config):
    seed = load_seed(config.seed_file)
    problems = validate_seed(seed)
    if problems and not config.allow_invalid:
        raise InputError("seed validation failed: " + "; ".join(problems))
    geom = SeedGeometry(seed)
    return seed, geom


def _completed(geom, order):
    return consistent_completion(initial_diagram(geom, order), order)


def _emit(config, payload, text=None):
    body = text if text is not None else dumps(payload)
    if config.out:
        write_atomic(config.out, body)
    else:
        sys.stdout.write(body)


def cmd_scatter(config):
    seed, geom = _build(config)
    diagram = _completed(geom, config.order)
    rng = random.Random(config.rng_seed)
    ok, witness = consistency_check(diagram, config.order, config.trials, rng)
    payload = {
        "command": "scatter",
        "seed": seed_to_dict(seed),
        "rng_seed": config.rng_seed,
        "order": config.order,
        "diagram": diagram.to_json(),
        "consistent": ok,
    }
    if config.format == "svg":
        from .svg import render_diagram
        _emit(config, None, render_diagram(diagram.to_json()))
    else:
        _emit(config, payload)
    return 0 if ok else 1


def cmd_theta(config):
    seed, geom = _build(config)
    diagram = _completed(geom, config.order)
    section = PLSection(geom)
    rng = random.Random(config.rng_seed)
    points = _parse_points(config.points)
    if len(points) != 1:
        raise InputError("theta needs exactly one point via --points")
    p = points[0]
    Q = random_generic_point(diagram, rng)
    series = theta_function(diagram, section, p, Q, config.order)
    payload = {
        "command": "theta",
        "rng_seed": config.rng_seed,
        "order": config.order,
        "p": list(p),
        "Q": point_frac(Q),
        "series": series.to_json(),
    }
    status = 0
    if config.check_tropical:
        expansion = theta_product_expand(diagram, section, [p], config.order,
                                         rng=rng)
        mismatches = []
        for r in expansion.labels():
            Qr = near_ray_basepoint(diagram, r, rng)
            trop = tropical_alpha(geom, section, [p], r, config.order, Qr, rng)
            if {k: v for k, v in expansion.alpha(r).items() if v != 0} != \
                    {k: v for k, v in trop.items() if v != 0}:
                mismatches.append({"r": list(r)})
        payload["tropical_check"] = {"passed": not mismatches,
                                     "mismatches": mismatches}
        status = 0 if not mismatches else 1
    _emit(config, payload)
    return status


def cmd_product(config):
    seed, geom = _build(config)
    diagram = _completed(geom, config.order)
    section = PLSection(geom)
    rng = random.Random(config.rng_seed)
    points = _parse_points(config.points)
    if not points:
        raise InputError("product needs --points")
    expansion = theta_product_expand(diagram, section, points, config.order, rng=rng)
    from .theta import support_report
    stability = support_report(diagram, section, points, config.order,
                               Q=expansion.Q)
    payload = {
        "command": "product",
        "rng_seed": config.rng_seed,
        "order": config.order,
        "points": [list(p) for p in points],
        "Q": point_frac(expansion.Q),
        "expansion": expansion.to_json(),
        "support": {"labels": [list(r) for r in stability["support"]],
                    "stable_from_previous_order": stability["stable"]},
    }
    status = 0
    if config.check_tropical:
        mismatches = []
        for r in expansion.labels():
            Qr = near_ray_basepoint(diagram, r, rng)
            trop = tropical_alpha(geom, section, points, r, config.order, Qr, rng)
            left = {k: v for k, v in expansion.alpha(r).items() if v != 0}
            right = {k: v for k, v in trop.items() if v != 0}
            if left != right:
                mismatches.append({"r": list(r)})
        payload["tropical_check"] = {"passed": not mismatches,
                                     "mismatches": mismatches}
        status = 0 if not mismatches else 1
    if config.format == "csv":
        _emit(config, None, expansion_to_csv(expansion, seed.rank))
    else:
        _emit(config, payload)
    return status


def cmd_tropical(config):
    seed, geom = _build(config)
    diagram = _completed(geom, config.order)
    section = PLSection(geom)
    rng = random.Random(config.rng_seed)
    points = _parse_points(config.points)
    targets = _parse_points(config.p)
    if not points or len(targets) != 1:
        raise InputError("tropical needs --points and a single --p")
    p = targets[0]
    Q = near_ray_basepoint(diagram, p, rng)
    alpha = tropical_alpha(geom, section, points, p, config.order, Q, rng)
    payload = {
        "command": "tropical",
        "rng_seed": config.rng_seed,
        "order": config.order,
        "points": [list(q) for q in points],
        "p": list(p),
        "Q": point_frac(Q),
        "alpha": [{"exp": list(k), "num": c.numerator, "den": c.denominator}
                  for k, c in sorted(alpha.items())],
    }
    _emit(config, payload)
    return 0


def cmd_verify(config):
    seed, geom = _build(config)
    rng = random.Random(config.rng_seed)
    report = {"command": "verify", "rng_seed": config.rng_seed,
              "order": config.order, "checks": []}

    def record(name, passed, detail=None):
        entry = {"name": name, "passed": bool(passed)}
        if detail is not None:
            entry["detail"] = detail
        report["checks"].append(entry)

    problems = validate_seed(seed)
    record("seed_assumptions", not problems, problems or None)

    if config.diagram_file:
        import json

        from .scattering import diagram_from_json
        with open(config.diagram_file) as fh:
            diagram = diagram_from_json(geom, json.load(fh)["diagram"])
    else:
        diagram = _completed(geom, config.order)
    ok, witness = consistency_check(diagram, config.order, config.trials, rng)
    record("consistency", ok, witness)
    if config.diagram_file and not ok:
        report["passed"] = False
        _emit(config, report)
        return 1

    lower = _completed(geom, max(config.order - 1, 1))
    truncated = consistent_completion(
        initial_diagram(geom, max(config.order - 1, 1)), max(config.order - 1, 1))
    stable = diagrams_equivalent(lower, truncated, max(config.order - 1, 1),
                                 max(config.trials // 4, 2), rng)
    record("order_stability", stable)

    section = PLSection(geom)
    transport_ok = True
    for _ in range(max(config.trials // 10, 3)):
        p = (rng.randrange(-3, 4), rng.randrange(-3, 4))
        if p == (0, 0):
            continue
        Q = random_generic_point(diagram, rng)
        Qp = random_generic_point(diagram, rng)
        if not basepoint_transport(diagram, section, p, Q, Qp, config.order, rng):
            transport_ok = False
            record("basepoint_transport", False,
                   {"p": list(p), "Q": point_frac(Q), "Qp": point_frac(Qp)})
            break
    if transport_ok:
        record("basepoint_transport", True)

    points = _parse_points(config.points) or [(-1, 0), (0, -1)]
    exp_a = theta_product_expand(diagram, section, points, config.order, rng=rng)
    exp_b = theta_product_expand(diagram, section, points, config.order, rng=rng)
    record("expansion_basepoint_stability", exp_a == exp_b)

    mutation_ok = True
    for i in seed.unfrozen:
        agree, _rep = structure_constant_agreement(
            seed, i, points, None, min(config.order, 4), rng)
        if not agree:
            mutation_ok = False
            record("mutation_agreement", False, {"index": i + 1})
            break
    if mutation_ok:
        record("mutation_agreement", True)

    passed = all(c["passed"] for c in report["checks"])
    report["passed"] = passed
    _emit(config, report)
    return 0 if passed else 1


def cmd_mutate(config):
    seed, geom = _build(config)
    if config.index is None:
        raise InputError("mutate needs --index (1-based unfrozen index)")
    mutated = mutate_seed(seed, config.index - 1)
    payload = seed_to_dict(mutated)
    _emit(config, payload)
    return 0


COMMANDS = {
    "scatter": cmd_scatter,
    "theta": cmd_theta,
    "product": cmd_product,
    "tropical": cmd_tropical,
    "verify": cmd_verify,
    "mutate": cmd_mutate,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thetafan",
        description="Exact scattering diagrams, theta functions, and "
                    "tropical disk counts for cluster seed data.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--seed-file", required=True)
    parser.add_argument("--order", type=int, default=4)
    parser.add_argument("--points", default="",
                        help="semicolon-separated integer points, e.g. '1,0;0,-1'")
    parser.add_argument("--p", default="", help="target point for tropical")
    parser.add_argument("--index", type=int, default=None,
                        help="1-based unfrozen index for mutate")
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    parser.add_argument("--rng-seed", type=int, default=2024)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--check-tropical", action="store_true")
    parser.add_argument("--diagram-file", default=None,
                        help="verify a previously written diagram instead of "
                             "recomputing the completion")
    parser.add_argument("--allow-invalid", action="store_true",
                        help="run even when seed validation reports problems")
    return parser


def main(argv=None):
    parser = build_parser()
    config = parser.parse_args(argv)
    if config.order < 1:
        parser.error("--order must be >= 1")
    try:
        return COMMANDS[config.command](config)
    except InputError as exc:
        sys.stderr.write("input error: %s\n" % (exc,))
        return 2
    except ThetafanError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 1


if __name__ == "__main__":
    sys.exit(main())
