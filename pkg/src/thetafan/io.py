"""Seed files and result serialization.

Seed JSON: {"rank": int, "unfrozen": [int, 1-based], "B": [[int]],
"d": [[num, den], ...] (optional, one per unfrozen index),
"fan_rays": [[int]] (ambient M-coordinates)}.
All output writers are deterministic: sorted keys, no timestamps, exact
rationals as [num, den] pairs.
"""

import json
import os
from fractions import Fraction

from .errors import InputError
from .seeds import make_seed


def load_seed(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise InputError("cannot read seed file %s: %s" % (path, exc))
    return seed_from_dict(data)


def seed_from_dict(data):
    try:
        rank = int(data["rank"])
        B = data["B"]
        unfrozen = [int(i) - 1 for i in data.get("unfrozen", range(1, rank + 1))]
        d = [Fraction(num, den) for num, den in data["d"]] if data.get("d") else None
        fan = [tuple(int(x) for x in ray) for ray in data.get("fan_rays", [])]
        name = data.get("name", "")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("malformed seed data: %s" % (exc,))
    return make_seed(B, unfrozen=unfrozen, d=d, fan_rays=fan, name=name)


def seed_to_dict(seed):
    return {
        "rank": seed.rank,
        "unfrozen": [i + 1 for i in seed.unfrozen],
        "B": [list(row) for row in seed.B],
        "d": [[c.numerator, c.denominator] for c in seed.d],
        "fan_rays": [list(r) for r in seed.fan_rays],
        "name": seed.name,
    }


def dumps(payload):
    """Canonical JSON text: sorted keys, stable separators, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=1,
                      separators=(",", ": ")) + "\n"


def write_atomic(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def expansion_to_csv(expansion, rank):
    """Flat rows: r coordinates, K2 exponent coordinates, num, den."""
    lines = []
    header = (["r%d" % (i + 1) for i in range(len(next(iter(expansion.coeffs), (0, 0))))]
              if expansion.coeffs else ["r1", "r2"])
    header += ["e%d" % (i + 1) for i in range(rank)] + ["num", "den"]
    lines.append(",".join(header))
    for r in sorted(expansion.coeffs):
        for k2 in sorted(expansion.coeffs[r]):
            c = expansion.coeffs[r][k2]
            row = [str(x) for x in r] + [str(x) for x in k2]
            row += [str(c.numerator), str(c.denominator)]
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def point_frac(Q):
    return [[c.numerator, c.denominator] for c in (Fraction(q) for q in Q)]
