"""Minimal SVG rendering of rank-2 scattering diagrams.

Pure presentation: the drawing is a deterministic function of the
diagram's JSON data, so regenerating from a saved diagram reproduces the
file byte for byte.
"""

from fractions import Fraction


_SIZE = 640
_SCALE = 64.0


def _to_px(x, y):
    return (_SIZE / 2 + float(x) * _SCALE, _SIZE / 2 - float(y) * _SCALE)


def _leading_label(function):
    n = function["n"]
    for j, (num, den) in enumerate(function["coeffs"], start=1):
        if num != 0:
            c = Fraction(num, den)
            cs = "" if c == 1 else ("-" if c == -1 else str(c) + " ")
            expo = [j * x for x in n]
            return "1 + %sz^%s + ..." % (cs, expo)
    return "1"


def render_diagram(diagram_json):
    """SVG text from the JSON form of a scattering diagram."""
    walls = diagram_json["walls"]
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (_SIZE, _SIZE, _SIZE, _SIZE),
        '<rect width="100%" height="100%" fill="white"/>',
        '<g stroke="#cccccc" stroke-width="1">'
        '<line x1="0" y1="%d" x2="%d" y2="%d"/>'
        '<line x1="%d" y1="0" x2="%d" y2="%d"/></g>'
        % (_SIZE // 2, _SIZE, _SIZE // 2, _SIZE // 2, _SIZE // 2, _SIZE),
    ]
    reach = 4.6
    for wall in walls:
        color = "#1f5fbf" if wall["incoming"] else "#bf3f1f"
        gens = wall["support_generators"]
        for g in gens:
            norm = max(abs(g[0]), abs(g[1]))
            gx, gy = (g[0] / norm * reach, g[1] / norm * reach)
            x2, y2 = _to_px(gx, gy)
            x1, y1 = _to_px(0, 0)
            parts.append(
                '<line x1="%.1f" y1="%.1f" x2="%.1f" y2="%.1f" '
                'stroke="%s" stroke-width="2"/>' % (x1, y1, x2, y2, color))
        g = gens[0]
        norm = max(abs(g[0]), abs(g[1]))
        lx, ly = _to_px(g[0] / norm * (reach - 0.4), g[1] / norm * (reach - 0.4))
        parts.append(
            '<text x="%.1f" y="%.1f" font-size="12" fill="%s">%s</text>'
            % (lx, ly, color, _leading_label(wall["function"])))
    parts.append(
        '<circle cx="%d" cy="%d" r="3" fill="black"/>' % (_SIZE // 2, _SIZE // 2))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
