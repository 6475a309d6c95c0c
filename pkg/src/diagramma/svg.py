"""Static SVG depiction of wireframe diagrams."""

from __future__ import annotations

import math
import statistics
from xml.sax.saxutils import escape

from .chemgraph import DEFAULT_TABLE, ValenceTable
from .diaglang import (
    BALLSTICK3D,
    SPACEFILL3D,
    WIRE2D,
    Diagram,
    Kind,
    Token,
    builtin_language,
    derived_connections,
    require_well_formed,
)

BOND_PX = 40.0
MARGIN = 20.0
STROKE_GAP = {1: (0.0,), 2: (-2.5, 2.5), 3: (-4.0, 0.0, 4.0)}
# presentation only
COLORS = {"O": "#d00000", "N": "#2040d0", "S": "#b09000", "P": "#d07000", "F": "#209020", "Cl": "#209020",
          "Br": "#902020", "I": "#602090", "H": "#606060"}


def _as_wireframe(d: Diagram, table: ValenceTable) -> tuple[Diagram, list[str]]:
    if d.language == BALLSTICK3D:
        from .coarsening import M1, apply_coarsening

        return apply_coarsening(M1, d, table), ["3D ball-and-stick diagram projected orthographically onto x,y"]
    if d.language == SPACEFILL3D:
        lang = builtin_language(SPACEFILL3D, table)
        require_well_formed(d, lang)
        tokens = {t: Token(t, "vertex:" + tok.symbol.split(":", 1)[1], tok.position[:2]) for t, tok in d.tokens.items()}
        conns = set()
        next_id = max(tokens, default=0) + 1
        for a, b in sorted(derived_connections(d, lang)):
            tokens[next_id] = Token(next_id, "line:1")
            conns |= {(a, next_id), (b, next_id)}
            next_id += 1
        warning = "3D space-filling diagram projected onto x,y; overlaps drawn as single lines"
        return Diagram(WIRE2D, tokens, frozenset(conns), d.name), [warning]
    require_well_formed(d, builtin_language(d.language, table))
    return d, []


def render_svg(d: Diagram, table: ValenceTable = DEFAULT_TABLE) -> tuple[str, list[str]]:
    """Return ``(svg_text, warnings)``; median bond length is drawn at 40 px."""
    d, warnings = _as_wireframe(d, table)
    lang = builtin_language(d.language, table)
    vertices = {t: tok for t, tok in d.tokens.items() if lang.kind(tok.symbol) is Kind.IT}
    lines = []
    for t, tok in d.tokens.items():
        if lang.kind(tok.symbol) is Kind.DT:
            a, b = d.neighbors(t)
            lines.append((vertices[a].position, vertices[b].position, int(tok.symbol.split(":")[1])))
    lengths = [math.dist(p, q) for p, q, _ in lines]
    scale = BOND_PX / statistics.median(lengths) if lengths else 1.0
    xs = [tok.position[0] for tok in vertices.values()]
    ys = [tok.position[1] for tok in vertices.values()]
    min_x, max_x = (min(xs), max(xs)) if xs else (0.0, 0.0)
    min_y, max_y = (min(ys), max(ys)) if ys else (0.0, 0.0)
    width = (max_x - min_x) * scale + 2 * MARGIN
    height = (max_y - min_y) * scale + 2 * MARGIN

    def px(p):
        return ((p[0] - min_x) * scale + MARGIN, (max_y - p[1]) * scale + MARGIN)

    body = []
    for p, q, order in lines:
        (x1, y1), (x2, y2) = px(p), px(q)
        length = math.hypot(x2 - x1, y2 - y1) or 1.0
        nx, ny = -(y2 - y1) / length, (x2 - x1) / length
        for off in STROKE_GAP[order]:
            body.append(
                f'  <line x1="{x1 + nx * off:.2f}" y1="{y1 + ny * off:.2f}" '
                f'x2="{x2 + nx * off:.2f}" y2="{y2 + ny * off:.2f}" stroke="#000000" stroke-width="1.5"/>'
            )
    for t, tok in vertices.items():
        x, y = px(tok.position)
        el = tok.symbol.split(":", 1)[1]
        body.append(
            f'  <text x="{x:.2f}" y="{y:.2f}" fill="{COLORS.get(el, "#000000")}" font-family="sans-serif" '
            f'font-size="14" text-anchor="middle" dominant-baseline="central">{escape(el)}</text>'
        )
    title = f"  <title>{escape(d.name)}</title>\n" if d.name else ""
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">\n{title}' + "".join(line + "\n" for line in body) + "</svg>\n"
    )
    return svg, warnings
