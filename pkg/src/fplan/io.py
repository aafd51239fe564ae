"""File formats: GSRC/Bookshelf benchmarks, constraints JSON, solution
records (newline-delimited JSON), and SVG renderings.

Records embed the full problem, so legality and wire-length can be
re-verified offline from placements alone; stored totals are never
trusted by downstream commands. Writers emit byte-identical output for
identical inputs (fixed key order; floats serialized via repr).
"""

import json
import math
import os
import re
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .annealer import AnnealConfig, SolutionRecord
from .core import (CORNER_EDGES, Block, ConstraintSet, Floorplan, Net,
                   Problem, Rect, Terminal, validate_problem)
from .cost import CostReport, CostWeights, bounding_box, boundary_violations

SOFT_AR_MIN = 1.0 / 3.0
SOFT_AR_MAX = 3.0


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class BookshelfBundle:
    blocks: str
    nets: str
    pl: str


def _data_lines(path):
    """Yield (lineno, line) skipping blanks, comments and format headers."""
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            first = line.split()[0]
            if first in ("UCSC", "UCLA") and "1.0" in line:
                continue
            yield lineno, line


_HEADER_RE = re.compile(r"^(\w+)\s*:\s*(\d+)$")
_VERTEX_RE = re.compile(r"\(([^)]*)\)")


def parse_blocks_file(path):
    """Parse a .blocks file into (block specs, terminal names, declared counts).

    Soft entries carry an area plus aspect-ratio bounds; hard rectilinear
    entries carry their four corner vertices (area and fixed ratio come
    from the bounding box).
    """
    specs = []
    terminals = []
    declared = {}
    for lineno, line in _data_lines(path):
        m = _HEADER_RE.match(line)
        if m:
            declared[m.group(1)] = int(m.group(2))
            continue
        tokens = line.split()
        name = tokens[0]
        kind = tokens[1].lower() if len(tokens) > 1 else ""
        if kind == "terminal":
            terminals.append(name)
        elif kind == "softrectangular":
            if len(tokens) != 5:
                raise ParseError(f"{path}:{lineno}: expected "
                                 f"'name softrectangular area armin armax'")
            try:
                area, ar_min, ar_max = (float(t) for t in tokens[2:5])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: bad number in {line!r}") from None
            specs.append((name, area, ar_min, ar_max, True))
        elif kind == "hardrectilinear":
            pts = _VERTEX_RE.findall(line)
            if len(pts) < 3:
                raise ParseError(f"{path}:{lineno}: hardrectilinear entry "
                                 f"needs vertex list")
            try:
                coords = [tuple(float(c) for c in p.split(",")) for p in pts]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: bad vertex in {line!r}") from None
            xs = [c[0] for c in coords]
            ys = [c[1] for c in coords]
            w = max(xs) - min(xs)
            h = max(ys) - min(ys)
            if w <= 0 or h <= 0:
                raise ParseError(f"{path}:{lineno}: degenerate block outline")
            specs.append((name, w * h, w / h, w / h, False))
        else:
            raise ParseError(f"{path}:{lineno}: unrecognized entry {line!r}")

    n_blocks = len(specs)
    declared_blocks = (declared.get("NumSoftRectangularBlocks", 0)
                       + declared.get("NumHardRectilinearBlocks", 0)
                       + declared.get("NumBlocks", 0))
    if declared_blocks and declared_blocks != n_blocks:
        raise ParseError(f"{path}: header declares {declared_blocks} blocks, "
                         f"found {n_blocks}")
    if "NumTerminals" in declared and declared["NumTerminals"] != len(terminals):
        raise ParseError(f"{path}: header declares {declared['NumTerminals']} "
                         f"terminals, found {len(terminals)}")
    return specs, terminals, declared


def parse_pl_file(path):
    """Parse a .pl file into name -> (x, y)."""
    positions = {}
    for lineno, line in _data_lines(path):
        if _HEADER_RE.match(line):
            continue
        tokens = line.split()
        if len(tokens) < 3:
            raise ParseError(f"{path}:{lineno}: expected 'name x y'")
        try:
            positions[tokens[0]] = (float(tokens[1]), float(tokens[2]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad coordinate in {line!r}") from None
    return positions


def parse_nets_file(path):
    """Parse a .nets file into a list of endpoint-name lists."""
    nets = []
    expect = 0
    declared = {}
    for lineno, line in _data_lines(path):
        if line.startswith("NetDegree"):
            parts = line.replace(":", " ").split()
            if len(parts) < 2 or not parts[1].isdigit():
                raise ParseError(f"{path}:{lineno}: bad NetDegree line {line!r}")
            expect = int(parts[1])
            nets.append([])
            continue
        m = _HEADER_RE.match(line)
        if m:
            declared[m.group(1)] = int(m.group(2))
            continue
        if expect <= 0:
            raise ParseError(f"{path}:{lineno}: endpoint outside a net: {line!r}")
        nets[-1].append(line.split()[0])
        expect -= 1
    if expect:
        raise ParseError(f"{path}: last net is {expect} endpoint(s) short")
    if "NumNets" in declared and declared["NumNets"] != len(nets):
        raise ParseError(f"{path}: header declares {declared['NumNets']} nets, "
                         f"found {len(nets)}")
    n_pins = sum(len(n) for n in nets)
    if "NumPins" in declared and declared["NumPins"] != n_pins:
        raise ParseError(f"{path}: header declares {declared['NumPins']} pins, "
                         f"found {n_pins}")
    return nets


def parse_bookshelf(bundle):
    """Parse a GSRC-style .blocks/.nets/.pl bundle into a Problem."""
    for path in (bundle.blocks, bundle.nets, bundle.pl):
        if not os.path.exists(path):
            raise ParseError(f"missing benchmark file: {path}")
    specs, term_names, _ = parse_blocks_file(bundle.blocks)
    positions = parse_pl_file(bundle.pl)

    blocks = []
    for i, (name, area, ar_min, ar_max, soft) in enumerate(specs):
        ar = min(max(1.0, ar_min), ar_max)
        blocks.append(Block(id=i, name=name, area=area, aspect_ratio=ar,
                            ar_min=ar_min, ar_max=ar_max, is_soft=soft))

    terminals = []
    for name in term_names:
        if name not in positions:
            raise ParseError(f"{bundle.pl}: terminal {name} has no location")
        x, y = positions[name]
        terminals.append(Terminal(name=name, x=x, y=y))

    block_ids = {b.name: b.id for b in blocks}
    term_ids = {t.name: i for i, t in enumerate(terminals)}
    nets = []
    for endpoints in parse_nets_file(bundle.nets):
        bids, tids = set(), set()
        for name in endpoints:
            if name in block_ids:
                bids.add(block_ids[name])
            elif name in term_ids:
                tids.add(term_ids[name])
            else:
                raise ParseError(f"{bundle.nets}: net endpoint {name!r} is not "
                                 f"a declared block or terminal")
        nets.append(Net(frozenset(bids), frozenset(tids)))
    return Problem(tuple(blocks), tuple(terminals), tuple(nets))


def soften_blocks(problem):
    """Widen every soft block's aspect-ratio bounds to [1/3, 3]."""
    blocks = []
    for b in problem.blocks:
        if b.is_soft:
            blocks.append(Block(id=b.id, name=b.name, area=b.area,
                                aspect_ratio=1.0, ar_min=SOFT_AR_MIN,
                                ar_max=SOFT_AR_MAX, is_soft=True,
                                instance_group=b.instance_group))
        else:
            blocks.append(b)
    return Problem(tuple(blocks), problem.terminals, problem.nets,
                   problem.constraints, problem.outline)


# -- constraints JSON -------------------------------------------------------

_CONSTRAINT_KEYS = {"boundary", "groups", "preplaced", "instance_groups", "outline"}


@dataclass(frozen=True)
class ConstraintsFile:
    constraints: ConstraintSet
    outline: tuple | None


def parse_constraints(path, problem):
    """Parse the constraints JSON against a problem's block names."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    unknown = set(doc) - _CONSTRAINT_KEYS
    if unknown:
        raise ParseError(f"{path}: unknown key(s): {', '.join(sorted(unknown))}")

    names = {b.name: b.id for b in problem.blocks}

    def block_id(name, where):
        if name not in names:
            raise ParseError(f"{path}: {where} references unknown block {name!r}")
        return names[name]

    boundary = {}
    for name, side in doc.get("boundary", {}).items():
        side = str(side).lower()
        if side not in ("left", "right", "top", "bottom", *CORNER_EDGES):
            raise ParseError(f"{path}: bad boundary side {side!r} for {name}")
        boundary[block_id(name, "boundary")] = side

    groups = []
    for i, g in enumerate(doc.get("groups", [])):
        groups.append(frozenset(block_id(n, f"group {i}") for n in g))

    preplaced = {}
    for name, spec in doc.get("preplaced", {}).items():
        try:
            rect = (float(spec["x"]), float(spec["y"]),
                    float(spec["w"]), float(spec["h"]))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{path}: preplaced entry for {name} needs "
                             f"x, y, w, h") from None
        preplaced[block_id(name, "preplaced")] = rect

    instance_groups = []
    for i, g in enumerate(doc.get("instance_groups", [])):
        instance_groups.append(frozenset(block_id(n, f"instance group {i}") for n in g))

    outline = None
    if "outline" in doc and doc["outline"] is not None:
        try:
            outline = (float(doc["outline"]["w"]), float(doc["outline"]["h"]))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{path}: outline needs w and h") from None

    cs = ConstraintSet(boundary=boundary, groups=tuple(groups),
                       preplaced=preplaced, instance_groups=tuple(instance_groups))
    merged = problem.with_constraints(cs, outline)
    issues = [i for i in validate_problem(merged)
              if i.code in ("ConflictingConstraint", "GroupTooSmall",
                            "PreplacedOutsideOutline", "BadPreplacedDims")]
    if issues:
        raise ParseError(f"{path}: " + "; ".join(str(i) for i in issues))
    return ConstraintsFile(cs, outline)


def write_constraints(constraints, outline, problem, path):
    """Write the constraints JSON (inverse of parse_constraints)."""
    name_of = {b.id: b.name for b in problem.blocks}
    doc = {}
    if constraints.boundary:
        doc["boundary"] = {name_of[bid]: constraints.boundary[bid]
                           for bid in sorted(constraints.boundary)}
    if constraints.groups:
        doc["groups"] = [sorted(name_of[b] for b in g) for g in constraints.groups]
    if constraints.preplaced:
        doc["preplaced"] = {
            name_of[bid]: dict(zip("xywh", constraints.preplaced[bid]))
            for bid in sorted(constraints.preplaced)}
    if constraints.instance_groups:
        doc["instance_groups"] = [sorted(name_of[b] for b in g)
                                  for g in constraints.instance_groups]
    if outline is not None:
        doc["outline"] = {"w": outline[0], "h": outline[1]}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- solution records -------------------------------------------------------

def problem_to_dict(problem):
    return {
        "blocks": [
            {"name": b.name, "area": b.area, "ar": b.aspect_ratio,
             "ar_min": b.ar_min, "ar_max": b.ar_max, "soft": b.is_soft,
             "ig": b.instance_group}
            for b in problem.blocks],
        "terminals": [[t.name, t.x, t.y] for t in problem.terminals],
        "nets": [{"b": sorted(n.block_endpoints), "t": sorted(n.terminal_endpoints)}
                 for n in problem.nets],
        "constraints": {
            "boundary": {str(bid): side for bid, side
                         in sorted(problem.constraints.boundary.items())},
            "groups": [sorted(g) for g in problem.constraints.groups],
            "preplaced": {str(bid): list(rect) for bid, rect
                          in sorted(problem.constraints.preplaced.items())},
            "instance_groups": [sorted(g) for g in problem.constraints.instance_groups],
        },
        "outline": list(problem.outline) if problem.outline else None,
    }


def problem_from_dict(doc):
    blocks = tuple(
        Block(id=i, name=b["name"], area=b["area"], aspect_ratio=b["ar"],
              ar_min=b["ar_min"], ar_max=b["ar_max"], is_soft=b["soft"],
              instance_group=b.get("ig"))
        for i, b in enumerate(doc["blocks"]))
    terminals = tuple(Terminal(name=t[0], x=t[1], y=t[2]) for t in doc["terminals"])
    nets = tuple(Net(frozenset(n["b"]), frozenset(n["t"])) for n in doc["nets"])
    c = doc["constraints"]
    cs = ConstraintSet(
        boundary={int(k): v for k, v in c["boundary"].items()},
        groups=tuple(frozenset(g) for g in c["groups"]),
        preplaced={int(k): tuple(v) for k, v in c["preplaced"].items()},
        instance_groups=tuple(frozenset(g) for g in c["instance_groups"]),
    )
    outline = tuple(doc["outline"]) if doc.get("outline") else None
    return Problem(blocks, terminals, nets, cs, outline)


def config_to_dict(config):
    return {
        "steps": config.steps,
        "mode": config.mode,
        "weights": {k: getattr(config.weights, k)
                    for k in ("alpha", "beta", "gamma", "eta", "zeta", "theta", "mu")},
        "fixing_move_prob": config.fixing_move_prob,
        "ar_move_prob": config.ar_move_prob,
        "swap_vs_move_prob": config.swap_vs_move_prob,
        "left_vs_right_prob": config.left_vs_right_prob,
        "cooling_ratio": config.cooling_ratio,
        "moves_per_temperature": config.moves_per_temperature,
        "initial_acceptance_target": config.initial_acceptance_target,
        "hard_blocks": config.hard_blocks,
    }


def config_from_dict(doc):
    doc = dict(doc)
    doc["weights"] = CostWeights(**doc["weights"])
    return AnnealConfig(**doc)


def report_to_dict(report):
    return {
        "hpwl": report.hpwl,
        "bbox_area": report.bbox_area,
        "outline_cost": report.outline_cost,
        "grouping_cost": report.grouping_cost,
        "boundary_violation_count": report.boundary_violation_count,
        "preplaced_deviation": report.preplaced_deviation,
        "overlap_area": report.overlap_area,
        "total": report.total,
        "legal": report.legal,
        "violating_block_ids": list(report.violating_block_ids),
        "outline_overflow": report.outline_overflow,
        "group_clusters": list(report.group_clusters),
    }


def report_from_dict(doc):
    return CostReport(**doc)


def record_to_dict(record):
    doc = {
        "seed": record.seed,
        "steps": record.steps,
        "config": config_to_dict(record.config),
        "error": record.error,
    }
    if record.error is None:
        doc["report"] = report_to_dict(record.report)
        doc["placements"] = [[r.x, r.y, r.w, r.h] for r in record.floorplan.rects]
        if record.final_floorplan is not None:
            doc["final_report"] = report_to_dict(record.final_report)
            doc["final_placements"] = [[r.x, r.y, r.w, r.h]
                                       for r in record.final_floorplan.rects]
        doc["problem"] = problem_to_dict(record.floorplan.problem)
    return doc


def _record_from_dict(doc, problem_cache):
    if doc.get("error") is not None:
        return SolutionRecord(seed=doc["seed"], config=config_from_dict(doc["config"]),
                              floorplan=None, report=None, steps=doc["steps"],
                              error=doc["error"])
    key = json.dumps(doc["problem"], sort_keys=True)
    problem = problem_cache.get(key)
    if problem is None:
        problem = problem_from_dict(doc["problem"])
        problem_cache[key] = problem
    fp = Floorplan([Rect(*p) for p in doc["placements"]], problem)
    final_fp = None
    final_report = None
    if "final_placements" in doc:
        final_fp = Floorplan([Rect(*p) for p in doc["final_placements"]], problem)
        final_report = report_from_dict(doc["final_report"])
    return SolutionRecord(
        seed=doc["seed"],
        config=config_from_dict(doc["config"]),
        floorplan=fp,
        report=report_from_dict(doc["report"]),
        steps=doc["steps"],
        final_floorplan=final_fp,
        final_report=final_report,
    )


def write_records(records, path):
    """Write one JSON document per line; read_records is the exact inverse
    (up to the ephemeral wall time)."""
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(record_to_dict(rec), separators=(",", ":")))
            fh.write("\n")


def read_records(path):
    records = []
    cache = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
                records.append(_record_from_dict(doc, cache))
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise ParseError(f"{path}:{lineno}: corrupt record ({e})") from None
    return records


# -- SVG output -------------------------------------------------------------

_GROUP_PATTERNS = ("dots", "crosshatch", "diag", "rings", "horiz")


def _fmt(v):
    return f"{v:.6f}"


def _pattern_defs(cell=8.0):
    return f"""  <defs>
    <pattern id="dots" width="{cell}" height="{cell}" patternUnits="userSpaceOnUse">
      <circle cx="{cell / 2}" cy="{cell / 2}" r="{cell / 5}" fill="#555"/>
    </pattern>
    <pattern id="crosshatch" width="{cell}" height="{cell}" patternUnits="userSpaceOnUse">
      <path d="M0 0 L{cell} {cell} M{cell} 0 L0 {cell}" stroke="#555" stroke-width="1" fill="none"/>
    </pattern>
    <pattern id="diag" width="{cell}" height="{cell}" patternUnits="userSpaceOnUse">
      <path d="M0 {cell} L{cell} 0" stroke="#555" stroke-width="1.2" fill="none"/>
    </pattern>
    <pattern id="rings" width="{cell}" height="{cell}" patternUnits="userSpaceOnUse">
      <circle cx="{cell / 2}" cy="{cell / 2}" r="{cell / 3}" fill="none" stroke="#555" stroke-width="1"/>
    </pattern>
    <pattern id="horiz" width="{cell}" height="{cell}" patternUnits="userSpaceOnUse">
      <path d="M0 {cell / 2} L{cell} {cell / 2}" stroke="#555" stroke-width="1.2" fill="none"/>
    </pattern>
    <pattern id="anchor" width="6" height="6" patternUnits="userSpaceOnUse">
      <path d="M0 6 L6 0 M-1 1 L1 -1 M5 7 L7 5" stroke="#7a4a00" stroke-width="1" fill="none"/>
    </pattern>
  </defs>
"""


def render_svg(fp, problem, path, width_px=900.0):
    """Render a floorplan: labeled block rects, red-stroked boundary
    violators, one fill pattern per grouping constraint, hatched anchored
    blocks, and the fixed outline as a dashed frame."""
    rects = fp.rects
    cs = problem.constraints
    bbox = bounding_box(fp)
    violators = set(boundary_violations(fp, cs, bbox))
    group_of = {}
    for gi, g in enumerate(cs.groups):
        for bid in g:
            group_of[bid] = gi

    ext_w = max(bbox.x + bbox.w, (problem.outline or (0, 0))[0])
    ext_h = max(bbox.y + bbox.h, (problem.outline or (0, 0))[1])
    margin = 0.03 * max(ext_w, ext_h, 1.0)
    scale = width_px / (ext_w + 2 * margin)
    height_px = (ext_h + 2 * margin) * scale

    def sx(x):
        return (x + margin) * scale

    def sy(y):
        return height_px - (y + margin) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width_px)}" height="{_fmt(height_px)}" '
        f'viewBox="0 0 {_fmt(width_px)} {_fmt(height_px)}">\n',
        _pattern_defs(),
        f'  <rect x="0" y="0" width="{_fmt(width_px)}" height="{_fmt(height_px)}" '
        f'fill="white"/>\n',
    ]
    if problem.outline is not None:
        ow, oh = problem.outline
        parts.append(
            f'  <rect x="{_fmt(sx(0.0))}" y="{_fmt(sy(oh))}" '
            f'width="{_fmt(ow * scale)}" height="{_fmt(oh * scale)}" '
            f'fill="none" stroke="#333" stroke-width="1.5" '
            f'stroke-dasharray="8 5"/>\n')

    for bid, r in enumerate(rects):
        name = problem.blocks[bid].name
        fill = "#cfd8e8"
        if bid in group_of:
            fill = f"url(#{_GROUP_PATTERNS[group_of[bid] % len(_GROUP_PATTERNS)]})"
        elif bid in cs.preplaced:
            fill = "url(#anchor)"
        stroke = "red" if bid in violators else "#444"
        stroke_w = 2.5 if bid in violators else 0.8
        x, y = sx(r.x), sy(r.y + r.h)
        w, h = r.w * scale, r.h * scale
        parts.append(
            f'  <rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
            f'height="{_fmt(h)}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_fmt(stroke_w)}"/>\n')
        font = max(min(w / (0.66 * max(len(name), 1)), 0.6 * h), 1.0)
        parts.append(
            f'  <text x="{_fmt(x + w / 2)}" y="{_fmt(y + h / 2 + font * 0.35)}" '
            f'font-size="{_fmt(font)}" font-family="sans-serif" '
            f'text-anchor="middle" fill="#111">{escape(name)}</text>\n')
    parts.append("</svg>\n")
    with open(path, "w") as fh:
        fh.write("".join(parts))


def render_scatter(points, front, path, width_px=640.0, height_px=480.0):
    """Scatter of (hpwl, whitespace %) solution points: filled dots for
    legal, crosses for illegal, with the legal front joined by a line."""
    pad = 50.0
    xs = [p[0] for p in points] or [0.0, 1.0]
    ys = [p[1] for p in points] or [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 - x0 <= 0:
        x1 = x0 + 1.0
    if y1 - y0 <= 0:
        y1 = y0 + 1.0

    def px(v):
        return pad + (v - x0) / (x1 - x0) * (width_px - 2 * pad)

    def py(v):
        return height_px - pad - (v - y0) / (y1 - y0) * (height_px - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width_px)}" height="{_fmt(height_px)}">\n',
        f'  <rect x="0" y="0" width="{_fmt(width_px)}" height="{_fmt(height_px)}" fill="white"/>\n',
        f'  <line x1="{_fmt(pad)}" y1="{_fmt(height_px - pad)}" x2="{_fmt(width_px - pad)}" '
        f'y2="{_fmt(height_px - pad)}" stroke="#222"/>\n',
        f'  <line x1="{_fmt(pad)}" y1="{_fmt(height_px - pad)}" x2="{_fmt(pad)}" '
        f'y2="{_fmt(pad)}" stroke="#222"/>\n',
        f'  <text x="{_fmt(width_px / 2)}" y="{_fmt(height_px - 12.0)}" font-size="13" '
        f'font-family="sans-serif" text-anchor="middle">wire-length</text>\n',
        f'  <text x="14" y="{_fmt(height_px / 2)}" font-size="13" font-family="sans-serif" '
        f'text-anchor="middle" transform="rotate(-90 14 {_fmt(height_px / 2)})">'
        f'whitespace %</text>\n',
    ]
    if front:
        d = " ".join(f"{'M' if i == 0 else 'L'}{_fmt(px(h))} {_fmt(py(w))}"
                     for i, (h, w) in enumerate(front))
        parts.append(f'  <path d="{d}" fill="none" stroke="#2b6cb0" stroke-width="1.5"/>\n')
    for h, w, legal in points:
        if legal:
            parts.append(f'  <circle cx="{_fmt(px(h))}" cy="{_fmt(py(w))}" r="4" '
                         f'fill="#2b6cb0" fill-opacity="0.8"/>\n')
        else:
            x, y = px(h), py(w)
            parts.append(f'  <path d="M{_fmt(x - 4)} {_fmt(y - 4)} L{_fmt(x + 4)} {_fmt(y + 4)} '
                         f'M{_fmt(x - 4)} {_fmt(y + 4)} L{_fmt(x + 4)} {_fmt(y - 4)}" '
                         f'stroke="#c53030" stroke-width="1.5"/>\n')
    parts.append("</svg>\n")
    with open(path, "w") as fh:
        fh.write("".join(parts))
