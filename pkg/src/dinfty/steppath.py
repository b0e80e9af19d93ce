"""Exact piecewise-constant paths [0,1] → X and [0,1]² → X into a finite space.

A partition 0 = q0 < ... < qm = 1 is encoded with doubled indices: slot 2i
is the point qi and slot 2i+1 the open interval (qi, qi+1).  A 1-path stores
one value per slot; a 2-path stores a (2m+1) × (2l+1) grid of values, one per
vertex, open edge and open cell of the product partition (first index t1).

Paths are canonicalized on construction (redundant breakpoints removed), so
dataclass equality is equality of functions.
"""
from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FaceMismatch, MalformedPartition
from .order import as_poset

ZERO, HALF, ONE = Fraction(0), Fraction(1, 2), Fraction(1)


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_partition(points):
    if len(points) < 2 or points[0] != 0 or points[-1] != 1:
        raise MalformedPartition(f"partition must run from 0 to 1, got {[str(p) for p in points]}")
    if any(a >= b for a, b in zip(points, points[1:])):
        raise MalformedPartition("breakpoints must be strictly increasing")


def _slot(points, t):
    """Doubled-index slot of the rational t in the partition."""
    t = _q(t)
    if not 0 <= t <= 1:
        raise ValueError(f"{t} outside [0,1]")
    i = bisect_left(points, t)
    if i < len(points) and points[i] == t:
        return 2 * i
    return 2 * (i - 1) + 1


def _sample(points, slot):
    """A representative rational in the given slot."""
    if slot % 2 == 0:
        return points[slot // 2]
    i = slot // 2
    return (points[i] + points[i + 1]) / 2


def _closure(slot, size):
    if slot % 2 == 0:
        return [slot]
    return [s for s in (slot - 1, slot, slot + 1) if 0 <= s < size]


def _stars(slot, size):
    """Slots whose closure contains ``slot`` (the slot and, for points, the adjacent intervals)."""
    if slot % 2 == 1:
        return [slot]
    return [s for s in (slot - 1, slot, slot + 1) if 0 <= s < size]


def _merge(points, values):
    """Drop interior breakpoints where point and both neighbours agree."""
    keep_p, keep_v = [points[0]], [values[0]]
    i = 1
    while i < len(points):
        interval = values[2 * i - 1]
        if i < len(points) - 1 and values[2 * i] == interval == values[2 * i + 1]:
            i += 1
            continue
        keep_v.append(interval)
        keep_p.append(points[i])
        keep_v.append(values[2 * i])
        i += 1
    return tuple(keep_p), tuple(keep_v)


@dataclass(frozen=True)
class StepPath1:
    space: object = field(compare=False, repr=False)
    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        pts = tuple(_q(p) for p in self.breakpoints)
        _check_partition(pts)
        if len(self.values) != 2 * len(pts) - 1:
            raise MalformedPartition(f"need {2 * len(pts) - 1} values, got {len(self.values)}")
        poset = as_poset(self.space)
        for v in self.values:
            poset.index(v)
        pts, vals = _merge(pts, tuple(self.values))
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "values", vals)

    def __call__(self, t):
        return self.values[_slot(self.breakpoints, t)]

    @property
    def start(self):
        return self.values[0]

    @property
    def end(self):
        return self.values[-1]

    def refine(self, points):
        points = tuple(sorted(set(map(_q, points)) | set(self.breakpoints)))
        return points, tuple(self(_sample(points, s)) for s in range(2 * len(points) - 1))

    def to_json(self):
        return {"dim": 1, "breakpoints": [str(p) for p in self.breakpoints], "values": list(self.values)}

    def __str__(self):
        parts = []
        for s, v in enumerate(self.values):
            i = s // 2
            if s % 2 == 0:
                parts.append(f"{self.breakpoints[i]}:{v}")
            else:
                parts.append(f"({self.breakpoints[i]},{self.breakpoints[i + 1]}):{v}")
        return " ".join(parts)


def constant_path(space, d):
    return StepPath1(space, (ZERO, ONE), (d, d, d))


def path_from_function(space, breakpoints, f):
    """Sample ``f`` at one point of every slot of the partition."""
    pts = tuple(map(_q, breakpoints))
    _check_partition(pts)
    return StepPath1(space, pts, tuple(f(_sample(pts, s)) for s in range(2 * len(pts) - 1)))


@dataclass(frozen=True)
class StepPath2:
    space: object = field(compare=False, repr=False)
    xs: tuple  # t1 breakpoints
    ys: tuple  # t2 breakpoints
    values: tuple  # values[s1][s2]

    def __post_init__(self):
        xs, ys = tuple(map(_q, self.xs)), tuple(map(_q, self.ys))
        _check_partition(xs)
        _check_partition(ys)
        vals = tuple(tuple(row) for row in self.values)
        if len(vals) != 2 * len(xs) - 1 or any(len(r) != 2 * len(ys) - 1 for r in vals):
            raise MalformedPartition("value grid does not match the partitions")
        poset = as_poset(self.space)
        for row in vals:
            for v in row:
                poset.index(v)
        xs, vals = _merge_axis(xs, vals)
        ys, cols = _merge_axis(ys, tuple(zip(*vals)))
        vals = tuple(zip(*cols))
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "values", vals)

    def __call__(self, t1, t2):
        return self.values[_slot(self.xs, t1)][_slot(self.ys, t2)]

    def refine(self, xs, ys):
        xs = tuple(sorted(set(map(_q, xs)) | set(self.xs)))
        ys = tuple(sorted(set(map(_q, ys)) | set(self.ys)))
        vals = tuple(tuple(self(_sample(xs, a), _sample(ys, b)) for b in range(2 * len(ys) - 1))
                     for a in range(2 * len(xs) - 1))
        return xs, ys, vals

    def to_json(self):
        return {"dim": 2, "xs": [str(p) for p in self.xs], "ys": [str(p) for p in self.ys],
                "values": [list(r) for r in self.values]}


def _merge_axis(points, rows):
    """Row-wise version of ``_merge``: drop a grid line when its row of
    values equals both neighbouring rows."""
    keep_p, keep_r = [points[0]], [rows[0]]
    for i in range(1, len(points)):
        if i < len(points) - 1 and rows[2 * i] == rows[2 * i - 1] == rows[2 * i + 1]:
            continue
        keep_r.append(rows[2 * i - 1])
        keep_p.append(points[i])
        keep_r.append(rows[2 * i])
    return tuple(keep_p), tuple(keep_r)


def path2_from_function(space, xs, ys, f):
    xs, ys = tuple(map(_q, xs)), tuple(map(_q, ys))
    _check_partition(xs)
    _check_partition(ys)
    vals = tuple(tuple(f(_sample(xs, a), _sample(ys, b)) for b in range(2 * len(ys) - 1))
                 for a in range(2 * len(xs) - 1))
    return StepPath2(space, xs, ys, vals)


def constant_path2(space, d):
    return StepPath2(space, (ZERO, ONE), (ZERO, ONE), ((d,) * 3,) * 3)


# ---------------------------------------------------------------- continuity

@dataclass(frozen=True)
class Continuity:
    ok: bool
    open: frozenset | None = None
    point: tuple | None = None  # representative coordinates of the offending face

    def __bool__(self):
        return self.ok


def check_continuity(path, space=None):
    """Preimage of every open must be open.

    On the cell decomposition a union of faces is open iff, with each face,
    it contains every face having that face in its closure.  The test runs
    literally over the enumerated opens of the space.
    """
    space = space if space is not None else path.space
    opens = space.opens
    if isinstance(path, StepPath1):
        n = len(path.values)
        for A in opens:
            for s in range(n):
                if path.values[s] in A:
                    for s2 in _stars(s, n):
                        if path.values[s2] not in A:
                            return Continuity(False, A, (_sample(path.breakpoints, s),))
        return Continuity(True)
    if isinstance(path, StepPath2):
        nx_, ny = len(path.values), len(path.values[0])
        for A in opens:
            for a in range(nx_):
                for b in range(ny):
                    if path.values[a][b] not in A:
                        continue
                    for a2 in _stars(a, nx_):
                        for b2 in _stars(b, ny):
                            if path.values[a2][b2] not in A:
                                return Continuity(False, A, (_sample(path.xs, a), _sample(path.ys, b)))
        return Continuity(True)
    raise TypeError(f"not a step path: {path!r}")


# ---------------------------------------------------------------- products

def reverse(p):
    """t ↦ p(1 - t)."""
    pts = tuple(ONE - x for x in reversed(p.breakpoints))
    return StepPath1(p.space, pts, tuple(reversed(p.values)))


def concat1(p, q):
    """p ∗ q: p on [0,1/2] at double speed, q on [1/2,1]."""
    if p.end != q.start:
        raise FaceMismatch(f"p ends at {p.end} but q starts at {q.start}", p.end, q.start)
    pts = tuple(x / 2 for x in p.breakpoints) + tuple((x + 1) / 2 for x in q.breakpoints[1:])
    return StepPath1(p.space, pts, p.values + q.values[1:])


def concat_many(paths):
    """r1 ∗ ... ∗ rn with segment i reparameterized onto [(i-1)/n, i/n]."""
    paths = list(paths)
    if not paths:
        raise ValueError("need at least one path")
    n = len(paths)
    pts, vals = [ZERO], [paths[0].start]
    for i, p in enumerate(paths):
        if p.start != vals[-1]:
            raise FaceMismatch(f"segment {i} starts at {p.start}, previous ends at {vals[-1]}")
        pts.extend((i + x) / n for x in p.breakpoints[1:])
        vals.extend(p.values[1:])
    return StepPath1(paths[0].space, tuple(pts), tuple(vals))


def restrict(path2, coordinate, value):
    """p[t_r = value] as a 1-path in the remaining coordinate."""
    if coordinate == 1:
        s = _slot(path2.xs, value)
        return StepPath1(path2.space, path2.ys, path2.values[s])
    if coordinate == 2:
        s = _slot(path2.ys, value)
        return StepPath1(path2.space, path2.xs, tuple(row[s] for row in path2.values))
    raise ValueError("coordinate must be 1 or 2")


def product_r(p, q, r):
    """∗1 halves t1 (needs p[t1=1] = q[t1=0]); ∗0 halves t2 slice-wise
    (needs p[t2=1] = q[t2=0])."""
    if r == 1:
        left, right = restrict(p, 1, ONE), restrict(q, 1, ZERO)
        if left != right:
            raise FaceMismatch("p[t1=1] differs from q[t1=0]", left, right)
        ys = tuple(sorted(set(p.ys) | set(q.ys)))
        pxs, _, pv = p.refine((), ys)
        qxs, _, qv = q.refine((), ys)
        xs = tuple(x / 2 for x in pxs) + tuple((x + 1) / 2 for x in qxs[1:])
        return StepPath2(p.space, xs, ys, pv + qv[1:])
    if r == 0:
        low, high = restrict(p, 2, ONE), restrict(q, 2, ZERO)
        if low != high:
            raise FaceMismatch("p[t2=1] differs from q[t2=0]", low, high)
        xs = tuple(sorted(set(p.xs) | set(q.xs)))
        _, pys, pv = p.refine(xs, ())
        _, qys, qv = q.refine(xs, ())
        ys = tuple(y / 2 for y in pys) + tuple((y + 1) / 2 for y in qys[1:])
        vals = tuple(prow + qrow[1:] for prow, qrow in zip(pv, qv))
        return StepPath2(p.space, xs, ys, vals)
    raise ValueError("r must be 0 or 1 for 2-paths")


# ---------------------------------------------------------------- faces & zigzags

@dataclass(frozen=True)
class Zigzag:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def check(self, space):
        poset = as_poset(space)
        return all(poset.le(a, b) or poset.le(b, a) for a, b in zip(self.points, self.points[1:]))


def to_zigzag(path):
    pts = [path.values[0]]
    for v in path.values[1:]:
        if v != pts[-1]:
            pts.append(v)
    return Zigzag(tuple(pts))


def base_points(path):
    """(a, b) with p[t_n = 0] = a and p[t_n = 1] = b, or None if the
    last-coordinate faces are not constant."""
    if isinstance(path, StepPath1):
        return path.start, path.end
    lo, hi = restrict(path, 2, ZERO), restrict(path, 2, ONE)
    if len(set(lo.values)) != 1 or len(set(hi.values)) != 1:
        return None
    return lo.values[0], hi.values[0]


def parallel(p, q):
    """Same base points and, for 2-paths, equal t1 = 0 and t1 = 1 faces."""
    if type(p) is not type(q):
        return False
    if base_points(p) is None or base_points(p) != base_points(q):
        return False
    if isinstance(p, StepPath2):
        return restrict(p, 1, ZERO) == restrict(q, 1, ZERO) and restrict(p, 1, ONE) == restrict(q, 1, ONE)
    return True


def homotopic(p, q, space=None):
    """=_h between step paths, decided on zigzags.

    1-paths: zigzag homotopy rel endpoints.  2-paths with matching base
    points: the t1 = 0 faces and the t1 = 1 faces must be homotopic; the
    filling is then certified only on cones (contractible spaces), else the
    verdict is None (unresolved).
    """
    from .homotopy import is_cone, zigzag_homotopic

    space = space if space is not None else p.space
    if isinstance(p, StepPath1):
        if (p.start, p.end) != (q.start, q.end):
            return False
        return zigzag_homotopic(to_zigzag(p), to_zigzag(q), space)
    bp, bq = base_points(p), base_points(q)
    if bp is None or bp != bq:
        return False
    faces = []
    for t in (ZERO, ONE):
        fp, fq = restrict(p, 1, t), restrict(q, 1, t)
        if (fp.start, fp.end) != (fq.start, fq.end):
            return False
        faces.append(zigzag_homotopic(to_zigzag(fp), to_zigzag(fq), space))
    if False in faces:
        return False
    if None in faces:
        return None
    return True if is_cone(space)[0] else None


# ---------------------------------------------------------------- I/O

def path_from_json(data, space):
    if isinstance(data, str):
        data = json.loads(data)
    if data["dim"] == 1:
        return StepPath1(space, tuple(map(Fraction, data["breakpoints"])), tuple(data["values"]))
    if data["dim"] == 2:
        return StepPath2(space, tuple(map(Fraction, data["xs"])), tuple(map(Fraction, data["ys"])),
                         tuple(tuple(r) for r in data["values"]))
    raise MalformedPartition(f"unsupported dimension {data['dim']}")


def path_svg(path, size=240, margin=30):
    """SVG of the square decomposition of a 2-path, one label per face."""
    def coord(t, axis):
        t = float(t)
        return margin + t * size if axis == 0 else margin + (1 - t) * size

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 2 * margin}" '
           f'height="{size + 2 * margin}" font-family="monospace" font-size="11">',
           f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" fill="none" stroke="black"/>']
    for x in path.xs[1:-1]:
        out.append(f'<line x1="{coord(x, 0)}" y1="{margin}" x2="{coord(x, 0)}" y2="{margin + size}" stroke="gray"/>')
    for y in path.ys[1:-1]:
        out.append(f'<line x1="{margin}" y1="{coord(y, 1)}" x2="{margin + size}" y2="{coord(y, 1)}" stroke="gray"/>')
    for a in range(len(path.values)):
        for b in range(len(path.values[0])):
            tx, ty = coord(_sample(path.xs, a), 0), coord(_sample(path.ys, b), 1)
            weight = "bold" if a % 2 and b % 2 else "normal"
            out.append(f'<text x="{tx:.1f}" y="{ty:.1f}" text-anchor="middle" '
                       f'font-weight="{weight}">{path.values[a][b]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
