"""Exact rational points, half-open boxes, box sets and unit-cube erosion.

Every coordinate is a :class:`fractions.Fraction`; nothing in here touches
floating point.
"""

from __future__ import annotations

import itertools
import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import ParseError, UsageError

Point = Tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    # Fraction.__str__ already prints lowest terms and drops a unit denominator
    return str(Fraction(q))


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError(f"not a rational coordinate: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise UsageError(f"not an exact rational coordinate: {value!r}")


def as_point(coords: Iterable) -> Point:
    return tuple(to_rational(c) for c in coords)


def format_point(p: Sequence[Fraction]) -> list:
    return [format_rational(c) for c in p]


def floor_point(p: Point) -> tuple:
    return tuple(c.numerator // c.denominator for c in p)


def frac_point(p: Point) -> Point:
    return tuple(c - (c.numerator // c.denominator) for c in p)


@dataclass(frozen=True)
class Box:
    """Half-open product of intervals ``[lower_i, upper_i)``."""

    lower: Point
    upper: Point

    def __post_init__(self):
        lower = as_point(self.lower)
        upper = as_point(self.upper)
        if len(lower) != len(upper):
            raise UsageError("box corners have different dimensions")
        if not lower:
            raise UsageError("boxes must have dimension at least 1")
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            raise UsageError(f"empty box {format_point(lower)} .. {format_point(upper)}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def unit(cls, origin: Iterable) -> Box:
        origin = as_point(origin)
        return cls(origin, tuple(c + 1 for c in origin))

    @property
    def dim(self) -> int:
        return len(self.lower)

    def volume(self) -> Fraction:
        vol = Fraction(1)
        for lo, hi in zip(self.lower, self.upper):
            vol *= hi - lo
        return vol

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(lo <= x < hi for lo, x, hi in zip(self.lower, point, self.upper))

    def expand(self, margin) -> Box:
        margin = to_rational(margin)
        return Box(
            tuple(c - margin for c in self.lower),
            tuple(c + margin for c in self.upper),
        )


def _check_dims(a: int, b: int):
    if a != b:
        raise UsageError(f"dimension mismatch: {a} vs {b}")


def box_intersect(a: Box, b: Box) -> Box | None:
    """Intersection of two boxes, or ``None`` when some factor collapses."""
    _check_dims(a.dim, b.dim)
    lower = tuple(max(x, y) for x, y in zip(a.lower, b.lower))
    upper = tuple(min(x, y) for x, y in zip(a.upper, b.upper))
    if any(lo >= hi for lo, hi in zip(lower, upper)):
        return None
    return Box(lower, upper)


def box_difference(a: Box, b: Box) -> list[Box]:
    """``a \\ b`` as at most ``2d`` disjoint boxes, split one coordinate at a time."""
    inter = box_intersect(a, b)
    if inter is None:
        return [a]
    pieces = []
    lower = list(a.lower)
    upper = list(a.upper)
    for i in range(a.dim):
        if lower[i] < inter.lower[i]:
            hi = list(upper)
            hi[i] = inter.lower[i]
            pieces.append(Box(tuple(lower), tuple(hi)))
        if inter.upper[i] < upper[i]:
            lo = list(lower)
            lo[i] = inter.upper[i]
            pieces.append(Box(tuple(lo), tuple(upper)))
        lower[i] = inter.lower[i]
        upper[i] = inter.upper[i]
    return pieces


def _box_key(b: Box):
    return (b.lower, b.upper)


@dataclass(frozen=True)
class BoxSet:
    """A finite union of pairwise disjoint boxes in canonical order.

    Build instances through :meth:`from_boxes`, which accepts overlapping
    input and disjoints it.
    """

    dim: int
    parts: Tuple[Box, ...] = ()

    @classmethod
    def from_boxes(cls, dim: int, boxes: Iterable[Box]) -> BoxSet:
        if dim < 1:
            raise UsageError("dimension must be positive")
        disjoint: list[Box] = []
        for box in boxes:
            _check_dims(dim, box.dim)
            pieces = [box]
            for existing in disjoint:
                pieces = [p for piece in pieces for p in box_difference(piece, existing)]
                if not pieces:
                    break
            disjoint.extend(pieces)
        return cls(dim, tuple(sorted(disjoint, key=_box_key)))

    @classmethod
    def empty(cls, dim: int) -> BoxSet:
        return cls(dim, ())

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def volume(self) -> Fraction:
        return sum((p.volume() for p in self.parts), Fraction(0))

    def contains(self, point: Sequence[Fraction]) -> bool:
        return any(p.contains(point) for p in self.parts)

    def intersect(self, b: Box) -> BoxSet:
        _check_dims(self.dim, b.dim)
        parts = [c for c in (box_intersect(p, b) for p in self.parts) if c is not None]
        return BoxSet(self.dim, tuple(sorted(parts, key=_box_key)))

    def union(self, other: BoxSet) -> BoxSet:
        _check_dims(self.dim, other.dim)
        return BoxSet.from_boxes(self.dim, list(self.parts) + list(other.parts))


def boxset_subtract(a: BoxSet, b: Box) -> BoxSet:
    _check_dims(a.dim, b.dim)
    parts = [p for part in a.parts for p in box_difference(part, b)]
    return BoxSet(a.dim, tuple(sorted(parts, key=_box_key)))


def boxset_volume(a: BoxSet) -> Fraction:
    return a.volume()


def overlap_volume(u: Sequence[Fraction], s: Sequence[Fraction]) -> Fraction:
    """Volume of ``(I+u) ∩ (I+s)`` for the half-open unit cube ``I``."""
    _check_dims(len(u), len(s))
    vol = Fraction(1)
    for a, b in zip(u, s):
        side = 1 - abs(b - a)
        if side <= 0:
            return Fraction(0)
        vol *= side
    return vol


@dataclass(frozen=True)
class Interval:
    """One factor of a face: a closed, open or half-open real interval."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    @classmethod
    def point(cls, x: Fraction) -> Interval:
        return cls(x, x, True, True)

    @classmethod
    def open(cls, lo: Fraction, hi: Fraction) -> Interval:
        return cls(lo, hi, False, False)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Fraction) -> bool:
        above = self.lo <= x if self.lo_closed else self.lo < x
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    def representative(self) -> Fraction:
        if self.is_point:
            return self.lo
        if self.lo_closed:
            return self.lo
        return (self.lo + self.hi) / 2

    def __str__(self):
        if self.is_point:
            return f"{{{format_rational(self.lo)}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)},{format_rational(self.hi)}{right}"

    def to_json(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }


@dataclass(frozen=True)
class Face:
    factors: Tuple[Interval, ...]

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def is_point(self) -> bool:
        return all(f.is_point for f in self.factors)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(f.contains(x) for f, x in zip(self.factors, point))

    def representative(self) -> Point:
        return tuple(f.representative() for f in self.factors)

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class FaceSet:
    """Pairwise disjoint faces; the output type of erosion."""

    dim: int
    faces: Tuple[Face, ...] = ()

    def __iter__(self):
        return iter(self.faces)

    def __len__(self):
        return len(self.faces)

    def __bool__(self):
        return bool(self.faces)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return any(f.contains(point) for f in self.faces)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "faces": [[iv.to_json() for iv in f.factors] for f in self.faces],
        }


def _axis_faces(breaks: list[Fraction], lo: Fraction, hi: Fraction) -> list[Interval]:
    """Relatively open 1-d faces of the breakpoint grid lying in ``[lo, hi)``."""
    pts = sorted({b for b in breaks if lo < b < hi} | {lo, hi})
    faces = []
    for a, b in zip(pts, pts[1:]):
        faces.append(Interval.point(a))
        faces.append(Interval.open(a, b))
    return faces


def _cell_span(edges: list[Fraction], r: Fraction) -> tuple[int, int] | None:
    """Cells ``[edges[j], edges[j+1])`` meeting ``[r, r+1)`` as a half-open index range."""
    if not edges or r < edges[0] or r + 1 > edges[-1]:
        return None
    first = bisect_right(edges, r) - 1
    stop = bisect_left(edges, r + 1)
    return first, stop


def erode_boxes(
    boxes: Sequence[Box],
    window: Box,
    exclude: Iterable[Sequence[Fraction]] = (),
) -> FaceSet:
    """``{u in window : I+u ⊆ ⋃ boxes}`` minus the points in ``exclude``.

    The boxes may overlap.  Coverage is constant on every relatively open face
    of the grid whose breakpoints are the box endpoints and those endpoints
    shifted by -1, so one representative point per face decides the face.
    """
    d = window.dim
    boxes = list(boxes)
    for b in boxes:
        _check_dims(d, b.dim)
    if not boxes:
        return FaceSet(d, ())

    edges = [sorted({c for b in boxes for c in (b.lower[i], b.upper[i])}) for i in range(d)]
    axis_faces = []
    for i in range(d):
        breaks = edges[i] + [e - 1 for e in edges[i]]
        axis_faces.append(_axis_faces(breaks, window.lower[i], window.upper[i]))

    occupied = np.zeros(tuple(len(e) - 1 for e in edges), dtype=np.int64)
    for b in boxes:
        idx = tuple(
            slice(bisect_left(edges[i], b.lower[i]), bisect_left(edges[i], b.upper[i]))
            for i in range(d)
        )
        occupied[idx] = 1
    prefix = np.zeros(tuple(n + 1 for n in occupied.shape), dtype=np.int64)
    inner = occupied
    for axis in range(d):
        inner = np.cumsum(inner, axis=axis)
    prefix[tuple(slice(1, None) for _ in range(d))] = inner

    starts, stops, valid = [], [], []
    for i in range(d):
        spans = [_cell_span(edges[i], f.representative()) for f in axis_faces[i]]
        valid.append(np.array([s is not None for s in spans], dtype=bool))
        starts.append(np.array([s[0] if s else 0 for s in spans], dtype=np.int64))
        stops.append(np.array([s[1] if s else 0 for s in spans], dtype=np.int64))

    # inclusion-exclusion over the 2^d corners of each query block
    total = np.zeros(tuple(len(f) for f in axis_faces), dtype=np.int64)
    for corner in itertools.product((0, 1), repeat=d):
        sign = -1 if (d - sum(corner)) % 2 else 1
        index = np.ix_(*[stops[i] if c else starts[i] for i, c in enumerate(corner)])
        total += sign * prefix[index]
    expected = np.ones_like(total)
    ok = np.ones_like(total, dtype=bool)
    for i in range(d):
        shape = [1] * d
        shape[i] = -1
        expected = expected * (stops[i] - starts[i]).reshape(shape)
        ok &= valid[i].reshape(shape)
    covered = ok & (total == expected)

    position = [{f.lo: j for j, f in enumerate(faces) if f.is_point} for faces in axis_faces]
    for p in exclude:
        p = as_point(p)
        try:
            cell = tuple(position[i][p[i]] for i in range(d))
        except KeyError:
            continue
        covered[cell] = False

    return FaceSet(d, _merge_cells(np.argwhere(covered), axis_faces))


def _merge_cells(cells, axis_faces) -> Tuple[Face, ...]:
    """Greedily merge adjacent grid faces into larger products of intervals."""
    d = len(axis_faces)
    blocks = [tuple((int(j), int(j)) for j in cell) for cell in cells]
    for axis in reversed(range(d)):
        groups: dict = {}
        for blk in blocks:
            key = blk[:axis] + blk[axis + 1:]
            groups.setdefault(key, []).append(blk[axis])
        merged = []
        for key, spans in groups.items():
            spans.sort()
            run_lo, run_hi = spans[0]
            for lo, hi in spans[1:]:
                if lo == run_hi + 1:
                    run_hi = hi
                    continue
                merged.append(key[:axis] + ((run_lo, run_hi),) + key[axis:])
                run_lo, run_hi = lo, hi
            merged.append(key[:axis] + ((run_lo, run_hi),) + key[axis:])
        blocks = merged

    faces = []
    for blk in sorted(blocks):
        factors = []
        for axis, (a, b) in enumerate(blk):
            first = axis_faces[axis][a]
            last = axis_faces[axis][b]
            factors.append(Interval(first.lo, last.hi, first.lo_closed, last.hi_closed))
        faces.append(Face(tuple(factors)))
    return tuple(faces)


def erode_by_unit_cube(a: BoxSet, window: Box) -> FaceSet:
    """All ``u`` in the half-open ``window`` with ``I+u ⊆ a``."""
    _check_dims(a.dim, window.dim)
    return erode_boxes(a.parts, window)
