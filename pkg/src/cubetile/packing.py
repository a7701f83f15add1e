"""Cube systems: finite packings and torus-periodic packings/tilings.

A :class:`CubeSystem` holds the origins ``S`` of the cubes ``I+s``.  With
``periods`` set it describes the periodic set ``S0 + (p_1 Z x ... x p_d Z)``,
and ``origins`` is the fundamental-domain representative ``S0`` with
``0 <= s_i < p_i``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

from .errors import ParseError, UsageError
from .geometry import Box, Point, as_point, floor_point, format_point, parse_rational


@dataclass(frozen=True)
class CubeSystem:
    dim: int
    origins: Tuple[Point, ...]
    periods: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise UsageError("dimension must be a positive integer")
        origins = tuple(as_point(o) for o in self.origins)
        for o in origins:
            if len(o) != self.dim:
                raise UsageError(f"origin {format_point(o)} does not have dimension {self.dim}")
        if len(set(origins)) != len(origins):
            raise UsageError("origins must be pairwise distinct")
        periods = self.periods
        if periods is not None:
            periods = tuple(periods)
            if len(periods) != self.dim:
                raise UsageError("need one period per coordinate")
            for p in periods:
                if not isinstance(p, int) or isinstance(p, bool) or p < 2:
                    raise UsageError(f"periods must be integers >= 2, got {p!r}")
            for o in origins:
                if not all(0 <= c < p for c, p in zip(o, periods)):
                    raise UsageError(
                        f"origin {format_point(o)} lies outside the fundamental domain"
                    )
        object.__setattr__(self, "origins", origins)
        object.__setattr__(self, "periods", periods)

    @classmethod
    def finite(cls, origins: Iterable, dim: int | None = None) -> CubeSystem:
        origins = [as_point(o) for o in origins]
        if dim is None:
            if not origins:
                raise UsageError("cannot infer the dimension of an empty system")
            dim = len(origins[0])
        return cls(dim, tuple(origins), None)

    @classmethod
    def torus(cls, origins: Iterable, periods: Sequence[int]) -> CubeSystem:
        periods = tuple(periods)
        return cls(len(periods), tuple(as_point(o) for o in origins), periods)

    @property
    def is_periodic(self) -> bool:
        return self.periods is not None

    def __len__(self):
        return len(self.origins)

    def reduce(self, point: Sequence[Fraction]) -> Point:
        """Representative of ``point`` in the fundamental domain (identity if finite)."""
        point = as_point(point)
        if self.periods is None:
            return point
        return tuple(c % p for c, p in zip(point, self.periods))

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.origins)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return self.reduce(point) in self._members

    @cached_property
    def _buckets(self) -> dict:
        buckets: dict = {}
        for o in self.origins:
            buckets.setdefault(floor_point(o), []).append(o)
        return buckets

    def with_origins(self, origins: Iterable) -> CubeSystem:
        return CubeSystem(self.dim, tuple(as_point(o) for o in origins), self.periods)

    def translated(self, offset: Sequence[Fraction]) -> CubeSystem:
        offset = as_point(offset)
        moved = [tuple(c + o for c, o in zip(s, offset)) for s in self.origins]
        if self.periods is not None:
            moved = [self.reduce(s) for s in moved]
        return CubeSystem(self.dim, tuple(moved), self.periods)

    def doubled_periods(self) -> CubeSystem:
        """The same periodic set encoded with every period doubled."""
        if self.periods is None:
            raise UsageError("only periodic systems have periods to double")
        new_periods = tuple(2 * p for p in self.periods)
        origins = []
        for s in self.origins:
            for shift in itertools.product((0, 1), repeat=self.dim):
                origins.append(tuple(c + k * p for c, k, p in zip(s, shift, self.periods)))
        return CubeSystem(self.dim, tuple(sorted(origins)), new_periods)


def cubes_overlap(t: Point, t2: Point, periods: Sequence[int] | None = None) -> bool:
    """True iff the unit cubes at ``t`` and ``t2`` meet (on the torus if ``periods``)."""
    if periods is None:
        return all(abs(a - b) < 1 for a, b in zip(t, t2))
    for a, b, p in zip(t, t2, periods):
        if (a - b) % p >= 1 and (b - a) % p >= 1:
            return False
    return True


@dataclass(frozen=True)
class OverlapViolation:
    t: Point
    t_prime: Point


@dataclass(frozen=True)
class PackingCheck:
    valid: bool
    violation: Optional[OverlapViolation] = None

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class TilingCheck:
    is_tiling: bool
    deficit: int = 0

    def __bool__(self):
        return self.is_tiling


def _overlap_pairs_bruteforce(sys: CubeSystem):
    origins = sorted(sys.origins)
    for a, b in itertools.combinations(origins, 2):
        if cubes_overlap(a, b, sys.periods):
            yield a, b


def _overlap_pairs_hashed(sys: CubeSystem):
    buckets = sys._buckets
    periods = sys.periods
    for a in sorted(sys.origins):
        key = floor_point(a)
        seen = set()
        for delta in itertools.product((-1, 0, 1), repeat=sys.dim):
            nb = tuple(k + dk for k, dk in zip(key, delta))
            if periods is not None:
                nb = tuple(k % p for k, p in zip(nb, periods))
            if nb in seen:
                continue
            seen.add(nb)
            for b in buckets.get(nb, ()):
                if b > a and cubes_overlap(a, b, periods):
                    yield a, b


def validate_packing(sys: CubeSystem, method: str = "auto") -> PackingCheck:
    """Check that the cubes are pairwise disjoint; report one offending pair otherwise.

    ``method`` is ``"hash"`` (floor-bucketed), ``"brute"`` (all pairs) or
    ``"auto"``, which picks the bucketed search unless ``3^d`` buckets per
    cube would outnumber the cubes.
    """
    if method == "auto":
        method = "hash" if len(sys) > 3 ** sys.dim else "brute"
    if method == "hash":
        pairs = _overlap_pairs_hashed(sys)
    elif method == "brute":
        pairs = _overlap_pairs_bruteforce(sys)
    else:
        raise UsageError(f"unknown method {method!r}")
    found = min(pairs, default=None)
    if found is None:
        return PackingCheck(True)
    return PackingCheck(False, OverlapViolation(*found))


def require_packing(sys: CubeSystem):
    check = validate_packing(sys)
    if not check.valid:
        v = check.violation
        raise UsageError(
            f"not a packing: cubes at {format_point(v.t)} and {format_point(v.t_prime)} overlap"
        )


def validate_torus_tiling(sys: CubeSystem) -> TilingCheck:
    """On the torus a packing tiles exactly when it has ``prod(p_i)`` cubes."""
    if sys.periods is None:
        raise UsageError("a finite system never tiles R^d; tiling checks need periods")
    require_packing(sys)
    deficit = math.prod(sys.periods) - len(sys)
    return TilingCheck(deficit == 0, deficit)


def _translate_range(c: Fraction, p: int, lo: Fraction, hi: Fraction) -> range:
    """Integers m with ``lo < c + m p < hi``."""
    first = math.floor((lo - c) / p) + 1
    last = math.ceil((hi - c) / p) - 1
    return range(first, last + 1)


def unfold(sys: CubeSystem, window: Box) -> list[Point]:
    """All origins (periodic translates included) whose cube meets ``window``."""
    if window.dim != sys.dim:
        raise UsageError("window dimension does not match the system")
    if sys.periods is None:
        unit = [Box.unit(s) for s in sys.origins]
        return sorted(b.lower for b in unit if _meets(b, window))
    points = []
    for s in sys.origins:
        ranges = [
            _translate_range(c, p, lo - 1, hi)
            for c, p, lo, hi in zip(s, sys.periods, window.lower, window.upper)
        ]
        for ms in itertools.product(*ranges):
            points.append(tuple(c + m * p for c, m, p in zip(s, ms, sys.periods)))
    return sorted(points)


def _meets(a: Box, b: Box) -> bool:
    return all(x < w and y < v for x, v, y, w in zip(a.lower, a.upper, b.lower, b.upper))


@dataclass(frozen=True)
class NeighborSet:
    """Origins ``s`` whose cube meets ``I+u``, each with its support ``{i : s_i != u_i}``.

    Supports use 0-based coordinate indices.
    """

    center: Point
    members: Tuple[Tuple[Point, frozenset], ...] = field(default=())

    @property
    def origins(self) -> list[Point]:
        return [s for s, _ in self.members]

    def __len__(self):
        return len(self.members)


def neighbors(sys: CubeSystem, u: Sequence[Fraction]) -> NeighborSet:
    u = as_point(u)
    if len(u) != sys.dim:
        raise UsageError("query point has the wrong dimension")
    found = []
    if sys.periods is None:
        key = floor_point(u)
        for delta in itertools.product((-1, 0, 1), repeat=sys.dim):
            nb = tuple(k + dk for k, dk in zip(key, delta))
            for s in sys._buckets.get(nb, ()):
                if all(abs(a - b) < 1 for a, b in zip(s, u)):
                    found.append(s)
    else:
        for s0 in sys.origins:
            ranges = [
                _translate_range(c, p, x - 1, x + 1)
                for c, p, x in zip(s0, sys.periods, u)
            ]
            for ms in itertools.product(*ranges):
                found.append(tuple(c + m * p for c, m, p in zip(s0, ms, sys.periods)))
    members = tuple(
        (s, frozenset(i for i in range(sys.dim) if s[i] != u[i])) for s in sorted(found)
    )
    return NeighborSet(u, members)


# -- instance files ---------------------------------------------------------


def instance_to_dict(sys: CubeSystem) -> dict:
    return {
        "dim": sys.dim,
        "periods": list(sys.periods) if sys.periods is not None else None,
        "origins": [format_point(o) for o in sys.origins],
    }


def dumps_instance(sys: CubeSystem) -> str:
    """Canonical text form: one origin per line, rationals as ``"p/q"`` strings."""
    lines = [
        "{",
        f'  "dim": {sys.dim},',
        f'  "periods": {json.dumps(list(sys.periods)) if sys.periods else "null"},',
    ]
    if not sys.origins:
        lines.append('  "origins": []')
    else:
        lines.append('  "origins": [')
        rows = [f"    {json.dumps(format_point(o))}" for o in sys.origins]
        lines.append(",\n".join(rows))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> CubeSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return instance_from_dict(data)


def instance_from_dict(data) -> CubeSystem:
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    for key in ("dim", "origins"):
        if key not in data:
            raise ParseError("missing required field", field=key)
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("must be a positive integer", field="dim")
    periods = data.get("periods")
    if periods is not None:
        if not isinstance(periods, list) or len(periods) != dim:
            raise ParseError(f"must be null or a list of {dim} integers", field="periods")
        for j, p in enumerate(periods):
            if not isinstance(p, int) or isinstance(p, bool) or p < 2:
                raise ParseError("periods must be integers >= 2", field=f"periods[{j}]")
        periods = tuple(periods)
    raw = data["origins"]
    if not isinstance(raw, list):
        raise ParseError("must be a list of points", field="origins")
    origins = []
    for j, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"must list {dim} coordinates", field=f"origins[{j}]")
        point = []
        for i, c in enumerate(row):
            if not isinstance(c, str):
                raise ParseError("coordinates must be rational strings", field=f"origins[{j}][{i}]")
            try:
                point.append(parse_rational(c))
            except ParseError as exc:
                raise ParseError(str(exc), field=f"origins[{j}][{i}]") from None
        origins.append(tuple(point))
    try:
        return CubeSystem(dim, tuple(origins), periods)
    except UsageError as exc:
        raise ParseError(str(exc), field="origins") from None


def load_instance(path) -> CubeSystem:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def save_instance(sys: CubeSystem, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(sys))
