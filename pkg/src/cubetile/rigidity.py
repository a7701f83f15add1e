"""Rigidity certificates, coverage, roughness and twin-pair witnesses.

Coordinates are indexed from 0 throughout (a support ``{0}`` means the first
coordinate).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

from .errors import AlreadyMember, Inconsistent, NotCovered, UsageError
from .geometry import Box, FaceSet, Point, as_point, erode_boxes, overlap_volume
from .packing import CubeSystem, neighbors, unfold

Origins = Union[CubeSystem, Iterable[Sequence]]


def _system(origins: Origins, dim: int | None = None) -> CubeSystem:
    if isinstance(origins, CubeSystem):
        return origins
    return CubeSystem.finite(origins, dim)


def flipped_coords(t: Sequence[Fraction], t2: Sequence[Fraction]) -> frozenset | None:
    """``{i : |t_i - t2_i| = 1}`` if ``t - t2`` lies in ``{-1,0,1}^d``, else ``None``."""
    flips = set()
    for i, (a, b) in enumerate(zip(t, t2)):
        diff = a - b
        if diff in (1, -1):
            flips.add(i)
        elif diff != 0:
            return None
    return frozenset(flips)


@dataclass(frozen=True)
class WitnessPair:
    t: Point
    t_prime: Point
    flipped: frozenset

    def is_valid(self) -> bool:
        flips = flipped_coords(self.t, self.t_prime)
        return flips is not None and flips == self.flipped and len(flips) % 2 == 1


@dataclass(frozen=True)
class ParityCertificate:
    certified: bool
    counterexample: Optional[WitnessPair] = None

    @property
    def status(self) -> str:
        return "certified" if self.certified else "refuted"

    def __bool__(self):
        return self.certified


@lru_cache(maxsize=None)
def _odd_deltas(dim: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        delta
        for delta in itertools.product((-1, 0, 1), repeat=dim)
        if sum(1 for x in delta if x) % 2 == 1
    )


def parity_certificate(origins: Origins, dim: int | None = None) -> ParityCertificate:
    """Certify that no two origins differ by a ``{-1,0,1}`` vector with an odd number of ±1's.

    A certified packing has a rough, hence rigid, union.  For periodic systems
    the translate ``t + delta`` is looked up modulo the periods.
    """
    if not isinstance(origins, CubeSystem):
        origins = list(origins)
        if not origins:
            return ParityCertificate(True)
    sys = _system(origins, dim)
    for t in sorted(sys.origins):
        for delta in _odd_deltas(sys.dim):
            t2 = tuple(c + x for c, x in zip(t, delta))
            if sys.contains(t2):
                flips = frozenset(i for i, x in enumerate(delta) if x)
                return ParityCertificate(False, WitnessPair(t, t2, flips))
    return ParityCertificate(True)


def volume_identity(sys: CubeSystem, u: Sequence) -> Fraction:
    """Total volume of ``I+u`` covered by the packing: sum of pairwise overlaps."""
    u = as_point(u)
    return sum((overlap_volume(u, s) for s in neighbors(sys, u).origins), Fraction(0))


def is_covered(u: Sequence, sys: CubeSystem) -> bool:
    """``I+u ⊆ ⋃(I+S)``; for disjoint cubes this is exactly a covered volume of 1."""
    return volume_identity(sys, u) == 1


def find_covered_outsiders(sys: CubeSystem, window: Box) -> FaceSet:
    """Points ``u`` of ``window`` outside ``S`` whose unit cube is covered by the packing.

    An empty result means the union is rough as seen from ``window``.  Only
    cubes meeting the window padded by 1 take part, which is enough to decide
    every ``u`` in the window itself.
    """
    pad = window.expand(1)
    origins = unfold(sys, pad)
    boxes = [Box.unit(s) for s in origins]
    return erode_boxes(boxes, window, exclude=origins)


def _covered_neighbors(sys: CubeSystem, u: Point):
    if sys.contains(u):
        raise AlreadyMember(f"u = {list(map(str, u))} is an origin of the packing")
    nb = neighbors(sys, u)
    if sum((overlap_volume(u, s) for s in nb.origins), Fraction(0)) != 1:
        raise NotCovered(f"I+u is not covered for u = {list(map(str, u))}")
    return nb


def _anchor_key(member):
    s, support = member
    return (-len(support), s)


def twin_witness(sys: CubeSystem, u: Sequence, anchor: Sequence | None = None) -> WitnessPair:
    """A twin pair ``t, t'`` near a covered outsider ``u``.

    ``t`` is a neighbor of ``u`` whose support is maximal (largest, then
    lexicographically smallest unless ``anchor`` fixes it); ``t'`` is a
    neighbor with the same support such that ``t - t'`` is a ``{-1,0,1}``
    vector with an odd number of nonzero entries.
    """
    u = as_point(u)
    nb = _covered_neighbors(sys, u)
    if anchor is None:
        t, support = min(nb.members, key=_anchor_key)
    else:
        anchor = as_point(anchor)
        lookup = dict(nb.members)
        if anchor not in lookup:
            raise UsageError("anchor is not a neighbor of u")
        t, support = anchor, lookup[anchor]
        if any(support < other for _, other in nb.members):
            raise UsageError("anchor support is not maximal")
    for s, other in nb.members:
        if other != support or s == t:
            continue
        flips = flipped_coords(t, s)
        if flips is not None and len(flips) % 2 == 1:
            return WitnessPair(t, s, flips)
    raise Inconsistent("no odd twin for a maximal-support neighbor of a covered point")


@dataclass(frozen=True)
class IndexEntry:
    origin: Point
    projected: Point
    index: int
    full_support: bool


@dataclass(frozen=True)
class IndexDiagnostics:
    """Sign/index bookkeeping on a small cube ``B`` around the projected center.

    ``center`` and every ``projected`` point are offsets from ``u`` restricted
    to ``coords`` (the support of ``anchor``).  ``index_sum`` runs over the
    full-support entries, ``total_index`` over all of them; both are 0.
    """

    k: int
    coords: Tuple[int, ...]
    anchor: Point
    center: Point
    halfwidth: Fraction
    entries: Tuple[IndexEntry, ...]
    index_sum: int
    total_index: int


def _block_index(z: Sequence[Fraction], v: Sequence[Fraction]) -> int:
    sign = 1
    for zi, vi in zip(z, v):
        if zi == vi:
            sign = -sign  # only the upper half [v, v+gamma) is covered
        elif zi + 1 == vi:
            continue  # only the lower half
        else:
            return 0  # the whole factor: the two halves cancel
    return sign


def index_diagnostics(sys: CubeSystem, u: Sequence) -> IndexDiagnostics:
    u = as_point(u)
    nb = _covered_neighbors(sys, u)
    t, support = min(nb.members, key=_anchor_key)
    coords = tuple(sorted(support))
    rel_t = [t[i] - u[i] for i in coords]
    v = tuple(c + 1 if c < 0 else c for c in rel_t)

    rest = [j for j in range(sys.dim) if j not in support]
    in_t = []
    for s, s_support in nb.members:
        z = tuple(s[i] - u[i] for i in range(sys.dim))
        if any(z[j] > 0 for j in rest):
            continue
        proj = tuple(z[i] for i in coords)
        if all(zi <= vi <= zi + 1 for zi, vi in zip(proj, v)):
            in_t.append((s, proj, all(zi != 0 for zi in proj)))

    clearances = []
    for idx, vi in enumerate(v):
        bounds = {Fraction(0), Fraction(1)}
        for s in nb.origins:
            zi = s[coords[idx]] - u[coords[idx]]
            bounds.update((zi, zi + 1))
        clearances.extend(abs(vi - b) for b in bounds if b != vi)
    gamma = min(clearances) / 2

    entries = tuple(
        IndexEntry(s, proj, _block_index(proj, v), full) for s, proj, full in in_t
    )
    index_sum = sum(e.index for e in entries if e.full_support)
    total = sum(e.index for e in entries)
    return IndexDiagnostics(len(coords), coords, t, v, gamma, entries, index_sum, total)


@dataclass(frozen=True)
class PairingReport:
    """Positive (``above``) and negative (``below``) neighbor offsets per coordinate."""

    above: Tuple[Tuple[Fraction, ...], ...]
    below: Tuple[Tuple[Fraction, ...], ...]
    missing: Tuple[Tuple[int, Fraction], ...]


def pairing_check(sys: CubeSystem, u: Sequence) -> PairingReport:
    """Each negative offset ``b`` must come with a positive offset ``b + 1``."""
    u = as_point(u)
    origins = neighbors(sys, u).origins
    if sum((overlap_volume(u, s) for s in origins), Fraction(0)) != 1:
        raise NotCovered(f"I+u is not covered for u = {list(map(str, u))}")
    above, below, missing = [], [], []
    for i in range(sys.dim):
        offsets = {s[i] - u[i] for s in origins}
        pos = tuple(sorted(x for x in offsets if x > 0))
        neg = tuple(sorted(x for x in offsets if x < 0))
        above.append(pos)
        below.append(neg)
        missing.extend((i, b) for b in neg if b + 1 not in pos)
    return PairingReport(tuple(above), tuple(below), tuple(missing))
