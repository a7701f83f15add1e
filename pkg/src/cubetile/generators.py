"""Instance generators and the brute-force coverage oracle."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Sequence

from .errors import SearchExhausted, UsageError
from .geometry import Box, as_point, to_rational
from .packing import CubeSystem, cubes_overlap, unfold


def lattice_tiling(d: int) -> CubeSystem:
    """``I + Z^d`` encoded on the torus with all periods 2."""
    if not 1 <= d <= 6:
        raise UsageError("lattice tilings are generated for 1 <= d <= 6")
    origins = [tuple(Fraction(c) for c in x) for x in itertools.product((0, 1), repeat=d)]
    return CubeSystem(d, tuple(origins), (2,) * d)


def shifted_column_tiling(d: int, shift=Fraction(1, 2)) -> CubeSystem:
    """Columns along coordinate 1; the column at ``x_0 = 1`` is raised by ``shift``."""
    shift = to_rational(shift)
    if d < 2:
        raise UsageError("column tilings need d >= 2")
    if not 0 <= shift < 1:
        raise UsageError("shift must satisfy 0 <= shift < 1")
    origins = []
    for x in itertools.product((0, 1), repeat=d):
        point = [Fraction(c) for c in x]
        point[1] += shift * x[0]
        origins.append(tuple(point))
    return CubeSystem(d, tuple(sorted(origins)), (2,) * d)


def random_torus_tiling(
    d: int,
    periods: Sequence[int],
    grid: int = 2,
    seed: int = 0,
    max_nodes: int = 200_000,
) -> CubeSystem:
    """A torus tiling with origins on the ``(1/grid) Z^d`` lattice, found by backtracking.

    The search always fills the first empty grid cell (in row-major order) and
    tries the ``grid^d`` cube positions covering it in a seeded random order.
    """
    periods = tuple(periods)
    if len(periods) != d or not 1 <= d <= 4:
        raise UsageError("need 1 <= d <= 4 and one period per coordinate")
    if any(p < 2 or p % 2 for p in periods):
        raise UsageError("periods must be even integers >= 2")
    if grid < 1:
        raise UsageError("grid must be a positive integer")

    rng = random.Random(seed)
    shape = tuple(p * grid for p in periods)
    total = math.prod(shape)
    strides = [math.prod(shape[i + 1:]) for i in range(d)]
    block = list(itertools.product(range(grid), repeat=d))

    def flat(cell):
        return sum(((c % n) * s) for c, n, s in zip(cell, shape, strides))

    def unflat(index):
        return tuple((index // s) % n for s, n in zip(strides, shape))

    filled = [False] * total
    placed: list[tuple] = []
    nodes = 0

    def search(pos: int) -> bool:
        nonlocal nodes
        while pos < total and filled[pos]:
            pos += 1
        if pos == total:
            return True
        cell = unflat(pos)
        candidates = [tuple((c - o) % n for c, o, n in zip(cell, off, shape)) for off in block]
        rng.shuffle(candidates)
        for origin in candidates:
            nodes += 1
            if nodes > max_nodes:
                raise SearchExhausted(f"node budget {max_nodes} exceeded")
            cells = [flat(tuple(o + b for o, b in zip(origin, off))) for off in block]
            if any(filled[c] for c in cells):
                continue
            for c in cells:
                filled[c] = True
            placed.append(origin)
            if search(pos + 1):
                return True
            placed.pop()
            for c in cells:
                filled[c] = False
        return False

    if not search(0):
        raise SearchExhausted("no tiling on this grid")
    origins = sorted(tuple(Fraction(c, grid) for c in o) for o in placed)
    return CubeSystem(d, tuple(origins), periods)


def random_finite_packing(d: int, count: int, grid: int, extent: int, seed: int) -> CubeSystem:
    """Up to ``count`` grid-aligned cubes with origins in ``[0, extent)^d``, rejection sampled."""
    rng = random.Random(seed)
    chosen: list = []
    for _ in range(count * 20):
        if len(chosen) >= count:
            break
        cand = tuple(Fraction(rng.randrange(extent * grid), grid) for _ in range(d))
        if all(not cubes_overlap(cand, s) for s in chosen):
            chosen.append(cand)
    return CubeSystem(d, tuple(sorted(chosen)), None)


def drop_cubes(sys: CubeSystem, count: int, seed: int) -> CubeSystem:
    rng = random.Random(seed)
    keep = list(sys.origins)
    for _ in range(min(count, len(keep) - 1)):
        keep.pop(rng.randrange(len(keep)))
    return sys.with_origins(keep)


def brute_force_covered(u: Sequence, sys: CubeSystem) -> bool:
    """Decide ``I+u ⊆ ⋃(I+S)`` by cutting ``I+u`` into cells at every cube boundary.

    A half-open cell lies inside a half-open cube iff its lower corner does,
    so only lower corners are tested.
    """
    u = as_point(u)
    cube = Box.unit(u)
    cubes = [Box.unit(s) for s in unfold(sys, cube)]
    cuts = []
    for i in range(sys.dim):
        lo, hi = u[i], u[i] + 1
        marks = {lo}
        for b in cubes:
            for x in (b.lower[i], b.upper[i]):
                if lo < x < hi:
                    marks.add(x)
        cuts.append(sorted(marks))
    for corner in itertools.product(*cuts):
        if not any(b.contains(corner) for b in cubes):
            return False
    return True
