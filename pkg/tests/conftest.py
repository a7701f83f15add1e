from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest

from cubetile.packing import CubeSystem

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pt(*coords):
    return tuple(F(c) for c in coords)


def half(n):
    return F(n, 2)


def plane_overlap(a, b):
    """Overlap of two unit cubes in R^d, via interval intersection lengths."""
    return all(max(x, y) < min(x, y) + 1 for x, y in zip(a, b))


def torus_overlap_oracle(a, b, periods):
    """Overlap on the torus: some plane translate of ``b`` meets ``a``."""
    for m in itertools.product((-1, 0, 1), repeat=len(periods)):
        shifted = tuple(c + k * p for c, k, p in zip(b, m, periods))
        if plane_overlap(a, shifted):
            return True
    return False


def torus_cover_counts(sys: CubeSystem, grid: int):
    """How many cubes contain the lower corner of each ``1/grid`` cell of the torus."""
    counts = {}
    ranges = [range(p * grid) for p in sys.periods]
    for cell in itertools.product(*ranges):
        corner = tuple(F(c, grid) for c in cell)
        n = 0
        for s in sys.origins:
            if all((x - c) % p < 1 for x, c, p in zip(corner, s, sys.periods)):
                n += 1
        counts[cell] = n
    return counts


@pytest.fixture
def three_cubes():
    """Three cubes around the covered point 0: t, a cube with a zero coordinate, and v."""
    return CubeSystem.finite([pt(half(1), half(-1)), pt(half(-1), 0), pt(half(1), half(1))])


@pytest.fixture
def four_quarters():
    return CubeSystem.finite(
        [pt(half(a), half(b)) for a in (-1, 1) for b in (-1, 1)]
    )


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
