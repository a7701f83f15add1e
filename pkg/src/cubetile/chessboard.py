"""Split a packing into two parts whose unions are both rough.

Origins are grouped by their fractional parts (differences in ``Z^d``); inside
a group, two origins get the same color when the number of coordinates with
an odd difference is even.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .errors import Inconsistent, OddPeriod
from .geometry import Point, format_point, frac_point
from .packing import CubeSystem, require_packing
from .rigidity import _system, parity_certificate


@dataclass(frozen=True)
class TranslationClass:
    representative: Point
    members: Tuple[Point, ...]
    colors: Tuple[int, ...]

    @property
    def splits(self) -> bool:
        return len(set(self.colors)) == 2

    def color_of(self, point: Point) -> int:
        return self.colors[self.members.index(point)]

    def color_map(self) -> Dict[Point, int]:
        return dict(zip(self.members, self.colors))

    def to_json(self) -> dict:
        return {
            "representative": format_point(self.representative),
            "splits": self.splits,
            "members": [
                {"origin": format_point(m), "color": c} for m, c in zip(self.members, self.colors)
            ],
        }


def parity_color(point: Sequence, reference: Sequence) -> int:
    """Parity of the number of coordinates where ``point - reference`` is odd."""
    odd = sum(1 for a, b in zip(point, reference) if (a - b) % 2 == 1)
    return odd % 2


def translation_classes(origins) -> list[TranslationClass]:
    sys = _system(origins)
    groups: Dict[Point, list] = {}
    for s in sys.origins:
        groups.setdefault(frac_point(s), []).append(s)
    classes = []
    for members in groups.values():
        members.sort()
        rep = members[0]
        colors = tuple(parity_color(m, rep) for m in members)
        classes.append(TranslationClass(rep, tuple(members), colors))
    classes.sort(key=lambda c: c.representative)
    return classes


@dataclass(frozen=True)
class Decomposition:
    S0: Tuple[Point, ...]
    S1: Tuple[Point, ...]
    classes: Tuple[TranslationClass, ...]
    periods: Optional[Tuple[int, ...]] = None

    def parts(self, dim: int) -> tuple[CubeSystem, CubeSystem]:
        return (
            CubeSystem(dim, self.S0, self.periods),
            CubeSystem(dim, self.S1, self.periods),
        )

    def to_json(self) -> dict:
        return {
            "periods": list(self.periods) if self.periods else None,
            "S0": [format_point(p) for p in self.S0],
            "S1": [format_point(p) for p in self.S1],
            "classes": [c.to_json() for c in self.classes],
        }


def chessboard_decompose(sys: CubeSystem, double_periods: bool = False) -> Decomposition:
    """Deterministic two-part split of a packing into rough parts.

    A splitting class sends its color-0 members (same color as the
    lexicographically smallest member) to ``S0``.  Non-splitting classes go
    alternately to ``S0`` and ``S1`` in sorted class order, starting with
    ``S0``.  Odd periods are rejected unless ``double_periods`` re-encodes the
    instance first, since parity of integer differences is only stable under
    even period shifts.
    """
    if sys.periods is not None and any(p % 2 for p in sys.periods):
        if not double_periods:
            raise OddPeriod(f"periods {list(sys.periods)} are not all even")
        sys = sys.doubled_periods()
    require_packing(sys)

    classes = translation_classes(sys)
    s0, s1 = [], []
    to_s0 = True
    for cls in classes:
        if cls.splits:
            for m, c in zip(cls.members, cls.colors):
                (s0 if c == 0 else s1).append(m)
        else:
            (s0 if to_s0 else s1).extend(cls.members)
            to_s0 = not to_s0
    result = Decomposition(tuple(sorted(s0)), tuple(sorted(s1)), tuple(classes), sys.periods)
    for part in result.parts(sys.dim):
        if not parity_certificate(part):
            raise Inconsistent("a chessboard part failed the parity certificate")
    return result
