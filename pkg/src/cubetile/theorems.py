"""Consequences for cube tilings: orthant witnesses, coset counts, basis vectors.

All statements are checked on torus-periodic tilings, where membership is
tested modulo the periods.  Coordinates are 0-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import HypothesisViolated, Inconsistent, NotMember, NotTiling, UsageError
from .geometry import Box, Point, as_point, format_point
from .packing import CubeSystem, unfold, validate_torus_tiling
from .rigidity import twin_witness


@dataclass(frozen=True)
class OrthantWitness:
    base: Point
    sign: Tuple[int, ...]
    J: Tuple[int, ...]
    target: Point

    def to_json(self) -> dict:
        return {
            "base": format_point(self.base),
            "sign": list(self.sign),
            "J": list(self.J),
            "target": format_point(self.target),
        }


def _require_tiling(sys: CubeSystem):
    if sys.periods is None:
        raise NotTiling("finite systems are packings, not tilings of R^d")
    check = validate_torus_tiling(sys)
    if not check.is_tiling:
        raise NotTiling(f"packing misses {check.deficit} cubes per period")


def _sign_vector(eps: Sequence[int], dim: int) -> Tuple[int, ...]:
    eps = tuple(int(e) for e in eps)
    if len(eps) != dim or any(e not in (1, -1) for e in eps):
        raise UsageError(f"sign vector must have {dim} entries from {{-1, 1}}")
    return eps


def _step(t: Point, eps: Sequence[int], J: Iterable[int]) -> Point:
    target = list(t)
    for i in J:
        target[i] += eps[i]
    return tuple(target)


def orthant_witness(sys: CubeSystem, t: Sequence, eps: Sequence[int]) -> OrthantWitness:
    """Odd ``J`` with ``t + sum_{i in J} eps_i e_i`` in the tiling.

    Candidates are tried by increasing ``|J|``, lexicographically within a size.
    """
    _require_tiling(sys)
    t = as_point(t)
    eps = _sign_vector(eps, sys.dim)
    if not sys.contains(t):
        raise NotMember(f"{format_point(t)} is not an origin of the tiling")
    for size in range(1, sys.dim + 1, 2):
        for J in itertools.combinations(range(sys.dim), size):
            target = _step(t, eps, J)
            if sys.contains(target):
                return OrthantWitness(t, eps, J, target)
    raise Inconsistent("a tiling without an orthant witness")


def orthant_witness_via_twin(sys: CubeSystem, t: Sequence, eps: Sequence[int]) -> OrthantWitness:
    """Same guarantee, obtained from the twin pair at ``u = t + eps/2``."""
    _require_tiling(sys)
    t = as_point(t)
    eps = _sign_vector(eps, sys.dim)
    if not sys.contains(t):
        raise NotMember(f"{format_point(t)} is not an origin of the tiling")
    u = tuple(c + Fraction(e, 2) for c, e in zip(t, eps))
    pair = twin_witness(sys, u, anchor=t)
    J = tuple(sorted(pair.flipped))
    target = _step(t, eps, J)
    if target != pair.t_prime:
        raise Inconsistent("twin partner does not lie in the requested orthant")
    return OrthantWitness(t, eps, J, target)


def coset_census(sys: CubeSystem, t: Sequence, window: Box) -> int:
    """Number of origins meeting ``window`` that differ from ``t`` by an integer vector."""
    t = as_point(t)
    if not sys.contains(t):
        raise NotMember(f"{format_point(t)} is not an origin")
    return sum(
        1 for s in unfold(sys, window) if all((a - b).denominator == 1 for a, b in zip(s, t))
    )


def nested_windows(sys: CubeSystem, steps: int) -> list[Box]:
    """``[0, j*p)`` for ``j = 1..steps`` (unit periods for finite systems)."""
    periods = sys.periods or (1,) * sys.dim
    return [Box((0,) * sys.dim, tuple(j * p for p in periods)) for j in range(1, steps + 1)]


@dataclass(frozen=True)
class SubgroupCheck:
    valid: bool
    condition: Optional[str] = None
    detail: Optional[str] = None

    def __bool__(self):
        return self.valid


def integer_members(sys: CubeSystem) -> list[Point]:
    return sorted(s for s in sys.origins if all(c.denominator == 1 for c in s))


def subgroup_check(sys: CubeSystem, k: Sequence[int], L: Iterable[int]) -> SubgroupCheck:
    """Check the hypotheses on ``G = S ∩ Z^d``, ``k`` and ``L``; report the first failure.

    ``G`` is read on the torus: closure under addition and negation is taken
    modulo the periods.
    """
    if sys.periods is None:
        raise UsageError("the subgroup reading needs a periodic system")
    d = sys.dim
    k = tuple(int(x) for x in k)
    L = tuple(sorted(set(int(x) for x in L)))
    if len(k) != d:
        raise UsageError(f"k must have {d} entries")
    if any(not 0 <= l < d for l in L):
        raise UsageError(f"L must be a subset of 0..{d - 1}")

    G = integer_members(sys)
    if not G:
        return SubgroupCheck(False, "subgroup", "G = S ∩ Z^d is empty")
    for g in G:
        neg = tuple(-c for c in g)
        if not sys.contains(neg):
            return SubgroupCheck(False, "subgroup", f"-{format_point(g)} is not in G")
    for g, h in itertools.combinations_with_replacement(G, 2):
        total = tuple(a + b for a, b in zip(g, h))
        if not sys.contains(total):
            return SubgroupCheck(
                False, "subgroup", f"{format_point(g)} + {format_point(h)} is not in G"
            )
    if len(L) < d - 2:
        return SubgroupCheck(False, "L", f"|L| = {len(L)} < d - 2 = {d - 2}")
    for i in range(d):
        if not sys.contains(_basis(d, i, k[i])):
            return SubgroupCheck(False, "(1)", f"k_{i} e_{i} = {k[i]} e_{i} is not in G")
    for l in L:
        for i in range(d):
            if i != l and math.gcd(k[i], k[l]) != 1:
                return SubgroupCheck(
                    False, "(2)", f"gcd(k_{i}, k_{l}) = gcd({k[i]}, {k[l]}) = {math.gcd(k[i], k[l])}"
                )
    return SubgroupCheck(True)


def _basis(d: int, i: int, scale: int = 1) -> Point:
    return tuple(Fraction(scale if j == i else 0) for j in range(d))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class BasisCertificate:
    """Certifies ``e_m`` in the group generated by ``s = sum_{J} e_i`` and the ``k_i e_i``."""

    J: Tuple[int, ...]
    m: int
    n: int
    x: int
    y: int
    k: Tuple[int, ...]

    def bezout_holds(self) -> bool:
        return self.x * self.n + self.y * self.k[self.m] == 1

    def combination(self) -> dict:
        """Integer coefficients on the generators ``"s"`` and ``("k", i)`` that yield ``e_m``."""
        coeffs = {"s": self.x * self.n, ("k", self.m): self.y}
        others = [i for i in self.J if i != self.m]
        for i in others:
            rest = math.prod(self.k[j] for j in others if j != i)
            coeffs[("k", i)] = -self.x * rest
        return coeffs

    def combined_vector(self) -> Tuple[int, ...]:
        d = len(self.k)
        vec = [0] * d
        for gen, c in self.combination().items():
            if gen == "s":
                for i in self.J:
                    vec[i] += c
            else:
                vec[gen[1]] += c * self.k[gen[1]]
        return tuple(vec)

    def verify(self) -> bool:
        target = tuple(1 if i == self.m else 0 for i in range(len(self.k)))
        return self.bezout_holds() and self.combined_vector() == target

    def to_json(self) -> dict:
        return {"J": list(self.J), "m": self.m, "n": self.n, "x": self.x, "y": self.y, "k": list(self.k)}


def bezout_certificate(J: Iterable[int], k: Sequence[int], L: Iterable[int]) -> BasisCertificate:
    J = tuple(sorted(set(J)))
    k = tuple(int(x) for x in k)
    if not J or len(J) % 2 == 0:
        raise UsageError("J must have odd cardinality")
    if len(J) == 1:
        return BasisCertificate(J, J[0], 1, 1, 0, k)
    choices = sorted(set(J) & set(L))
    if not choices:
        raise HypothesisViolated("J and L are disjoint")
    m = choices[0]
    n = math.prod(k[i] for i in J if i != m)
    g, x, y = xgcd(n, k[m])
    if g != 1:
        raise HypothesisViolated(f"gcd(n, k_m) = gcd({n}, {k[m]}) = {g}")
    return BasisCertificate(J, m, n, x, y, k)


def basis_vector_certificate(sys: CubeSystem, k: Sequence[int], L: Iterable[int]) -> BasisCertificate:
    """Constructive ``e_m ∈ G`` for a tiling meeting the subgroup hypotheses."""
    L = tuple(L)
    check = subgroup_check(sys, k, L)
    if not check.valid:
        raise HypothesisViolated(f"condition {check.condition} fails: {check.detail}")
    d = sys.dim
    zero = (Fraction(0),) * d
    witness = orthant_witness(sys, zero, (1,) * d)
    cert = bezout_certificate(witness.J, k, L)
    if not cert.verify():
        raise Inconsistent("Bezout certificate does not combine to e_m")

    m = cert.m
    for vec in (_basis(d, m, cert.n), _basis(d, m, cert.k[m]), _basis(d, m)):
        if not sys.contains(vec):
            raise Inconsistent(f"{format_point(as_point(vec))} should lie in G")
    return cert
