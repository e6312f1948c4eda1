"""Exact combinatorics of projective line arrangements.

Lines carry integer coefficients in canonical form (gcd one, first nonzero
coefficient positive).  Intersection points come from pairwise cross products
over Z, so the whole rank-2 incidence structure is computed exactly; every
downstream Hodge quantity consumes only the resulting weak combinatorial data
(the line count d and the census m_k of points of multiplicity k).

Arrangements whose natural defining forms are not rational (the Ceva
arrangement needs cube roots of unity) are provided as named builtins that
generate their incidence data directly; point counting evaluates their
defining polynomial as a product of integer binomials instead of linear
factors.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Sequence

from .errors import DuplicateLine, ParseError, ZeroForm
from .repring import HodgeTable, ReprClass

__all__ = [
    "ProjLine",
    "LineArrangement",
    "IntersectionPoint",
    "WeakCombData",
    "CombInvariants",
    "BUILTIN_NAMES",
    "parse_arrangement",
    "boolean_arrangement",
    "ceva_arrangement",
    "random_rational_arrangement",
    "intersection_data",
    "weak_comb_data",
    "comb_invariants",
    "charpoly_value",
    "epoly_V",
]


Triple = tuple[int, int, int]


def _canonical_triple(t: Sequence[int]) -> Triple:
    a, b, c = (int(v) for v in t)
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    if g == 0:
        raise ZeroForm("all three coefficients vanish")
    a, b, c = a // g, b // g, c // g
    for v in (a, b, c):
        if v > 0:
            return (a, b, c)
        if v < 0:
            return (-a, -b, -c)
    raise AssertionError("unreachable")


@dataclass(frozen=True, order=True)
class ProjLine:
    """The projective line a*x + b*y + c*z = 0, in canonical integer form."""

    a: int
    b: int
    c: int

    @classmethod
    def from_coeffs(cls, a: int, b: int, c: int) -> "ProjLine":
        return cls(*_canonical_triple((a, b, c)))

    @property
    def coeffs(self) -> Triple:
        return (self.a, self.b, self.c)

    def eval(self, x: int, y: int, z: int) -> int:
        return self.a * x + self.b * y + self.c * z


def _cross(u: Triple, v: Triple) -> Triple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True)
class LineArrangement:
    """A reduced arrangement: explicit rational lines, or a named builtin."""

    lines: tuple[ProjLine, ...] = ()
    builtin: str | None = None

    def __post_init__(self) -> None:
        if self.builtin is not None:
            if self.builtin not in BUILTIN_NAMES:
                raise ParseError(f"unknown builtin arrangement {self.builtin!r}")
            if self.lines:
                raise ParseError("builtin arrangements carry no explicit lines")
        elif len(self.lines) < 1:
            raise ParseError("an arrangement needs at least one line")

    @property
    def d(self) -> int:
        if self.builtin == "ceva":
            return _CEVA_D
        return len(self.lines)

    def describe(self) -> dict:
        if self.builtin:
            return {"kind": "builtin", "builtin": self.builtin, "d": self.d}
        return {"kind": "lines", "d": self.d, "lines": [list(l.coeffs) for l in self.lines]}


@dataclass(frozen=True)
class IntersectionPoint:
    """A rank-2 flat: canonical projective point plus incident line indices.

    Builtin arrangements may label non-rational points symbolically.
    """

    point: Triple | str
    incident: frozenset[int]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)


@dataclass(frozen=True)
class WeakCombData:
    """Line count d and the census of intersection-point multiplicities."""

    d: int
    m: tuple[tuple[int, int], ...]  # sorted (multiplicity, count), counts > 0

    def __post_init__(self) -> None:
        pairs = sum(count * math.comb(k, 2) for k, count in self.m)
        if pairs != math.comb(self.d, 2):
            raise ValueError(
                f"multiplicity census covers {pairs} line pairs, "
                f"expected C({self.d},2) = {math.comb(self.d, 2)}"
            )

    @classmethod
    def make(cls, d: int, census: Mapping[int, int]) -> "WeakCombData":
        m = tuple(sorted((int(k), int(n)) for k, n in census.items() if n))
        if any(k < 2 or n < 0 for k, n in m):
            raise ValueError("census keys must be >= 2 with nonnegative counts")
        return cls(d, m)

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.m)

    def n_points(self) -> int:
        return sum(n for _, n in self.m)

    def sum_mult_minus_one(self) -> int:
        return sum(n * (k - 1) for k, n in self.m)


@dataclass(frozen=True)
class CombInvariants:
    """Betti/Euler invariants of the complement and the Milnor fiber."""

    b1M: int
    b2M: int
    chiM: int
    chiF: int
    charpoly: tuple[int, int, int, int]  # monic cubic, descending coefficients


# ---------------------------------------------------------------------------
# the Ceva builtin: nine lines, twelve triple points

_CEVA_D = 9
_CEVA_CENSUS = {3: 12}


def _ceva_points() -> list[IntersectionPoint]:
    # Lines are indexed 0-2: x = w^a y, 3-5: x = w^b z, 6-8: y = w^c z,
    # with w a primitive cube root of unity.  Each coordinate vertex joins
    # one family; the nine mixed points are (1 : w^-a : w^-b).
    pts: list[IntersectionPoint] = [
        IntersectionPoint((0, 0, 1), frozenset({0, 1, 2})),
        IntersectionPoint((0, 1, 0), frozenset({3, 4, 5})),
        IntersectionPoint((1, 0, 0), frozenset({6, 7, 8})),
    ]
    for a in range(3):
        for b in range(3):
            incident = frozenset({a, 3 + b, 6 + (b - a) % 3})
            if a == 0 and b == 0:
                pts.append(IntersectionPoint((1, 1, 1), incident))
            else:
                label = f"(1 : w^{(-a) % 3} : w^{(-b) % 3})"
                pts.append(IntersectionPoint(label, incident))
    return pts


BUILTIN_NAMES = ("ceva",)


def ceva_arrangement() -> LineArrangement:
    return LineArrangement(builtin="ceva")


def boolean_arrangement() -> LineArrangement:
    return LineArrangement(tuple(ProjLine.from_coeffs(*c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))


# ---------------------------------------------------------------------------
# parsing


def parse_arrangement(text: str) -> LineArrangement:
    """Parse the arrangement file format.

    One form per line, three integers separated by whitespace; ``/`` also
    separates forms; lines starting with ``#`` are comments.  A single
    ``builtin: <name>`` directive selects a named arrangement instead.
    """
    forms: list[ProjLine] = []
    builtin: str | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("builtin:"):
            if builtin is not None or forms:
                raise ParseError("builtin directive must be the only content")
            builtin = line[len("builtin:"):].strip()
            continue
        for chunk in line.split("/"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if builtin is not None:
                raise ParseError("builtin directive must be the only content")
            parts = chunk.split()
            if len(parts) != 3:
                raise ParseError(f"expected three integers, got {chunk!r}")
            try:
                coeffs = tuple(int(p) for p in parts)
            except ValueError as exc:
                raise ParseError(f"non-integer coefficient in {chunk!r}") from exc
            new = ProjLine.from_coeffs(*coeffs)
            if new in forms:
                raise DuplicateLine(f"line {new.coeffs} appears twice after canonicalization")
            forms.append(new)
    if builtin is not None:
        return LineArrangement(builtin=builtin)
    if not forms:
        raise ParseError("no lines found")
    return LineArrangement(tuple(forms))


def random_rational_arrangement(rng: random.Random, d: int, coeff_bound: int = 4) -> LineArrangement:
    """Deterministically sample d distinct small-coefficient lines."""
    lines: list[ProjLine] = []
    while len(lines) < d:
        coeffs = tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(3))
        if coeffs == (0, 0, 0):
            continue
        line = ProjLine.from_coeffs(*coeffs)
        if line not in lines:
            lines.append(line)
    return LineArrangement(tuple(lines))


# ---------------------------------------------------------------------------
# incidence structure


def intersection_data(arr: LineArrangement) -> list[IntersectionPoint]:
    """All rank-2 flats; every unordered line pair lies in exactly one."""
    if arr.builtin == "ceva":
        return _ceva_points()
    lines = arr.lines
    incident: dict[Triple, set[int]] = {}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            pt = _canonical_triple(_cross(lines[i].coeffs, lines[j].coeffs))
            incident.setdefault(pt, set()).update((i, j))
    out = []
    for pt in sorted(incident):
        idx = incident[pt]
        assert all(lines[i].eval(*pt) == 0 for i in idx)
        out.append(IntersectionPoint(pt, frozenset(idx)))
    return out


def weak_comb_data(arr: LineArrangement) -> WeakCombData:
    census: dict[int, int] = {}
    for pt in intersection_data(arr):
        census[pt.multiplicity] = census.get(pt.multiplicity, 0) + 1
    return WeakCombData.make(arr.d, census)


# ---------------------------------------------------------------------------
# combinatorial invariants

# Betti numbers of the projective complement M from the rank-3 Moebius
# function: b1 = d - 1 and b2 = sum_p (m_p - 1) - (d - 1); chi(M) is
# cross-checked against chi(P^2) - chi(V) with chi(V) = 2d - sum_p (m_p - 1).


def comb_invariants(w: WeakCombData) -> CombInvariants:
    d = w.d
    s1 = w.sum_mult_minus_one()
    b1 = d - 1
    b2 = s1 - (d - 1)
    chi_m = 1 - b1 + b2
    assert chi_m == 3 - (2 * d - s1)
    charpoly = (1, -d, s1, -(1 - d + s1))
    return CombInvariants(b1M=b1, b2M=b2, chiM=chi_m, chiF=d * chi_m, charpoly=charpoly)


def charpoly_value(inv: CombInvariants, t: int) -> int:
    return reduce(lambda acc, c: acc * t + c, inv.charpoly)


def epoly_V(w: WeakCombData) -> HodgeTable:
    """Hodge-Deligne polynomial of the union of the d lines.

    Every line is a P^1 and every point of multiplicity m is shared by m of
    them, so E(V) = d*(uv + 1) - sum_p (m_p - 1); the group acts trivially.
    """
    d = w.d
    return HodgeTable(
        d,
        {
            (1, 1): ReprClass.trivial(d, w.d),
            (0, 0): ReprClass.trivial(d, w.d - w.sum_mult_minus_one()),
        },
        label="E(V)",
    )
