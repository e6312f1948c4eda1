"""Twisted point counts over prime fields and Hodge extraction.

Only primes q = 1 (mod d) are used, so the d-th roots of unity live in F_q
and no extension-field arithmetic is ever needed.  Fix a generator g of
F_q^* and identify lam with g^((q-1)/d).  For the Milnor fiber F : Q = 1 the
fixed points of (scalar multiplication by lam^j) composed with Frobenius are
computed by substitution: if c is any solution of c^(q-1) = lam^j in an
extension, then y = c x identifies them with the rational points of
Q(y) = c^d, and the class of c^d in F_q^* / (F_q^*)^d is exactly g^j times
d-th powers (raise to the power (q-1)/d to see it).  Counting therefore
reduces to the class-partitioned census of Q over F_q^3, and the census in
turn reduces to one pass over the q^2 + q + 1 points of P^2(F_q): Q is
homogeneous of degree d, so along the punctured cone line over a projective
point with Q-value v != 0 the values sweep out the class of v, each hit the
same number of times.

Counts fitted across several primes by exact Lagrange interpolation give,
per twist, a candidate polynomial in q; when every remaining prime confirms
it, the coefficient-of-t^i traces decode to a virtual character and the
equivariant Hodge-Deligne polynomial with compact supports is diagonal with
E^{i,i} equal to that character.  A failed confirmation is reported as a
first-class NotPolynomial verdict with the witnessing prime, never an error:
weight-one cohomology genuinely destroys polynomial counting.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .arrangement import LineArrangement, WeakCombData, weak_comb_data
from .errors import BadPrime, DecodeError, NotEnoughPrimes, NotPolynomialCount
from .repring import EquivPoly, HodgeTable, decode_characters

__all__ = [
    "PrimeField",
    "CountTable",
    "FittedPoly",
    "good_primes",
    "count_classes",
    "brute_force_count",
    "twisted_counts",
    "complement_count",
    "count_tables",
    "fit_polynomials",
    "hodge_from_counts",
    "complement_crosscheck",
    "DEFAULT_PRIME_BOUND",
]

DEFAULT_PRIME_BOUND = 100_000
_THREADS_ENV = "MILNORHODGE_THREADS"
_PRIME_BOUND_ENV = "MILNORHODGE_PRIME_BOUND"


# ---------------------------------------------------------------------------
# small number theory


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % p == 0:
            return n == p
    f = 37
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    """A prime field together with its smallest primitive root."""

    p: int
    g: int

    @classmethod
    def make(cls, p: int) -> "PrimeField":
        if not _is_prime(p):
            raise BadPrime(f"{p} is not prime")
        if p == 2:
            return cls(2, 1)
        factors = _prime_factors(p - 1)
        g = 2
        while any(pow(g, (p - 1) // r, p) == 1 for r in factors):
            g += 1
        return cls(p, g)


@lru_cache(maxsize=64)
def _dlog_table(p: int, g: int) -> np.ndarray:
    """table[v] = discrete log of v base g, for v in 1..p-1."""
    table = np.zeros(p, dtype=np.int64)
    x = 1
    for i in range(p - 1):
        table[x] = i
        x = (x * g) % p
    return table


def _primes_at_least(start: int):
    n = max(start, 2)
    while True:
        if _is_prime(n):
            yield n
        n += 1


# ---------------------------------------------------------------------------
# reduction of the arrangement modulo q


def _normalize_mod(triple: Sequence[int], q: int) -> tuple[int, int, int] | None:
    t = tuple(v % q for v in triple)
    for i, v in enumerate(t):
        if v:
            inv = pow(v, q - 2, q)
            return tuple((w * inv) % q for w in t)  # type: ignore[return-value]
    return None


def _census_mod_q(lines: list[tuple[int, int, int]], q: int) -> dict[int, int]:
    """Multiplicity census of the pairwise intersections over F_q."""
    pts: dict[tuple[int, int, int], set[int]] = {}
    for i in range(len(lines)):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, len(lines)):
            a2, b2, c2 = lines[j]
            cross = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
            pt = _normalize_mod(cross, q)
            if pt is None:
                raise BadPrime(f"lines {i} and {j} coincide modulo {q}")
            pts.setdefault(pt, set()).update((i, j))
    census: dict[int, int] = {}
    for idx in pts.values():
        census[len(idx)] = census.get(len(idx), 0) + 1
    return census


def _lines_mod_q(arr: LineArrangement, q: int, field: PrimeField) -> list[tuple[int, int, int]]:
    if arr.builtin == "ceva":
        if (q - 1) % 3 != 0:
            raise BadPrime(f"{q} has no cube roots of unity")
        w = pow(field.g, (q - 1) // 3, q)
        lines = []
        for j in range(3):
            lines.append((1, (-pow(w, j, q)) % q, 0))
        for j in range(3):
            lines.append((1, 0, (-pow(w, j, q)) % q))
        for j in range(3):
            lines.append((0, 1, (-pow(w, j, q)) % q))
        return lines
    out = []
    for line in arr.lines:
        t = tuple(v % q for v in line.coeffs)
        if t == (0, 0, 0):
            raise BadPrime(f"a line vanishes modulo {q}")
        out.append(t)
    norm = {_normalize_mod(t, q) for t in out}
    if len(norm) != len(out):
        raise BadPrime(f"two lines coincide modulo {q}")
    return out


def _check_reduction(arr: LineArrangement, q: int, field: PrimeField, w: WeakCombData) -> None:
    census = _census_mod_q(_lines_mod_q(arr, q, field), q)
    if census != w.counts:
        raise BadPrime(f"intersection multiplicities degrade modulo {q}")


def good_primes(
    arr: LineArrangement,
    count: int,
    min_q: int = 2,
    bound: int | None = None,
) -> list[PrimeField]:
    """First ``count`` primes q >= min_q with q = 1 (mod d) and good reduction."""
    if bound is None:
        bound = int(os.environ.get(_PRIME_BOUND_ENV, DEFAULT_PRIME_BOUND))
    d = arr.d
    w = weak_comb_data(arr)
    found: list[PrimeField] = []
    for q in _primes_at_least(min_q):
        if q > bound:
            raise NotEnoughPrimes(
                f"found {len(found)} good primes below {bound}, needed {count}"
            )
        if (q - 1) % d != 0:
            continue
        field = PrimeField.make(q)
        try:
            _check_reduction(arr, q, field, w)
        except BadPrime:
            continue
        found.append(field)
        if len(found) == count:
            return found


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class CountTable:
    """Class-partitioned census of Q over F_q^3.

    class_counts[t] counts affine points with Q in the coset g^t * (F_q^*)^d;
    zero_count counts Q = 0.  Together they partition F_q^3.
    """

    q: int
    g: int
    d: int
    class_counts: tuple[int, ...]
    zero_count: int

    def __post_init__(self) -> None:
        assert sum(self.class_counts) + self.zero_count == self.q**3


def _q_values(arr: LineArrangement, q: int, field: PrimeField, x, y, z) -> np.ndarray:
    """Q(x, y, z) mod q on numpy arrays (broadcasting allowed)."""
    if arr.builtin == "ceva":
        x3 = (x * x % q) * x % q
        y3 = (y * y % q) * y % q
        z3 = (z * z % q) * z % q
        return ((x3 - y3) % q) * ((x3 - z3) % q) % q * ((y3 - z3) % q) % q
    vals = np.ones_like(x * y * z, dtype=np.int64)
    for a, b, c in _lines_mod_q(arr, q, field):
        vals = vals * ((a * x + b * y + c * z) % q) % q
    return vals


def _aggregate(vals: np.ndarray, field: PrimeField, d: int) -> tuple[np.ndarray, int]:
    nz = vals[vals != 0]
    classes = _dlog_table(field.p, field.g)[nz] % d
    return np.bincount(classes, minlength=d), int(vals.size - nz.size)


def count_classes(arr: LineArrangement, q: int) -> CountTable:
    """Exact census via one pass over P^2(F_q) (O(q^2) work).

    A projective point with Q-value v != 0 contributes its whole punctured
    cone line, q - 1 affine points all lying in the class of v; a projective
    zero of Q contributes q - 1 points with Q = 0, and the origin one more.
    """
    d = arr.d
    if (q - 1) % d != 0:
        raise BadPrime(f"{q} is not 1 modulo {d}")
    field = PrimeField.make(q)
    _check_reduction(arr, q, field, weak_comb_data(arr))

    ys, zs = np.meshgrid(np.arange(q, dtype=np.int64), np.arange(q, dtype=np.int64), indexing="ij")
    chart_x = _q_values(arr, q, field, np.int64(1), ys.ravel(), zs.ravel())
    chart_y = _q_values(arr, q, field, np.int64(0), np.int64(1), np.arange(q, dtype=np.int64))
    chart_z = _q_values(arr, q, field, np.int64(0), np.int64(0), np.arange(1, 2, dtype=np.int64))
    vals = np.concatenate([chart_x, np.atleast_1d(chart_y), np.atleast_1d(chart_z)])

    class_counts, zero_proj = _aggregate(vals, field, d)
    return CountTable(
        q=q,
        g=field.g,
        d=d,
        class_counts=tuple(int(c) * (q - 1) for c in class_counts),
        zero_count=zero_proj * (q - 1) + 1,
    )


def brute_force_count(arr: LineArrangement, q: int) -> CountTable:
    """O(q^3) oracle: enumerate every affine triple.  Test path only."""
    d = arr.d
    if (q - 1) % d != 0:
        raise BadPrime(f"{q} is not 1 modulo {d}")
    field = PrimeField.make(q)
    rng = np.arange(q, dtype=np.int64)
    xs, ys, zs = np.meshgrid(rng, rng, rng, indexing="ij")
    vals = _q_values(arr, q, field, xs.ravel(), ys.ravel(), zs.ravel())
    class_counts, zero_count = _aggregate(vals, field, d)
    return CountTable(
        q=q,
        g=field.g,
        d=d,
        class_counts=tuple(int(c) for c in class_counts),
        zero_count=zero_count,
    )


def twisted_counts(table: CountTable, d: int) -> dict[int, int]:
    """Fixed points of lam^j . Frobenius on the fiber, for each twist j.

    These equal #{y : Q(y) = s_j} with s_j in the class of g^j; each class
    has (q - 1) / d elements sharing one fiber count, so the class census
    divides out exactly.
    """
    if d != table.d:
        raise ValueError("twist modulus differs from the count table")
    q = table.q
    out = {}
    for j in range(d):
        total = table.class_counts[j] * d
        assert total % (q - 1) == 0
        out[j] = total // (q - 1)
    return out


def complement_count(table: CountTable) -> int:
    """Points of the affine complement Q != 0; the same for every twist."""
    return table.q**3 - table.zero_count


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get(_THREADS_ENV, "1"))
    return max(1, threads)


def count_tables(arr: LineArrangement, primes: Sequence[int], threads: int | None = None) -> list[CountTable]:
    """Count at several primes; workers are pure, merge order is the input order."""
    n = _resolve_threads(threads)
    if n == 1 or len(primes) <= 1:
        return [count_classes(arr, q) for q in primes]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda q: count_classes(arr, q), primes))


# ---------------------------------------------------------------------------
# polynomial fitting and Hodge extraction


@dataclass(frozen=True)
class FittedPoly:
    """Per-twist fit result: ascending Fraction coefficients, or a witness.

    per_twist[j] is None exactly when witnesses[j] records the first prime at
    which the interpolant through the leading primes fails.
    """

    degree: int
    per_twist: tuple[tuple[Fraction, ...] | None, ...]
    witnesses: tuple[tuple[int, int], ...]  # (twist, witnessing prime)

    def is_polynomial(self) -> bool:
        return not self.witnesses

    def first_witness(self) -> int | None:
        return min((q for _, q in self.witnesses), default=None)


def _lagrange(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k == i:
                continue
            # multiply basis by (x - xk)
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xk * basis[t + 1]
            denom *= xi - xk
        scale = Fraction(yi) / denom
        for t, b in enumerate(basis):
            coeffs[t] += scale * b
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_at(coeffs: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def fit_polynomials(sequences: Mapping[int, Sequence[tuple[int, int]]], degree: int) -> FittedPoly:
    """Interpolate each twist through its first degree+1 primes, then verify.

    Needs at least degree + 2 primes per twist so that at least one prime is
    a genuine consistency witness.
    """
    per_twist: list[tuple[Fraction, ...] | None] = []
    witnesses: list[tuple[int, int]] = []
    for j in sorted(sequences):
        pts = list(sequences[j])
        if len(pts) < degree + 2:
            raise NotEnoughPrimes(
                f"twist {j}: need at least {degree + 2} primes, got {len(pts)}"
            )
        coeffs = _lagrange(pts[: degree + 1])
        bad = next((q for q, y in pts if _poly_at(coeffs, q) != y), None)
        if bad is None:
            per_twist.append(coeffs)
        else:
            per_twist.append(None)
            witnesses.append((j, bad))
    return FittedPoly(degree=degree, per_twist=tuple(per_twist), witnesses=tuple(witnesses))


def fiber_fit(tables: Sequence[CountTable], d: int) -> FittedPoly:
    seqs = {j: [(t.q, twisted_counts(t, d)[j]) for t in tables] for j in range(d)}
    return fit_polynomials(seqs, degree=2)


def complement_fit(tables: Sequence[CountTable], d: int) -> FittedPoly:
    seqs = {j: [(t.q, complement_count(t)) for t in tables] for j in range(d)}
    return fit_polynomials(seqs, degree=3)


def hodge_from_counts(fit: FittedPoly, d: int) -> EquivPoly:
    """Diagonal equivariant Hodge-Deligne polynomial from fitted counts.

    The coefficient of t^i, as a function of the twist, is a virtual
    character; decoding it gives E^{i,i} with compact supports, and all
    off-diagonal entries vanish.
    """
    if not fit.is_polynomial():
        raise NotPolynomialCount(
            f"counts are not polynomial in q (witness prime {fit.first_witness()})"
        )
    if len(fit.per_twist) != d:
        raise ValueError("fit does not cover every twist")
    width = max(len(c) for c in fit.per_twist)  # type: ignore[arg-type]
    entries = {}
    for i in range(width):
        traces = []
        for j in range(d):
            coeffs = fit.per_twist[j]
            c = coeffs[i] if i < len(coeffs) else Fraction(0)
            if c.denominator != 1:
                raise DecodeError(f"coefficient of t^{i} at twist {j} is not an integer: {c}")
            traces.append(int(c))
        try:
            entries[(i, i)] = decode_characters(traces)
        except DecodeError as exc:
            raise DecodeError(f"coefficient of t^{i}: {exc}") from exc
    return HodgeTable(d, entries, label="E_c from point counts")


def complement_crosscheck(arr: LineArrangement, primes: Sequence[int], threads: int | None = None) -> list[dict]:
    """Compare |complement(F_q)| with the characteristic polynomial at q."""
    from .arrangement import charpoly_value, comb_invariants

    inv = comb_invariants(weak_comb_data(arr))
    out = []
    for table in count_tables(arr, primes, threads):
        counted = complement_count(table)
        expected = charpoly_value(inv, table.q)
        out.append(
            {"q": table.q, "count": counted, "charpoly": expected, "match": counted == expected}
        )
    return out
