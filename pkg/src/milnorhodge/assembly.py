"""Global Hodge assembly for line-arrangement Milnor fibers.

The Milnor fiber F of a degree-d line arrangement compactifies to the surface
X : Q(x, y, z) = t^d in P^3, whose isolated singularities sit over the
multiple points of the arrangement.  Three relations assemble the equivariant
Hodge tables of F from computable pieces:

* the weight-1 part of the primitive H^2 of X comes from the weight-3 parts
  of the local Milnor fibers minus the (externally supplied) H^3 data;
* the weight-2 part compares X with its smoothing, the degree-d Fermat
  surface, via the vanishing-cohomology four-term exact sequence;
* the nontrivial-character parts of H^1(F) and H^2(F) are the primitive
  cohomology of X read backwards through duality.

The arrangement spectrum needs no H^3 input at all: composing the three
relations makes the H^3 terms cancel against their conjugates, leaving, per
fractional exponent a, a Fermat-surface multiplicity minus a local census.
The sum rule (total = reduced Euler characteristic of F) is asserted on every
run; together with the reference fixtures it pins the sign conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangement import (
    CombInvariants,
    LineArrangement,
    WeakCombData,
    comb_invariants,
    epoly_V,
    weak_comb_data,
)
from .errors import DegreeTooSmall, NegativeMultiplicity, SumRuleViolation
from .localhodge import LocalHodgeTable, OrdinarySing, link_epoly, local_hodge_table
from .repring import EquivPoly, HodgeTable, ReprClass

__all__ = [
    "SurfaceH3Data",
    "Spectrum",
    "CheckResult",
    "AssemblyReport",
    "fermat_surface_table",
    "milnor_sum_table",
    "primitive_h2_weight1",
    "primitive_h2_weight2",
    "fiber_tables",
    "trivial_tables",
    "spectrum",
    "assemble_all",
    "check_identities",
]


# ---------------------------------------------------------------------------
# Fermat reference surface


def _fermat_entries(d: int) -> dict[tuple[int, int], ReprClass]:
    """Primitive H^2 of the degree-d Fermat surface as a character table.

    With the group scaling the last coordinate, the holomorphic part has
    h^{2,0}(lam^k) = C(k-1, 2); conjugation gives h^{0,2}, and each nontrivial
    character column sums to d^2 - 3d + 3.
    """
    total = d * d - 3 * d + 3
    h20 = [0] * d
    h02 = [0] * d
    h11 = [0] * d
    for k in range(1, d):
        h20[k] = math.comb(k - 1, 2)
        h02[k] = math.comb(d - k - 1, 2)
        h11[k] = total - h20[k] - h02[k]
        assert h11[k] >= 0
    return {
        (2, 0): ReprClass(d, tuple(h20)),
        (1, 1): ReprClass(d, tuple(h11)),
        (0, 2): ReprClass(d, tuple(h02)),
    }


def fermat_surface_table(d: int) -> HodgeTable:
    """Equivariant Hodge table of primitive H^2 of the Fermat surface."""
    if d < 3:
        raise DegreeTooSmall(f"Fermat surface table needs degree >= 3, got {d}")
    return HodgeTable(d, _fermat_entries(d), label=f"H2_0(Fermat_{d})")


# ---------------------------------------------------------------------------
# externally supplied H^3 character data


@dataclass(frozen=True)
class SurfaceH3Data:
    """Character data of H^3 of the cover surface X.

    H^3 is pure of weight 3 with no trivial-character part, and for every
    arrangement instance handled here its (3,0)/(0,3) pieces vanish; the
    constructor enforces exactly that shape.  Conjugation symmetry is *not*
    enforced, so corrupted inputs can be fed to the consistency checks.
    """

    table: HodgeTable

    def __post_init__(self) -> None:
        for (p, q), r in self.table.entries.items():
            if (p, q) not in ((2, 1), (1, 2)):
                raise ValueError("H3 data must be supported on (2,1) and (1,2)")
            if r[0] != 0:
                raise ValueError("H3 data must have no trivial-character part")
            if not r.is_effective():
                raise ValueError("H3 multiplicities must be nonnegative")

    @classmethod
    def zero(cls, d: int) -> "SurfaceH3Data":
        return cls(HodgeTable(d, {}, label="H3(X)"))

    @property
    def d(self) -> int:
        return self.table.d


# ---------------------------------------------------------------------------
# local data summed over the singular points


def _sum_tables(d: int, tables: Iterable[HodgeTable], label: str) -> HodgeTable:
    out = HodgeTable(d, {}, label)
    for t in tables:
        out = out + t
    return out.relabel(label)


def milnor_sum_table(w: WeakCombData) -> HodgeTable:
    """Sum of the local Milnor-fiber tables over all singular points."""
    d = w.d
    out = HodgeTable(d, {}, "sum_s H2(F_s)")
    for k, count in w.m:
        out = out + local_hodge_table(OrdinarySing(k, d)).as_hodge_table().scale(count)
    return out.relabel("sum_s H2(F_s)")


def _local_sum(local: Sequence[LocalHodgeTable | HodgeTable], d: int) -> HodgeTable:
    tables = [t.as_hodge_table() if isinstance(t, LocalHodgeTable) else t for t in local]
    if any(t.d != d for t in tables):
        raise ValueError("local tables must share the arrangement degree")
    return _sum_tables(d, tables, "sum_s H2(F_s)")


# ---------------------------------------------------------------------------
# the two assembly relations for primitive H^2 of X


def _require_effective(table: HodgeTable, what: str) -> HodgeTable:
    if not table.is_effective():
        raise NegativeMultiplicity(f"{what} came out negative; H3 input is inconsistent")
    return table


def primitive_h2_weight1(local: Sequence[LocalHodgeTable | HodgeTable], h3: SurfaceH3Data) -> HodgeTable:
    """Weight-1 part of primitive H^2 of X.

    h^{p,q}(H^2_0(X), alpha) = sum_s h^{p+1,q+1}(H^2(F_s), alpha)
                               - h^{2-p,2-q}(H^3(X), conj(alpha))
    for (p, q) in {(1,0), (0,1)}.
    """
    d = h3.d
    loc = _local_sum(local, d)
    entries = {
        (1, 0): loc.entry(2, 1) - h3.table.entry(1, 2).involution(),
        (0, 1): loc.entry(1, 2) - h3.table.entry(2, 1).involution(),
    }
    return _require_effective(HodgeTable(d, entries, "H2_0(X) weight 1"), "weight-1 part of H2_0(X)")


def primitive_h2_weight2(
    fermat: HodgeTable,
    local: Sequence[LocalHodgeTable | HodgeTable],
    h3: SurfaceH3Data,
) -> HodgeTable:
    """Weight-2 part of primitive H^2 of X, by comparison with the smoothing.

    h^{p,q}(H^2_0(X), alpha) = h^{p,q}(Fermat, alpha)
        + h^{p,q+1}(H^3, alpha) + h^{p+1,q}(H^3, alpha)
        - sum_s (h^{p,q} + h^{p,q+1} + h^{p+1,q})(H^2(F_s), alpha)
    for p + q = 2, with out-of-range bidegrees read as zero.
    """
    d = h3.d
    loc = _local_sum(local, d)
    entries = {}
    for p, q in ((2, 0), (1, 1), (0, 2)):
        entries[(p, q)] = (
            fermat.entry(p, q)
            + h3.table.entry(p, q + 1)
            + h3.table.entry(p + 1, q)
            - loc.entry(p, q)
            - loc.entry(p, q + 1)
            - loc.entry(p + 1, q)
        )
    return _require_effective(HodgeTable(d, entries, "H2_0(X) weight 2"), "weight-2 part of H2_0(X)")


# ---------------------------------------------------------------------------
# back to the Milnor fiber


def fiber_tables(h2x: HodgeTable, h3x: HodgeTable) -> tuple[HodgeTable, HodgeTable]:
    """Nontrivial-character Hodge tables of H^1(F) and H^2(F).

    Duality between fiber and primitive surface cohomology in the form
    h^{p,q}(H^j(F), alpha) = h^{2-q,2-p}(H^{4-j}_0(X), alpha), j = 1, 2.
    """
    if h2x.d != h3x.d:
        raise ValueError("mixed moduli")

    def pull(src: HodgeTable, label: str) -> HodgeTable:
        entries = {(2 - b, 2 - a): r for (a, b), r in src.entries.items()}
        return HodgeTable(src.d, entries, label)

    return pull(h3x, "H1(F) nontrivial part"), pull(h2x, "H2(F) nontrivial part")


def trivial_tables(inv: CombInvariants, d: int) -> dict[int, HodgeTable]:
    """Trivial-character parts: H^j(F)_1 is b_j(M) copies of type (j, j)."""
    betti = {0: 1, 1: inv.b1M, 2: inv.b2M}
    return {
        j: HodgeTable(d, {(j, j): ReprClass.trivial(d, b)}, label=f"H{j}(F) trivial part")
        for j, b in betti.items()
    }


# ---------------------------------------------------------------------------
# the spectrum


@dataclass(frozen=True)
class Spectrum:
    """Rational-exponent spectrum; entries with zero multiplicity are dropped."""

    d: int
    chi_fiber: int
    entries: tuple[tuple[Fraction, int], ...]

    def m(self, a) -> int:
        a = Fraction(a)
        return dict(self.entries).get(a, 0)

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "chiF": self.chi_fiber,
            "sum": self.total(),
            "entries": [{"a": str(a), "m": m} for a, m in self.entries],
        }


def spectrum(w: WeakCombData) -> Spectrum:
    """The arrangement spectrum from weak combinatorial data alone.

    With beta = exp(-2*pi*i*a) = lam^j and gamma = conj(beta):

    * 0 < a < 1:  m_a = h^{2,0}(Fermat, beta) - sum_s h^{2,0}(F_s, beta)
    * 1 < a < 2:  m_a = h^{1,1}(Fermat, gamma)
                        - sum_s (h^{1,1} + h^{1,2})(F_s, gamma)
    * 2 < a < 3:  m_a = h^{0,2}(Fermat, beta)
                        - sum_s (h^{0,2} + h^{1,2})(F_s, beta)
    * integers:   m_1 = b_2(M), m_2 = -b_1(M), m_3 = 0.

    The H^3 terms of the assembly relations cancel in these combinations, so
    the result depends only on (d, m_k); the sum over all entries must equal
    chi(F) - 1 and is asserted.
    """
    d = w.d
    inv = comb_invariants(w)
    fermat = _fermat_entries(d)
    loc = milnor_sum_table(w)

    def fm(p: int, q: int, j: int) -> int:
        r = fermat.get((p, q))
        return r[j] if r is not None else 0

    acc: dict[Fraction, int] = {}

    def put(a: Fraction, m: int) -> None:
        if m:
            acc[a] = acc.get(a, 0) + m

    put(Fraction(1), inv.b2M)
    put(Fraction(2), -inv.b1M)
    # m_3 is zero: nothing above weight 2 survives in the trivial part.

    for j in range(1, d):
        frac = Fraction(d - j, d)
        i = d - j  # index of gamma = conj(beta)
        put(frac, fm(2, 0, j) - loc.entry(2, 0)[j])
        put(1 + frac, fm(1, 1, i) - loc.entry(1, 1)[i] - loc.entry(1, 2)[i])
        put(2 + frac, fm(0, 2, j) - loc.entry(0, 2)[j] - loc.entry(1, 2)[j])

    entries = tuple(sorted(acc.items()))
    total = sum(m for _, m in entries)
    if total != inv.chiF - 1:
        raise SumRuleViolation(
            f"spectrum sums to {total}, expected chi(F) - 1 = {inv.chiF - 1}"
        )
    return Spectrum(d=d, chi_fiber=inv.chiF, entries=entries)


# ---------------------------------------------------------------------------
# full assembly and consistency checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class AssemblyReport:
    arrangement: LineArrangement
    weak: WeakCombData
    invariants: CombInvariants
    spec: Spectrum
    trivial: dict[int, HodgeTable]
    h3: SurfaceH3Data | None
    h2x: HodgeTable | None
    h1f: HodgeTable | None
    h2f: HodgeTable | None
    px: EquivPoly | None
    pv: EquivPoly
    pcf: EquivPoly | None
    checks: tuple[CheckResult, ...]

    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


def _p2(d: int) -> EquivPoly:
    """1 + uv + (uv)^2, the ambient part of P(X) for a surface in P^3."""
    triv = ReprClass.trivial(d)
    return HodgeTable(d, {(0, 0): triv, (1, 1): triv, (2, 2): triv}, label="P_2")


def assemble_all(arr: LineArrangement, h3: SurfaceH3Data | None = None) -> AssemblyReport:
    """Spectrum, trivial parts and, given H^3 data, the full fiber tables."""
    w = weak_comb_data(arr)
    d = w.d
    inv = comb_invariants(w)
    spec = spectrum(w)
    trivial = trivial_tables(inv, d)
    pv = epoly_V(w)

    h2x = h1f = h2f = px = pcf = None
    if h3 is not None:
        if h3.d != d:
            raise ValueError("H3 data modulus differs from arrangement degree")
        local = [milnor_sum_table(w)]
        fermat = HodgeTable(d, _fermat_entries(d), label=f"H2_0(Fermat_{d})")
        h2x = primitive_h2_weight1(local, h3) + primitive_h2_weight2(fermat, local, h3)
        h2x = h2x.relabel("H2_0(X)")
        h1f, h2f = fiber_tables(h2x, h3.table)
        px = (_p2(d) + h2x - h3.table).relabel("P(X)")
        pcf = (px - pv).relabel("P_c(F)")

    report = AssemblyReport(
        arrangement=arr,
        weak=w,
        invariants=inv,
        spec=spec,
        trivial=trivial,
        h3=h3,
        h2x=h2x,
        h1f=h1f,
        h2f=h2f,
        px=px,
        pv=pv,
        pcf=pcf,
        checks=(),
    )
    return replace(report, checks=tuple(check_identities(report)))


def _twist_dual(p: EquivPoly, n: int = 2) -> EquivPoly:
    """u^n v^n * iota(P)(1/u, 1/v): entry (a, b) -> (n-a, n-b), involved."""
    return p.poincare_dual(n)


def check_identities(report: AssemblyReport) -> list[CheckResult]:
    """Weight purity, localization, conjugation and compact-support checks."""
    checks: list[CheckResult] = []
    d = report.weak.d
    inv = report.invariants

    if report.h1f is not None:
        ok = all(p + q == 1 for (p, q) in report.h1f.support())
        checks.append(CheckResult("weight1_purity", ok, "H1(F) nontrivial part is pure weight 1"))

        ok = all(p + q != 4 for (p, q) in report.h2f.support())
        checks.append(CheckResult("no_weight4_in_H2F", ok, "H2(F) nontrivial part has no (p,q) with p+q=4"))

        # localization identity: P(X) - D[P(X)] = P(Sigma) - D[P(Sigma)] - P(T*)
        n_pts = report.weak.n_points()
        p_sigma = HodgeTable(d, {(0, 0): ReprClass.trivial(d, n_pts)})
        p_tstar = HodgeTable(d, {})
        for k, count in report.weak.m:
            p_tstar = p_tstar + link_epoly(OrdinarySing(k, d)).scale(count)
        lhs = report.px - _twist_dual(report.px)
        rhs = p_sigma - _twist_dual(p_sigma) - p_tstar
        checks.append(
            CheckResult(
                "link_localization_identity",
                lhs == rhs,
                "P(X) minus its twisted dual matches the singular locus and link terms",
            )
        )

        symmetric = {
            "H3(X) input": report.h3.table,
            "H2_0(X)": report.h2x,
            "H1(F)": report.h1f,
            "H2(F)": report.h2f,
        }
        bad = [name for name, t in symmetric.items() if not t.is_conjugation_symmetric()]
        checks.append(
            CheckResult(
                "conjugation_symmetry",
                not bad,
                "all tables symmetric" if not bad else "asymmetric: " + ", ".join(bad),
            )
        )

        # compact supports: P(X) - P(V) must equal the table assembled from
        # H^*_c(F) = primitive cohomology of X plus the dual trivial part.
        triv = ReprClass.trivial
        pcf_direct = (
            report.h2x
            + HodgeTable(d, {(0, 0): triv(d, inv.b2M)})
            - report.h3.table
            - HodgeTable(d, {(1, 1): triv(d, inv.b1M)})
            + HodgeTable(d, {(2, 2): triv(d)})
        )
        checks.append(
            CheckResult(
                "compact_support_identity",
                report.pcf == pcf_direct,
                "P(X) - P(V) equals the compactly-supported fiber table",
            )
        )

        euler_bad = []
        for j in range(1, d):
            lhs_dim = -report.h1f.dim_of_character(j) + report.h2f.dim_of_character(j)
            if lhs_dim != inv.chiM:
                euler_bad.append(j)
        checks.append(
            CheckResult(
                "euler_characteristic_identity",
                not euler_bad,
                "each nontrivial character contributes chi(M)"
                if not euler_bad
                else f"fails at characters {euler_bad}",
            )
        )

    checks.append(
        CheckResult(
            "spectrum_sum_rule",
            report.spec.total() == inv.chiF - 1,
            f"sum {report.spec.total()} == chi(F) - 1 = {inv.chiF - 1}",
        )
    )
    return checks
