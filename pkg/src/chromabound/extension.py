"""Extension bounds for a 5-vertex set ``S`` inside a degree-four configuration.

For ``h = G[S]`` each vertex ``v`` has ``d'(v) = 4 - deg_h(v)`` neighbours
outside ``S``.  For a set ``T`` of vertices whose outside neighbourhood is
monochromatic, every vertex receives a number of forbidden-colour slots; a
scenario fixes which slots carry equal colours, and ``count_extensions``
counts colourings of ``h`` avoiding them.  ``E_T`` is the largest count under
``<<_4``, ``E'_T`` its subset Mobius transform and ``R(y)`` the weighted sum
``sum E'_T y^(4 - Delta'(T))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cmp_to_key, lru_cache
from typing import Iterator, Sequence

from .graph import Graph, _bit, _iter_bits, _popcount, canonical_key, enumerate_unlabeled, identify
from .poly import IntPoly, Sign, SignCertificate, classify_sign, format_poly, ll_leq
from .reference import ROWS, ReferenceRow, label_map

ORDER_SHIFT = 4
R_TARGET = IntPoly.monomial(7) * IntPoly.linear(3)  # y^7 (y - 3)


class SlotRule(Enum):
    """How many forbidden-colour slots each vertex gets.

    ``TABLE`` lets ``T`` range over every vertex with ``d' != 1`` and gives a
    ``d' = 0`` vertex in ``T`` one slot; it is the reading under which the
    tabulated ``R`` values are reproduced.  ``LITERAL`` restricts ``T`` to
    ``d' >= 2`` and gives every other vertex ``d'`` slots.
    """

    TABLE = "table"
    LITERAL = "literal"


class NonUniqueMaximumError(RuntimeError):
    """Several ``<<``-maximal extension counts exist and no tie-break was allowed."""

    def __init__(self, T: int, candidates: Sequence[IntPoly]) -> None:
        shown = "; ".join(format_poly(p) for p in candidates)
        super().__init__(f"non-unique maximum for T={_fmt_set(T)}: {shown}")
        self.T = T
        self.candidates = tuple(candidates)


class InconclusiveSignError(RuntimeError):
    def __init__(self, T: int, p: IntPoly) -> None:
        super().__init__(f"sign of E'_T for T={_fmt_set(T)} is inconclusive: {format_poly(p)}")
        self.T = T
        self.poly = p


def _fmt_set(mask: int) -> str:
    return "{" + ",".join(str(v) for v in _iter_bits(mask)) + "}"


@dataclass(frozen=True)
class SPrimeProfile:
    h: Graph
    dprime: tuple[int, ...]
    sprime: int

    @classmethod
    def from_graph(cls, h: Graph) -> "SPrimeProfile":
        if h.n != 5:
            raise ValueError("profiles are defined for 5-vertex graphs")
        dp = tuple(4 - d for d in h.degrees())
        sprime = sum(_bit(v) for v, d in enumerate(dp) if d >= 2)
        return cls(h, dp, sprime)

    def t_domain(self, rule: SlotRule = SlotRule.TABLE) -> int:
        if rule is SlotRule.LITERAL:
            return self.sprime
        return sum(_bit(v) for v, d in enumerate(self.dprime) if d != 1)

    def subsets(self, rule: SlotRule = SlotRule.TABLE) -> list[int]:
        """Every ``T`` within the domain, in increasing numeric order."""
        dom = self.t_domain(rule)
        out = []
        sub = dom
        while True:
            out.append(sub)
            if not sub:
                break
            sub = (sub - 1) & dom
        return sorted(out)


def forbidden_slots(profile: SPrimeProfile, T: int, rule: SlotRule = SlotRule.TABLE) -> tuple[int, ...]:
    if T & ~profile.t_domain(rule):
        raise ValueError(f"T={_fmt_set(T)} is outside the allowed domain")
    out = []
    for v, d in enumerate(profile.dprime):
        inside = bool(T >> v & 1)
        if d >= 2:
            out.append(1 if inside else 2)
        elif rule is SlotRule.TABLE and d == 0:
            out.append(1 if inside else 0)
        else:
            out.append(d)
    return tuple(out)


def delta_prime(profile: SPrimeProfile, T: int) -> int:
    return max([profile.dprime[v] for v in _iter_bits(T)] + [1])


@dataclass(frozen=True)
class ForbiddenScenario:
    """``slots[i]`` is the vertex of slot ``i``; ``pattern`` is a restricted growth string of colour classes."""

    slots: tuple[int, ...]
    pattern: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.slots) != len(self.pattern):
            raise ValueError("slots and pattern differ in length")
        seen: set[tuple[int, int]] = set()
        for v, c in zip(self.slots, self.pattern):
            if (v, c) in seen:
                raise ValueError(f"vertex {v} has two slots in class {c}")
            seen.add((v, c))

    def forbidden(self, n: int) -> tuple[int, ...]:
        """Per-vertex bitmask of forbidden classes."""
        f = [0] * n
        for v, c in zip(self.slots, self.pattern):
            f[v] |= _bit(c)
        return tuple(f)

    @property
    def n_classes(self) -> int:
        return max(self.pattern) + 1 if self.pattern else 0


def scenarios(slot_counts: Sequence[int]) -> Iterator[ForbiddenScenario]:
    """All equality patterns on the slots keeping each vertex's slots apart."""
    slots = tuple(v for v, c in enumerate(slot_counts) for _ in range(c))
    s = len(slots)
    pattern = [0] * s
    per_vertex = [0] * len(slot_counts)  # classes already used at each vertex

    def rec(i: int, k: int) -> Iterator[ForbiddenScenario]:
        if i == s:
            yield ForbiddenScenario(slots, tuple(pattern))
            return
        v = slots[i]
        for c in range(k + 1):
            if per_vertex[v] >> c & 1:
                continue
            pattern[i] = c
            per_vertex[v] |= _bit(c)
            yield from rec(i + 1, max(k, c + 1))
            per_vertex[v] &= ~_bit(c)

    yield from rec(0, 0)


@lru_cache(maxsize=None)
def _count(adj: tuple[int, ...], forb: tuple[int, ...]) -> IntPoly:
    n = len(adj)
    for v in range(n):
        low = adj[v] & (_bit(v) - 1)
        if low:
            u = (low & -low).bit_length() - 1
            g = Graph._trusted(n, adj)
            dele = list(adj)
            dele[u] &= ~_bit(v)
            dele[v] &= ~_bit(u)
            merged = identify(g, u, v)
            f = list(forb)
            f[u] |= f[v]
            del f[v]
            return _count(tuple(dele), forb) - _count(merged.adj, tuple(f))
    out = IntPoly((1,))
    for f in forb:
        out = out * IntPoly((1 - _popcount(f), 1))
    return out


def count_extensions(h: Graph, scenario: ForbiddenScenario) -> IntPoly:
    """Colourings of ``h`` from ``y + 1`` colours avoiding each vertex's forbidden classes.

    Deletion-contraction where a contracted vertex inherits the union of both
    forbidden sets and an edgeless graph contributes ``prod (y + 1 - |F_v|)``.
    Exact, since distinct classes stand for distinct colours.
    """
    if any(v >= h.n for v in scenario.slots):
        raise ValueError("scenario refers to a vertex outside h")
    return _count(h.adj, scenario.forbidden(h.n))


def maximal_elements(cands: Sequence[IntPoly], k: int = ORDER_SHIFT) -> list[IntPoly]:
    """Candidates not strictly below another candidate under ``<<_k``."""
    return [p for p in cands if not any(q != p and ll_leq(p, q, k) for q in cands)]


def eventual_max(cands: Sequence[IntPoly]) -> IntPoly:
    """The candidate that is largest for all sufficiently large ``y``."""
    return max(cands, key=cmp_to_key(lambda p, q: (p - q).leading))


@dataclass(frozen=True)
class ExtensionBound:
    T: int
    poly: IntPoly
    slot_counts: tuple[int, ...]
    n_scenarios: int
    maximal: tuple[IntPoly, ...]

    @property
    def tie_broken(self) -> bool:
        return len(self.maximal) > 1


def extension_bound_E(
    profile: SPrimeProfile, T: int, rule: SlotRule = SlotRule.TABLE, strict: bool = False
) -> ExtensionBound:
    """``E_T``: the ``<<_4``-maximal extension count over all scenarios.

    Should the maximum not be unique, ``strict`` raises
    :class:`NonUniqueMaximumError`; otherwise the maximal candidate that
    dominates eventually is taken and the tie stays visible in the result.
    """
    slots = forbidden_slots(profile, T, rule)
    seen: set[IntPoly] = set()
    total = 0
    for sc in scenarios(slots):
        seen.add(count_extensions(profile.h, sc))
        total += 1
    cands = sorted(seen, key=lambda p: p.coeffs)
    top = maximal_elements(cands)
    if len(top) > 1 and strict:
        raise NonUniqueMaximumError(T, top)
    return ExtensionBound(T, eventual_max(top), slots, total, tuple(top))


def moebius_eprime(E: dict[int, IntPoly]) -> dict[int, IntPoly]:
    """``E'_T = sum over T- within T of (-1)^|T - T-| E_{T-}``, checked by inverting back."""
    out: dict[int, IntPoly] = {}
    for T in E:
        acc = IntPoly(())
        for Tm, p in E.items():
            if Tm & ~T == 0:
                acc = acc - p if _popcount(T & ~Tm) & 1 else acc + p
        out[T] = acc
    for T, p in E.items():
        back = IntPoly(())
        for Tm, q in out.items():
            if Tm & ~T == 0:
                back = back + q
        if back != p:
            raise ArithmeticError(f"Mobius inversion failed to round-trip at T={_fmt_set(T)}")
    return out


@dataclass(frozen=True)
class TRecord:
    T: int
    E: ExtensionBound
    Eprime: IntPoly
    sign: SignCertificate
    delta: int

    @property
    def term(self) -> IntPoly:
        return self.Eprime * IntPoly.monomial(4 - self.delta)

    @property
    def label(self) -> str:
        return _fmt_set(self.T)


def assemble_R(profile: SPrimeProfile, records: Sequence[TRecord]) -> tuple[IntPoly, IntPoly]:
    """``(R over all T, R over the positive E'_T only)``."""
    r_all = IntPoly(())
    r_plus = IntPoly(())
    for rec in records:
        if rec.sign.sign is Sign.INCONCLUSIVE:
            raise InconclusiveSignError(rec.T, rec.Eprime)
        r_all = r_all + rec.term
        if rec.sign.sign is Sign.POSITIVE:
            r_plus = r_plus + rec.term
    return r_all, r_plus


def certify_table2(R: IntPoly) -> tuple[IntPoly, bool]:
    """``W(z) = (z+4)^7 (z+1) - R(z+4)`` and whether all its coefficients are >= 0."""
    W = (R_TARGET - R).compose_shift(ORDER_SHIFT)
    return W, all(c >= 0 for c in W.coeffs)


@dataclass
class Comp1Report:
    name: str
    latex: str
    key: str
    profile: SPrimeProfile
    rule: SlotRule
    records: list[TRecord]
    r_all: IntPoly
    r_plus: IntPoly
    w: IntPoly
    verdict: bool
    w_all: IntPoly
    verdict_all: bool
    reference: ReferenceRow | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def R(self) -> IntPoly:
        """The tabulated quantity: the sum over positive ``E'_T``."""
        return self.r_plus

    @property
    def W(self) -> IntPoly:
        return self.w

    @property
    def ties(self) -> list[TRecord]:
        return [r for r in self.records if r.E.tie_broken]

    @property
    def matches_r(self) -> bool | None:
        return None if self.reference is None else self.R == self.reference.r_poly

    @property
    def matches_w(self) -> bool | None:
        return None if self.reference is None else self.W == self.reference.w_poly

    def omega(self, sign: Sign) -> list[int]:
        return [r.T for r in self.records if r.sign.sign is sign]


def run_comp1(h: Graph, rule: SlotRule = SlotRule.TABLE, strict: bool = False) -> Comp1Report:
    profile = SPrimeProfile.from_graph(h)
    Es = {T: extension_bound_E(profile, T, rule, strict) for T in profile.subsets(rule)}
    eprime = moebius_eprime({T: e.poly for T, e in Es.items()})
    records = [
        TRecord(T, Es[T], eprime[T], classify_sign(eprime[T], ORDER_SHIFT), delta_prime(profile, T))
        for T in sorted(Es)
    ]
    r_all, r_plus = assemble_R(profile, records)
    w, ok = certify_table2(r_plus)
    w_all, ok_all = certify_table2(r_all)
    key = canonical_key(h)
    row = label_map().get(key)
    report = Comp1Report(
        name=row.name if row else key,
        latex=row.latex if row else key,
        key=key,
        profile=profile,
        rule=rule,
        records=records,
        r_all=r_all,
        r_plus=r_plus,
        w=w,
        verdict=ok,
        w_all=w_all,
        verdict_all=ok_all,
        reference=row,
    )
    for rec in report.ties:
        report.notes.append(
            f"T={rec.label}: {len(rec.E.maximal)} incomparable maxima, kept the eventually largest"
        )
    if row is not None and not report.matches_r:
        report.notes.append(f"R differs from reference: {format_poly(report.R)} vs {format_poly(row.r_poly)}")
    return report


def run_comp1_all(rule: SlotRule = SlotRule.TABLE, strict: bool = False) -> list[Comp1Report]:
    """One report per 5-vertex isomorphism class, in reference-table order."""
    reports = [run_comp1(h, rule, strict) for h in enumerate_unlabeled(5)]
    order = {row.name: i for i, row in enumerate(ROWS)}
    reports.sort(key=lambda r: order.get(r.name, len(order)))
    return reports
