"""Residual intersections: colon, classification, r-minimal generation,
Kitt filtration, τ, complex layouts, ericci, certificates and the
regularity bound."""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .errors import CrossCheckError, HypothesisError, NotGradedError, ResintError
from .groebner import (Ideal, ideal_colon, ideal_contains, ideal_saturation, lift_coefficients,
                       radical_equal)
from .invariants import (HilbertSeries, _ladd, depth_regularity, ext_dimensions, height,
                         hilbert_series, krull_dim, serre_condition, unmixed_check)
from .koszul import (KoszulData, WedgeElement, cycle_betti_pieces, proper_sequence_check,
                     sym_bigraded_betti, symmetric_algebra, wedge_coefficient)
from .modules import minors, presentation_of_ideal
from .polynomial import PolyRing, Polynomial

log = logging.getLogger(__name__)

Matrix = List[List[Polynomial]]


# --------------------------------------------------------------------------
# input


def monomials_of_degree(ring: PolyRing, deg: int) -> List[tuple]:
    """All exponent vectors of weighted degree ``deg``, in lex-descending order."""
    w = ring.weights
    n = ring.nvars
    out: List[tuple] = []

    def rec(i, left, acc):
        if i == n - 1:
            if left % w[i] == 0:
                out.append(tuple(acc + [left // w[i]]))
            return
        for e in range(left // w[i], -1, -1):
            rec(i + 1, left - e * w[i], acc + [e])

    if deg < 0:
        return []
    if n == 0:
        return [()] if deg == 0 else []
    rec(0, deg, [])
    return out


def random_form(ring: PolyRing, deg: int, rng: random.Random) -> Polynomial:
    """Homogeneous form with coefficients in {-5..5} over Q, uniform over F_p."""
    p = ring.characteristic
    terms = {}
    for m in monomials_of_degree(ring, deg):
        c = rng.randrange(p) if p else rng.randint(-5, 5)
        if c:
            terms[m] = c
    return Polynomial.from_terms(ring, terms.items())


def general_elements(ring: PolyRing, f: Sequence[Polynomial], count: int,
                     degrees, seed: int) -> Tuple[List[Polynomial], Matrix]:
    """``count`` seeded general elements a_j = Σ_t c_tj f_t of the requested degrees.

    Returns (a, Φ) with Φ the r×count coefficient matrix.
    """
    if isinstance(degrees, int):
        degrees = [degrees] * count
    if len(degrees) != count:
        raise ValueError("one degree per requested element")
    fd = [g.degree() for g in f]
    if any(d is None or not g.is_homogeneous() for g, d in zip(f, fd)):
        raise NotGradedError("general elements need homogeneous generators")
    rng = random.Random(seed)
    Phi: Matrix = [[ring.zero() for _ in range(count)] for _ in f]
    a = []
    for j, l in enumerate(degrees):
        if l < min(fd):
            raise ValueError(f"degree {l} is below every generator degree")
        acc = ring.zero()
        for t, g in enumerate(f):
            if l - fd[t] < 0:
                continue
            c = random_form(ring, l - fd[t], rng)
            Phi[t][j] = c
            acc = acc + c * g
        a.append(acc)
    return a, Phi


@dataclass
class ResidualInput:
    """Ring data, I = (f_1..f_r), 𝔞 = (a_1..a_s) and Φ with [a] = [f]·Φ (mod Q)."""

    ring: PolyRing
    f: Tuple[Polynomial, ...]
    a: Tuple[Polynomial, ...]
    Phi: Matrix
    quotient: Tuple[Polynomial, ...] = ()
    seed: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    @classmethod
    def from_matrix(cls, ring, f, Phi, quotient=()) -> "ResidualInput":
        r = len(f)
        s = len(Phi[0]) if Phi else 0
        a = []
        for j in range(s):
            acc = ring.zero()
            for i in range(r):
                acc = acc + Phi[i][j] * f[i]
            a.append(acc)
        return cls(ring, tuple(f), tuple(a), [list(row) for row in Phi], tuple(quotient))

    @classmethod
    def explicit(cls, ring, f, a, quotient=()) -> "ResidualInput":
        """Φ by deterministic division of each a_j by the generators of I."""
        cols = []
        for g in a:
            c = lift_coefficients(g, list(f), list(quotient))
            if c is None:
                raise HypothesisError(f"{g} is not in I")
            cols.append(c)
        Phi = [[cols[j][i] for j in range(len(a))] for i in range(len(f))]
        return cls(ring, tuple(f), tuple(a), Phi, tuple(quotient))

    @classmethod
    def general(cls, ring, f, s, degrees, seed, quotient=()) -> "ResidualInput":
        a, Phi = general_elements(ring, f, s, degrees, seed)
        inp = cls(ring, tuple(f), tuple(a), Phi, tuple(quotient), seed=seed)
        return inp

    @property
    def r(self) -> int:
        return len(self.f)

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def d(self) -> List[int]:
        return [g.degree() for g in self.f]

    @property
    def l(self) -> List[int]:
        return [g.degree() for g in self.a]

    @property
    def I(self) -> Ideal:
        return Ideal(self.ring, self.f, self.quotient)

    @property
    def A(self) -> Ideal:
        return Ideal(self.ring, self.a, self.quotient)

    @property
    def R(self) -> Ideal:
        """The zero ideal of R (carries the quotient)."""
        return Ideal(self.ring, [], self.quotient)

    def verify_phi(self) -> bool:
        zero = Ideal(self.ring, [], self.quotient)
        for j, g in enumerate(self.a):
            acc = self.ring.zero()
            for i in range(self.r):
                acc = acc + self.Phi[i][j] * self.f[i]
            if not zero.quotient_reduce(acc - g).is_zero():
                return False
        return True

    def zetas(self) -> List[WedgeElement]:
        """ζ_j = Σ_i c_ij e_i."""
        return [WedgeElement(self.ring, self.r, {(i,): self.Phi[i][j] for i in range(self.r)})
                for j in range(self.s)]

    def with_generators(self, f, a) -> "ResidualInput":
        return ResidualInput.explicit(self.ring, f, a, self.quotient)


# --------------------------------------------------------------------------
# colon and classification


@dataclass
class ColonResult:
    J: Ideal
    height: float
    proper: bool
    s: int

    @property
    def is_residual(self) -> bool:
        return self.proper and self.height >= self.s

    def flag(self) -> Optional[str]:
        if not self.proper:
            return "not residual: colon is unit ideal"
        if self.height < self.s:
            return f"not residual: ht(J) = {self.height} < s = {self.s}"
        return None


def residual_colon(inp: ResidualInput) -> ColonResult:
    J = ideal_colon(inp.A, inp.I)
    if J.is_unit():
        return ColonResult(J, math.inf, False, inp.s)
    return ColonResult(J, height(J), True, inp.s)


def syzygy_matrix(inp: ResidualInput) -> Matrix:
    """φ: minimal syzygies of f over R, as an r×m matrix."""
    phi = presentation_of_ideal(inp.I)
    return phi.rows() if phi.source.rank else [[] for _ in range(inp.r)]


def fitting_of_quotient(inp: ResidualInput, k: int, phi: Optional[Matrix] = None) -> Ideal:
    """Fitt_k(I/𝔞) = I_{r-k}([φ | Φ])."""
    phi = phi if phi is not None else syzygy_matrix(inp)
    big = [list(phi[i]) + list(inp.Phi[i]) for i in range(inp.r)]
    t = inp.r - k
    if t <= 0:
        return Ideal(inp.ring, [inp.ring.one()], inp.quotient)
    if not big[0]:
        return Ideal(inp.ring, [], inp.quotient)
    return Ideal(inp.ring, minors(big, t, inp.ring), inp.quotient)


@dataclass
class Classification:
    algebraic: bool
    geometric: bool
    arithmetic: bool
    height_J: float
    height_I_plus_J: float
    height_arith: float

    @property
    def kind(self) -> str:
        if self.geometric:
            return "geometric"
        if self.arithmetic:
            return "arithmetic"
        if self.algebraic:
            return "algebraic"
        return "none"

    def as_dict(self):
        h = lambda x: "inf" if x == math.inf else x
        return {"kind": self.kind, "algebraic": self.algebraic, "geometric": self.geometric,
                "arithmetic": self.arithmetic, "ht_J": h(self.height_J),
                "ht_I_plus_J": h(self.height_I_plus_J), "ht_fitt1_I_J": h(self.height_arith)}


def classify_residual(inp: ResidualInput, colon: Optional[ColonResult] = None) -> Classification:
    colon = colon or residual_colon(inp)
    J = colon.J
    s = inp.s
    algebraic = colon.proper and colon.height >= s
    hIJ = height(inp.I + J) if colon.proper else math.inf
    geometric = algebraic and hIJ >= s + 1
    if colon.proper:
        F1 = fitting_of_quotient(inp, 1)
        harith = height(F1 + inp.I + J)
    else:
        harith = math.inf
    arithmetic = algebraic and harith >= s + 1
    if geometric and not arithmetic:
        raise CrossCheckError("geometric residual intersection failed the arithmetic test")
    return Classification(algebraic, geometric, arithmetic, colon.height, hIJ, harith)


# --------------------------------------------------------------------------
# r-minimal generation and G_s


@dataclass
class RMinResult:
    holds: bool
    zeta: int
    dim_R: int
    saturation_is_unit: bool
    entries: Ideal
    radical_test: Optional[bool] = None
    diagnostics: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def is_minimally_generated(f: Sequence[Polynomial], quotient=()) -> bool:
    """No generator lies in the ideal generated by the others (mod Q)."""
    if not f:
        return True
    ring = f[0].ring
    for k, g in enumerate(f):
        if g.is_zero():
            return False
        others = Ideal(ring, [h for i, h in enumerate(f) if i != k], quotient)
        if others.contains(g):
            return False
    return True


def r_min_generated(ring: PolyRing, f: Sequence[Polynomial], zeta: int, quotient=()) -> RMinResult:
    """Is I = (f) r-minimally generated from height ζ?

    With φ a minimal presentation, μ(I_p) = r iff I_1(φ) ⊆ p.  Primes of
    V(I) outside V(I_1(φ)) exist iff T = I : I_1(φ)^∞ is proper, and then
    they reach every height below dim R (the homogeneous maximal ideal
    itself always contains I_1(φ)).
    """
    I = Ideal(ring, f, quotient)
    if not I.is_homogeneous():
        raise NotGradedError("r-minimality test needs homogeneous input")
    diag = []
    if not is_minimally_generated(f, quotient):
        raise HypothesisError("the given generators of I are not minimal")
    phi = presentation_of_ideal(I)
    entries = Ideal(ring, phi.entries(), quotient)
    dimR = krull_dim(I.ambient())
    T = ideal_saturation(I.lift(), entries.lift())
    unit = T.is_unit()
    holds = unit or zeta >= dimR
    if not holds:
        diag.append(f"I : I_1(phi)^inf is proper, so primes of height {zeta}..{dimR - 1} "
                    f"containing I need fewer than {len(f)} generators")
    rad = None
    ht = height(I)
    if zeta == ht:
        rad = radical_equal(I, entries + I) if entries.gens else False
    return RMinResult(holds, zeta, dimR, unit, entries, rad, diag)


def r_min_failure_height(ring, f, zeta, quotient=()) -> Optional[int]:
    """Largest height ≥ ζ at which r-minimality fails (None if it holds from ζ)."""
    res = r_min_generated(ring, f, zeta, quotient)
    if res.holds:
        return None
    return res.dim_R - 1


def g_condition(ring: PolyRing, f: Sequence[Polynomial], s: int, minus: bool = False,
                quotient=()) -> bool:
    """G_s via Fitting heights: ht Fitt_k(I) >= k + 1 for 1 <= k <= s - 1.

    Fitt_k(I) = I_{r-k}(φ).  The minus variant (μ(I_p) <= ht p + 1) asks
    for ht Fitt_k(I) >= k instead.
    """
    I = Ideal(ring, f, quotient)
    phi = presentation_of_ideal(I)
    rows = phi.rows() if phi.source.rank else None
    r = len(f)
    for k in range(1, s):
        t = r - k
        if t <= 0:
            break
        gens = minors(rows, t, ring) if rows else []
        need = k if minus else k + 1
        if height(Ideal(ring, gens, quotient)) < need:
            return False
    return True


# --------------------------------------------------------------------------
# Kitt filtration and τ


@dataclass
class KittChain:
    levels: List[Ideal]                              # Kitt_0 .. Kitt_r
    provenance: List[List[Tuple[tuple, tuple]]]      # per level: (E, cycles used) for each new generator

    @property
    def kitt(self) -> Ideal:
        return self.levels[-1]

    def level(self, i: int) -> Ideal:
        return self.levels[min(i, len(self.levels) - 1)]

    def is_ascending(self) -> bool:
        return all(ideal_contains(b, a) for a, b in zip(self.levels, self.levels[1:]))


def kitt_chain(inp: ResidualInput, koszul: Optional[KoszulData] = None) -> KittChain:
    """Kitt_i = degree-r part of Γ·⟨Z_0..Z_i⟩, the cycle subalgebra on indices ≤ i."""
    K = koszul or KoszulData(inp.ring, inp.f, inp.quotient)
    r, s = inp.r, inp.s
    zetas = inp.zetas()
    ring = inp.ring
    red = Ideal(ring, [], inp.quotient)
    # Γ wedges by exterior degree
    gamma: Dict[int, List[Tuple[tuple, WedgeElement]]] = {}
    for q in range(0, min(r, s) + 1):
        lst = []
        for E in combinations(range(s), q):
            if q == 0:
                w = WedgeElement(ring, r, {(): ring.one()})
            else:
                w = zetas[E[0]]
                for e in E[1:]:
                    w = w.wedge(zetas[e])
            if not w.is_zero():
                lst.append((E, w))
        gamma[q] = lst
    cyc = {j: K.cycle_wedges(j) for j in range(1, r + 1)}

    def products(level: int):
        """Products of cycle generators with all indices in 1..level, at least one equal to level."""
        items = [(j, k) for j in range(1, level + 1) for k in range(len(cyc[j]))]
        results = []
        for m in range(1, r // 1 + 1):
            for combo in combinations_with_replacement(items, m):
                deg = sum(j for j, _ in combo)
                if deg > r or max(j for j, _ in combo) != level:
                    continue
                results.append((deg, combo))
        return results

    gens_by_level: List[List[Polynomial]] = []
    prov: List[List[Tuple[tuple, tuple]]] = []
    # level 0: maximal minors of Φ via the top wedges of ζ's
    g0, p0 = [], []
    for E, w in gamma.get(r, []):
        c = w.coeffs.get(tuple(range(r)))
        if c is not None and c.terms:
            c = red.quotient_reduce(c)
            if c.terms:
                g0.append(c)
                p0.append((E, ()))
    gens_by_level.append(g0)
    prov.append(p0)
    for level in range(1, r + 1):
        new, pv = [], []
        for deg, combo in products(level):
            w = None
            for j, k in combo:
                z = cyc[j][k]
                w = z if w is None else w.wedge(z)
                if w.is_zero():
                    break
            if w is None or w.is_zero():
                continue
            q = r - deg
            for E, g in gamma.get(q, []):
                top = g.wedge(w) if q else w
                c = top.coeffs.get(tuple(range(r)))
                if c is None or not c.terms:
                    continue
                c = red.quotient_reduce(c)
                if c.terms:
                    new.append(c)
                    pv.append((E, combo))
        gens_by_level.append(new)
        prov.append(pv)
    levels = []
    acc: List[Polynomial] = []
    for gl in gens_by_level:
        acc = acc + gl
        levels.append(Ideal(ring, list(acc), inp.quotient))
    return KittChain(levels, prov)


@dataclass
class TauResult:
    tau: Ideal
    minors_gens: List[Polynomial]
    wedge_gens: List[Polynomial]
    mu: int
    bound: int

    @property
    def paths_agree(self) -> bool:
        return self.minors_gens == self.wedge_gens

    @property
    def mu_ok(self) -> bool:
        return self.mu <= self.bound


def tau(inp: ResidualInput) -> TauResult:
    """τ = 𝔞 + I_r(Φ); the r×r minors are computed by Laplace expansion and,
    independently, as top-degree wedges of the ζ's."""
    r, s = inp.r, inp.s
    by_minor = minors(inp.Phi, r, inp.ring) if s >= r else []
    zetas = inp.zetas()
    by_wedge = []
    if s >= r:
        for E in combinations(range(s), r):
            c = wedge_coefficient([zetas[e] for e in E], r)
            if c.terms:
                by_wedge.append(c)
    T = Ideal(inp.ring, list(inp.a) + by_minor, inp.quotient)
    if T.is_homogeneous():
        mu = len(T.minimal_generators())
    else:
        mu = len([g for g in T.gens if not T.ambient().quotient_reduce(g).is_zero()])
    return TauResult(T, by_minor, by_wedge, mu, s + math.comb(s, r))


# --------------------------------------------------------------------------
# layouts


@dataclass
class GradedComplexLayout:
    """Twists per homological index: ``terms[i]`` lists a with R(-a) summands of the i-th term."""

    terms: List[List[int]]
    feeds: str = "F"

    def ranks(self) -> List[int]:
        return [len(t) for t in self.terms]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def euler_numerator(self) -> Dict[int, int]:
        num: Dict[int, int] = {}
        for i, twists in enumerate(self.terms):
            for a in twists:
                num = _ladd(num, {a: (-1) ** i})
        return num

    def describe(self) -> List[str]:
        out = []
        for twists in self.terms:
            cnt: Dict[int, int] = {}
            for a in twists:
                cnt[a] = cnt.get(a, 0) + 1
            parts = []
            for a in sorted(cnt):
                base = "R" if a == 0 else f"R(-{a})" if a > 0 else f"R({-a})"
                parts.append(base if cnt[a] == 1 else f"{base}^{cnt[a]}")
            out.append(" + ".join(parts) if parts else "0")
        return out

    def as_dict(self):
        return {"feeds": self.feeds, "ranks": self.ranks(),
                "twists": [sorted(t) for t in self.terms], "summary": self.describe()}


def _betas(r: int, total: int):
    """β in Z^r with β_i >= 1 and |β| = total."""
    if total < r:
        return
    for cut in combinations(range(1, total), r - 1):
        prev = 0
        out = []
        for c in cut + (total,):
            out.append(c - prev)
            prev = c
        yield tuple(out)


def _assemble(r: int, s: int, d: Sequence[int], l: Sequence[int],
              pieces: Dict[int, List[Tuple[int, int]]], feeds: str) -> GradedComplexLayout:
    """Degree-0 part of the top t-local cohomology of (pieces ⊗ γ-Koszul).

    ``pieces[p]`` lists (t-shift, R-degree) summands of the p-th resolution term.
    """
    terms: List[List[int]] = [[0]] + [[] for _ in range(s)]
    for p, plist in pieces.items():
        for q in range(0, s + 1):
            i = p + q - r + 1
            if i < 1 or i > s:
                continue
            for tshift, rdeg in plist:
                total = tshift + q
                for E in combinations(range(s), q):
                    le = sum(l[e] for e in E)
                    for beta in _betas(r, total):
                        terms[i].append(rdeg + le - sum(b * dd for b, dd in zip(beta, d)))
    for t in terms:
        t.sort()
    return GradedComplexLayout(terms, feeds)


def f_pieces(r: int, d: Sequence[int]) -> Dict[int, List[Tuple[int, int]]]:
    pieces: Dict[int, List[Tuple[int, int]]] = {0: [(0, 0)]}
    for p in range(1, r):
        lst = []
        for D in combinations(range(r), p + 1):
            dd = sum(d[t] for t in D)
            for jp in range(1, p + 1):
                lst.append((jp, dd))
        pieces[p] = lst
    return pieces


def f_complex_layout(r: int, s: int, d: Sequence[int], l: Sequence[int]) -> GradedComplexLayout:
    if r < 1 or s < 1 or len(d) != r or len(l) != s:
        raise ValueError("need r, s >= 1 and degree lists of lengths r and s")
    return _assemble(r, s, d, l, f_pieces(r, d), "F")


@dataclass
class QLayoutData:
    layout: GradedComplexLayout
    pieces: Dict[int, List[Tuple[int, int]]]
    generators: Tuple[Polynomial, ...]
    method: str


def q_complex_layout(inp: ResidualInput, seed: int = 0) -> QLayoutData:
    """Q-layout from the bigraded Betti pieces of Sym(I).

    Requires f (or a seeded general change of generators) to be a proper
    sequence, Sym(I) of t-regularity 0 and pd_S(Sym(I)) <= r - 1.
    """
    f = list(inp.f)
    ring = inp.ring
    ps = proper_sequence_check(ring, f, inp.quotient)
    method = "given generators"
    if not ps:
        rng = random.Random(seed)
        for _ in range(config.current_limits().reseed_attempts):
            G = [[(rng.randrange(ring.characteristic) if ring.characteristic else rng.randint(-5, 5))
                  for _ in f] for _ in f]
            g = []
            for j in range(len(f)):
                acc = ring.zero()
                for i in range(len(f)):
                    acc = acc + ring.const(G[i][j]) * f[i]
                g.append(acc)
            if Ideal(ring, g, inp.quotient) == inp.I and proper_sequence_check(ring, g, inp.quotient):
                f = g
                method = "seeded general generators"
                break
        else:
            raise HypothesisError("no proper generating sequence found")
    K = KoszulData(ring, f, inp.quotient)
    if inp.quotient:
        table = cycle_betti_pieces(K)
        method += "; Betti pieces from free Koszul cycles"
    else:
        sb = sym_bigraded_betti(ring, f)
        table = sb.table
        method += "; bigraded resolution of Sym(I)"
    treg = max(t - i for (i, t, _d) in table)
    pd = max(i for (i, _t, _d) in table)
    if treg != 0:
        raise HypothesisError(f"Sym(I) has t-regularity {treg}")
    if pd > inp.r - 1:
        raise HypothesisError(f"pd_S Sym(I) = {pd} exceeds r - 1")
    pieces: Dict[int, List[Tuple[int, int]]] = {}
    for (i, t, dd), v in sorted(table.items()):
        pieces.setdefault(i, []).extend([(t, dd)] * v)
    layout = _assemble(inp.r, inp.s, inp.d, inp.l, pieces, "Q")
    return QLayoutData(layout, pieces, tuple(f), method)


@dataclass
class IdentityCheck:
    holds: bool
    first_failure: Optional[int]
    lhs: List[int]
    rhs: List[int]

    def __bool__(self):
        return self.holds


def hilbert_identity_check(layout: GradedComplexLayout, M: Ideal, n_max: int) -> IdentityCheck:
    """HF_{R/M}(n) = Σ_i (-1)^i Σ_{a in F_i} HF_R(n - a) for n = 0..n_max."""
    hsR = hilbert_series(M.ambient())
    base = hsR.coefficients(n_max, min(0, -max([0] + [a for t in layout.terms for a in t])))
    lo = min(0, -max([0] + [a for t in layout.terms for a in t]))

    def HR(n):
        if n < lo:
            return 0
        return base[n - lo]

    lhs = hilbert_series(M).coefficients(n_max)
    rhs = []
    for n in range(n_max + 1):
        v = 0
        for i, twists in enumerate(layout.terms):
            sign = -1 if i % 2 else 1
            for a in twists:
                v += sign * HR(n - a)
        rhs.append(v)
    bad = next((n for n in range(n_max + 1) if lhs[n] != rhs[n]), None)
    return IdentityCheck(bad is None, bad, lhs, rhs)


# --------------------------------------------------------------------------
# ericci


@dataclass
class EricciResult:
    value: int
    euler: int
    generic: Optional[int]
    seeds_tried: List[int]
    failed_seeds: List[int]
    method: str = "layout Euler characteristic, cross-checked by a generic complete intersection"


def euler_multiplicity(R: Ideal, layout: GradedComplexLayout) -> Tuple[int, int]:
    """(dim, e) of the series HS_R · Σ(-1)^i Σ z^a."""
    hs = hilbert_series(R)
    from .invariants import _lmul
    num = _lmul(hs.num, layout.euler_numerator())
    series = HilbertSeries.make(num, hs.weights)
    return series.dimension(), series.multiplicity()


def ericci(ring: PolyRing, d: Sequence[int], l: Sequence[int], quotient=(), seed: int = 0,
           cross_check: bool = True) -> EricciResult:
    """Multiplicity of an s-residual intersection of a complete intersection of degrees d."""
    R = Ideal(ring, [], quotient)
    r, s = len(d), len(l)
    layout = f_complex_layout(r, s, d, l)
    dim_e, e_euler = euler_multiplicity(R, layout)
    if not cross_check:
        return EricciResult(e_euler, e_euler, None, [], [])
    dimR = krull_dim(R)
    tried, failed = [], []
    attempts = config.current_limits().reseed_attempts
    for k in range(attempts):
        sd = seed + k
        tried.append(sd)
        rng = random.Random(sd)
        f = [random_form(ring, dt, rng) for dt in d]
        I = Ideal(ring, f, quotient)
        if height(I) != r:
            failed.append(sd)
            log.info("ericci: seed %s gives no regular sequence", sd)
            continue
        a, _ = general_elements(ring, f, s, list(l), sd + 7919)
        J = ideal_colon(Ideal(ring, a, quotient), I)
        if J.is_unit() or height(J) < s:
            failed.append(sd)
            continue
        from .invariants import multiplicity as _mult
        e_gen = _mult(J)
        if e_gen == e_euler:
            return EricciResult(e_euler, e_euler, e_gen, tried, failed)
        failed.append(sd)
        log.info("ericci: seed %s gives %s, layout gives %s", sd, e_gen, e_euler)
    raise CrossCheckError(f"ericci methods disagree after {attempts} seeds (layout: {e_euler})")


# --------------------------------------------------------------------------
# regularity bound


@dataclass
class RegularityBound:
    lhs: int
    rhs: Optional[int]
    holds: Optional[bool]
    beg: Optional[int]
    sigma: int
    reg_R: int
    hypotheses: Dict[str, bool]

    def as_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "beg": self.beg,
                "sigma": self.sigma, "reg_R": self.reg_R, "hypotheses": self.hypotheses}


def beginning_degree(inp: ResidualInput) -> Optional[int]:
    """Least n with (I/𝔞)_n != 0; None when I = 𝔞."""
    diff = hilbert_series(inp.A) - hilbert_series(inp.I)
    if diff.is_zero():
        return None
    top = max([0] + inp.d + inp.l) + 1
    while True:
        vals = diff.coefficients(top)
        for n, v in enumerate(vals):
            if v:
                return n
        top *= 2


def regularity_bound_check(inp: ResidualInput, tau_ideal: Optional[Ideal] = None) -> RegularityBound:
    T = tau_ideal or tau(inp).tau
    lhs = depth_regularity(T).regularity
    R = inp.R
    regR = depth_regularity(R).regularity
    sigma = sum(inp.l)
    beg = beginning_degree(inp)
    exts = ext_dimensions(R)
    from .invariants import is_cohen_macaulay
    hyp = {"R Cohen-Macaulay": is_cohen_macaulay(R, exts),
           "dim R/tau = dim R - s": krull_dim(T) == krull_dim(R) - inp.s}
    if beg is None:
        return RegularityBound(lhs, None, None, None, sigma, regR, hyp)
    rhs = regR + 0 + sigma - (inp.s - inp.r + 1) * beg - inp.s
    return RegularityBound(lhs, rhs, lhs <= rhs, beg, sigma, regR, hyp)


# --------------------------------------------------------------------------
# certificate


@dataclass
class Check:
    name: str
    passed: Optional[bool]
    evidence: str = ""
    gating: bool = True

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "evidence": self.evidence,
                "gating": self.gating}


@dataclass
class FreeApproachCertificate:
    tau: Ideal
    checks: List[Check]
    hypotheses: List[Check]

    @property
    def issued(self) -> bool:
        return all(c.passed for c in self.hypotheses + self.checks if c.gating)

    def failed(self) -> List[Check]:
        return [c for c in self.hypotheses + self.checks if c.gating and not c.passed]

    def diagnostics(self) -> List[str]:
        return [f"{c.name}: {c.evidence}" if c.evidence else c.name for c in self.failed()]

    def as_dict(self):
        return {"issued": self.issued, "tau": [str(g) for g in self.tau.gens],
                "hypotheses": [c.as_dict() for c in self.hypotheses],
                "checks": [c.as_dict() for c in self.checks]}


DEFAULT_HYPOTHESES = ("s>=r", "r_min", "serre", "grade")


def free_approach_certificate(inp: ResidualInput, hypotheses: Sequence[str] = DEFAULT_HYPOTHESES,
                              colon: Optional[ColonResult] = None, n_max: int = 12,
                              classification: Optional[Classification] = None,
                              stop_early: bool = False) -> FreeApproachCertificate:
    """Hypotheses first, then the colon-based checks.  By default every check
    runs even after a failed hypothesis, so the report says what else breaks;
    ``stop_early`` skips the (expensive) rest instead.  ``colon`` and
    ``classification`` may be zero-argument callables."""
    r, s = inp.r, inp.s
    hyp: List[Check] = []
    if "s>=r" in hypotheses:
        hyp.append(Check("s >= r", s >= r, f"s = {s}, r = {r}"))
    if "r_min" in hypotheses:
        rm = r_min_generated(inp.ring, inp.f, s - 1, inp.quotient)
        ev = f"I is {r}-minimally generated from height {s - 1}"
        if not rm.holds:
            ev = f"r-minimality from height {s - 1} fails at height {rm.dim_R - 1} criterion"
        hyp.append(Check("r-minimality", rm.holds, ev))
    if "serre" in hypotheses:
        ok = serre_condition(inp.R, s)
        hyp.append(Check(f"R satisfies S_{s}", ok, "Ext-dimension criterion over P"))
    if "grade" in hypotheses:
        g = KoszulData(inp.ring, inp.f, inp.quotient).grade
        hyp.append(Check("grade(I) >= 1", g >= 1, f"grade {g} via Koszul homology"))
    if stop_early and not all(c.passed for c in hyp):
        T = tau(inp)
        skipped = Check("remaining checks", None, "skipped: a hypothesis failed", gating=False)
        return FreeApproachCertificate(T.tau, [skipped], hyp)
    if callable(colon):
        colon = colon()
    colon = colon or residual_colon(inp)
    J = colon.J
    T = tau(inp)
    checks: List[Check] = []
    checks.append(Check("tau minors = tau wedges", T.paths_agree,
                        "Laplace minors vs top wedges of zeta"))
    checks.append(Check("tau in J", ideal_contains(J, T.tau)))
    checks.append(Check("sqrt(tau) = sqrt(J)", radical_equal(T.tau, J)))
    checks.append(Check("ht(J) = s", colon.height == s, f"ht(J) = {colon.height}"))
    ht_tau = height(T.tau)
    checks.append(Check("ht(tau) = s", ht_tau == s, f"ht(tau) = {ht_tau}"))
    checks.append(Check("mu(tau) <= s + C(s,r)", T.mu_ok, f"mu = {T.mu}, bound = {T.bound}"))
    if T.tau.is_homogeneous():
        layout = f_complex_layout(r, s, inp.d, inp.l)
        hic = hilbert_identity_check(layout, T.tau, n_max)
        ev = "holds for n <= %d" % n_max if hic.holds else f"fails at n = {hic.first_failure}"
        checks.append(Check("F-layout Hilbert identity for R/tau (expected under acyclicity)",
                            hic.holds, ev, gating=False))
    if callable(classification):
        classification = classification()
    if classification is None and colon.proper:
        classification = classify_residual(inp, colon)
    if classification is not None and classification.geometric:
        checks.append(Check("tau = J (geometric)", ideal_contains(T.tau, J)))
        checks.append(Check("R/J unmixed (geometric)", unmixed_check(J)))
    return FreeApproachCertificate(T.tau, checks, hyp)


# --------------------------------------------------------------------------
# seeded general residuals


def general_residual(ring, f, s, degrees, seed, quotient=(), attempts: Optional[int] = None,
                     min_height: Optional[int] = None):
    """First seed in seed, seed+1, ... whose general 𝔞 gives ht(J) >= s.

    Returns (ResidualInput, ColonResult, failed seeds).
    """
    attempts = attempts or config.current_limits().reseed_attempts
    need = s if min_height is None else min_height
    failed = []
    for k in range(attempts):
        sd = seed + k
        inp = ResidualInput.general(ring, f, s, degrees, sd, quotient)
        col = residual_colon(inp)
        if col.proper and col.height >= need:
            inp.notes.append(f"seed {sd} used; failed seeds {failed}")
            return inp, col, failed
        failed.append(sd)
        log.info("seed %s fails the height bar (ht J = %s)", sd, col.height)
    raise HypothesisError(f"no seed among {seed}..{seed + attempts - 1} gives ht(J) >= {need}")
