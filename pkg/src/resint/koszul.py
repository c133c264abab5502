"""Koszul complexes, exterior algebra elements, proper sequences, sliding
depth, and the symmetric algebra of an ideal."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import HypothesisError, NotGradedError
from .groebner import Ideal
from .invariants import depth_regularity, krull_dim
from .modules import (GradedFreeModule, GradedMap, SubquotientModule, betti_table,
                      column_degree, minimal_free_resolution, presentation_of_ideal,
                      syzygy_kernel)
from .polynomial import PolyRing, Polynomial

Subset = Tuple[int, ...]


def subsets(r: int, k: int) -> List[Subset]:
    return list(combinations(range(r), k))


def merge_sign(S: Subset, T: Subset) -> int:
    """Sign of the permutation sorting the concatenation S + T (disjoint)."""
    inv = 0
    for s in S:
        for t in T:
            if s > t:
                inv += 1
    return -1 if inv % 2 else 1


class WedgeElement:
    """Element of the exterior algebra on e_1..e_r: sorted subset -> coefficient."""

    __slots__ = ("ring", "r", "coeffs")

    def __init__(self, ring: PolyRing, r: int, coeffs: Dict[Subset, Polynomial]):
        self.ring = ring
        self.r = r
        self.coeffs = {tuple(S): c for S, c in coeffs.items() if c.terms}
        for S in self.coeffs:
            if list(S) != sorted(set(S)):
                raise ValueError("wedge basis subsets must be strictly increasing")

    @classmethod
    def from_vector(cls, ring, r, k, column: Sequence[Polynomial]) -> "WedgeElement":
        return cls(ring, r, dict(zip(subsets(r, k), column)))

    @classmethod
    def basis(cls, ring, r, S) -> "WedgeElement":
        return cls(ring, r, {tuple(S): ring.one()})

    def degree(self) -> Optional[int]:
        ks = {len(S) for S in self.coeffs}
        if len(ks) > 1:
            raise ValueError("mixed exterior degrees")
        return ks.pop() if ks else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        out = dict(self.coeffs)
        for S, c in other.coeffs.items():
            out[S] = out[S] + c if S in out else c
        return WedgeElement(self.ring, self.r, out)

    def scale(self, f: Polynomial) -> "WedgeElement":
        return WedgeElement(self.ring, self.r, {S: f * c for S, c in self.coeffs.items()})

    def wedge(self, other: "WedgeElement") -> "WedgeElement":
        out: Dict[Subset, Polynomial] = {}
        for S, a in self.coeffs.items():
            setS = set(S)
            for T, b in other.coeffs.items():
                if setS.intersection(T):
                    continue
                U = tuple(sorted(S + T))
                term = a * b
                if merge_sign(S, T) < 0:
                    term = -term
                out[U] = out[U] + term if U in out else term
        return WedgeElement(self.ring, self.r, out)

    __xor__ = wedge

    def to_vector(self, k: int) -> Tuple[Polynomial, ...]:
        return tuple(self.coeffs.get(S, self.ring.zero()) for S in subsets(self.r, k))

    def __eq__(self, other):
        return isinstance(other, WedgeElement) and self.coeffs == other.coeffs

    def __repr__(self):
        parts = [f"({c})*e{''.join(str(i + 1) for i in S) or '0'}" for S, c in sorted(self.coeffs.items())]
        return " + ".join(parts) or "0"


def wedge_product(elts: Sequence[WedgeElement]) -> WedgeElement:
    if not elts:
        raise ValueError("empty wedge product")
    acc = elts[0]
    for e in elts[1:]:
        acc = acc.wedge(e)
    return acc


def wedge_coefficient(elts: Sequence[WedgeElement], r: Optional[int] = None) -> Polynomial:
    """Coefficient of e_1∧…∧e_r in the wedge product of ``elts``."""
    if not elts:
        raise ValueError("empty wedge product")
    r = elts[0].r if r is None else r
    total = 0
    for e in elts:
        d = e.degree()
        if d is None:
            return elts[0].ring.zero()
        total += d
    if total != r:
        raise ValueError(f"exterior degrees sum to {total}, expected {r}")
    prod = wedge_product(elts)
    return prod.coeffs.get(tuple(range(r)), elts[0].ring.zero())


# --------------------------------------------------------------------------
# Koszul complex


def koszul_differential(ring: PolyRing, f: Sequence[Polynomial], i: int,
                        degrees: Sequence[int]) -> GradedMap:
    """δ_i : K_i -> K_{i-1} on subset bases, e_D ↦ Σ_k (-1)^k f_{D_k} e_{D minus D_k}."""
    r = len(f)
    src = subsets(r, i)
    tgt = subsets(r, i - 1)
    tindex = {S: k for k, S in enumerate(tgt)}
    cols = []
    for D in src:
        col = [ring.zero() for _ in tgt]
        for k, t in enumerate(D):
            rest = D[:k] + D[k + 1:]
            col[tindex[rest]] = f[t] if k % 2 == 0 else -f[t]
        cols.append(tuple(col))
    sdeg = tuple(sum(degrees[t] for t in D) for D in src)
    tdeg = tuple(sum(degrees[t] for t in D) for D in tgt)
    return GradedMap(GradedFreeModule(ring, sdeg), GradedFreeModule(ring, tdeg), cols)


class KoszulData:
    """Koszul complex of ``f`` over ``R = P/Q`` with lazily computed Z_i, B_i, H_i."""

    def __init__(self, ring: PolyRing, f: Sequence[Polynomial], quotient: Sequence[Polynomial] = ()):
        if not f:
            raise ValueError("Koszul complex needs a nonempty sequence")
        self.ring = ring
        self.f = tuple(f)
        self.quotient = tuple(quotient)
        self.r = len(f)
        self.degrees = tuple(g.degree() or 0 for g in f)
        self.differentials = {i: koszul_differential(ring, f, i, self.degrees)
                              for i in range(1, self.r + 1)}
        self._cycles: Dict[int, List[Tuple[Polynomial, ...]]] = {}
        self._homology: Dict[int, SubquotientModule] = {}

    def module(self, i: int) -> GradedFreeModule:
        if i == 0:
            return GradedFreeModule(self.ring, (0,))
        return self.differentials[i].source

    def cycles(self, i: int) -> List[Tuple[Polynomial, ...]]:
        """Generators of Z_i (minimal in the graded case), as vectors on the subset basis."""
        if i not in self._cycles:
            if i == 0:
                self._cycles[0] = [(self.ring.one(),)]
            else:
                self._cycles[i] = list(syzygy_kernel(self.differentials[i], self.quotient).columns)
        return self._cycles[i]

    def cycle_wedges(self, i: int) -> List[WedgeElement]:
        return [WedgeElement.from_vector(self.ring, self.r, i, z) for z in self.cycles(i)]

    def boundaries(self, i: int) -> List[Tuple[Polynomial, ...]]:
        if i >= self.r:
            return []
        return list(self.differentials[i + 1].columns)

    def homology(self, i: int) -> SubquotientModule:
        if i not in self._homology:
            self._homology[i] = SubquotientModule(self.module(i), self.cycles(i),
                                                  self.boundaries(i), self.quotient)
        return self._homology[i]

    def cycle_module(self, i: int) -> SubquotientModule:
        """Z_i as a submodule of K_i (no relations beyond Q)."""
        return SubquotientModule(self.module(i), self.cycles(i), (), self.quotient)

    def homology_vanishes(self, i: int) -> bool:
        return self.homology(i).is_zero()

    @cached_property
    def grade(self) -> int:
        """r - max{i : H_i != 0}; r + 1 stands for the unit ideal (all H_i = 0)."""
        for i in range(self.r, -1, -1):
            if not self.homology_vanishes(i):
                return self.r - i
        return self.r + 1

    def is_complex(self) -> bool:
        for i in range(2, self.r + 1):
            if not self.differentials[i - 1].compose(self.differentials[i]).is_zero():
                return False
        return True


def koszul_complex(ring: PolyRing, f: Sequence[Polynomial], quotient=()) -> KoszulData:
    return KoszulData(ring, f, quotient)


# --------------------------------------------------------------------------
# proper sequences and sliding depth


@dataclass
class ProperSequenceResult:
    holds: bool
    witness: Optional[Tuple[int, int, tuple]] = None   # (i, j, cycle) on failure

    def __bool__(self):
        return self.holds


def proper_sequence_check(ring: PolyRing, f: Sequence[Polynomial], quotient=()) -> ProperSequenceResult:
    """f_{i+1} H_j(f_1..f_i) = 0 for all j >= 1 and i = 0..r-1, in the given order."""
    for i in range(1, len(f)):
        K = KoszulData(ring, f[:i], quotient)
        nxt = f[i]
        for j in range(1, i + 1):
            H = K.homology(j)
            rb = H.relation_basis()
            for z in K.cycles(j):
                if not rb.contains(tuple(nxt * c for c in z)):
                    return ProperSequenceResult(False, (i, j, tuple(str(c) for c in z)))
    return ProperSequenceResult(True)


def module_depth(M: SubquotientModule) -> float:
    """depth over P via the minimal resolution; inf for the zero module."""
    if M.is_zero():
        return float("inf")
    return depth_regularity(M).depth


def sliding_depth_check(ring: PolyRing, f: Sequence[Polynomial], k: int = 0,
                        variant: str = "SD", quotient=(), koszul: Optional[KoszulData] = None) -> bool:
    """SD_k: depth H_i >= d - r + i + k; SDC_k: the same for Z_i; for i <= r - g."""
    if variant not in ("SD", "SDC"):
        raise ValueError("variant must be 'SD' or 'SDC'")
    K = koszul or KoszulData(ring, f, quotient)
    d = krull_dim(Ideal(ring, [], quotient))
    r = K.r
    g = K.grade
    for i in range(0, r - g + 1):
        M = K.homology(i) if variant == "SD" else K.cycle_module(i)
        if module_depth(M) < d - r + i + k:
            return False
    return True


# --------------------------------------------------------------------------
# symmetric algebra


@dataclass
class SymPresentation:
    ring: PolyRing                     # R
    sring: PolyRing                    # S = R[t_1..t_r]
    f: Tuple[Polynomial, ...]
    presentation: GradedMap            # syzygy matrix B of f (over R)
    relations: Tuple[Polynomial, ...]  # generators of the defining ideal of Sym(I)
    quotient: Tuple[Polynomial, ...] = ()

    def t_vars(self) -> List[Polynomial]:
        n = self.ring.nvars
        return [self.sring.var(n + i) for i in range(len(self.f))]

    def lift(self, g: Polynomial) -> Polynomial:
        return g.map_to(self.sring, list(range(self.ring.nvars)))

    def gammas(self, Phi: Sequence[Sequence[Polynomial]]) -> List[Polynomial]:
        """γ_j = Σ_i c_ij t_i for the r×s matrix Φ."""
        t = self.t_vars()
        s = len(Phi[0]) if Phi else 0
        out = []
        for j in range(s):
            acc = self.sring.zero()
            for i in range(len(self.f)):
                acc = acc + self.lift(Phi[i][j]) * t[i]
            out.append(acc)
        return out

    def bidegree(self, g: Polynomial) -> Tuple[int, int]:
        """(t-degree, R-degree) of a bihomogeneous element."""
        td, total = g.bidegree()
        return td, total - td

    def ideal(self) -> Ideal:
        q = [self.lift(x) for x in self.quotient]
        return Ideal(self.sring, self.relations, q)


def symmetric_ring(ring: PolyRing, degrees: Sequence[int]) -> PolyRing:
    """R[t_1..t_r] with t_i of weight d_i + 1 and t-degree 1 (x's have t-degree 0)."""
    r = len(degrees)
    names = [f"t{i + 1}" for i in range(r)]
    while any(n in ring.names for n in names):
        names = ["_" + n for n in names]
    tw = (0,) * ring.nvars + (1,) * r
    return ring.extend(names, [d + 1 for d in degrees], t_weights=tw)


def symmetric_algebra(ring: PolyRing, f: Sequence[Polynomial], quotient=()) -> SymPresentation:
    I = Ideal(ring, f, quotient)
    if not I.is_homogeneous():
        raise NotGradedError("symmetric algebra needs homogeneous generators")
    degrees = [g.degree() for g in f]
    S = symmetric_ring(ring, degrees)
    B = presentation_of_ideal(I)
    n = ring.nvars
    pos = list(range(n))
    t = [S.var(n + i) for i in range(len(f))]
    rels = []
    for col in B.columns:
        acc = S.zero()
        for i, b in enumerate(col):
            if b.terms:
                acc = acc + b.map_to(S, pos) * t[i]
        if acc.terms:
            rels.append(acc)
    return SymPresentation(ring, S, tuple(f), B, tuple(rels), tuple(quotient))


@dataclass
class SymBetti:
    table: Dict[Tuple[int, int, int], int]   # (homological index, t-degree, R-degree) -> rank
    t_regularity: int
    pd: int

    def pieces(self, i: int) -> List[Tuple[int, int]]:
        """Multiset of (t-degree, R-degree) twists in homological degree i."""
        out = []
        for (h, t, d), v in sorted(self.table.items()):
            if h == i:
                out.extend([(t, d)] * v)
        return out


def _column_bidegrees(res, sym: SymPresentation) -> List[List[Tuple[int, int]]]:
    """(t, R) bidegrees of every basis vector of every module in the resolution."""
    mods = res.modules()
    bideg = [[(0, 0)] * mods[0].rank]
    for d in res.maps:
        cur = []
        for col in d.columns:
            found = None
            for k, g in enumerate(col):
                if g.terms:
                    td, rd = sym.bidegree(g)
                    if not g.is_homogeneous():
                        raise NotGradedError("resolution entry is not homogeneous")
                    bt, br = bideg[-1][k]
                    found = (td + bt, rd + br)
                    break
            cur.append(found or (0, 0))
        bideg.append(cur)
    return bideg


def sym_bigraded_betti(ring: PolyRing, f: Sequence[Polynomial],
                       sym: Optional[SymPresentation] = None) -> SymBetti:
    """Bigraded Betti numbers of Sym(I) = S/L over the polynomial ring S."""
    sym = sym or symmetric_algebra(ring, f)
    if sym.quotient:
        raise HypothesisError("bigraded Betti numbers over S need a polynomial base ring")
    res = minimal_free_resolution(Ideal(sym.sring, sym.relations))
    bideg = _column_bidegrees(res, sym)
    table: Dict[Tuple[int, int, int], int] = {}
    for i, mods in enumerate(bideg):
        for td, rd in mods:
            table[(i, td, rd)] = table.get((i, td, rd), 0) + 1
    treg = max(t - i for (i, t, _d) in table)
    return SymBetti(table, treg, res.length)


def cycle_betti_pieces(K: KoszulData) -> Dict[Tuple[int, int, int], int]:
    """Σ_j β^R_{i-j}(Z_j) as (i, t=j, R-degree) -> rank, from minimal R-resolutions of the Z_j.

    Over a quotient ring only free Z_j are supported (their resolution is a
    single term); otherwise HypothesisError.
    """
    table: Dict[Tuple[int, int, int], int] = {}
    for j in range(0, K.r + 1):
        Z = K.cycle_module(j)
        if Z.is_zero():
            continue
        if K.quotient:
            pres = Z.presentation(over_quotient=True)
            if pres.source.rank:
                raise HypothesisError(f"Z_{j} is not free over the quotient ring")
            for d in pres.target.degrees:
                table[(j, j, d)] = table.get((j, j, d), 0) + 1
            continue
        res = minimal_free_resolution(Z)
        for (h, d), v in betti_table(res).items():
            key = (h + j, j, d)
            table[key] = table.get(key, 0) + v
    return table
