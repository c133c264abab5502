"""Graded free modules, maps, syzygies, minimal resolutions, minors and Ext.

All module computations run over the polynomial ambient ``P``.  A module
over ``R = P/Q`` is handled as a ``P``-module by appending ``q·e_k`` for
every generator ``q`` of ``Q`` and every basis vector ``e_k``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import _engine as E
from .errors import NotGradedError
from .groebner import Ideal, from_vec, to_vec
from .polynomial import PolyRing, Polynomial

Column = Tuple[Polynomial, ...]


@dataclass(frozen=True)
class GradedFreeModule:
    """``⊕ P(-a_i)``; ``degrees[i] = a_i`` is the degree of the i-th basis vector."""

    ring: PolyRing
    degrees: Tuple[int, ...]
    t_degrees: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if self.t_degrees is not None:
            object.__setattr__(self, "t_degrees", tuple(self.t_degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def dual(self) -> "GradedFreeModule":
        td = tuple(-d for d in self.t_degrees) if self.t_degrees is not None else None
        return GradedFreeModule(self.ring, tuple(-d for d in self.degrees), td)

    def twists(self) -> List[int]:
        """Twists in ``P(t)`` notation (negated degrees)."""
        return [-d for d in self.degrees]


def column_degree(col: Sequence[Polynomial], target: GradedFreeModule) -> Optional[int]:
    """Degree of a homogeneous column, or None for the zero column."""
    for f, d in zip(col, target.degrees):
        if f.terms:
            return f.degree() + d
    return None


def column_bidegree(col, target: GradedFreeModule):
    for k, (f, d) in enumerate(zip(col, target.degrees)):
        if f.terms:
            td, deg = f.bidegree()
            base_t = target.t_degrees[k] if target.t_degrees is not None else 0
            return td + base_t, deg + d
    return None


def col_to_vec(col: Sequence[Polynomial], offset: int = 0) -> E.Vec:
    v: E.Vec = {}
    for k, f in enumerate(col):
        for m, c in f.terms.items():
            v[m + (k + offset,)] = c
    return v


def vec_to_col(v: E.Vec, ring: PolyRing, rank: int, offset: int = 0) -> Column:
    parts: List[dict] = [{} for _ in range(rank)]
    for m, c in v.items():
        parts[m[-1] - offset][m[:-1]] = c
    return tuple(Polynomial(ring, t, False) for t in parts)


class GradedMap:
    """Matrix of polynomials; column j is the image of source basis vector j."""

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule,
                 columns: Sequence[Sequence[Polynomial]]):
        self.source = source
        self.target = target
        self.columns: Tuple[Column, ...] = tuple(tuple(c) for c in columns)
        if len(self.columns) != source.rank:
            raise ValueError("one column per source basis vector required")
        if any(len(c) != target.rank for c in self.columns):
            raise ValueError("column length must equal target rank")

    @property
    def ring(self) -> PolyRing:
        return self.target.ring

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[Polynomial]],
                  target_degrees: Optional[Sequence[int]] = None,
                  source_degrees: Optional[Sequence[int]] = None) -> "GradedMap":
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        cols = [tuple(rows[i][j] for i in range(nr)) for j in range(nc)]
        tdeg = tuple(target_degrees) if target_degrees is not None else (0,) * nr
        target = GradedFreeModule(ring, tdeg)
        if source_degrees is None:
            source_degrees = []
            for c in cols:
                d = column_degree(c, target)
                source_degrees.append(0 if d is None else d)
        return cls(GradedFreeModule(ring, tuple(source_degrees)), target, cols)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def rows(self) -> List[List[Polynomial]]:
        return [[self.columns[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def is_graded(self) -> bool:
        for j, col in enumerate(self.columns):
            for i, f in enumerate(col):
                if not f.terms:
                    continue
                d, h = f.degree_info()
                if not h or d != self.source.degrees[j] - self.target.degrees[i]:
                    return False
        return True

    def apply(self, v: Sequence[Polynomial]) -> Column:
        ring = self.ring
        out = [ring.zero() for _ in range(self.target.rank)]
        for j, c in enumerate(v):
            if not c.terms:
                continue
            for i, f in enumerate(self.columns[j]):
                if f.terms:
                    out[i] = out[i] + c * f
        return tuple(out)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        return GradedMap(other.source, self.target, [self.apply(c) for c in other.columns])

    def transpose(self) -> "GradedMap":
        return GradedMap(self.target.dual(), self.source.dual(),
                         [tuple(self.columns[j][i] for j in range(self.source.rank))
                          for i in range(self.target.rank)])

    def is_zero(self, quotient: Sequence[Polynomial] = ()) -> bool:
        if not quotient:
            return all(not f.terms for c in self.columns for f in c)
        gb = Ideal(self.ring, quotient).groebner_basis()
        return all(gb.reduces_to_zero(f) for c in self.columns for f in c)

    def entries(self) -> List[Polynomial]:
        return [f for c in self.columns for f in c if f.terms]

    def __repr__(self):
        return f"GradedMap({self.target.rank}x{self.source.rank})"


# --------------------------------------------------------------------------
# module Gröbner bases


def _vorder(ring: PolyRing, degrees, split=None, module="top"):
    return E.VecOrder(ring.nvars, ring.order, ring.weights, module=module,
                      twists=degrees, split=split)


def _quotient_vecs(quotient: Sequence[Polynomial], rank: int, offset: int = 0) -> List[E.Vec]:
    out = []
    for k in range(rank):
        for q in quotient:
            out.append(to_vec(q, k + offset))
    return out


def _homogeneous_cols(cols, F: GradedFreeModule) -> bool:
    for col in cols:
        d = None
        for f, a in zip(col, F.degrees):
            for m in f.terms:
                dm = F.ring.degree_of(m) + a
                if d is None:
                    d = dm
                elif dm != d:
                    return False
    return True


class SubmoduleBasis:
    """Gröbner basis of ``span(cols) + Q·F`` inside the free module F."""

    def __init__(self, F: GradedFreeModule, cols: Sequence[Sequence[Polynomial]],
                 quotient: Sequence[Polynomial] = ()):
        self.F = F
        self.quotient = tuple(quotient)
        self.order = _vorder(F.ring, F.degrees)
        p = F.ring.characteristic
        gens = [col_to_vec(c) for c in cols]
        homog = _homogeneous_cols(cols, F) and all(q.is_homogeneous() for q in quotient)
        res = E.groebner(gens, self.order, p, minimal_generators=homog,
                         preseed=_quotient_vecs(quotient, F.rank))
        self.vecs = res.basis
        self.mingens = None
        if res.mingens is not None:
            self.mingens = [vec_to_col(v, F.ring, F.rank) for v in res.mingens]
        self._red = E.reducer_set(self.vecs, self.order.key, p)

    def reduce(self, col) -> Column:
        return vec_to_col(self._red.reduce(col_to_vec(col)), self.F.ring, self.F.rank)

    def contains(self, col) -> bool:
        return not self._red.reduce(col_to_vec(col))

    def leads_by_component(self) -> Dict[int, List[tuple]]:
        out: Dict[int, List[tuple]] = {k: [] for k in range(self.F.rank)}
        for v in self.vecs:
            m = E.lead(v, self.order.key)
            out[m[-1]].append(m[:-1])
        return out


def minimal_generators(F: GradedFreeModule, cols, quotient=()) -> List[Column]:
    """Minimal homogeneous generators of ``span(cols)`` modulo ``Q·F``."""
    if not cols:
        return []
    sb = SubmoduleBasis(F, cols, quotient)
    if sb.mingens is None:
        raise NotGradedError("minimal generators need homogeneous input")
    if not quotient:
        return sb.mingens
    qb = SubmoduleBasis(F, [], quotient)
    return [qb.reduce(c) for c in sb.mingens]


def syzygy_kernel(f: GradedMap, quotient: Sequence[Polynomial] = (),
                  minimal: bool = True) -> GradedMap:
    """Generators of ker(f) as the columns of a map into ``f.source``.

    Computed from a Gröbner basis of the graph ``{(f(e_j), e_j)}`` in an
    order that eliminates the target block.  Over ``P/Q`` the kernel is
    taken modulo ``Q·source``.
    """
    ring = f.ring
    p = ring.characteristic
    n, m = f.target.rank, f.source.rank
    if m == 0:
        return GradedMap(GradedFreeModule(ring, ()), f.source, [])
    degrees = tuple(f.target.degrees) + tuple(f.source.degrees)
    order = _vorder(ring, degrees, split=n)
    one = ring.one()
    gens = []
    for j, col in enumerate(f.columns):
        v = col_to_vec(col)
        v.update(to_vec(one, n + j))
        gens.append(v)
    pre = _quotient_vecs(quotient, n)
    res = E.groebner(gens, order, p, preseed=pre)
    kernel = []
    for v in res.basis:
        lm = E.lead(v, order.key)
        if lm[-1] >= n:
            kernel.append(vec_to_col(v, ring, m, offset=n))
    if quotient:
        qb = SubmoduleBasis(f.source, [], quotient)
        kernel = [c for c in (qb.reduce(c) for c in kernel) if any(x.terms for x in c)]
    graded = f.is_graded() and all(q.is_homogeneous() for q in quotient)
    if minimal and graded and kernel:
        kernel = minimal_generators(f.source, kernel, quotient)
    degs = []
    for c in kernel:
        d = column_degree(c, f.source)
        degs.append(0 if d is None else d)
    src = GradedFreeModule(ring, tuple(degs))
    if f.source.t_degrees is not None:
        src = GradedFreeModule(ring, tuple(degs), tuple(column_bidegree(c, f.source)[0] for c in kernel))
    return GradedMap(src, f.source, kernel)


# --------------------------------------------------------------------------
# subquotients


class SubquotientModule:
    """(span(generators) + span(relations)) / span(relations) inside a free module.

    ``quotient`` lists the generators of Q when the module lives over P/Q;
    ``Q·F`` is then part of the relations.
    """

    def __init__(self, ambient: GradedFreeModule, generators, relations=(), quotient=()):
        self.ambient = ambient
        self.generators: Tuple[Column, ...] = tuple(tuple(c) for c in generators)
        self.relations: Tuple[Column, ...] = tuple(tuple(c) for c in relations)
        self.quotient = tuple(quotient)
        self._rel_basis = None

    @property
    def ring(self) -> PolyRing:
        return self.ambient.ring

    @classmethod
    def cokernel(cls, f: GradedMap, quotient=()) -> "SubquotientModule":
        F = f.target
        ident = [tuple(F.ring.one() if i == j else F.ring.zero() for i in range(F.rank))
                 for j in range(F.rank)]
        return cls(F, ident, f.columns, quotient)

    @classmethod
    def ideal_quotient(cls, I: Ideal) -> "SubquotientModule":
        """R/I as the cyclic module P/(I+Q)."""
        F = GradedFreeModule(I.ring, (0,))
        return cls(F, [(I.ring.one(),)], [(g,) for g in I.gens], I.quotient)

    def relation_basis(self) -> SubmoduleBasis:
        if self._rel_basis is None:
            self._rel_basis = SubmoduleBasis(self.ambient, self.relations, self.quotient)
        return self._rel_basis

    def full_basis(self) -> SubmoduleBasis:
        return SubmoduleBasis(self.ambient, self.generators + self.relations, self.quotient)

    def is_zero(self) -> bool:
        rb = self.relation_basis()
        return all(rb.contains(g) for g in self.generators)

    def minimal_generators(self) -> List[Column]:
        """Minimal generators modulo the relations (graded input)."""
        rb = self.relation_basis()
        gens = [g for g in self.generators if not rb.contains(g)]
        if not gens:
            return []
        rel_cols = list(self.relations)
        F = self.ambient
        order = _vorder(F.ring, F.degrees)
        pre = [col_to_vec(c) for c in rel_cols] + _quotient_vecs(self.quotient, F.rank)
        res = E.groebner([col_to_vec(c) for c in gens], order, F.ring.characteristic,
                         minimal_generators=True, preseed=pre)
        if res.mingens is None:
            raise NotGradedError("minimal generators need homogeneous input")
        return [vec_to_col(v, F.ring, F.rank) for v in res.mingens]

    def presentation(self, over_quotient: bool = False) -> GradedMap:
        """Minimal presentation matrix ``P^m -> P^n`` with this module as cokernel.

        With ``over_quotient`` the relations are taken modulo ``Q`` (a
        presentation over ``P/Q``); otherwise ``Q·e_k`` are among the relations.
        """
        F = self.ambient
        ring = F.ring
        gens = self.minimal_generators()
        gdeg = []
        for c in gens:
            d = column_degree(c, F)
            gdeg.append(0 if d is None else d)
        G = GradedFreeModule(ring, tuple(gdeg))
        if not gens:
            return GradedMap(GradedFreeModule(ring, ()), G, [])
        rels = list(self.relations)
        if self.quotient and not over_quotient:
            rels += [vec_to_col(v, ring, F.rank) for v in _quotient_vecs(self.quotient, F.rank)]
        rdeg = []
        for c in rels:
            d = column_degree(c, F)
            rdeg.append(0 if d is None else d)
        big_src = GradedFreeModule(ring, tuple(gdeg) + tuple(rdeg))
        big = GradedMap(big_src, F, list(gens) + rels)
        K = syzygy_kernel(big, self.quotient if over_quotient else (), minimal=False)
        k = len(gens)
        proj = [c[:k] for c in K.columns]
        proj = [c for c in proj if any(x.terms for x in c)]
        if proj:
            proj = minimal_generators(G, proj, self.quotient if over_quotient else ())
        sdeg = []
        for c in proj:
            d = column_degree(c, G)
            sdeg.append(0 if d is None else d)
        return GradedMap(GradedFreeModule(ring, tuple(sdeg)), G, proj)


# --------------------------------------------------------------------------
# resolutions


class FreeResolution:
    """Maps ``d_1, d_2, ...`` with ``d_i : F_i -> F_{i-1}``."""

    def __init__(self, F0: GradedFreeModule, maps: Sequence[GradedMap]):
        self.F0 = F0
        self.maps = list(maps)

    @property
    def length(self) -> int:
        return len(self.maps)

    def modules(self) -> List[GradedFreeModule]:
        return [self.F0] + [d.source for d in self.maps]

    def ranks(self) -> List[int]:
        return [F.rank for F in self.modules()]

    def betti_table(self) -> Dict[Tuple[int, int], int]:
        return betti_table(self)

    def is_complex(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if not a.compose(b).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        for d in self.maps:
            for f in d.entries():
                if f.is_constant():
                    return False
        return True

    def regularity(self) -> int:
        return max(deg - i for (i, deg) in self.betti_table())

    def __repr__(self):
        return f"FreeResolution(ranks={self.ranks()})"


def minimal_free_resolution(M, max_length: Optional[int] = None) -> FreeResolution:
    """Minimal graded free resolution over the polynomial ambient.

    ``M`` is an :class:`Ideal` (resolving ``P/(I+Q)``) or a
    :class:`SubquotientModule` (resolved as a P-module).
    """
    if isinstance(M, Ideal):
        if not M.is_homogeneous():
            raise NotGradedError("resolution of a non-homogeneous ideal")
        M = SubquotientModule.ideal_quotient(M)
    ring = M.ring
    d1 = M.presentation()
    F0 = d1.target
    # lift Q into the presentation: over P the module is coker(d1) already
    maps = []
    if d1.source.rank:
        maps.append(d1)
    limit = ring.nvars + 1 if max_length is None else max_length
    cur = d1
    while cur.source.rank and len(maps) < limit:
        nxt = syzygy_kernel(cur)
        if not nxt.source.rank:
            break
        maps.append(nxt)
        cur = nxt
    return FreeResolution(F0, maps)


def betti_table(res: FreeResolution) -> Dict[Tuple[int, int], int]:
    """Graded Betti numbers ``{(i, degree): rank}``."""
    table: Counter = Counter()
    for i, F in enumerate(res.modules()):
        for d in F.degrees:
            table[(i, d)] += 1
    return dict(table)


def format_betti(table: Dict[Tuple[int, int], int]) -> str:
    """Macaulay2-style Betti diagram (rows are degree - index)."""
    if not table:
        return "0"
    cols = max(i for i, _ in table) + 1
    rows = sorted({d - i for i, d in table})
    lines = ["       " + " ".join(f"{i:>4}" for i in range(cols))]
    lines.append("total: " + " ".join(f"{sum(v for (i, _), v in table.items() if i == c):>4}"
                                      for c in range(cols)))
    for r in rows:
        cells = []
        for c in range(cols):
            v = table.get((c, r + c), 0)
            cells.append(f"{v if v else '.':>4}")
        lines.append(f"{r:>5}: " + " ".join(cells))
    return "\n".join(lines)


# --------------------------------------------------------------------------
# minors and Fitting ideals


def _det(rows: Tuple[int, ...], cols: Tuple[int, ...], A, memo, ring) -> Polynomial:
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        val = A[rows[0]][cols[0]]
    else:
        val = ring.zero()
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            a = A[r0][c]
            if not a.terms:
                continue
            sub = _det(rest, cols[:k] + cols[k + 1:], A, memo, ring)
            if not sub.terms:
                continue
            term = a * sub
            val = val + term if k % 2 == 0 else val - term
    memo[key] = val
    return val


def determinant(A: Sequence[Sequence[Polynomial]], ring: Optional[PolyRing] = None) -> Polynomial:
    n = len(A)
    if ring is None:
        ring = A[0][0].ring
    if n == 0:
        return ring.one()
    return _det(tuple(range(n)), tuple(range(n)), A, {}, ring)


def minors(A: Sequence[Sequence[Polynomial]], t: int, ring: PolyRing) -> List[Polynomial]:
    """All t×t minors (row subsets × column subsets in lexicographic order)."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    if t == 0:
        return [ring.one()]
    if t > min(nr, nc):
        return []
    memo: Dict = {}
    out = []
    for rs in combinations(range(nr), t):
        for cs in combinations(range(nc), t):
            d = _det(rs, cs, A, memo, ring)
            if d.terms:
                out.append(d)
    return out


def minors_ideal(A, t: int, ring: Optional[PolyRing] = None, quotient=()) -> Ideal:
    """I_t(A): (1) for t = 0, (0) when t exceeds a dimension of A."""
    if isinstance(A, GradedMap):
        ring = A.ring
        A = A.rows()
    if ring is None:
        ring = A[0][0].ring
    if t <= 0:
        return Ideal(ring, [ring.one()], quotient)
    return Ideal(ring, minors(A, t, ring), quotient)


def presentation_of_ideal(I: Ideal) -> GradedMap:
    """Syzygy matrix ``φ`` of the given generators: ``R^m -> R^r -> I -> 0``."""
    ring = I.ring
    degs = tuple(g.degree() or 0 for g in I.gens)
    row = GradedMap(GradedFreeModule(ring, degs), GradedFreeModule(ring, (0,)),
                    [(g,) for g in I.gens])
    return syzygy_kernel(row, I.quotient)


def fitting_ideal(M, i: int) -> Ideal:
    """Fitt_i(M) = I_{n-i}(presentation) for an n-generator presentation.

    ``M`` is a :class:`SubquotientModule`, an :class:`Ideal` (as a module,
    presented by its syzygies) or a presentation :class:`GradedMap`
    (together with its quotient context via ``(map, quotient)``).
    """
    quotient: Tuple[Polynomial, ...] = ()
    if isinstance(M, Ideal):
        quotient = M.quotient
        phi = presentation_of_ideal(M)
    elif isinstance(M, SubquotientModule):
        quotient = M.quotient
        phi = M.presentation(over_quotient=True)
    elif isinstance(M, tuple):
        phi, quotient = M
    else:
        phi = M
    ring = phi.ring
    n = phi.target.rank
    t = n - i
    if t <= 0:
        return Ideal(ring, [ring.one()], quotient)
    if phi.source.rank == 0:
        return Ideal(ring, [], quotient)
    return Ideal(ring, minors(phi.rows(), t, ring), quotient)


# --------------------------------------------------------------------------
# homology and Ext


def complex_homology(maps: Sequence[GradedMap], quotient=()) -> List[SubquotientModule]:
    """Homology of ``C_k -> ... -> C_1 -> C_0`` given ``maps = [d_1, ..., d_k]``.

    Returns ``[H_0, ..., H_k]`` as subquotients; raises ValueError when the
    maps do not compose or a composite is nonzero.
    """
    for a, b in zip(maps, maps[1:]):
        if a.source != b.target and a.source.rank != b.target.rank:
            raise ValueError("maps are not composable")
        if not a.compose(b).is_zero(quotient):
            raise ValueError("composition of consecutive maps is nonzero")
    out = []
    k = len(maps)
    for i in range(k + 1):
        if i == 0:
            C = maps[0].target if maps else None
            ring = C.ring
            cycles = [tuple(ring.one() if a == b else ring.zero() for a in range(C.rank))
                      for b in range(C.rank)]
        else:
            C = maps[i - 1].source
            cycles = list(syzygy_kernel(maps[i - 1], quotient, minimal=False).columns)
        bounds = list(maps[i].columns) if i < k else []
        out.append(SubquotientModule(C, cycles, bounds, quotient))
    return out


def ext_module(M, i: int, resolution: Optional[FreeResolution] = None) -> SubquotientModule:
    """Ext^i_P(M, P) as homology of the dualized minimal resolution."""
    res = resolution or minimal_free_resolution(M)
    mods = res.modules()
    ring = mods[0].ring
    if i < 0 or i > len(mods) - 1:
        empty = GradedFreeModule(ring, ())
        return SubquotientModule(empty, [], [])
    Fi_dual = mods[i].dual()
    if i < len(res.maps):
        dT = res.maps[i].transpose()          # F_i^* -> F_{i+1}^*
        cycles = list(syzygy_kernel(dT, minimal=False).columns)
    else:
        cycles = [tuple(ring.one() if a == b else ring.zero() for a in range(Fi_dual.rank))
                  for b in range(Fi_dual.rank)]
    if i >= 1:
        bounds = list(res.maps[i - 1].transpose().columns)   # F_{i-1}^* -> F_i^*
    else:
        bounds = []
    return SubquotientModule(Fi_dual, cycles, bounds)


def resolution_over_quotient(M, max_length: int) -> Tuple[Optional[int], List[int]]:
    """Minimal free resolution over ``R = P/Q`` truncated at ``max_length`` steps.

    Returns ``(pd_R, ranks)``; ``pd_R`` is None when the resolution has not
    terminated within the bound (over a singular R it may be infinite, so
    None is never a claim of infinite projective dimension).
    """
    if isinstance(M, Ideal):
        M = SubquotientModule.ideal_quotient(M)
    q = M.quotient
    d = M.presentation(over_quotient=True)
    ranks = [d.target.rank]
    if d.target.rank == 0:
        return 0, ranks
    if d.source.rank == 0:
        return 0, ranks
    ranks.append(d.source.rank)
    cur = d
    for step in range(1, max_length + 1):
        nxt = syzygy_kernel(cur, q)
        if not nxt.source.rank:
            return step, ranks
        ranks.append(nxt.source.rank)
        cur = nxt
    return None, ranks
