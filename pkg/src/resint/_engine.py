"""Buchberger engine on raw vectors.

A vector is a ``dict`` mapping a monomial tuple ``(e_1, ..., e_n, c)`` to a
nonzero coefficient, where ``c`` is the component index (always 0 for
ideals).  Everything here is internal; :mod:`resint.groebner` and
:mod:`resint.modules` wrap it.

Coefficients are ints mod ``p`` when ``p > 0`` and ``Fraction`` otherwise.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from operator import add, sub
from typing import Dict, List, Optional, Sequence

from . import config
from .errors import ResourceLimitError
from .polynomial import GREVLEX, MonomialOrder

Vec = Dict[tuple, object]


class VecOrder:
    """Monomial order on ``P^rank`` (or on ``P`` when all components are 0).

    ``module`` selects term-over-position (``top``) or position-over-term
    (``pot``).  Components ``>= split`` form a lower block: any vector whose
    lead lies there has no terms in the components ``< split``.
    """

    def __init__(self, n: int, base: MonomialOrder = GREVLEX, weights=None,
                 module: str = "top", twists=None, split: Optional[int] = None):
        self.n = n
        self.base = base
        self.weights = tuple(weights) if weights is not None else (1,) * n
        self.module = module
        self.twists = tuple(twists) if twists is not None else None
        self.split = split
        self._cache: Dict[tuple, tuple] = {}
        self.key = self._build()

    def _build(self):
        n, w, tw, split = self.n, self.weights, self.twists, self.split
        cache = self._cache
        rev = tuple(range(n - 1, -1, -1))
        kind = self.base.kind
        if kind in ("grevlex", "wgrevlex"):
            if kind == "wgrevlex":
                w = self.base.weights

            def raw(m):
                c = m[n]
                d = sum(map(lambda a, b: a * b, w, m))
                if tw is not None:
                    d += tw[c]
                rest = tuple(m[i] for i in rev)
                if self.module == "pot":
                    k = (c, -d) + rest
                else:
                    k = (-d,) + rest + (c,)
                if split is not None:
                    k = (c >= split,) + k
                return k
        else:
            bk = self.base.key_function(n)

            def raw(m):
                c = m[n]
                if self.module == "pot":
                    k = (c,) + bk(m[:n])
                else:
                    k = bk(m[:n]) + (c,)
                if split is not None:
                    k = (c >= split,) + k
                return k

        def key(m):
            k = cache.get(m)
            if k is None:
                k = cache[m] = raw(m)
            return k
        return key

    def degree(self, m) -> int:
        d = sum(map(lambda a, b: a * b, self.weights, m))
        if self.twists is not None:
            d += self.twists[m[-1]]
        return d


# --------------------------------------------------------------------------
# small vector helpers


def lead(f: Vec, key):
    return min(f, key=key)


def vdegree(f: Vec, order: VecOrder) -> int:
    return max(order.degree(m) for m in f)


def is_homogeneous(f: Vec, order: VecOrder) -> bool:
    it = iter(f)
    d = order.degree(next(it))
    return all(order.degree(m) == d for m in it)


def make_monic(f: Vec, key, p: int) -> Vec:
    lm = lead(f, key)
    c = f[lm]
    if c == 1:
        return f
    if p:
        inv = pow(c, -1, p)
        return {m: v * inv % p for m, v in f.items()}
    c = Fraction(c)
    return {m: v / c for m, v in f.items()}


def vadd(f: Vec, g: Vec, p: int, scale=1) -> Vec:
    out = dict(f)
    for m, c in g.items():
        v = out.get(m, 0) + scale * c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def vmul_poly(f: Vec, g: Vec, p: int) -> Vec:
    """Multiply vector ``f`` by polynomial ``g`` (component-0 monomials)."""
    out: Vec = {}
    for m2, c2 in g.items():
        t = m2[:-1] + (0,)
        for m1, c1 in f.items():
            m = tuple(map(add, m1, t))
            out[m] = out.get(m, 0) + c1 * c2
    if p:
        return {m: c % p for m, c in out.items() if c % p}
    return {m: c for m, c in out.items() if c}


def mask_of(m) -> int:
    b = 0
    for i, e in enumerate(m[:-1]):
        if e:
            b |= 1 << i
    return b


def divides(a, b) -> bool:
    """Monomial ``a`` divides ``b`` (same component)."""
    return a[-1] == b[-1] and all(map(lambda x, y: x <= y, a, b))


def lcm(a, b):
    return tuple(map(max, a[:-1], b[:-1])) + (a[-1],)


def coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a[:-1], b[:-1]))


# --------------------------------------------------------------------------
# reducer set


class Reducers:
    """Growing list of monic vectors usable for reduction."""

    def __init__(self, key, p: int):
        self.key = key
        self.p = p
        self.polys: List[Vec] = []
        self.leads: List[tuple] = []
        self.masks: List[int] = []
        self.by_comp: Dict[int, List[int]] = {}
        self._cache: Dict[tuple, tuple] = {}

    def add(self, f: Vec) -> int:
        lm = lead(f, self.key)
        idx = len(self.polys)
        self.polys.append(f)
        self.leads.append(lm)
        self.masks.append(mask_of(lm))
        self.by_comp.setdefault(lm[-1], []).append(idx)
        return idx

    def find(self, m) -> int:
        """Index of the first reducer whose lead divides ``m`` (-1 if none)."""
        hit = self._cache.get(m)
        cands = self.by_comp.get(m[-1])
        if not cands:
            return -1
        start = 0
        if hit is not None:
            if hit[0] >= 0:
                return hit[0]
            start = hit[1]
        if start >= len(cands):
            return -1
        mm = mask_of(m)
        leads, masks = self.leads, self.masks
        for pos in range(start, len(cands)):
            i = cands[pos]
            if masks[i] & ~mm:
                continue
            if all(map(lambda x, y: x <= y, leads[i], m)):
                self._cache[m] = (i, pos)
                return i
        self._cache[m] = (-1, len(cands))
        return -1

    def reduce(self, f: Vec, full: bool = True) -> Vec:
        """Remainder of ``f``; with ``full`` every term is reduced."""
        key, p = self.key, self.p
        f = dict(f)
        heap = [(key(m), m) for m in f]
        heapq.heapify(heap)
        rem: Vec = {}
        polys, leads = self.polys, self.leads
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            i = self.find(m)
            if i < 0:
                rem[m] = c
                if not full:
                    for mm in f:
                        rem[mm] = f[mm]
                    return rem
                continue
            g = polys[i]
            q = tuple(map(sub, m, leads[i]))
            lm = leads[i]
            if p:
                for mg, cg in g.items():
                    if mg == lm:
                        continue
                    mm = tuple(map(add, mg, q))
                    old = f.get(mm)
                    if old is None:
                        v = (-c * cg) % p
                        f[mm] = v
                        heapq.heappush(heap, (key(mm), mm))
                    else:
                        v = (old - c * cg) % p
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
            else:
                for mg, cg in g.items():
                    if mg == lm:
                        continue
                    mm = tuple(map(add, mg, q))
                    old = f.get(mm)
                    if old is None:
                        f[mm] = -c * cg
                        heapq.heappush(heap, (key(mm), mm))
                    else:
                        v = old - c * cg
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
        return rem


# --------------------------------------------------------------------------
# Buchberger


class GBResult:
    __slots__ = ("basis", "mingens", "order", "p")

    def __init__(self, basis, mingens, order, p):
        self.basis = basis
        self.mingens = mingens
        self.order = order
        self.p = p


def groebner(gens: Sequence[Vec], order: VecOrder, p: int,
             limits: Optional[config.Limits] = None,
             minimal_generators: bool = False,
             preseed: Sequence[Vec] = ()) -> GBResult:
    """Reduced Gröbner basis of the span of ``gens``.

    Pairs are handled with the Gebauer-Möller criteria and selected by
    sugar, then by lcm in the order; input generators are queued by degree
    after the S-pairs of the same degree.  For homogeneous input the
    generators that survive reduction form a minimal generating set
    (returned in ``mingens``).  ``preseed`` vectors (a quotient's defining
    relations) are queued ahead of ``gens`` in each degree and never
    reported as minimal generators.
    """
    limits = limits or config.current_limits()
    key = order.key
    npre = len([g for g in preseed if g])
    gens = [g for g in preseed if g] + [g for g in gens if g]
    red = Reducers(key, p)
    is_module = any(m[-1] for g in gens for m in g)
    sugar: List[int] = []
    alive: List[bool] = []       # current minimal-lead elements
    queue: list = []
    seq = 0
    for gi, g in enumerate(gens):
        d = vdegree(g, order)
        heapq.heappush(queue, (d, 1 if gi < npre else 2, key(lead(g, key)), seq, gi, -1))
        seq += 1
    pairs_alive: Dict[tuple, tuple] = {}
    mingens: List[Vec] = []
    processed = 0

    def add_element(h: Vec, s: int):
        nonlocal seq
        k = red.add(h)
        sugar.append(s)
        alive.append(True)
        lh = red.leads[k]
        comp = lh[-1]
        # Gebauer-Möller update
        cands = [i for i in red.by_comp.get(comp, ()) if i != k and alive[i]]
        C = [(i, lcm(lh, red.leads[i])) for i in cands]
        D = []
        while C:
            i, L = C.pop(0)
            if (not is_module and coprime(lh, red.leads[i])):
                D.append((i, L, True))
                continue
            if any(divides(L2, L) for _, L2 in C) or any(divides(L2, L) for _, L2, _ in D):
                continue
            D.append((i, L, False))
        # chain criterion on old pairs
        for pk in list(pairs_alive):
            i, j = pk
            L = pairs_alive[pk][0]
            if L[-1] != comp or not divides(lh, L):
                continue
            if lcm(red.leads[i], lh) != L and lcm(red.leads[j], lh) != L:
                del pairs_alive[pk]
        for i, L, prod in D:
            if prod:
                continue
            li, lk = red.leads[i], lh
            si = sugar[i] + order.degree(L) - order.degree(li)
            sk = s + order.degree(L) - order.degree(lk)
            sg = max(si, sk)
            pairs_alive[(i, k)] = (L,)
            heapq.heappush(queue, (sg, 0, key(L), seq, i, k))
            seq += 1
        for i in cands:
            if divides(lh, red.leads[i]):
                alive[i] = False

    while queue:
        s, kind, _, _, i, j = heapq.heappop(queue)
        if kind:
            f = gens[i]
        else:
            if (i, j) not in pairs_alive:
                continue
            del pairs_alive[(i, j)]
            processed += 1
            if processed > limits.max_pairs:
                raise ResourceLimitError(f"S-pair limit {limits.max_pairs} exceeded")
            f = spoly(red, i, j, p)
            if not f:
                continue
        h = red.reduce(f)
        if not h:
            continue
        h = make_monic(h, key, p)
        dh = vdegree(h, order)
        if dh > limits.max_degree:
            raise ResourceLimitError(f"degree limit {limits.max_degree} exceeded (degree {dh})")
        if kind == 2:
            mingens.append(h)
        add_element(h, max(s, dh))

    basis = [red.polys[i] for i in range(len(red.polys)) if alive[i]]
    basis = interreduce(basis, key, p)
    return GBResult(basis, mingens if minimal_generators else None, order, p)


def spoly(red: Reducers, i: int, j: int, p: int) -> Vec:
    li, lj = red.leads[i], red.leads[j]
    L = lcm(li, lj)
    qi = tuple(map(sub, L, li))
    qj = tuple(map(sub, L, lj))
    out: Vec = {}
    for m, c in red.polys[i].items():
        out[tuple(map(add, m, qi))] = c
    for m, c in red.polys[j].items():
        mm = tuple(map(add, m, qj))
        v = out.get(mm, 0) - c
        if p:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def interreduce(basis: Sequence[Vec], key, p: int) -> List[Vec]:
    """Minimal, tail-reduced, monic, sorted by lead."""
    items = sorted(((lead(g, key), g) for g in basis if g), key=lambda t: key(t[0]))
    kept = []
    for lm, g in items:
        if any(divides(l2, lm) for l2, _ in kept):
            continue
        kept.append((lm, g))
    out = []
    for idx, (lm, g) in enumerate(kept):
        red = Reducers(key, p)
        for j, (_, h) in enumerate(kept):
            if j != idx:
                red.add(h)
        tail = dict(g)
        c = tail.pop(lm)
        r = red.reduce(tail) if tail else {}
        r[lm] = c
        out.append(make_monic(r, key, p))
    return out


def normal_form(f: Vec, basis: Sequence[Vec], key, p: int) -> Vec:
    red = Reducers(key, p)
    for g in basis:
        red.add(g)
    return red.reduce(f)


def reducer_set(basis: Sequence[Vec], key, p: int) -> Reducers:
    red = Reducers(key, p)
    for g in basis:
        red.add(g)
    return red
