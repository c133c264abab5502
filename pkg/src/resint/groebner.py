"""Ideals, reduced Gröbner bases and the ideal calculus.

Quotient rings ``R = P/Q`` are never handled natively: an ideal carries the
generators of ``Q`` as its quotient context and every computation runs on
the lift ``I + Q`` in ``P``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import _engine as E
from .errors import RingMismatchError
from .polynomial import (GREVLEX, MonomialOrder, PolyRing, Polynomial,
                         elimination_order)


# --------------------------------------------------------------------------
# conversions between Polynomial and engine vectors


def to_vec(f: Polynomial, comp: int = 0) -> E.Vec:
    return {m + (comp,): c for m, c in f.terms.items()}


def from_vec(v: E.Vec, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {m[:-1]: c for m, c in v.items()}, False)


def vec_order(ring: PolyRing, order: Optional[MonomialOrder] = None, **kw) -> E.VecOrder:
    return E.VecOrder(ring.nvars, order or ring.order, ring.weights, **kw)


# --------------------------------------------------------------------------
# process-wide basis cache


class _BasisCache:
    def __init__(self):
        self._data = {}
        self._lock = threading.Lock()
        self.hits = 0

    def get(self, key):
        # dict reads are atomic under the GIL
        v = self._data.get(key)
        if v is not None:
            self.hits += 1
        return v

    def put(self, key, value):
        with self._lock:
            self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()


BASIS_CACHE = _BasisCache()


# --------------------------------------------------------------------------


class GroebnerBasis:
    """Reduced Gröbner basis of ``gens (+ Q)`` for one monomial order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, vecs: List[E.Vec],
                 quotient_context: bool = False, mingens=None):
        self.ring = ring
        self.order = order
        self.quotient_context = quotient_context
        self._vecs = vecs
        self._vorder = vec_order(ring, order)
        self._reducers = None
        self.elements = [from_vec(v, ring) for v in vecs]
        self.mingens = mingens

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]})"

    @property
    def reducers(self) -> E.Reducers:
        if self._reducers is None:
            self._reducers = E.reducer_set(self._vecs, self._vorder.key, self.ring.characteristic)
        return self._reducers

    def leading_monomials(self) -> List[tuple]:
        return [E.lead(v, self._vorder.key)[:-1] for v in self._vecs]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
        if not f.terms:
            return f
        return from_vec(self.reducers.reduce(to_vec(f)), self.ring)

    def reduces_to_zero(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in m) for m in self.leading_monomials())

    def verify(self) -> bool:
        """Re-check that every S-pair reduces to zero."""
        red = self.reducers
        for i in range(len(self._vecs)):
            for j in range(i + 1, len(self._vecs)):
                if red.leads[i][-1] != red.leads[j][-1]:
                    continue
                s = E.spoly(red, i, j, self.ring.characteristic)
                if s and red.reduce(s):
                    return False
        return True


def compute_basis(ring: PolyRing, gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
                  preseed: Sequence[Polynomial] = ()) -> GroebnerBasis:
    order = order or ring.order
    key = (ring, order, tuple(gens), tuple(preseed))
    hit = BASIS_CACHE.get(key)
    if hit is not None:
        return hit
    vo = vec_order(ring, order)
    homog = all(f.is_homogeneous() for f in list(gens) + list(preseed))
    res = E.groebner([to_vec(f) for f in gens], vo, ring.characteristic,
                     minimal_generators=homog, preseed=[to_vec(f) for f in preseed])
    mingens = None
    if res.mingens is not None:
        mingens = [from_vec(v, ring) for v in res.mingens]
    gb = GroebnerBasis(ring, order, res.basis, bool(preseed), mingens)
    BASIS_CACHE.put(key, gb)
    return gb


# --------------------------------------------------------------------------
# ideals


class Ideal:
    """Ideal of ``P`` or of ``R = P/Q`` (``quotient`` lists Q's generators)."""

    def __init__(self, ring: PolyRing, gens: Iterable = (), quotient: Sequence[Polynomial] = ()):
        self.ring = ring
        gl = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring(g) if isinstance(g, str) else ring.const(g)
            if g.ring != ring:
                raise RingMismatchError("generator outside the ideal's ring")
            gl.append(g)
        self.gens: Tuple[Polynomial, ...] = tuple(gl)
        self.quotient: Tuple[Polynomial, ...] = tuple(quotient)
        self._gb = {}

    # -- basics
    def __repr__(self):
        q = f" mod ({', '.join(map(str, self.quotient))})" if self.quotient else ""
        return f"Ideal({', '.join(map(str, self.gens))}){q}"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def lifted_gens(self) -> List[Polynomial]:
        return list(self.gens) + list(self.quotient)

    def lift(self) -> "Ideal":
        """The ideal ``I + Q`` of the polynomial ambient."""
        return Ideal(self.ring, self.lifted_gens())

    def like(self, gens) -> "Ideal":
        """New ideal in the same ring and quotient context."""
        return Ideal(self.ring, gens, self.quotient)

    def ambient(self) -> "Ideal":
        """The zero ideal of R (i.e. Q in the lift)."""
        return Ideal(self.ring, (), self.quotient)

    def groebner_basis(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = compute_basis(self.ring, self.gens, order, preseed=self.quotient)
            self._gb[order] = gb
        return gb

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.lifted_gens())

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def __contains__(self, f):
        return self.contains(f)

    def is_unit(self) -> bool:
        return self.groebner_basis().is_unit()

    def is_zero(self) -> bool:
        return all(self.quotient_reduce(g).is_zero() for g in self.gens)

    def quotient_reduce(self, f: Polynomial) -> Polynomial:
        if not self.quotient:
            return f
        return Ideal(self.ring, self.quotient).groebner_basis().normal_form(f)

    def minimal_generators(self) -> List[Polynomial]:
        """Minimal homogeneous generators mod Q, else reduced-basis generators mod Q."""
        gb = self.groebner_basis()
        if gb.mingens is not None:
            gens = gb.mingens
        else:
            gens = gb.elements
        out = []
        for g in gens:
            g = self.quotient_reduce(g)
            if g.terms:
                out.append(g.monic())
        return out

    def trimmed(self) -> "Ideal":
        return self.like(self.minimal_generators())

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)


def _same_context(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")
    if set(a.quotient) != set(b.quotient):
        if Ideal(a.ring, a.quotient) != Ideal(b.ring, b.quotient):
            raise RingMismatchError("ideals live in different quotient rings")


def groebner_basis(I: Ideal, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
    return I.groebner_basis(order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatchError("polynomial outside the ideal's ring")
    return I.groebner_basis().reduces_to_zero(f)


def ideal_contains(A: Ideal, B: Ideal) -> bool:
    """B ⊆ A."""
    _same_context(A, B)
    gb = A.groebner_basis()
    return all(gb.reduces_to_zero(g) for g in B.gens)


def ideal_equal(A: Ideal, B: Ideal) -> bool:
    return ideal_contains(A, B) and ideal_contains(B, A)


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    _same_context(A, B)
    return A.like(list(A.gens) + list(B.gens))


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    _same_context(A, B)
    return A.like([a * b for a in A.gens for b in B.gens])


def unit_ideal(like: Ideal) -> Ideal:
    return like.like([like.ring.one()])


def _trim_vecs_result(ring: PolyRing, polys: List[Polynomial], quotient) -> Ideal:
    I = Ideal(ring, polys, quotient)
    return I.trimmed()


def ideal_intersection(A: Ideal, B: Ideal) -> Ideal:
    """A ∩ B by eliminating a tag variable from ``t·A + (1-t)·B``."""
    _same_context(A, B)
    ring = A.ring
    big = ring.extend(["_tag"], front=True)
    pos = list(range(1, ring.nvars + 1))
    t = big.var(0)
    one = big.one()
    gens = [t * g.map_to(big, pos) for g in A.lifted_gens()]
    gens += [(one - t) * g.map_to(big, pos) for g in B.lifted_gens()]
    gb = compute_basis(big, gens, elimination_order(1))
    kept = [g for g, m in zip(gb.elements, gb.leading_monomials()) if m[0] == 0]
    back = [Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}, False) for g in kept]
    return _trim_vecs_result(ring, back, A.quotient)


def exact_divide(f: Polynomial, b: Polynomial) -> Polynomial:
    """``f / b`` for ``b`` dividing ``f`` exactly."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    p = ring.characteristic
    vo = vec_order(ring)
    key = vo.key
    bv = to_vec(b)
    lb = E.lead(bv, key)
    cb_inv = pow(bv[lb], -1, p) if p else 1 / Fraction(bv[lb])
    rest = to_vec(f)
    quo = {}
    while rest:
        lm = E.lead(rest, key)
        if not E.divides(lb, lm):
            raise ValueError("polynomial does not divide exactly")
        q = tuple(x - y for x, y in zip(lm, lb))
        c = rest[lm] * cb_inv
        if p:
            c %= p
        quo[q] = c
        term = {tuple(x + y for x, y in zip(m, q)): v for m, v in bv.items()}
        rest = E.vadd(rest, term, p, scale=-c)
    return from_vec(quo, ring)


def colon_element(A: Ideal, b: Polynomial) -> Ideal:
    """(A : b) = (A ∩ (b)) / b; over P/Q the lift A + Q meets the principal ideal of P."""
    if A.quotient_reduce(b).is_zero():
        return unit_ideal(A)
    inter = ideal_intersection(A.lift(), Ideal(A.ring, [b]))
    return A.like([exact_divide(g, b) for g in inter.gens]).trimmed() if inter.gens else A.like([])


def ideal_colon(A: Ideal, B: Ideal) -> Ideal:
    """{f : f·B ⊆ A}, as the intersection of colons by single generators."""
    _same_context(A, B)
    result = None
    for b in B.gens:
        if A.quotient_reduce(b).is_zero():
            continue
        C = colon_element(A, b)
        result = C if result is None else ideal_intersection(result, C)
    if result is None:
        return unit_ideal(A)
    return result


def ideal_saturation(A: Ideal, B: Ideal, max_rounds: int = 64) -> Ideal:
    """A : B^∞, iterating colons until the chain stabilizes."""
    cur = A
    for _ in range(max_rounds):
        nxt = ideal_colon(cur, B)
        if ideal_contains(cur, nxt):
            return cur
        cur = nxt
    from .errors import ResourceLimitError
    raise ResourceLimitError("saturation did not stabilize")


def _var_index(ring: PolyRing, v) -> int:
    """Index of a variable given by name, position or as a generator polynomial."""
    if isinstance(v, str):
        return ring.index(v)
    if isinstance(v, Polynomial):
        if len(v.terms) != 1:
            raise ValueError(f"{v} is not a variable")
        (m, c), = v.terms.items()
        if sum(m) != 1 or c != ring.one_coeff():
            raise ValueError(f"{v} is not a variable")
        return m.index(1)
    return int(v)


def eliminate(I: Ideal, variables: Sequence) -> Ideal:
    """I ∩ k[remaining variables], generators expressed in I's ring."""
    ring = I.ring
    idx = [_var_index(ring, v) for v in variables]
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    big = PolyRing(tuple(ring.names[i] for i in perm), ring.characteristic,
                   tuple(ring.weights[i] for i in perm))
    pos = [perm.index(i) for i in range(ring.nvars)]
    gens = [g.map_to(big, pos) for g in I.lifted_gens()]
    gb = compute_basis(big, gens, elimination_order(len(idx)))
    k = len(idx)
    kept = [g for g in gb.elements if all(all(e == 0 for e in m[:k]) for m in g.terms)]
    back = [g.map_to(ring, perm) for g in kept]
    return Ideal(ring, back)


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f ∈ √I  ⇔  1 ∈ (I + Q, 1 - y·f) in P[y]."""
    ring = I.ring
    if f.is_zero():
        return True
    big = ring.extend(["_rab"])
    pos = list(range(ring.nvars))
    y = big.var(ring.nvars)
    gens = [g.map_to(big, pos) for g in I.lifted_gens()]
    gens.append(big.one() - y * f.map_to(big, pos))
    return compute_basis(big, gens).is_unit()


def radical_contains(A: Ideal, B: Ideal) -> bool:
    """√B ⊆ √A, i.e. every generator of B lies in √A."""
    _same_context(A, B)
    gb = A.groebner_basis()
    return all(gb.reduces_to_zero(g) or radical_membership(g, A) for g in B.gens)


def radical_equal(A: Ideal, B: Ideal) -> bool:
    return radical_contains(A, B) and radical_contains(B, A)


def lift_coefficients(f: Polynomial, gens: Sequence[Polynomial],
                      quotient: Sequence[Polynomial] = ()) -> Optional[List[Polynomial]]:
    """Coefficients c with f ≡ Σ c_i·g_i (mod Q), or None when f is not in the ideal.

    Deterministic: the tracked module basis is computed in a fixed order and
    ``f`` is divided by it.
    """
    ring = f.ring
    p = ring.characteristic
    k = len(gens)
    twists = [0] + [g.degree() or 0 for g in gens]
    vo = E.VecOrder(ring.nvars, ring.order, ring.weights, module="top", twists=twists, split=1)
    one = ring.one()
    vecs = []
    for i, g in enumerate(gens):
        v = to_vec(g, 0)
        v.update(to_vec(one, i + 1))
        vecs.append(v)
    vecs += [to_vec(q, 0) for q in quotient]
    res = E.groebner(vecs, vo, p)
    red = E.reducer_set(res.basis, vo.key, p)
    r = red.reduce(to_vec(f, 0))
    if any(m[-1] == 0 for m in r):
        return None
    out = [ring.zero() for _ in range(k)]
    comps = {}
    for m, c in r.items():
        comps.setdefault(m[-1], {})[m[:-1]] = (-c) % p if p else -c
    for comp, terms in comps.items():
        out[comp - 1] = Polynomial(ring, terms)
    return out
