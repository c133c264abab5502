"""Hilbert series, dimension, multiplicity, height, depth, regularity,
grade, Serre conditions and unmixedness.

Everything is computed over the polynomial ambient: an ideal ``J`` of
``R = P/Q`` stands for the cyclic module ``P/(J+Q)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotGradedError, ResintError
from .groebner import Ideal, ideal_saturation
from .modules import (FreeResolution, GradedFreeModule, SubmoduleBasis,
                      SubquotientModule, ext_module, minimal_free_resolution)
from .polynomial import PolyRing

Laurent = Dict[int, int]


# --------------------------------------------------------------------------
# Laurent polynomial helpers (integer coefficients, one variable z)


def _ladd(a: Laurent, b: Laurent, sign: int = 1, shift: int = 0) -> Laurent:
    out = dict(a)
    for k, v in b.items():
        kk = k + shift
        c = out.get(kk, 0) + sign * v
        if c:
            out[kk] = c
        else:
            out.pop(kk, None)
    return out


def _lmul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return {k: v for k, v in out.items() if v}


def _value_at_one(a: Laurent) -> int:
    return sum(a.values())


def _divide_one_minus_z(a: Laurent) -> Laurent:
    """a / (1 - z), assuming a(1) = 0."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    out: Laurent = {}
    run = 0
    for k in range(lo, hi):
        run += a.get(k, 0)
        if run:
            out[k] = run
    return out


def _order_at_one(a: Laurent) -> Tuple[int, Laurent]:
    """(multiplicity of the root z = 1, cofactor)."""
    k = 0
    while a and _value_at_one(a) == 0:
        a = _divide_one_minus_z(a)
        k += 1
    return k, a


# --------------------------------------------------------------------------
# monomial ideals


def _minimalize(gens: List[tuple]) -> List[tuple]:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    kept: List[tuple] = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(k, m)) for k in kept):
            kept.append(m)
    return kept


def _wdeg(m, w) -> int:
    return sum(a * b for a, b in zip(m, w))


def monomial_numerator(gens: Sequence[tuple], weights: Sequence[int]) -> Laurent:
    """Numerator N with HS(P/(gens)) = N / prod(1 - z^w_i).

    Pivot recursion: for a pivot ``p = x_i^e`` dividing a mixed generator,
    N(I) = N(I + (p)) + z^deg(p) N(I : p).
    """
    w = tuple(weights)
    memo: Dict[tuple, Laurent] = {}

    def rec(gs: List[tuple]) -> Laurent:
        gs = _minimalize(gs)
        key = tuple(gs)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not gs:
            res = {0: 1}
        elif any(not any(m) for m in gs):
            res = {}
        else:
            supports = [frozenset(i for i, a in enumerate(m) if a) for m in gs]
            used: Dict[int, int] = {}
            clash = False
            for s in supports:
                for i in s:
                    used[i] = used.get(i, 0) + 1
                    if used[i] > 1:
                        clash = True
            if not clash:
                res = {0: 1}
                for m in gs:
                    res = _lmul(res, {0: 1, _wdeg(m, w): -1})
            else:
                # most shared variable, smallest exponent on a mixed generator
                var = max(used, key=lambda i: (used[i], -i))
                e = min(m[var] for m, s in zip(gs, supports) if m[var] and len(s) > 1) \
                    if any(m[var] and len(s) > 1 for m, s in zip(gs, supports)) \
                    else min(m[var] for m in gs if m[var])
                piv = tuple(e if i == var else 0 for i in range(len(w)))
                plus = rec(gs + [piv])
                colon = rec([tuple(max(a - e, 0) if i == var else a for i, a in enumerate(m))
                             for m in gs])
                res = _ladd(plus, colon, 1, e * w[var])
        memo[key] = res
        return res

    return rec(list(gens))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(z) / prod_i (1 - z^{weights_i})`` with a Laurent numerator."""

    numerator: Tuple[Tuple[int, int], ...]
    weights: Tuple[int, ...]

    @classmethod
    def make(cls, num: Laurent, weights) -> "HilbertSeries":
        return cls(tuple(sorted((k, v) for k, v in num.items() if v)), tuple(weights))

    @property
    def num(self) -> Laurent:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def __sub__(self, other: "HilbertSeries") -> "HilbertSeries":
        if self.weights != other.weights:
            raise ValueError("series over different ambients")
        return HilbertSeries.make(_ladd(self.num, other.num, -1), self.weights)

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        if self.weights != other.weights:
            raise ValueError("series over different ambients")
        return HilbertSeries.make(_ladd(self.num, other.num, 1), self.weights)

    def shift(self, a: int) -> "HilbertSeries":
        """Series of M(-a)."""
        return HilbertSeries.make({k + a: v for k, v in self.numerator}, self.weights)

    def dimension(self) -> int:
        """Pole order at z = 1; -1 for the zero series."""
        if self.is_zero():
            return -1
        k, _ = _order_at_one(self.num)
        return len(self.weights) - k

    def reduced(self) -> Tuple[Laurent, int]:
        """(h, d) with HS = h / (1 - z)^d (standard grading only)."""
        if any(w != 1 for w in self.weights):
            raise NotGradedError("reduced form needs a standard grading")
        if self.is_zero():
            return {}, -1
        k, h = _order_at_one(self.num)
        return h, len(self.weights) - k

    def multiplicity(self) -> int:
        if self.is_zero():
            return 0
        h, _ = self.reduced()
        return _value_at_one(h)

    def coefficients(self, top: int, start: Optional[int] = None) -> List[int]:
        """HF(n) for n = start..top (start defaults to 0)."""
        num = self.num
        lo = min(num) if num else 0
        if start is None:
            start = 0
        length = top - lo + 1
        if length <= 0:
            return [0] * max(0, top - start + 1)
        series = [0] * length
        for k, v in num.items():
            if k - lo < length:
                series[k - lo] += v
        for w in self.weights:
            for i in range(w, length):
                series[i] += series[i - w]
        out = []
        for n in range(start, top + 1):
            out.append(series[n - lo] if n - lo >= 0 else 0)
        return out

    def value(self, n: int) -> int:
        return self.coefficients(n, n)[0]

    def hilbert_polynomial_values(self, ns: Sequence[int]) -> List[int]:
        """Values of the Hilbert polynomial (standard grading)."""
        h, d = self.reduced()
        out = []
        for n in ns:
            if d <= 0:
                out.append(0)
                continue
            out.append(sum(v * math.comb(n - k + d - 1, d - 1) for k, v in h.items()))
        return out

    def numerator_string(self) -> str:
        parts = []
        for k, v in self.numerator:
            mono = "1" if k == 0 else (f"z^{k}" if k != 1 else "z")
            parts.append(f"{v}*{mono}" if v != 1 else mono)
        return " + ".join(parts) if parts else "0"


def _require_homogeneous(I: Ideal):
    if not I.is_homogeneous():
        raise NotGradedError("graded invariants need homogeneous input")


def _module_series(F: GradedFreeModule, basis: SubmoduleBasis) -> HilbertSeries:
    leads = basis.leads_by_component()
    w = F.ring.weights
    num: Laurent = {}
    for k, a in enumerate(F.degrees):
        num = _ladd(num, monomial_numerator(leads[k], w), 1, a)
    return HilbertSeries.make(num, w)


def hilbert_series(M) -> HilbertSeries:
    """Hilbert series of ``P/(I+Q)`` (Ideal), a subquotient, a free module or a ring."""
    if isinstance(M, PolyRing):
        return HilbertSeries.make({0: 1}, M.weights)
    if isinstance(M, Ideal):
        _require_homogeneous(M)
        gb = M.groebner_basis()
        return HilbertSeries.make(monomial_numerator(gb.leading_monomials(), M.ring.weights),
                                  M.ring.weights)
    if isinstance(M, GradedFreeModule):
        num: Laurent = {}
        for a in M.degrees:
            num = _ladd(num, {a: 1})
        return HilbertSeries.make(num, M.ring.weights)
    if isinstance(M, SubquotientModule):
        F = M.ambient
        if F.rank == 0:
            return HilbertSeries.make({}, F.ring.weights)
        outer = _module_series(F, M.relation_basis())
        inner = _module_series(F, M.full_basis())
        return outer - inner
    raise TypeError(f"no Hilbert series for {type(M).__name__}")


def hilbert_function(M, n: int) -> int:
    return hilbert_series(M).value(n)


def krull_dim(M) -> int:
    return hilbert_series(M).dimension()


def multiplicity(M) -> int:
    """Degree of a standard graded module (length when it has dimension 0)."""
    hs = hilbert_series(M)
    if any(w != 1 for w in hs.weights):
        raise NotGradedError("multiplicity is only defined here for standard gradings")
    return hs.multiplicity()


def ring_dimension(ring: PolyRing, quotient: Sequence = ()) -> int:
    return krull_dim(Ideal(ring, [], quotient))


def height(J: Ideal) -> float:
    """dim R - dim R/J, with R = P/Q assumed equidimensional; inf for the unit ideal."""
    if J.is_unit():
        return math.inf
    R = J.ambient()
    return krull_dim(R) - krull_dim(J)


# --------------------------------------------------------------------------
# homological invariants


@dataclass
class DepthData:
    depth: int
    pd: int
    regularity: int
    method: str = "minimal P-free resolution, Auslander-Buchsbaum"


def _resolution(M) -> FreeResolution:
    if isinstance(M, Ideal):
        _require_homogeneous(M)
    return minimal_free_resolution(M)


def _ambient_vars(M) -> int:
    return M.ring.nvars


def depth_regularity(M, resolution: Optional[FreeResolution] = None) -> DepthData:
    res = resolution or _resolution(M)
    pd = res.length
    n = _ambient_vars(M)
    if isinstance(M, SubquotientModule) and M.is_zero():
        return DepthData(math.inf, -1, -math.inf)
    reg = res.regularity()
    return DepthData(n - pd, pd, reg)


def depth_is_zero(J: Ideal) -> bool:
    """depth P/(J+Q) = 0 iff the irrelevant ideal is associated, i.e. J : m^inf != J."""
    lift = J.lift()
    m = Ideal(J.ring, J.ring.gens())
    sat = ideal_saturation(lift, m)
    return not (sat == lift)


def ext_dimension(E: SubquotientModule) -> int:
    return hilbert_series(E).dimension()


def ext_dimensions(M, resolution: Optional[FreeResolution] = None) -> Dict[int, int]:
    """{i: dim Ext^i_P(M, P)} over 0..pd (-1 marks a vanishing Ext)."""
    res = resolution or _resolution(M)
    return {i: ext_dimension(ext_module(M, i, res)) for i in range(res.length + 1)}


def grade_of(J: Ideal, resolution: Optional[FreeResolution] = None) -> int:
    """min{i : Ext^i_P(P/J, P) != 0} for the lifted ideal."""
    if J.is_unit():
        raise ResintError("grade of the unit ideal is infinite")
    res = resolution or _resolution(J)
    for i in range(res.length + 1):
        if not ext_module(J, i, res).is_zero():
            return i
    return res.length


def codimension(M) -> int:
    n = _ambient_vars(M)
    return n - krull_dim(M)


def serre_condition(M, k: int, exts: Optional[Dict[int, int]] = None) -> bool:
    """S_k via dim Ext^i_P(M, P) <= dim P - i - k for every i > codim M."""
    exts = exts if exts is not None else ext_dimensions(M)
    n = _ambient_vars(M)
    c = codimension(M)
    for i, d in exts.items():
        if i > c and d >= 0 and d > n - i - k:
            return False
    return True


def is_cohen_macaulay(M, exts: Optional[Dict[int, int]] = None) -> bool:
    exts = exts if exts is not None else ext_dimensions(M)
    c = codimension(M)
    return all(d < 0 for i, d in exts.items() if i != c)


def unmixed_check(M, exts: Optional[Dict[int, int]] = None) -> bool:
    """No embedded or lower-dimensional components: Ext^i = 0 or dim Ext^i < dim P - i for i > codim."""
    exts = exts if exts is not None else ext_dimensions(M)
    n = _ambient_vars(M)
    c = codimension(M)
    for i, d in exts.items():
        if i > c and d >= 0 and d >= n - i:
            return False
    return True


@dataclass
class InvariantReport:
    dim: int
    multiplicity: int
    depth: int
    pd: int
    regularity: int
    height: Optional[float] = None
    methods: Dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"dim": self.dim, "multiplicity": self.multiplicity, "depth": self.depth,
               "pd": self.pd, "regularity": self.regularity, "methods": dict(self.methods)}
        if self.height is not None:
            out["height"] = self.height if self.height != math.inf else "inf"
        return out


def invariant_report(J: Ideal) -> InvariantReport:
    hs = hilbert_series(J)
    dd = depth_regularity(J)
    rep = InvariantReport(hs.dimension(), hs.multiplicity(), dd.depth, dd.pd, dd.regularity,
                          height(J))
    rep.methods = {"dim": "hilbert-series pole order",
                   "multiplicity": "hilbert-series numerator at 1",
                   "depth": "dim P - pd (Auslander-Buchsbaum)",
                   "pd": "minimal free resolution over P",
                   "regularity": "betti table",
                   "height": "dim R - dim R/J"}
    return rep
