"""Brute-force reference computations.

Nothing here touches the Groebner, module or Hilbert-series engines.  The
oracles enumerate monomials of each degree themselves, multiply generators by
every monomial of the complementary degree and decide questions by exact
Gaussian elimination on the resulting coefficient matrix.  They are slow on
purpose and intended for small instances only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ResintError
from .polynomial import PolyRing, Polynomial


class OracleError(ResintError, ValueError):
    exit_code = 2


def graded_monomials(weights: Sequence[int], degree: int) -> List[Tuple[int, ...]]:
    """All exponent vectors of weighted degree ``degree``, lexicographically."""
    out: List[Tuple[int, ...]] = []
    n = len(weights)

    def walk(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        for e in range(left // w, -1, -1):
            acc.append(e)
            walk(i + 1, left - e * w, acc)
            acc.pop()

    if degree >= 0:
        walk(0, degree, [])
    return out


def _wdeg(m, weights) -> int:
    return sum(a * w for a, w in zip(m, weights))


def _homogeneous_degree(f: Polynomial) -> Optional[int]:
    w = f.ring.weights
    degs = {_wdeg(m, w) for m in f.terms}
    if len(degs) > 1:
        raise OracleError("oracle input must be homogeneous")
    return degs.pop() if degs else None


class _Field:
    """Arithmetic in Q or F_p, written out separately from the engine."""

    def __init__(self, p: int):
        self.p = p

    def norm(self, c):
        if self.p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def sub_mul(self, a, b, c):
        # a - b*c
        r = a - b * c
        return r % self.p if self.p else r


@dataclass
class TruncatedSpace:
    """Echelon form of the span of generator multiples in one degree."""

    degree: int
    basis: List[Tuple[int, ...]]
    pivots: Dict[int, Dict[int, object]] = field(default_factory=dict)
    field_: Optional[_Field] = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: Dict[int, object]) -> Dict[int, object]:
        F = self.field_
        row = dict(row)
        while row:
            col = min(row)
            piv = self.pivots.get(col)
            if piv is None:
                return row
            c = row[col]
            for j, v in piv.items():
                nv = F.sub_mul(row.get(j, 0), c, v)
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        return row

    def insert(self, row: Dict[int, object]) -> bool:
        F = self.field_
        row = self._reduce(row)
        if not row:
            return False
        col = min(row)
        inv = F.inv(row[col])
        row = {j: F.norm(v * inv) for j, v in row.items()}
        self.pivots[col] = row
        return True

    def contains(self, row: Dict[int, object]) -> bool:
        return not self._reduce(row)


def truncated_space(gens: Sequence[Polynomial], degree: int, ring: PolyRing) -> TruncatedSpace:
    w = ring.weights
    basis = graded_monomials(w, degree)
    index = {m: i for i, m in enumerate(basis)}
    F = _Field(ring.characteristic)
    space = TruncatedSpace(degree, basis, field_=F)
    for g in gens:
        d = _homogeneous_degree(g)
        if d is None or d > degree:
            continue
        for m in graded_monomials(w, degree - d):
            row = {}
            for gm, c in g.terms.items():
                prod = tuple(a + b for a, b in zip(gm, m))
                row[index[prod]] = F.norm(c)
            space.insert(row)
    return space


def oracle_membership(p: Polynomial, gens: Sequence[Polynomial], D: int) -> bool:
    """Is ``p`` in the span of the multiples ``m*g`` of its own degree?"""
    if p.is_zero():
        return True
    d = _homogeneous_degree(p)
    if d > D:
        raise OracleError(f"degree {d} exceeds the bound {D}")
    ring = p.ring
    space = truncated_space(gens, d, ring)
    index = {m: i for i, m in enumerate(space.basis)}
    F = space.field_
    return space.contains({index[m]: F.norm(c) for m, c in p.terms.items()})


def oracle_hilbert(gens: Sequence[Polynomial], D: int, ring: Optional[PolyRing] = None) -> List[int]:
    """Codimension of the degree-n part of the ideal, n = 0..D."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise OracleError("pass the ring when the generator list is empty")
        ring = gens[0].ring
    out = []
    for n in range(D + 1):
        space = truncated_space(gens, n, ring)
        out.append(len(space.basis) - space.rank)
    return out


def oracle_determinant(matrix, ring: Optional[PolyRing] = None) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise OracleError("matrix must be square")
    if ring is None:
        for r in rows:
            for c in r:
                if isinstance(c, Polynomial):
                    ring = c.ring
                    break
            if ring is not None:
                break
    if ring is None:
        raise OracleError("cannot infer the ring of a scalar matrix")
    rows = [[c if isinstance(c, Polynomial) else ring.const(c) for c in r] for r in rows]

    def expand(m):
        if not m:
            return ring.one()
        if len(m) == 1:
            return m[0][0]
        total = ring.zero()
        for j, a in enumerate(m[0]):
            if a.is_zero():
                continue
            minor = [r[:j] + r[j + 1:] for r in m[1:]]
            term = a * expand(minor)
            total = total - term if j % 2 else total + term
        return total

    return expand(rows)
