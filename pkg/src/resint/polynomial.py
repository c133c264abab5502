"""Exact coefficients, graded polynomial rings, monomial orders and polynomials.

Coefficients are either :class:`fractions.Fraction` (characteristic 0) or
canonical residues ``0 <= c < p`` stored as plain ints.  Monomials are
exponent tuples.  A :class:`Polynomial` is an immutable mapping from
monomials to nonzero coefficients; its term list is produced sorted
descending in the ring's active order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from operator import add
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import RingMismatchError, ZeroPolynomialError

Monomial = Tuple[int, ...]
Term = Tuple[Monomial, object]

MAX_PRIME = 2 ** 31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# --------------------------------------------------------------------------
# coefficient arithmetic


def coerce(c, p: int):
    """Bring an int/Fraction/str into canonical form for characteristic ``p``."""
    if isinstance(c, str):
        c = Fraction(c)
    if p:
        if isinstance(c, Fraction):
            num, den = c.numerator % p, c.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return num * pow(den, -1, p) % p
        return int(c) % p
    return Fraction(c)


def inverse(c, p: int):
    if p:
        return pow(c, -1, p)
    return 1 / c


def coeff_str(c, p: int) -> str:
    if p:
        return str(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# --------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``n`` variables.

    ``kind`` is one of ``grevlex``, ``lex``, ``elim`` (the first ``block``
    variables dominate) or ``wgrevlex`` (weighted degree, then grevlex).
    ``key(m)`` returns a tuple that sorts *ascending* from the largest
    monomial to the smallest.
    """

    kind: str = "grevlex"
    block: int = 0
    weights: Optional[Tuple[int, ...]] = None

    def key_function(self, n: int):
        return _key_function(self.kind, self.block, self.weights, n)

    def key(self, m: Monomial):
        return self.key_function(len(m))(m)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", block=k)


@lru_cache(maxsize=None)
def _key_function(kind: str, block: int, weights, n: int):
    rev = tuple(range(n - 1, -1, -1))
    if kind == "lex":
        return lambda m: tuple(-e for e in m)
    if kind == "grevlex":
        return lambda m: (-sum(m),) + tuple(m[i] for i in rev)
    if kind == "wgrevlex":
        w = weights
        return lambda m: (-sum(map(lambda a, b: a * b, w, m)),) + tuple(m[i] for i in rev)
    if kind == "elim":
        r1 = tuple(range(block - 1, -1, -1))
        r2 = tuple(range(n - 1, block - 1, -1))

        def key(m):
            return ((-sum(m[:block]),) + tuple(m[i] for i in r1)
                    + (-sum(m[block:]),) + tuple(m[i] for i in r2))
        return key
    raise ValueError(f"unknown monomial order {kind!r}")


# --------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class PolyRing:
    """k[x_1..x_n] with a positive weight grading.

    ``t_weights`` is the optional second grading; it is nonzero only on the
    adjoined t-variables of a symmetric-algebra ring.
    """

    names: Tuple[str, ...]
    characteristic: int = 0
    weights: Optional[Tuple[int, ...]] = None
    t_weights: Optional[Tuple[int, ...]] = None
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        w = tuple(self.weights) if self.weights is not None else (1,) * len(self.names)
        if len(w) != len(self.names) or any(x < 1 for x in w):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", w)
        if self.t_weights is not None:
            object.__setattr__(self, "t_weights", tuple(self.t_weights))
        p = self.characteristic
        if p and (not is_prime(p) or p >= MAX_PRIME):
            raise ValueError(f"characteristic {p} is not a prime below 2^31")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.one_coeff()})

    def one_coeff(self):
        return 1 if self.characteristic else Fraction(1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = coerce(c, self.characteristic)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = coerce(c, self.characteristic)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def degree_of(self, m: Monomial) -> int:
        return sum(map(lambda a, b: a * b, self.weights, m))

    def with_characteristic(self, p: int) -> "PolyRing":
        return PolyRing(self.names, p, self.weights, self.t_weights, self.order)

    def extend(self, names: Sequence[str], weights: Optional[Sequence[int]] = None,
               front: bool = False, t_weights: Optional[Sequence[int]] = None) -> "PolyRing":
        """Ring with extra variables appended (or prepended with ``front``)."""
        extra_w = tuple(weights) if weights is not None else (1,) * len(names)
        if front:
            new_names = tuple(names) + self.names
            new_w = extra_w + self.weights
        else:
            new_names = self.names + tuple(names)
            new_w = self.weights + extra_w
        tw = tuple(t_weights) if t_weights is not None else None
        return PolyRing(new_names, self.characteristic, new_w, tw, self.order)

    def __call__(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial
        return parse_polynomial(text, self)

    def __repr__(self):
        k = "QQ" if not self.characteristic else f"GF({self.characteristic})"
        return f"{k}[{','.join(self.names)}]"


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object], _clean: bool = True):
        self.ring = ring
        if _clean:
            p = ring.characteristic
            terms = {m: c for m, c in terms.items() if c}
            if p:
                terms = {m: c % p for m, c in terms.items() if c % p}
        self.terms: Dict[Monomial, object] = dict(terms)
        self._hash = None

    # construction helpers
    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable[Tuple[Sequence[int], object]]):
        acc: Dict[Monomial, object] = {}
        p = ring.characteristic
        for m, c in terms:
            m = tuple(m)
            if len(m) != ring.nvars:
                raise ValueError("monomial length does not match ring")
            acc[m] = acc.get(m, 0) + coerce(c, p)
        return cls(ring, acc)

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial(self.ring, {m: (-c) % p if p else -c for m, c in self.terms.items()}, False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        p = self.ring.characteristic
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(add, m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = coerce(c, self.ring.characteristic)
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Monomial, c=None) -> "Polynomial":
        p = self.ring.characteristic
        if c is None:
            return Polynomial(self.ring, {tuple(map(add, k, m)): v for k, v in self.terms.items()}, False)
        return Polynomial(self.ring, {tuple(map(add, k, m)): v * c for k, v in self.terms.items()})

    # comparisons
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        z = (0,) * self.ring.nvars
        return all(m == z for m in self.terms)

    # order-dependent accessors
    def sorted_terms(self, order: Optional[MonomialOrder] = None):
        key = (order or self.ring.order).key_function(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Term:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        key = (order or self.ring.order).key_function(self.ring.nvars)
        m = min(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: Optional[MonomialOrder] = None):
        return self.leading_term(order)[1]

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(inverse(self.leading_coefficient(order), self.ring.characteristic))

    # grading
    def degree_info(self):
        """(weighted degree, homogeneous?) with degree ``None`` for zero."""
        if not self.terms:
            return None, True
        degs = {self.ring.degree_of(m) for m in self.terms}
        return max(degs), len(degs) == 1

    def degree(self):
        return self.degree_info()[0]

    def is_homogeneous(self) -> bool:
        return self.degree_info()[1]

    def bidegree(self):
        """(t-degree, weighted degree) of a bihomogeneous polynomial."""
        if self.ring.t_weights is None:
            return 0, self.degree()
        m = next(iter(self.terms))
        return sum(a * b for a, b in zip(self.ring.t_weights, m)), self.ring.degree_of(m)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def coefficient(self, m: Sequence[int]):
        return self.terms.get(tuple(m), 0)

    # substitution / ring change
    def evaluate(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Substitute ``x_i -> values[i]`` (polynomials of a common target ring)."""
        target = next(iter(values.values())).ring if values else self.ring
        out = target.zero()
        cache: Dict[Tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                base = values.get(i)
                if base is None:
                    raise KeyError(f"no value for variable {self.ring.names[i]}")
                k = (i, e)
                if k not in cache:
                    cache[k] = base ** e
                t = t * cache[k]
            out = out + t
        return out

    def map_to(self, ring: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Embed into ``ring``; variable i goes to slot ``positions[i]``."""
        n = ring.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] = k
            out[tuple(e)] = coerce(c, ring.characteristic)
        return Polynomial(ring, out)

    def change_characteristic(self, p: int) -> "Polynomial":
        ring = self.ring.with_characteristic(p)
        return Polynomial(ring, {m: coerce(c, p) for m, c in self.terms.items()})

    # printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    """Canonical text form (descending terms), parseable by :mod:`resint.parse`."""
    if not f.terms:
        return "0"
    p = f.ring.characteristic
    out = []
    for m, c in f.sorted_terms(order):
        mono = format_monomial(m, f.ring.names)
        neg = False
        if not p and c < 0:
            neg, c = True, -c
        cs = coeff_str(c, p)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def leading_term(f: Polynomial, order: Optional[MonomialOrder] = None) -> Term:
    return f.leading_term(order)


def degree_info(f: Polynomial):
    return f.degree_info()


def poly_arith(f: Polynomial, g, op: str) -> Polynomial:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``g`` a scalar)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        if isinstance(g, Polynomial):
            f._check(g)
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")
