"""Monomials, monomial orders and the packed-integer monomial encoding.

A monomial is a tuple of non-negative exponents.  For speed the Groebner
engine never compares tuples: a :class:`Packer` maps each monomial to a
Python ``int`` whose natural integer order *is* the monomial order, and
for which multiplication of monomials is integer addition (up to the
constant ``packer.one``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import ExponentOverflow, LengthMismatch

Monomial = Tuple[int, ...]

FIELD_BITS = 16
_HALF = 1 << (FIELD_BITS - 1)
_FIELD_MASK = (1 << FIELD_BITS) - 1
COMP = _HALF - 1  # complemented fields store COMP - e


def mono_degree(m: Monomial, weights: Sequence[int] = None) -> int:
    if weights is None:
        return sum(m)
    return sum(w * e for w, e in zip(weights, m))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int, weights: Sequence[int] = None):
    """All exponent tuples of (weighted) degree ``d``, in lex-descending order."""
    if weights is None:
        weights = (1,) * nvars
    out = []

    def rec(i, left, acc):
        if i == nvars - 1:
            w = weights[i]
            if w == 0:
                if left == 0:
                    out.append(tuple(acc) + (0,))
                return
            if left % w == 0:
                out.append(tuple(acc) + (left // w,))
            return
        w = weights[i]
        top = left // w if w else 0
        for e in range(top, -1, -1):
            acc.append(e)
            rec(i + 1, left - w * e, acc)
            acc.pop()

    if nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, ``block`` (split k) or ``bigraded`` (split k).

    ``block``: variables ``0..k-1`` form an elimination block, grevlex inside
    each block.  ``bigraded``: total degree, then degree in the first k
    variables, then reverse lexicographic.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block", "bigraded"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def fields(self, nvars: int, weights: Sequence[int] = None):
        """Key layout, most significant first.

        Each entry is ``("lin", coefficients)``, ``("var", i)`` or
        ``("comp", i)`` (the latter compares ``-e_i``).
        """
        w = [max(x, 1) for x in (weights or (1,) * nvars)]
        if self.kind == "lex":
            return [("var", i) for i in range(nvars)]
        if self.kind == "grevlex":
            return [("lin", tuple(w))] + [("comp", i) for i in reversed(range(nvars))]
        k = self.split
        if self.kind == "block":
            b1 = tuple(w[i] if i < k else 0 for i in range(nvars))
            b2 = tuple(w[i] if i >= k else 0 for i in range(nvars))
            return (
                [("lin", b1)]
                + [("comp", i) for i in reversed(range(k))]
                + [("lin", b2)]
                + [("comp", i) for i in reversed(range(k, nvars))]
            )
        total = tuple(w)
        first = tuple(w[i] if i < k else 0 for i in range(nvars))
        return [("lin", total), ("lin", first)] + [("comp", i) for i in reversed(range(nvars))]

    def key(self, m: Monomial, weights: Sequence[int] = None) -> tuple:
        out = []
        for kind, data in self.fields(len(m), weights):
            if kind == "lin":
                out.append(sum(c * e for c, e in zip(data, m)))
            elif kind == "var":
                out.append(m[data])
            else:
                out.append(-m[data])
        return tuple(out)

    def compare(self, m1: Monomial, m2: Monomial, weights: Sequence[int] = None) -> int:
        """-1, 0 or 1 as ``m1`` is smaller than, equal to or larger than ``m2``."""
        if len(m1) != len(m2):
            raise LengthMismatch(f"monomials of length {len(m1)} and {len(m2)}")
        k1, k2 = self.key(m1, weights), self.key(m2, weights)
        return (k1 > k2) - (k1 < k2)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomial_compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> int:
    return order.compare(tuple(m1), tuple(m2))


class Packer:
    """Encode monomials of a fixed ring and order as order-preserving ints."""

    def __init__(self, nvars: int, weights: Sequence[int], order: MonomialOrder):
        self.nvars = nvars
        self.weights = tuple(weights)
        self.order = order
        fields = order.fields(nvars, weights)
        nf = len(fields)
        # contribution of a unit exponent of variable i to the packed int
        unit = [0] * nvars
        base = 0
        self._var_slot = [None] * nvars  # (shift, complemented)
        for pos, (kind, data) in enumerate(fields):
            shift = FIELD_BITS * (nf - 1 - pos)
            if kind == "lin":
                for i, c in enumerate(data):
                    unit[i] += c << shift
            elif kind == "var":
                unit[data] += 1 << shift
                self._var_slot[data] = (shift, False)
            else:
                unit[data] -= 1 << shift
                base += COMP << shift
                self._var_slot[data] = (shift, True)
        self.unit = unit
        self.one = base
        self._dcache = {}
        self.xguard = sum(_HALF << (FIELD_BITS * i) for i in range(nvars))

    def pack(self, m: Monomial) -> int:
        if len(m) != self.nvars:
            raise LengthMismatch(f"expected {self.nvars} exponents, got {len(m)}")
        if any(e >= COMP for e in m):
            raise ExponentOverflow(f"exponent too large in {m}")
        k = self.one
        for u, e in zip(self.unit, m):
            if e:
                k += u * e
        return k

    def unpack(self, k: int) -> Monomial:
        out = []
        for shift, comp in self._var_slot:
            v = (k >> shift) & _FIELD_MASK
            out.append(COMP - v if comp else v)
        return tuple(out)

    def xpack(self, m: Monomial) -> int:
        """Plain exponent packing used for divisibility tests."""
        x = 0
        for i, e in enumerate(m):
            x |= e << (FIELD_BITS * i)
        return x

    def info(self, k: int):
        """(exponent tuple, divisibility int, weighted degree), cached."""
        r = self._dcache.get(k)
        if r is None:
            m = self.unpack(k)
            r = (m, self.xpack(m), sum(w * e for w, e in zip(self.weights, m)))
            self._dcache[k] = r
        return r

    def divides(self, xa: int, xb: int) -> bool:
        g = self.xguard
        return ((xb - xa + g) & g) == g

    def lcm(self, ka: int, kb: int) -> int:
        ma = self.info(ka)[0]
        mb = self.info(kb)[0]
        return self.pack(tuple(max(x, y) for x, y in zip(ma, mb)))
