"""Sparse multivariate polynomials over a :class:`FieldSpec`."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import ExponentOverflow, RingMismatch
from .field import FieldSpec, Scalar
from .monomial import COMP, GREVLEX, Monomial, MonomialOrder, monomials_of_degree

# products with at least this many term pairs use the vectorised path
NUMPY_MUL_THRESHOLD = 4096


class PolynomialRing:
    """K[v_1, ..., v_k] with a (possibly weighted) grading."""

    def __init__(self, field: FieldSpec, names: Sequence[str], weights: Sequence[int] = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars:
            raise ValueError("one weight per variable")
        self._key = (field, names, self.weights)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    @property
    def standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def with_weights(self, weights: Sequence[int]) -> "PolynomialRing":
        return PolynomialRing(self.field, self.names, weights)

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        v = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: v} if v else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        v = self.field.convert(coeff)
        return Polynomial(self, {tuple(exps): v} if v else {})

    def monomials_of_degree(self, d: int) -> List[Monomial]:
        return monomials_of_degree(self.nvars, d, self.weights)

    def from_dict(self, terms: Dict[Monomial, object]) -> "Polynomial":
        f = self.field
        out = {}
        for m, c in terms.items():
            v = f.convert(c)
            if v:
                out[tuple(m)] = v
        return Polynomial(self, out)

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        out = {}
        for i, c in enumerate(coeffs):
            v = self.field.convert(c)
            if v:
                e = [0] * self.nvars
                e[i] = 1
                out[tuple(e)] = v
        return Polynomial(self, out)

    def random_form(self, degree: int, rng) -> "Polynomial":
        f = self.field
        out = {}
        for m in self.monomials_of_degree(degree):
            v = f.random_element(rng)
            if v:
                out[m] = v
        return Polynomial(self, out)


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero raw coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Maximal weighted degree of a term; -1 for the zero polynomial."""
        w = self.ring.weights
        return max((sum(a * b for a, b in zip(w, m)) for m in self.terms), default=-1)

    def degrees(self) -> set:
        w = self.ring.weights
        return {sum(a * b for a, b in zip(w, m)) for m in self.terms}

    def is_homogeneous(self, weights: Sequence[int] = None) -> bool:
        w = weights or self.ring.weights
        return len({sum(a * b for a, b in zip(w, m)) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> List[Tuple[Monomial, object]]:
        w = self.ring.weights
        return sorted(self.terms.items(), key=lambda t: order.key(t[0], w), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        w = self.ring.weights
        return max(self.terms, key=lambda m: order.key(m, w))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Scalar:
        return Scalar(self.ring.field, self.terms[self.leading_monomial(order)])

    def coefficient(self, m: Monomial) -> Scalar:
        return Scalar(self.ring.field, self.terms.get(tuple(m), self.ring.field.zero()))

    def variables_used(self) -> set:
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    # arithmetic ----------------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = f.add(out.get(m, f.zero()), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        v = f.convert(c)
        if not v:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(a, v) for m, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        f = self.ring.field
        p = f.p
        if p and len(self.terms) * len(other.terms) >= NUMPY_MUL_THRESHOLD and p < 2**31:
            terms = _mul_mod_p(self.terms, other.terms, p, self.ring.nvars)
            if terms is not None:
                return Polynomial(self.ring, terms)
        out: Dict[Monomial, object] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        if p:
            terms = {m: c % p for m, c in out.items() if c % p}
        else:
            terms = {m: c for m, c in out.items() if c}
        if terms and max(max(m) for m in terms) >= COMP:
            raise ExponentOverflow("exponent overflow in product")
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=None) -> "Polynomial":
        f = self.ring.field
        if c is None:
            return Polynomial(self.ring, {tuple(a + b for a, b in zip(k, m)): v for k, v in self.terms.items()})
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(k, m)): f.mul(v, c) for k, v in self.terms.items()}
        )

    def make_monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[self.leading_monomial(order)]
        return self.scale(self.ring.field.inv(lc))

    def homogeneous_part(self, d: int) -> "Polynomial":
        w = self.ring.weights
        return Polynomial(
            self.ring, {m: c for m, c in self.terms.items() if sum(a * b for a, b in zip(w, m)) == d}
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # substitution and ring changes ------------------------------------------------
    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate at ``images`` (one polynomial per variable, all in one ring)."""
        return poly_substitute(self, images)

    def evaluate(self, point: Sequence) -> object:
        """Raw field value at a point given by raw coordinates."""
        f = self.ring.field
        total = f.zero()
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = f.mul(v, pow(x, e, f.p) if f.p else x**e)
            total = f.add(total, v)
        return total

    def change_ring(self, ring: PolynomialRing, index_map: Sequence[int]) -> "Polynomial":
        """Re-embed: variable i of self becomes variable ``index_map[i]`` of ``ring``."""
        out = {}
        n = ring.nvars
        for m, c in self.terms.items():
            e = [0] * n
            for i, a in enumerate(m):
                if a:
                    e[index_map[i]] += a
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def derivative(self, i: int) -> "Polynomial":
        f = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                v = f.mul(c, f.convert(m[i]))
                if v:
                    e = list(m)
                    e[i] -= 1
                    out[tuple(e)] = v
        return Polynomial(self.ring, out)

    # printing ------------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


def format_monomial(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Decreasing grevlex; Z/p coefficients in [0, p), QQ as reduced fractions."""
    if not f.terms:
        return "0"
    field = f.ring.field
    pieces = []
    for m, c in f.sorted_terms(order):
        mono = format_monomial(f.ring.names, m)
        if field.p:
            sign, mag = "+", c
        else:
            sign, mag = ("-", -c) if c < 0 else ("+", c)
        cs = field.to_str(mag)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        pieces.append((sign, body))
    out = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g.value if isinstance(g, Scalar) else g)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """f(images); powers of each image are computed once and reused."""
    if len(images) != f.ring.nvars:
        raise RingMismatch(f"{len(images)} images for {f.ring.nvars} variables")
    if not images:
        return f
    R = images[0].ring
    for g in images:
        if g.ring != R:
            raise RingMismatch("substitution images live in different rings")
    if R.field != f.ring.field:
        raise RingMismatch("substitution changes the coefficient field")
    powers: List[Dict[int, Polynomial]] = [dict() for _ in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = images[i] if e == 1 else power(i, e - 1) * images[i]
        return cache[e]

    # terms sorted lexicographically share prefixes; cache prefix products
    prefix: Dict[Monomial, Polynomial] = {(): R.one()}

    def product(m):
        k = max((i for i, e in enumerate(m) if e), default=-1)
        m = m[: k + 1]
        hit = prefix.get(m)
        if hit is not None:
            return hit
        val = product(m[:k]) * power(k, m[k])
        prefix[m] = val
        return val

    field = R.field
    acc: Dict[Monomial, object] = {}
    for m, c in f.sorted_terms(MonomialOrder("lex")):
        term = product(m)
        for mm, v in term.terms.items():
            acc[mm] = acc.get(mm, 0) + c * v
    if field.p:
        p = field.p
        return Polynomial(R, {m: v % p for m, v in acc.items() if v % p})
    return Polynomial(R, {m: v for m, v in acc.items() if v})


def sum_polys(ring: PolynomialRing, polys: Iterable[Polynomial]) -> Polynomial:
    f = ring.field
    p = f.p
    out: Dict[Monomial, object] = {}
    for g in polys:
        for m, c in g.terms.items():
            out[m] = out.get(m, 0) + c
    if p:
        return Polynomial(ring, {m: c % p for m, c in out.items() if c % p})
    return Polynomial(ring, {m: c for m, c in out.items() if c})


def _mul_mod_p(a: Dict[Monomial, int], b: Dict[Monomial, int], p: int, nvars: int):
    """Product of two term dicts over Z/p with numpy; None if keys would overflow."""
    ea = np.array(list(a.keys()), dtype=np.int64).reshape(len(a), nvars)
    eb = np.array(list(b.keys()), dtype=np.int64).reshape(len(b), nvars)
    radix = ea.max(axis=0) + eb.max(axis=0) + 1
    if int(radix.max()) >= COMP:
        raise ExponentOverflow("exponent overflow in product")
    place = []
    total = 1
    for r in radix.tolist():
        place.append(total)
        total *= r
    if total >= 2**62:
        return None
    place = np.array(place, dtype=np.int64)
    ka = ea @ place
    kb = eb @ place
    ca = np.array(list(a.values()), dtype=np.int64)
    cb = np.array(list(b.values()), dtype=np.int64)
    keys = (ka[:, None] + kb[None, :]).ravel()
    vals = (ca[:, None] * cb[None, :] % p).ravel()
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    vals = vals[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(keys)) + 1))
    sums = np.add.reduceat(vals, starts) % p
    uniq = keys[starts]
    keep = sums != 0
    uniq = uniq[keep]
    sums = sums[keep]
    exps = np.empty((len(uniq), nvars), dtype=np.int64)
    rest = uniq
    for i in range(nvars - 1, -1, -1):
        exps[:, i] = rest // place[i]
        rest = rest % place[i]
    return dict(zip(map(tuple, exps.tolist()), sums.tolist()))
