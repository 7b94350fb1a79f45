"""Hilbert series numerators of monomial ideals, dimension, degree and multidegree.

Numerators are dicts ``{exponent tuple: int}`` in one variable per grading
component (``(a,)`` for a single grading, ``(a, b)`` for a bigrading).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence, Tuple

from .errors import NotBihomogeneous, UnitIdeal
from .groebner import Ideal, saturation_hilbert_ring
from .monomial import GREVLEX
from .polynomial import Polynomial

Num = Dict[Tuple[int, ...], int]


def _add(a: Num, b: Num, sign: int = 1) -> Num:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + sign * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _mul(a: Num, b: Num) -> Num:
    out: Num = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _shift(a: Num, d: Tuple[int, ...]) -> Num:
    return {tuple(x + y for x, y in zip(k, d)): v for k, v in a.items()}


def _one_minus(d: Tuple[int, ...]) -> Num:
    zero = (0,) * len(d)
    if d == zero:
        return {}
    return {zero: 1, d: -1}


def minimalize(gens: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """Minimal generators of a monomial ideal."""
    gens = sorted(set(gens), key=sum)
    out: List[Tuple[int, ...]] = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _deg(m, grading) -> Tuple[int, ...]:
    return tuple(sum(e * g[j] for e, g in zip(m, grading)) for j in range(len(grading[0])))


def monomial_numerator(gens: Sequence[Tuple[int, ...]], grading: Sequence[Tuple[int, ...]]) -> Num:
    """Numerator of the Hilbert series of K[x]/(gens) for a monomial ideal.

    ``grading[i]`` is the degree vector of variable i.  Pivot recursion
    N(I) = N(I + (p)) + t^deg(p) N(I : p) on a variable power p, with closed
    forms when at most one generator is not a pure power.
    """
    ncomp = len(grading[0]) if grading else 1
    zero = (0,) * ncomp
    return _num(minimalize(gens), grading, zero)


def _num(gens, grading, zero) -> Num:
    if not gens:
        return {zero: 1}
    if any(not any(m) for m in gens):
        return {}
    pure = [m for m in gens if sum(1 for e in m if e) == 1]
    mixed = [m for m in gens if sum(1 for e in m if e) > 1]
    if len(mixed) <= 1:
        base: Num = {zero: 1}
        for m in pure:
            base = _mul(base, _one_minus(_deg(m, grading)))
        if not mixed:
            return base
        m = mixed[0]
        # N(P + (m)) = N(P) - t^deg m N(P : m)
        colon: Num = {zero: 1}
        for q in pure:
            i = next(j for j, e in enumerate(q) if e)
            r = list(q)
            r[i] = q[i] - m[i]
            colon = _mul(colon, _one_minus(_deg(tuple(r), grading)))
        return _add(base, _shift(colon, _deg(m, grading)), -1)
    # split into variable-disjoint blocks when possible
    comps = _components(gens)
    if len(comps) > 1:
        out: Num = {zero: 1}
        for c in comps:
            out = _mul(out, _num(c, grading, zero))
        return out
    nvars = len(gens[0])
    counts = [0] * nvars
    for m in mixed:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    i = max(range(nvars), key=lambda j: counts[j])
    exps = sorted(m[i] for m in mixed if m[i])
    e = exps[len(exps) // 2]
    p = tuple(e if j == i else 0 for j in range(nvars))
    with_p = minimalize([m for m in gens if m[i] < e] + [p])
    colon = minimalize([tuple(max(a - b, 0) for a, b in zip(m, p)) for m in gens])
    return _add(_num(with_p, grading, zero), _shift(_num(colon, grading, zero), _deg(p, grading)))


def _components(gens):
    """Group generators whose supports are connected."""
    groups: List[Tuple[set, list]] = []
    for m in gens:
        supp = {i for i, e in enumerate(m) if e}
        merged_s, merged_g = set(supp), [m]
        rest = []
        for s, g in groups:
            if s & merged_s:
                merged_s |= s
                merged_g += g
            else:
                rest.append((s, g))
        groups = rest + [(merged_s, merged_g)]
    return [g for _, g in groups]


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series numerator over prod_i (1 - t^deg x_i)."""

    numerator: Tuple[Tuple[Tuple[int, ...], int], ...]
    grading: Tuple[Tuple[int, ...], ...]

    @property
    def num_vars(self) -> int:
        return len(self.grading)

    def as_dict(self) -> Num:
        return dict(self.numerator)

    def univariate(self) -> List[int]:
        """Coefficient list of a single-graded numerator."""
        d = self.as_dict()
        if not d:
            return [0]
        top = max(k[0] for k in d)
        return [d.get((i,), 0) for i in range(top + 1)]


def hilbert_from_leads(leads, grading) -> HilbertData:
    grading = tuple(tuple(g) for g in grading)
    num = monomial_numerator(leads, grading)
    return HilbertData(tuple(sorted(num.items())), grading)


def hilbert_numerator(I: Ideal, grading=None) -> HilbertData:
    """Hilbert numerator of R/I from the grevlex initial ideal."""
    if grading is None:
        grading = [(w,) for w in I.ring.weights]
    return hilbert_from_leads(I.leading_monomials(GREVLEX), grading)


def _poly_div_one_minus_t(c: List[int]) -> Tuple[List[int], int]:
    """Divide out (1 - t) as often as possible; returns (quotient, multiplicity)."""
    k = 0
    while len(c) > 1 and sum(c) == 0:
        # synthetic division by (1 - t): q_i = sum_{j<=i} c_j
        q = []
        s = 0
        for v in c[:-1]:
            s += v
            q.append(s)
        c = q
        k += 1
    return c, k


def dim_degree_from_hilbert(h: HilbertData) -> Tuple[int, int]:
    """(projective dimension, degree) from a single-graded Hilbert numerator."""
    c = h.univariate()
    if all(v == 0 for v in c):
        raise UnitIdeal("quotient ring is zero")
    weights = [g[0] for g in h.grading]
    if any(w <= 0 for w in weights):
        raise ValueError("dimension needs positive weights")
    red, k = _poly_div_one_minus_t(c)
    dim_affine = len(weights) - k
    deg = Fraction(sum(red))
    for w in weights:
        deg /= w
    if deg.denominator != 1:
        raise ValueError(f"non-integral degree {deg} for a weighted grading")
    return dim_affine - 1, int(deg)


def dim_degree(I: Ideal) -> Tuple[int, int]:
    """(projective dim, degree) of V(I); projective dim -1 for an irrelevant ideal."""
    return dim_degree_from_hilbert(hilbert_numerator(I))


def dim_degree_saturation(I: Ideal, f: Polynomial) -> Tuple[int, int]:
    """(projective dim, degree) of V(I : f^oo), without forming the saturation."""
    S, leads = saturation_hilbert_ring(I, f)
    h = hilbert_from_leads(leads, [(w,) for w in S.weights])
    return dim_degree_from_hilbert(h)


def bigraded_numerator(I: Ideal, nx: int) -> HilbertData:
    n = I.ring.nvars
    grading = [(1, 0)] * nx + [(0, 1)] * (n - nx)
    for g in I.gens:
        bideg = {(sum(m[:nx]), sum(m[nx:])) for m in g.terms}
        if len(bideg) > 1:
            raise NotBihomogeneous(f"{g} is not bihomogeneous")
    return hilbert_from_leads(I.leading_monomials(GREVLEX), grading)


def multidegree_classes(h: HilbertData) -> Dict[Tuple[int, int], int]:
    """Lowest-degree part of K(1 - s1, 1 - s2): {(a, b): coefficient of s1^a s2^b}."""
    num = h.as_dict()
    out: Dict[Tuple[int, int], int] = {}
    for (a, b), c in num.items():
        # (1 - s1)^a (1 - s2)^b
        for i in range(a + 1):
            ci = comb(a, i) * (-1) ** i
            for j in range(b + 1):
                cj = comb(b, j) * (-1) ** j
                out[(i, j)] = out.get((i, j), 0) + c * ci * cj
    out = {k: v for k, v in out.items() if v}
    if not out:
        return {}
    low = min(a + b for a, b in out)
    return {k: v for k, v in out.items() if sum(k) == low}


def multidegree(I: Ideal, nx: int) -> List[int]:
    """Multidegree of a bihomogeneous ideal in K[x_0..x_n, y_0..y_m] (nx = n + 1).

    Returned as (d_r, ..., d_0) with r = dim V(I) and d_i the coefficient of
    H1^(n-i) H2^(m-r+i), i.e. projective-degree indexing.
    """
    h = bigraded_numerator(I, nx)
    classes = multidegree_classes(h)
    n = nx - 1
    m = I.ring.nvars - nx - 1
    if not classes:
        raise UnitIdeal("quotient ring is zero")
    codim = sum(next(iter(classes)))
    r = n + m - codim
    return [classes.get((n - i, m - r + i), 0) for i in range(r, -1, -1)]
