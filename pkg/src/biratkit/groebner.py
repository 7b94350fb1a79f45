"""Ideals and the ideal-theoretic operations built on Groebner bases."""

from __future__ import annotations

import logging
import threading
from typing import Dict, List, Optional, Sequence

from .buchberger import Engine
from .errors import DegreeMismatch, NotHomogeneous, RingMismatch, ZeroDivisor, ZeroIdeal
from .monomial import GREVLEX, MonomialOrder
from .polynomial import Polynomial, PolynomialRing

log = logging.getLogger(__name__)


class Ideal:
    """A homogeneous ideal given by generators; Groebner bases are memoised per order."""

    def __init__(self, ring: PolynomialRing, gens: Sequence[Polynomial] = (), check: bool = True):
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
            if check and not g.is_homogeneous():
                raise NotHomogeneous(f"generator {g} is not homogeneous")
        self.ring = ring
        self.gens = gens
        self._gb: Dict[MonomialOrder, tuple] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({format_ideal(self)})"

    def __str__(self):
        return format_ideal(self)

    # Groebner bases ----------------------------------------------------------------
    def _gb_data(self, order: MonomialOrder):
        hit = self._gb.get(order)
        if hit is not None:
            return hit
        engine = Engine(self.ring, order)
        raw = engine.groebner(self.gens)
        polys = [engine.external(k, c) for k, c in raw]
        data = (engine, raw, polys, engine.reducer_set(raw))
        with self._lock:
            # concurrent callers may both compute; first stored result wins
            self._gb.setdefault(order, data)
        return self._gb[order]

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> List[Polynomial]:
        return list(self._gb_data(order)[2])

    def leading_monomials(self, order: MonomialOrder = GREVLEX) -> List[tuple]:
        engine, raw, _, _ = self._gb_data(order)
        return [engine.packer.unpack(k[0]) for k, _ in raw]

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        if f.is_zero():
            return f
        engine, raw, _, reducers = self._gb_data(order)
        keys, coeffs = engine.internal(f)
        k, c = engine.reduce(keys, coeffs, reducers, {})
        return engine.external(k, c)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        """Mutual membership of generators."""
        if other.ring != self.ring:
            raise RingMismatch(f"{other.ring} vs {self.ring}")
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatch(f"{other.ring} vs {self.ring}")
        return Ideal(self.ring, self.gens + other.gens, check=False)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens], check=False)

    def add_gens(self, gens: Sequence[Polynomial]) -> "Ideal":
        return Ideal(self.ring, self.gens + list(gens))

    def trim(self) -> "Ideal":
        """Same ideal, generated by its reduced grevlex basis."""
        return Ideal(self.ring, self.groebner_basis(), check=False)

    def degree_part(self, d: int) -> List[Polynomial]:
        """A basis (row-reduced) of the degree-d component I_d."""
        from .linalg import row_reduce, Matrix

        R = self.ring
        mons = R.monomials_of_degree(d)
        col = {m: i for i, m in enumerate(mons)}
        rows = []
        for g in self.gens:
            e = d - g.degree()
            if e < 0:
                continue
            for m in R.monomials_of_degree(e):
                h = g.mul_monomial(m)
                row = [R.field.zero()] * len(mons)
                for mm, c in h.terms.items():
                    row[col[mm]] = c
                rows.append(row)
        if not rows:
            return []
        rref, rank, _ = row_reduce(Matrix.raw(R.field, rows, len(mons)))
        out = []
        for r in rref.rows[:rank]:
            out.append(R.from_dict({mons[i]: v for i, v in enumerate(r) if v}))
        return out


def format_ideal(I: Ideal) -> str:
    if not I.gens:
        return "ideal (0)"
    return "ideal (" + ", ".join(str(g) for g in I.gens) + ")"


# module-level operations ------------------------------------------------------------

def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX) -> List[Polynomial]:
    return I.groebner_basis(order)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def _fresh(names: Sequence[str], base: str) -> str:
    name = base
    i = 0
    while name in names:
        i += 1
        name = f"{base}{i}"
    return name


def extend_ring(ring: PolynomialRing, front: Sequence[str] = (), back: Sequence[str] = (),
                front_weights: Sequence[int] = None, back_weights: Sequence[int] = None):
    """New ring with extra variables before/after the existing ones (names made fresh)."""
    names = list(ring.names)
    fnames = []
    for n in front:
        n = _fresh(names + fnames, n)
        fnames.append(n)
    bnames = []
    for n in back:
        n = _fresh(names + fnames + bnames, n)
        bnames.append(n)
    fw = list(front_weights) if front_weights is not None else [1] * len(fnames)
    bw = list(back_weights) if back_weights is not None else [1] * len(bnames)
    S = PolynomialRing(ring.field, fnames + names + bnames, fw + list(ring.weights) + bw)
    shift = len(fnames)
    index_map = [i + shift for i in range(ring.nvars)]
    return S, index_map


def subring(ring: PolynomialRing, start: int) -> PolynomialRing:
    return PolynomialRing(ring.field, ring.names[start:], ring.weights[start:])


def eliminate_front(ring: PolynomialRing, gens: Sequence[Polynomial], k: int) -> List[Polynomial]:
    """GB elements (Block(k) order) free of the first k variables, moved to the subring."""
    engine = Engine(ring, MonomialOrder("block", k))
    raw = engine.groebner(gens)
    sub = subring(ring, k)
    out = []
    for keys, coeffs in raw:
        f = engine.external(keys, coeffs)
        if any(any(m[:k]) for m in f.terms):
            continue
        out.append(Polynomial(sub, {m[k:]: c for m, c in f.terms.items()}))
    return out


def elimination(I: Ideal, k: int) -> Ideal:
    """I intersected with K[x_k, ..., x_n] (first k variables eliminated)."""
    if not 0 <= k <= I.ring.nvars:
        raise ValueError(f"cannot eliminate {k} of {I.ring.nvars} variables")
    sub = subring(I.ring, k)
    if k == 0:
        return Ideal(sub, I.gens, check=False)
    return Ideal(sub, eliminate_front(I.ring, I.gens, k), check=False)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J with an eliminated weight-0 variable t."""
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    S, idx = extend_ring(I.ring, front=["t"], front_weights=[0])
    t = S.var(0)
    one_minus_t = S.one() - t
    gens = [t * g.change_ring(S, idx) for g in I.gens]
    gens += [one_minus_t * g.change_ring(S, idx) for g in J.gens]
    return Ideal(I.ring, eliminate_front(S, gens, 1), check=False)


def divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    """h / f for f dividing h (multivariate long division)."""
    R = h.ring
    field = R.field
    lm_f = f.leading_monomial()
    lc_inv = field.inv(f.terms[lm_f])
    q = R.zero()
    r = h
    while not r.is_zero():
        lm_r = r.leading_monomial()
        if any(a < b for a, b in zip(lm_r, lm_f)):
            raise ValueError("division is not exact")
        m = tuple(a - b for a, b in zip(lm_r, lm_f))
        c = field.mul(r.terms[lm_r], lc_inv)
        q = q + R.monomial(m, _wrap(field, c))
        r = r - f.mul_monomial(m, c)
    return q


def _wrap(field, raw):
    from .field import Scalar

    return Scalar(field, raw)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = (I ∩ (f)) / f."""
    if f.is_zero():
        raise ZeroDivisor("quotient by the zero polynomial")
    if f.is_constant():
        return I
    inter = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divide_exact(g, f) for g in inter.gens], check=False)


def quotient_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J = intersection of I : g over generators g of J."""
    if J.is_zero():
        raise ZeroIdeal("quotient by the zero ideal")
    out = None
    for g in J.gens:
        q = ideal_quotient(I, g)
        out = q if out is None else intersect(out, q)
    return out


def saturate_principal(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^oo via a new variable z = f of weight deg f.

    Bayer's trick: with z last in a weighted grevlex order, dividing the Groebner
    basis of I + (z - f) by the largest powers of z gives a basis of its
    z-saturation; substituting z = f back yields I : f^oo.
    """
    if f.is_zero():
        raise ZeroDivisor("saturation by the zero polynomial")
    if f.is_constant():
        return I
    if not f.is_homogeneous():
        raise NotHomogeneous("saturating element must be homogeneous")
    R = I.ring
    S, idx = extend_ring(R, back=["z"], back_weights=[f.degree()])
    z = S.var(S.nvars - 1)
    gens = [g.change_ring(S, idx) for g in I.gens] + [z - f.change_ring(S, idx)]
    engine = Engine(S, GREVLEX)
    raw = engine.groebner(gens)
    images = R.gens() + [f]
    out = []
    for keys, coeffs in raw:
        g = engine.external(keys, coeffs)
        zmin = min(m[-1] for m in g.terms)
        if zmin:
            g = Polynomial(S, {m[:-1] + (m[-1] - zmin,): c for m, c in g.terms.items()})
        if all(m[-1] == 0 for m in g.terms):
            out.append(Polynomial(R, {m[:-1]: c for m, c in g.terms.items()}))
        else:
            out.append(g.substitute(images))
    return Ideal(R, out, check=False)


def saturate_iterated(I: Ideal, f: Polynomial, max_steps: int = 1000) -> Ideal:
    """I : f^oo by repeated quotients until stabilization."""
    cur = I
    for _ in range(max_steps):
        nxt = ideal_quotient(cur, f)
        if cur.contains_ideal(nxt):
            return cur
        cur = nxt.trim()
    raise RuntimeError("saturation did not stabilise")


def saturate(I: Ideal, J, strategy: str = "bayer") -> Ideal:
    """I : J^oo.

    ``J`` may be an Ideal or a single polynomial.  For several generators the
    result is the intersection of the saturations by each generator.  Strategy
    ``"bayer"`` uses the auxiliary-variable trick for each principal step,
    ``"iterate"`` repeated ideal quotients.
    """
    if isinstance(J, Polynomial):
        J = Ideal(J.ring, [J], check=False)
    if J.ring != I.ring:
        raise RingMismatch(f"{J.ring} vs {I.ring}")
    if J.is_zero():
        raise ZeroIdeal("saturation by the zero ideal")
    if any(g.is_constant() for g in J.gens):
        return I
    step = saturate_principal if strategy == "bayer" else saturate_iterated
    out = None
    for g in J.gens:
        s = step(I, g)
        if s.is_unit():
            # contributes nothing to the intersection
            if out is None:
                out = s
            continue
        out = s if out is None or out.is_unit() else intersect(out, s)
    return out


def saturation_hilbert_ring(I: Ideal, f: Polynomial):
    """(ring, GB leading monomials) of (I + (z - f)) : z^oo in K[x, z], deg z = deg f.

    Its weighted Hilbert series equals that of K[x]/(I : f^oo); used to read
    dimension and degree of a saturation without substituting back.
    """
    R = I.ring
    S, idx = extend_ring(R, back=["z"], back_weights=[f.degree()])
    z = S.var(S.nvars - 1)
    gens = [g.change_ring(S, idx) for g in I.gens] + [z - f.change_ring(S, idx)]
    engine = Engine(S, GREVLEX)
    raw = engine.groebner(gens)
    leads = []
    for keys, _ in raw:
        m = engine.packer.unpack(keys[0])
        leads.append(m[:-1] + (0,))
    return S, leads


def ring_map_kernel(source: PolynomialRing, images: Sequence[Polynomial],
                    source_ideal: Optional[Ideal] = None, target_ideal: Optional[Ideal] = None) -> Ideal:
    """Kernel of K[y]/J -> K[x]/I, y_i -> F_i (an ideal of K[y] containing J)."""
    if len(images) != source.nvars:
        raise RingMismatch(f"{len(images)} images for {source.nvars} variables")
    nonzero = [F for F in images if not F.is_zero()]
    degs = {F.degree() for F in nonzero}
    if len(degs) > 1:
        raise DegreeMismatch(f"images have degrees {sorted(degs)}")
    R = images[0].ring
    delta = degs.pop() if degs else 1
    n = R.nvars
    S = PolynomialRing(R.field, list(R.names) + [_fresh(R.names, y) for y in source.names],
                       list(R.weights) + [delta] * source.nvars)
    xmap = list(range(n))
    gens = []
    if target_ideal is not None:
        gens += [g.change_ring(S, xmap) for g in target_ideal.gens]
    for i, F in enumerate(images):
        e = [0] * S.nvars
        e[n + i] = 1
        gens.append(S.monomial(tuple(e)) - F.change_ring(S, xmap))
    elim = eliminate_front(S, gens, n)
    out = [Polynomial(source, dict(g.terms)) for g in elim]
    if source_ideal is not None:
        out += source_ideal.gens
    return Ideal(source, out, check=False)
