"""Buchberger's algorithm on packed monomials.

Internal polynomials are pairs ``(keys, coeffs)`` with ``keys`` strictly
decreasing packed monomials (see :class:`~biratkit.monomial.Packer`).
Reducers are always monic.
"""

from __future__ import annotations

import heapq
import logging
from typing import List, Optional, Sequence, Tuple

from .monomial import MonomialOrder, Packer
from .polynomial import Polynomial, PolynomialRing

log = logging.getLogger(__name__)

IPoly = Tuple[List[int], list]


class _Elem:
    __slots__ = ("keys", "coeffs", "lead", "lexp", "lx", "sugar", "tail")

    def __init__(self, keys, coeffs, packer: Packer, sugar: int):
        self.keys = keys
        self.coeffs = coeffs
        self.lead = keys[0]
        self.lexp, self.lx, _ = packer.info(keys[0])
        self.sugar = sugar
        self.tail = list(zip(keys[1:], coeffs[1:]))


class Engine:
    """Groebner machinery for one (ring, order) pair."""

    def __init__(self, ring: PolynomialRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.field = ring.field
        self.p = ring.field.p
        self.packer = Packer(ring.nvars, ring.weights, order)
        self.weights = ring.weights
        self.stats = {"pairs": 0, "reductions": 0, "zero": 0}

    # conversion ---------------------------------------------------------------
    def internal(self, f: Polynomial) -> IPoly:
        pk = self.packer.pack
        items = sorted(((pk(m), c) for m, c in f.terms.items()), reverse=True)
        return [k for k, _ in items], [c for _, c in items]

    def external(self, keys: Sequence[int], coeffs: Sequence) -> Polynomial:
        up = self.packer.unpack
        return Polynomial(self.ring, {up(k): c for k, c in zip(keys, coeffs)})

    def monic(self, keys, coeffs) -> IPoly:
        f = self.field
        lc = coeffs[0]
        if lc == 1:
            return keys, coeffs
        inv = f.inv(lc)
        if self.p:
            p = self.p
            return keys, [c * inv % p for c in coeffs]
        return keys, [c * inv for c in coeffs]

    def degree_of_key(self, k: int) -> int:
        return self.packer.info(k)[2]

    # reduction -------------------------------------------------------------------
    def reduce(self, keys, coeffs, basis: List[_Elem], cache: dict, full: bool = True) -> IPoly:
        """Normal form of (keys, coeffs) modulo ``basis`` (monic elements).

        ``cache`` maps a packed monomial to ``[reducer index or -1, #checked]``.
        """
        p = self.p
        info = self.packer.info
        guard = self.packer.xguard
        nb = len(basis)
        acc = dict(zip(keys, coeffs))
        heap = [-k for k in keys]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        out_k, out_c = [], []
        nred = 0
        while heap:
            k = -pop(heap)
            c = acc.pop(k, None)
            if c is None:
                continue
            ent = cache.get(k)
            if ent is None:
                ent = [-1, 0]
                cache[k] = ent
            r = ent[0]
            if r < 0 and ent[1] < nb:
                x = info(k)[1]
                for j in range(ent[1], nb):
                    gx = basis[j].lx
                    if ((x - gx + guard) & guard) == guard:
                        r = j
                        ent[0] = j
                        break
                ent[1] = nb
            if r < 0:
                out_k.append(k)
                out_c.append(c)
                if not full:
                    rest = sorted(acc.items(), reverse=True)
                    out_k.extend(t[0] for t in rest)
                    out_c.extend(t[1] for t in rest)
                    break
                continue
            nred += 1
            g = basis[r]
            d = k - g.lead
            get = acc.get
            if p:
                for gk, gc in g.tail:
                    nk = gk + d
                    v = get(nk)
                    if v is None:
                        acc[nk] = (-c * gc) % p
                        push(heap, -nk)
                    else:
                        v = (v - c * gc) % p
                        if v:
                            acc[nk] = v
                        else:
                            del acc[nk]
            else:
                for gk, gc in g.tail:
                    nk = gk + d
                    v = get(nk)
                    if v is None:
                        acc[nk] = -c * gc
                        push(heap, -nk)
                    else:
                        v = v - c * gc
                        if v:
                            acc[nk] = v
                        else:
                            del acc[nk]
        self.stats["reductions"] += nred
        return out_k, out_c

    def spoly(self, a: _Elem, b: _Elem, lcm_key: int) -> IPoly:
        """S-polynomial of monic elements (leading terms cancel)."""
        p = self.p
        da = lcm_key - a.lead
        db = lcm_key - b.lead
        acc = {}
        for k, c in a.tail:
            acc[k + da] = c
        get = acc.get
        for k, c in b.tail:
            nk = k + db
            v = get(nk)
            if v is None:
                acc[nk] = -c % p if p else -c
            else:
                v = (v - c) % p if p else v - c
                if v:
                    acc[nk] = v
                else:
                    del acc[nk]
        items = sorted(acc.items(), reverse=True)
        return [t[0] for t in items], [t[1] for t in items]

    # Buchberger ------------------------------------------------------------------
    def groebner(self, gens: Sequence[Polynomial], degree_bound: Optional[int] = None) -> List[IPoly]:
        """Reduced Groebner basis (monic, sorted by decreasing leading monomial).

        With ``degree_bound`` the computation is truncated: pairs whose sugar
        exceeds the bound are skipped (the result is then a basis only up to
        that degree, for homogeneous input).
        """
        packer = self.packer
        info = packer.info
        guard = packer.xguard
        basis: List[_Elem] = []
        active: List[int] = []
        cache: dict = {}
        work = []  # heap of (sugar, kind, lcm_key, counter, payload)
        counter = 0
        for f in gens:
            if f.is_zero():
                continue
            keys, coeffs = self.internal(f)
            sug = max(info(k)[2] for k in keys)
            work.append((sug, 0, keys[0], counter, (keys, coeffs)))
            counter += 1
        heapq.heapify(work)
        pairs_alive = set()

        def divides(xa, xb):
            return ((xb - xa + guard) & guard) == guard

        def lcm_of(ea, eb):
            m = tuple(max(x, y) for x, y in zip(ea, eb))
            return m

        def insert(keys, coeffs, sug):
            nonlocal counter
            keys, coeffs = self.monic(keys, coeffs)
            h = _Elem(keys, coeffs, packer, sug)
            hi = len(basis)
            basis.append(h)
            hx, he = h.lx, h.lexp
            # Gebauer-Moller update
            cand = []
            for gi in active:
                g = basis[gi]
                m = lcm_of(he, g.lexp)
                coprime = all(not (a and b) for a, b in zip(he, g.lexp))
                cand.append((gi, m, packer.xpack(m), coprime))
            keep = []
            for idx, (gi, m, mx, coprime) in enumerate(cand):
                if coprime:
                    keep.append((gi, m, mx, coprime))
                    continue
                dominated = False
                for jdx, (gj, m2, m2x, _) in enumerate(cand):
                    if jdx == idx:
                        continue
                    if divides(m2x, mx) and (m2x != mx or jdx < idx):
                        dominated = True
                        break
                if not dominated:
                    keep.append((gi, m, mx, coprime))
            # drop old pairs: lm(h) | lcm(a,b) strictly w.r.t. both new lcms
            dead = []
            for pr in pairs_alive:
                a, b, lx = pr
                if divides(hx, lx):
                    la = packer.xpack(lcm_of(he, basis[a].lexp))
                    lb = packer.xpack(lcm_of(he, basis[b].lexp))
                    if la != lx and lb != lx:
                        dead.append(pr)
            for pr in dead:
                pairs_alive.discard(pr)
            for gi, m, mx, coprime in keep:
                if coprime:
                    continue
                lk = packer.pack(m)
                g = basis[gi]
                sug_pair = max(
                    h.sugar + info(lk)[2] - info(h.lead)[2],
                    g.sugar + info(lk)[2] - info(g.lead)[2],
                )
                pr = (gi, hi, mx)
                pairs_alive.add(pr)
                heapq.heappush(work, (sug_pair, 1, lk, counter, pr))
                counter += 1
            active[:] = [gi for gi in active if not divides(hx, basis[gi].lx)]
            active.append(hi)

        while work:
            sug, kind, lk, _, payload = heapq.heappop(work)
            if degree_bound is not None and sug > degree_bound:
                break
            if kind == 0:
                keys, coeffs = payload
            else:
                if payload not in pairs_alive:
                    continue
                pairs_alive.discard(payload)
                a, b, _ = payload
                self.stats["pairs"] += 1
                keys, coeffs = self.spoly(basis[a], basis[b], lk)
            if not keys:
                self.stats["zero"] += 1
                continue
            keys, coeffs = self.reduce(keys, coeffs, basis, cache)
            if not keys:
                self.stats["zero"] += 1
                continue
            insert(keys, coeffs, sug)
            if keys[0] == packer.one:
                # unit ideal
                return [([packer.one], [self.field.one()])]
        return self.interreduce([basis[i] for i in active])

    def interreduce(self, elems: List[_Elem]) -> List[IPoly]:
        elems = sorted(elems, key=lambda e: e.lead)
        # drop elements with divisible leads
        minimal: List[_Elem] = []
        for e in elems:
            if not any(self.packer.divides(g.lx, e.lx) for g in minimal):
                minimal.append(e)
        out = []
        cache: dict = {}
        # a tail term is never divisible by its own leading monomial, so the
        # whole minimal set can serve as reducer list with a shared cache
        for e in minimal:
            if e.tail:
                tk, tc = self.reduce([t[0] for t in e.tail], [t[1] for t in e.tail], minimal, cache)
            else:
                tk, tc = [], []
            out.append(([e.lead] + tk, [e.coeffs[0]] + tc))
        out.sort(key=lambda t: t[0][0], reverse=True)
        return out

    def reducer_set(self, gb: List[IPoly]) -> List[_Elem]:
        return [_Elem(list(k), list(c), self.packer, 0) for k, c in gb]
