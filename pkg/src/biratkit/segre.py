"""Push-forwards to P^n of Segre classes s(B, X) from projective degrees."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

from .errors import RingMismatch, UnitIdeal, ZeroIdeal
from .groebner import Ideal
from .hilbert import dim_degree
from .polynomial import Polynomial, PolynomialRing
from .random_source import RandomSource
from .ratmap import PROBABILISTIC, RationalMap, projective_degrees

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChowClass:
    """sum_k coeffs[k] * H^(n-k) in the Chow ring of P^n (k = dimension of the cycle)."""

    ambient_dim: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ambient_dim + 1:
            raise ValueError("a class on P^n has n+1 coefficients")

    def coefficient(self, codim: int) -> int:
        """Coefficient of H^codim."""
        return self.coeffs[self.ambient_dim - codim]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> List[Tuple[int, int]]:
        """(power of H, coefficient) pairs, highest power first, zeros dropped."""
        n = self.ambient_dim
        return [(n - k, c) for k, c in enumerate(self.coeffs) if c]

    def __str__(self):
        return format_chow(self)


def format_chow(c: ChowClass) -> str:
    terms = c.terms()
    if not terms:
        return "0"
    parts = []
    for power, v in terms:
        parts.append(f"{'-' if v < 0 else '+'} {abs(v)}*H^{power}")
    return " ".join(parts)


def common_degree_system(B: Ideal, I: Optional[Ideal] = None) -> Tuple[List[Polynomial], int]:
    """A basis of B_delta, delta the largest generator degree.

    With ``I`` the forms are reduced modulo I and those vanishing there dropped.
    """
    if B.is_zero():
        raise ZeroIdeal("the base scheme ideal is zero")
    if any(g.is_constant() for g in B.gens):
        raise UnitIdeal("the base scheme ideal is the unit ideal")
    delta = max(g.degree() for g in B.gens)
    forms = B.degree_part(delta)
    if I is not None and not I.is_zero():
        reduced = [I.normal_form(f) for f in forms]
        reduced = [f for f in reduced if not f.is_zero()]
        forms = Ideal(B.ring, reduced, check=False).degree_part(delta) if reduced else []
    return forms, delta


def segre_from_degrees(n: int, r: int, delta: int, degrees: List[int], dim_b: int) -> ChowClass:
    """Coefficients from projective degrees (d_r, ..., d_0) of the map given by B_delta.

    c_k = (-1)^(r-k-1) sum_{i=0}^{r-k} (-1)^i C(r-k, i) delta^(r-k-i) d_(r-i), k <= dim B.
    """
    d = {r - j: v for j, v in enumerate(degrees)}
    coeffs = [0] * (n + 1)
    for k in range(0, min(dim_b, r) + 1):
        total = 0
        for i in range(r - k + 1):
            total += (-1) ** i * comb(r - k, i) * delta ** (r - k - i) * d[r - i]
        coeffs[k] = (-1) ** (r - k - 1) * total
    return ChowClass(n, tuple(coeffs))


def segre_class_in_variety(I: Ideal, B: Ideal, mode: str = PROBABILISTIC,
                           rng: Optional[RandomSource] = None) -> ChowClass:
    """Push-forward of s(V(B) ∩ X, X) for X = V(I) ⊂ P^n."""
    if I.ring != B.ring:
        raise RingMismatch(f"{I.ring} vs {B.ring}")
    R = I.ring
    n = R.nvars - 1
    r, deg_x = dim_degree(I)
    if r < 0:
        raise UnitIdeal("the ambient variety is empty")
    try:
        dim_b = dim_degree(I + B)[0]
    except UnitIdeal:
        dim_b = -1
    if dim_b < 0:
        log.warning("the base scheme is empty; its Segre class is zero")
        return ChowClass(n, (0,) * (n + 1))
    forms, delta = common_degree_system(B, I)
    if not forms:
        # B contains X: s(X, X) = [X]
        coeffs = [0] * (n + 1)
        coeffs[r] = deg_x
        return ChowClass(n, tuple(coeffs))
    target = PolynomialRing(R.field, [f"y{i}" for i in range(len(forms))])
    phi = RationalMap(I, Ideal(target, []), forms, validate=False)
    degrees = projective_degrees(phi, mode, rng or RandomSource(0))
    return segre_from_degrees(n, r, delta, degrees, dim_b)


def segre_class(B: Ideal, mode: str = PROBABILISTIC, rng: Optional[RandomSource] = None,
                I: Optional[Ideal] = None) -> ChowClass:
    """Push-forward of s(B, X), X = V(I) (default: the whole projective space)."""
    if I is None:
        I = Ideal(B.ring, [])
    return segre_class_in_variety(I, B, mode, rng)
