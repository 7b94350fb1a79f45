"""Standard examples of rational maps, used by the tests and the session generator."""

from __future__ import annotations

import itertools
import random
from typing import List, Sequence, Tuple

from .field import FieldSpec
from .groebner import Ideal
from .polynomial import Polynomial, PolynomialRing
from .ratmap import RationalMap, inverse_map, kernel_component, make_map

DEFAULT_PRIME = 70001


def projective_space(n: int, p: int = DEFAULT_PRIME, name: str = "x") -> PolynomialRing:
    return PolynomialRing(FieldSpec(p), [f"{name}{i}" for i in range(n + 1)])


def det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    k = len(M)
    if k == 1:
        return M[0][0]
    total = None
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def minors(M: Sequence[Sequence[Polynomial]], k: int) -> List[Polynomial]:
    """k x k minors, rows and columns in lexicographic order."""
    rows, cols = len(M), len(M[0])
    out = []
    for r in itertools.combinations(range(rows), k):
        for c in itertools.combinations(range(cols), k):
            out.append(det([[M[i][j] for j in c] for i in r]))
    return out


def random_linear_matrix(R: PolynomialRing, rows: int, cols: int, seed: int) -> List[List[Polynomial]]:
    rng = random.Random(seed)
    return [[R.random_form(1, rng) for _ in range(cols)] for _ in range(rows)]


def with_image_target(forms: Sequence[Polynomial], degree: int = 2) -> RationalMap:
    """Map whose target is cut out by the degree-``degree`` part of its image ideal."""
    phi0 = make_map(forms)
    J = kernel_component(phi0, degree)
    return make_map(forms, target_ideal=Ideal(phi0.target_ring, J))


def cremona(p: int = DEFAULT_PRIME) -> RationalMap:
    """Standard quadratic transformation of P^2."""
    R = projective_space(2, p)
    x0, x1, x2 = R.gens()
    return make_map([x1 * x2, x0 * x2, x0 * x1], target_ring=projective_space(2, p, "y"))


def veronese(p: int = DEFAULT_PRIME) -> RationalMap:
    """P^2 -> P^5 by all quadrics (target ideal 0)."""
    R = projective_space(2, p)
    x0, x1, x2 = R.gens()
    return make_map([x0 * x0, x0 * x1, x0 * x2, x1 * x1, x1 * x2, x2 * x2])


def cubo_cubic(seed: int = 0, p: int = DEFAULT_PRIME) -> RationalMap:
    """P^3 --> P^3 by the maximal minors of a random 4 x 3 matrix of linear forms."""
    R = projective_space(3, p)
    return make_map(minors(random_linear_matrix(R, 4, 3, seed), 3))


def example2(seed: int = 0, p: int = DEFAULT_PRIME) -> RationalMap:
    """P^6 --> G(2,4) ⊂ P^9 by the maximal minors of a random 3 x 5 linear matrix."""
    R = projective_space(6, p)
    return with_image_target(minors(random_linear_matrix(R, 3, 5, seed), 3))


def grassmannian_family(p: int = DEFAULT_PRIME) -> Tuple[RationalMap, RationalMap]:
    """(psi, phi): psi: P^4 --> G(1,3) by the 2 x 2 minors of [[x0..x3], [x1..x4]] and
    its inverse phi: G(1,3) --> P^4."""
    R = projective_space(4, p)
    x = R.gens()
    M = [x[0:4], x[1:5]]
    psi = with_image_target(minors(M, 2))
    return psi, inverse_map(psi)


def example3_quartic(p: int = 16411) -> Tuple[PolynomialRing, Polynomial]:
    """Sum of the squares of the 2 x 2 minors of a generic 6 x 2 matrix in P^11.

    Variable x_i sits at row i mod 6, column i // 6 (column-major filling).
    """
    R = projective_space(11, p)
    x = R.gens()
    M = [[x[i], x[6 + i]] for i in range(6)]
    Y = None
    for m in minors(M, 2):
        Y = m * m if Y is None else Y + m * m
    return R, Y


def example3(p: int = 16411) -> Tuple[Ideal, Ideal]:
    """(Y, X): the quartic hypersurface and its singular scheme (jacobian ideal)."""
    R, Y = example3_quartic(p)
    jac = [Y.derivative(i) for i in range(R.nvars)]
    return Ideal(R, [Y]), Ideal(R, jac)
