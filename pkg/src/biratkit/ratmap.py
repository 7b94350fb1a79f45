"""Rational maps between projective varieties.

A map phi: X = V(I) ⊂ P^n --> Y = V(J) ⊂ P^m is stored as forms F_0..F_m of a
common degree delta in K[x_0..x_n].  Projective degrees are returned in the
order (d_dimX, ..., d_1, d_0).
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AllFormsInSourceIdeal,
    BaseLocusHit,
    ChainMismatch,
    DegreeMismatch,
    FieldMismatch,
    Inconclusive,
    KernelNotFound,
    LengthMismatch,
    NegativeDegree,
    NoLinearSyzygies,
    NotLinearComposite,
    NotWellDefined,
    RingMismatch,
    SourceNotProjectiveSpace,
    UnitIdeal,
    VerificationFailed,
)
from .groebner import Ideal, _fresh, ideal_quotient, ring_map_kernel, saturate, saturate_principal
from .hilbert import dim_degree, dim_degree_saturation, multidegree
from .linalg import Matrix, inverse, row_reduce, solve_kernel_sparse
from .monomial import mono_divides
from .polynomial import Polynomial, PolynomialRing, sum_polys
from .random_source import RandomSource

log = logging.getLogger(__name__)

PROBABILISTIC = "probabilistic"
DETERMINISTIC = "deterministic"
BASE_LOCUS_RETRIES = 5


def saturate_irrelevant(I: Ideal) -> Ideal:
    """I : (x_0..x_n)^oo.

    If no grevlex basis element is divisible by the last variable, I is
    already x_n-saturated, hence saturated w.r.t. the irrelevant ideal.
    """
    if I.is_zero():
        return I
    gb = I.groebner_basis()
    if not any(all(m[-1] > 0 for m in g.terms) for g in gb):
        return I
    return saturate(I, Ideal(I.ring, I.ring.gens(), check=False)).trim()


class RationalMap:
    """phi: V(I) --> V(J) given by forms in the source ring.

    Construct with :func:`make_map`; ``validate=False`` skips the checks and
    the irrelevant saturation (used internally for maps derived from valid ones).
    """

    def __init__(self, source_ideal: Ideal, target_ideal: Ideal, forms: Sequence[Polynomial],
                 validate: bool = True):
        R, S = source_ideal.ring, target_ideal.ring
        forms = list(forms)
        if validate:
            if R.field != S.field:
                raise FieldMismatch(f"source over {R.field}, target over {S.field}")
            if len(forms) != S.nvars:
                raise LengthMismatch(f"{len(forms)} forms for a target with {S.nvars} coordinates")
            for F in forms:
                if F.ring != R:
                    raise RingMismatch(f"form {F} is not in the source ring {R}")
            degs = set()
            for F in forms:
                if F.is_zero():
                    continue
                if not F.is_homogeneous():
                    raise DegreeMismatch(f"form {F} is not homogeneous")
                degs.add(F.degree())
            if len(degs) > 1:
                raise DegreeMismatch(f"forms have degrees {sorted(degs)}")
            if not degs or degs == {0}:
                if not degs:
                    raise AllFormsInSourceIdeal("all forms are zero")
                raise DegreeMismatch("forms must have degree at least 1")
            source_ideal = saturate_irrelevant(source_ideal)
            target_ideal = saturate_irrelevant(target_ideal)
            if all(source_ideal.contains(F) for F in forms):
                raise AllFormsInSourceIdeal("every form lies in the source ideal")
            for g in target_ideal.gens:
                if not source_ideal.contains(g.substitute(forms)):
                    raise NotWellDefined(f"{g} does not pull back into the source ideal")
        self.I = source_ideal
        self.J = target_ideal
        self.forms = forms
        self.delta = next(F.degree() for F in forms if not F.is_zero())
        self._dims: Dict[str, Tuple[int, int]] = {}

    # basic data ---------------------------------------------------------------
    @property
    def source_ring(self) -> PolynomialRing:
        return self.I.ring

    @property
    def target_ring(self) -> PolynomialRing:
        return self.J.ring

    @property
    def field(self):
        return self.source_ring.field

    @property
    def n(self) -> int:
        return self.source_ring.nvars - 1

    @property
    def m(self) -> int:
        return self.target_ring.nvars - 1

    def source_dim_degree(self) -> Tuple[int, int]:
        if "source" not in self._dims:
            self._dims["source"] = dim_degree(self.I)
        return self._dims["source"]

    def target_dim_degree(self) -> Tuple[int, int]:
        if "target" not in self._dims:
            self._dims["target"] = dim_degree(self.J)
        return self._dims["target"]

    @property
    def dim_source(self) -> int:
        return self.source_dim_degree()[0]

    @property
    def dim_target(self) -> int:
        return self.target_dim_degree()[0]

    def pullback(self, g: Polynomial) -> Polynomial:
        if g.ring != self.target_ring:
            raise RingMismatch(f"{g} is not in the target ring")
        return g.substitute(self.forms)

    def __repr__(self):
        return f"RationalMap({self.source_ring} -> {self.target_ring}, delta={self.delta})"


def make_map(forms: Sequence[Polynomial], target_ring: Optional[PolynomialRing] = None,
             source_ideal: Optional[Ideal] = None, target_ideal: Optional[Ideal] = None,
             target_names: str = "y") -> RationalMap:
    """Validated map given by ``forms``; default target ring K[y0..ym], ideals 0."""
    forms = list(forms)
    if not forms:
        raise LengthMismatch("a map needs at least one form")
    R = forms[0].ring
    if source_ideal is None:
        source_ideal = Ideal(R, [])
    if target_ideal is None:
        if target_ring is None:
            target_ring = PolynomialRing(R.field, [f"{target_names}{i}" for i in range(len(forms))])
        target_ideal = Ideal(target_ring, [])
    return RationalMap(source_ideal, target_ideal, forms)


def identity_map(I: Ideal) -> RationalMap:
    return RationalMap(I, I, I.ring.gens(), validate=False)


# images and preimages -------------------------------------------------------------

def image_ideal(phi: RationalMap) -> Ideal:
    """Ideal of the closure of phi(X): kernel of K[y]/J -> K[x]/I."""
    return ring_map_kernel(phi.target_ring, phi.forms, source_ideal=phi.J, target_ideal=phi.I).trim()


def _nonzero_forms(phi: RationalMap) -> List[Polynomial]:
    return [F for F in phi.forms if not F.is_zero()]


def preimage_ideal(phi: RationalMap, b: Ideal, mode: str = DETERMINISTIC,
                   rng: Optional[RandomSource] = None) -> Ideal:
    """Closure of phi^-1(V(b)).

    Deterministic mode saturates by the whole ideal of the forms, probabilistic
    mode by one random combination of them.
    """
    if b.ring != phi.target_ring:
        raise RingMismatch(f"{b.ring} is not the target ring {phi.target_ring}")
    gens = phi.I.gens + [phi.pullback(g) for g in b.gens]
    pre = Ideal(phi.source_ring, gens, check=False)
    if mode == DETERMINISTIC:
        return saturate(pre, Ideal(phi.source_ring, _nonzero_forms(phi), check=False)).trim()
    rng = rng or RandomSource(0)
    return saturate_principal(pre, rng.combination(phi.forms)).trim()


def graph_ring(phi: RationalMap) -> PolynomialRing:
    R, S = phi.source_ring, phi.target_ring
    ynames = []
    for name in S.names:
        ynames.append(_fresh(list(R.names) + ynames, name))
    return PolynomialRing(R.field, list(R.names) + ynames)


def graph_ideal(phi: RationalMap) -> Ideal:
    """Bihomogeneous ideal of the graph closure in K[x, y]: the relations
    y_i F_j - y_j F_i saturated by the ideal of the forms."""
    R = phi.source_ring
    G = graph_ring(phi)
    nx = R.nvars
    xmap = list(range(nx))
    F = [f.change_ring(G, xmap) for f in phi.forms]
    y = [G.var(nx + i) for i in range(phi.m + 1)]
    gens = [g.change_ring(G, xmap) for g in phi.I.gens]
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            h = y[i] * F[j] - y[j] * F[i]
            if not h.is_zero():
                gens.append(h)
    gens += [g.change_ring(G, list(range(nx, G.nvars))) for g in phi.J.gens]
    nonzero = [f for f in F if not f.is_zero()]
    pivot = _nonzerodivisor_form(phi)
    if pivot is not None:
        # over D(F_j) the relations cut out the graph, and no associated point of
        # the graph lies over V(F_j), so one principal saturation already gives it
        return saturate_principal(Ideal(G, gens, check=False), F[pivot]).trim()
    return saturate(Ideal(G, gens, check=False), Ideal(G, nonzero, check=False)).trim()


def _nonzerodivisor_form(phi: RationalMap) -> Optional[int]:
    """Index of the first form that is a nonzerodivisor modulo the source ideal
    (checked as I : F_j = I), or None when every form is a zerodivisor."""
    candidates = sorted((i for i, f in enumerate(phi.forms) if not f.is_zero()),
                        key=lambda i: len(phi.forms[i].terms))
    if phi.I.is_zero():
        return candidates[0]
    for i in candidates:
        if phi.I.contains_ideal(ideal_quotient(phi.I, phi.forms[i])):
            return i
    return None


# restriction to hyperplane sections -----------------------------------------------

def restrict_to_hyperplane(phi: RationalMap, rng: RandomSource,
                           form: Optional[Polynomial] = None) -> RationalMap:
    """phi restricted to X ∩ V(l) for a random linear form l.

    The last variable with nonzero coefficient in l is solved for and
    substituted, so the ambient projective space drops one dimension.
    """
    R = phi.source_ring
    if R.nvars < 2:
        raise ValueError("cannot cut a zero-dimensional ambient space")
    field = R.field
    l = form if form is not None else rng.linear_form(R)
    coeffs = [l.terms.get(tuple(int(i == k) for i in range(R.nvars)), 0) for k in range(R.nvars)]
    k = max(i for i, c in enumerate(coeffs) if c)
    names = [nm for i, nm in enumerate(R.names) if i != k]
    R2 = PolynomialRing(field, names)
    images = []
    j = 0
    inv = field.inv(coeffs[k])
    for i in range(R.nvars):
        if i == k:
            # x_k = -(sum_{i != k} c_i x_i) / c_k
            lin = [field.neg(field.mul(coeffs[t], inv)) for t in range(R.nvars) if t != k]
            images.append(R2.linear_form(lin))
        else:
            images.append(R2.var(j))
            j += 1
    I2 = Ideal(R2, [g.substitute(images) for g in phi.I.gens], check=False)
    forms = [F.substitute(images) for F in phi.forms]
    psi = RationalMap.__new__(RationalMap)
    psi.I, psi.J, psi.forms, psi.delta = I2, phi.J, forms, phi.delta
    psi._dims = {}
    return psi


# projective degrees --------------------------------------------------------------

def _d0(phi: RationalMap, s: int, rng: RandomSource) -> Optional[int]:
    """d_0 of a map from a source of dimension s; None when the preimage is empty."""
    if all(F.is_zero() for F in phi.forms):
        return None
    pulls = [rng.combination(phi.forms) for _ in range(s)]
    g = rng.combination(phi.forms)
    while g.is_zero():
        g = rng.combination(phi.forms)
    pre = Ideal(phi.source_ring, phi.I.gens + [p for p in pulls if not p.is_zero()], check=False)
    try:
        dim, deg = dim_degree_saturation(pre, g)
    except UnitIdeal:
        return None
    if dim < 0:
        return None
    return deg if dim == 0 else 0


def _di_direct(phi: RationalMap, r: int, i: int, rng: RandomSource) -> Optional[int]:
    """d_i from preimages of random linear spaces, without restriction."""
    pulls = [rng.combination(phi.forms) for _ in range(r - i)]
    g = rng.combination(phi.forms)
    pre = Ideal(phi.source_ring, phi.I.gens + [p for p in pulls if not p.is_zero()], check=False)
    try:
        dim, deg = dim_degree_saturation(pre, g)
    except UnitIdeal:
        return None
    if dim < 0:
        return None
    return deg if dim == i else 0


def projective_degrees(phi: RationalMap, mode: str = PROBABILISTIC, rng: Optional[RandomSource] = None,
                       count: Optional[int] = None, restrict: bool = True) -> List[int]:
    """(d_r, ..., d_0) with r = dim X, or the last count+1 entries (d_count, ..., d_0)."""
    r = phi.dim_source
    if r < 0:
        raise UnitIdeal("the source variety is empty")
    top = r if count is None else min(count, r)
    if mode == DETERMINISTIC:
        degs = multidegree(graph_ideal(phi), phi.source_ring.nvars)
        return degs[len(degs) - top - 1:]
    rng = rng or RandomSource(0)
    out: Dict[int, int] = {}
    if restrict:
        # d_i(phi) = d_0(phi restricted to i general hyperplane sections)
        chain = [phi]
        for _ in range(top):
            chain.append(restrict_to_hyperplane(chain[-1], rng))
        empty = False
        for i in range(top, -1, -1):
            if empty:
                out[i] = 0
                continue
            v = _d0(chain[i], r - i, rng)
            if v is None:
                empty = True
                v = 0
            out[i] = v
    else:
        empty = False
        for i in range(top, -1, -1):
            v = None if empty else _di_direct(phi, r, i, rng)
            if v is None:
                empty = True
                v = 0
            out[i] = v
    return [out[i] for i in range(top, -1, -1)]


# degree, dominance, birationality -------------------------------------------------

def degree_of_map(phi: RationalMap, mode: str = PROBABILISTIC, rng: Optional[RandomSource] = None) -> int:
    """Generic fiber cardinality of phi onto its image; 0 if not generically finite."""
    rng = rng or RandomSource(0)
    if mode == PROBABILISTIC and phi.I.is_zero():
        return _degree_by_fiber(phi, rng)
    d0 = projective_degrees(phi, mode, rng, count=0)[0]
    if d0 == 0:
        return 0
    dim_img, deg_img = dim_degree(image_ideal(phi))
    if dim_img != phi.dim_source:
        return 0
    return d0 // deg_img


def _degree_by_fiber(phi: RationalMap, rng: RandomSource) -> int:
    R = phi.source_ring
    for attempt in range(BASE_LOCUS_RETRIES):
        p = rng.point(R.field, R.nvars)
        q = [F.evaluate(p) for F in phi.forms]
        if not any(q):
            log.info("random point hit the base locus (attempt %d)", attempt + 1)
            continue
        j0 = next(i for i, v in enumerate(q) if v)
        Fj = phi.forms[j0]
        gens = []
        for i, F in enumerate(phi.forms):
            if i == j0:
                continue
            h = F.scale(q[j0]) - Fj.scale(q[i])
            if not h.is_zero():
                gens.append(h)
        try:
            dim, deg = dim_degree_saturation(Ideal(R, gens, check=False), Fj)
        except UnitIdeal:
            raise VerificationFailed("fiber through a sampled point is empty")
        return deg if dim == 0 else 0
    raise BaseLocusHit(f"{BASE_LOCUS_RETRIES} random points all lay in the base locus")


def _probably_dominant(phi: RationalMap, rng: RandomSource) -> bool:
    dim_y = phi.dim_target
    dim_x = phi.dim_source
    if dim_x < dim_y:
        return False
    pulls = [rng.combination(phi.forms) for _ in range(dim_y)]
    g = rng.combination(phi.forms)
    pre = Ideal(phi.source_ring, phi.I.gens + [p for p in pulls if not p.is_zero()], check=False)
    try:
        dim, _ = dim_degree_saturation(pre, g)
    except UnitIdeal:
        return False
    return dim == dim_x - dim_y


def is_dominant(phi: RationalMap, mode: str = PROBABILISTIC, rng: Optional[RandomSource] = None,
                max_degree: int = 4) -> bool:
    rng = rng or RandomSource(0)
    if _probably_dominant(phi, rng):
        return True
    if mode == PROBABILISTIC:
        return False
    for d in range(1, max_degree + 1):
        if kernel_component(phi, d):
            return False
    raise Inconclusive(f"no kernel element of degree <= {max_degree} certifies non-dominance")


def dominance_certificate(phi: RationalMap, max_degree: int = 4) -> Tuple[int, List[Polynomial]]:
    """(d, basis of the degree-d kernel) for the least d with a nonzero kernel."""
    for d in range(1, max_degree + 1):
        ker = kernel_component(phi, d)
        if ker:
            return d, ker
    raise Inconclusive(f"no kernel element of degree <= {max_degree}")


def is_birational(phi: RationalMap, mode: str = PROBABILISTIC, rng: Optional[RandomSource] = None,
                  max_degree: int = 4) -> bool:
    rng = rng or RandomSource(0)
    if phi.dim_source != phi.dim_target:
        return False
    if not is_dominant(phi, mode, rng, max_degree):
        return False
    return degree_of_map(phi, mode, rng) == 1


# kernel components ----------------------------------------------------------------

def standard_monomials(J: Ideal, d: int) -> List[tuple]:
    """Monomials of degree d outside the grevlex initial ideal of J."""
    mons = J.ring.monomials_of_degree(d)
    if J.is_zero():
        return mons
    leads = J.leading_monomials()
    return [m for m in mons if not any(mono_divides(l, m) for l in leads)]


def _monomial_images(phi: RationalMap, mons: Sequence[tuple]) -> Dict[tuple, Polynomial]:
    """G(F) for each monomial G, built by multiplying up from lower degrees."""
    R = phi.source_ring
    cache: Dict[tuple, Polynomial] = {}

    def image(m):
        hit = cache.get(m)
        if hit is not None:
            return hit
        k = next((i for i, e in enumerate(m) if e), None)
        if k is None:
            val = R.one()
        else:
            lower = list(m)
            lower[k] -= 1
            val = image(tuple(lower)) * phi.forms[k]
        cache[m] = val
        return val

    return {m: image(m) for m in mons}


def _reduce_rows(field, vectors: List[list]) -> List[list]:
    if not vectors:
        return []
    rref, rank, _ = row_reduce(Matrix.raw(field, vectors, len(vectors[0])))
    return rref.rows[:rank]


def kernel_component(phi: RationalMap, d: int) -> List[Polynomial]:
    """Basis of {G in (K[y]/J)_d : G(F) in I}, lifted to standard-monomial form.

    Unknown coefficients a of G over the standard monomials and b over a basis
    H of I_{d delta}; the linear system G(F) - H = 0 is solved coefficientwise.
    """
    if d < 0:
        raise NegativeDegree(f"degree {d}")
    S = phi.target_ring
    field = phi.field
    basis = standard_monomials(phi.J, d)
    if not basis:
        return []
    imgs = _monomial_images(phi, basis)
    H = phi.I.degree_part(d * phi.delta) if not phi.I.is_zero() else []
    ncols = len(basis) + len(H)
    rows: Dict[tuple, Dict[int, object]] = {}
    for j, m in enumerate(basis):
        for mon, c in imgs[m].terms.items():
            rows.setdefault(mon, {})[j] = c
    for j, h in enumerate(H):
        col = len(basis) + j
        for mon, c in h.terms.items():
            rows.setdefault(mon, {})[col] = field.neg(c)
    ker = solve_kernel_sparse(field, list(rows.values()), ncols)
    a_parts = [v[: len(basis)] for v in ker if any(v[: len(basis)])]
    out = []
    for v in _reduce_rows(field, a_parts):
        out.append(S.from_dict({basis[j]: c for j, c in enumerate(v) if c}))
    return out


# inversion ---------------------------------------------------------------------

def linear_syzygies(phi: RationalMap) -> List[List[Polynomial]]:
    """Basis of tuples (L_0..L_m) of linear forms with sum L_i F_i = 0."""
    R = phi.source_ring
    field = phi.field
    nx = R.nvars
    ncols = (phi.m + 1) * nx
    rows: Dict[tuple, Dict[int, object]] = {}
    for i, F in enumerate(phi.forms):
        for mon, c in F.terms.items():
            for k in range(nx):
                e = list(mon)
                e[k] += 1
                rows.setdefault(tuple(e), {})[i * nx + k] = c
    ker = solve_kernel_sparse(field, list(rows.values()), ncols)
    return [[R.linear_form(v[i * nx:(i + 1) * nx]) for i in range(phi.m + 1)] for v in ker]


def _nf_table(J: Ideal, src: Sequence[tuple], dst_index: Dict[tuple, int]):
    """For each y_i * b (b in src), its normal form as {dst column: coeff}."""
    S = J.ring
    table = {}
    for bi, b in enumerate(src):
        for i in range(S.nvars):
            e = list(b)
            e[i] += 1
            e = tuple(e)
            if e in dst_index:
                table[(i, bi)] = {dst_index[e]: S.field.one()}
            else:
                nf = J.normal_form(S.monomial(e))
                table[(i, bi)] = {dst_index[m]: c for m, c in nf.terms.items()}
    return table


def inverse_map(phi: RationalMap, max_degree: Optional[int] = None, verify: bool = True) -> RationalMap:
    """Inverse of a birational map from P^n via linear syzygies.

    The syzygy matrix Theta (q x (n+1), linear forms in y) annihilates the
    inverse's forms modulo J; its kernel is searched degree by degree.
    """
    if not phi.I.is_zero():
        raise SourceNotProjectiveSpace("inversion needs the source to be a projective space")
    R, S = phi.source_ring, phi.target_ring
    field = phi.field
    nx = R.nvars
    ny = S.nvars
    syz = linear_syzygies(phi)
    if not syz:
        raise NoLinearSyzygies("the forms have no linear syzygies")
    # theta[j][k][i] = coefficient of y_i in Theta_{j,k}
    theta = []
    for L in syz:
        row = []
        for k in range(nx):
            unit = tuple(int(t == k) for t in range(nx))
            row.append([L[i].terms.get(unit, 0) for i in range(ny)])
        theta.append(row)
    if max_degree is None:
        max_degree = max(phi.n, phi.delta * phi.dim_source)
    for e in range(1, max_degree + 1):
        src = standard_monomials(phi.J, e)
        dst = standard_monomials(phi.J, e + 1)
        if not src:
            break
        dst_index = {m: i for i, m in enumerate(dst)}
        table = _nf_table(phi.J, src, dst_index)
        nb = len(src)
        rows = []
        for trow in theta:
            eq: Dict[int, Dict[int, object]] = {}
            for k in range(nx):
                for i, c in enumerate(trow[k]):
                    if not c:
                        continue
                    for bi in range(nb):
                        col = k * nb + bi
                        for di, v in table[(i, bi)].items():
                            r = eq.setdefault(di, {})
                            r[col] = field.add(r.get(col, field.zero()), field.mul(c, v))
            rows.extend(eq.values())
        ker = solve_kernel_sparse(field, rows, nx * nb)
        if not ker:
            continue
        v = ker[0]
        G = [S.from_dict({src[bi]: v[k * nb + bi] for bi in range(nb) if v[k * nb + bi]}) for k in range(nx)]
        log.info("inverse found in degree %d (kernel dimension %d)", e, len(ker))
        psi = RationalMap(phi.J, Ideal(R, []), G, validate=False)
        if verify:
            check_inverse(phi, psi)
        return psi
    raise KernelNotFound(f"no kernel element of degree <= {max_degree}")


def _cross_in(I: Ideal, A: Sequence[Polynomial], B: Sequence[Polynomial]) -> bool:
    """A_i B_j - A_j B_i in I for all i < j."""
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            h = A[i] * B[j] - A[j] * B[i]
            if not h.is_zero() and not I.contains(h):
                return False
    return True


def check_inverse(phi: RationalMap, psi: RationalMap, both: bool = False) -> None:
    """Raise VerificationFailed unless psi∘phi is the identity up to scalar
    (and phi∘psi too when ``both``)."""
    GF = [g.substitute(phi.forms) for g in psi.forms]
    if all(phi.I.contains(h) for h in GF):
        raise VerificationFailed("the candidate inverse vanishes on the image")
    if not _cross_in(phi.I, GF, phi.source_ring.gens()):
        raise VerificationFailed("psi∘phi is not the identity")
    if not both:
        return
    FG = [f.substitute(psi.forms) for f in phi.forms]
    if not _cross_in(phi.J, FG, phi.target_ring.gens()):
        raise VerificationFailed("phi∘psi is not the identity")


def approximate_inverse_map(phi: RationalMap, rng: Optional[RandomSource] = None, verify: bool = True,
                            max_degree: Optional[int] = None, degree: Optional[int] = None) -> RationalMap:
    """Inverse from images of n+1 random hyperplanes.

    phi(H_i) is cut on Y by one form k_i of the least degree e admitting one;
    psi = (k_0..k_n) satisfies psi∘phi = A·x for an invertible matrix A, so
    A^-1 psi is the inverse.  ``degree`` fixes e instead of searching for it.
    """
    if not phi.I.is_zero():
        raise SourceNotProjectiveSpace("approximate inversion needs the source to be a projective space")
    rng = rng or RandomSource(0)
    R, S = phi.source_ring, phi.target_ring
    field = phi.field
    nx = R.nvars
    if max_degree is None:
        max_degree = max(phi.n, phi.delta * phi.dim_source)
    cuts = [restrict_to_hyperplane(phi, rng, rng.linear_form(R)) for _ in range(nx)]
    k_forms = []
    e = degree
    if e is None:
        for d in range(1, max_degree + 1):
            if kernel_component(cuts[0], d):
                e = d
                break
        if e is None:
            raise KernelNotFound(f"no hypersurface of degree <= {max_degree} contains phi(H)")
    for cut in cuts:
        ker = kernel_component(cut, e)
        if not ker:
            raise NotLinearComposite(f"image of a random hyperplane has no equation of degree {e}")
        k_forms.append(ker[0] if len(ker) == 1 else rng.combination(ker))
    psi = RationalMap(phi.J, Ideal(R, []), k_forms, validate=False)
    if not verify:
        return psi
    A = _linear_part(phi, psi, rng)
    try:
        Ainv = inverse(A)
    except ValueError:
        raise NotLinearComposite("psi∘phi is a singular linear map")
    G = [sum_polys(S, [k.scale(c) for k, c in zip(k_forms, row) if c]) for row in Ainv.rows]
    out = RationalMap(phi.J, Ideal(R, []), G, validate=False)
    check_inverse(phi, out)
    return out


def _linear_part(phi: RationalMap, psi: RationalMap, rng: RandomSource) -> Matrix:
    """The matrix A with psi∘phi = Q·A·x, found from point evaluations and checked exactly."""
    R = phi.source_ring
    field = phi.field
    nx = R.nvars
    rows = []
    used = 0
    tries = 0
    while used < nx + 3 and tries < 10 * (nx + 3):
        tries += 1
        p = rng.point(field, nx)
        q = [F.evaluate(p) for F in phi.forms]
        if not any(q):
            continue
        c = [k.evaluate(q) for k in psi.forms]
        if not any(c):
            continue
        used += 1
        # c_i (A p)_j - c_j (A p)_i = 0; unknown A[a][b] at column a*nx + b
        for i in range(nx):
            for j in range(i + 1, nx):
                row = {}
                for b in range(nx):
                    if p[b]:
                        if c[i]:
                            row[j * nx + b] = field.add(row.get(j * nx + b, 0), field.mul(c[i], p[b]))
                        if c[j]:
                            row[i * nx + b] = field.sub(row.get(i * nx + b, 0), field.mul(c[j], p[b]))
                rows.append(row)
    ker = solve_kernel_sparse(field, rows, nx * nx)
    if len(ker) != 1:
        raise NotLinearComposite(f"psi∘phi is not linear (solution space of dimension {len(ker)})")
    A = Matrix.raw(field, [ker[0][a * nx:(a + 1) * nx] for a in range(nx)], nx)
    comp = [k.substitute(phi.forms) for k in psi.forms]
    lin = [R.linear_form(row) for row in A.rows]
    if not _cross_in(phi.I, comp, lin):
        raise NotLinearComposite("psi∘phi is not a linear map")
    return A


# composition -------------------------------------------------------------------

def compose(phi: RationalMap, psi: RationalMap, simplify: bool = False) -> RationalMap:
    """psi∘phi (first phi, then psi)."""
    if phi.target_ring != psi.source_ring or not phi.J.equals(psi.I):
        raise ChainMismatch("target of the first map is not the source of the second")
    forms = [g.substitute(phi.forms) for g in psi.forms]
    if simplify:
        forms = remove_common_factor(forms)
    return RationalMap(phi.I, psi.J, forms)


def remove_common_factor(forms: Sequence[Polynomial]) -> List[Polynomial]:
    """Divide out the monomial gcd of all forms and normalize the first nonzero lead to 1."""
    nz = [F for F in forms if not F.is_zero()]
    if not nz:
        return list(forms)
    n = nz[0].ring.nvars
    g = [min(m[i] for F in nz for m in F.terms) for i in range(n)]
    out = []
    for F in forms:
        out.append(type(F)(F.ring, {tuple(a - b for a, b in zip(m, g)): c for m, c in F.terms.items()}))
    lead = next(F for F in out if not F.is_zero())
    inv = lead.ring.field.inv(lead.terms[lead.leading_monomial()])
    return [F.scale(inv) for F in out]


def same_map(phi: RationalMap, psi: RationalMap) -> bool:
    """Same map: F_i F'_j - F_j F'_i in I for all i, j."""
    if phi.source_ring != psi.source_ring or phi.target_ring != psi.target_ring:
        return False
    if not phi.I.equals(psi.I):
        return False
    return _cross_in(phi.I, phi.forms, psi.forms)

