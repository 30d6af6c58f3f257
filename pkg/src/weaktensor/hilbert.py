"""Exact tensor-product subspace computations over the Gaussian rationals.

Realizes the product of two projective lattices of column spaces at
small dimension: membership of product atoms in a subspace, joins via
double orthocomplement, coatoms induced by antilinear maps, a decision
procedure for box-product membership of a subspace, and the failure of
the covering property in the order dual.

All arithmetic is exact over Q(i); there is no floating point anywhere.
Subspaces are canonicalized by reduced row echelon form, so equality of
subspaces is equality of basis tuples.  Atom sets are never enumerated:
an element of the product is represented by its subspace, and point
membership is a rank test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from random import Random
from typing import Callable, Optional, Sequence

MAX_FACTOR_DIM = 3


@dataclass(frozen=True)
class GQ:
    """A Gaussian rational a + bi with exact rational parts."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "GQ") -> "GQ":
        return GQ(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GQ") -> "GQ":
        return GQ(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GQ":
        return GQ(-self.re, -self.im)

    def __mul__(self, other: "GQ") -> "GQ":
        return GQ(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    def __truediv__(self, other: "GQ") -> "GQ":
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GQ((self.re * other.re + self.im * other.im) / n,
                  (self.im * other.re - self.re * other.im) / n)

    def conj(self) -> "GQ":
        return GQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def render(self) -> str:
        if not self.im:
            return str(self.re)
        im = f"{self.im}i"
        if not self.re:
            return im
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __str__(self) -> str:  # pragma: no cover - display helper
        return self.render()


def gq(re: int | Fraction = 0, im: int | Fraction = 0) -> GQ:
    return GQ(Fraction(re), Fraction(im))


ZERO = gq(0)
ONE = gq(1)
I = gq(0, 1)

Vector = tuple[GQ, ...]
Matrix = tuple[Vector, ...]


def sqrt_fraction(x: Fraction) -> Optional[Fraction]:
    """Exact nonnegative square root in Q, or None."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    ns = math.isqrt(x.numerator)
    ds = math.isqrt(x.denominator)
    if ns * ns == x.numerator and ds * ds == x.denominator:
        return Fraction(ns, ds)
    return None


def gq_sqrt(z: GQ) -> Optional[GQ]:
    """Exact square root in Q(i), or None when z is not a square there."""
    if not z:
        return ZERO
    if not z.im:
        r = sqrt_fraction(z.re)
        if r is not None:
            return GQ(r, Fraction(0))
        r = sqrt_fraction(-z.re)
        if r is not None:
            return GQ(Fraction(0), r)
        return None
    n = sqrt_fraction(z.norm2())
    if n is None:
        return None
    half = Fraction(1, 2)
    u2 = (z.re + n) * half
    u = sqrt_fraction(u2)
    if u is None or u == 0:
        return None
    w = z.im / (2 * u)
    cand = GQ(u, w)
    if cand * cand == z:
        return cand
    return None


# -- vectors ------------------------------------------------------------------

def vzero(n: int) -> Vector:
    return tuple(ZERO for _ in range(n))


def basis_vector(n: int, k: int) -> Vector:
    return tuple(ONE if j == k else ZERO for j in range(n))


def vadd(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vscale(c: GQ, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def vconj(x: Vector) -> Vector:
    return tuple(a.conj() for a in x)


def is_zero_vector(x: Vector) -> bool:
    return not any(x)


def inner(x: Vector, y: Vector) -> GQ:
    """Hermitian inner product, conjugate-linear in the first slot."""
    acc = ZERO
    for a, b in zip(x, y):
        acc = acc + a.conj() * b
    return acc


def normalize_vector(x: Vector) -> Vector:
    """Scale so the first nonzero coordinate is 1; canonical for lines."""
    for a in x:
        if a:
            return vscale(ONE / a, x)
    raise ValueError("cannot normalize the zero vector")


def tensor(p1: Vector, p2: Vector) -> Vector:
    """Product vector of two factor vectors, index (i, j) -> i * n + j."""
    if is_zero_vector(p1) or is_zero_vector(p2):
        raise ValueError("tensor factors must be nonzero")
    return tuple(a * b for a in p1 for b in p2)


# -- exact row reduction ------------------------------------------------------

def rref(rows: Sequence[Vector]) -> tuple[list[list[GQ]], list[int]]:
    """Reduced row echelon form with unit pivots; returns (rows, pivot cols).

    Zero rows are dropped, so the output is the canonical basis of the
    row space.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    cols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [inv * a for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel(rows: Sequence[Vector], width: int) -> list[Vector]:
    """Canonical basis of {x | rows . x = 0}."""
    red, pivots = rref(rows)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * width
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    canon, _ = rref(basis)
    return [tuple(row) for row in canon]


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace in canonical (reduced echelon) basis form."""

    ambient: int
    basis: Matrix

    @classmethod
    def span(cls, ambient: int, vectors: Sequence[Vector]) -> "Subspace":
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector length does not match the ambient dimension")
        red, _ = rref(vectors)
        return cls(ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span(ambient, [basis_vector(ambient, k) for k in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        red, _ = rref(list(self.basis) + [v])
        return len(red) == self.dim

    def perp(self) -> "Subspace":
        """Orthocomplement under the Hermitian inner product."""
        if self.dim == 0:
            return Subspace.full(self.ambient)
        rows = [vconj(b) for b in self.basis]
        return Subspace.span(self.ambient, kernel(rows, self.ambient))

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient:
            raise ValueError("ambient dimensions differ")
        return Subspace.span(self.ambient, list(self.basis) + list(other.basis))


# -- product-atom machinery ---------------------------------------------------

@dataclass(frozen=True)
class ProductAtomPair:
    """A pair of projective points, scale-canonicalized."""

    p1: Vector
    p2: Vector

    @classmethod
    def of(cls, p1: Vector, p2: Vector) -> "ProductAtomPair":
        return cls(normalize_vector(p1), normalize_vector(p2))

    def product_vector(self) -> Vector:
        return tensor(self.p1, self.p2)


def sigma_membership(subspace: Subspace, pair: ProductAtomPair) -> bool:
    """Whether the pair's product vector lies in the subspace (rank test)."""
    return subspace.contains(pair.product_vector())


def join_atoms(pairs: Sequence[ProductAtomPair], m: int, n: int) -> Subspace:
    """Join of product atoms: span of the product vectors.

    The double orthocomplement is verified to reproduce the span, which
    is the finite-dimensional identity backing the join formula.
    """
    if not pairs:
        raise ValueError("join of no atoms is not defined here")
    span = Subspace.span(m * n, [p.product_vector() for p in pairs])
    if span.perp().perp() != span:
        raise RuntimeError("double orthocomplement drifted from the span")
    return span


def slice_section(subspace: Subspace, p1: Vector, m: int, n: int) -> Subspace:
    """The factor-2 subspace {w | p1 (x) w lies in the given subspace}."""
    if len(p1) != m or is_zero_vector(p1):
        raise ValueError("need a nonzero factor-1 vector of the right dimension")
    residual_rows = []
    red, pivots = rref(subspace.basis)
    for j in range(n):
        v = list(tensor(p1, basis_vector(n, j)))
        for r, p in enumerate(pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, red[r])]
        residual_rows.append(tuple(v))
    rows = [tuple(residual_rows[j][k] for j in range(n)) for k in range(m * n)]
    return Subspace.span(n, kernel(rows, n))


# -- antilinear maps and induced coatoms -------------------------------------

@dataclass(frozen=True)
class AntilinearMap:
    """w -> S . conj(w) in the canonical bases; additive, and scalars
    come out conjugated."""

    matrix: Matrix  # n rows, m cols

    def __post_init__(self):
        if not self.matrix or not self.matrix[0]:
            raise ValueError("empty matrix")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0])

    def apply(self, w: Vector) -> Vector:
        if len(w) != self.cols:
            raise ValueError("dimension mismatch")
        cw = vconj(w)
        return tuple(sum((r[k] * cw[k] for k in range(self.cols)), ZERO)
                     for r in self.matrix)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)


def coatom_from_antilinear(a_map: AntilinearMap
                           ) -> tuple[Vector, Callable[[ProductAtomPair], bool]]:
    """The tensor vector and membership predicate of the coatom X_A.

    For an antilinear map A from the m-space to the n-space, the coatom
    collects the pairs whose second point is orthogonal to the image of
    the first.  It equals the sigma-set of the orthocomplement of the
    returned vector v, whose (i, j) coefficient is the (j, i) matrix
    entry of A; the agreement of the two descriptions is sampled in
    tests rather than assumed.
    """
    if a_map.is_zero():
        raise ValueError("the zero map induces no coatom")
    n, m = a_map.rows, a_map.cols
    v = tuple(a_map.matrix[j][i] for i in range(m) for j in range(n))

    def member(pair: ProductAtomPair) -> bool:
        return not inner(a_map.apply(pair.p1), pair.p2)

    return v, member


def sharp_point(pair: ProductAtomPair, m: int, n: int) -> Subspace:
    """The cross subspace p1-perp (x) H2 + H1 (x) p2-perp."""
    perp1 = kernel([vconj(pair.p1)], m)
    perp2 = kernel([vconj(pair.p2)], n)
    vectors = [tensor(u, basis_vector(n, j)) for u in perp1 for j in range(n)]
    vectors += [tensor(basis_vector(m, i), w) for i in range(m) for w in perp2]
    return Subspace.span(m * n, vectors)


def verify_point_biorthogonality(pair: ProductAtomPair, m: int, n: int) -> bool:
    """perp of the sharp cross is exactly the pair's product line."""
    cross = sharp_point(pair, m, n)
    line = Subspace.span(m * n, [pair.product_vector()])
    return cross.perp() == line


# -- box membership -----------------------------------------------------------

class BoxVerdict(Enum):
    IN_BOX = "in-box"
    NOT_IN_BOX = "not-in-box"
    UNKNOWN = "unknown"


def _as_matrix(v: Vector, m: int, n: int) -> list[list[GQ]]:
    return [[v[i * n + j] for j in range(n)] for i in range(m)]


def _det2(a: Sequence[Sequence[GQ]]) -> GQ:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _pencil_rank1_status(b0: Vector, b1: Vector) -> tuple[str, list[Vector]]:
    """Rank-one vectors in a 2-dim pencil of 2x2 matrices.

    Returns ('all', []) when every pencil vector has rank <= 1,
    ('roots', vectors) with the exact rank-one lines otherwise, or
    ('unknown', []) when the root field leaves Q(i).
    """
    m0, m1 = _as_matrix(b0, 2, 2), _as_matrix(b1, 2, 2)
    a = _det2(m0)
    c = _det2(m1)
    both = [[m0[i][j] + m1[i][j] for j in range(2)] for i in range(2)]
    b = _det2(both) - a - c
    if not a and not b and not c:
        return "all", []
    roots: list[tuple[GQ, GQ]] = []
    if not a:
        roots.append((ONE, ZERO))
        if b:
            roots.append((-c / b, ONE))
    else:
        disc = b * b - gq(4) * a * c
        s = gq_sqrt(disc)
        if s is None:
            return "unknown", []
        two_a = gq(2) * a
        roots.append(((-b + s) / two_a, ONE))
        if s:
            roots.append(((-b - s) / two_a, ONE))
    vectors = []
    seen = set()
    for t0, t1 in roots:
        v = vadd(vscale(t0, b0), vscale(t1, b1))
        if not is_zero_vector(v):
            v = normalize_vector(v)
            if v not in seen:
                seen.add(v)
                vectors.append(v)
    return "roots", vectors


_ROT = ((ZERO, -ONE), (ONE, ZERO))


def _product_spanned_2x2(subspace: Subspace) -> str:
    """'yes' / 'no' / 'unknown': is a subspace of the 2x2 tensor square
    spanned by its product vectors?  Complete except for the Q(i)
    field-of-definition gap in the two-dimensional case."""
    d = subspace.dim
    if d == 0 or d == 4:
        return "yes"
    if d == 1:
        return "yes" if not _det2(_as_matrix(subspace.basis[0], 2, 2)) else "no"
    if d == 2:
        status, vectors = _pencil_rank1_status(subspace.basis[0], subspace.basis[1])
        if status == "all":
            return "yes"
        if status == "unknown":
            return "unknown"
        return "yes" if len(vectors) == 2 else "no"
    # d == 3: the product vectors are the curve t -> t (x) Bt for
    # B = rot . conj(A), A read off the perp generator.  When B is
    # invertible the polarization triple spans the subspace; when B has
    # rank one its exact kernel contributes a full slice.
    w = subspace.perp().basis[0]
    s = _as_matrix(w, 2, 2)
    a_mat = [[s[i][j] for i in range(2)] for j in range(2)]  # transpose
    bmat = [[sum((_ROT[r][k] * a_mat[k][c].conj() for k in range(2)), ZERO)
             for c in range(2)] for r in range(2)]

    def apply_b(lam: Vector) -> Vector:
        return tuple(sum((bmat[r][k] * lam[k] for k in range(2)), ZERO) for r in range(2))

    collected: list[Vector] = []
    if not _det2(bmat):
        if bmat[0][0] or bmat[0][1]:
            ker = (bmat[0][1], -bmat[0][0])
        else:
            ker = (bmat[1][1], -bmat[1][0])
        if not is_zero_vector(ker):
            collected.extend(tensor(ker, basis_vector(2, j)) for j in range(2))
    for lam in (basis_vector(2, 0), basis_vector(2, 1), (ONE, ONE)):
        blam = apply_b(lam)
        if not is_zero_vector(blam):
            collected.append(tensor(lam, blam))
    span = Subspace.span(4, collected)
    if span == subspace:
        return "yes"
    return "unknown"


_SAMPLE_COEFFS = (ONE, -ONE, I, gq(2))


def _sample_directions(dim: int) -> list[Vector]:
    out = [basis_vector(dim, k) for k in range(dim)]
    for i, j in itertools.combinations(range(dim), 2):
        for c in _SAMPLE_COEFFS:
            v = list(vzero(dim))
            v[i] = ONE
            v[j] = c
            out.append(tuple(v))
    out.append(tuple(ONE for _ in range(dim)))
    return out


def _product_spanned_sampled(subspace: Subspace, m: int, n: int) -> str:
    """Sound one-sided test by sampling slice sections on both factors."""
    d = subspace.dim
    if d == 0 or d == m * n:
        return "yes"
    collected: list[Vector] = []
    for p1 in _sample_directions(m):
        sec = slice_section(subspace, p1, m, n)
        collected.extend(tensor(p1, w) for w in sec.basis)
    flip = Subspace.span(m * n, [_transpose_vec(b, m, n) for b in subspace.basis])
    for p2 in _sample_directions(n):
        sec = slice_section(flip, p2, n, m)
        collected.extend(tensor(u, p2) for u in sec.basis)
    if collected and Subspace.span(m * n, collected) == subspace:
        return "yes"
    return "unknown"


def _transpose_vec(v: Vector, m: int, n: int) -> Vector:
    return tuple(v[i * n + j] for j in range(n) for i in range(m))


def box_membership_test(subspace: Subspace, m: int, n: int) -> BoxVerdict:
    """Decide whether a subspace and its perp are both product-spanned.

    Complete at m = n = 2 up to the honest UNKNOWN when the rank-one
    condition only has roots outside Q(i); sampled for larger factors,
    where a NOT verdict is never issued without a complete search.
    """
    if m > MAX_FACTOR_DIM or n > MAX_FACTOR_DIM:
        raise ValueError(f"factor dimensions capped at {MAX_FACTOR_DIM}")
    if subspace.ambient != m * n:
        raise ValueError("ambient dimension does not match the factors")
    side = _product_spanned_2x2 if (m, n) == (2, 2) else (
        lambda s: _product_spanned_sampled(s, m, n))
    first = side(subspace)
    if first == "no":
        return BoxVerdict.NOT_IN_BOX
    second = side(subspace.perp())
    if second == "no":
        return BoxVerdict.NOT_IN_BOX
    if first == "yes" and second == "yes":
        return BoxVerdict.IN_BOX
    return BoxVerdict.UNKNOWN


# -- dual covering failure ----------------------------------------------------

@dataclass(frozen=True)
class DualCoveringReport:
    """Witness data for the failure of covering in the order dual.

    A coatom x (the sigma-set of a product line's perp) and a closed
    two-atom set R with x meeting R trivially satisfy x v R = 1, yet the
    singleton sits strictly between the empty set and R; in the dual
    this breaks the covering of R by x join-dual R.
    """

    m: int
    n: int
    coatom_vector: Vector
    pair_a: ProductAtomPair
    pair_b: ProductAtomPair
    disjoint_from_coatom: bool
    two_atom_set_closed: bool
    join_with_coatom_is_top: bool
    strict_chain: bool

    @property
    def passed(self) -> bool:
        return (self.disjoint_from_coatom and self.two_atom_set_closed
                and self.join_with_coatom_is_top and self.strict_chain)


def _pencil_members_exactly_two(a: ProductAtomPair, b: ProductAtomPair,
                                m: int, n: int) -> bool:
    """Exactly two product lines in the span of two product vectors.

    For independent coordinates every 2x2 minor of the pencil is a
    constant times t0*t1, so the members are exactly the generators as
    soon as one mixed minor is nonzero.
    """
    ma = _as_matrix(a.product_vector(), m, n)
    mb = _as_matrix(b.product_vector(), m, n)
    mixed_nonzero = False
    for r0, r1 in itertools.combinations(range(m), 2):
        for c0, c1 in itertools.combinations(range(n), 2):
            suba = [[ma[r0][c0], ma[r0][c1]], [ma[r1][c0], ma[r1][c1]]]
            subb = [[mb[r0][c0], mb[r0][c1]], [mb[r1][c0], mb[r1][c1]]]
            if _det2(suba) or _det2(subb):
                return False  # a generator is not a product vector
            both = [[suba[i][j] + subb[i][j] for j in range(2)] for i in range(2)]
            if _det2(both):
                mixed_nonzero = True
    return mixed_nonzero


def dual_covering_counterexample(m: int, n: int) -> DualCoveringReport:
    """Construct and verify the four-step dual-covering failure."""
    if m < 2 or n < 2:
        raise ValueError("both factors must have dimension at least 2")
    if m > MAX_FACTOR_DIM or n > MAX_FACTOR_DIM:
        raise ValueError(f"factor dimensions capped at {MAX_FACTOR_DIM}")
    p = ProductAtomPair.of(basis_vector(m, 0), basis_vector(n, 0))
    v = p.product_vector()
    x_subspace = Subspace.span(m * n, [v]).perp()
    ones_m = tuple(ONE for _ in range(m))
    ones_n = tuple(ONE for _ in range(n))
    ramp_m = tuple(gq(k + 1) for k in range(m))
    ramp_n = tuple(gq(k + 1) for k in range(n))
    r = ProductAtomPair.of(ones_m, ones_n)
    s = ProductAtomPair.of(ramp_m, ramp_n)
    disjoint = (not sigma_membership(x_subspace, r)
                and not sigma_membership(x_subspace, s)
                and r.p1 != s.p1 and r.p2 != s.p2)
    v_r = join_atoms([r, s], m, n)
    closed_two = v_r.dim == 2 and _pencil_members_exactly_two(r, s, m, n)
    top = x_subspace.sum(v_r).dim == m * n
    singleton = Subspace.span(m * n, [r.product_vector()])
    chain = (sigma_membership(singleton, r) and not sigma_membership(singleton, s)
             and sigma_membership(v_r, r) and sigma_membership(v_r, s))
    return DualCoveringReport(
        m=m, n=n, coatom_vector=v, pair_a=r, pair_b=s,
        disjoint_from_coatom=disjoint,
        two_atom_set_closed=closed_two,
        join_with_coatom_is_top=top,
        strict_chain=chain,
    )


# -- seeded sampling helpers ---------------------------------------------------

def random_gq(rng: Random, zero_ok: bool = True) -> GQ:
    while True:
        z = GQ(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
               Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        if zero_ok or z:
            return z


def random_vector(rng: Random, dim: int) -> Vector:
    while True:
        v = tuple(random_gq(rng) for _ in range(dim))
        if not is_zero_vector(v):
            return v


def random_pair(rng: Random, m: int, n: int) -> ProductAtomPair:
    return ProductAtomPair.of(random_vector(rng, m), random_vector(rng, n))


def random_subspace(rng: Random, ambient: int) -> Subspace:
    k = rng.randint(0, ambient)
    return Subspace.span(ambient, [random_vector(rng, ambient) for _ in range(k)])


def random_antilinear(rng: Random, m: int, n: int) -> AntilinearMap:
    while True:
        mat = tuple(tuple(random_gq(rng) for _ in range(m)) for _ in range(n))
        a = AntilinearMap(mat)
        if not a.is_zero():
            return a


# -- CLI literals ---------------------------------------------------------------

def parse_gq_tokens(tokens: Sequence[str]) -> list[GQ]:
    """Parse 'gr RE IM' token triples, RE and IM as NUM/DEN fractions."""
    out = []
    it = iter(tokens)
    for tok in it:
        if tok != "gr":
            raise ValueError(f"expected 'gr', got {tok!r}")
        try:
            re = Fraction(next(it))
            im = Fraction(next(it))
        except StopIteration:
            raise ValueError("truncated Gaussian-rational literal") from None
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad fraction in Gaussian-rational literal: {exc}") from None
        out.append(GQ(re, im))
    return out


def parse_gq_matrix(text: str, rows: int, cols: int) -> Matrix:
    values = parse_gq_tokens(text.split())
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(values)}")
    return tuple(tuple(values[r * cols + c] for c in range(cols)) for r in range(rows))
