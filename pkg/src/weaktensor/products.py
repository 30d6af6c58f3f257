"""Weak tensor products: box and Fraser constructions, the beta-join
calculus, the MO circle product, product axioms, and the sharp
orthocomplementation on the box product.

A product universe identifies tuples over the factor point sets with
flat point ids via a mixed-radix scheme; all set arguments are bitmasks
over those flat ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .props import Automorphism, OrthoMap, orthomap_violation
from .spaces import MAX_POINTS, SCAN_POINTS, ClosureSpace

FRASER_ENUMERATION_CAP = 1 << 20


class ProductUniverse:
    """Mixed-radix indexing of a product of factor point sets."""

    def __init__(self, factors: Sequence[ClosureSpace]):
        if len(factors) < 2:
            raise ValueError("a product needs at least two factors")
        self.factors = tuple(factors)
        self.sizes = tuple(f.n_points for f in factors)
        total = 1
        for s in self.sizes:
            total *= s
        if total > MAX_POINTS:
            raise ValueError(f"product universe of {total} points exceeds the cap of {MAX_POINTS}")
        self.n_points = total
        strides = []
        acc = 1
        for s in reversed(self.sizes):
            strides.append(acc)
            acc *= s
        self.strides = tuple(reversed(strides))
        self.points = tuple(",".join(f.points[c] for f, c in zip(factors, self.decode(i)))
                            for i in range(total))
        # mask of all flat ids whose beta-th coordinate is q
        self.coordinate_masks = tuple(
            tuple(self._coord_mask(beta, q) for q in range(self.sizes[beta]))
            for beta in range(len(factors)))
        # beta-fibers: flat ids grouped by the off-beta coordinates
        fibers = []
        for beta in range(len(factors)):
            groups: dict[int, list[int]] = {}
            for pid in range(total):
                key = pid - self.decode(pid)[beta] * self.strides[beta]
                groups.setdefault(key, []).append(pid)
            fibers.append(tuple(tuple(g) for g in groups.values()))
        self.fibers = tuple(fibers)

    def _coord_mask(self, beta: int, q: int) -> int:
        m = 0
        for pid in range(self.n_points):
            if self.decode(pid)[beta] == q:
                m |= 1 << pid
        return m

    @property
    def full_mask(self) -> int:
        return (1 << self.n_points) - 1

    def encode(self, coords: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(coords, self.strides))

    def decode(self, pid: int) -> tuple[int, ...]:
        out = []
        for s, size in zip(self.strides, self.sizes):
            out.append((pid // s) % size)
        return tuple(out)

    def encode_labels(self, labels: Sequence[str]) -> int:
        if len(labels) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(labels)}")
        coords = []
        for f, lbl in zip(self.factors, labels):
            try:
                coords.append(f.points.index(lbl))
            except ValueError:
                raise ValueError(f"unknown point label {lbl!r}") from None
        return self.encode(coords)

    def replace(self, pid: int, beta: int, q: int) -> int:
        """p[q, beta]: replace the beta-th coordinate of the point."""
        c = self.decode(pid)[beta]
        return pid + (q - c) * self.strides[beta]

    def preimage_mask(self, beta: int, factor_mask: int) -> int:
        """Flat mask of the cylinder over one factor element."""
        m = 0
        fm = factor_mask
        while fm:
            low = fm & -fm
            m |= self.coordinate_masks[beta][low.bit_length() - 1]
            fm ^= low
        return m

    def cylinder_mask(self, components: Sequence[int]) -> int:
        """Union over factors of the coordinate preimages of the components."""
        m = 0
        for beta, a in enumerate(components):
            m |= self.preimage_mask(beta, a)
        return m

    def full_box_mask(self, components: Sequence[int]) -> int:
        """The full box prod_a of one element per factor, as a flat mask."""
        m = self.full_mask
        for beta, a in enumerate(components):
            m &= self.preimage_mask(beta, a)
        return m

    def render_set(self, mask: int) -> str:
        labels = [self.points[i] for i in range(self.n_points) if mask >> i & 1]
        return " ".join(labels) or "-"


# -- sections and the beta-join calculus -------------------------------------

def section(universe: ProductUniverse, region: int, beta: int, pid: int) -> int:
    """The beta-section of a region through a point, as a factor mask.

    This is {q in the beta-th factor | p[q, beta] in region}.
    """
    out = 0
    for q in range(universe.sizes[beta]):
        if region >> universe.replace(pid, beta, q) & 1:
            out |= 1 << q
    return out


def beta_join(universe: ProductUniverse, region: int, beta: int) -> int:
    """Close every beta-fiber of the region in its factor.

    Extensive, monotone and idempotent in the region argument.
    """
    factor = universe.factors[beta]
    out = 0
    for fiber in universe.fibers[beta]:
        sec = 0
        for q, pid in enumerate(fiber):
            if region >> pid & 1:
                sec |= 1 << q
        if sec:
            closed = factor.closure(sec)
            mm = closed
            while mm:
                low = mm & -mm
                out |= 1 << fiber[low.bit_length() - 1]
                mm ^= low
    return out


def beta_join_sequence(universe: ProductUniverse, region: int,
                       betas: Sequence[int]) -> list[int]:
    """The iterates R^0, R^1, ... under the given beta-join order."""
    out = [region]
    for b in betas:
        out.append(beta_join(universe, out[-1], b))
    return out


def fraser_join(universe: ProductUniverse, region: int) -> int:
    """Round-robin beta-join fixpoint; equals the Fraser-product join."""
    cur = region
    while True:
        nxt = cur
        for beta in range(len(universe.factors)):
            nxt = beta_join(universe, nxt, beta)
        if nxt == cur:
            return cur
        cur = nxt


def in_fraser(universe: ProductUniverse, region: int) -> bool:
    """Membership in the Fraser product: every section closed in its factor."""
    for beta in range(len(universe.factors)):
        factor = universe.factors[beta]
        for fiber in universe.fibers[beta]:
            sec = 0
            for q, pid in enumerate(fiber):
                if region >> pid & 1:
                    sec |= 1 << q
            if not factor.is_closed(sec):
                return False
    return True


def box_join(universe: ProductUniverse, region: int) -> int:
    """Intersection of all cylinders containing the region."""
    out = universe.full_mask
    for components in itertools.product(*(f.masks for f in universe.factors)):
        cyl = universe.cylinder_mask(components)
        if region & ~cyl == 0:
            out &= cyl
    return out


def in_xi(universe: ProductUniverse, region: int) -> bool:
    """Whether all coordinates are pairwise distinct across the region."""
    ids = [i for i in range(universe.n_points) if region >> i & 1]
    for beta in range(len(universe.factors)):
        seen = set()
        for pid in ids:
            c = universe.decode(pid)[beta]
            if c in seen:
                return False
            seen.add(c)
    return True


# -- product constructions ----------------------------------------------------

def box_product(factors: Sequence[ClosureSpace]) -> ClosureSpace:
    """Intersection-closure of all cylinders: the least weak tensor product."""
    universe = ProductUniverse(factors)
    cylinders = {universe.cylinder_mask(c)
                 for c in itertools.product(*(f.masks for f in factors))}
    return ClosureSpace.from_closed_sets(universe.points, cylinders, product=universe)


def fraser_product(factors: Sequence[ClosureSpace]) -> ClosureSpace:
    """All regions with every section closed: the greatest weak tensor product.

    Enumerates along the cheapest axis and filters by the remaining
    section conditions; refuses universes whose enumeration would exceed
    the subset-scan cap.
    """
    universe = ProductUniverse(factors)
    if universe.n_points > SCAN_POINTS:
        raise ValueError(f"Fraser enumeration capped at {SCAN_POINTS} points")
    k = len(factors)
    costs = []
    for beta in range(k):
        combos = len(factors[beta].masks) ** len(universe.fibers[beta])
        costs.append(combos)
    axis = min(range(k), key=lambda b: (costs[b], b))
    if costs[axis] > FRASER_ENUMERATION_CAP:
        raise ValueError("Fraser enumeration would exceed the subset-scan cap")
    factor = universe.factors[axis]
    family = []
    fibers = universe.fibers[axis]
    for choice in itertools.product(factor.masks, repeat=len(fibers)):
        region = 0
        for sec, fiber in zip(choice, fibers):
            mm = sec
            while mm:
                low = mm & -mm
                region |= 1 << fiber[low.bit_length() - 1]
                mm ^= low
        ok = True
        for beta in range(k):
            if beta == axis:
                continue
            fac = universe.factors[beta]
            for fiber in universe.fibers[beta]:
                sec = 0
                for q, pid in enumerate(fiber):
                    if region >> pid & 1:
                        sec |= 1 << q
                if not fac.is_closed(sec):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            family.append(region)
    return ClosureSpace.from_closed_sets(universe.points, family, product=universe)


def mo_circle(first: ClosureSpace, second: ClosureSpace) -> ClosureSpace:
    """The circle product of two MO lattices: the box product plus all
    3-element sets with pairwise distinct coordinates.

    Intersection-closure is verified at build time instead of trusted.
    The covering/uniqueness statements target sizes 3 or >= 5; the
    construction itself only needs >= 3 atoms per factor.
    """
    for s in (first, second):
        expected = {0, s.full_mask} | {1 << i for i in range(s.n_points)}
        if set(s.masks) != expected:
            raise ValueError("circle product factors must be MO lattices")
        if s.n_points < 3:
            raise ValueError("circle product factors need at least three atoms")
    box = box_product([first, second])
    universe = box.product
    assert universe is not None
    extra = []
    for ids in itertools.combinations(range(universe.n_points), 3):
        m = (1 << ids[0]) | (1 << ids[1]) | (1 << ids[2])
        if in_xi(universe, m):
            extra.append(m)
    family = set(box.masks) | set(extra)
    for a, b in itertools.combinations(family, 2):
        if a & b not in family:
            raise AssertionError("circle product family is not intersection-closed")
    return ClosureSpace(universe.points, family, product=universe)


# -- product axioms -----------------------------------------------------------

@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: str


def check_p1_p2_p3(candidate: ClosureSpace, universe: ProductUniverse
                   ) -> Optional[AxiomViolation]:
    """Check the weak-tensor-product axioms on a candidate family.

    The point indexing must match the universe; every cylinder must be
    closed; and every closed set confined to a single fiber must project
    to a closed set of its factor.  Returns the first violation, or None.
    """
    if candidate.n_points != universe.n_points or candidate.points != universe.points:
        return AxiomViolation("P1", "points are not the product of the factor points")
    for components in itertools.product(*(f.masks for f in universe.factors)):
        cyl = universe.cylinder_mask(components)
        if cyl not in candidate:
            return AxiomViolation(
                "P2", "missing cylinder " + universe.render_set(cyl))
    for beta in range(len(universe.factors)):
        factor = universe.factors[beta]
        fiber_masks = []
        for fiber in universe.fibers[beta]:
            fm = 0
            for pid in fiber:
                fm |= 1 << pid
            fiber_masks.append((fm, fiber))
        for region in candidate.masks:
            if region == 0:
                continue
            for fm, fiber in fiber_masks:
                if region & ~fm == 0:
                    sec = 0
                    for q, pid in enumerate(fiber):
                        if region >> pid & 1:
                            sec |= 1 << q
                    if not factor.is_closed(sec):
                        return AxiomViolation(
                            "P3",
                            f"{universe.render_set(region)} projects to the non-closed "
                            f"{factor.render_set(sec)} in factor {beta + 1}")
                    break
    return None


def _generate_group(perms: Iterable[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    identity = tuple(range(n))
    group = {identity}
    frontier = [p for p in perms]
    for p in frontier:
        group.add(tuple(p))
    while frontier:
        fresh = []
        for g in list(group):
            for h in frontier:
                comp = tuple(g[h[i]] for i in range(n))
                if comp not in group:
                    group.add(comp)
                    fresh.append(comp)
        frontier = fresh
    return sorted(group)


@dataclass(frozen=True)
class P4Violation:
    factor_perms: tuple[tuple[int, ...], ...]
    witness: str


def check_p4(candidate: ClosureSpace, universe: ProductUniverse,
             generators: Sequence[Sequence[Automorphism]]) -> Optional[P4Violation]:
    """Check that every product of factor automorphisms lifts.

    For each tuple v in the groups generated per factor, the induced
    point permutation p -> (v_a(p_a))_a must map closed sets to closed
    sets.  Returns the first failing tuple with a witness set.
    """
    groups = []
    for beta, gens in enumerate(generators):
        n = universe.sizes[beta]
        groups.append(_generate_group([g.point_perm for g in gens], n))
    for tup in itertools.product(*groups):
        perm = []
        for pid in range(universe.n_points):
            coords = universe.decode(pid)
            image = tuple(tup[beta][c] for beta, c in enumerate(coords))
            perm.append(universe.encode(image))
        u = Automorphism(tuple(perm))
        for m in candidate.masks:
            img = u.apply_mask(m)
            if img not in candidate:
                return P4Violation(
                    factor_perms=tup,
                    witness=f"{universe.render_set(m)} maps to the non-closed "
                            f"{universe.render_set(img)}")
    return None


# -- the sharp orthocomplementation on the box product ------------------------

@dataclass(frozen=True)
class SharpMap:
    """Factor orthocomplementations and the product map they induce.

    On a point, the image is the union over factors of the coordinate
    preimages of the factor orthocomplements; on larger elements it is
    the meet of the point images.
    """

    factor_maps: tuple[OrthoMap, ...]
    product_map: OrthoMap


def sharp(universe: ProductUniverse, factor_maps: Sequence[OrthoMap],
          box_space: ClosureSpace, element: int) -> int:
    """Image of a box-product element under the sharp map."""
    for beta, om in enumerate(factor_maps):
        bad = orthomap_violation(universe.factors[beta], om)
        if bad is not None:
            raise ValueError(f"factor {beta + 1} orthocomplementation invalid: {bad}")
    if element not in box_space:
        raise ValueError("element is not in the box product")
    if element == 0:
        return box_space.full_mask
    out = box_space.full_mask
    mm = element
    while mm:
        low = mm & -mm
        pid = low.bit_length() - 1
        coords = universe.decode(pid)
        img = 0
        for beta, om in enumerate(factor_maps):
            img |= universe.preimage_mask(beta, om.image_mask(1 << coords[beta]))
        out &= img
        mm ^= low
    return out


def sharp_map(box_space: ClosureSpace, factor_maps: Sequence[OrthoMap]) -> SharpMap:
    universe = box_space.product
    if universe is None:
        raise ValueError("no product structure registered for this space")
    images = []
    for m in box_space.masks:
        img = sharp(universe, factor_maps, box_space, m)
        images.append(box_space.element_index(img))
    return SharpMap(factor_maps=tuple(factor_maps),
                    product_map=OrthoMap(box_space, tuple(images)))


# -- coatom structure ----------------------------------------------------------

@dataclass(frozen=True)
class CoatomNonConformance:
    detail: str


def decompose_coatom(candidate: ClosureSpace, universe: ProductUniverse, coatom: int,
                     free_factor: int, pinned: Sequence[int]
                     ) -> Union[int, CoatomNonConformance]:
    """Write a coatom above a pinned half-cross in the one-free-factor form.

    ``pinned`` gives a factor coatom for every factor except
    ``free_factor``.  The decomposition extracts the free-factor element
    z with coatom = union of the pinned preimages and the preimage of z,
    and verifies z is a coatom of its factor.  A conformance failure is
    reported rather than raised; a non-coatom argument is an error.
    """
    if coatom not in candidate:
        raise ValueError("not an element of the candidate space")
    if candidate.covers(coatom, candidate.full_mask) is not True:
        raise ValueError("not a coatom of the candidate space")
    k = len(universe.factors)
    if len(pinned) != k - 1:
        raise ValueError("need one pinned coatom per non-free factor")
    others = [b for b in range(k) if b != free_factor]
    base = 0
    for beta, x in zip(others, pinned):
        if x not in universe.factors[beta].coatoms():
            raise ValueError(f"pinned element for factor {beta + 1} is not a coatom")
        base |= universe.preimage_mask(beta, x)
    if base & ~coatom:
        return CoatomNonConformance("coatom does not lie above the pinned half-cross")
    rest = coatom & ~base
    z = 0
    mm = rest
    while mm:
        low = mm & -mm
        z |= 1 << universe.decode(low.bit_length() - 1)[free_factor]
        mm ^= low
    rebuilt = base | universe.preimage_mask(free_factor, z)
    if rebuilt != coatom:
        return CoatomNonConformance(
            "coatom is not a pinned half-cross plus a single free-factor preimage")
    if z not in universe.factors[free_factor].coatoms():
        return CoatomNonConformance(
            f"free-factor part {universe.factors[free_factor].render_set(z)} "
            "is not a factor coatom")
    return z
