"""Structural property checks: covering, orthocomplementation,
orthomodularity, MO_n containment, automorphisms, weak connectivity.

All procedures are exhaustive over the finite family except
``is_weakly_connected``, which is sound but deliberately incomplete
(it may answer UNKNOWN).  Witnesses are canonical: the first failure
under the ordering (atom id, element bitmask).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .spaces import SCAN_POINTS, ClosureSpace, CoverWitness

AUTOMORPHISM_POINT_CAP = 12
DEFAULT_NODE_CAP = 10_000_000


class SearchBudgetExceeded(RuntimeError):
    """The orthocomplementation search exceeded its node budget."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"orthocomplementation search exceeded {nodes} nodes")


@dataclass(frozen=True)
class OrthoMap:
    """An orthocomplementation given by element-index images.

    Laws (checked by :func:`validate_orthomap`): involution,
    order-reversal, and a v a' = 1 for every element a.
    """

    space: ClosureSpace
    images: tuple[int, ...]

    def image_mask(self, mask: int) -> int:
        return self.space.masks[self.images[self.space.element_index(mask)]]

    def atom_table(self) -> list[tuple[int, int]]:
        return [(p, self.image_mask(p)) for p in self.space.atoms()]


@dataclass(frozen=True)
class ExhaustionCertificate:
    """Proof token that the orthocomplementation search tree was exhausted."""

    nodes: int
    branch_order: tuple[int, ...]


@dataclass(frozen=True)
class CoveringFailure:
    atom: int
    element: int
    witness: CoverWitness


@dataclass(frozen=True)
class OrthomodularityWitness:
    a: int
    b: int


@dataclass(frozen=True)
class Automorphism:
    """A point permutation whose induced set map preserves the family."""

    point_perm: tuple[int, ...]

    def apply_point(self, i: int) -> int:
        return self.point_perm[i]

    def apply_mask(self, mask: int) -> int:
        out = 0
        perm = self.point_perm
        while mask:
            low = mask & -mask
            out |= 1 << perm[low.bit_length() - 1]
            mask ^= low
        return out

    def compose(self, other: "Automorphism") -> "Automorphism":
        # self after other
        return Automorphism(tuple(self.point_perm[j] for j in other.point_perm))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.point_perm)
        for i, j in enumerate(self.point_perm):
            inv[j] = i
        return Automorphism(tuple(inv))


@dataclass(frozen=True)
class ConnectedCovering:
    """A family of blocks witnessing weak connectivity.

    Every block has at least two atoms, the join of any two atoms in a
    block contains a third, the blocks cover the points, and any two
    points are linked by a chain of blocks overlapping in >= 2 points.
    """

    blocks: tuple[int, ...]


@dataclass(frozen=True)
class NotWeaklyConnected:
    """Certificate: the two-element lattice, or an isolated atom whose
    join with any other atom never contains a third."""

    reason: str
    isolated_atom: Optional[int] = None


class Unknown:
    def __repr__(self) -> str:  # pragma: no cover
        return "UNKNOWN"


UNKNOWN = Unknown()


# -- covering property ------------------------------------------------------

def has_covering_property(space: ClosureSpace) -> Union[bool, CoveringFailure]:
    """Check p ^ a = 0 implies p v a covers a, over all (atom, element).

    Returns True, or the first failure in (atom id, element mask) order.
    """
    for p in space.atoms():
        for a in space.masks:
            if p & a:
                continue
            j = space.closure(p | a)
            c = space.covers(a, j)
            if c is not True:
                return CoveringFailure(atom=p, element=a, witness=c)
    return True


# -- orthocomplementation ---------------------------------------------------

def orthomap_violation(space: ClosureSpace, om: OrthoMap) -> Optional[str]:
    """Name the first violated orthocomplementation law, if any."""
    n = len(space.masks)
    if om.space is not space or len(om.images) != n:
        return "map does not index this space"
    if sorted(om.images) != list(range(n)):
        return "not a bijection on elements"
    for i, j in enumerate(om.images):
        if om.images[j] != i:
            return f"involution fails at {space.render_set(space.masks[i])!r}"
    masks = space.masks
    for i in range(n):
        for j in range(n):
            if masks[i] & ~masks[j] == 0:  # a <= b
                if masks[om.images[j]] & ~masks[om.images[i]]:
                    return ("order reversal fails on "
                            f"{space.render_set(masks[i])!r} <= {space.render_set(masks[j])!r}")
    full = space.full_mask
    for i in range(n):
        if space.closure(masks[i] | masks[om.images[i]]) != full:
            return f"complement law fails at {space.render_set(masks[i])!r}"
    return None


def validate_orthomap(space: ClosureSpace, om: OrthoMap) -> bool:
    return orthomap_violation(space, om) is None


def _extend_atom_images(space: ClosureSpace, images_by_atom: Sequence[int]) -> Optional[OrthoMap]:
    """Extend an atom -> coatom assignment to all elements and validate.

    The image of a nonzero element is the meet of its atoms' images; the
    image of 0 is 1.  Returns the map only if all laws hold.
    """
    full = space.full_mask
    images: list[int] = []
    for m in space.masks:
        if m == 0:
            img = full
        else:
            img = full
            mm = m
            while mm:
                low = mm & -mm
                img &= images_by_atom[low.bit_length() - 1]
                mm ^= low
        if img not in space:
            return None
        images.append(space.element_index(img))
    if len(set(images)) != len(images):
        return None
    om = OrthoMap(space, tuple(images))
    if orthomap_violation(space, om) is None:
        return om
    return None


def find_orthocomplementation(
    space: ClosureSpace,
    *,
    node_cap: int = DEFAULT_NODE_CAP,
    reverse_branching: bool = False,
) -> Union[OrthoMap, ExhaustionCertificate]:
    """Backtracking search for an orthocomplementation.

    Branches on the coatom image of each atom in canonical atom order.
    In an atomistic lattice the atom images determine the whole map, so
    exhausting the assignments decides existence; the certificate
    records the node count.  Candidates are pruned by p not in p',
    injectivity, and the symmetry q <= p' iff p <= q'.

    Raises SearchBudgetExceeded past ``node_cap`` nodes.
    """
    if space.n_points > SCAN_POINTS:
        raise ValueError(f"universe of {space.n_points} points exceeds the search cap "
                         f"of {SCAN_POINTS}")
    n = space.n_points
    coatoms = sorted(space.coatoms())
    if reverse_branching:
        coatoms = coatoms[::-1]
    candidates = [[c for c in coatoms if not c >> i & 1] for i in range(n)]
    chosen: list[int] = []
    used: set[int] = set()
    nodes = 0
    order = tuple(range(n))

    def dfs(i: int) -> Optional[OrthoMap]:
        nonlocal nodes
        if i == n:
            return _extend_atom_images(space, chosen)
        for c in candidates[i]:
            nodes += 1
            if nodes > node_cap:
                raise SearchBudgetExceeded(nodes)
            if c in used:
                continue
            # q in p' iff p in q', for every previously assigned q
            ok = True
            for j in range(i):
                if bool(c >> j & 1) != bool(chosen[j] >> i & 1):
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(c)
            used.add(c)
            found = dfs(i + 1)
            if found is not None:
                return found
            used.discard(c)
            chosen.pop()
        return None

    found = dfs(0)
    if found is not None:
        return found
    return ExhaustionCertificate(nodes=nodes, branch_order=order)


def is_orthomodular(space: ClosureSpace, om: OrthoMap) -> Union[bool, OrthomodularityWitness]:
    """Check a <= b implies b = a v (b ^ a') for a given orthocomplementation.

    Returns True or the first failing pair in (a mask, b mask) order.
    An invalid map is rejected with the violated law named.
    """
    violation = orthomap_violation(space, om)
    if violation is not None:
        raise ValueError(f"invalid orthocomplementation: {violation}")
    for a in space.masks:
        ia = om.image_mask(a)
        for b in space.masks:
            if a & ~b:
                continue
            if space.closure(a | (b & ia)) != b:
                return OrthomodularityWitness(a=a, b=b)
    return True


def center_via_orthocomplementation(space: ClosureSpace, om: OrthoMap) -> list[int]:
    """Central elements read off an orthocomplementation: a' = a-complement.

    Agrees with the order-theoretic center whenever the map is valid;
    the agreement is asserted so a disagreement cannot pass silently.
    """
    violation = orthomap_violation(space, om)
    if violation is not None:
        raise ValueError(f"invalid orthocomplementation: {violation}")
    full = space.full_mask
    out = [m for m in space.masks if om.image_mask(m) == full & ~m]
    if out != space.center():
        raise RuntimeError("orthocomplementation center disagrees with the "
                           "order-theoretic center")
    return out


# -- MO_n containment --------------------------------------------------------

def contains_mo_n(space: ClosureSpace, n: int) -> Optional[tuple[int, ...]]:
    """Find n atoms whose first-last join covers each of them.

    Returns the canonical witness tuple (p1..pn) or None.  The join of
    the first and last witness atoms covers every atom in the tuple.
    """
    if n < 3:
        raise ValueError("MO_n containment is only asked for n >= 3")
    atoms = space.atoms()
    for p in atoms:
        for q in atoms:
            if q <= p:
                continue
            j = space.closure(p | q)
            covered = [r for r in atoms
                       if r & j and space.covers(r, j) is True]
            if len(covered) < n:
                continue
            middle = [r for r in covered if r != p and r != q]
            if p in covered and q in covered and len(middle) >= n - 2:
                return tuple([p] + middle[: n - 2] + [q])
    return None


# -- automorphisms ------------------------------------------------------------

def automorphisms(space: ClosureSpace) -> list[Automorphism]:
    """All point permutations preserving the closed family, by brute force."""
    if space.n_points > AUTOMORPHISM_POINT_CAP:
        raise ValueError(f"automorphism scan capped at {AUTOMORPHISM_POINT_CAP} points")
    if space._automorphisms is not None:
        return list(space._automorphisms)
    n = space.n_points
    # Small and medium sets constrain permutations fastest.
    probes = sorted((m for m in space.masks if 1 < m.bit_count() < n),
                    key=lambda m: (m.bit_count(), m))
    members = space._members
    out = []
    for perm in itertools.permutations(range(n)):
        ok = True
        for m in probes:
            img = 0
            mm = m
            while mm:
                low = mm & -mm
                img |= 1 << perm[low.bit_length() - 1]
                mm ^= low
            if img not in members:
                ok = False
                break
        if ok:
            out.append(Automorphism(perm))
    space._automorphisms = tuple(out)
    return list(out)


def is_transitive(space: ClosureSpace) -> bool:
    """Whether the automorphism group acts transitively on the points."""
    orbit = {0}
    for u in automorphisms(space):
        orbit.add(u.point_perm[0])
    return len(orbit) == space.n_points


@dataclass(frozen=True)
class FactoredForm:
    factor_bijection: tuple[int, ...]
    factor_isos: tuple[tuple[int, ...], ...]


def check_factorization(space: ClosureSpace, universe, auto: Automorphism
                        ) -> Optional[FactoredForm]:
    """Factor a product-space automorphism through the factors.

    Finds a bijection f of the factor indices and per-factor point
    bijections v_i with u(p)_{f(i)} = v_i(p_i) for every product point,
    each v_i an isomorphism onto its target factor.  Returns None when
    no such factorization exists.
    """
    if universe is None:
        raise ValueError("no product structure registered for this space")
    factors = universe.factors
    k = len(factors)
    sizes = [f.n_points for f in factors]
    for f in itertools.permutations(range(k)):
        if any(sizes[i] != sizes[f[i]] for i in range(k)):
            continue
        # Read candidate v_i off the images of points varying coordinate i.
        isos = []
        consistent = True
        for i in range(k):
            v = [-1] * sizes[i]
            for pid in range(universe.n_points):
                t = universe.decode(pid)
                img = universe.decode(auto.apply_point(pid))
                if v[t[i]] == -1:
                    v[t[i]] = img[f[i]]
                elif v[t[i]] != img[f[i]]:
                    consistent = False
                    break
            if not consistent:
                break
            if sorted(v) != list(range(sizes[i])):
                consistent = False
                break
            isos.append(tuple(v))
        if not consistent:
            continue
        # Each v_i must carry the closed family of factor i onto factor f(i).
        good = True
        for i in range(k):
            src, dst = factors[i], factors[f[i]]
            mapped = set()
            for m in src.masks:
                img = 0
                mm = m
                while mm:
                    low = mm & -mm
                    img |= 1 << isos[i][low.bit_length() - 1]
                    mm ^= low
                mapped.add(img)
            if mapped != set(dst.masks):
                good = False
                break
        if good:
            return FactoredForm(factor_bijection=f, factor_isos=tuple(isos))
    return None


# -- weak connectivity ---------------------------------------------------------

def validate_connected_covering(space: ClosureSpace, cov: ConnectedCovering) -> bool:
    """Check the three connected-covering conditions verbatim."""
    blocks = cov.blocks
    union = 0
    for b in blocks:
        union |= b
        if b.bit_count() < 2:
            return False
        ids = [i for i in range(space.n_points) if b >> i & 1]
        for p, q in itertools.combinations(ids, 2):
            j = space.closure((1 << p) | (1 << q))
            if (j & ~((1 << p) | (1 << q))) == 0:
                return False
    if union != space.full_mask:
        return False
    # chain condition via block-overlap components
    k = len(blocks)
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in itertools.combinations(range(k), 2):
        if (blocks[a] & blocks[b]).bit_count() >= 2:
            parent[find(a)] = find(b)
    for p in range(space.n_points):
        for q in range(space.n_points):
            comps_p = {find(i) for i in range(k) if blocks[i] >> p & 1}
            comps_q = {find(i) for i in range(k) if blocks[i] >> q & 1}
            if not comps_p & comps_q:
                return False
    return True


def is_weakly_connected(space: ClosureSpace
                        ) -> Union[ConnectedCovering, NotWeaklyConnected, Unknown]:
    """Sound, incomplete decision of weak connectivity.

    Builds candidate blocks as maximal cliques of the third-atom
    relation and verifies the covering found; answers NOT only with a
    certificate, and UNKNOWN otherwise.
    """
    n = space.n_points
    if n == 1:
        return NotWeaklyConnected(reason="the two-element lattice")
    adj = [0] * n
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            j = space.closure((1 << p) | (1 << q))
            if j & ~((1 << p) | (1 << q)):
                adj[p] |= 1 << q
    for p in range(n):
        if adj[p] == 0:
            return NotWeaklyConnected(
                reason="atom whose join with any other atom contains no third atom",
                isolated_atom=1 << p)
    cliques: list[int] = []
    _bron_kerbosch(0, space.full_mask, 0, adj, cliques)
    blocks = tuple(sorted(c for c in cliques if c.bit_count() >= 2))
    cov = ConnectedCovering(blocks=blocks)
    if blocks and validate_connected_covering(space, cov):
        return cov
    return UNKNOWN


def _bron_kerbosch(r: int, p: int, x: int, adj: Sequence[int], out: list[int]) -> None:
    if p == 0 and x == 0:
        out.append(r)
        return
    pivot_pool = p | x
    pivot = (pivot_pool & -pivot_pool).bit_length() - 1
    candidates = p & ~adj[pivot]
    while candidates:
        low = candidates & -candidates
        v = low.bit_length() - 1
        _bron_kerbosch(r | low, p & adj[v], x & adj[v], adj, out)
        p &= ~low
        x |= low
        candidates ^= low
