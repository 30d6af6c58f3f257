"""Finite simple closure spaces over small point universes.

A simple closure space on a finite point set is a family of subsets that
contains the empty set, the full set and every singleton, and is closed
under intersection.  Ordered by inclusion it is a complete atomistic
lattice whose atoms are the singletons, and every lattice handled by
this package is represented this way.  Closed sets are stored as
bitmasks over the point list: meet is bitwise AND, join is the closure
of the bitwise OR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from .products import ProductUniverse

MAX_POINTS = 24
# Operations that scan all subsets of the universe refuse beyond this.
SCAN_POINTS = 20

_LETTERS = "abcdefghijklmnopqrstuvwx"


class LatticeFormatError(ValueError):
    """Raised on malformed lattice text, with a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class CoverWitness:
    """Certifies that ``upper`` does not cover ``lower``.

    ``intermediate``, when present, is a closed set strictly between the
    two; when absent the failure is degenerate (``lower == upper``).
    """

    lower: int
    upper: int
    intermediate: Optional[int] = None


class DualOrderReport(NamedTuple):
    coatomistic: bool
    dual_covering: bool
    coatomistic_witness: Optional[int] = None
    dual_covering_witness: Optional[tuple[int, int]] = None


class ClosureSpace:
    """A finite simple closure space.

    Instances are immutable after construction and all operations are
    pure, so sharing across threads or workers is safe.  Internal
    memoization (coatoms, automorphisms) only caches pure results.
    """

    def __init__(self, points: Sequence[str], masks: Iterable[int],
                 product: "ProductUniverse | None" = None):
        points = tuple(points)
        if not points:
            raise ValueError("a closure space needs at least one point")
        if len(points) > MAX_POINTS:
            raise ValueError(f"universe of {len(points)} points exceeds the cap of {MAX_POINTS}")
        if len(set(points)) != len(points):
            raise ValueError("point labels must be unique")
        for lbl in points:
            if not lbl or any(ch.isspace() for ch in lbl):
                raise ValueError(f"bad point label {lbl!r}")
        self.points = points
        self.masks = tuple(sorted(set(masks)))
        self._members = frozenset(self.masks)
        self._index = {m: i for i, m in enumerate(self.masks)}
        self.product = product
        self._coatoms: tuple[int, ...] | None = None
        self._automorphisms = None  # filled lazily by props.automorphisms
        full = self.full_mask
        if 0 not in self._members or full not in self._members:
            raise ValueError("closed family must contain the empty and the full set")
        for i in range(len(points)):
            if (1 << i) not in self._members:
                raise ValueError(f"closed family must contain the singleton {points[i]!r}")
        # pairwise suffices for finite families; families past the bound
        # only come from builders that close or enumerate by construction
        if len(self.masks) <= 4096:
            for i, a in enumerate(self.masks):
                for b in self.masks[i + 1:]:
                    if a & b not in self._members:
                        raise ValueError(
                            f"family is not intersection-closed: "
                            f"{self.render_set(a)!r} and {self.render_set(b)!r}")

    # -- basic structure ------------------------------------------------

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.masks)

    def __contains__(self, mask: object) -> bool:
        return mask in self._members

    def is_closed(self, mask: int) -> bool:
        return mask in self._members

    def element_index(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise ValueError(f"{mask:#x} is not an element of this space") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        m = 0
        for lbl in labels:
            try:
                m |= 1 << self.points.index(lbl)
            except ValueError:
                raise ValueError(f"unknown point label {lbl!r}") from None
        return m

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in range(self.n_points) if mask >> i & 1)

    def render_set(self, mask: int) -> str:
        """Canonical text of a point set: space-separated labels, '-' if empty."""
        return " ".join(self.labels_of(mask)) or "-"

    # -- construction ---------------------------------------------------

    @classmethod
    def from_closed_sets(cls, points: Sequence[str], subsets: Iterable[int] = (),
                         product: "ProductUniverse | None" = None) -> "ClosureSpace":
        """Intersection-closure of ``subsets`` plus the forced members.

        The forced members are the empty set, the full set and all
        singletons.  Applying this to a family that is already closed
        returns it unchanged.
        """
        points = tuple(points)
        if not points:
            raise ValueError("a closure space needs at least one point")
        full = (1 << len(points)) - 1
        family = {0, full}
        family.update(1 << i for i in range(len(points)))
        for m in subsets:
            if m & ~full:
                raise ValueError(f"subset {m:#x} uses points outside the universe")
            family.add(m)
        frontier = list(family)
        while frontier:
            fresh = []
            snapshot = list(family)
            for a in frontier:
                for b in snapshot:
                    x = a & b
                    if x not in family:
                        family.add(x)
                        fresh.append(x)
            frontier = fresh
        return cls(points, family, product=product)

    # -- lattice operations ----------------------------------------------

    def closure(self, subset: int) -> int:
        """Smallest closed superset of ``subset``."""
        if subset & ~self.full_mask:
            raise ValueError("subset uses points outside the universe")
        if subset in self._members:
            return subset
        out = self.full_mask
        for m in self.masks:
            if subset & ~m == 0:
                out &= m
        return out

    def _require_element(self, mask: int) -> None:
        if mask not in self._members:
            raise ValueError(
                f"{self.render_set(mask & self.full_mask)!r} is not an element of this space"
            )

    def meet(self, a: int, b: int) -> int:
        self._require_element(a)
        self._require_element(b)
        return a & b

    def join(self, a: int, b: int) -> int:
        self._require_element(a)
        self._require_element(b)
        return self.closure(a | b)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.n_points)]

    def coatoms(self) -> list[int]:
        """Maximal proper elements, by maximality scan."""
        if self._coatoms is None:
            full = self.full_mask
            proper = [m for m in self.masks if m != full]
            out = []
            for m in proper:
                if not any(m != e and m & ~e == 0 for e in proper):
                    out.append(m)
            self._coatoms = tuple(out)
        return list(self._coatoms)

    def covers(self, a: int, b: int):
        """True iff ``b`` covers ``a``; a CoverWitness otherwise.

        Requires a <= b.  The witness carries the least intermediate
        element in mask order, or none when a == b.
        """
        self._require_element(a)
        self._require_element(b)
        if a & ~b:
            raise ValueError("covers() requires the first element below the second")
        if a == b:
            return CoverWitness(lower=a, upper=b)
        for c in self.masks:
            if c != a and c != b and a & ~c == 0 and c & ~b == 0:
                return CoverWitness(lower=a, upper=b, intermediate=c)
        return True

    # -- duality ----------------------------------------------------------

    def cover_pairs(self) -> list[tuple[int, int]]:
        """All covering pairs (a, b) with b covering a."""
        pairs = []
        for b in self.masks:
            for a in self.masks:
                if a != b and a & ~b == 0 and self.covers(a, b) is True:
                    pairs.append((a, b))
        return pairs

    def dual_order_check(self) -> DualOrderReport:
        """Atomisticity and covering of the order dual.

        The dual is coatomistic-side checked directly on this family:
        every element must be an intersection of coatoms, and for every
        coatom x and element a with x v a = 1, a must cover x ^ a.
        """
        coatoms = self.coatoms()
        full = self.full_mask
        coatomistic, co_witness = True, None
        for m in self.masks:
            inter = full
            for x in coatoms:
                if m & ~x == 0:
                    inter &= x
            if inter != m:
                coatomistic, co_witness = False, m
                break
        dual_cov, dc_witness = True, None
        for x in coatoms:
            for a in self.masks:
                if self.closure(x | a) != full:
                    continue
                if self.covers(x & a, a) is not True:
                    dual_cov, dc_witness = False, (x, a)
                    break
            if not dual_cov:
                break
        return DualOrderReport(coatomistic, dual_cov, co_witness, dc_witness)

    # -- center -----------------------------------------------------------

    def is_central(self, a: int) -> bool:
        """Order-theoretic centrality.

        ``a`` is central iff its set-complement is closed and the space
        splits as the direct product of the intervals below the two,
        i.e. every union of an element under ``a`` with an element under
        the complement is closed.
        """
        self._require_element(a)
        ac = self.full_mask & ~a
        if ac not in self._members:
            return False
        below_a = [m for m in self.masks if m & ~a == 0]
        below_c = [m for m in self.masks if m & ~ac == 0]
        for y in below_a:
            for z in below_c:
                if (y | z) not in self._members:
                    return False
        return True

    def center(self) -> list[int]:
        return [m for m in self.masks if self.is_central(m)]

    def central_cover(self, atom: int) -> int:
        """Meet of the central elements above the given atom."""
        if atom.bit_count() != 1 or atom not in self._members:
            raise ValueError("central_cover expects an atom of this space")
        out = self.full_mask
        for m in self.center():
            if atom & m:
                out &= m
        return out

    def irreducible_components(self) -> list[tuple[int, ...]]:
        """Partition of the point ids by minimal nonzero central elements."""
        nonzero = [m for m in self.center() if m != 0]
        minimal = [m for m in nonzero
                   if not any(e != m and e & ~m == 0 for e in nonzero)]
        comps = sorted(minimal)
        covered = 0
        for m in comps:
            covered |= m
        if covered != self.full_mask:
            raise RuntimeError("central elements fail to cover the points")
        return [tuple(i for i in range(self.n_points) if m >> i & 1) for m in comps]


# -- stock builders -------------------------------------------------------

def default_labels(n: int) -> tuple[str, ...]:
    if not 1 <= n <= MAX_POINTS:
        raise ValueError(f"point count must be between 1 and {MAX_POINTS}")
    return tuple(_LETTERS[:n])


def mo_space(n: int, labels: Sequence[str] | None = None) -> ClosureSpace:
    """MO_n: the space whose only closed sets are 0, 1 and the atoms."""
    points = tuple(labels) if labels is not None else default_labels(n)
    if len(points) != n:
        raise ValueError("label count does not match n")
    full = (1 << n) - 1
    family = [0, full] + [1 << i for i in range(n)]
    return ClosureSpace(points, family)


def powerset_space(n: int, labels: Sequence[str] | None = None) -> ClosureSpace:
    points = tuple(labels) if labels is not None else default_labels(n)
    if len(points) != n:
        raise ValueError("label count does not match n")
    return ClosureSpace(points, range(1 << n))


def two_space() -> ClosureSpace:
    """The two-element lattice: one point, closed sets 0 and 1."""
    return mo_space(1)


# -- lattice text format ---------------------------------------------------
#
#   points: a b c
#   -
#   a
#   a b
#
# One closed set per line after the header, '-' for the empty set; the
# loader closes the listed family, so files may list generators only.

def parse_lattice_text(text: str) -> ClosureSpace:
    points: tuple[str, ...] | None = None
    masks: list[int] = []
    index: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if points is None:
            if not line.startswith("points:"):
                raise LatticeFormatError("expected a 'points:' header", lineno)
            labels = line[len("points:"):].split()
            if not labels:
                raise LatticeFormatError("empty point list", lineno)
            if len(labels) != len(set(labels)):
                raise LatticeFormatError("duplicate point label", lineno)
            if len(labels) > MAX_POINTS:
                raise LatticeFormatError(
                    f"{len(labels)} points exceed the cap of {MAX_POINTS}", lineno)
            points = tuple(labels)
            index = {lbl: i for i, lbl in enumerate(points)}
            continue
        if line == "-":
            masks.append(0)
            continue
        m = 0
        for lbl in line.split():
            if lbl not in index:
                raise LatticeFormatError(f"unknown point label {lbl!r}", lineno)
            m |= 1 << index[lbl]
        masks.append(m)
    if points is None:
        raise LatticeFormatError("missing 'points:' header", 1)
    return ClosureSpace.from_closed_sets(points, masks)


def render_lattice_text(space: ClosureSpace) -> str:
    lines = ["points: " + " ".join(space.points)]
    lines.extend(space.render_set(m) for m in space.masks)
    return "\n".join(lines) + "\n"
