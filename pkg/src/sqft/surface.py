"""Occupied surfaces presented as square complexes.

A surface is a set of abstract squares glued along sides. Conventions, fixed once
and used everywhere:

* Each square has corners 0..3 in anticlockwise order. Corner k is negative when
  k is even and positive when k is odd.
* Side k runs from corner k to corner k+1 (mod 4), so traversing sides 0,1,2,3
  walks the square's boundary anticlockwise. Even sides are outgoing boundary
  edges (their negative-to-positive direction agrees with the boundary
  orientation), odd sides are incoming.
* A gluing identifies an even side with an odd side, orientation-reversingly:
  gluing (S, a) to (T, b) identifies corner (S, a) with (T, b+1) and corner
  (S, a+1) with (T, b). Matched corners always have equal parity, hence equal
  sign.
* Unglued sides are boundary edges. Points along a side are indexed 0..m-1 in
  the side's own direction; across a gluing, point k matches point m-1-k.

Squares are numbered 0..square_count-1 and double as tensor-factor indices
downstream. All values are immutable; operations return new complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

Slot = tuple[int, int]          # (square, side), side in 0..3
Corner = tuple[int, int]        # (square, corner), corner in 0..3
GluingPair = tuple[Slot, Slot]


def _norm_pair(a: Slot, b: Slot) -> GluingPair:
    return (a, b) if a <= b else (b, a)


class InvalidComplex(ValueError):
    """Raised when an operation requires a valid complex and gets violations."""


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class VertexClass:
    """A vertex of the presented surface: an orbit of square corners."""

    corners: frozenset[Corner]
    sign: int                    # +1 or -1
    internal: bool

    def __contains__(self, corner: Corner) -> bool:
        return corner in self.corners

    @property
    def key(self) -> Corner:
        return min(self.corners)


@dataclass(frozen=True)
class InvariantSummary:
    square_count: int
    n: int                       # half the boundary vertex count
    chi: int
    boundary_components: int
    components: int
    genus: int
    index: int                   # n - chi
    gluing_number: int           # n - 2*chi


@dataclass(frozen=True)
class SquareComplex:
    square_count: int
    gluings: frozenset[GluingPair] = frozenset()
    slack: bool = False

    @staticmethod
    def build(square_count: int, gluings: Iterable[tuple[Slot, Slot]] = (),
              slack: bool = False) -> "SquareComplex":
        pairs = frozenset(_norm_pair(a, b) for a, b in gluings)
        return SquareComplex(square_count, pairs, slack)

    # -- basic structure -------------------------------------------------

    @cached_property
    def partner_map(self) -> dict[Slot, Slot]:
        out: dict[Slot, Slot] = {}
        for a, b in self.gluings:
            out[a] = b
            out[b] = a
        return out

    def partner(self, slot: Slot) -> Optional[Slot]:
        return self.partner_map.get(slot)

    def is_glued(self, slot: Slot) -> bool:
        return slot in self.partner_map

    def slots(self) -> Iterator[Slot]:
        for s in range(self.square_count):
            for k in range(4):
                yield (s, k)

    @cached_property
    def boundary_slots(self) -> tuple[Slot, ...]:
        return tuple(s for s in self.slots() if not self.is_glued(s))

    def sorted_gluings(self) -> list[GluingPair]:
        return sorted(self.gluings)

    # -- vertex classes ---------------------------------------------------

    @cached_property
    def vertex_classes(self) -> tuple[VertexClass, ...]:
        parent: dict[Corner, Corner] = {
            (s, c): (s, c) for s in range(self.square_count) for c in range(4)
        }

        def find(x: Corner) -> Corner:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: Corner, y: Corner) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for (sa, a), (sb, b) in self.gluings:
            union((sa, a), (sb, (b + 1) % 4))
            union((sa, (a + 1) % 4), (sb, b))

        groups: dict[Corner, list[Corner]] = {}
        for corner in parent:
            groups.setdefault(find(corner), []).append(corner)

        classes = []
        for members in groups.values():
            sign = +1 if members[0][1] % 2 == 1 else -1
            internal = all(
                self.is_glued((sq, c)) and self.is_glued((sq, (c - 1) % 4))
                for sq, c in members
            )
            classes.append(VertexClass(frozenset(members), sign, internal))
        classes.sort(key=lambda v: v.key)
        return tuple(classes)

    @cached_property
    def corner_class(self) -> dict[Corner, VertexClass]:
        out: dict[Corner, VertexClass] = {}
        for v in self.vertex_classes:
            for corner in v.corners:
                out[corner] = v
        return out

    def internal_vertices(self) -> tuple[VertexClass, ...]:
        return tuple(v for v in self.vertex_classes if v.internal)

    def edge_endpoints(self, slot: Slot) -> tuple[VertexClass, VertexClass]:
        """Start and end vertex classes of a side, in the side's direction."""
        sq, k = slot
        cc = self.corner_class
        return cc[(sq, k)], cc[(sq, (k + 1) % 4)]

    # -- vertex walks -----------------------------------------------------

    def walk_vertex_acw(self, corner: Corner) -> list[Corner]:
        """Corners around a vertex class, anticlockwise from `corner`.

        Stops at an unglued side (boundary vertex) or on returning to the
        start (internal vertex).
        """
        out = [corner]
        cur = corner
        while True:
            sq, c = cur
            side = (sq, (c - 1) % 4)
            mate = self.partner(side)
            if mate is None:
                return out
            cur = mate
            if cur == corner:
                return out
            out.append(cur)
            if len(out) > 4 * self.square_count + 1:
                raise InvalidComplex("vertex walk does not terminate")

    def next_boundary_slot(self, slot: Slot) -> Slot:
        """The boundary edge following `slot` along its boundary cycle."""
        sq, k = slot
        cur = (sq, (k + 1) % 4)
        for _ in range(4 * self.square_count + 1):
            mate = self.partner(cur)
            if mate is None:
                return cur
            t, d = mate
            cur = (t, (d + 1) % 4)
        raise InvalidComplex("boundary walk does not terminate")

    @cached_property
    def boundary_cycles(self) -> tuple[tuple[Slot, ...], ...]:
        seen: set[Slot] = set()
        cycles = []
        for start in self.boundary_slots:
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            cur = self.next_boundary_slot(start)
            while cur != start:
                cycle.append(cur)
                seen.add(cur)
                cur = self.next_boundary_slot(cur)
            cycles.append(tuple(cycle))
        return tuple(cycles)

    def boundary_cycle_of(self, slot: Slot) -> tuple[Slot, ...]:
        for cycle in self.boundary_cycles:
            if slot in cycle:
                return cycle
        raise ValueError(f"{slot} is not a boundary edge")

    # -- components -------------------------------------------------------

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        """Component id per square (ids are 0..components-1 by least square)."""
        parent = list(range(self.square_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (sa, _), (sb, _) in self.gluings:
            ra, rb = find(sa), find(sb)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        roots: dict[int, int] = {}
        out = []
        for s in range(self.square_count):
            r = find(s)
            if r not in roots:
                roots[r] = len(roots)
            out.append(roots[r])
        return tuple(out)

    def component_squares(self, comp: int) -> tuple[int, ...]:
        return tuple(s for s in range(self.square_count)
                     if self.component_of[s] == comp)


# ---------------------------------------------------------------------------
# validation and invariants


def validate_complex(c: SquareComplex) -> ValidationReport:
    problems: list[str] = []
    slot_uses: dict[Slot, int] = {}
    for a, b in c.gluings:
        for slot in (a, b):
            sq, k = slot
            if not (0 <= sq < c.square_count and 0 <= k < 4):
                problems.append(f"gluing references nonexistent slot {slot}")
            slot_uses[slot] = slot_uses.get(slot, 0) + 1
        if a == b:
            problems.append(f"side {a} glued to itself")
        elif (a[1] + b[1]) % 2 == 0:
            problems.append(f"gluing {a}-{b} pairs sides of equal parity")
    for slot, count in slot_uses.items():
        if count > 1:
            problems.append(f"side {slot} glued more than once")
    if problems:
        return ValidationReport(tuple(problems))

    if not c.slack:
        for a, b in c.gluings:
            if a[0] == b[0]:
                problems.append(f"sides {a} and {b} of one square glued (needs slack)")
        for v in c.vertex_classes:
            if v.internal:
                problems.append(f"internal vertex {sorted(v.corners)} (needs slack)")
    return ValidationReport(tuple(problems))


def _require_valid(c: SquareComplex) -> None:
    report = validate_complex(c)
    if not report.ok:
        raise InvalidComplex("; ".join(report.problems))


def invariants(c: SquareComplex) -> InvariantSummary:
    _require_valid(c)
    classes = c.vertex_classes
    v = len(classes)
    e = len(c.gluings) + len(c.boundary_slots)
    f = c.square_count
    chi = v - e + f
    boundary_classes = [x for x in classes if not x.internal]
    pos = sum(1 for x in boundary_classes if x.sign > 0)
    neg = len(boundary_classes) - pos
    if pos != neg:
        raise InvalidComplex("boundary vertex signs do not balance")
    n = pos
    b = len(c.boundary_cycles)
    comps = max(c.component_of, default=-1) + 1
    genus2 = 2 * comps - chi - b
    if genus2 % 2:
        raise InvalidComplex("inconsistent Euler data")
    return InvariantSummary(
        square_count=c.square_count,
        n=n,
        chi=chi,
        boundary_components=b,
        components=comps,
        genus=genus2 // 2,
        index=n - chi,
        gluing_number=n - 2 * chi,
    )


def component_index(c: SquareComplex, comp: int) -> int:
    """Index N - chi of one connected component."""
    squares = set(c.component_squares(comp))
    sub_gluings = [g for g in c.gluings if g[0][0] in squares]
    renum = {s: i for i, s in enumerate(sorted(squares))}
    sub = SquareComplex.build(
        len(squares),
        [(((renum[a[0]], a[1])), ((renum[b[0]], b[1]))) for a, b in sub_gluings],
        slack=c.slack,
    )
    return invariants(sub).index


@dataclass(frozen=True)
class BoundaryEdge:
    slot: Slot
    outgoing: bool               # even side: agrees with boundary orientation
    start: VertexClass
    end: VertexClass


def boundary_structure(c: SquareComplex) -> list[list[BoundaryEdge]]:
    _require_valid(c)
    out = []
    for cycle in c.boundary_cycles:
        edges = []
        for slot in cycle:
            start, end = c.edge_endpoints(slot)
            edges.append(BoundaryEdge(slot, slot[1] % 2 == 0, start, end))
        out.append(edges)
    return out


# ---------------------------------------------------------------------------
# glue / unglue


@dataclass(frozen=True)
class GluingKind:
    kind: str                                    # "standard" | "fold" | "zip"
    swallowed: tuple[VertexClass, ...] = ()

    @property
    def sign(self) -> Optional[int]:
        if self.kind == "fold":
            return self.swallowed[0].sign
        return None


def classify_gluing(c: SquareComplex, a: Slot, b: Slot) -> GluingKind:
    """Classify the gluing of two boundary edges without performing it."""
    ea = set(c.edge_endpoints(a))
    eb = set(c.edge_endpoints(b))
    shared = tuple(sorted(ea & eb, key=lambda v: v.key))
    if len(shared) == 0:
        return GluingKind("standard")
    if len(shared) == 1:
        return GluingKind("fold", shared)
    return GluingKind("zip", shared)


def glue(c: SquareComplex, a: Slot, b: Slot) -> tuple[SquareComplex, GluingKind]:
    _require_valid(c)
    for slot in (a, b):
        sq, k = slot
        if not (0 <= sq < c.square_count and 0 <= k < 4):
            raise ValueError(f"no such slot {slot}")
        if c.is_glued(slot):
            raise ValueError(f"side {slot} is already glued")
    if a == b:
        raise ValueError("cannot glue a side to itself")
    if (a[1] + b[1]) % 2 == 0:
        raise ValueError("gluing must pair an even side with an odd side")

    kind = classify_gluing(c, a, b)
    if kind.kind == "zip":
        cycle = c.boundary_cycle_of(a)
        if set(cycle) != {a, b}:
            raise ValueError("edges share both endpoints but are not a whole "
                             "2-edge boundary cycle")
        comp = c.component_of[a[0]]
        comp_cycles = sum(
            1 for cyc in c.boundary_cycles if c.component_of[cyc[0][0]] == comp
        )
        if comp_cycles < 2:
            raise ValueError("zip needs a second boundary component")
        if component_index(c, comp) == 2:
            raise ValueError("zip would close the component into a vacuum")
    glued = SquareComplex(
        c.square_count,
        c.gluings | {_norm_pair(a, b)},
        slack=c.slack or kind.kind != "standard",
    )
    return glued, kind


def unglue(c: SquareComplex, a: Slot, b: Slot) -> SquareComplex:
    _require_valid(c)
    pair = _norm_pair(a, b)
    if pair not in c.gluings:
        raise ValueError(f"no gluing {a}-{b} to cut")
    return SquareComplex(c.square_count, c.gluings - {pair}, slack=c.slack)


# ---------------------------------------------------------------------------
# relabeling and canonical form


def relabel(c: SquareComplex, perm: dict[int, int]) -> SquareComplex:
    """Renumber squares by perm (old index -> new index)."""
    pairs = [(((perm[a[0]], a[1])), ((perm[b[0]], b[1]))) for a, b in c.gluings]
    return SquareComplex.build(c.square_count, pairs, slack=c.slack)


def canonical_permutation(c: SquareComplex) -> dict[int, int]:
    """BFS renumbering from the lowest-index square, neighbors in side order."""
    perm: dict[int, int] = {}
    for start in range(c.square_count):
        if start in perm:
            continue
        queue = [start]
        perm[start] = len(perm)
        head = 0
        while head < len(queue):
            sq = queue[head]
            head += 1
            for k in range(4):
                mate = c.partner((sq, k))
                if mate is not None and mate[0] not in perm:
                    perm[mate[0]] = len(perm)
                    queue.append(mate[0])
    return perm


def canonical_form(c: SquareComplex) -> tuple[SquareComplex, dict[int, int]]:
    perm = canonical_permutation(c)
    return relabel(c, perm), perm


def complex_key(c: SquareComplex) -> tuple:
    """Hashable canonical key (canonical-form gluing set plus size)."""
    canon, _ = canonical_form(c)
    return (canon.square_count, tuple(canon.sorted_gluings()), canon.slack)


def disjoint_union(c1: SquareComplex, c2: SquareComplex) -> SquareComplex:
    off = c1.square_count
    pairs = list(c1.gluings) + [
        (((a[0] + off, a[1])), ((b[0] + off, b[1]))) for a, b in c2.gluings
    ]
    return SquareComplex.build(c1.square_count + c2.square_count, pairs,
                               slack=c1.slack or c2.slack)


def add_square(c: SquareComplex) -> SquareComplex:
    return SquareComplex(c.square_count + 1, c.gluings, slack=c.slack)


def remove_square(c: SquareComplex, sq: int) -> SquareComplex:
    """Drop square sq (must have no gluings) and shift higher indices down."""
    if any(slot[0] == sq for pair in c.gluings for slot in pair):
        raise ValueError("square still glued")
    perm = {s: (s if s < sq else s - 1) for s in range(c.square_count) if s != sq}
    pairs = [(((perm[a[0]], a[1])), ((perm[b[0]], b[1]))) for a, b in c.gluings]
    return SquareComplex.build(c.square_count - 1, pairs, slack=c.slack)
