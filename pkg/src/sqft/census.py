"""Enumeration oracles and random generators for property testing.

The disc census realizes every non-crossing perfect matching of the 2n
boundary points as a curve system on the fan-quadrangulated disc; counts are
checked against an independent Catalan recursion. Random surfaces come as
scripts of elementary moves; random sutures interleave isotopy finger moves
with bypass surgeries so that edge triples actually exist.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .engine import CreateSquare, Fold, Glue, MorphismScript, Move, Zip
from .quad import tighten
from .routing import DiscSide, split_disc
from .surface import Slot, SquareComplex, add_square, glue, invariants
from .sutures import (
    CurveSystem, basic_system, bypass_surgery, finger_push, normalize,
    validate_sutures,
)
from .regions import is_trivial


# ---------------------------------------------------------------------------
# the disc family


def disc_complex(n: int) -> SquareComplex:
    """Fan quadrangulation of the disc with 2n boundary vertices."""
    if n < 2:
        raise ValueError("need n >= 2")
    return SquareComplex.build(
        n - 1, [((i, 2), (i + 1, 1)) for i in range(n - 2)]
    )


@dataclass(frozen=True)
class DiscFamily:
    n: int

    @property
    def complex(self) -> SquareComplex:
        return disc_complex(self.n)

    def __post_init__(self):
        inv = invariants(self.complex)
        if (inv.index, inv.gluing_number, inv.boundary_components,
                inv.chi) != (self.n - 1, self.n - 2, 1, 1):
            raise AssertionError("disc family invariants broken")


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    # independent oracle: the standard recursion, no enumeration involved
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def noncrossing_matchings(m: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All non-crossing perfect matchings of points 0..m-1 in convex position."""
    if m % 2:
        raise ValueError("odd point count")

    def rec(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not points:
            yield ()
            return
        a = points[0]
        for idx in range(1, len(points), 2):
            b = points[idx]
            for left in rec(points[1:idx]):
                for right in rec(points[idx + 1:]):
                    yield ((a, b),) + left + right

    return rec(tuple(range(m)))


def _disc_polygon(c: SquareComplex) -> tuple[list[Slot], dict]:
    """Boundary sides in cyclic order and corner positions by vertex class."""
    cycle = list(c.boundary_cycles[0])
    corner_pos = {}
    for gidx, slot in enumerate(cycle):
        start, _ = c.edge_endpoints(slot)
        corner_pos[start.key] = gidx
    return cycle, corner_pos


def matching_system(n: int, matching: tuple[tuple[int, int], ...]) -> CurveSystem:
    """Realize one non-crossing matching of the disc's boundary points."""
    c = disc_complex(n)
    cycle, corner_pos = _disc_polygon(c)
    sides = [DiscSide(key=slot, points=[g], corner=g)
             for g, slot in enumerate(cycle)]
    strands: dict[int, int] = {}
    for a, b in matching:
        strands[a] = b
        strands[b] = a
    arcs = []
    for i in range(n - 2):
        inner = corner_pos[c.corner_class[(i, 2)].key]
        outer = corner_pos[c.corner_class[(i, 3)].key]
        arcs.append((inner, outer, (i, 2), (i + 1, 1)))
    cells = split_disc(sides, strands, arcs, next_id=2 * n)

    chords: dict[int, list] = {}
    for cell in cells:
        sq = cell.sides[0].key[0]
        pos_of = {}
        for side in cell.sides:
            if side.key[0] != sq:
                raise AssertionError("census cell mixes squares")
            for i, pid in enumerate(side.points):
                pos_of[pid] = (side.key[1], i)
        done = set()
        for u, v in cell.strands.items():
            if u not in done:
                done.add(u)
                done.add(v)
                chords.setdefault(sq, []).append((pos_of[u], pos_of[v]))
    g = CurveSystem.build(c.square_count, chords)
    return normalize(c, g)


def enumerate_disc_sutures(n: int) -> list[CurveSystem]:
    """One normalized representative per nontrivial suture class on the disc."""
    if not 2 <= n <= 7:
        raise ValueError("census supports 2 <= n <= 7")
    out = []
    for matching in noncrossing_matchings(2 * n):
        out.append(matching_system(n, matching))
    return out


def enumerate_basic(c: SquareComplex) -> list[CurveSystem]:
    if c.internal_vertices():
        raise ValueError("basic census needs a bona fide complex")
    return [basic_system(c, bits) for bits in range(1 << c.square_count)]


# ---------------------------------------------------------------------------
# boundary-hugging fixtures: arcs around one sign of vertex per cycle plus
# closed curves parallel to a cycle


def _cycle_hops(c: SquareComplex, cycle: tuple[Slot, ...]):
    """Per boundary edge of the cycle, the glued sides crossed at its end."""
    hops = []
    for slot in cycle:
        sq, k = slot
        cur = (sq, (k + 1) % 4)
        crossing = []
        while c.is_glued(cur):
            mate = c.partner(cur)
            crossing.append((cur, mate))
            cur = (mate[0], (mate[1] + 1) % 4)
        hops.append(crossing)
    return hops


def boundary_hugging_system(c: SquareComplex, arc_sign: int = +1,
                            loops_per_cycle: Optional[dict[int, int]] = None
                            ) -> CurveSystem:
    """Arcs cutting off every arc_sign vertex, plus closed parallel curves.

    The arcs realize the extremal boundary-parallel sutures; each extra loop
    follows a whole boundary cycle just inside them. Crossing positions place
    shallower tracks nearer the boundary.
    """
    loops_per_cycle = loops_per_cycle or {}
    cycles = c.boundary_cycles
    # tracks: list of (depth, [crossing events], closed?, cycle idx, arc data)
    tracks = []
    for ci, cycle in enumerate(cycles):
        hops = _cycle_hops(c, cycle)
        for ei, slot in enumerate(cycle):
            end_class = c.edge_endpoints(slot)[1]
            if end_class.sign == arc_sign:
                nxt = cycle[(ei + 1) % len(cycle)]
                tracks.append((0, hops[ei], slot, nxt))
        lap = [ev for h in hops for ev in h]
        for depth in range(1, loops_per_cycle.get(ci, 0) + 1):
            tracks.append((depth, lap, None, None))

    front: dict[Slot, list] = {}
    back: dict[Slot, list] = {}
    for ti, (depth, events, *_rest) in enumerate(tracks):
        for ei, (out_side, in_side) in enumerate(events):
            front.setdefault(out_side, []).append((depth, ti, ei))
            back.setdefault(in_side, []).append((depth, ti, ei))

    pos: dict[tuple[int, int], tuple[int, int]] = {}
    counts: dict[Slot, int] = {}
    for slot in c.slots():
        f = sorted(front.get(slot, []))             # depth 0 nearest the start
        b = sorted(back.get(slot, []), reverse=True)
        for i, (_, ti, ei) in enumerate(f):
            pos[(ti, 2 * ei)] = (slot[1], i)        # crossing's out endpoint
        for i, (_, ti, ei) in enumerate(b):
            pos[(ti, 2 * ei + 1)] = (slot[1], len(f) + i)
        counts[slot] = len(f) + len(b)
    for slot in c.boundary_slots:
        counts[slot] = counts.get(slot, 0) + 1

    chords: dict[int, list] = {}

    def add(sq: int, a, b) -> None:
        chords.setdefault(sq, []).append((a, b))

    for ti, track in enumerate(tracks):
        depth, events, prev_edge, next_edge = track
        if prev_edge is not None:
            # arc: boundary point of prev_edge .. hops .. point of next_edge
            first_out = events[0][0]
            add(prev_edge[0], (prev_edge[1], counts[prev_edge] - 1),
                pos[(ti, 0)])
            for ei in range(len(events) - 1):
                add(events[ei][1][0], pos[(ti, 2 * ei + 1)],
                    pos[(ti, 2 * ei + 2)])
            add(next_edge[0], pos[(ti, 2 * len(events) - 1)],
                (next_edge[1], counts[next_edge] - 1))
        else:
            for ei in range(len(events)):
                nxt = (ei + 1) % len(events)
                add(events[ei][1][0], pos[(ti, 2 * ei + 1)],
                    pos[(ti, 2 * nxt)])
    g = CurveSystem.build(c.square_count, chords)
    report = validate_sutures(c, g)
    if not report.ok:
        raise AssertionError("hugging system invalid: " + "; ".join(report.problems))
    return g


# ---------------------------------------------------------------------------
# random generators


def random_surface(seed: int, max_squares: int) -> MorphismScript:
    """A seeded script of creations/gluings/folds/zips building a connected
    bona fide complex with at most max_squares squares."""
    rng = random.Random(f"{seed}:{max_squares}")
    return _random_script(rng, SquareComplex.build(0), max_squares,
                          connect=True)


def random_extension(seed: int, source: SquareComplex,
                     max_squares: int) -> MorphismScript:
    """A seeded script of further moves applied to an existing complex."""
    rng = random.Random(f"{seed}:{max_squares}:{source.square_count}")
    return _random_script(rng, source, max_squares, connect=False)


def _random_script(rng: random.Random, source: SquareComplex,
                   max_squares: int, connect: bool) -> MorphismScript:
    moves: list[Move] = []
    cur = source

    def apply(move: Move) -> bool:
        nonlocal cur
        try:
            if isinstance(move, CreateSquare):
                nxt = add_square(cur)
            else:
                glued, kind = glue(cur, move.a, move.b)
                want = {Glue: "standard", Fold: "fold", Zip: "zip"}[type(move)]
                if kind.kind != want:
                    return False
                nxt, _ = tighten(glued)
        except (ValueError, NotImplementedError):
            return False
        if nxt.square_count == 0:
            return False
        cur = nxt
        moves.append(move)
        return True

    if cur.square_count == 0:
        apply(CreateSquare(rng.choice((1, -1))))
    steps = rng.randint(max_squares, 2 * max_squares + 2)
    for _ in range(steps):
        choices = ["attach", "glue", "glue", "fold"]
        if any(len(cyc) == 2 for cyc in cur.boundary_cycles):
            choices.append("zip")
        kind = rng.choice(choices)
        if kind == "attach" and cur.square_count < max_squares:
            target = rng.choice(cur.boundary_slots)
            side = rng.choice((0, 2)) if target[1] % 2 else rng.choice((1, 3))
            k = cur.square_count
            if apply(CreateSquare(rng.choice((1, -1)))):
                if not apply(Glue((k, side), target)):
                    moves.pop()          # lone square is still fine to keep
        elif kind == "glue":
            slots = list(cur.boundary_slots)
            rng.shuffle(slots)
            done = False
            for a in slots:
                for b in slots:
                    if b[1] % 2 != (a[1] + 1) % 2:
                        continue
                    if a != b and apply(Glue(a, b)):
                        done = True
                        break
                if done:
                    break
        elif kind == "fold":
            cycles = [cyc for cyc in cur.boundary_cycles if len(cyc) > 2]
            if cycles and cur.square_count > 1:
                cyc = rng.choice(cycles)
                i = rng.randrange(len(cyc))
                apply(Fold(cyc[i], cyc[(i + 1) % len(cyc)]))
        elif kind == "zip":
            cycles = [cyc for cyc in cur.boundary_cycles if len(cyc) == 2]
            if cycles:
                cyc = rng.choice(cycles)
                apply(Zip(cyc[0], cyc[1]))

    guard = 0
    while connect and invariants(cur).components > 1 and guard < 50:
        guard += 1
        comp = cur.component_of
        slots = list(cur.boundary_slots)
        rng.shuffle(slots)
        done = False
        for a in slots:
            for b in slots:
                if comp[a[0]] != comp[b[0]] and (a[1] + b[1]) % 2 == 1:
                    if apply(Glue(a, b)):
                        done = True
                        break
            if done:
                break
        if not done:
            break
    return MorphismScript.build(source, moves)


def random_sutures(seed: int, c: SquareComplex, rounds: int = 3) -> CurveSystem:
    """Seeded nontrivial sutures: a random basic system churned by finger
    moves and bypass surgeries."""
    rng = random.Random(f"{seed}:{c.square_count}:{len(c.gluings)}")
    g = basic_system(c, rng.getrandbits(c.square_count) if c.square_count else 0)
    edges = c.sorted_gluings()
    if not edges:
        return g
    for _ in range(rounds):
        for _attempt in range(25):
            cand = _random_step(rng, c, g)
            if cand is not None and not is_trivial(c, cand):
                g = cand
                break
    return g


def _random_step(rng: random.Random, c: SquareComplex,
                 g: CurveSystem) -> Optional[CurveSystem]:
    """One swap-style move: bracket an existing crossing of a random edge by
    pushing a chord across from each side, then resolve the middle triple."""
    edges = c.sorted_gluings()
    for _ in range(14):
        edge = rng.choice(edges)
        slot_a, slot_b = edge
        m = g.side_count(slot_a)
        j = rng.randrange(m)
        first = None
        for ep in _poke_candidates(rng, g, slot_a):
            try:
                first = finger_push(c, g, slot_a, j + 1, ep)
                break
            except ValueError:
                continue
        if first is None:
            continue
        second = None
        for ep in _poke_candidates(rng, first, slot_b):
            try:
                second = finger_push(c, first, slot_b, (m + 2) - j, ep)
                break
            except ValueError:
                continue
        if second is None:
            continue
        up = bypass_surgery(c, second, edge, j + 1, "up")
        down = bypass_surgery(c, second, edge, j + 1, "down")
        # mostly keep the entangled outcome, occasionally the plain swap
        ranked = sorted((up, down), key=_crossing_total, reverse=True)
        out = ranked[0] if rng.random() < 0.8 else ranked[1]
        if validate_sutures(c, out).ok:
            return out
    return None


def _crossing_total(g: CurveSystem) -> int:
    return sum(len(ch) for ch in g.chords)


def _poke_candidates(rng: random.Random, g: CurveSystem, slot: Slot):
    eps = [ep for ch in g.chords[slot[0]] for ep in ch]
    rng.shuffle(eps)
    return eps
