"""Complement regions of a curve system: signs, Euler characteristics,
triviality and confinement.

Each square's chord diagram cuts it into faces (traced via a half-edge walk);
faces merge into regions across gluings. Signs come from the checkerboard
coloring anchored at corner 0 (negative). Region Euler characteristics are
computed from the honest cell structure of the region's completion: sutures
are counted once per adjacent region side, and a crossing point contributes
one 0-cell per sector, so pinched completions come out right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import SquareComplex
from .sutures import EP, CurveSystem, require_valid_pair


@dataclass(frozen=True)
class Region:
    sign: int
    chi: int
    touches_boundary: bool


@dataclass(frozen=True)
class RegionDecomposition:
    regions: tuple[Region, ...]

    @property
    def chi_plus(self) -> int:
        return sum(r.chi for r in self.regions if r.sign > 0)

    @property
    def chi_minus(self) -> int:
        return sum(r.chi for r in self.regions if r.sign < 0)


class _SquareFaces:
    """Half-edge face trace of one square's chord diagram."""

    def __init__(self, chords: tuple[tuple[EP, EP], ...]):
        self.points: list[EP] = sorted(ep for ch in chords for ep in ch)
        index = {ep: i for i, ep in enumerate(self.points)}
        m = len(self.points)
        self.pair = {}
        for a, b in chords:
            self.pair[index[a]] = index[b]
            self.pair[index[b]] = index[a]
        # gap g runs from points[g] to points[(g+1) % m]
        self.face_of_gap: dict[int, int] = {}
        self.face_of_half: dict[tuple[int, int], int] = {}
        face = 0
        for g0 in range(m):
            if g0 in self.face_of_gap:
                continue
            g = g0
            while g not in self.face_of_gap:
                self.face_of_gap[g] = face
                u = (g + 1) % m
                v = self.pair[u]
                self.face_of_half[(u, v)] = face
                g = v
            face += 1
        self.face_count = face

        self.idx = index
        self.first_of_side = {}
        self.last_of_side = {}
        for i, (side, _) in enumerate(self.points):
            self.last_of_side[side] = i
            if side not in self.first_of_side:
                self.first_of_side[side] = i

    def corner_gap(self, k: int) -> int:
        # corner k lies between the last point of side k-1 and the first of k
        return self.last_of_side[(k - 1) % 4]

    def gap_sign(self, g: int) -> int:
        g0 = self.corner_gap(0)
        m = len(self.points)
        return -1 if (g - g0) % m % 2 == 0 else +1

    def gaps_at(self, i: int) -> tuple[int, int]:
        """The two gaps adjacent to point i (ending at it, starting at it)."""
        m = len(self.points)
        return ((i - 1) % m, i)

    def segment_gap(self, side: int, j: int, m_side: int) -> int:
        """Gap covering segment j of `side` (j in 0..m_side)."""
        if j < m_side:
            return (self.idx[(side, j)] - 1) % len(self.points)
        return self.idx[(side, m_side - 1)]

    def gap_touches_boundary(self, g: int, c: SquareComplex, sq: int) -> bool:
        u = self.points[g]
        v = self.points[(g + 1) % len(self.points)]
        return (not c.is_glued((sq, u[0]))) or (not c.is_glued((sq, v[0])))


class _Analysis:
    def __init__(self, c: SquareComplex, g: CurveSystem):
        require_valid_pair(c, g)
        self.c, self.g = c, g
        self.sqf = [_SquareFaces(g.chords[s]) for s in range(c.square_count)]

        # union-find over (square, face)
        nodes = [(s, f) for s in range(c.square_count)
                 for f in range(self.sqf[s].face_count)]
        self.parent = {n: n for n in nodes}

        for edge in c.sorted_gluings():
            (sa, ka), (sb, kb) = edge
            m = g.side_count((sa, ka))
            for j in range(m + 1):
                fa = self.sqf[sa].segment_gap(ka, j, m)
                fb = self.sqf[sb].segment_gap(kb, m - j, m)
                na = (sa, self.sqf[sa].face_of_gap[fa])
                nb = (sb, self.sqf[sb].face_of_gap[fb])
                if self.sqf[sa].gap_sign(fa) != self.sqf[sb].gap_sign(fb):
                    raise AssertionError("sign coloring mismatch across gluing")
                self._union(na, nb)

        self.region_of: dict[tuple[int, int], int] = {}
        for n in nodes:
            r = self._find(n)
            if r not in self.region_of:
                self.region_of[r] = len(self.region_of)
        self.region_count = len(self.region_of)
        self._build()

    def _find(self, n):
        p = self.parent
        while p[n] != n:
            p[n] = p[p[n]]
            n = p[n]
        return n

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def region(self, sq: int, face: int) -> int:
        return self.region_of[self._find((sq, face))]

    def region_of_gap(self, sq: int, gap: int) -> int:
        return self.region(sq, self.sqf[sq].face_of_gap[gap])

    def _build(self) -> None:
        c, g = self.c, self.g
        nr = self.region_count
        V = [0] * nr
        E = [0] * nr
        F = [0] * nr
        sign = [0] * nr
        touches = [False] * nr

        for s in range(c.square_count):
            sf = self.sqf[s]
            for f in range(sf.face_count):
                F[self.region(s, f)] += 1
            for gp in range(len(sf.points)):
                r = self.region_of_gap(s, gp)
                gs = sf.gap_sign(gp)
                if sign[r] and sign[r] != gs:
                    raise AssertionError("region with mixed signs")
                sign[r] = gs
                if sf.gap_touches_boundary(gp, c, s):
                    touches[r] = True
            for k in range(4):
                corner_sign = +1 if k % 2 else -1
                if sf.gap_sign(sf.corner_gap(k)) != corner_sign:
                    raise AssertionError("corner color mismatch")

        # 0-cells at quadrangulation vertices
        for vc in c.vertex_classes:
            regs = {
                self.region_of_gap(sq, self.sqf[sq].corner_gap(k))
                for sq, k in vc.corners
            }
            if len(regs) != 1:
                raise AssertionError("vertex wedges land in several regions")
            V[regs.pop()] += 1

        # 0-cells at suture crossings: the two same-sign sectors at an interior
        # crossing meet along a glued segment, so each sign contributes one
        for edge in c.sorted_gluings():
            (sa, ka), (sb, kb) = edge
            m = g.side_count((sa, ka))
            for j in range(m):
                per_sign: dict[int, set[int]] = {}
                for sq, side, pos in ((sa, ka, j), (sb, kb, m - 1 - j)):
                    sf = self.sqf[sq]
                    for gp in sf.gaps_at(sf.idx[(side, pos)]):
                        per_sign.setdefault(sf.gap_sign(gp), set()).add(
                            self.region_of_gap(sq, gp))
                for regs in per_sign.values():
                    if len(regs) != 1:
                        raise AssertionError("crossing sectors disagree")
                    V[regs.pop()] += 1
        for slot in c.boundary_slots:
            sq, side = slot
            sf = self.sqf[sq]
            for gp in sf.gaps_at(sf.idx[(side, 0)]):
                V[self.region_of_gap(sq, gp)] += 1

        # 1-cells: edge segments (one per class) and chord sides
        for edge in c.sorted_gluings():
            (sa, ka), _ = edge
            m = g.side_count((sa, ka))
            for j in range(m + 1):
                gp = self.sqf[sa].segment_gap(ka, j, m)
                E[self.region_of_gap(sa, gp)] += 1
        for slot in c.boundary_slots:
            sq, side = slot
            for j in range(2):
                gp = self.sqf[sq].segment_gap(side, j, 1)
                E[self.region_of_gap(sq, gp)] += 1
        for s in range(c.square_count):
            for half, f in self.sqf[s].face_of_half.items():
                E[self.region(s, f)] += 1

        chis = [V[r] - E[r] + F[r] for r in range(nr)]

        # loose loops: concentric inside the corner-0 face of their square
        extra: list[Region] = []
        for s in range(c.square_count):
            count = g.loops[s]
            if not count:
                continue
            host_gap = self.sqf[s].corner_gap(0)
            host = self.region_of_gap(s, host_gap)
            chis[host] -= 1
            cur = -sign[host]
            for depth in range(count - 1):
                extra.append(Region(cur, 0, False))
                cur = -cur
            extra.append(Region(cur, 1, False))

        base = [Region(sign[r], chis[r], touches[r]) for r in range(nr)]
        self.decomposition = RegionDecomposition(tuple(base + extra))

    # -- strand components -------------------------------------------------

    def closed_components(self) -> list[set[tuple[int, EP]]]:
        """Closed suture components as sets of endpoint keys (square, ep)."""
        c, g = self.c, self.g
        mate: dict[tuple[int, EP], tuple[int, EP]] = {}
        for s in range(c.square_count):
            for a, b in g.chords[s]:
                mate[(s, a)] = (s, b)
                mate[(s, b)] = (s, a)
        across: dict[tuple[int, EP], tuple[int, EP]] = {}
        for (sa, ka), (sb, kb) in c.gluings:
            m = g.side_count((sa, ka))
            for j in range(m):
                across[(sa, (ka, j))] = (sb, (kb, m - 1 - j))
                across[(sb, (kb, m - 1 - j))] = (sa, (ka, j))
        seen: set[tuple[int, EP]] = set()
        out = []
        for start in mate:
            if start in seen:
                continue
            comp = {start}
            frontier = [start]
            while frontier:
                p = frontier.pop()
                for q in (mate.get(p), across.get(p)):
                    if q is not None and q not in comp:
                        comp.add(q)
                        frontier.append(q)
            seen |= comp
            if all(p in across for p in comp):
                out.append(comp)
        return out

    def chord_regions(self, sq: int, a: EP, b: EP) -> tuple[int, int]:
        sf = self.sqf[sq]
        i, j = sf.idx[a], sf.idx[b]
        return (self.region(sq, sf.face_of_half[(i, j)]),
                self.region(sq, sf.face_of_half[(j, i)]))


def regions(c: SquareComplex, g: CurveSystem) -> RegionDecomposition:
    return _Analysis(c, g).decomposition


def euler_class(c: SquareComplex, g: CurveSystem) -> int:
    dec = regions(c, g)
    return dec.chi_plus - dec.chi_minus


def is_trivial(c: SquareComplex, g: CurveSystem) -> bool:
    if g.total_loops() > 0:
        return True
    an = _Analysis(c, g)
    dec = an.decomposition
    for comp in an.closed_components():
        for s in range(c.square_count):
            for a, b in g.chords[s]:
                if (s, a) not in comp:
                    continue
                for r in an.chord_regions(s, a, b):
                    reg = dec.regions[r]
                    if reg.chi == 1 and not reg.touches_boundary:
                        return True
    return False


def is_confining(c: SquareComplex, g: CurveSystem) -> bool:
    dec = regions(c, g)
    return any(not r.touches_boundary for r in dec.regions)


# ---------------------------------------------------------------------------
# independent flood-fill oracle for confinement (different face algorithm:
# stack coloring of the cyclic bracket sequence instead of a half-edge trace)


def confining_oracle(c: SquareComplex, g: CurveSystem) -> bool:
    require_valid_pair(c, g)
    if g.total_loops() > 0:
        return True

    gap_face: dict[tuple[int, int], int] = {}
    face_count: dict[int, int] = {}
    for s in range(c.square_count):
        points = sorted(ep for ch in g.chords[s] for ep in ch)
        index = {ep: i for i, ep in enumerate(points)}
        pair: dict[int, int] = {}
        for a, b in g.chords[s]:
            pair[index[a]] = index[b]
            pair[index[b]] = index[a]
        # faces by bracket nesting: walk points once, stack of face ids
        fresh = [0]
        stack = [0]
        opened: dict[int, int] = {}
        for i in range(len(points)):
            if pair[i] > i:
                fresh[0] += 1
                opened[i] = fresh[0]
                stack.append(fresh[0])
            else:
                stack.pop()
        # second pass records the face right after each point
        stack = [0]
        gap_face[(s, len(points) - 1)] = 0    # gap before point 0
        for i in range(len(points)):
            if pair[i] > i:
                stack.append(opened[i])
            else:
                stack.pop()
            gap_face[(s, i)] = stack[-1]      # gap from point i to i+1
        face_count[s] = fresh[0] + 1

    # nodes and adjacency across glued segments
    def node(s: int, f: int) -> tuple[int, int]:
        return (s, f)

    side_offsets: dict[tuple[int, int], tuple[int, int, int]] = {}
    for s in range(c.square_count):
        eps = sorted(ep for ch in g.chords[s] for ep in ch)
        total = len(eps)
        for k in range(4):
            pos = [i for i, ep in enumerate(eps) if ep[0] == k]
            side_offsets[(s, k)] = (pos[0], len(pos), total)

    def seg_gap(s: int, k: int, j: int) -> int:
        off, m, total = side_offsets[(s, k)]
        if j < m:
            return (off + j - 1) % total
        return off + m - 1

    adj: dict[tuple[int, int], set[tuple[int, int]]] = {}
    boundary_nodes: set[tuple[int, int]] = set()
    for edge in c.sorted_gluings():
        (sa, ka), (sb, kb) = edge
        m = g.side_count((sa, ka))
        for j in range(m + 1):
            na = node(sa, gap_face[(sa, seg_gap(sa, ka, j))])
            nb = node(sb, gap_face[(sb, seg_gap(sb, kb, m - j))])
            adj.setdefault(na, set()).add(nb)
            adj.setdefault(nb, set()).add(na)
    for slot in c.boundary_slots:
        sq, k = slot
        for j in range(2):
            boundary_nodes.add(node(sq, gap_face[(sq, seg_gap(sq, k, j))]))

    all_nodes = {node(s, f) for s in range(c.square_count)
                 for f in range(face_count[s])}
    reached = set(boundary_nodes)
    frontier = list(boundary_nodes)
    while frontier:
        n = frontier.pop()
        for nb in adj.get(n, ()):
            if nb not in reached:
                reached.add(nb)
                frontier.append(nb)
    return reached != all_nodes
