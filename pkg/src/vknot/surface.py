"""Carter surface of a Gauss diagram as an oriented ribbon graph.

Vertices are the real crossings, edges are the arcs of the diagram
between consecutive passages (for a long diagram the arc from the last
passage back to the first runs through the basepoint).  Each passage at
position ``k`` owns two half-edges: ``in(k) = 2k`` and ``out(k) = 2k + 1``.
The rotation at a crossing lists its four half-edges counterclockwise
in the surface orientation; capping the boundary walks with disks gives
a closed oriented surface realizing the diagram.

Intersection numbers are computed by corner separation.  The first cycle
runs along the centreline of the ribbon, the second is pushed off to its
own right; inside each vertex disk both are chords, and a chord of the
second cycle contributes +1 when it crosses the first from right to
left.  Around a vertex there are four gaps, gap ``r`` sitting between the
half-edges in slots ``r`` and ``r + 1``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .gauss import ClosedDiagram, LongDiagram, OVER, _Diagram

# Counterclockwise slot order of the half-edges at a positive crossing.
# Calibrated once against the Gamma(n) intersection table, then frozen.
_POSITIVE_ROTATION = ("out_o", "in_u", "in_o", "out_u")
_NEGATIVE_ROTATION = ("out_o", "out_u", "in_o", "in_u")


def h_in(k: int) -> int:
    return 2 * k


def h_out(k: int) -> int:
    return 2 * k + 1


@dataclass(frozen=True, eq=False)
class RibbonGraph:
    diagram: _Diagram
    closed: bool
    vertex_labels: tuple[int, ...]
    vertex_of: np.ndarray          # half-edge -> vertex index
    slot_of: np.ndarray            # half-edge -> slot 0..3 in its rotation
    rotation: tuple[tuple[int, int, int, int], ...]
    edges: tuple[tuple[int, int], ...]   # edge k: (out(k), in(k+1))
    basepoint_edge: int | None
    faces: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_positions(self) -> int:
        return len(self.diagram.endpoints)

    def vertex(self, label: int) -> int:
        return self._vindex[label]

    def edge_of_half(self, h: int) -> tuple[int, int]:
        """(edge index, +1 if h is the tail end, -1 if the head end)."""
        m = self.n_positions
        if h % 2 == 1:
            return h // 2, 1
        return (h // 2 - 1) % m, -1

    def other_end(self, h: int) -> int:
        m = self.n_positions
        if h % 2 == 1:
            return h_in((h // 2 + 1) % m)
        return h_out((h // 2 - 1) % m)

    def next_ccw(self, h: int) -> int:
        rot = self.rotation[self.vertex_of[h]]
        return rot[(self.slot_of[h] + 1) % 4]

    def euler_characteristic(self) -> int:
        if self.n_vertices == 0:
            return 2
        return self.n_vertices - self.n_edges + len(self.faces)


def build_carter(D: _Diagram) -> RibbonGraph:
    labels = tuple(D.labels)
    vindex = {lab: i for i, lab in enumerate(labels)}
    m = len(D.endpoints)
    vertex_of = np.zeros(2 * m, dtype=np.int64)
    slot_of = np.zeros(2 * m, dtype=np.int64)
    rotation = []
    for lab in labels:
        o, u = D.positions(lab)
        named = {"in_o": h_in(o), "out_o": h_out(o), "in_u": h_in(u), "out_u": h_out(u)}
        order = _POSITIVE_ROTATION if D.signs[lab] > 0 else _NEGATIVE_ROTATION
        rot = tuple(named[name] for name in order)
        for slot, h in enumerate(rot):
            vertex_of[h] = vindex[lab]
            slot_of[h] = slot
        rotation.append(rot)
    edges = tuple((h_out(k), h_in((k + 1) % m)) for k in range(m))
    closed = isinstance(D, ClosedDiagram)
    R = RibbonGraph(
        diagram=D,
        closed=closed,
        vertex_labels=labels,
        vertex_of=vertex_of,
        slot_of=slot_of,
        rotation=tuple(rotation),
        edges=edges,
        basepoint_edge=None if closed or m == 0 else m - 1,
    )
    object.__setattr__(R, "_vindex", vindex)
    object.__setattr__(R, "faces", _trace_faces(R))
    return R


def _trace_faces(R: RibbonGraph) -> tuple[tuple[int, ...], ...]:
    # faces are the orbits of h -> next_ccw(other_end(h))
    seen = set()
    faces = []
    for start in range(2 * R.n_positions):
        if start in seen:
            continue
        face, h = [], start
        while h not in seen:
            seen.add(h)
            face.append(h)
            h = R.next_ccw(R.other_end(h))
        faces.append(tuple(face))
    return tuple(faces)


def genus(R: RibbonGraph) -> int:
    chi = R.euler_characteristic()
    g2 = 2 - chi
    assert g2 >= 0 and g2 % 2 == 0, f"bad Euler characteristic {chi}"
    return g2 // 2


# cycles -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CycleWalk:
    """A closed walk on a ribbon graph.

    ``corners`` lists each vertex passage as (vertex, incoming half-edge,
    outgoing half-edge); ``steps`` lists the traversed edges in order.
    A walk with no steps is the null cycle.
    """

    graph: RibbonGraph
    corners: tuple[tuple[int, int, int], ...]
    steps: tuple[int, ...]
    name: str = ""

    def edge_vector(self) -> np.ndarray:
        vec = np.zeros(self.graph.n_edges, dtype=np.int64)
        for e in self.steps:
            vec[e] += 1
        return vec

    def __add__(self, other: CycleWalk) -> "CycleSum":
        return CycleSum((self, other))


@dataclass(frozen=True)
class CycleSum:
    """Formal sum of walks; pairing extends bilinearly."""

    walks: tuple[CycleWalk, ...]

    def __add__(self, other):
        if isinstance(other, CycleSum):
            return CycleSum(self.walks + other.walks)
        return CycleSum(self.walks + (other,))


def _walk_along(R: RibbonGraph, start: int, stop: int, name: str) -> CycleWalk:
    """Walk leaving passage ``start`` and following the diagram forward
    (cyclically) to passage ``stop``, closed by turning from in(stop) to
    out(start) at their common crossing."""
    m = R.n_positions
    corners, steps = [], []
    k = start
    while True:
        steps.append(k)
        k = (k + 1) % m
        if k == stop:
            break
        corners.append((int(R.vertex_of[h_in(k)]), h_in(k), h_out(k)))
    corners.append((int(R.vertex_of[h_in(stop)]), h_in(stop), h_out(start)))
    return CycleWalk(R, tuple(corners), tuple(steps), name)


def diagram_cycle(R: RibbonGraph) -> CycleWalk:
    """gamma_D: the whole diagram as a cycle."""
    m = R.n_positions
    corners = tuple((int(R.vertex_of[h_in(k)]), h_in(k), h_out(k)) for k in range(m))
    return CycleWalk(R, corners, tuple(range(m)), "gamma_D")


def smoothing_cycles(D: LongDiagram, label: int, R: RibbonGraph | None = None):
    """(alpha_i, beta_i) of a long diagram at chord ``label``.

    alpha_i runs over the arcs strictly between the two passages of the
    chord and avoids the basepoint; beta_i runs over the complementary
    arcs, through the basepoint.
    """
    if not isinstance(D, LongDiagram):
        raise TypeError("smoothing cycles need a long diagram")
    R = R or build_carter(D)
    o, u = D.positions(label)
    p, q = min(o, u), max(o, u)
    alpha = _walk_along(R, p, q, f"alpha_{label}")
    beta = _walk_along(R, q, p, f"beta_{label}")
    return alpha, beta


def _side(slot_in: int, slot_out: int, gap: int) -> int:
    """+1 if ``gap`` is on the right of the chord in->out, else -1."""
    return 1 if (gap - slot_in) % 4 < (slot_out - slot_in) % 4 else -1


def _start_gap(R: RibbonGraph, h: int) -> int:
    return int(R.slot_of[h])


def _end_gap(R: RibbonGraph, h: int) -> int:
    return int(R.slot_of[h] - 1) % 4


def pair(c, c2) -> int:
    """Intersection number c . c2 on the Carter surface."""
    if isinstance(c, CycleSum):
        return sum(pair(w, c2) for w in c.walks)
    if isinstance(c2, CycleSum):
        return sum(pair(c, w) for w in c2.walks)
    if c.graph is not c2.graph:
        raise ValueError("walks live on different ribbon graphs")
    R = c.graph
    by_vertex: dict[int, list[tuple[int, int]]] = {}
    for v, hi, ho in c.corners:
        by_vertex.setdefault(v, []).append((int(R.slot_of[hi]), int(R.slot_of[ho])))
    twice = 0
    for v, fi, go in c2.corners:
        chords = by_vertex.get(v)
        if not chords:
            continue
        s, e = _start_gap(R, fi), _end_gap(R, go)
        for si, so in chords:
            twice += _side(si, so, s) - _side(si, so, e)
    assert twice % 2 == 0
    return twice // 2


# fast tables --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PairingTables:
    """alpha.alpha, alpha.beta, beta.beta and alpha.gamma_D, indexed by the
    diagram's chord labels in first-appearance order."""

    labels: tuple[int, ...]
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    v: np.ndarray

    def entry(self, table: str, i: int, j: int) -> int:
        M = getattr(self, table)
        return int(M[self.labels.index(i), self.labels.index(j)])

    def check_identities(self) -> bool:
        A, B, C, v = self.A, self.B, self.C, self.v
        return (
            np.array_equal(A, -A.T)
            and np.array_equal(C, -C.T)
            and np.array_equal(B, v[:, None] - A)
            and np.array_equal(C, -v[:, None] + v[None, :] + A)
        )

    def to_tsv(self) -> str:
        out = []
        for name in ("A", "B", "C"):
            M = getattr(self, name)
            out.append(name + "\t" + "\t".join(str(x) for x in self.labels))
            for lab, row in zip(self.labels, M):
                out.append(str(lab) + "\t" + "\t".join(str(int(x)) for x in row))
            out.append("")
        out.append("v\t" + "\t".join(str(x) for x in self.labels))
        out.append("\t" + "\t".join(str(int(x)) for x in self.v))
        return "\n".join(out) + "\n"


def _gap_sides(slot_in: np.ndarray, slot_out: np.ndarray) -> np.ndarray:
    r = np.arange(4)
    d = (slot_out - slot_in) % 4
    inside = ((r[None, :] - slot_in[:, None]) % 4) < d[:, None]
    return np.where(inside, 1, -1)


def _corner_rows(R: RibbonGraph, h_ins: np.ndarray, h_outs: np.ndarray):
    """Per-corner S (side) and T (start/end gap) rows over all 4V gaps."""
    V = R.n_vertices
    n = len(h_ins)
    v = R.vertex_of[h_ins]
    si, so = R.slot_of[h_ins], R.slot_of[h_outs]
    S = np.zeros((n, 4 * V), dtype=np.int64)
    T = np.zeros((n, 4 * V), dtype=np.int64)
    rows = np.arange(n)
    cols = 4 * v[:, None] + np.arange(4)[None, :]
    S[rows[:, None], cols] = _gap_sides(si, so)
    np.add.at(T, (rows, 4 * v + si), 1)
    np.add.at(T, (rows, 4 * v + (so - 1) % 4), -1)
    return S, T


def _pair_matrix(S1: np.ndarray, T2: np.ndarray) -> np.ndarray:
    twice = S1 @ T2.T
    assert not np.any(twice % 2)
    return twice // 2


def pairing_tables(D: LongDiagram, R: RibbonGraph | None = None) -> PairingTables:
    R = R or build_carter(D)
    labels = tuple(D.labels)
    n, m = len(labels), len(D.endpoints)
    if n == 0:
        z = np.zeros((0, 0), dtype=np.int64)
        return PairingTables(labels, z, z.copy(), z.copy(), np.zeros(0, dtype=np.int64))
    ks = np.arange(m)
    Sp, Tp = _corner_rows(R, 2 * ks, 2 * ks + 1)
    zero = np.zeros((1, Sp.shape[1]), dtype=np.int64)
    Sc = np.vstack([zero, np.cumsum(Sp, axis=0)])
    Tc = np.vstack([zero, np.cumsum(Tp, axis=0)])
    first = np.array([D.chord(lab).first for lab in labels])
    second = np.array([D.chord(lab).second for lab in labels])
    # turning corners: alpha turns in(q)->out(p), beta turns in(p)->out(q)
    Sa_turn, Ta_turn = _corner_rows(R, 2 * second, 2 * first + 1)
    Sb_turn, Tb_turn = _corner_rows(R, 2 * first, 2 * second + 1)
    Sa = Sc[second] - Sc[first + 1] + Sa_turn
    Ta = Tc[second] - Tc[first + 1] + Ta_turn
    Sb = Sc[m] - Sc[second + 1] + Sc[first] + Sb_turn
    Tb = Tc[m] - Tc[second + 1] + Tc[first] + Tb_turn
    Tg = Tc[m][None, :]
    A = _pair_matrix(Sa, Ta)
    B = _pair_matrix(Sa, Tb)
    C = _pair_matrix(Sb, Tb)
    v = _pair_matrix(Sa, Tg)[:, 0]
    return PairingTables(labels, A, B, C, v)


def walks_pair_matrix(walks1, walks2) -> np.ndarray:
    """Matrix of pair(w1, w2) for explicit walks on one graph."""
    if not walks1 or not walks2:
        return np.zeros((len(walks1), len(walks2)), dtype=np.int64)
    R = walks1[0].graph

    def stack(walks):
        Ss, Ts = [], []
        for w in walks:
            if w.graph is not R:
                raise ValueError("walks live on different ribbon graphs")
            hi = np.array([c[1] for c in w.corners], dtype=np.int64)
            ho = np.array([c[2] for c in w.corners], dtype=np.int64)
            S, T = _corner_rows(R, hi, ho)
            Ss.append(S.sum(axis=0))
            Ts.append(T.sum(axis=0))
        return np.array(Ss), np.array(Ts)

    S1, _ = stack(walks1)
    _, T2 = stack(walks2)
    return _pair_matrix(S1, T2)


# closed diagrams ------------------------------------------------------------

def closed_cycles(Delta: ClosedDiagram, label: int, R: RibbonGraph | None = None):
    """(gamma_i, gammabar_i): over-to-under and under-to-over walks at chord i."""
    if not isinstance(Delta, ClosedDiagram):
        raise TypeError("closed cycles need a closed diagram")
    R = R or build_carter(Delta)
    o, u = Delta.positions(label)
    m = R.n_positions
    gamma = _closed_walk(R, o, u, m, f"gamma_{label}")
    gammabar = _closed_walk(R, u, o, m, f"gammabar_{label}")
    return gamma, gammabar


def _closed_walk(R: RibbonGraph, frm: int, to: int, m: int, name: str) -> CycleWalk:
    length = (to - frm) % m
    steps = tuple((frm + s) % m for s in range(length))
    inner = [(frm + s) % m for s in range(1, length)]
    corners = [(int(R.vertex_of[h_in(k)]), h_in(k), h_out(k)) for k in inner]
    corners.append((int(R.vertex_of[h_in(to)]), h_in(to), h_out(frm)))
    return CycleWalk(R, tuple(corners), steps, name)


# independent cross-check: spanning-tree homology basis ----------------------

def _flow(R: RibbonGraph, vec: np.ndarray, h: int) -> int:
    e, end = R.edge_of_half(h)
    return int(vec[e]) * end


def _sweep_pair(R: RibbonGraph, a_vec: np.ndarray, b: CycleWalk) -> int:
    """a . b from a's edge vector and b's corners.

    b is pushed to its right; near each of its vertex passages the
    pushed curve sweeps counterclockwise across the half-edges strictly
    between its incoming and outgoing half-edge, meeting a wherever a
    uses one of them.
    """
    total = 0
    for v, hi, ho in b.corners:
        rot = R.rotation[v]
        s = int(R.slot_of[hi])
        t = int(R.slot_of[ho])
        r = (s + 1) % 4
        while r != t:
            total += _flow(R, a_vec, rot[r])
            r = (r + 1) % 4
    return total


@dataclass(frozen=True, eq=False)
class HomologyBasis:
    graph: RibbonGraph
    tree_edges: frozenset
    cotree_edges: tuple[int, ...]
    cycles: tuple[CycleWalk, ...]
    form: np.ndarray

    def coordinates(self, vec: np.ndarray) -> np.ndarray:
        return np.array([vec[e] for e in self.cotree_edges], dtype=np.int64)

    def pair_vectors(self, v1: np.ndarray, v2: np.ndarray) -> int:
        x, y = self.coordinates(v1), self.coordinates(v2)
        return int(x @ self.form @ y)


def homology_basis(R: RibbonGraph) -> HomologyBasis:
    """Fundamental cycles of a BFS spanning tree and their intersection form."""
    V, E = R.n_vertices, R.n_edges
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(V)}
    for e, (ht, hh) in enumerate(R.edges):
        a, b = int(R.vertex_of[ht]), int(R.vertex_of[hh])
        adj[a].append((e, b))
        adj[b].append((e, a))
    parent_edge: dict[int, int | None] = {}
    tree = set()
    if V:
        parent_edge[0] = None
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for e, y in adj[x]:
                if y not in parent_edge:
                    parent_edge[y] = e
                    tree.add(e)
                    queue.append(y)
    cotree = tuple(e for e in range(E) if e not in tree)

    def path_to_root(x):
        # list of (edge, half-edge at x-side, half-edge at parent side)
        out = []
        while parent_edge[x] is not None:
            e = parent_edge[x]
            ht, hh = R.edges[e]
            if int(R.vertex_of[ht]) == x:
                out.append((e, ht, hh))
                x = int(R.vertex_of[hh])
            else:
                out.append((e, hh, ht))
                x = int(R.vertex_of[ht])
        return out

    cycles = []
    for e in cotree:
        ht, hh = R.edges[e]
        # directed half-edge hops: (edge, leave-half, arrive-half, forward?)
        hops = [(e, ht, hh, True)]
        up_from_head = path_to_root(int(R.vertex_of[hh]))
        up_from_tail = path_to_root(int(R.vertex_of[ht]))
        # strip common suffix (shared path to the root)
        while up_from_head and up_from_tail and up_from_head[-1][0] == up_from_tail[-1][0]:
            up_from_head.pop()
            up_from_tail.pop()
        for te, h_from, h_to in up_from_head:
            hops.append((te, h_from, h_to, R.edges[te][0] == h_from))
        for te, h_from, h_to in reversed(up_from_tail):
            hops.append((te, h_to, h_from, R.edges[te][0] == h_to))
        corners = []
        for idx, (_, _, arrive, _) in enumerate(hops):
            leave = hops[(idx + 1) % len(hops)][1]
            corners.append((int(R.vertex_of[arrive]), arrive, leave))
        w = CycleWalk(R, tuple(corners), (), f"z_{e}")
        vec = np.zeros(E, dtype=np.int64)
        for te, _, _, fwd in hops:
            vec[te] += 1 if fwd else -1
        object.__setattr__(w, "_vec", vec)
        cycles.append(w)
    form = np.zeros((len(cycles), len(cycles)), dtype=np.int64)
    for i, zi in enumerate(cycles):
        for j, zj in enumerate(cycles):
            form[i, j] = _sweep_pair(R, zi._vec, zj)
    return HomologyBasis(R, frozenset(tree), cotree, tuple(cycles), form)


def cross_check_tables(D: LongDiagram) -> PairingTables:
    """Pairing tables via the homology basis; shares no code with
    :func:`pairing_tables` beyond the graph construction."""
    R = build_carter(D)
    labels = tuple(D.labels)
    n, m = len(labels), len(D.endpoints)
    H = homology_basis(R)
    alphas, betas = [], []
    for lab in labels:
        o, u = D.positions(lab)
        p, q = min(o, u), max(o, u)
        va = np.zeros(m, dtype=np.int64)
        va[p:q] = 1
        vb = 1 - va
        alphas.append(va)
        betas.append(vb)
    gamma = np.ones(m, dtype=np.int64)

    def table(xs, ys):
        return np.array([[H.pair_vectors(x, y) for y in ys] for x in xs], dtype=np.int64).reshape(len(xs), len(ys))

    A, B, C = table(alphas, alphas), table(alphas, betas), table(betas, betas)
    v = np.array([H.pair_vectors(x, gamma) for x in alphas], dtype=np.int64)
    return PairingTables(labels, A, B, C, v)
