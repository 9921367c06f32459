"""Planar diagrams (PD codes) of long knots.

A diagram is a 4-valent rotation system: each vertex lists its incident
edge labels in counterclockwise order.  Edge labels 1 .. 2V+1 run along
the strand orientation from the open start, so every vertex passage turns
label L into L+1.  ``X a b c d`` is a regular crossing with ``a`` the
incoming under-strand; ``P a b c d`` is a double point with strands
(a, c) and (b, d).  A crossing is positive exactly when its over-strand
runs d -> b, i.e. when the over-strand crosses left to right as seen from
the incoming under-strand.

For face counts the two boundary half-edges are closed through a virtual
vertex at infinity, giving a sphere map on V+1 vertices and 2V+1 edges,
so a valid rotation system has exactly V+2 faces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BadIncidence, EulerViolation, NotConnected
from .gauss import DOUBLE, OVER, UNDER, GaussCode, GaussToken

INF = -1  # index of the virtual vertex at infinity

X_KIND = "X"
P_KIND = "P"


@dataclass(frozen=True)
class PDVertex:
    """One vertex: kind and its four edge labels in counterclockwise order."""

    kind: str
    labels: tuple[int, int, int, int]

    def __post_init__(self):
        if self.kind not in (X_KIND, P_KIND):
            raise BadIncidence(f"bad vertex kind {self.kind!r}")
        if len(self.labels) != 4 or any(l < 1 for l in self.labels):
            raise BadIncidence(f"bad label tuple {self.labels!r}")

    def __str__(self):
        return " ".join([self.kind, *map(str, self.labels)])


@dataclass(frozen=True)
class PlanarDiagram:
    """An immutable validated PD code of a long knot."""

    vertices: tuple[PDVertex, ...]
    _in_slot: dict = field(init=False, repr=False, compare=False)
    _out_slot: dict = field(init=False, repr=False, compare=False)
    _over_in: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v_count = len(self.vertices)
        e_count = 2 * v_count + 1
        in_slot = {}
        out_slot = {}
        over_in = {}

        def set_in(label, place):
            if label in in_slot:
                raise BadIncidence(f"label {label} arrives twice")
            in_slot[label] = place

        def set_out(label, place):
            if label in out_slot:
                raise BadIncidence(f"label {label} leaves twice")
            out_slot[label] = place

        for vi, vert in enumerate(self.vertices):
            a, b, c, d = vert.labels
            if any(l > e_count for l in vert.labels):
                raise BadIncidence(f"label beyond {e_count} at vertex {vi}")
            pairs = [(0, 2, a, c), (1, 3, b, d)]
            if vert.kind == X_KIND and c != a + 1:
                raise BadIncidence(
                    f"vertex {vi}: under-strand must leave on label {a + 1}"
                )
            for s_first, s_second, x, y in pairs:
                if y == x + 1:
                    set_in(x, (vi, s_first))
                    set_out(y, (vi, s_second))
                elif x == y + 1:
                    set_in(y, (vi, s_second))
                    set_out(x, (vi, s_first))
                else:
                    raise BadIncidence(
                        f"vertex {vi}: labels {x},{y} are not consecutive"
                    )
            if vert.kind == X_KIND:
                over_in[vi] = 3 if b == d + 1 else 1
        set_out(1, (INF, 0))
        set_in(e_count, (INF, 1))
        for label in range(1, e_count + 1):
            if label not in in_slot or label not in out_slot:
                raise BadIncidence(f"label {label} is not used exactly twice")
        object.__setattr__(self, "_in_slot", in_slot)
        object.__setattr__(self, "_out_slot", out_slot)
        object.__setattr__(self, "_over_in", over_in)
        # connectivity is forced by the label chain; keep a defensive check
        visited = set()
        for label in range(1, e_count):
            vi, _ = in_slot[label]
            visited.add(vi)
        if len(visited) != v_count:
            raise NotConnected("traversal does not reach every vertex")

    @property
    def n(self) -> int:
        return sum(1 for v in self.vertices if v.kind == X_KIND)

    @property
    def k(self) -> int:
        return sum(1 for v in self.vertices if v.kind == P_KIND)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.vertices) + 1

    def crossing_sign(self, vi: int) -> int:
        if self.vertices[vi].kind != X_KIND:
            raise BadIncidence(f"vertex {vi} is not a crossing")
        return 1 if self._over_in[vi] == 3 else -1

    def to_gauss_with_ids(self):
        """Traverse the strand; returns (GaussCode, vertex index -> gauss label)."""
        tokens = []
        ids = {}
        next_x = 1
        next_p = 1
        for label in range(1, self.edge_count):
            vi, slot = self._in_slot[label]
            vert = self.vertices[vi]
            if vert.kind == P_KIND:
                if vi not in ids:
                    ids[vi] = next_p
                    next_p += 1
                tokens.append(GaussToken(DOUBLE, ids[vi]))
            else:
                if vi not in ids:
                    ids[vi] = next_x
                    next_x += 1
                kind = UNDER if slot == 0 else OVER
                tokens.append(GaussToken(kind, ids[vi], self.crossing_sign(vi)))
        return GaussCode(tuple(tokens)), ids

    def to_gauss(self) -> GaussCode:
        return self.to_gauss_with_ids()[0]

    def faces(self) -> "Faces":
        return Faces(self)

    def __str__(self):
        return "\n".join(str(v) for v in self.vertices)


@dataclass(frozen=True)
class Face:
    """A face as the cyclic tuple of directed edge-sides on its boundary."""

    darts: tuple[tuple[int, int], ...]
    outer: bool


class Faces:
    """Face structure of the sphere closure of a diagram's rotation system.

    A dart (label, +1) runs along the edge's orientation and its orbit is
    the face on the edge's left; (label, -1) gives the right face.  The
    outer face, standing in for the lower half plane, is the one left of
    the initial boundary half-edge.
    """

    def __init__(self, diagram: PlanarDiagram):
        self.diagram = diagram
        e_count = diagram.edge_count
        face_of = {}
        faces = []

        def head(dart):
            label, direction = dart
            return (
                diagram._in_slot[label]
                if direction > 0
                else diagram._out_slot[label]
            )

        # slot -> (label, +1 for tail end, -1 for head end)
        slot_edge = {}
        for label in range(1, e_count + 1):
            slot_edge[diagram._out_slot[label]] = (label, 1)
            slot_edge[diagram._in_slot[label]] = (label, -1)
        self._slot_edge = slot_edge

        def next_dart(dart):
            vi, slot = head(dart)
            size = 2 if vi == INF else 4
            turn = (slot - 1) % size
            label, end = slot_edge[(vi, turn)]
            # leave the vertex: forward along the edge if this is its tail
            return (label, 1 if end == 1 else -1)

        all_darts = [(l, d) for l in range(1, e_count + 1) for d in (1, -1)]
        for start in all_darts:
            if start in face_of:
                continue
            orbit = []
            dart = start
            while dart not in face_of:
                face_of[dart] = len(faces)
                orbit.append(dart)
                dart = next_dart(dart)
            if face_of[dart] != len(faces):
                raise EulerViolation("face tracing left its own orbit")
            faces.append(tuple(orbit))
        if len(faces) != len(diagram.vertices) + 2:
            raise EulerViolation(
                f"rotation system has {len(faces)} faces, "
                f"expected {len(diagram.vertices) + 2}"
            )
        outer_index = face_of[(1, 1)]
        self.faces = tuple(
            Face(darts=f, outer=(i == outer_index)) for i, f in enumerate(faces)
        )
        self.face_of = face_of
        self.outer_index = outer_index

    def __len__(self):
        return len(self.faces)

    def left_of(self, label: int) -> int:
        return self.face_of[(label, 1)]

    def right_of(self, label: int) -> int:
        return self.face_of[(label, -1)]

    def corner_face(self, vi: int, corner: int) -> int:
        """Face at the corner between slot ``corner`` and the next slot CCW."""
        place = (vi, (corner + 1) % 4)
        label, end = self._slot_edge[place]
        # dart arriving at this slot: forward if the slot is the head
        direction = 1 if end == -1 else -1
        return self.face_of[(label, direction)]

    def faces_at_vertex(self, vi: int) -> tuple[int, ...]:
        return tuple(self.corner_face(vi, c) for c in range(4))

    def dual_neighbors(self):
        """For each face, the sorted (edge label, other face) crossings."""
        out = {i: [] for i in range(len(self.faces))}
        for label in range(1, self.diagram.edge_count + 1):
            l, r = self.left_of(label), self.right_of(label)
            if l != r:
                out[l].append((label, r))
                out[r].append((label, l))
        return {i: sorted(v) for i, v in out.items()}


# -- mutable combinatorial map for surgery and generation ----------------------


class MutableMap:
    """Half-edge structure used to build and rewrite diagrams.

    Vertices hold four (edge, end) references in counterclockwise order;
    ``end`` 0 is the tail (the edge leaves there) and 1 the head.  The
    virtual vertex INF has two slots: the open start's tail and the open
    end's head.  ``to_diagram`` renumbers edges along the strand and emits
    a validated PlanarDiagram plus the map from internal vertex ids to
    diagram indices.
    """

    def __init__(self):
        self.rot = {INF: [None, None]}  # vertex -> list of (edge, end)
        self.kind = {}  # vertex -> X_KIND | P_KIND
        self.over_slots = {}  # X vertex -> frozenset of two slot indices
        self.place = {}  # (edge, end) -> (vertex, slot)
        self._next_vertex = 0
        self._next_edge = 0

    @staticmethod
    def empty() -> "MutableMap":
        m = MutableMap()
        e = m.new_edge()
        m.set_place(e, 0, INF, 0)
        m.set_place(e, 1, INF, 1)
        return m

    @staticmethod
    def from_diagram(diagram: PlanarDiagram) -> "MutableMap":
        m = MutableMap()
        m._next_edge = diagram.edge_count + 1
        for vi, vert in enumerate(diagram.vertices):
            m.rot[vi] = [None] * 4
            m.kind[vi] = vert.kind
            if vert.kind == X_KIND:
                m.over_slots[vi] = frozenset((1, 3))
        m._next_vertex = len(diagram.vertices)
        for label in range(1, diagram.edge_count + 1):
            vi, slot = diagram._out_slot[label]
            m.set_place(label, 0, vi, slot)
            vi, slot = diagram._in_slot[label]
            m.set_place(label, 1, vi, slot)
        return m

    def new_vertex(self, kind: str) -> int:
        vi = self._next_vertex
        self._next_vertex += 1
        self.rot[vi] = [None] * 4
        self.kind[vi] = kind
        return vi

    def new_edge(self) -> int:
        self._next_edge += 1
        return self._next_edge

    def set_place(self, edge: int, end: int, vertex: int, slot: int):
        self.rot[vertex][slot] = (edge, end)
        self.place[(edge, end)] = (vertex, slot)

    def clear_vertex(self, vertex: int):
        """Drop a vertex; callers must re-place any edge ends that sat on it."""
        del self.rot[vertex]
        self.kind.pop(vertex, None)
        self.over_slots.pop(vertex, None)

    def end_at(self, vertex: int, slot: int):
        return self.rot[vertex][slot]

    def to_diagram(self):
        """Renumber along the strand; returns (PlanarDiagram, vertex id map)."""
        start = self.rot[INF][0]
        if start is None:
            raise BadIncidence("map has no open start")
        labels = {}  # (edge, ...) -> traversal label, keyed by edge id
        order = []
        edge, end = start
        if end != 0:
            raise BadIncidence("open start must be a tail end")
        label = 1
        seen_vertices = []
        while True:
            labels[edge] = label
            order.append(edge)
            vertex, slot = self.place[(edge, 1)]
            if vertex == INF:
                break
            if vertex not in seen_vertices:
                seen_vertices.append(vertex)
            out_ref = self.rot[vertex][(slot + 2) % 4]
            if out_ref is None or out_ref[1] != 0:
                raise BadIncidence("strand does not continue at a tail end")
            edge = out_ref[0]
            label += 1
        verts = []
        index_of = {}
        for vertex in seen_vertices:
            index_of[vertex] = len(verts)
            rot = self.rot[vertex]
            if any(r is None for r in rot):
                raise BadIncidence("vertex with unwired slot")
            kind = self.kind[vertex]
            slot_labels = [labels[e] for e, _ in rot]
            if kind == X_KIND:
                over = self.over_slots[vertex]
                under = [s for s in range(4) if s not in over]
                under_in = [s for s in under if rot[s][1] == 1]
                if len(under_in) != 1:
                    raise BadIncidence("crossing without a single under-in end")
                shift = under_in[0]
            else:
                heads = [s for s in range(4) if rot[s][1] == 1]
                if len(heads) != 2:
                    raise BadIncidence("double point without two arriving ends")
                shift = min(heads, key=lambda s: slot_labels[s])
            rotated = tuple(slot_labels[(shift + i) % 4] for i in range(4))
            verts.append(PDVertex(kind, rotated))
        diagram = PlanarDiagram(tuple(verts))
        return diagram, index_of


# -- seeded diagram generation ---------------------------------------------------

_KINK_TEMPLATES = {
    # first_kind, sign: (roles per slot CCW, loop tail slot, loop head slot,
    #                    incoming head slot, outgoing tail slot, over slots)
    (UNDER, 1): (("Uin", "Oout", "Uout", "Oin"), 2, 3, 0, 1, frozenset((1, 3))),
    (UNDER, -1): (("Uin", "Oin", "Uout", "Oout"), 2, 1, 0, 3, frozenset((1, 3))),
    (OVER, 1): (("Uout", "Oin", "Uin", "Oout"), 3, 2, 1, 0, frozenset((1, 3))),
    (OVER, -1): (("Uout", "Oout", "Uin", "Oin"), 1, 2, 3, 0, frozenset((1, 3))),
}


def insert_kink(m: MutableMap, edge: int, first_kind: str, sign: int):
    """Split ``edge`` and add a one-crossing loop of the given handedness."""
    _, loop_tail, loop_head, in_slot, out_slot, over = _KINK_TEMPLATES[
        (first_kind, sign)
    ]
    head_place = m.place[(edge, 1)]
    v = m.new_vertex(X_KIND)
    m.over_slots[v] = over
    loop = m.new_edge()
    cont = m.new_edge()
    m.set_place(edge, 1, v, in_slot)
    m.set_place(loop, 0, v, loop_tail)
    m.set_place(loop, 1, v, loop_head)
    m.set_place(cont, 0, v, out_slot)
    m.set_place(cont, 1, *head_place)
    return v


def insert_poke(
    m: MutableMap,
    finger_edge: int,
    target_edge: int,
    target_side: int,
    finger_over: bool,
    chirality: bool,
):
    """Poke the strand of one edge across another edge bordering a common face.

    ``target_side`` is +1 when the shared face lies left of the target edge.
    Creates two opposite-sign crossings on the target edge; ``chirality``
    picks which of them comes first along it.
    """
    f_head = m.place[(finger_edge, 1)]
    t_head = m.place[(target_edge, 1)]
    c1 = m.new_vertex(X_KIND)
    c2 = m.new_vertex(X_KIND)
    # local frame: target edge runs south to north when the shared face is on
    # its left (target_side > 0); slots CCW are (W, S, E, N)
    tip = m.new_edge()
    f_rest = m.new_edge()
    t_mid = m.new_edge()
    t_rest = m.new_edge()
    if target_side > 0:
        # finger travels west to east on its way out
        w1, e1 = ("in", "out")
    else:
        # shared face on the right: finger comes from the east
        w1, e1 = ("out", "in")
    # c1 carries the outward crossing, c2 the return crossing
    # finger: finger_edge head -> c1, tip: c1 -> c2, f_rest: c2 -> old head
    # target pieces run through (S in, N out) at each crossing
    out_slot_c1 = 2 if w1 == "in" else 0
    in_slot_c1 = 0 if w1 == "in" else 2
    m.set_place(finger_edge, 1, c1, in_slot_c1)
    m.set_place(tip, 0, c1, out_slot_c1)
    m.set_place(tip, 1, c2, (in_slot_c1 + 2) % 4)
    m.set_place(f_rest, 0, c2, in_slot_c1)
    m.set_place(f_rest, 1, *f_head)
    first, second = (c1, c2) if chirality else (c2, c1)
    m.set_place(target_edge, 1, first, 1)
    m.set_place(t_mid, 0, first, 3)
    m.set_place(t_mid, 1, second, 1)
    m.set_place(t_rest, 0, second, 3)
    m.set_place(t_rest, 1, *t_head)
    over = frozenset((in_slot_c1, out_slot_c1)) if finger_over else frozenset((1, 3))
    m.over_slots[c1] = over
    m.over_slots[c2] = over
    return c1, c2


def to_double(diagram: PlanarDiagram, vi: int) -> PlanarDiagram:
    """Forget the over/under of one crossing, producing a double point."""
    if diagram.vertices[vi].kind != X_KIND:
        raise BadIncidence(f"vertex {vi} is not a crossing")
    verts = list(diagram.vertices)
    verts[vi] = PDVertex(P_KIND, verts[vi].labels)
    return PlanarDiagram(tuple(verts))


def random_planar_diagram(n: int, k: int, seed: int) -> PlanarDiagram:
    """A seeded random long-knot diagram with n crossings and k double points.

    Built by repeated random kink and poke insertions, which keep the map
    planar by construction, then converting k random crossings to double
    points.  Deterministic in the seed.
    """
    rng = random.Random(seed)
    m = MutableMap.empty()
    total = n + k
    crossings = 0
    while crossings < total:
        diagram, _ = m.to_diagram()
        want_poke = crossings + 2 <= total and rng.random() < 0.6
        if want_poke:
            faces = diagram.faces()
            options = []
            for fi, face in enumerate(faces.faces):
                edges = sorted({lab for lab, _ in face.darts})
                if len(edges) >= 2:
                    options.append((fi, face))
            if options:
                fi, face = options[rng.randrange(len(options))]
                labels = sorted({lab for lab, _ in face.darts})
                finger, target = rng.sample(labels, 2)
                side = 1 if faces.left_of(target) == fi else -1
                m = MutableMap.from_diagram(diagram)
                insert_poke(
                    m, finger, target, side, rng.random() < 0.5, rng.random() < 0.5
                )
                crossings += 2
                continue
        m = MutableMap.from_diagram(diagram)
        edge = rng.randrange(1, diagram.edge_count + 1)
        insert_kink(m, edge, rng.choice((OVER, UNDER)), rng.choice((1, -1)))
        crossings += 1
    diagram, _ = m.to_diagram()
    diagram.faces()  # Euler sanity check
    choices = [vi for vi in range(len(diagram.vertices))]
    rng.shuffle(choices)
    for vi in choices[:k]:
        diagram = to_double(diagram, vi)
    return diagram
