"""Exposing double points: dual-graph routing and pulling surgery.

The lower half plane of an almost-monotone picture is modelled by the
outer face (the face left of the initial boundary half-edge).  A double
point is exposed when it touches the outer face.  Unexposed double points
are routed to the outer face along shortest dual-graph paths, which cross
edge interiors only, each edge at most once per path; pulling then drags
the double point and its four strands along the corridor.

Each crossed edge gains exactly four new crossings.  Their over/under
follows descending order (the earlier-parameter strand on top).  The
reference isotopy slides the double point underneath everything, so at
sites where descending order puts a dragged strand on top the surgery
emits a crossing-change event; the signed events restore the exact
telescoping identity between the values before and after the pull.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InvalidPath
from .gauss import (
    CrossingChangeEvent,
    GaussCode,
    change_crossing,
    make_singular,
)
from .planar import P_KIND, X_KIND, MutableMap, PlanarDiagram


@dataclass(frozen=True)
class ExposingPath:
    """A dual path: the face left at each step and the edge crossed doing so."""

    double_vertex: int
    steps: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ExposureReport:
    k_unexposed: int
    total_intersections: int
    bound: int
    per_path: tuple[int, ...]


@dataclass(frozen=True)
class PullResult:
    diagram: PlanarDiagram
    new_crossings: int
    events: tuple[CrossingChangeEvent, ...]


def double_vertices(pd: PlanarDiagram) -> tuple[int, ...]:
    return tuple(vi for vi, v in enumerate(pd.vertices) if v.kind == P_KIND)


def unexposed_doubles(pd: PlanarDiagram, faces=None) -> tuple[int, ...]:
    faces = faces or pd.faces()
    return tuple(
        vi
        for vi in double_vertices(pd)
        if faces.outer_index not in faces.faces_at_vertex(vi)
    )


def route_exposing_paths(pd: PlanarDiagram, unexposed=None):
    """Shortest dual paths from each unexposed double point to the outer face.

    Breadth-first search in the face graph never repeats a face, so each
    path crosses each edge at most once; path length is below the face
    count, hence below the edge count 2(k+n)+1, and the total is within
    k(2(k+n)+1).
    """
    faces = pd.faces()
    if unexposed is None:
        unexposed = unexposed_doubles(pd, faces)
    neighbors = faces.dual_neighbors()
    paths = []
    for dv in unexposed:
        if pd.vertices[dv].kind != P_KIND:
            raise InvalidPath(f"vertex {dv} is not a double point")
        starts = list(dict.fromkeys(faces.faces_at_vertex(dv)))
        parent = {f: None for f in starts}
        queue = deque(starts)
        while queue:
            f = queue.popleft()
            if f == faces.outer_index:
                break
            for edge, g in neighbors[f]:
                if g not in parent:
                    parent[g] = (f, edge)
                    queue.append(g)
        steps = []
        f = faces.outer_index
        while parent[f] is not None:
            pf, edge = parent[f]
            steps.append((pf, edge))
            f = pf
        paths.append(ExposingPath(dv, tuple(reversed(steps))))
    per = tuple(len(p.steps) for p in paths)
    report = ExposureReport(
        k_unexposed=len(unexposed),
        total_intersections=sum(per),
        bound=pd.k * (2 * (pd.k + pd.n) + 1),
        per_path=per,
    )
    return tuple(paths), report


def _validate_path(pd: PlanarDiagram, faces, path: ExposingPath):
    dv = path.double_vertex
    if not (0 <= dv < len(pd.vertices)) or pd.vertices[dv].kind != P_KIND:
        raise InvalidPath(f"vertex {dv} is not a double point")
    if not path.steps:
        return
    current = path.steps[0][0]
    if current not in faces.faces_at_vertex(dv):
        raise InvalidPath("path does not start at a face of its double point")
    seen = set()
    for f, edge in path.steps:
        if f != current:
            raise InvalidPath("path steps do not chain")
        if edge in seen:
            raise InvalidPath(f"path crosses edge {edge} twice")
        seen.add(edge)
        left, right = faces.left_of(edge), faces.right_of(edge)
        if current == left:
            current = right
        elif current == right:
            current = left
        else:
            raise InvalidPath(f"edge {edge} does not bound face {f}")
    if current != faces.outer_index:
        raise InvalidPath("path does not end at the outer face")


def pull_double_point(pd: PlanarDiagram, path: ExposingPath) -> PullResult:
    """Drag a double point along its corridor into the outer face."""
    faces = pd.faces()
    _validate_path(pd, faces, path)
    if not path.steps:
        return PullResult(pd, 0, ())
    dv = path.double_vertex

    corner = None
    for j in range(4):
        if faces.corner_face(dv, j) == path.steps[0][0]:
            corner = j
            break
    if corner is None:
        raise InvalidPath("no corner of the double point lies on the start face")
    # transverse order of the dragged strands, left to right along the corridor
    leg_slots = [(corner + 1) % 4, (corner + 2) % 4, (corner + 3) % 4, corner]

    m = MutableMap.from_diagram(pd)
    rot_dv = list(m.rot[dv])

    def leg_over(slot: int, crossed: int) -> bool:
        edge, end = rot_dv[slot]
        threshold = edge + 1 if end == 1 else edge
        return crossed >= threshold

    columns = []
    flip_vertices = []
    for f, e in path.steps:
        if f == faces.left_of(e):
            order = [3, 2, 1, 0]
            e_in_slot, e_out_slot = 1, 3
        else:
            order = [0, 1, 2, 3]
            e_in_slot, e_out_slot = 3, 1
        col = {}
        for t in range(4):
            v = m.new_vertex(X_KIND)
            if leg_over(leg_slots[t], e):
                m.over_slots[v] = frozenset((0, 2))
                flip_vertices.append(v)
            else:
                m.over_slots[v] = frozenset((1, 3))
            col[t] = v
        original_head = m.place[(e, 1)]
        cur = e
        for t in order:
            m.set_place(cur, 1, col[t], e_in_slot)
            seg = m.new_edge()
            m.set_place(seg, 0, col[t], e_out_slot)
            cur = seg
        m.set_place(cur, 1, *original_head)
        columns.append(col)

    new_dv = m.new_vertex(P_KIND)
    r = len(path.steps)
    for t in range(4):
        slot = leg_slots[t]
        edge_id, end = m.rot[dv][slot]
        if end == 1:
            # strand arrives at the double point: it flows down the corridor
            m.set_place(edge_id, 1, columns[0][t], 0)
            prev = columns[0][t]
            for i in range(1, r):
                seg = m.new_edge()
                m.set_place(seg, 0, prev, 2)
                m.set_place(seg, 1, columns[i][t], 0)
                prev = columns[i][t]
            seg = m.new_edge()
            m.set_place(seg, 0, prev, 2)
            m.set_place(seg, 1, new_dv, t)
        else:
            # strand leaves the double point: it flows back up the corridor
            seg = m.new_edge()
            m.set_place(seg, 0, new_dv, t)
            m.set_place(seg, 1, columns[r - 1][t], 2)
            for i in range(r - 1, 0, -1):
                nxt = m.new_edge()
                m.set_place(nxt, 0, columns[i][t], 0)
                m.set_place(nxt, 1, columns[i - 1][t], 2)
            m.set_place(edge_id, 0, columns[0][t], 0)
    m.clear_vertex(dv)

    diagram, index_of = m.to_diagram()
    diagram.faces()  # Euler check of the surgered rotation system

    code, gauss_ids = diagram.to_gauss_with_ids()
    flip_labels = sorted(gauss_ids[index_of[v]] for v in flip_vertices)
    events = []
    current = code
    for label in flip_labels:
        sigma = current.crossing(label).sign
        events.append(
            CrossingChangeEvent(
                sign=-sigma,
                diagram=make_singular(current, label),
                changed_id=label,
            )
        )
        current = change_crossing(current, label)
    return PullResult(diagram, 4 * r, tuple(events))


def expose_all(pd: PlanarDiagram):
    """Pull until every double point touches the outer face.

    Returns (diagram, events, report).  Each iteration exposes one double
    point, so at most k pulls happen; the report accumulates corridor
    intersections against the per-iteration edge-count bounds.
    """
    initial_unexposed = len(unexposed_doubles(pd))
    current = pd
    events = []
    per_path = []
    bound = 0
    for _ in range(pd.k + 1):
        unexp = unexposed_doubles(current)
        if not unexp:
            break
        paths, _ = route_exposing_paths(current, (unexp[0],))
        bound += 2 * (current.k + current.n) + 1
        result = pull_double_point(current, paths[0])
        events.extend(result.events)
        per_path.append(len(paths[0].steps))
        current = result.diagram
    else:
        raise InvalidPath("pulling failed to expose every double point")
    report = ExposureReport(
        k_unexposed=initial_unexposed,
        total_intersections=sum(per_path),
        bound=bound,
        per_path=tuple(per_path),
    )
    return current, tuple(events), report
