"""Core carrier encoding for special polyhedra with marked boundary.

A carrier describes the closed 2-polyhedron Q = P union dM, where P is a
skeleton of a manifold pair and dM is the marked boundary (one hexagonal
2-cell per boundary component, glued to the spine graph).  Working with the
closed object keeps every singular vertex quadrivalent and lets faces be
derived instead of stored.

Encoding conventions
--------------------

Vertices are 0 .. nv-1.  Every vertex is quadrivalent: it has four edge
slots 0..3, and six sectors, one per unordered pair of slots.  A sector is
where a 2-dimensional germ (a face corner) sits between two edge germs.

An edge record is a 6-tuple

    (v0, s0, p0, v1, s1, p1)

meaning the edge runs from slot s0 of vertex v0 to slot s1 of vertex v1.
Along the edge there are three wings (the three pages of the triple line),
labelled 0, 1, 2.  At the end sitting in slot s, wing w lands in the sector
{s, o} where

    o = OTHERS[s][PERMS3[p][w]]

so p is an index 0..5 into the lexicographic list of permutations of
(0, 1, 2).  Loops (v0 == v1) are allowed, s0 == s1 is not.

Each sector of each vertex receives exactly two wing ends (one from the
edge in each of its two slots); matching them and closing through the wings
produces the wing traces.  Every trace is a cycle visiting each wing once,
and every face of the carrier is a disc attached along one trace.

Marked boundary components are recorded as marks on hexagonal faces: a mark
stores the surface kind ('T' torus or 'K' Klein bottle) and the spine kind
('theta' or 'sigma'); both are re-derivable from the trace and are checked
by validation.  A marked face must traverse exactly three edges twice each,
and these spine edges must span exactly two vertices forming a theta or
sigma graph, with the hexagon triply incident at both.

Extensions for non-standard carriers (used by the closed atoms and by
degenerations of the assembling surgery):

* circles: vertex-free singular circles with a monodromy permutation mu of
  the three wing prongs.  The faces along a circle are exactly the orbits
  of mu (a face wraps len(orbit) times), so they are derived, not stored.
* regions: closed 2-components given by (chi, orientable, two_sided).
* arcs: 1-dimensional segments whose endpoints are attached to interior
  points of faces (given by global face index).  Used by connected sums.
* point: the one-point carrier (the 3-sphere atom).

The global face list is: trace faces (sorted by smallest wing), then circle
faces (per circle, by smallest start prong), then regions.  Marks, arcs and
normal coordinates all refer to this list.
"""

from __future__ import annotations

import itertools

# The six permutations of (0,1,2) in lexicographic order.  An edge-end
# bijection is stored as an index into this table.
PERMS3 = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
PERM_INDEX = {p: i for i, p in enumerate(PERMS3)}

# OTHERS[s] lists the slots other than s in increasing order; the image of a
# wing under an end bijection is an index into this list.
OTHERS = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))

# The six sectors of a quadrivalent vertex, in lexicographic order.  The
# index of a sector in this tuple is its sector id, used by serialization
# and by normal surface coordinates.
SECTORS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
SECTOR_INDEX = {frozenset(s): i for i, s in enumerate(SECTORS)}


class MalformedPolyhedron(Exception):
    """The carrier is not even traceable (missing or doubled slots)."""


class UnsupportedFormat(Exception):
    """Serialization was asked for a carrier the format cannot express."""


def wing_other_slot(slot, perm, wing):
    """The slot across which `wing` of an edge end in `slot` sits."""
    return OTHERS[slot][PERMS3[perm][wing]]


def perm_from_other_slots(slot, others):
    """Inverse of wing_other_slot: perm index sending wings 0,1,2 to `others`.

    >>> p = perm_from_other_slots(2, (3, 0, 1))
    >>> [wing_other_slot(2, p, w) for w in range(3)]
    [3, 0, 1]
    """
    pos = tuple(OTHERS[slot].index(o) for o in others)
    return PERM_INDEX[pos]


class Mark:
    """Marking data of one boundary component: surface and spine kind."""

    def __init__(self, surface, spine):
        if surface not in ("T", "K"):
            raise ValueError("surface kind must be 'T' or 'K'")
        if spine not in ("theta", "sigma"):
            raise ValueError("spine kind must be 'theta' or 'sigma'")
        self.surface = surface
        self.spine = spine

    def __eq__(self, other):
        return (
            isinstance(other, Mark)
            and self.surface == other.surface
            and self.spine == other.spine
        )

    def __hash__(self):
        return hash((self.surface, self.spine))

    def __repr__(self):
        return "Mark(%r, %r)" % (self.surface, self.spine)


class Face:
    """A derived 2-component of a carrier.

    kind is 'trace' (boundary walk through edge wings), 'circle' (attached
    along a vertex-free circle, wrapping len(orbit) times) or 'region'
    (a closed surface piece, not a disc).
    """

    __slots__ = ("kind", "traversals", "wings", "circle", "start", "wraps",
                 "region", "index")

    def __init__(self, kind, **data):
        self.kind = kind
        self.traversals = data.get("traversals")
        self.wings = data.get("wings")
        self.circle = data.get("circle")
        self.start = data.get("start")
        self.wraps = data.get("wraps")
        self.region = data.get("region")
        self.index = data.get("index")

    def __repr__(self):
        if self.kind == "trace":
            return "Face(trace, %d wings)" % len(self.wings)
        if self.kind == "circle":
            return "Face(circle %d, wraps %d)" % (self.circle, self.wraps)
        return "Face(region %d)" % self.region


class SpecialPolyhedron:
    """Mutable carrier for a closed-up skeleton.

    Attributes:
        nv        number of quadrivalent vertices
        edges     list of edge records (v0, s0, p0, v1, s1, p1)
        circles   list of monodromy permutations (tuples over prongs 0,1,2)
        regions   list of (chi, orientable, two_sided)
        arcs      list of (end, end): global face indices or "point"
        marks     dict face_index -> Mark
        point     True for the one-point carrier
    """

    def __init__(self, nv=0, edges=None, circles=None, regions=None,
                 arcs=None, marks=None, point=False):
        self.nv = nv
        self.edges = list(edges or [])
        self.circles = [tuple(c) for c in (circles or [])]
        self.regions = [tuple(r) for r in (regions or [])]
        self.arcs = [tuple(a) for a in (arcs or [])]
        self.marks = dict(marks or {})
        self.point = point
        self._faces = None

    def copy(self):
        other = SpecialPolyhedron(
            nv=self.nv,
            edges=list(self.edges),
            circles=list(self.circles),
            regions=list(self.regions),
            arcs=list(self.arcs),
            marks={k: Mark(m.surface, m.spine) for k, m in self.marks.items()},
            point=self.point,
        )
        return other

    def invalidate(self):
        self._faces = None

    # -- derived structure ------------------------------------------------

    def slot_table(self):
        """Map (vertex, slot) -> (edge index, end).  Raises if inconsistent."""
        table = {}
        for ei, (v0, s0, _p0, v1, s1, _p1) in enumerate(self.edges):
            for v, s, end in ((v0, s0, 0), (v1, s1, 1)):
                if not (0 <= v < self.nv and 0 <= s < 4):
                    raise MalformedPolyhedron(
                        "edge %d end %d outside carrier" % (ei, end))
                key = (v, s)
                if key in table:
                    raise MalformedPolyhedron(
                        "two edge ends claim vertex %d slot %d" % key)
                table[key] = (ei, end)
        return table

    def missing_slots(self, table=None):
        if table is None:
            table = self.slot_table()
        return [(v, s) for v in range(self.nv) for s in range(4)
                if (v, s) not in table]

    def sector_claims(self, table=None):
        """Map (vertex, sector id) -> list of (edge, wing, end) germ claims."""
        claims = {}
        for ei, rec in enumerate(self.edges):
            for end in (0, 1):
                v, s, p = rec[3 * end], rec[3 * end + 1], rec[3 * end + 2]
                for w in range(3):
                    o = wing_other_slot(s, p, w)
                    sec = SECTOR_INDEX[frozenset((s, o))]
                    claims.setdefault((v, sec), []).append((ei, w, end))
        return claims

    def faces(self):
        """All faces: traces, then circle faces, then regions.  Cached."""
        if self._faces is None:
            self._faces = self._derive_faces()
        return self._faces

    def _derive_faces(self):
        faces = list(trace_cycles(self))
        faces.sort(key=lambda f: min(f.wings))
        for ci, mu in enumerate(self.circles):
            for orbit in mu_orbits(mu):
                faces.append(Face("circle", circle=ci, start=min(orbit),
                                  wraps=len(orbit)))
        for ri in range(len(self.regions)):
            faces.append(Face("region", region=ri))
        for i, f in enumerate(faces):
            f.index = i
        return faces

    def trace_face_count(self):
        return sum(1 for f in self.faces() if f.kind == "trace")

    def euler(self):
        """Euler characteristic of the whole carrier (a valid one gives 1)."""
        chi = self.nv - len(self.edges)
        for f in self.faces():
            if f.kind == "region":
                chi += self.regions[f.region][0]
            else:
                chi += 1
        # circles are 1-cells with chi 0, nothing to add; each arc glues a
        # segment to the rest at both endpoints: chi += 1 - 2
        chi -= len(self.arcs)
        if self.point:
            chi += 1
        return chi

    def interior_vertex_count(self):
        """v(P): vertices of the carrier not sitting on a marked spine."""
        return self.nv - 2 * len(self.marks)

    def skeleton_face_count(self):
        """f(P): faces of the carrier that are not marked hexagons."""
        return len(self.faces()) - len(self.marks)

    def __repr__(self):
        bits = ["%d vertices" % self.nv, "%d edges" % len(self.edges)]
        if self.circles:
            bits.append("%d circles" % len(self.circles))
        if self.regions:
            bits.append("%d regions" % len(self.regions))
        if self.arcs:
            bits.append("%d arcs" % len(self.arcs))
        if self.marks:
            bits.append("%d marks" % len(self.marks))
        if self.point:
            bits.append("point")
        return "<SpecialPolyhedron: %s>" % ", ".join(bits)


def mu_orbits(mu):
    """Orbits of a prong permutation, each sorted, ordered by smallest element.

    >>> mu_orbits((1, 2, 0))
    [[0, 1, 2]]
    >>> mu_orbits((1, 0, 2))
    [[0, 1], [2]]
    """
    seen = set()
    orbits = []
    for start in range(3):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        x = mu[start]
        while x != start:
            orbit.append(x)
            seen.add(x)
            x = mu[x]
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda o: o[0])
    return orbits


def trace_cycles(poly):
    """Derive the trace faces of a carrier.

    Each directed state is (edge, wing, d): traversing the wing from end d
    to end 1-d.  Arriving at end 1-d in slot s with the wing sitting across
    slot o, the trace continues on the wing of the edge in slot o that
    claims the same sector.  Every wing lies on exactly one cycle.
    """
    table = poly.slot_table()
    missing = poly.missing_slots(table)
    if missing:
        raise MalformedPolyhedron(
            "open trace: unattached slots %s" % (missing,))
    claims = poly.sector_claims(table)
    for key, members in claims.items():
        if len(members) != 2:
            raise MalformedPolyhedron(
                "sector %s receives %d germs" % (key, len(members)))

    # partner[(edge, wing, end)] = the germ glued to it across its sector
    partner = {}
    for (ei, w0, end0), (ej, w1, end1) in claims.values():
        partner[(ei, w0, end0)] = (ej, w1, end1)
        partner[(ej, w1, end1)] = (ei, w0, end0)

    visited = set()
    for ei in range(len(poly.edges)):
        for w in range(3):
            if (ei, w) in visited:
                continue
            cycle = []
            e, wing, d = ei, w, 0
            while True:
                cycle.append((e, wing, d))
                visited.add((e, wing))
                ne, nw, nend = partner[(e, wing, 1 - d)]
                e, wing, d = ne, nw, nend
                if (e, wing, d) == (ei, w, 0):
                    break
            yield Face("trace", traversals=canonical_cycle(cycle),
                       wings=frozenset((e, w) for e, w, _ in cycle))


def canonical_cycle(cycle):
    """Fix a deterministic representative among rotations and the reversal."""
    best = None
    n = len(cycle)
    rev = [(e, w, 1 - d) for (e, w, d) in reversed(cycle)]
    for cand in (cycle, rev):
        for r in range(n):
            rot = tuple(cand[r:] + cand[:r])
            if best is None or rot < best:
                best = rot
    return best


# -- relabelling ----------------------------------------------------------

def relabel(poly, vmap, frames=None):
    """Rename vertices by vmap and permute each vertex's slots by frames[v].

    frames[v] maps old slot -> new slot (defaults to identity).  Returns a
    new carrier with edges re-sorted; marks, arcs and everything derived
    are remapped through the wings.  Used by canonicalization and by the
    isomorphism-invariance tests.
    """
    if frames is None:
        frames = {v: (0, 1, 2, 3) for v in range(poly.nv)}
    new_edges = []
    for (v0, s0, p0, v1, s1, p1) in poly.edges:
        f0, f1 = frames[v0], frames[v1]
        o0 = tuple(f0[wing_other_slot(s0, p0, w)] for w in range(3))
        o1 = tuple(f1[wing_other_slot(s1, p1, w)] for w in range(3))
        e0 = (vmap[v0], f0[s0], perm_from_other_slots(f0[s0], o0))
        e1 = (vmap[v1], f1[s1], perm_from_other_slots(f1[s1], o1))
        if e1 < e0:
            # wing labels are shared along the edge, so swapping the ends
            # keeps every wing's sectors: just store the smaller end first
            e0, e1 = e1, e0
        new_edges.append((e0 + e1, len(new_edges)))
    order = sorted(range(len(new_edges)), key=lambda i: new_edges[i][0])
    edge_map = {old: new for new, old in enumerate(order)}
    result = SpecialPolyhedron(
        nv=poly.nv,
        edges=[new_edges[i][0] for i in order],
        circles=poly.circles,
        regions=poly.regions,
        point=poly.point,
    )
    # remap marks and arcs through face identity: a trace face is best
    # identified by any one of its wings
    face_map = _face_index_map(poly, result, edge_map)
    result.marks = {face_map[fi]: m for fi, m in poly.marks.items()}
    def arc_end(x):
        return x if x == "point" else face_map[x]

    result.arcs = [(arc_end(a), arc_end(b)) for a, b in poly.arcs]
    return result


def _face_index_map(old, new, edge_map):
    """Map face indices of `old` to those of `new` given an edge index map."""
    new_by_wing = {}
    for f in new.faces():
        if f.kind == "trace":
            for wing in f.wings:
                new_by_wing[wing] = f.index
    mapping = {}
    old_faces = old.faces()
    trace_count_old = sum(1 for f in old_faces if f.kind == "trace")
    trace_count_new = sum(1 for f in new.faces() if f.kind == "trace")
    if trace_count_old != trace_count_new:
        raise MalformedPolyhedron("relabelling changed the face count")
    for f in old_faces:
        if f.kind == "trace":
            e, w = min(f.wings)
            mapping[f.index] = new_by_wing[(edge_map[e], w)]
        else:
            # circle faces and regions keep their relative position: both
            # lists are untouched by relabelling
            mapping[f.index] = f.index - trace_count_old + trace_count_new
    return mapping


# -- face geometry helpers ------------------------------------------------

def face_edge_multiset(face):
    counts = {}
    for e, _w, _d in face.traversals:
        counts[e] = counts.get(e, 0) + 1
    return counts


def face_is_hexagon(poly, face):
    """True if the trace face walks three distinct edges twice each, over
    exactly two vertices, forming a theta or sigma graph."""
    if face.kind != "trace" or len(face.traversals) != 6:
        return False
    counts = face_edge_multiset(face)
    if len(counts) != 3 or set(counts.values()) != {2}:
        return False
    return spine_shape(poly, sorted(counts)) is not None


def spine_shape(poly, edge_ids):
    """'theta' or 'sigma' if the three edges span two vertices accordingly,
    else None."""
    verts = set()
    loops = 0
    for ei in edge_ids:
        v0, _s0, _p0, v1, _s1, _p1 = poly.edges[ei]
        verts.update((v0, v1))
        if v0 == v1:
            loops += 1
    if len(verts) != 2:
        return None
    if loops == 0:
        return "theta"
    if loops == 2:
        return "sigma"
    return None


def face_surface_kind(poly, face):
    """Surface kind of the closure of a hexagonal face: 'T' or 'K'.

    The closure glues the hexagon to its three spine edges; it is a closed
    surface of Euler characteristic 0.  It is orientable exactly if both
    traversals of every edge run in opposite directions along the edge.
    """
    dirs = {}
    for e, _w, d in face.traversals:
        dirs.setdefault(e, []).append(d)
    for ds in dirs.values():
        if len(ds) != 2:
            raise ValueError("face is not a doubled-edge hexagon")
    orientable = all(ds[0] != ds[1] for ds in dirs.values())
    return "T" if orientable else "K"


def mark_spine_edges(poly, face_index):
    """Sorted edge ids of the spine of a marked face."""
    face = poly.faces()[face_index]
    return sorted(face_edge_multiset(face))


def mark_spine_vertices(poly, face_index):
    verts = set()
    for ei in mark_spine_edges(poly, face_index):
        rec = poly.edges[ei]
        verts.update((rec[0], rec[3]))
    return sorted(verts)


def spine_vertex_set(poly):
    """All vertices lying on some marked spine."""
    verts = set()
    for fi in poly.marks:
        verts.update(mark_spine_vertices(poly, fi))
    return verts


# -- connectivity ---------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        root = self.parent.setdefault(x, x)
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def groups(self):
        out = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def component_count(poly):
    """Connected components of the carrier (vertices, circles, regions,
    the point, all bridged by edges and arcs)."""
    uf = _UnionFind()
    nodes = 0
    for v in range(poly.nv):
        uf.find(("v", v))
        nodes += 1
    for c in range(len(poly.circles)):
        uf.find(("c", c))
        nodes += 1
    for r in range(len(poly.regions)):
        uf.find(("r", r))
        nodes += 1
    if poly.point:
        uf.find(("pt", 0))
        nodes += 1
    if nodes == 0:
        return 0
    for (v0, _s0, _p0, v1, _s1, _p1) in poly.edges:
        uf.union(("v", v0), ("v", v1))
    faces = poly.faces()

    def face_node(fi):
        f = faces[fi]
        if f.kind == "trace":
            e = min(f.wings)[0]
            return ("v", poly.edges[e][0])
        if f.kind == "circle":
            return ("c", f.circle)
        return ("r", f.region)

    def arc_node(x):
        return ("pt", 0) if x == "point" else face_node(x)

    for a, b in poly.arcs:
        uf.union(arc_node(a), arc_node(b))
    return len(uf.groups())


if __name__ == "__main__":
    import doctest

    doctest.testmod()
