"""Carrier-level surgeries behind the pair operations.

Three constructions are implemented on closed carriers:

* ``assemble_carriers``: glue a marked boundary component of one carrier to
  a marked component of another.  Both hexagons disappear, the two spine
  triples are identified edge by edge, and the four spine vertices stop
  being vertices: the legs that used to end there concatenate through a
  triple point.  Combinatorially each leg chain becomes a single new edge
  (or a vertex-free circle when the chain closes up), with the wing gluing
  transported through every splice.

* ``self_assemble_carrier``: glue two marked components of the same
  carrier along an identification that lays one spine over the other with
  two transverse crossings.  The two hexagons are replaced by the four
  complementary discs of the overlay graph; the old spine vertices stay
  (now honest quadrivalent vertices) and the two crossings appear as new
  vertices, so the carrier grows by exactly two vertices and four edges.

* ``connected_sum_carriers``: disjoint union plus an arc joining interior
  faces (or the distinguished point piece) of the two sides.

All three return a fresh SpecialPolyhedron and never mutate their inputs.
Surviving marks and arcs are carried over by tracking a face through a
wing germ that survives the surgery; a configuration that cannot be
expressed in the closed-carrier encoding (for instance a leg cycle whose
faces still touch retained structure, which would need an annular face)
raises UnsupportedAssembling instead of producing a wrong carrier.
"""

from . import _words
from ._model import (
    SpecialPolyhedron,
    Mark,
    PERMS3,
    OTHERS,
    wing_other_slot,
    perm_from_other_slots,
    mu_orbits,
)
from .surfaces import boundary_surface


class UnsupportedAssembling(ValueError):
    """The requested surgery leaves the closed-carrier encoding."""


# -- shared helpers ------------------------------------------------------------


def _class_vertices(poly, chart):
    """Map raw-word corner classes of a charted hexagon to carrier vertices.

    A raw letter traversed with sign +1 runs its carrier edge from end 0 to
    end 1, so the letter's tail class sits at the edge's end-0 vertex.
    """
    endpoints = _words.word_complex(chart.raw_word)["endpoints"]
    out = {}
    for letter, (tail, head) in endpoints.items():
        rec = poly.edges[chart.letters[letter]]
        for cls, vertex in ((tail, rec[0]), (head, rec[3])):
            if out.setdefault(cls, vertex) != vertex:
                raise AssertionError(
                    "chart classes disagree on carrier vertices")
    return out


def _germ_fields(rec, end):
    """(vertex, slot, perm) of one end of an edge record."""
    return rec[3 * end], rec[3 * end + 1], rec[3 * end + 2]


def _hexagon_p_wings(poly, face_index):
    """Map spine edge id -> the one wing not claimed by the hexagon."""
    hexagon = poly.faces()[face_index]
    claimed = {}
    for e, w in hexagon.wings:
        claimed.setdefault(e, set()).add(w)
    out = {}
    for e, wings in claimed.items():
        free = set(range(3)) - wings
        if len(free) != 1:
            raise AssertionError(
                "hexagon at face %d claims %d wings of edge %d"
                % (face_index, len(wings), e))
        out[e] = free.pop()
    return out


def _face_lookup(poly):
    """Index every face of a carrier by germ: trace faces by their wings,
    circle faces by (circle, page), regions by region id."""
    lookup = {}
    for face in poly.faces():
        if face.kind == "trace":
            for germ in face.wings:
                lookup[("w",) + germ] = face.index
        elif face.kind == "circle":
            mu = poly.circles[face.circle]
            for orbit in mu_orbits(mu):
                if min(orbit) == face.start:
                    for page in orbit:
                        lookup[("c", face.circle, page)] = face.index
        else:
            lookup[("r", face.region)] = face.index
    return lookup


def _compose_wings(outer, inner):
    return tuple(outer[inner[w]] for w in range(3))


def _invert_wings(t):
    out = [0, 0, 0]
    for w in range(3):
        out[t[w]] = w
    return tuple(out)


def _partner_wing(slot, perm, other_slot):
    """The wing of an edge end in `slot` with permutation `perm` that sits
    across `other_slot` (claims the sector {slot, other_slot})."""
    return PERMS3[perm].index(OTHERS[slot].index(other_slot))


class _EmptyChains(object):
    new_edges = ()
    new_circles = ()


# -- assembling ----------------------------------------------------------------


def _raw_matching(chart_a, chart_b, gluing):
    """Pull the canonical gluing back to a matching raw word -> raw word."""
    lift = _words.compose_matchings(
        chart_a.raw_word, chart_a.surface.word, chart_b.surface.word,
        chart_a.chart, gluing.matching())
    inverse_b = _words.invert_matching(
        chart_b.raw_word, chart_b.surface.word, chart_b.chart)
    return _words.compose_matchings(
        chart_a.raw_word, chart_b.surface.word, chart_b.raw_word,
        lift, inverse_b)


def _leg_germ(table, vertex, spine_slots):
    """The unique (germ, slot) at `vertex` outside the three spine slots."""
    slots = [s for s in range(4) if s not in spine_slots]
    if len(slots) != 1:
        raise AssertionError(
            "vertex %d does not look like a marked spine vertex" % vertex)
    return table[(vertex, slots[0])], slots[0]


def _splice_transport(poly, table, va, vb, edge_pairs):
    """Wing map across one demoted vertex pair.

    The leg wing across spine slot o at va continues, after the spines are
    identified, onto the wing of the partner leg at vb across the slot of
    the identified spine edge.  Returns (germ at va, germ at vb, T) with
    T[wing of a-leg] = wing of b-leg.
    """
    image_edges = {e for e, _f in edge_pairs.values()}
    spine_a = {s: (e, end) for (v, s), (e, end) in table.items()
               if v == va and e in edge_pairs}
    spine_b = {s: (e, end) for (v, s), (e, end) in table.items()
               if v == vb and e in image_edges}
    if len(spine_a) != 3 or len(spine_b) != 3:
        raise AssertionError(
            "demoted vertices %d/%d do not carry three spine slots"
            % (va, vb))
    (leg_a, end_a), slot_a = _leg_germ(table, va, spine_a)
    (leg_b, end_b), slot_b = _leg_germ(table, vb, spine_b)
    pa = _germ_fields(poly.edges[leg_a], end_a)[2]
    pb = _germ_fields(poly.edges[leg_b], end_b)[2]

    transport = []
    for w in range(3):
        o = wing_other_slot(slot_a, pa, w)
        e_sp, eps = spine_a[o]
        e_im, flip = edge_pairs[e_sp]
        eps_im = eps ^ (1 if flip else 0)
        v_im, s_im, _p = _germ_fields(poly.edges[e_im], eps_im)
        if v_im != vb:
            raise AssertionError(
                "spine identification sends a germ at vertex %d to vertex "
                "%d, expected %d" % (va, v_im, vb))
        transport.append(_partner_wing(slot_b, pb, s_im))
    if sorted(transport) != [0, 1, 2]:
        raise AssertionError("wing transport is not a bijection")
    return (leg_a, end_a), (leg_b, end_b), tuple(transport)


class _ChainBundle(object):
    """Chains of legs through demoted vertices: new edges and new circles.

    connectors maps each spliced germ to (far germ, wing transport); the
    transport always maps wings of the germ's own edge to wings of the far
    germ's edge.
    """

    def __init__(self, poly, connectors):
        self.poly = poly
        self.connectors = connectors
        self.chain_edge_ids = sorted({e for e, _d in connectors})
        self.new_edges = []      # (record, {edge id: wing map base->edge})
        self.new_circles = []    # (mu, {edge id: wing map base->edge})
        self._walk_all()

    def _walk_all(self):
        consumed = set()
        anchors = []
        for e in self.chain_edge_ids:
            for end in (0, 1):
                if (e, end) not in self.connectors:
                    anchors.append((e, end))
        for start in sorted(anchors):
            if start[0] in consumed:
                continue
            self._walk_open(start, consumed)
        for e in self.chain_edge_ids:
            if e not in consumed:
                self._walk_cycle(e, consumed)

    def _walk_open(self, start, consumed):
        # We enter the first edge at its free end and push the base wing
        # labels forward through every splice.
        e, d = start
        cmap = (0, 1, 2)
        members = {}
        while True:
            members[e] = cmap
            consumed.add(e)
            exit_germ = (e, 1 - d)
            if exit_germ not in self.connectors:
                break
            (e2, d2), t = self.connectors[exit_germ]
            cmap = _compose_wings(t, cmap)
            e, d = e2, d2
        v0, s0, p0 = _germ_fields(self.poly.edges[start[0]], start[1])
        vf, sf, pf = _germ_fields(self.poly.edges[e], 1 - d)
        others = tuple(wing_other_slot(sf, pf, cmap[w]) for w in range(3))
        record = (v0, s0, p0, vf, sf, perm_from_other_slots(sf, others))
        self.new_edges.append((record, members))

    def _walk_cycle(self, base, consumed):
        e, d = base, 0
        cmap = (0, 1, 2)
        members = {}
        while True:
            members[e] = cmap
            consumed.add(e)
            (e2, d2), t = self.connectors[(e, 1 - d)]
            cmap = _compose_wings(t, cmap)
            e, d = e2, d2
            if (e, d) == (base, 0):
                break
        self.new_circles.append((cmap, members))


def assemble_carriers(poly_a, face_a, poly_b, face_b, gluing):
    """Glue marked face_a of poly_a to marked face_b of poly_b along a
    GluingMap between their canonical marked surfaces.  Returns a new
    carrier; the two hexagons and their spines are consumed."""
    chart_a = boundary_surface(poly_a, face_a)
    chart_b = boundary_surface(poly_b, face_b)
    if gluing.src != chart_a.surface or gluing.dst != chart_b.surface:
        raise ValueError(
            "gluing joins (%s,%s)->(%s,%s) but the faces carry "
            "(%s,%s)->(%s,%s)"
            % (gluing.src.surface, gluing.src.spine,
               gluing.dst.surface, gluing.dst.spine,
               chart_a.surface.surface, chart_a.surface.spine,
               chart_b.surface.surface, chart_b.surface.spine))
    if poly_a.point and poly_b.point:
        raise UnsupportedAssembling(
            "both sides carry a point piece; the result would need two")

    nv_a = poly_a.nv
    ne_a = len(poly_a.edges)

    union = SpecialPolyhedron(
        nv=nv_a + poly_b.nv,
        edges=list(poly_a.edges) + [
            (v0 + nv_a, s0, p0, v1 + nv_a, s1, p1)
            for (v0, s0, p0, v1, s1, p1) in poly_b.edges],
        circles=list(poly_a.circles) + list(poly_b.circles),
        regions=list(poly_a.regions) + list(poly_b.regions),
        point=poly_a.point or poly_b.point,
    )

    matching = _raw_matching(chart_a, chart_b, gluing)
    edge_pairs = {}
    for i, ea in enumerate(chart_a.letters):
        j = matching.letter_map[i]
        edge_pairs[ea] = (chart_b.letters[j] + ne_a,
                          matching.sign_map[i] == -1)
    class_map = _words.vertex_image(
        chart_a.raw_word, chart_b.raw_word, matching)
    verts_a = _class_vertices(poly_a, chart_a)
    verts_b = _class_vertices(poly_b, chart_b)
    vertex_pairs = [
        (verts_a[cls], verts_b[class_map[cls]] + nv_a)
        for cls in sorted(verts_a)]

    table = union.slot_table()
    connectors = {}
    for va, vb in vertex_pairs:
        germ_a, germ_b, t = _splice_transport(union, table, va, vb,
                                              edge_pairs)
        connectors[germ_a] = (germ_b, t)
        connectors[germ_b] = (germ_a, _invert_wings(t))

    dead_edges = set(edge_pairs) | {e for e, _f in edge_pairs.values()}
    dead_vertices = {v for pair in vertex_pairs for v in pair}
    chains = _ChainBundle(union, connectors)

    # The hexagons vanish with their spine edges.  Each spine edge's third
    # wing faced away from the boundary; that face continues across the
    # demoted vertex onto the leg sitting in the fourth slot, so we track
    # it by the leg wing claiming the same sector.
    dead_forward = {}
    for poly, face, translate_edge in (
            (poly_a, face_a, lambda e: e),
            (poly_b, face_b, lambda e: e + ne_a)):
        for e_local, p_wing in _hexagon_p_wings(poly, face).items():
            e = translate_edge(e_local)
            v, s_e, p_e = _germ_fields(union.edges[e], 0)
            o = wing_other_slot(s_e, p_e, p_wing)
            leg, leg_end = table[(v, o)]
            if leg in dead_edges:
                raise AssertionError(
                    "the fourth slot at a spine vertex holds a spine edge")
            p_leg = _germ_fields(union.edges[leg], leg_end)[2]
            dead_forward[(e, p_wing)] = (leg, _partner_wing(o, p_leg, s_e))

    return _rebuild(
        union, dead_vertices, dead_edges, dead_forward, chains,
        sides=[
            (poly_a, {face_a}, lambda e, w: (e, w), 0, 0),
            (poly_b, {face_b}, lambda e, w: (e + ne_a, w),
             len(poly_a.circles), len(poly_a.regions))],
    )


# -- rebuilding after a surgery -------------------------------------------------


def _rebuild(union, dead_vertices, dead_edges, dead_forward, chains, sides,
             extra_vertices=0, band_edges=(), band_keys=None):
    """Assemble the result carrier and remap faces, marks and arcs.

    union holds the pre-surgery carrier in a common id space.  Kept edges
    are renumbered densely; chain edges turn into chains.new_edges and
    chains.new_circles; band_edges (already written against result vertex
    ids) are appended after them.  dead_forward sends a germ of a dead edge
    either to a surviving union germ or, via band_keys, to a result face
    key; germs of dead edges with no entry are dropped.  sides lists, per
    input, (poly, set of consumed mark faces, germ translation to union
    ids, circle offset, region offset).
    """
    chain_members = {}
    for idx, (_rec, members) in enumerate(chains.new_edges):
        for e, cmap in members.items():
            chain_members[e] = ("edge", idx, _invert_wings(cmap))
    for idx, (_mu, members) in enumerate(chains.new_circles):
        for e, cmap in members.items():
            chain_members[e] = ("circle", idx, _invert_wings(cmap))

    vertex_map = {}
    for v in range(union.nv):
        if v not in dead_vertices:
            vertex_map[v] = len(vertex_map)
    new_nv = len(vertex_map) + extra_vertices

    consumed = set(dead_edges) | set(chain_members)
    edge_map = {}
    new_edge_list = []
    for e in range(len(union.edges)):
        if e in consumed:
            continue
        edge_map[e] = len(new_edge_list)
        v0, s0, p0, v1, s1, p1 = union.edges[e]
        new_edge_list.append(
            (vertex_map[v0], s0, p0, vertex_map[v1], s1, p1))
    chain_base = len(new_edge_list)
    for rec, _members in chains.new_edges:
        v0, s0, p0, v1, s1, p1 = rec
        new_edge_list.append(
            (vertex_map[v0], s0, p0, vertex_map[v1], s1, p1))
    new_edge_list.extend(band_edges)

    circle_base = len(union.circles)
    result = SpecialPolyhedron(
        nv=new_nv,
        edges=new_edge_list,
        circles=list(union.circles) + [mu for mu, _m in chains.new_circles],
        regions=list(union.regions),
        point=union.point,
    )
    lookup = _face_lookup(result)

    def forward(germ):
        e, w = germ
        if e in dead_edges:
            target = dead_forward.get((e, w))
            if target is None:
                return None
            if band_keys is not None and target in band_keys:
                return band_keys[target]
            e, w = target
        if e in chain_members:
            kind, idx, inv = chain_members[e]
            if kind == "edge":
                return ("w", chain_base + idx, inv[w])
            return ("c", circle_base + idx, inv[w])
        return ("w", edge_map[e], w)

    face_maps = []
    for poly, dead_faces, translate, coff, roff in sides:
        side_map = {}
        for face in poly.faces():
            if face.index in dead_faces:
                continue
            targets = set()
            if face.kind == "trace":
                for germ in face.wings:
                    key = forward(translate(*germ))
                    if key is not None:
                        targets.add(lookup[key])
            elif face.kind == "circle":
                targets.add(lookup[("c", face.circle + coff, face.start)])
            else:
                targets.add(lookup[("r", face.region + roff)])
            if not targets:
                raise UnsupportedAssembling(
                    "face %d loses every trackable germ" % face.index)
            if len(targets) != 1:
                raise UnsupportedAssembling(
                    "face %d is torn across %d result faces; the merged "
                    "face is not a disc" % (face.index, len(targets)))
            side_map[face.index] = targets.pop()
        face_maps.append(side_map)

    for i, (poly, dead_faces, _t, _c, _r) in enumerate(sides):
        for fi, mark in poly.marks.items():
            if fi in dead_faces:
                continue
            target = face_maps[i][fi]
            if target in result.marks:
                raise AssertionError("two marks collide on face %d" % target)
            result.marks[target] = Mark(mark.surface, mark.spine)
        for arc in poly.arcs:
            new_ends = []
            for end in arc:
                if end == "point":
                    new_ends.append("point")
                    continue
                if end not in face_maps[i]:
                    raise UnsupportedAssembling(
                        "arc endpoint face %r was consumed by the surgery"
                        % (end,))
                new_ends.append(face_maps[i][end])
            result.arcs.append(tuple(new_ends))

    if result.euler() != 1:
        raise UnsupportedAssembling(
            "surgery produced Euler characteristic %d instead of 1; a "
            "glued face stopped being a disc" % result.euler())
    return result


# -- self-assembling -------------------------------------------------------------


def _canonical_frame(poly, chart):
    """Realize the canonical word of a charted hexagon in the carrier.

    Returns (letter map, vertex map): canonical letter -> (edge id, sign),
    with sign +1 when the canonical letter runs the carrier edge end 0 to
    end 1, and canonical corner class -> carrier vertex.
    """
    inverse = _words.invert_matching(
        chart.raw_word, chart.surface.word, chart.chart)
    letters = {
        l: (chart.letters[inverse.letter_map[l]], inverse.sign_map[l])
        for l in range(3)}
    class_map = _words.vertex_image(
        chart.surface.word, chart.raw_word, inverse)
    raw_vertices = _class_vertices(poly, chart)
    vertices = {c: raw_vertices[class_map[c]] for c in class_map}
    return letters, vertices


def self_assemble_carrier(poly, face_a, face_b, dmap):
    """Glue marked faces face_a and face_b of one carrier along a double
    point map laying the first spine over the second.  Adds two crossing
    vertices and replaces the six spine edges by the ten overlay bands."""
    if face_a == face_b:
        raise ValueError(
            "self-assembling needs two distinct boundary components, got "
            "face %d twice" % face_a)
    chart_a = boundary_surface(poly, face_a)
    chart_b = boundary_surface(poly, face_b)
    if dmap.src != chart_a.surface or dmap.dst != chart_b.surface:
        raise ValueError(
            "double point map lays (%s,%s) over (%s,%s) but the faces "
            "carry (%s,%s) and (%s,%s)"
            % (dmap.src.surface, dmap.src.spine,
               dmap.dst.surface, dmap.dst.spine,
               chart_a.surface.surface, chart_a.surface.spine,
               chart_b.surface.surface, chart_b.surface.spine))

    letters_a, verts_a = _canonical_frame(poly, chart_a)
    letters_b, verts_b = _canonical_frame(poly, chart_b)
    frames = {"A": letters_a, "B": letters_b}

    table = poly.slot_table()

    # Old spine germs, addressed the way the overlay rotations address
    # them: by side, canonical letter, and letter end (0 tail, 1 head).
    old_germ = {}
    for side, frame in frames.items():
        for letter, (e, sign) in frame.items():
            for letter_end in (0, 1):
                carrier_end = letter_end if sign == 1 else 1 - letter_end
                v, s, _p = _germ_fields(poly.edges[e], carrier_end)
                old_germ[(side, letter, letter_end)] = (v, s)

    def overlay_vertex(name):
        if name[0] == "a":
            return verts_a[int(name[1:])]
        if name[0] == "b":
            return verts_b[int(name[1:])]
        return poly.nv + int(name[1:])

    rotations = dmap.rotation_map()
    bands = dmap.band_map()
    per_letter = {}
    for (side, letter, seg) in bands:
        key = (side, letter)
        per_letter[key] = max(per_letter.get(key, -1), seg)

    # Place every band germ: result vertex, slot, rotation position.
    placement = {}
    for name, rot in rotations.items():
        vertex = overlay_vertex(name)
        for pos, germ in enumerate(rot):
            (side, letter, seg), band_end = germ
            if name[0] in ("a", "b"):
                # A germ at a spine vertex realizes one end of an old
                # spine edge and inherits its slot.
                letter_end = 0 if band_end == 0 else 1
                if band_end == 0 and seg != 0:
                    raise AssertionError("tail germ on an inner segment")
                if band_end == 1 and seg != per_letter[(side, letter)]:
                    raise AssertionError("head germ on an inner segment")
                want_v, slot = old_germ[(side, letter, letter_end)]
                if want_v != vertex:
                    raise AssertionError(
                        "overlay vertex %s does not sit at carrier vertex "
                        "%d" % (name, vertex))
            else:
                slot = pos
            placement[germ] = (vertex, slot, name, pos)

    # The slot across which a band germ's surface wings sit follows the
    # overlay rotation: side 0 is the flank toward the rotation successor.
    def flank_slot(name, pos, side_flag):
        rot = rotations[name]
        step = 1 if side_flag == 0 else -1
        other = rot[(pos + step) % len(rot)]
        return placement[other][1]

    def pressure_slot(germ):
        """Slot across which the band's wing 0 sits: the leg slot at a
        spine vertex, the same-strand partner at a crossing."""
        vertex, slot, name, pos = placement[germ]
        if name[0] in ("a", "b"):
            spine_slots = {placement[g][1] for g in rotations[name]}
            free = [s for s in range(4) if s not in spine_slots]
            if len(free) != 1:
                raise AssertionError(
                    "spine vertex %s does not keep exactly one leg" % name)
            return free[0]
        partner = rotations[name][(pos + 2) % 4]
        return placement[partner][1]

    band_records = []
    band_ids = {}
    for idx, band in enumerate(sorted(bands)):
        g0, g1, twist = bands[band]
        ends = []
        for band_end, germ in ((0, g0), (1, g1)):
            vertex, slot, name, pos = placement[germ]
            if band_end == 0:
                side_w1, side_w2 = 0, 1
            else:
                side_w1, side_w2 = 1 ^ twist, twist
            others = (
                pressure_slot(germ),
                flank_slot(name, pos, side_w1),
                flank_slot(name, pos, side_w2),
            )
            # Result vertex ids: old vertices keep their ids (nothing is
            # deleted), crossings take nv and nv+1.
            ends.append((vertex, slot, perm_from_other_slots(slot, others)))
        band_records.append(ends[0] + ends[1])
        band_ids[band] = idx

    dead_edges = {e for frame in frames.values() for e, _s in frame.values()}
    if len(dead_edges) != 6:
        raise AssertionError("expected six spine edges, found %d"
                             % len(dead_edges))

    # After the surgery the face that pressed against a spine edge from
    # inside runs along the whole band chain; track it through wing 0 of
    # the chain's first segment.
    kept = len(poly.edges) - 6
    dead_forward = {}
    band_keys = {}
    for side, face in (("A", face_a), ("B", face_b)):
        frame = frames[side]
        p_wings = _hexagon_p_wings(poly, face)
        for letter, (e, _sign) in frame.items():
            token = ("band", side, letter)
            dead_forward[(e, p_wings[e])] = token
            band_keys[token] = (
                "w", kept + band_ids[(side, letter, 0)], 0)

    return _rebuild(
        poly_for_union(poly), set(), dead_edges, dead_forward,
        _EmptyChains(), sides=[
            (poly, {face_a, face_b}, lambda e, w: (e, w), 0, 0)],
        extra_vertices=2, band_edges=band_records, band_keys=band_keys,
    )


def poly_for_union(poly):
    """A shallow working copy so _rebuild never mutates the input."""
    return SpecialPolyhedron(
        nv=poly.nv,
        edges=list(poly.edges),
        circles=list(poly.circles),
        regions=list(poly.regions),
        point=poly.point,
    )


# -- connected sum ---------------------------------------------------------------


def _sum_anchor(poly, face_map):
    """Arc endpoint on one side of a connected sum: the point piece when
    present, otherwise the lowest unmarked face."""
    if poly.point:
        return "point"
    for face in poly.faces():
        if face.index not in poly.marks:
            return face_map[face.index]
    raise UnsupportedAssembling(
        "no unmarked face to anchor the connecting arc")


def connected_sum_carriers(poly_a, poly_b):
    """Disjoint union of two carriers joined by one arc away from all
    marked faces."""
    if poly_a.point and poly_b.point:
        raise UnsupportedAssembling(
            "both sides carry a point piece; the result would need two")
    nv_a = poly_a.nv
    ne_a = len(poly_a.edges)
    union = SpecialPolyhedron(
        nv=nv_a + poly_b.nv,
        edges=list(poly_a.edges) + [
            (v0 + nv_a, s0, p0, v1 + nv_a, s1, p1)
            for (v0, s0, p0, v1, s1, p1) in poly_b.edges],
        circles=list(poly_a.circles) + list(poly_b.circles),
        regions=list(poly_a.regions) + list(poly_b.regions),
        point=poly_a.point or poly_b.point,
    )
    lookup = _face_lookup(union)

    face_maps = []
    sides = [
        (poly_a, lambda e, w: (e, w), 0, 0),
        (poly_b, lambda e, w: (e + ne_a, w),
         len(poly_a.circles), len(poly_a.regions))]
    for poly, translate, coff, roff in sides:
        side_map = {}
        for face in poly.faces():
            if face.kind == "trace":
                germ = min(face.wings)
                side_map[face.index] = lookup[("w",) + translate(*germ)]
            elif face.kind == "circle":
                side_map[face.index] = lookup[
                    ("c", face.circle + coff, face.start)]
            else:
                side_map[face.index] = lookup[("r", face.region + roff)]
        face_maps.append(side_map)

    for i, (poly, _t, _c, _r) in enumerate(sides):
        for fi, mark in poly.marks.items():
            union.marks[face_maps[i][fi]] = Mark(mark.surface, mark.spine)
        for arc in poly.arcs:
            union.arcs.append(tuple(
                "point" if end == "point" else face_maps[i][end]
                for end in arc))

    union.arcs.append((
        _sum_anchor(poly_a, face_maps[0]),
        _sum_anchor(poly_b, face_maps[1])))
    if union.euler() != 1:
        raise AssertionError(
            "connected sum lost Euler characteristic 1 (%d)" % union.euler())
    return union
