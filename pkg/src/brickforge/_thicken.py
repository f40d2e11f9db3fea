"""Thickening: decide whether a closed carrier is the spine of a compact
3-manifold and classify the boundary surfaces of the thickening.

The regular neighborhood of the singular graph is built from one ball per
vertex and one drum (triod cross-section times an interval) per edge.  Its
boundary surface carries a polygon structure:

* per ball: the vertex link is the tetrahedron 1-skeleton drawn on the
  sphere; removing the four slot discs leaves four hexagonal "free
  triangles" whose sides alternate between sector-arcs (the face germs
  crossing the ball) and zone-arcs (pieces of the slot circles);
* per drum: three wing-lines (the prong tips swept along the edge)
  cutting the drum side into three gap-bands.

Each face of the carrier prints a closed curve on this surface, made of
wing-lines and sector-arcs.  The face's plate (disc times interval) can
be attached iff the curve is two-sided; a one-sided curve is exactly the
plate-monodromy obstruction, and the carrier is then not thickenable.

When every curve is two-sided, surgery along all curves (cut the curve
neighborhoods, glue back two flat copies of every face) produces the
boundary of the thickened manifold.  Components are classified by Euler
characteristic and orientability, and each records which flat copies it
contains, so marked hexagons can be matched to their boundary surfaces.

Ball geometry is fixed once: slot rays at (1,1,1), (1,-1,-1), (-1,1,-1),
(-1,-1,1); viewed from outside the ball the three other slots appear
counterclockwise around slot s in the order CYCLES[s].  Free triangle m
(opposite slot m) is counterclockwise when its corners are visited in
reversed CYCLES[m] order.

Vertex-free carriers (circle pods, regions, arcs, the point) are
thickened by their own closed-form rules; carriers mixing vertices with
those pieces are out of scope and raise UnsupportedThickening.
"""

from __future__ import annotations

from ._model import mu_orbits, wing_other_slot

CYCLES = ((1, 2, 3), (0, 3, 2), (3, 0, 1), (2, 1, 0))


class UnsupportedThickening(Exception):
    """Carrier shape outside the thickening engine's scope."""


class BoundaryComponent:
    __slots__ = ("chi", "orientable", "flats")

    def __init__(self, chi, orientable, flats):
        self.chi = chi
        self.orientable = orientable
        self.flats = frozenset(flats)

    @property
    def kind(self):
        if self.chi == 2:
            return "sphere"
        if self.chi == 1:
            return "projective"
        if self.chi == 0:
            if self.orientable is True:
                return "torus"
            if self.orientable is False:
                return "klein"
        return "other"

    def __repr__(self):
        return "BoundaryComponent(chi=%d, %s)" % (self.chi, self.kind)


class ThickeningResult:
    __slots__ = ("thickenable", "obstruction", "components")

    def __init__(self, thickenable, obstruction=None, components=()):
        self.thickenable = thickenable
        self.obstruction = obstruction
        self.components = tuple(components)

    def boundary_kinds(self):
        return sorted(c.kind for c in self.components)

    @property
    def unexpected_boundary(self):
        return any(c.kind in ("projective", "other")
                   for c in self.components)

    def __repr__(self):
        if not self.thickenable:
            return "ThickeningResult(not thickenable: %s)" % self.obstruction
        return "ThickeningResult(%s)" % ", ".join(self.boundary_kinds())


class _UF:
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


def thicken(poly):
    """Thicken a closed carrier; see the module docstring."""
    has_special = poly.circles or poly.regions or poly.arcs or poly.point
    if poly.nv and has_special:
        raise UnsupportedThickening(
            "carrier mixes vertices with circles/regions/arcs")
    if poly.nv:
        return _thicken_standard(poly)
    if poly.marks:
        raise UnsupportedThickening("marks on a vertex-free carrier")
    return _thicken_special(poly)


# -- standard (vertexed) carriers --------------------------------------------

def _arrival_fields(rec, end):
    """(vertex, slot, perm) of an edge record at the given end."""
    base = 3 * end
    return rec[base], rec[base + 1], rec[base + 2]


def _walk_face(poly, face):
    """Walk one trace face; return its curve and side data.

    Returns (steps, sides, two_sided) where steps is the flat boundary
    word (a list of directed structural edges shared with the band and
    triangle words) and sides[0], sides[1] list the pieces touched on the
    two sides of the curve.  When the curve is one-sided, two_sided is
    False and the rest is meaningless.
    """
    trav = face.traversals
    k = len(trav)
    e0, w0, _ = trav[0]
    others0 = [w for w in range(3) if w != w0]
    side = others0[0]          # side 0 starts at the smaller other wing
    anti = others0[1]
    steps = []
    sides = ([], [])
    for i in range(k):
        e, w, d = trav[i]
        rec = poly.edges[e]
        steps.append(("wl", e, w, d, 1 - d))
        ws = [x for x in range(3) if x != w]
        sides[0].append(("G", e, _pair(w, side)))
        sides[1].append(("G", e, _pair(w, anti)))
        # junction at the arrival end
        v, s, p = _arrival_fields(rec, 1 - d)
        o_of = [wing_other_slot(s, p, x) for x in range(3)]
        o = o_of[w]
        a, b = ws
        m_side = o_of[b] if side == a else o_of[a]
        m_anti = o_of[b] if anti == a else o_of[a]
        steps.append(("sec", v, s, o))
        sides[0].append(("T", v, m_side))
        sides[1].append(("T", v, m_anti))
        # next traversal enters the edge at slot o
        e2, w2, d2 = trav[(i + 1) % k]
        rec2 = poly.edges[e2]
        v2, s2, p2 = _arrival_fields(rec2, d2)
        if (v2, s2) != (v, o):
            raise AssertionError("face trace does not chain through balls")
        o2_of = [wing_other_slot(s2, p2, x) for x in range(3)]
        if o2_of[w2] != s:
            raise AssertionError("face trace wing mismatch at a ball")
        a2, b2 = [x for x in range(3) if x != w2]
        if m_side == o2_of[b2]:
            side = a2
        elif m_side == o2_of[a2]:
            side = b2
        else:
            raise AssertionError("side tracking lost at a ball")
        if m_anti == o2_of[b2]:
            anti = a2
        elif m_anti == o2_of[a2]:
            anti = b2
        else:
            raise AssertionError("side tracking lost at a ball")
    two_sided = {side, anti} == set(others0) and side == others0[0]
    if not two_sided and {side, anti} != set(others0):
        raise AssertionError("side pair broken after a full cycle")
    return steps, sides, two_sided


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def _edge_slot_map(poly):
    out = {}
    for ei, rec in enumerate(poly.edges):
        for end in (0, 1):
            v, s, _ = _arrival_fields(rec, end)
            out[(v, s)] = (ei, end)
    return out


def _thicken_standard(poly):
    faces = poly.faces()
    walks = {}
    for f in faces:
        if f.kind != "trace":
            raise UnsupportedThickening("non-trace face on vertexed carrier")
        steps, sides, two_sided = _walk_face(poly, f)
        if not two_sided:
            return ThickeningResult(
                False,
                obstruction="face %d attaches along a one-sided curve"
                % f.index)
        walks[f.index] = (steps, sides)

    uf = _UF()
    slot_map = _edge_slot_map(poly)
    # zone-arcs join each free triangle to the gap-bands around it
    for (v, s), (ei, end) in slot_map.items():
        rec = poly.edges[ei]
        _, _, p = _arrival_fields(rec, end)
        o_of = [wing_other_slot(s, p, x) for x in range(3)]
        for c in range(3):
            a, b = [x for x in range(3) if x != c]
            uf.union(("T", v, o_of[c]), ("G", ei, _pair(a, b)))
    for fi, (_steps, sides) in walks.items():
        for sigma in (0, 1):
            flat = ("F", fi, sigma)
            for piece in sides[sigma]:
                uf.union(flat, piece)

    # cell census per component
    chi = {}

    def _add(piece, dv=0, de=0, df=0):
        root = uf.find(piece)
        v, e, f = chi.get(root, (0, 0, 0))
        chi[root] = (v + dv, e + de, f + df)

    for v in range(poly.nv):
        for m in range(4):
            _add(("T", v, m), df=1)
    for ei, rec in enumerate(poly.edges):
        for pr in ((0, 1), (0, 2), (1, 2)):
            _add(("G", ei, pr), df=1)
    for fi in walks:
        _add(("F", fi, 0), df=1)
        _add(("F", fi, 1), df=1)
    # wing-line copies and split tips (one tip per wing at each edge end)
    for ei in range(len(poly.edges)):
        for w in range(3):
            for x in (y for y in range(3) if y != w):
                _add(("G", ei, _pair(w, x)), de=1)
    for (_v, _s), (ei, _end) in slot_map.items():
        for w in range(3):
            for x in (y for y in range(3) if y != w):
                _add(("G", ei, _pair(w, x)), dv=1)
    # sector-arc copies and zone-arcs
    for v in range(poly.nv):
        for m in range(4):
            # zone-arcs avoiding tip m at the three slots of triangle m
            _add(("T", v, m), de=3)
        for i in range(4):
            for j in range(i + 1, 4):
                k, l = [m for m in range(4) if m not in (i, j)]
                _add(("T", v, k), de=1)
                _add(("T", v, l), de=1)

    comps = {}
    for root, (cv, ce, cf) in chi.items():
        comps[root] = cv - ce + cf

    total = sum(comps.values())
    if total != 2 * poly.euler():
        raise AssertionError(
            "boundary Euler characteristic %d != twice carrier's %d"
            % (total, poly.euler()))

    orient = _orientability_standard(poly, walks, slot_map, uf)
    flats = {}
    for fi in walks:
        for sigma in (0, 1):
            flats.setdefault(uf.find(("F", fi, sigma)), set()).add(
                (fi, sigma))
    components = [
        BoundaryComponent(comps[root], orient.get(root),
                          flats.get(root, ()))
        for root in sorted(comps, key=repr)]
    return ThickeningResult(True, components=components)


def _orientability_standard(poly, walks, slot_map, uf):
    """Per-component orientability via face-orientation propagation."""
    # Collect, per structural edge copy, its two (face piece, direction)
    # occurrences; equal directions force opposite face orientations.
    occ = {}

    def _use(key, piece, direction):
        occ.setdefault(key, []).append((piece, direction))

    for v in range(poly.nv):
        for m in range(4):
            c0, c1, c2 = tuple(reversed(CYCLES[m]))
            corners = (c0, c1, c2)
            for i in range(3):
                ci = corners[i]
                cn = corners[(i + 1) % 3]
                cp = corners[(i - 1) % 3]
                _use(("z", v, ci, m), ("T", v, m),
                     ((v, ci, cp), (v, ci, cn)))
                _use(("sec2", v, _pair(ci, cn), m), ("T", v, m),
                     ((v, ci, cn), (v, cn, ci)))
    for ei, rec in enumerate(poly.edges):
        ends = [_arrival_fields(rec, end) for end in (0, 1)]
        o_at = [
            [wing_other_slot(s, p, x) for x in range(3)]
            for (_v, s, p) in ends]
        for a in range(3):
            for b in range(a + 1, 3):
                c = 3 - a - b
                piece = ("G", ei, (a, b))
                _use(("wl2", ei, a, b), piece, (0, 1))
                v1, s1, _ = ends[1]
                _use(("z", v1, s1, o_at[1][c]), piece,
                     ((v1, s1, o_at[1][a]), (v1, s1, o_at[1][b])))
                _use(("wl2", ei, b, a), piece, (1, 0))
                v0, s0, _ = ends[0]
                _use(("z", v0, s0, o_at[0][c]), piece,
                     ((v0, s0, o_at[0][b]), (v0, s0, o_at[0][a])))
    for fi, (steps, sides) in walks.items():
        for sigma in (0, 1):
            flat = ("F", fi, sigma)
            wl_i = 0
            sec_i = 0
            for step in steps:
                if step[0] == "wl":
                    _, e, w, d0, d1 = step
                    gpiece = sides[sigma][2 * wl_i]
                    x = gpiece[2][0] if gpiece[2][1] == w else gpiece[2][1]
                    _use(("wl2", e, w, x), flat, (d0, d1))
                    wl_i += 1
                else:
                    _, v, s, o = step
                    tpiece = sides[sigma][2 * sec_i + 1]
                    _use(("sec2", v, _pair(s, o), tpiece[2]), flat,
                         ((v, s, o), (v, o, s)))
                    sec_i += 1

    sign = {}
    orientable = {}
    adj = {}
    for key, uses in occ.items():
        if len(uses) != 2:
            raise AssertionError(
                "structural edge %r has %d face sides" % (key, len(uses)))
        (p1, d1), (p2, d2) = uses
        if d1 != d2 and d1 != (d2[1], d2[0]):
            raise AssertionError(
                "mismatched directions on structural edge %r" % (key,))
        flip = d1 == d2
        adj.setdefault(p1, []).append((p2, flip))
        adj.setdefault(p2, []).append((p1, flip))
    for start in adj:
        if start in sign:
            continue
        root = uf.find(start)
        ok = orientable.setdefault(root, True)
        sign[start] = 1
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt, flip in adj[cur]:
                want = -sign[cur] if flip else sign[cur]
                if nxt not in sign:
                    sign[nxt] = want
                    stack.append(nxt)
                elif sign[nxt] != want:
                    ok = False
        orientable[root] = orientable[root] and ok
    return orientable


# -- vertex-free carriers -----------------------------------------------------

def _perm_pow(mu, k):
    out = list(range(3))
    for _ in range(k):
        out = [mu[o] for o in out]
    return tuple(out)


def _thicken_special(poly):
    """Pods, regions, arcs, point: closed-form thickening."""
    faces = poly.faces()
    uf = _UF()
    comp_orient = {}
    comp_flats = {}
    pieces = []

    for ci, mu in enumerate(poly.circles):
        orbits = mu_orbits(mu)
        # two-sidedness of every wing-curve
        for orbit in orbits:
            k = len(orbit)
            muk = _perm_pow(mu, k)
            w = orbit[0]
            rest = [x for x in range(3) if x != w]
            if muk[rest[0]] != rest[0]:
                return ThickeningResult(
                    False,
                    obstruction="circle %d face attaches along a "
                    "one-sided curve" % ci)
        face_of_orbit = {}
        for f in faces:
            if f.kind == "circle" and f.circle == ci:
                face_of_orbit[f.start] = f.index
        if len(face_of_orbit) != len(orbits):
            raise UnsupportedThickening("pod faces do not match orbits")
        # side classes: orbits of mu acting on (prong, other-prong) pairs
        pair_orbit = {}
        for orbit in orbits:
            w = orbit[0]
            for x in (y for y in range(3) if y != w):
                if (w, x) in pair_orbit:
                    continue
                cls = []
                cur = (w, x)
                while cur not in pair_orbit:
                    pair_orbit[cur] = (w, x)
                    cls.append(cur)
                    cur = (mu[cur[0]], mu[cur[1]])
                if cur != (w, x):
                    raise AssertionError("pair orbit did not close")
        # flats: one per (face, side class); the side class of a flat is
        # keyed by the pair-orbit representative
        flat_of = {}
        for orbit in orbits:
            w = orbit[0]
            fi = face_of_orbit[orbit[0]]
            for si, x in enumerate(y for y in range(3) if y != w):
                piece = ("PF", ci, fi, si)
                pieces.append(piece)
                flat_of[pair_orbit[(w, x)]] = piece
                comp_flats.setdefault(piece, set()).add((fi, si))
        # gap pieces: orbits of mu on unordered prong pairs
        gap_orbit = {}
        gap_data = {}
        for a in range(3):
            for b in range(a + 1, 3):
                if (a, b) in gap_orbit:
                    continue
                cur = (a, b)
                length = 0
                flipped = False
                while True:
                    gap_orbit[_pair(*cur)] = (a, b)
                    cur = (mu[cur[0]], mu[cur[1]])
                    length += 1
                    if _pair(*cur) == (a, b):
                        flipped = cur != (a, b)
                        break
                gap_data[(a, b)] = (length, flipped)
        for rep, (length, flipped) in gap_data.items():
            a, b = rep
            piece = ("PG", ci, rep)
            pieces.append(piece)
            # boundary runs along the wing-curve copies; join the flats
            if flipped:
                sides = [pair_orbit[(a, b)]]
                nonor = True
            else:
                sides = [pair_orbit[(a, b)], pair_orbit[(b, a)]]
                nonor = False
            for key in sides:
                uf.union(piece, flat_of[key])
            if nonor:
                comp_orient[piece] = False

    # regions
    region_pieces = []
    for ri, (rchi, orientable, two_sided) in enumerate(poly.regions):
        face_index = None
        for f in faces:
            if f.kind == "region" and f.region == ri:
                face_index = f.index
        if two_sided:
            for side in (0, 1):
                piece = ("R", ri, side)
                pieces.append(piece)
                region_pieces.append((piece, rchi, orientable))
                comp_flats.setdefault(piece, set()).add((face_index, side))
        else:
            piece = ("R", ri, 0)
            pieces.append(piece)
            # boundary of the twisted I-bundle: connected double cover
            cover_chi = 2 * rchi
            cover_orientable = None
            if rchi == 1 and not orientable:
                cover_orientable = True      # over the projective plane
            region_pieces.append((piece, cover_chi, cover_orientable))
            comp_flats.setdefault(piece, set()).add((face_index, 0))
            comp_flats.setdefault(piece, set()).add((face_index, 1))

    if poly.point:
        pieces.append(("PT",))

    # arcs: each is a tube joining flat sides; resolve endpoints
    arc_joins = []
    for arc in poly.arcs:
        cands = []
        for endpoint in arc:
            if endpoint == "point":
                cands.append([("PT",)])
                continue
            holders = [p for p, fl in comp_flats.items()
                       if any(f == endpoint for f, _ in fl)]
            holders = sorted({uf.find(p) for p in holders}, key=repr)
            if not holders:
                raise UnsupportedThickening("arc endpoint face %r has no "
                                            "thickened side" % (endpoint,))
            cands.append(holders)
        arc_joins.append(cands)

    # assemble components
    flat_chi = {}
    for piece in pieces:
        if piece[0] == "PF":
            flat_chi[piece] = 1
        elif piece[0] == "PG":
            flat_chi[piece] = 0
        elif piece[0] == "PT":
            flat_chi[piece] = 2
    for piece, pchi, _por in region_pieces:
        flat_chi[piece] = pchi

    for cands in arc_joins:
        a, b = cands
        if len(a) == 1 and len(b) == 1:
            uf.union(a[0], b[0])
        elif len(a) == 2 and len(b) == 2 and set(a) == set(b):
            uf.union(a[0], a[1])
        else:
            raise UnsupportedThickening("ambiguous arc attachment sides")

    agg_chi = {}
    agg_flats = {}
    agg_orient = {}
    for piece in pieces:
        root = uf.find(piece)
        agg_chi[root] = agg_chi.get(root, 0) + flat_chi.get(piece, 0)
        for fl in comp_flats.get(piece, ()):
            agg_flats.setdefault(root, set()).add(fl)
        if piece in comp_orient:
            agg_orient[root] = agg_orient.get(root, True) and \
                comp_orient[piece]
    for piece, _pchi, por in region_pieces:
        root = uf.find(piece)
        if por is not None:
            agg_orient[root] = agg_orient.get(root, True) and por
    for cands in arc_joins:
        root = uf.find(cands[0][0])
        agg_chi[root] -= 2

    components = []
    for root in sorted(agg_chi, key=repr):
        chi = agg_chi[root]
        orientable = agg_orient.get(root)
        if orientable is None:
            orientable = True if chi == 2 else None
        components.append(BoundaryComponent(
            chi, orientable, agg_flats.get(root, ())))
    return ThickeningResult(True, components=components)


# -- pair validity -------------------------------------------------------------

MARK_KIND = {"T": "torus", "K": "klein"}


def valid_pair_profile(poly, result):
    """True when the thickening has the boundary pattern of a marked pair:
    one sphere plus one torus/Klein-bottle component per mark, each
    carrying exactly one flat copy of its hexagon."""
    if not result.thickenable:
        return False
    comps = result.components
    spheres = [c for c in comps if c.kind == "sphere"]
    rest = [c for c in comps if c.kind != "sphere"]
    if len(spheres) != 1 or len(rest) != len(poly.marks):
        return False
    seen = set()
    for comp in rest:
        marked = {fi for fi, _side in comp.flats if fi in poly.marks}
        if len(marked) != 1:
            return False
        fi = marked.pop()
        if fi in seen:
            return False
        if comp.kind != MARK_KIND[poly.marks[fi].surface]:
            return False
        seen.add(fi)
    return len(seen) == len(poly.marks)
