"""Marked boundary surfaces: spines, gluings, and Klein-bottle data.

A marked boundary component of a pair is a torus or Klein bottle carrying
a trivalent spine with two vertices, either a theta graph (two vertices
joined by three edges) or a sigma graph (a loop at each vertex plus a
bridge).  Cutting the surface along the spine leaves a single hexagonal
disc, so the whole marked surface is captured by the cyclic word its
hexagon reads along the spine edges.  This module turns that word into
usable structure:

  * MarkedSurface: the (surface, spine) combination with its hexagon word,
    derived from the same local building blocks the carrier layer uses.
  * enumerate_gluings: the finitely many ways to match two marked
    boundaries, reduced by the symmetries either side actually realizes.
  * enumerate_double_point_maps: spine-crossing positions used when both
    boundaries belong to one skeleton and get identified with exactly two
    transverse double points.
  * NormalCurve / classify_loops_klein: normal curves in the two-triangle
    triangulation of the Klein bottle, with first homology and
    orientation behaviour of every loop class.
  * mcg_klein: the four mapping classes of the Klein bottle acting on
    first homology.
  * dehn_fill_klein: the unique filling of a Klein-bottle boundary.
  * serialize_klein_table / parse_klein_table: the klein-v1 text format.

There is no (torus, sigma) marked surface: a sigma spine forces the two
loops to be one-sided, so its closed-up surface is always a Klein bottle.
The constructors reject the combination.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from . import _words
from ._builders import _hex_cycle, gadget_orbits
from ._model import face_is_hexagon, mark_spine_edges

SURFACE_KINDS = ("T", "K")
SPINE_KINDS = ("theta", "sigma")

__all__ = [
    "MarkedSurface", "GluingMap", "MappingClass", "NormalCurve",
    "LoopClass", "BoundaryChart", "marked_surface", "boundary_surface",
    "enumerate_gluings", "enumerate_double_point_maps",
    "classify_loops_klein", "mcg_klein", "dehn_fill_klein",
    "serialize_klein_table", "parse_klein_table",
]


# -- marked surfaces ---------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _reference_words():
    """Canonical hexagon word of each buildable (surface, spine) pair.

    Words are read off the hexagon traces of the spine gadgets the carrier
    layer glues from, then canonicalized.  All gadget variants of one
    (surface, spine) pair must agree up to dihedral moves and relabeling;
    anything else would mean two inequivalent spine embeddings, which the
    builder's geometry does not produce.
    """
    words = {}
    for spine in SPINE_KINDS:
        for gadget in gadget_orbits(spine):
            cycle = _hex_cycle(gadget.edges)
            raw = tuple((e, 1 if d == 0 else -1) for e, _w, d in cycle)
            canon = _words.canonical_word(raw)
            key = (gadget.kind, spine)
            if key in words and words[key] != canon:
                raise AssertionError(
                    "gadget words disagree for %r: %r vs %r"
                    % (key, words[key], canon))
            words[key] = canon
    return words


@dataclass(frozen=True)
class MarkedSurface:
    """A torus or Klein bottle with an embedded two-vertex spine.

    `word` is the cyclic hexagon word: six (letter, sign) sides, letters
    are the three spine edges, sign +1 when the side runs along the edge
    tail to head.  The constructor checks that the word really closes up
    to the claimed surface and spine shape.
    """

    surface: str
    spine: str
    word: tuple

    def __post_init__(self):
        if self.surface not in SURFACE_KINDS:
            raise ValueError("surface must be 'T' or 'K', got %r"
                             % (self.surface,))
        if self.spine not in SPINE_KINDS:
            raise ValueError("spine must be 'theta' or 'sigma', got %r"
                             % (self.spine,))
        if self.surface == "T" and self.spine == "sigma":
            raise ValueError("a sigma spine has one-sided loops; no torus "
                             "carries one")
        object.__setattr__(self, "word", tuple(
            (int(l), int(s)) for l, s in self.word))
        comp = _words.word_complex(self.word)
        if comp["shape"] != self.spine:
            raise ValueError("word %r spells a %s spine, not %s"
                             % (self.word, comp["shape"], self.spine))
        want_orientable = self.surface == "T"
        if comp["orientable"] != want_orientable:
            raise ValueError("word %r closes to the wrong surface kind"
                             % (self.word,))

    @property
    def loops(self):
        """Letters whose edge closes into a loop (sigma only)."""
        return _words.word_complex(self.word)["loops"]

    @property
    def bridge(self):
        """The non-loop letter of a sigma spine, else None."""
        comp = _words.word_complex(self.word)
        if comp["shape"] != "sigma":
            return None
        return comp["bridges"][0]

    def cycle_orientations(self):
        """{cycle name: True if orientation-preserving} for the embedded
        essential cycles of the spine (letter pairs for theta, single
        letters for sigma)."""
        return {
            name: _words.loop_preserves_orientation(self.word, path)
            for name, path in _words.spine_cycles(self.word)
        }

    @property
    def distinguished_edge(self):
        """The spine edge every self-homeomorphism fixes.

        For a sigma spine this is the bridge.  For a theta spine on the
        Klein bottle it is the edge shared by the two orientation-reversing
        loops.  A theta spine on the torus has no distinguished edge: all
        three play the same role.
        """
        if self.spine == "sigma":
            return self.bridge
        if self.surface == "T":
            return None
        reversing = [name for name, keep in self.cycle_orientations().items()
                     if not keep]
        if len(reversing) != 2:
            raise AssertionError(
                "a theta spine on the Klein bottle must have exactly two "
                "orientation-reversing loops, found %d" % len(reversing))
        shared = frozenset.intersection(*reversing)
        if len(shared) != 1:
            raise AssertionError("reversing loops share %d edges" % len(shared))
        return next(iter(shared))

    def canonical(self):
        """The same marked surface with its word in least form."""
        return MarkedSurface(self.surface, self.spine,
                             _words.canonical_word(self.word))


@functools.lru_cache(maxsize=None)
def marked_surface(surface, spine):
    """The canonical marked surface of one (surface, spine) combination."""
    if surface == "T" and spine == "sigma":
        raise ValueError("a sigma spine has one-sided loops; no torus "
                         "carries one")
    words = _reference_words()
    try:
        word = words[(surface, spine)]
    except KeyError:
        raise ValueError("no marked surface (%r, %r)" % (surface, spine))
    return MarkedSurface(surface, spine, word)


@dataclass(frozen=True)
class BoundaryChart:
    """A marked boundary of a carrier, charted against its canonical model.

    `sides` lists the hexagon's six traversal steps as (edge id, direction)
    with direction 0 running the carrier edge end 0 to end 1.  `letters`
    maps raw word letters (0, 1, 2) to carrier edge ids.  `chart` is the
    dihedral matching carrying the raw word onto `surface.word`, chosen
    deterministically, so gluing data stated on the canonical word can be
    pulled back to concrete carrier edges.
    """

    face_index: int
    surface: MarkedSurface
    sides: tuple
    letters: tuple
    raw_word: tuple
    chart: object

    def carrier_edge(self, canonical_letter):
        """Carrier edge id realizing a letter of the canonical word."""
        inverse = _words.invert_matching(
            self.raw_word, self.surface.word, self.chart)
        return self.letters[inverse.letter_map[canonical_letter]]


def boundary_surface(poly, face_index):
    """Chart the marked hexagonal face `face_index` of a carrier.

    Raises KeyError when the face is not marked and ValueError when the
    marked face is not a hexagon (the carrier is then malformed).
    """
    mark = poly.marks[face_index]
    face = poly.faces()[face_index]
    if not face_is_hexagon(poly, face):
        raise ValueError("marked face %d is not a spine hexagon" % face_index)
    edge_ids = tuple(mark_spine_edges(poly, face_index))
    sides = tuple((e, d) for e, _w, d in face.traversals)
    raw = tuple((edge_ids.index(e), 1 if d == 0 else -1) for e, d in sides)
    model = marked_surface(mark.surface, mark.spine)
    charts = _words.matchings(raw, model.word)
    if not charts:
        raise AssertionError(
            "face %d reads %r which does not match the canonical %s/%s word"
            % (face_index, raw, mark.surface, mark.spine))
    return BoundaryChart(
        face_index=face_index,
        surface=model,
        sides=sides,
        letters=edge_ids,
        raw_word=raw,
        chart=charts[0],
    )


# -- gluings -----------------------------------------------------------------


@dataclass(frozen=True)
class GluingMap:
    """One equivalence class of attaching maps src -> dst.

    The map is recorded by its dihedral action on hexagon sides (side k of
    src goes to side rot+k of dst, or rot-k-1 reversed when refl is set)
    together with the induced edge bijection, per-edge orientation flips,
    and the induced map on spine vertices.  `index` is the position in the
    deterministic enumeration order, so maps can be named g0, g1, ...
    """

    src: MarkedSurface
    dst: MarkedSurface
    rot: int
    refl: bool
    edge_map: tuple
    edge_flip: tuple
    vertex_map: tuple
    index: int

    def side_image(self, k):
        return (self.rot - k - 1) % 6 if self.refl else (self.rot + k) % 6

    def matching(self):
        return _words.Matching(self.rot, self.refl, self.edge_map,
                               self.edge_flip)

    def label(self):
        return "g%d" % self.index


def _orbit_key(matching):
    return (matching.refl, matching.rot)


def enumerate_gluings(src, dst):
    """All attaching maps src -> dst up to realized spine symmetries.

    Two matchings give homeomorphic assembled results whenever they differ
    by a self-matching on either side, so the list holds one representative
    per double coset, in a fixed deterministic order.  Mismatched surface
    or spine kinds admit no matchings at all and yield an empty list.
    """
    if not isinstance(src, MarkedSurface) or not isinstance(dst, MarkedSurface):
        raise TypeError("enumerate_gluings wants two MarkedSurface values")
    all_maps = _words.matchings(src.word, dst.word)
    if not all_maps:
        return []
    sym_src = _words.self_matchings(src.word)
    sym_dst = _words.self_matchings(dst.word)
    seen = set()
    reps = []
    for m in sorted(all_maps, key=_orbit_key):
        if _orbit_key(m) in seen:
            continue
        orbit = set()
        for s in sym_src:
            after_src = _words.compose_matchings(
                src.word, src.word, dst.word, s, m)
            for d in sym_dst:
                full = _words.compose_matchings(
                    src.word, dst.word, dst.word, after_src, d)
                orbit.add(_orbit_key(full))
        seen.update(orbit)
        reps.append(m)
    out = []
    for index, m in enumerate(reps):
        vmap = _words.vertex_image(src.word, dst.word, m)
        out.append(GluingMap(
            src=src, dst=dst, rot=m.rot, refl=m.refl,
            edge_map=m.letter_map, edge_flip=m.sign_map,
            vertex_map=(vmap[0], vmap[1]), index=index))
    return out


def _as_component(value):
    if isinstance(value, BoundaryChart):
        return value.face_index, value.surface
    if isinstance(value, MarkedSurface):
        return None, value
    raise TypeError("expected a MarkedSurface or BoundaryChart, got %r"
                    % (value,))


def enumerate_double_point_maps(src, dst):
    """Spine-crossing identification positions between two boundaries.

    Used for self-assembling: the two marked boundaries belong to one
    skeleton and get identified by a homeomorphism throwing the source
    spine onto the target surface so that it crosses the target spine in
    exactly two transverse points.  Returns the finitely many combinatorial
    positions of that crossing picture up to realized symmetries of both
    spines.

    Arguments may be MarkedSurface values (abstract kinds) or
    BoundaryChart values naming concrete components.  Charts of one and
    the same component are rejected: identifying a boundary with itself
    is not an assembling.
    """
    key_a, surf_a = _as_component(src)
    key_b, surf_b = _as_component(dst)
    if key_a is not None and key_a == key_b:
        raise ValueError("self-assembling needs two distinct boundary "
                         "components, got face %d twice" % key_a)
    from . import _overlay
    return _overlay.enumerate_overlays(surf_a, surf_b)


# -- normal curves on the Klein bottle ---------------------------------------
#
# The Klein bottle is triangulated from one square with the left and right
# sides identified straight and the bottom and top identified with a flip.
# The diagonal cuts it into triangles T1 (below) and T2 (above).  The three
# edges after identification:
#
#   a: bottom = top, the order-two fiber class;
#   b: left = right, infinite order, orientation-reversing;
#   d: the diagonal, homologous to a + b.
#
# A normal curve meets each triangle in corner-cutting arcs.  The six
# coordinates count arcs per corner: (n, m, p) in T1 cutting the corners
# at (a,d), (a,b), (b,d), and (n2, m2, p2) in T2 cutting the corners at
# (d,a), (a,b), (b,d).  Counting points on each edge from both sides gives
# the matching equations; they force n2=n, m2=m, p2=p.

_EDGE_END = {
    "a": {"P0": 0, "P1": 1, "P2": 0, "P3": 1},
    "b": {"P1": 0, "P2": 1, "P0": 0, "P3": 1},
    "d": {"P0": 0, "P2": 1},
}

_H1_OF_EDGE = {"a": (1, 0), "b": (0, 1), "d": (1, 1)}


@dataclass(frozen=True)
class NormalCurve:
    """A normal curve in the two-triangle Klein bottle triangulation.

    coords = (n, m, p, n2, m2, p2), nonnegative arc counts as described in
    the module notes.  Construction validates the matching equations; use
    components() / h1_class() / orientation_preserving() to interrogate
    the curve.
    """

    coords: tuple

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != 6:
            raise ValueError("normal coordinates are six arc counts")
        if any(c < 0 for c in coords):
            raise ValueError("arc counts must be nonnegative")
        n, m, p, n2, m2, p2 = coords
        if n + m != n2 + m2:
            raise ValueError("matching fails on edge a: %d != %d"
                             % (n + m, n2 + m2))
        if m + p != m2 + p2:
            raise ValueError("matching fails on edge b: %d != %d"
                             % (m + p, m2 + p2))
        if n + p != n2 + p2:
            raise ValueError("matching fails on edge d: %d != %d"
                             % (n + p, n2 + p2))

    @property
    def weight(self):
        return sum(self.coords)

    @property
    def is_empty(self):
        return self.weight == 0

    def doubled(self):
        return NormalCurve(tuple(2 * c for c in self.coords))

    def _arcs(self):
        """Corner arcs as (side, corner, point, point) with points
        (edge, index).  Indices run along each edge; both triangles see
        the same indexing."""
        n, m, p, n2, m2, p2 = self.coords
        arcs = []
        for i in range(n):
            arcs.append((1, "P0", ("a", i), ("d", i)))
        for i in range(m):
            arcs.append((1, "P1", ("a", n + m - 1 - i), ("b", i)))
        for i in range(p):
            arcs.append((1, "P2", ("b", m + p - 1 - i), ("d", n + p - 1 - i)))
        for i in range(p2):
            arcs.append((2, "P0", ("b", i), ("d", i)))
        for i in range(n2):
            arcs.append((2, "P2", ("d", n + p - 1 - i), ("a", i)))
        for i in range(m2):
            arcs.append((2, "P3", ("a", n + m - 1 - i), ("b", m + p - 1 - i)))
        return arcs

    def _point_arcs(self):
        """{point: {side: (corner, other point)}}; every edge point must
        see exactly one arc from each triangle."""
        table = {}
        for side, corner, pt_a, pt_b in self._arcs():
            for pt, other in ((pt_a, pt_b), (pt_b, pt_a)):
                slot = table.setdefault(pt, {})
                if side in slot:
                    raise AssertionError(
                        "point %r hit twice from triangle %d" % (pt, side))
                slot[side] = (corner, other)
        for pt, slot in table.items():
            if len(slot) != 2:
                raise AssertionError("point %r misses a triangle" % (pt,))
        return table

    def components(self):
        """The closed components as (points, h1, crossings) tuples.

        points is a frozenset of (edge, index) pairs, h1 the (Z/2, Z)
        homology value (alpha, beta) accumulated along the walk with beta
        canonicalized to be nonnegative, crossings the per-edge crossing
        counts {edge: count}.
        """
        table = self._point_arcs()
        out = []
        visited = set()
        for start in sorted(table):
            if start in visited:
                continue
            points = []
            alpha = 0
            beta = 0
            crossings = {"a": 0, "b": 0, "d": 0}
            pt, in_side = start, 2
            while True:
                # Passing through pt: in along the arc on triangle in_side,
                # out along the other one.  Homotope both arcs to runs along
                # the crossed edge toward their corners; the passage crosses
                # the edge fully exactly when the corners sit at opposite
                # ends, directed by which end we came from.
                out_side = 3 - in_side
                corner_in = table[pt][in_side][0]
                corner_out, nxt = table[pt][out_side]
                edge = pt[0]
                end_in = _EDGE_END[edge][corner_in]
                end_out = _EDGE_END[edge][corner_out]
                if end_in != end_out:
                    direction = 1 if end_in == 0 else -1
                    da, db = _H1_OF_EDGE[edge]
                    alpha = (alpha + direction * da) % 2
                    beta = beta + direction * db
                crossings[edge] += 1
                points.append(pt)
                visited.add(pt)
                pt, in_side = nxt, out_side
                if pt == start and in_side == 2:
                    break
            out.append((frozenset(points), (alpha % 2, abs(beta)), crossings))
        return out

    def component_count(self):
        return len(self.components())

    def is_connected(self):
        return self.component_count() <= 1

    def h1_class(self):
        """Homology value of a connected curve; the empty curve is trivial."""
        comps = self.components()
        if len(comps) > 1:
            raise ValueError("h1_class needs a connected curve, this one "
                             "has %d components" % len(comps))
        if not comps:
            return (0, 0)
        return comps[0][1]

    def orientation_preserving(self):
        """True when the (connected) curve has two-sided neighborhood."""
        _alpha, beta = self.h1_class()
        return beta % 2 == 0


def _h1_name(h1):
    alpha, beta = h1
    if alpha == 0 and beta == 0:
        return "0"
    parts = []
    if alpha:
        parts.append("a")
    if beta == 1:
        parts.append("b")
    elif beta:
        parts.append("%db" % beta)
    return "+".join(parts)


def _h1_from_name(name):
    if name == "0":
        return (0, 0)
    alpha = 0
    beta = 0
    for part in name.split("+"):
        if part == "a":
            alpha = 1
        elif part == "b":
            beta = 1
        elif part.endswith("b"):
            beta = int(part[:-1])
        else:
            raise ValueError("bad homology name %r" % name)
    return (alpha, beta)


@dataclass(frozen=True)
class LoopClass:
    """An isotopy class of essential loops, keyed by unsigned homology.

    h1 = (alpha, beta) with alpha the Z/2 coefficient on the order-two
    class and beta >= 0 the coefficient on the infinite-order class; loops
    are unoriented so beta carries no sign.  coords is a least-weight
    normal curve realizing the class.
    """

    h1: tuple
    orientation_preserving: bool
    coords: tuple

    @property
    def name(self):
        return _h1_name(self.h1)


def classify_loops_klein(max_weight):
    """Connected normal curves on the Klein bottle up to isotopy class.

    Enumerates every solution of the matching equations with total weight
    at most max_weight, keeps the connected ones, and buckets them by
    (homology value, orientation behaviour).  The trivial class is always
    reported, realized by the empty curve.  Essential classes appear once
    max_weight reaches 2, and no new class ever shows up after weight 4:
    the Klein bottle has exactly four essential unoriented loop classes.
    """
    max_weight = int(max_weight)
    if max_weight < 0:
        raise ValueError("max_weight must be nonnegative")
    classes = {}
    trivial = LoopClass(h1=(0, 0), orientation_preserving=True,
                        coords=(0, 0, 0, 0, 0, 0))
    classes[((0, 0), True)] = trivial
    budget = max_weight // 2
    for n in range(budget + 1):
        for m in range(budget + 1 - n):
            for p in range(budget + 1 - n - m):
                # Solve the matching equations for the upper triangle and
                # check the derived equalities really came out.
                coords = (n, m, p, n, m, p)
                curve = NormalCurve(coords)
                if curve.is_empty or not curve.is_connected():
                    continue
                key = (curve.h1_class(), curve.orientation_preserving())
                old = classes.get(key)
                if old is None or (curve.weight, coords) < \
                        (sum(old.coords), old.coords):
                    classes[key] = LoopClass(
                        h1=key[0], orientation_preserving=key[1],
                        coords=coords)
    return sorted(classes.values(),
                  key=lambda c: (sum(c.coords), c.h1, c.coords))


def matching_solutions(max_weight):
    """All solutions of the matching equations with weight <= max_weight.

    Provided for the solver invariant: every solution satisfies n2=n,
    m2=m, p2=p, so the curve space is the nonnegative octant in (n, m, p).
    """
    max_weight = int(max_weight)
    out = []
    bound = max_weight + 1
    for coords in itertools.product(range(bound), repeat=6):
        if sum(coords) > max_weight:
            continue
        n, m, p, n2, m2, p2 = coords
        if n + m != n2 + m2 or m + p != m2 + p2 or n + p != n2 + p2:
            continue
        out.append(NormalCurve(coords))
    return out


# -- mapping classes of the Klein bottle --------------------------------------


@dataclass(frozen=True)
class MappingClass:
    """A mapping class of the Klein bottle, recorded by its action on
    first homology Z/2 x Z with basis (a, b).  Columns are images: the
    matrix ((x, y), (z, w)) sends a to x*a + z*b and b to y*a + w*b, with
    the first row read mod 2."""

    name: str
    matrix: tuple

    def apply(self, h1):
        alpha, beta = h1
        (x, y), (z, w) = self.matrix
        return ((x * alpha + y * beta) % 2, abs(z * alpha + w * beta))

    def compose(self, other):
        """self after other."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        top = ((a * e + b * g) % 2, (a * f + b * h) % 2)
        bottom = (c * e + d * g, c * f + d * h)
        product = (top, bottom)
        for cls in mcg_klein():
            if cls.matrix == product:
                return cls
        raise AssertionError("mapping class composition left the group: %r"
                             % (product,))


@functools.lru_cache(maxsize=None)
def mcg_klein():
    """The four mapping classes of the Klein bottle.

    The group is Z/2 x Z/2 and a class is pinned down by its homology
    action: identity; phi negating b; psi adding a to b; and their
    product.  The b-negating and b-shearing classes commute because 2a=0.
    """
    return (
        MappingClass("id", ((1, 0), (0, 1))),
        MappingClass("phi", ((1, 0), (0, -1))),
        MappingClass("psi", ((1, 1), (0, 1))),
        MappingClass("phipsi", ((1, 1), (0, -1))),
    )


# -- unique filling of a Klein boundary ---------------------------------------


def dehn_fill_klein(skeleton, face_index):
    """Fill a Klein-bottle boundary of a skeleton the only way there is.

    A Klein bottle bounds essentially uniquely: the only filling slope is
    the orientation-preserving loop with connected complement, so the
    filled pair does not depend on any choice.  A sigma-marked boundary is
    filled by assembling with the one-boundary solid Klein piece carrying
    a sigma spine; a theta-marked boundary uses its theta companion.
    Torus boundaries are rejected: a torus admits infinitely many
    inequivalent fillings.
    """
    from . import calculus
    return calculus.fill_klein_boundary(skeleton, face_index)


# -- klein-v1 text format ------------------------------------------------------


def serialize_klein_table(loop_classes, mapping_classes=None):
    """Render loop classes and mapping classes as klein-v1 text.

    One LOOP line per class: name, orientation flag, six coordinates.
    One MCG line per mapping class: name then the matrix row-major.
    Deterministic: inputs are emitted in sorted order.
    """
    if mapping_classes is None:
        mapping_classes = mcg_klein()
    lines = ["KLEIN v=1"]
    for cls in sorted(loop_classes, key=lambda c: (sum(c.coords), c.h1)):
        lines.append("LOOP %s %d %s" % (
            cls.name, 1 if cls.orientation_preserving else 0,
            " ".join(str(c) for c in cls.coords)))
    order = {"id": 0, "phi": 1, "psi": 2, "phipsi": 3}
    for cls in sorted(mapping_classes,
                      key=lambda c: order.get(c.name, len(order))):
        (a, b), (c, d) = cls.matrix
        lines.append("MCG %s %d %d %d %d" % (cls.name, a, b, c, d))
    return "\n".join(lines) + "\n"


def parse_klein_table(text):
    """Parse klein-v1 text back into (loop classes, mapping classes)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "KLEIN v=1":
        raise ValueError("not a klein-v1 table: missing header")
    loops = []
    classes = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "LOOP":
            if len(parts) != 9:
                raise ValueError("bad LOOP line: %r" % ln)
            h1 = _h1_from_name(parts[1])
            keep = bool(int(parts[2]))
            coords = tuple(int(x) for x in parts[3:9])
            loops.append(LoopClass(h1=h1, orientation_preserving=keep,
                                   coords=coords))
        elif parts[0] == "MCG":
            if len(parts) != 6:
                raise ValueError("bad MCG line: %r" % ln)
            a, b, c, d = (int(x) for x in parts[2:6])
            classes.append(MappingClass(parts[1], ((a, b), (c, d))))
        else:
            raise ValueError("unknown klein-v1 line: %r" % ln)
    return loops, classes
