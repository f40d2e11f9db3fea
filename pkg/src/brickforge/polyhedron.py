"""Skeleton carriers: validation, skeleton types, text format, thickening.

This is the public face of the carrier model in ``_model``.  A pair
(manifold, marked boundary) is represented by the closed complex obtained
from a skeleton together with the boundary surfaces it is attached to;
the marked faces are the hexagons that close the spine graphs up into
those surfaces.  The conventions live in ``_model``; this module adds

* ``validate``: a per-invariant report (never raises),
* ``Skeleton`` wrappers: ``StandardSkeleton`` around a carrier, ``Atom``
  for the finitely many named non-standard minimal skeleta,
* ``nuclear_collapse``: removal of collapsible pendants,
* ``three_distinct_faces``: the face-incidence predicate along a marked
  spine,
* the ``poly-v1`` text format (vertexed carriers only).

Thickening reports through ``ThickeningResult`` rather than exceptions:
``result.thickenable`` is the verdict, ``result.obstruction`` names the
one-sided face curve on failure, and ``result.unexpected_boundary``
flags boundary surfaces outside sphere/torus/Klein bottle.
"""

from dataclasses import dataclass, field

from ._model import (
    Mark,
    MalformedPolyhedron,
    SpecialPolyhedron,
    UnsupportedFormat,
    face_is_hexagon,
    face_surface_kind,
    face_edge_multiset,
    mark_spine_edges,
    mark_spine_vertices,
    spine_shape,
    _UnionFind,
)
from ._signature import canonical_form, canonical_signature
from ._thicken import (
    BoundaryComponent,
    ThickeningResult,
    UnsupportedThickening,
    thicken,
    valid_pair_profile,
)

__all__ = [
    "Atom",
    "ATOM_NAMES",
    "BoundaryComponent",
    "Mark",
    "MalformedPolyhedron",
    "Skeleton",
    "SpecialPolyhedron",
    "StandardSkeleton",
    "ThickeningResult",
    "UnsupportedFormat",
    "UnsupportedThickening",
    "ValidationReport",
    "atom_carrier",
    "canonical_form",
    "canonical_signature",
    "nuclear_collapse",
    "parse_poly",
    "serialize_poly",
    "thicken",
    "three_distinct_faces",
    "trace_faces",
    "valid_pair_profile",
    "validate",
]


# -- skeleton wrappers --------------------------------------------------------

ATOM_NAMES = ("Point", "TripleHat", "ProjectivePlane", "S2JoinS1",
              "P1", "P1prime")


class Skeleton:
    """Base tag for skeleton values (StandardSkeleton or Atom)."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Skeleton):
    """A named non-standard minimal skeleton.

    The first four names have closed carriers (see ``atom_carrier``); P1
    and P1prime are the punctured-disc skeleta of the one-marked solid
    torus and solid Klein bottle, handled symbolically by ``calculus``.
    """

    name: str

    def __post_init__(self):
        if self.name not in ATOM_NAMES:
            raise ValueError("unknown atom name %r" % (self.name,))


@dataclass
class StandardSkeleton(Skeleton):
    """A skeleton given by its closed carrier (marks = hexagon faces).

    Treat instances as immutable; operations copy the carrier.
    """

    poly: SpecialPolyhedron

    def signature(self):
        return canonical_signature(self.poly)


def atom_carrier(name):
    """Closed carrier of an atom, or None for the symbolic ones."""
    from . import _builders

    table = {
        "Point": _builders.point_atom,
        "TripleHat": _builders.triple_hat,
        "ProjectivePlane": _builders.proj_plane,
        "S2JoinS1": _builders.s2_join,
    }
    build = table.get(name)
    if build is None:
        if name not in ATOM_NAMES:
            raise ValueError("unknown atom name %r" % (name,))
        return None
    return build()


def _carrier_of(skel):
    if isinstance(skel, StandardSkeleton):
        return skel.poly
    if isinstance(skel, SpecialPolyhedron):
        return skel
    raise TypeError("expected a StandardSkeleton or carrier, got %r"
                    % (type(skel).__name__,))


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    """Per-invariant outcome of ``validate``.

    Tri-state fields use None for "not applicable / not reached".
    ``quasi_standard`` is the local-structure check alone; ``standard``
    additionally requires vertexed, all-disc, connected carriers without
    vertex-free pieces; ``valid`` means the carrier passes every
    closed-skeleton-carrier invariant (structure, Euler characteristic 1,
    well-formed marks, and the face/vertex count identity).
    """

    has_cells: bool = False
    slots_ok: bool = False
    traces_ok: bool = False
    faces_are_discs: object = None
    singular_connected: object = None
    euler_ok: object = None
    marks_ok: object = None
    count_identity_ok: object = None
    standard: bool = False
    quasi_standard: bool = False
    valid: bool = False
    problems: list = field(default_factory=list)


_SPINE_OF_KIND = {"T": ("theta",), "K": ("theta", "sigma")}


def validate(poly):
    """Check every carrier invariant; never raises."""
    rep = ValidationReport()
    rep.has_cells = bool(poly.nv or poly.edges or poly.circles
                         or poly.regions or poly.point)
    if not rep.has_cells:
        rep.problems.append("no cells")
        return rep

    try:
        table = poly.slot_table()
        rep.slots_ok = len(table) == 4 * poly.nv
        if not rep.slots_ok:
            rep.problems.append("unattached half-edge slots")
    except MalformedPolyhedron as err:
        rep.problems.append(str(err))
    if rep.slots_ok:
        try:
            faces = poly.faces()
            rep.traces_ok = True
        except MalformedPolyhedron as err:
            rep.problems.append(str(err))
    rep.quasi_standard = rep.slots_ok and rep.traces_ok
    if not rep.quasi_standard:
        return rep

    rep.faces_are_discs = True
    for f in faces:
        if f.kind != "trace":
            continue
        wings = [(e, w) for e, w, _d in f.traversals]
        if len(set(wings)) != len(wings):
            rep.faces_are_discs = False
            rep.problems.append("face %d doubles a wing strip" % f.index)

    if poly.nv:
        uf = _UnionFind()
        for v in range(poly.nv):
            uf.find(v)
        for rec in poly.edges:
            uf.union(rec[0], rec[3])
        rep.singular_connected = len(uf.groups()) == 1
        if not rep.singular_connected:
            rep.problems.append("singular graph is disconnected")

    rep.euler_ok = poly.euler() == 1
    if not rep.euler_ok:
        rep.problems.append("Euler characteristic %d, expected 1"
                            % poly.euler())

    rep.marks_ok = True
    seen_spine_vertices = set()
    for fi, mark in sorted(poly.marks.items()):
        if not (0 <= fi < len(faces)) or faces[fi].kind != "trace":
            rep.marks_ok = False
            rep.problems.append("mark on missing face %r" % (fi,))
            continue
        face = faces[fi]
        if not face_is_hexagon(poly, face):
            rep.marks_ok = False
            rep.problems.append("marked face %d is not a spine hexagon" % fi)
            continue
        shape = spine_shape(poly, sorted(face_edge_multiset(face)))
        kind = face_surface_kind(poly, face)
        if kind == "T" and shape == "sigma":
            rep.marks_ok = False
            rep.problems.append(
                "face %d closes a spectacles spine into a torus" % fi)
        if mark.surface != kind or mark.spine != shape:
            rep.marks_ok = False
            rep.problems.append(
                "mark on face %d declares (%s,%s) but traces (%s,%s)"
                % (fi, mark.surface, mark.spine, kind, shape))
        verts = set(mark_spine_vertices(poly, fi))
        if verts & seen_spine_vertices:
            rep.marks_ok = False
            rep.problems.append("marked spines share vertex set at face %d"
                                % fi)
        seen_spine_vertices |= verts

    vertex_free_pieces = bool(poly.circles or poly.regions or poly.arcs
                              or poly.point)
    rep.standard = (poly.nv > 0 and not vertex_free_pieces
                    and bool(rep.faces_are_discs)
                    and bool(rep.singular_connected))

    if poly.nv and not vertex_free_pieces and rep.marks_ok:
        rep.count_identity_ok = (
            poly.skeleton_face_count() - poly.interior_vertex_count()
            == len(poly.marks) + 1)
        if not rep.count_identity_ok:
            rep.problems.append(
                "face/vertex count identity fails: %d - %d != %d + 1"
                % (poly.skeleton_face_count(), poly.interior_vertex_count(),
                   len(poly.marks)))

    rep.valid = (rep.quasi_standard and rep.euler_ok and rep.marks_ok
                 and rep.count_identity_ok is not False)
    return rep


def trace_faces(poly):
    """The faces of the carrier with their boundary wing paths.

    Raises MalformedPolyhedron when a wing trace does not close.
    """
    return poly.faces()


# -- collapsing ---------------------------------------------------------------

def nuclear_collapse(skel):
    """Collapse removable pendants; never increases the vertex count.

    The only collapsible configuration in the carrier model is the free
    point attached by a single arc (the trace of a trivial summand):
    the arc collapses from its free end and takes the point with it.
    Arcs joining two faces have no free end and stay.  Idempotent.
    """
    if isinstance(skel, Atom):
        return skel
    poly = _carrier_of(skel).copy()
    changed = False
    if poly.point:
        touching = [i for i, arc in enumerate(poly.arcs) if "point" in arc]
        if len(touching) == 1:
            del poly.arcs[touching[0]]
            poly.point = False
            changed = True
    if changed:
        poly.invalidate()
    if isinstance(skel, StandardSkeleton):
        return StandardSkeleton(poly)
    return poly


# -- face incidence along a marked spine ---------------------------------------

def three_distinct_faces(skel, boundary_component):
    """True when the three skeleton face germs along the marked spine
    belong to pairwise distinct faces.

    ``boundary_component`` is the marked face index.  Each spine edge
    carries three wings; the hexagon claims two of them, and the
    remaining wing belongs to a skeleton face.  The predicate compares
    the three skeleton faces so obtained.
    """
    poly = _carrier_of(skel)
    if boundary_component not in poly.marks:
        raise KeyError("no marked component %r" % (boundary_component,))
    faces = poly.faces()
    hexagon = faces[boundary_component]
    face_of = {}
    for f in faces:
        if f.kind != "trace":
            continue
        for e, w, _d in f.traversals:
            face_of[(e, w)] = f.index
    hex_wings = {(e, w) for e, w, _d in hexagon.traversals}
    incident = []
    for ei in mark_spine_edges(poly, boundary_component):
        free = [w for w in range(3) if (ei, w) not in hex_wings]
        assert len(free) == 1, "hexagon must claim two wings per spine edge"
        incident.append(face_of[(ei, free[0])])
    return len(set(incident)) == len(incident)


# -- poly-v1 text format --------------------------------------------------------

def serialize_poly(poly):
    """Serialize a vertexed carrier to the poly-v1 text format."""
    if poly.circles or poly.regions or poly.arcs or poly.point:
        raise UnsupportedFormat(
            "poly-v1 stores vertexed carriers only; this one has "
            "vertex-free pieces")
    lines = ["POLY v=%d e=%d" % (poly.nv, len(poly.edges))]
    for rec in poly.edges:
        lines.append("E %d %d %d %d %d %d" % tuple(rec))
    for fi in sorted(poly.marks):
        m = poly.marks[fi]
        lines.append("MARK %d %s %s" % (fi, m.surface, m.spine))
    return "\n".join(lines) + "\n"


def parse_poly(text):
    """Parse poly-v1 text; inverse of serialize_poly, bit-exact both ways."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("POLY "):
        raise UnsupportedFormat("missing POLY header")
    header = lines[0].split()
    try:
        fields = dict(item.split("=") for item in header[1:])
        nv, ne = int(fields["v"]), int(fields["e"])
    except (ValueError, KeyError):
        raise UnsupportedFormat("bad POLY header %r" % (lines[0],))
    edges = []
    marks = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "E":
            if len(parts) != 7:
                raise UnsupportedFormat("bad edge line %r" % (ln,))
            rec = tuple(int(x) for x in parts[1:])
            v0, s0, p0, v1, s1, p1 = rec
            if not (0 <= v0 < nv and 0 <= v1 < nv):
                raise UnsupportedFormat("edge vertex out of range in %r"
                                        % (ln,))
            if not all(0 <= s <= 3 for s in (s0, s1)):
                raise UnsupportedFormat("edge slot out of range in %r"
                                        % (ln,))
            if not all(0 <= p <= 5 for p in (p0, p1)):
                raise UnsupportedFormat("wing permutation out of range in %r"
                                        % (ln,))
            edges.append(rec)
        elif parts[0] == "MARK":
            if (len(parts) != 4 or parts[2] not in ("T", "K")
                    or parts[3] not in ("theta", "sigma")):
                raise UnsupportedFormat("bad mark line %r" % (ln,))
            marks[int(parts[1])] = Mark(parts[2], parts[3])
        else:
            raise UnsupportedFormat("unknown line %r" % (ln,))
    if len(edges) != ne:
        raise UnsupportedFormat("header announces %d edges, found %d"
                                % (ne, len(edges)))
    return SpecialPolyhedron(nv=nv, edges=edges, marks=marks)
