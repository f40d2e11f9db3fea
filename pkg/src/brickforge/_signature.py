"""Canonical forms and signatures for carriers.

Two carriers are isomorphic exactly if they have the same canonical form.
For the standard part (quadrivalent vertices joined by triple-line edges)
the form is the minimum, over every choice of root vertex and root slot
frame (24 per root), of a breadth-first serialization in which each newly
discovered vertex receives the slot frame dictated by its arrival edge:
the arrival slot becomes slot 3 and the remaining slots are ordered by the
arrival edge's wings, themselves ordered at the near end.  The
serialization determines the carrier up to isomorphism, so the minimum is
a complete invariant.

Circles are canonicalized over the six prong labelings, regions are plain
tuples, and a multi-piece carrier (pieces joined by arcs) sorts its piece
forms, breaking ties among isomorphic pieces by trying every ordering and
keeping the smallest overall string.  Marks and arc endpoints are written
in terms of canonical face ranks, so they participate in the minimum.
"""

from __future__ import annotations

import hashlib
import itertools

from ._model import (
    PERMS3,
    mu_orbits,
    perm_from_other_slots,
    wing_other_slot,
)


def _invert4(frame):
    inv = [0, 0, 0, 0]
    for old, new in enumerate(frame):
        inv[new] = old
    return tuple(inv)


_FRAMES = tuple(itertools.permutations(range(4)))


def _far_fields(rec, end):
    """(vertex, slot, perm) of the end opposite to `end`."""
    if end == 0:
        return rec[3], rec[4], rec[5]
    return rec[0], rec[1], rec[2]


def _near_fields(rec, end):
    if end == 0:
        return rec[0], rec[1], rec[2]
    return rec[3], rec[4], rec[5]


class _PieceLabelling:
    """Outcome of one BFS serialization of a standard piece."""

    __slots__ = ("tokens", "vertex_id", "frames", "edge_rank", "wing_label")

    def __init__(self, tokens, vertex_id, frames, edge_rank, wing_label):
        self.tokens = tokens
        self.vertex_id = vertex_id
        self.frames = frames
        self.edge_rank = edge_rank
        self.wing_label = wing_label


def _serialize_piece(poly, slot_tab, root, frame):
    """BFS serialization from (root, frame).  Returns a _PieceLabelling."""
    vertex_id = {root: 0}
    frames = {root: frame}
    order = [root]
    tokens = []
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        f = frames[v]
        finv = _invert4(f)
        for ns in range(4):
            s = finv[ns]
            ei, end = slot_tab[(v, s)]
            rec = poly.edges[ei]
            _nv, _ns, p = _near_fields(rec, end)
            others = [wing_other_slot(s, p, w) for w in range(3)]
            wing_order = sorted(range(3), key=lambda w: f[others[w]])
            fv, fs, fp = _far_fields(rec, end)
            far_others = [wing_other_slot(fs, fp, w) for w in range(3)]
            if fv not in vertex_id:
                vertex_id[fv] = len(order)
                order.append(fv)
                ff = [None, None, None, None]
                ff[fs] = 3
                for r in range(3):
                    ff[far_others[wing_order[r]]] = r
                frames[fv] = tuple(ff)
                tokens.append((0, vertex_id[fv]))
            else:
                ff = frames[fv]
                images = tuple(ff[far_others[w]] for w in wing_order)
                q = perm_from_other_slots(ff[fs], images)
                tokens.append((1, vertex_id[fv], ff[fs], q))

    # canonical edge ranks and per-edge wing labels, for marks and arcs
    edge_key = {}
    for (v, s), (ei, end) in slot_tab.items():
        if v not in vertex_id:
            continue  # slot belongs to a different piece
        k = (vertex_id[v], frames[v][s])
        if ei not in edge_key or k < edge_key[ei][0]:
            edge_key[ei] = (k, end)
    ranked = sorted(edge_key, key=lambda ei: edge_key[ei][0])
    edge_rank = {ei: r for r, ei in enumerate(ranked)}
    wing_label = {}
    for ei, ((_vid, _slot), end) in (
            (ei, edge_key[ei]) for ei in edge_key):
        rec = poly.edges[ei]
        v, s, p = _near_fields(rec, end)
        f = frames[v]
        others = [wing_other_slot(s, p, w) for w in range(3)]
        wing_order = sorted(range(3), key=lambda w: f[others[w]])
        wing_label[ei] = {w: r for r, w in enumerate(wing_order)}
    return _PieceLabelling(tuple(tokens), vertex_id, frames,
                           edge_rank, wing_label)


def _piece_face_key(labelling, face):
    return tuple(sorted(
        (labelling.edge_rank[e], labelling.wing_label[e][w])
        for e, w in face.wings))


def _canonical_piece(poly, slot_tab, verts, faces):
    """Best serialization of one standard piece.

    Returns (token string, face_rank) where face_rank maps the piece's
    global face indices to 0-based canonical ranks within the piece.
    """
    piece_faces = [f for f in faces
                   if f.kind == "trace"
                   and poly.edges[min(f.wings)[0]][0] in verts]
    best = None
    best_lab = None
    for root in sorted(verts):
        for frame in _FRAMES:
            lab = _serialize_piece(poly, slot_tab, root, frame)
            mark_part = []
            for f in piece_faces:
                if f.index in poly.marks:
                    m = poly.marks[f.index]
                    mark_part.append(
                        (_piece_face_key(lab, f), m.surface, m.spine))
            mark_part.sort()
            cand = (lab.tokens, tuple(mark_part))
            if best is None or cand < best:
                best = cand
                best_lab = lab
    face_order = sorted(piece_faces,
                        key=lambda f: _piece_face_key(best_lab, f))
    face_rank = {f.index: r for r, f in enumerate(face_order)}
    text = repr(best)
    return text, face_rank


def _canonical_circle(mu):
    """Minimal serialization of a circle's monodromy over prong labelings.

    Returns (text, orbit_rank) with orbit_rank mapping the original orbit
    position (by smallest prong) to the canonical orbit position.
    """
    best = None
    best_perm = None
    for g in PERMS3:
        conj = tuple(g[mu[_inv3(g)[i]]] for i in range(3))
        if best is None or conj < best:
            best = conj
            best_perm = g
    old_orbits = mu_orbits(mu)
    new_orbits = mu_orbits(best)
    orbit_rank = {}
    for oi, orbit in enumerate(old_orbits):
        image = sorted(best_perm[x] for x in orbit)
        orbit_rank[oi] = new_orbits.index(image)
    return repr(best), orbit_rank


def _inv3(perm):
    inv = [0, 0, 0]
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


def _standard_components(poly, slot_tab):
    """Vertex sets of the components of the standard part."""
    seen = set()
    comps = []
    for start in range(poly.nv):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for s in range(4):
                ei, end = slot_tab[(v, s)]
                fv = _far_fields(poly.edges[ei], end)[0]
                if fv not in seen:
                    seen.add(fv)
                    comp.add(fv)
                    stack.append(fv)
        comps.append(comp)
    return comps


def canonical_form(poly):
    """Complete invariant string for a carrier."""
    slot_tab = poly.slot_table()
    faces = poly.faces()
    trace_faces = [f for f in faces if f.kind == "trace"]

    pieces = []  # (sort key, piece kind, text, face ids in canonical order)
    for verts in _standard_components(poly, slot_tab):
        text, face_rank = _canonical_piece(poly, slot_tab, verts, faces)
        ordered = sorted(face_rank, key=face_rank.get)
        pieces.append(("S" + text, ordered))
    for ci, mu in enumerate(poly.circles):
        text, orbit_rank = _canonical_circle(mu)
        # a circle face's start prong is the smallest of its orbit
        start_pos = {orbit[0]: oi for oi, orbit in enumerate(mu_orbits(mu))}
        local = [f for f in faces if f.kind == "circle" and f.circle == ci]
        local.sort(key=lambda f: orbit_rank[start_pos[f.start]])
        pieces.append(("C" + text, [f.index for f in local]))
    for ri, region in enumerate(poly.regions):
        face = next(f for f in faces
                    if f.kind == "region" and f.region == ri)
        pieces.append(("R" + repr(tuple(region)), [face.index]))
    if poly.point:
        pieces.append(("P", []))

    if not poly.arcs:
        body = "|".join(sorted(p[0] for p in pieces))
        return body + "|A[]"

    # with arcs, tie-broken piece orderings matter for the arc section
    order0 = sorted(range(len(pieces)), key=lambda i: pieces[i][0])
    groups = []
    for _key, grp in itertools.groupby(order0, key=lambda i: pieces[i][0]):
        groups.append(list(grp))
    best = None
    for ordering in _tie_orderings(groups):
        face_pos = {}
        counter = 0
        for pi in ordering:
            for fid in pieces[pi][1]:
                face_pos[fid] = counter
                counter += 1
        # the point endpoint sorts as -1, below every face position
        arcs = sorted(tuple(sorted((face_pos.get(a, -1), face_pos.get(b, -1))))
                      for a, b in poly.arcs)
        body = "|".join(pieces[pi][0] for pi in ordering)
        cand = body + "|A" + repr(arcs)
        if best is None or cand < best:
            best = cand
    return best


def _tie_orderings(groups):
    """All orderings permuting only within groups of equal piece keys."""
    perms = [itertools.permutations(g) for g in groups]
    for combo in itertools.product(*perms):
        yield [i for grp in combo for i in grp]


def canonical_signature(poly):
    """Stable hex digest of the canonical form."""
    return hashlib.sha1(canonical_form(poly).encode("ascii")).hexdigest()
