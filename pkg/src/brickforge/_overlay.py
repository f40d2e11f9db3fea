"""Two-spine overlay positions for self-assembling.

Identifying two marked boundaries of one skeleton throws the source spine
onto the target surface, where it crosses the target spine in exactly two
transverse double points.  The combinatorial residue of that picture is
the union graph: both spines drawn on one surface, each crossing sitting
in the interior of an edge of either spine, subdividing both.  This
module enumerates those pictures as ribbon graphs with band twists.

A candidate is assembled from
  * a placement: which spine edge on either side carries each crossing,
    and in which order along the edge when both crossings share one;
  * a rotation at each spine vertex (two essentially different cyclic
    orders of three germs);
  * an alternating rotation at each crossing, gauge-fixed to the even
    interleaving (a vertex flip reaches the other one);
  * a twist bit per band.

It survives when
  * the source subgraph alone, crossings smoothed away, fills its surface
    with one complementary disc and the right orientability,
  * the target subgraph does the same,
  * the whole union has four complementary discs, which pins the Euler
    count to a closed surface of zero characteristic, with orientability
    matching the common surface kind.

A vertex flip (reverse one rotation, toggle the twists of bands with
exactly one end there) never changes the ribbon surface, so flips are
gauge: crossings are normalized as above, spine vertices are enumerated
up to flips, and the final canonical form minimizes over the rest.
Survivors are deduplicated modulo the dihedral self-matchings of both
hexagon words, crossing relabeling, and gauge.
"""

from __future__ import annotations

import functools
import itertools

from . import _words


# -- ribbon graphs ------------------------------------------------------------
#
# A ribbon graph is (rotations, edges): `edges` maps edge id to
# (germ0, germ1, twist); `rotations` maps vertex to the cyclic tuple of
# its germs; a germ is (edge id, end).  Boundary is traced with flags
# (germ, side): side 0 is the flank on the rotation-successor side of the
# germ.  Crossing an untwisted band lands on the other flank of the far
# germ; the walk then slides around the far vertex disc to the flank of
# the adjacent germ, which flips the flank again.


def _germ_tables(rotations, edges):
    vertex_of = {}
    pos_of = {}
    for v, rot in rotations.items():
        for i, germ in enumerate(rot):
            vertex_of[germ] = v
            pos_of[germ] = i
    mate = {}
    twist = {}
    for g0, g1, tw in edges.values():
        mate[g0] = g1
        mate[g1] = g0
        twist[g0] = tw
        twist[g1] = tw
    for germ in mate:
        if germ not in vertex_of:
            raise AssertionError("germ %r missing from rotations" % (germ,))
    for germ in vertex_of:
        if germ not in mate:
            raise AssertionError("germ %r missing from edges" % (germ,))
    return vertex_of, pos_of, mate, twist


def _face_orbits(rotations, edges):
    vertex_of, pos_of, mate, twist = _germ_tables(rotations, edges)

    def step(flag):
        germ, side = flag
        far = mate[germ]
        flank = side ^ 1 ^ twist[germ]
        rot = rotations[vertex_of[far]]
        i = pos_of[far]
        if flank == 0:
            return (rot[(i + 1) % len(rot)], 1)
        return (rot[(i - 1) % len(rot)], 0)

    flags = [(germ, side) for germ in mate for side in (0, 1)]
    seen = set()
    orbits = []
    for start in sorted(flags):
        if start in seen:
            continue
        walk = []
        flag = start
        while True:
            walk.append(flag)
            seen.add(flag)
            flag = step(flag)
            if flag == start:
                break
        orbits.append(walk)
    return orbits


def ribbon_faces(rotations, edges):
    """The boundary walks of the ribbon surface, one per face.

    Flag orbits come in direction-reversed pairs; the reverse of being
    about to cross a band is being about to cross it back on the rail one
    lands on.  One orbit of each pair is returned, the one holding the
    smaller least flag.
    """
    _vertex_of, _pos_of, mate, twist = _germ_tables(rotations, edges)
    orbits = _face_orbits(rotations, edges)
    owner = {}
    for i, walk in enumerate(orbits):
        for flag in walk:
            owner[flag] = i
    faces = []
    seen = set()
    for i, walk in enumerate(orbits):
        if i in seen:
            continue
        germ, side = walk[0]
        partner = owner[(mate[germ], side ^ 1 ^ twist[germ])]
        if partner == i:
            raise AssertionError("boundary walk paired with itself")
        seen.add(i)
        seen.add(partner)
        keep, drop = sorted((i, partner),
                            key=lambda j: min(orbits[j]))
        faces.append(orbits[keep])
    return faces


def ribbon_face_count(rotations, edges):
    return len(_face_orbits(rotations, edges)) // 2


def ribbon_orientable(rotations, edges):
    """True when some set of vertex flips clears every twist.

    Flipping a vertex toggles the twist of each band with exactly one end
    there, so twists must form a cut: two-color the vertices so that every
    band joins colors differing by its twist.  A twisted band with both
    ends at one vertex can never be cleared.
    """
    vertex_of = {}
    for v, rot in rotations.items():
        for germ in rot:
            vertex_of[germ] = v
    graph = {v: [] for v in rotations}
    for g0, g1, tw in edges.values():
        u, v = vertex_of[g0], vertex_of[g1]
        if u == v:
            if tw:
                return False
            continue
        graph[u].append((v, tw))
        graph[v].append((u, tw))
    color = {}
    for v in rotations:
        if v in color:
            continue
        color[v] = 0
        stack = [v]
        while stack:
            u = stack.pop()
            for w, tw in graph[u]:
                want = color[u] ^ tw
                if w in color:
                    if color[w] != want:
                        return False
                else:
                    color[w] = want
                    stack.append(w)
    return True


def face_word(walk, edge_letter):
    """Read a face walk as a cyclic word over lettered edges.

    Each flag is about to cross its band; the crossing runs from the
    germ's own end, so end 0 reads as +1 (tail to head).  Edges missing
    from edge_letter are bookkeeping subdivisions and are skipped.
    """
    out = []
    for germ, _side in walk:
        eid, end = germ
        letter = edge_letter.get(eid)
        if letter is None:
            continue
        out.append((letter, 1 if end == 0 else -1))
    return tuple(out)


# -- spine candidates ----------------------------------------------------------


def _spine_germs(word):
    """Germs of the un-subdivided spine at each vertex class: germ
    (letter, 0) sits at the letter's tail, (letter, 1) at its head."""
    comp = _words.word_complex(word)
    at = {0: [], 1: []}
    for letter, (tail, head) in sorted(comp["endpoints"].items()):
        at[tail].append((letter, 0))
        at[head].append((letter, 1))
    return at


def _flip_vertex(rotations, edges, v):
    """Gauge move: reverse the rotation at v, toggle twists of bands with
    exactly one end at v."""
    new_rot = dict(rotations)
    new_rot[v] = tuple(reversed(rotations[v]))
    at_v = set(new_rot[v])
    new_edges = {}
    for eid, (g0, g1, tw) in edges.items():
        ends_here = (g0 in at_v) + (g1 in at_v)
        new_edges[eid] = (g0, g1, tw ^ 1 if ends_here == 1 else tw)
    return new_rot, new_edges


def _cyclic_min(rot):
    return min(tuple(rot[i:] + rot[:i]) for i in range(len(rot)))


def _serialize_ribbon(rotations, edges):
    return (
        tuple(sorted((v, _cyclic_min(tuple(rot)))
                     for v, rot in rotations.items())),
        tuple(sorted((eid, tw) for eid, (_g0, _g1, tw) in edges.items())),
    )


def _flip_min(rotations, edges):
    """Least serialization over all vertex flip subsets."""
    verts = sorted(rotations)
    best = None
    for mask in range(1 << len(verts)):
        rot, eds = rotations, edges
        for i, v in enumerate(verts):
            if mask >> i & 1:
                rot, eds = _flip_vertex(rot, eds, v)
        key = _serialize_ribbon(rot, eds)
        if best is None or key < best:
            best = key
    return best


@functools.lru_cache(maxsize=None)
def _spine_candidates(word, surface):
    """Valid single-spine ribbon structures up to vertex flips.

    Each candidate is (rotations, twists): rotations maps vertex class 0/1
    to a cyclic germ tuple, twists maps letter to its band twist.  Valid
    means the ribbon fills a closed surface of the given kind with one
    complementary disc whose boundary reads the spine's own hexagon word.
    """
    at = _spine_germs(word)
    want_orientable = surface == "T"
    out = []
    seen = set()
    for rot0 in _vertex_rotations(at[0]):
        for rot1 in _vertex_rotations(at[1]):
            rotations = {0: rot0, 1: rot1}
            for bits in itertools.product((0, 1), repeat=3):
                edges = {l: ((l, 0), (l, 1), bits[l]) for l in range(3)}
                if ribbon_face_count(rotations, edges) != 1:
                    continue
                if ribbon_orientable(rotations, edges) != want_orientable:
                    continue
                walk = ribbon_faces(rotations, edges)[0]
                wd = face_word(walk, {l: l for l in range(3)})
                if not _words.matchings(wd, word):
                    raise AssertionError(
                        "one-disc filling of %r reads %r, which does not "
                        "match its own word" % (word, wd))
                key = _flip_min(rotations, edges)
                if key in seen:
                    continue
                seen.add(key)
                out.append((rotations, bits))
    return tuple(out)


def _vertex_rotations(germs):
    """The distinct cyclic orders of a vertex's germs (first germ pinned)."""
    germs = sorted(germs)
    head, rest = germs[0], germs[1:]
    return [tuple([head] + list(p)) for p in itertools.permutations(rest)]


# -- placements ---------------------------------------------------------------


def _raw_placements():
    """Crossing placements on one spine: ((letter, pos) for each crossing).

    pos orders the crossings along the edge tail to head; two crossings on
    one edge use positions {0, 1}, otherwise pos is 0.
    """
    out = []
    for l0, l1 in itertools.product(range(3), repeat=2):
        if l0 == l1:
            out.append((((l0, 0), (l0, 1))))
            out.append((((l0, 1), (l0, 0))))
        else:
            out.append((((l0, 0), (l1, 0))))
    return out


def _placement_action(placement, matching):
    """Transport a placement through a word self-matching."""
    counts = {}
    for letter, _pos in placement:
        counts[letter] = counts.get(letter, 0) + 1
    new = []
    for letter, pos in placement:
        target = matching.letter_map[letter]
        if matching.sign_map[letter] == -1:
            pos = counts[letter] - 1 - pos
        new.append((target, pos))
    return tuple(new)


def _placement_reps(word):
    """Placements up to the realized self-matchings of the word."""
    sym = _words.self_matchings(word)
    seen = set()
    reps = []
    for placement in _raw_placements():
        orbit = {_placement_action(placement, s) for s in sym}
        if seen & orbit:
            continue
        seen.update(orbit)
        reps.append(placement)
    return reps


# -- overlay assembly ----------------------------------------------------------


def _crossings_by_letter(placement, names):
    per = {}
    for cname, (letter, pos) in zip(names, placement):
        per.setdefault(letter, []).append((pos, cname))
    for entries in per.values():
        entries.sort()
        positions = [pos for pos, _ in entries]
        if positions != list(range(len(positions))):
            raise AssertionError("crossing positions must be 0..k-1")
    return per


def _side_tables(prefix, vprefix, word, placement, spine_rot, seg_twists,
                 names):
    """Edges, vertex rotations, and crossing germ pairs for one spine,
    subdivided at its crossings."""
    comp = _words.word_complex(word)
    per = _crossings_by_letter(placement, names)
    edges = {}
    cross = {}
    for letter, (tail, head) in sorted(comp["endpoints"].items()):
        hits = per.get(letter, [])
        k = len(hits)
        nodes = [vprefix + str(tail)]
        nodes += [cname for _pos, cname in hits]
        nodes.append(vprefix + str(head))
        for j in range(k + 1):
            eid = (prefix, letter, j)
            edges[eid] = ((eid, 0), (eid, 1), seg_twists[eid])
        for i, (_pos, cname) in enumerate(hits):
            arrive = ((prefix, letter, i), 1)
            leave = ((prefix, letter, i + 1), 0)
            cross.setdefault(cname, []).append((arrive, leave))
    rotations = {}
    for cls in (0, 1):
        germs = []
        for letter, end in spine_rot[cls]:
            k = len(per.get(letter, []))
            if end == 0:
                germs.append(((prefix, letter, 0), 0))
            else:
                germs.append(((prefix, letter, k), 1))
        rotations[vprefix + str(cls)] = tuple(germs)
    return edges, rotations, cross


def _segment_twist_options(prefix, placement, twists):
    """All ways to spread each letter's total twist over its segments."""
    per = {}
    for letter, _pos in placement:
        per[letter] = per.get(letter, 0) + 1
    choices = []
    for letter in range(3):
        k = per.get(letter, 0)
        local = []
        for bits in itertools.product((0, 1), repeat=k):
            last = twists[letter]
            for b in bits:
                last ^= b
            assign = {(prefix, letter, j): b for j, b in enumerate(bits)}
            assign[(prefix, letter, k)] = last
            local.append(assign)
        choices.append(local)
    out = []
    for combo in itertools.product(*choices):
        merged = {}
        for part in combo:
            merged.update(part)
        out.append(merged)
    return out


_CROSSING_NAMES = ("c0", "c1")


def _build_overlay(src_word, dst_word, pa, pb, rot_a, rot_b, seg_twists):
    edges_a, rots_a, cross_a = _side_tables(
        "A", "a", src_word, pa, rot_a, seg_twists, _CROSSING_NAMES)
    edges_b, rots_b, cross_b = _side_tables(
        "B", "b", dst_word, pb, rot_b, seg_twists, _CROSSING_NAMES)
    rotations = {}
    rotations.update(rots_a)
    rotations.update(rots_b)
    for cname in _CROSSING_NAMES:
        (a_in, a_out), = cross_a[cname]
        (b_in, b_out), = cross_b[cname]
        # Transversality: the two strands alternate around a crossing.
        rotations[cname] = (a_in, b_in, a_out, b_out)
    edges = {}
    edges.update(edges_a)
    edges.update(edges_b)
    return rotations, edges


# -- canonical form ------------------------------------------------------------


def _letter_counts(placement):
    per = {}
    for letter, _pos in placement:
        per[letter] = per.get(letter, 0) + 1
    return per


def _side_renamer(word, placement, matching):
    """Germ and vertex rename functions induced by a self-matching of one
    spine's word, acting on that side's subdivided edges."""
    counts = _letter_counts(placement)
    vmap = _words.vertex_image(word, word, matching)

    def rename_eid(eid):
        prefix, letter, j = eid
        k = counts.get(letter, 0)
        target = matching.letter_map[letter]
        if matching.sign_map[letter] == -1:
            j = k - j
        return (prefix, target, j)

    def rename_germ(germ):
        eid, end = germ
        _prefix, letter, _j = eid
        if matching.sign_map[letter] == -1:
            end ^= 1
        return (rename_eid(eid), end)

    return rename_eid, rename_germ, vmap


def _transform_overlay(rotations, edges, src_word, dst_word, pa, pb,
                       sa, sb, cswap):
    """Rename the overlay ribbon through self-matchings on either side and
    an optional crossing swap."""
    _eid_a, germ_a, vmap_a = _side_renamer(src_word, pa, sa)
    _eid_b, germ_b, vmap_b = _side_renamer(dst_word, pb, sb)

    def rename_germ(germ):
        if germ[0][0] == "A":
            return germ_a(germ)
        return germ_b(germ)

    def rename_vertex(v):
        if v[0] == "a":
            return "a" + str(vmap_a[int(v[1:])])
        if v[0] == "b":
            return "b" + str(vmap_b[int(v[1:])])
        if cswap:
            return "c" + str(1 - int(v[1:]))
        return v

    new_rot = {}
    for v, rot in rotations.items():
        new_rot[rename_vertex(v)] = tuple(rename_germ(g) for g in rot)
    new_edges = {}
    for _eid, (g0, g1, tw) in edges.items():
        h0 = rename_germ(g0)
        h1 = rename_germ(g1)
        if h0[0] != h1[0]:
            raise AssertionError("rename split a band across two ids")
        new_edges[h0[0]] = (h0, h1, tw)
    return new_rot, new_edges


def _overlay_key(rotations, edges, src_word, dst_word, pa, pb,
                 syms_a, syms_b):
    best = None
    for sa in syms_a:
        for sb in syms_b:
            for cswap in (0, 1):
                rot, eds = _transform_overlay(
                    rotations, edges, src_word, dst_word, pa, pb,
                    sa, sb, cswap)
                key = _flip_min(rot, eds)
                if best is None or key < best:
                    best = key
    return best


# -- double point maps ---------------------------------------------------------


class DoublePointMap(object):
    """A position of one marked spine over another with two transverse
    crossings, recorded as a twisted ribbon structure on the union graph.

    Vertices a0/a1 and b0/b1 are the two spines' vertex classes, c0/c1 the
    crossings.  Band ids read (side, letter, segment): side "A" is the
    spine being laid down, side "B" the one already in place, and segment
    counts from the letter's tail.  The four complementary discs certify
    that both spines still fill the surface after the other is removed.
    """

    __slots__ = ("src", "dst", "index", "placements", "rotations", "bands",
                 "key", "tau_word", "tau_chart", "taup_word", "taup_chart")

    def __init__(self, src, dst, index, placements, rotations, bands, key,
                 tau_word, tau_chart, taup_word, taup_chart):
        self.src = src
        self.dst = dst
        self.index = index
        self.placements = placements
        self.rotations = rotations
        self.bands = bands
        self.key = key
        self.tau_word = tau_word
        self.tau_chart = tau_chart
        self.taup_word = taup_word
        self.taup_chart = taup_chart

    def label(self):
        return "d%d" % self.index

    def rotation_map(self):
        return {v: rot for v, rot in self.rotations}

    def band_map(self):
        return {eid: (g0, g1, tw) for eid, g0, g1, tw in self.bands}

    def crossings(self):
        return _CROSSING_NAMES

    def face_walks(self):
        return ribbon_faces(self.rotation_map(), self.band_map())

    def crossing_letters(self):
        """((src letter, dst letter) per crossing), along each crossing."""
        pa, pb = self.placements
        return tuple((pa[i][0], pb[i][0]) for i in range(2))

    def __eq__(self, other):
        if not isinstance(other, DoublePointMap):
            return NotImplemented
        return (self.src, self.dst, self.key) == \
            (other.src, other.dst, other.key)

    def __hash__(self):
        return hash((self.src, self.dst, self.key))

    def __repr__(self):
        return "DoublePointMap(%s over %s, %s)" % (
            self.src.word, self.dst.word, self.label())


def _smoothed_word(spine_rot, twists):
    rotations = {0: spine_rot[0], 1: spine_rot[1]}
    edges = {l: ((l, 0), (l, 1), twists[l]) for l in range(3)}
    if ribbon_face_count(rotations, edges) != 1:
        raise AssertionError("smoothed spine no longer fills with one disc")
    walk = ribbon_faces(rotations, edges)[0]
    return face_word(walk, {l: l for l in range(3)})


def enumerate_overlays(src, dst):
    """Double point maps of src over dst, one per equivalence class under
    self-matchings of either spine, crossing renaming, and band flips.

    Both marked surfaces must be of the same kind; a kind mismatch admits
    no maps at all and returns an empty tuple.
    """
    if src.surface != dst.surface:
        return ()
    return _enumerate_overlays_cached(src, dst)


@functools.lru_cache(maxsize=None)
def _enumerate_overlays_cached(src, dst):
    want_orientable = src.surface == "T"
    syms_a = _words.self_matchings(src.word)
    syms_b = _words.self_matchings(dst.word)
    survivors = {}
    for pa in _placement_reps(src.word):
        for pb in _placement_reps(dst.word):
            for rot_a, tw_a in _spine_candidates(src.word, src.surface):
                for rot_b, tw_b in _spine_candidates(dst.word, dst.surface):
                    options_a = _segment_twist_options("A", pa, tw_a)
                    options_b = _segment_twist_options("B", pb, tw_b)
                    for sa in options_a:
                        for sb in options_b:
                            seg = dict(sa)
                            seg.update(sb)
                            rotations, edges = _build_overlay(
                                src.word, dst.word, pa, pb,
                                rot_a, rot_b, seg)
                            if ribbon_face_count(rotations, edges) != 4:
                                continue
                            if ribbon_orientable(rotations, edges) != \
                                    want_orientable:
                                continue
                            key = _overlay_key(
                                rotations, edges, src.word, dst.word,
                                pa, pb, syms_a, syms_b)
                            if key in survivors:
                                continue
                            survivors[key] = (
                                pa, pb, rot_a, tw_a, rot_b, tw_b,
                                rotations, edges)
    out = []
    for index, key in enumerate(sorted(survivors)):
        pa, pb, rot_a, tw_a, rot_b, tw_b, rotations, edges = survivors[key]
        tau_word = _smoothed_word(rot_a, tw_a)
        taup_word = _smoothed_word(rot_b, tw_b)
        tau_chart = _words.matchings(tau_word, src.word)[0]
        taup_chart = _words.matchings(taup_word, dst.word)[0]
        out.append(DoublePointMap(
            src, dst, index,
            (pa, pb),
            tuple(sorted(rotations.items())),
            tuple(sorted((eid, g0, g1, tw)
                         for eid, (g0, g1, tw) in edges.items())),
            key, tau_word, tau_chart, taup_word, taup_chart))
    return tuple(out)
