"""Marked boundary surfaces: hexagon words, matchings, loops, overlays.

The hand-model words below were read off drawings before the word layer
existed, so they are independent of the gadget tracer:

* torus/theta: hexagon with opposite sides identified in parallel, word
  x y z x' y' z' (primes meaning reversed traversal).
* klein/sigma: hexagon gluing x x z y y z', the two doubled letters being
  the one-sided loops and z the two-sided bridge.
* klein/theta: hexagon gluing x z' x y' z y', checked by cutting the
  square model of the Klein bottle along a theta spine and reading the
  boundary of the resulting disc.

The loop table and its orientation flags were frozen from the square
model with sides (0,y)~(1,y) and (x,0)~(1-x,1): crossing counts against
the three normal-curve edges determine the homology value mod 2, and a
band transported around each representative decides two-sidedness.  An
independent doubling check (a connected curve is two-sided exactly when
doubling its coordinates keeps two components) guards the same flags.
"""

import hashlib
import itertools

import pytest
from hypothesis import given, strategies as st

from brickforge import surfaces
from brickforge import _words
from brickforge._builders import (
    build_carrier,
    gadget_orbits,
    self_join_closures,
)
from brickforge._builders import _hex_cycle
from brickforge._model import face_is_hexagon, mark_spine_edges
from brickforge.surfaces import (
    NormalCurve,
    boundary_surface,
    classify_loops_klein,
    enumerate_double_point_maps,
    enumerate_gluings,
    marked_surface,
    matching_solutions,
    mcg_klein,
    parse_klein_table,
    serialize_klein_table,
)

HAND_TORUS_THETA = ((0, 1), (1, 1), (2, 1), (0, -1), (1, -1), (2, -1))
HAND_KLEIN_SIGMA = ((0, 1), (0, 1), (2, 1), (1, 1), (1, 1), (2, -1))
HAND_KLEIN_THETA = ((0, 1), (2, -1), (0, 1), (1, -1), (2, 1), (1, -1))

CANON_TORUS_THETA = ((0, 1), (1, 1), (2, 1), (0, -1), (1, -1), (2, -1))
CANON_KLEIN_SIGMA = ((0, 1), (0, 1), (1, 1), (2, 1), (2, 1), (1, -1))
CANON_KLEIN_THETA = ((0, 1), (1, 1), (0, 1), (2, 1), (1, -1), (2, 1))

ALL_KINDS = (("T", "theta"), ("K", "theta"), ("K", "sigma"))


def transform_word(word, rot, refl, perm, flips):
    """Apply a dihedral move, letter renaming, and orientation flips."""
    if refl:
        word = tuple((l, -s) for l, s in reversed(word))
    word = word[rot:] + word[:rot]
    return tuple((perm[l], s * flips[l]) for l, s in word)


# -- hexagon words ------------------------------------------------------------


def test_reference_words_match_hand_models():
    by_hand = {
        ("T", "theta"): HAND_TORUS_THETA,
        ("K", "sigma"): HAND_KLEIN_SIGMA,
        ("K", "theta"): HAND_KLEIN_THETA,
    }
    canon = {
        ("T", "theta"): CANON_TORUS_THETA,
        ("K", "sigma"): CANON_KLEIN_SIGMA,
        ("K", "theta"): CANON_KLEIN_THETA,
    }
    for key in ALL_KINDS:
        ms = marked_surface(*key)
        assert ms.word == canon[key]
        assert _words.canonical_word(by_hand[key]) == ms.word
        assert ms.canonical() == ms


def test_no_torus_carries_a_sigma_spine():
    with pytest.raises(ValueError, match="one-sided"):
        marked_surface("T", "sigma")
    with pytest.raises(ValueError):
        marked_surface("X", "theta")


def test_gadget_hexagons_fall_into_exactly_three_word_classes():
    seen = {}
    for spine in ("theta", "sigma"):
        for gadget in gadget_orbits(spine):
            cycle = _hex_cycle(gadget.edges)
            word = tuple((e, 1 if d == 0 else -1) for e, _w, d in cycle)
            got = _words.canonical_word(word)
            expected = marked_surface(gadget.kind, spine).word
            assert got == expected
            seen[(gadget.kind, spine)] = got
    assert len(seen) == 3
    assert len(set(seen.values())) == 3


def test_cycle_orientation_verdicts():
    tt = marked_surface("T", "theta")
    assert all(tt.cycle_orientations().values())
    assert tt.distinguished_edge is None

    kt = marked_surface("K", "theta")
    verdicts = kt.cycle_orientations()
    reversing = [name for name, keep in verdicts.items() if not keep]
    assert len(reversing) == 2
    shared = frozenset.intersection(*reversing)
    assert shared == frozenset([kt.distinguished_edge])
    assert kt.distinguished_edge == 1

    ks = marked_surface("K", "sigma")
    assert ks.cycle_orientations() == {0: False, 2: False}
    assert ks.bridge == 1
    assert ks.distinguished_edge == 1
    assert ks.loops == (0, 2)


def test_self_matching_group_orders():
    # The torus theta realizes all 12 graph symmetries; on the Klein
    # bottle only the distinguished-edge-fixing half of each stabilizer
    # survives, giving groups of order 4.
    sizes = {("T", "theta"): 12, ("K", "theta"): 4, ("K", "sigma"): 4}
    for key, size in sizes.items():
        ms = marked_surface(*key)
        group = _words.self_matchings(ms.word)
        assert len(group) == size
        keys = {m.key() for m in group}
        assert (False, 0) in keys
        # Group closure and invertibility.
        for first, second in itertools.product(group, repeat=2):
            comp = _words.compose_matchings(
                ms.word, ms.word, ms.word, first, second)
            assert comp.key() in keys
        for m in group:
            inv = _words.invert_matching(ms.word, ms.word, m)
            assert inv.key() in keys


def test_klein_self_matchings_fix_the_distinguished_edge():
    for key in (("K", "theta"), ("K", "sigma")):
        ms = marked_surface(*key)
        group = _words.self_matchings(ms.word)
        fixed = ms.distinguished_edge
        others = sorted(set(range(3)) - {fixed})
        assert all(m.letter_map[fixed] == fixed for m in group)
        # The swap of the other two edges is realized.
        assert any(m.letter_map[others[0]] == others[1] for m in group)


def test_cross_kind_words_never_match():
    words = [marked_surface(*key).word for key in ALL_KINDS]
    for a, b in itertools.permutations(words, 2):
        assert _words.matchings(a, b) == []


@given(
    base=st.sampled_from(ALL_KINDS),
    rot=st.integers(min_value=0, max_value=5),
    refl=st.booleans(),
    perm=st.permutations(range(3)),
    flips=st.tuples(*[st.sampled_from((1, -1))] * 3),
)
def test_canonical_word_is_transform_invariant(base, rot, refl, perm, flips):
    word = marked_surface(*base).word
    moved = transform_word(word, rot, refl, tuple(perm), flips)
    assert _words.canonical_word(moved) == word


# -- gluing maps ---------------------------------------------------------------


def test_gluing_enumeration_counts():
    for key in ALL_KINDS:
        ms = marked_surface(*key)
        maps = enumerate_gluings(ms, ms)
        assert len(maps) == 1
        assert maps[0].label() == "g0"
    # Any mismatch empties the list: a different surface kind loses the
    # homeomorphism, a different spine shape loses the graph isomorphism.
    for a, b in itertools.permutations(ALL_KINDS, 2):
        assert enumerate_gluings(marked_surface(*a), marked_surface(*b)) == []


def test_gluing_maps_respect_distinguished_edges():
    for a, b in itertools.product(ALL_KINDS, repeat=2):
        src = marked_surface(*a)
        dst = marked_surface(*b)
        for gm in enumerate_gluings(src, dst):
            assert gm.src == src and gm.dst == dst
            if src.distinguished_edge is not None:
                assert gm.edge_map[src.distinguished_edge] == \
                    dst.distinguished_edge
            # The matching really carries one word onto the other.
            keys = {m.key() for m in _words.matchings(src.word, dst.word)}
            assert gm.matching().key() in keys


def test_gluing_rejects_non_surface_arguments():
    with pytest.raises(TypeError):
        enumerate_gluings(marked_surface("T", "theta"), "T")


@given(data=st.data())
def test_gluing_class_absorbs_self_matchings(data):
    # Composing the returned representative with any spine symmetry on
    # either side must stay inside the full matching set: the class is a
    # double coset and the quotient loses nothing.
    key = data.draw(st.sampled_from(ALL_KINDS))
    src = marked_surface(*key)
    dst = marked_surface(*key)
    gm = enumerate_gluings(src, dst)[0]
    sym = data.draw(st.sampled_from(_words.self_matchings(src.word)))
    comp = _words.compose_matchings(
        src.word, src.word, dst.word, sym, gm.matching())
    keys = {m.key() for m in _words.matchings(src.word, dst.word)}
    assert comp.key() in keys


# -- loops on the Klein bottle -------------------------------------------------


EXPECTED_LOOPS = {
    "0": (True, (0, 0, 0, 0, 0, 0)),
    "a": (True, (0, 0, 1, 0, 0, 1)),
    "b": (False, (0, 1, 0, 0, 1, 0)),
    "2b": (True, (0, 2, 0, 0, 2, 0)),
    "a+b": (False, (1, 0, 0, 1, 0, 0)),
}


def test_loop_table_is_exactly_the_known_one():
    table = {c.name: (c.orientation_preserving, c.coords)
             for c in classify_loops_klein(4)}
    assert table == EXPECTED_LOOPS


def test_loop_table_stable_up_to_weight_twelve():
    base = {(c.h1, c.orientation_preserving)
            for c in classify_loops_klein(4)}
    for bound in (6, 8, 12):
        grown = {(c.h1, c.orientation_preserving)
                 for c in classify_loops_klein(bound)}
        assert grown == base


def test_weight_zero_gives_only_the_trivial_class():
    table = classify_loops_klein(0)
    assert len(table) == 1
    assert table[0].name == "0"
    assert table[0].coords == (0, 0, 0, 0, 0, 0)


def test_matching_solutions_satisfy_derived_equalities():
    sols = matching_solutions(12)
    assert sols
    assert (1, 1, 1, 1, 1, 1) in {curve.coords for curve in sols}
    for curve in sols:
        n, m, p, n2, m2, p2 = curve.coords
        assert (n2, m2, p2) == (n, m, p)


def test_vertex_link_curve_is_trivial():
    curve = NormalCurve((1, 1, 1, 1, 1, 1))
    assert curve.is_connected()
    assert curve.h1_class() == (0, 0)
    assert curve.orientation_preserving()
    assert curve.weight == 6


def test_normal_curve_validation():
    with pytest.raises(ValueError):
        NormalCurve((1, 1))
    with pytest.raises(ValueError):
        NormalCurve((0, 0, -1, 0, 0, -1))
    with pytest.raises(ValueError, match="matching fails"):
        NormalCurve((1, 0, 0, 0, 0, 0))


def test_doubling_oracle_agrees_with_orientation_flags():
    # Doubling the coordinates of a connected curve splits a two-sided
    # curve into two parallel copies but keeps a one-sided curve in one
    # piece (the boundary of a thin band around it).
    for c in classify_loops_klein(8):
        curve = NormalCurve(c.coords)
        if curve.is_empty:
            continue
        doubled = curve.doubled()
        expected = 2 if curve.orientation_preserving() else 1
        assert doubled.component_count() == expected


@given(
    n=st.integers(min_value=0, max_value=6),
    m=st.integers(min_value=0, max_value=6),
    p=st.integers(min_value=0, max_value=6),
)
def test_component_walks_cover_and_respect_parity(n, m, p):
    curve = NormalCurve((n, m, p, n, m, p))
    comps = curve.components()
    covered = set()
    for points, (alpha, beta), crossings in comps:
        assert not (points & covered)
        covered |= points
        # Mod-2 intersection with the three edge classes determines the
        # homology value: edge a meets b once, b is one-sided, and the
        # diagonal carries a+b.
        assert crossings["a"] % 2 == beta % 2
        assert crossings["b"] % 2 == (alpha + beta) % 2
        assert crossings["d"] % 2 == alpha % 2
    assert len(covered) == (n + m) + (m + p) + (n + p)
    if curve.is_connected() and not curve.is_empty:
        doubled = curve.doubled()
        expected = 2 if curve.orientation_preserving() else 1
        assert doubled.component_count() == expected


# -- mapping classes -----------------------------------------------------------


def test_mcg_is_the_four_group_with_known_action():
    group = mcg_klein()
    assert [g.name for g in group] == ["id", "phi", "psi", "phipsi"]
    ident = group[0]
    by_name = {g.name: g for g in group}
    b = (0, 1)
    for g in group:
        assert g.compose(g).name == "id"
        if g.name != "id":
            # Faithful on signed homology: the unsigned quotient hides
            # the sign flip of phi, the matrix does not.
            assert g.matrix != ident.matrix
    for g, h in itertools.product(group, repeat=2):
        assert g.compose(h).name == h.compose(g).name
    assert by_name["psi"].apply(b) == (1, 1)
    assert by_name["phi"].matrix == ((1, 0), (0, -1))
    assert by_name["phi"].apply(b) == b  # -b and b agree unsigned
    assert by_name["phipsi"].name == by_name["phi"].compose(by_name["psi"]).name


# -- serialization -------------------------------------------------------------


def test_klein_table_round_trip():
    loops = classify_loops_klein(4)
    text = serialize_klein_table(loops, mcg_klein())
    parsed_loops, parsed_mcg = parse_klein_table(text)
    assert [(c.h1, c.orientation_preserving, c.coords)
            for c in parsed_loops] == \
        [(c.h1, c.orientation_preserving, c.coords) for c in loops]
    assert [(g.name, g.matrix) for g in parsed_mcg] == \
        [(g.name, g.matrix) for g in mcg_klein()]
    assert text.splitlines()[0] == "KLEIN v=1"


def test_klein_table_rejects_unknown_tags():
    with pytest.raises(ValueError):
        parse_klein_table("KLEIN v=1\nFROB 1 2 3\n")


# -- boundary charts -----------------------------------------------------------


def _marked_closure(spine, kind):
    for _sig, poly in sorted(self_join_closures(spine).items()):
        for face_index, mark in poly.marks.items():
            if mark.surface == kind:
                return poly, face_index
    raise AssertionError("no closure with a %s mark" % kind)


def test_boundary_chart_on_torus_closure():
    poly, face_index = _marked_closure("theta", "T")
    chart = boundary_surface(poly, face_index)
    assert chart.face_index == face_index
    assert chart.surface == marked_surface("T", "theta")
    assert _words.canonical_word(chart.raw_word) == chart.surface.word
    carrier_edges = {chart.carrier_edge(letter) for letter in range(3)}
    assert carrier_edges == set(mark_spine_edges(poly, face_index))
    keys = {m.key()
            for m in _words.matchings(chart.raw_word, chart.surface.word)}
    assert chart.chart.key() in keys


def test_boundary_chart_on_klein_closure():
    poly, face_index = _marked_closure("sigma", "K")
    chart = boundary_surface(poly, face_index)
    assert chart.surface == marked_surface("K", "sigma")
    # The bridge letter of the canonical word lands on the carrier edge
    # traversed with both directions by the hexagon.
    bridge_edge = chart.carrier_edge(chart.surface.bridge)
    directions = {}
    for edge, direction in chart.sides:
        directions.setdefault(edge, set()).add(direction)
    assert directions[bridge_edge] == {0, 1}


def test_boundary_chart_errors():
    poly, face_index = _marked_closure("theta", "T")
    faces = poly.faces()
    unmarked = [i for i, f in enumerate(faces)
                if i not in poly.marks and face_is_hexagon(poly, f)]
    non_hexagons = [i for i, f in enumerate(faces)
                    if not face_is_hexagon(poly, f)]
    if unmarked:
        with pytest.raises(KeyError):
            boundary_surface(poly, unmarked[0])
    assert non_hexagons
    with pytest.raises((KeyError, ValueError)):
        boundary_surface(poly, non_hexagons[0])


# -- double point maps ---------------------------------------------------------


OVERLAY_COUNTS = {
    (("T", "theta"), ("T", "theta")): 2,
    (("K", "theta"), ("K", "theta")): 14,
    (("K", "sigma"), ("K", "sigma")): 4,
    (("K", "theta"), ("K", "sigma")): 4,
    (("K", "sigma"), ("K", "theta")): 4,
}

# Regression lock over the canonical keys of every class above; the
# structural assertions below are the semantic guarantee, the digest only
# pins the enumeration order and gauge conventions.
OVERLAY_DIGEST = "af23a2c301727907"


def _all_overlay_classes():
    for (a, b), count in sorted(OVERLAY_COUNTS.items()):
        maps = enumerate_double_point_maps(
            marked_surface(*a), marked_surface(*b))
        assert len(maps) == count
        for m in maps:
            yield m


def _short_kind(key):
    kind, spine = key
    return ("t" if kind == "T" else "k") + spine[0]


def test_double_point_map_counts_and_digest():
    digest = hashlib.sha256()
    for (a, b) in (
        (("T", "theta"), ("T", "theta")),
        (("K", "theta"), ("K", "theta")),
        (("K", "sigma"), ("K", "sigma")),
        (("K", "theta"), ("K", "sigma")),
        (("K", "sigma"), ("K", "theta")),
    ):
        maps = enumerate_double_point_maps(
            marked_surface(*a), marked_surface(*b))
        assert len(maps) == OVERLAY_COUNTS[(a, b)]
        digest.update(("%s,%s" % (_short_kind(a), _short_kind(b))).encode())
        for m in maps:
            digest.update(repr(m.key).encode())
    assert digest.hexdigest()[:16] == OVERLAY_DIGEST


def test_double_point_maps_structure():
    for m in _all_overlay_classes():
        rotations = m.rotation_map()
        bands = m.band_map()
        assert sorted(rotations) == ["a0", "a1", "b0", "b1", "c0", "c1"]
        assert len(bands) == 10
        assert len(m.crossings()) == 2
        for c in m.crossings():
            strand_sides = [germ[0][0] for germ in rotations[c]]
            assert strand_sides == ["A", "B", "A", "B"]
        for v in ("a0", "a1", "b0", "b1"):
            assert len(rotations[v]) == 3
        walks = m.face_walks()
        assert len(walks) == 4
        flags = [flag for walk in walks for flag in walk]
        assert len(flags) == 20 and len(set(flags)) == 20
        # Removing either spine leaves the other filling the surface.
        assert _words.matchings(m.tau_word, m.src.word)
        assert _words.matchings(m.taup_word, m.dst.word)


def test_torus_push_off_is_among_the_classes():
    tt = marked_surface("T", "theta")
    maps = enumerate_double_point_maps(tt, tt)
    assert maps
    untwisted = [m for m in maps
                 if all(tw == 0 for _e, _g0, _g1, tw in m.bands)]
    # A parallel translate of the spine meets it in exactly two points
    # lying on two different edges, with nothing twisted anywhere.
    assert len(untwisted) == 1
    (letters_c0, letters_c1) = untwisted[0].crossing_letters()
    assert letters_c0[0] != letters_c1[0]
    assert letters_c0[1] != letters_c1[1]


def test_sigma_overlays_cross_on_the_one_sided_loops():
    ks = marked_surface("K", "sigma")
    loops = set(ks.loops)
    for m in enumerate_double_point_maps(ks, ks):
        for pa in m.placements:
            assert {letter for letter, _pos in pa} == loops
        # One-sidedness shows up as an odd twist total along each loop.
        # (The loop letters close up through one vertex, so vertex flips
        # toggle their segments twice and the parity is gauge-invariant;
        # the bridge parity is not, and says nothing.)
        for side in ("A", "B"):
            totals = {0: 0, 1: 0, 2: 0}
            for (prefix, letter, _j), _g0, _g1, tw in m.bands:
                if prefix == side:
                    totals[letter] ^= tw
            assert totals[0] == 1 and totals[2] == 1


def test_double_point_maps_reject_kind_mismatch_and_same_component():
    tt = marked_surface("T", "theta")
    ks = marked_surface("K", "sigma")
    assert enumerate_double_point_maps(tt, ks) == ()
    poly, face_index = _marked_closure("theta", "T")
    chart = boundary_surface(poly, face_index)
    with pytest.raises(ValueError, match="distinct boundary"):
        enumerate_double_point_maps(chart, chart)
    with pytest.raises(TypeError):
        enumerate_double_point_maps(tt, 7)


def test_double_point_maps_accept_charts_of_distinct_components():
    # A two-hexagon closure provides two concrete components of one
    # carrier; chart-level enumeration must agree with the abstract one.
    # Join two torus gadgets leg-to-leg instead of sweeping the whole
    # product family: the first admissible joint is enough here.
    torus_gadgets = [g for g in gadget_orbits("theta") if g.kind == "T"]
    assert torus_gadgets
    ga = torus_gadgets[0]
    for pa, pb, pc, pd in itertools.product(range(6), repeat=4):
        poly = build_carrier(
            [ga, ga],
            [((0, 0), (1, 0), pa, pb), ((0, 1), (1, 1), pc, pd)])
        marked = sorted(poly.marks)
        if len(marked) != 2:
            continue
        if sorted(poly.marks[f].surface for f in marked) != ["T", "T"]:
            continue
        try:
            chart_a = boundary_surface(poly, marked[0])
            chart_b = boundary_surface(poly, marked[1])
        except (KeyError, ValueError):
            continue
        maps = enumerate_double_point_maps(chart_a, chart_b)
        tt = marked_surface("T", "theta")
        assert len(maps) == len(enumerate_double_point_maps(tt, tt))
        return
    raise AssertionError("no joint produced two torus marks")
