"""Carrier surgery: assembling, self-assembling, connected sum, chains.

The expected signatures below were computed once from the frozen census
carriers and pinned.  Identity checks (gluing a product collar changes
nothing) double as an independent oracle for the splicing code, since the
answer is forced by what the collar is, not by the surgery implementation.
"""
import pytest
from hypothesis import given, strategies as st

from brickforge._builders import (
    point_atom,
    product_closures,
    proj_plane,
    self_join_closures,
    sigma_chain,
    triple_hat,
)
from brickforge._signature import canonical_signature
from brickforge._surgery import (
    UnsupportedAssembling,
    assemble_carriers,
    connected_sum_carriers,
    self_assemble_carrier,
)
from brickforge._thicken import thicken, valid_pair_profile
from brickforge.polyhedron import validate
from brickforge.surfaces import (
    boundary_surface,
    enumerate_double_point_maps,
    enumerate_gluings,
)

SIGS = {
    "B2": "936c17e3",
    "B2p": "27336e3e",
    "B0": "5f34a796",
    "B0p": "805b1e3b",
    "B0pp": "4b4d73f4",
}


def load_carriers():
    pool = {}
    for spine in ("theta", "sigma"):
        for sig, poly in self_join_closures(spine).items():
            pool[sig[:8]] = poly
    for pair in (("theta", "theta"), ("sigma", "sigma")):
        for sig, poly in product_closures(*pair).items():
            pool[sig[:8]] = poly
    return {name: pool[prefix] for name, prefix in SIGS.items()}


CARRIERS = load_carriers()


def sig8(poly):
    return canonical_signature(poly)[:8]


def glue(poly_a, face_a, poly_b, face_b):
    src = boundary_surface(poly_a, face_a)
    dst = boundary_surface(poly_b, face_b)
    maps = enumerate_gluings(src.surface, dst.surface)
    assert len(maps) == 1
    return assemble_carriers(poly_a, face_a, poly_b, face_b, maps[0])


# -- assembling --------------------------------------------------------------

IDENTITY_CASES = [
    # gluing any end of a product collar onto a matching boundary gives
    # back the same carrier; likewise the one-gadget closures absorb their
    # collar.  (a, b, expected) where expected is whichever side is not
    # the collar.
    ("B0", "B0", "B0"),
    ("B2", "B0", "B2"),
    ("B0p", "B0p", "B0p"),
    ("B0pp", "B0pp", "B0pp"),
    ("B2p", "B0pp", "B2p"),
    ("B0pp", "B2p", "B2p"),
]


@pytest.mark.parametrize("a_name,b_name,want", IDENTITY_CASES)
def test_assemble_identity_laws(a_name, b_name, want):
    pa, pb = CARRIERS[a_name], CARRIERS[b_name]
    for fa in sorted(pa.marks):
        for fb in sorted(pb.marks):
            out = glue(pa, fa, pb, fb)
            assert sig8(out) == SIGS[want]
            rep = validate(out)
            assert rep.valid
            assert thicken(out).thickenable


def test_assemble_survey_census_pairs():
    # Sweep every compatible boundary pairing among the census carriers.
    # Whenever the merged complex stays special (all faces discs) the
    # result must thicken; the two self-against-self cases merge a face
    # into an annulus and must be refused, not silently encoded.
    names = sorted(SIGS)
    refused = set()
    for a_name in names:
        for b_name in names:
            pa, pb = CARRIERS[a_name], CARRIERS[b_name]
            for fa in sorted(pa.marks):
                for fb in sorted(pb.marks):
                    src = boundary_surface(pa, fa)
                    dst = boundary_surface(pb, fb)
                    maps = enumerate_gluings(src.surface, dst.surface)
                    if not maps:
                        continue
                    try:
                        out = assemble_carriers(pa, fa, pb, fb, maps[0])
                    except UnsupportedAssembling:
                        refused.add((a_name, b_name))
                        continue
                    assert out.euler() == 1
                    assert thicken(out).thickenable or not out.marks
    assert refused == {("B2", "B2"), ("B2p", "B2p")}


def test_closed_assemblings_with_annulus_face_are_refused():
    for name in ("B2", "B2p"):
        poly = CARRIERS[name]
        (fa,) = sorted(poly.marks)
        other = poly.copy()
        with pytest.raises(UnsupportedAssembling):
            glue(poly, fa, other, sorted(other.marks)[0])


def test_assemble_rejects_mismatched_chart():
    b2, b0pp = CARRIERS["B2"], CARRIERS["B0pp"]
    (fa,) = sorted(b2.marks)
    fb = sorted(b0pp.marks)[0]
    src = boundary_surface(b0pp, fb)
    gmaps = enumerate_gluings(src.surface, src.surface)
    with pytest.raises(ValueError):
        assemble_carriers(b2, fa, b0pp, fb, gmaps[0])


# -- self-assembling ---------------------------------------------------------

SELF_COUNTS = {"B0": 2, "B0p": 14, "B0pp": 4}


@pytest.mark.parametrize("name", sorted(SELF_COUNTS))
def test_self_assemble_counts_and_validity(name):
    poly = CARRIERS[name]
    fa, fb = sorted(poly.marks)
    dmaps = enumerate_double_point_maps(
        boundary_surface(poly, fa), boundary_surface(poly, fb))
    assert len(dmaps) == SELF_COUNTS[name]
    sigs = set()
    for dm in dmaps:
        out = self_assemble_carrier(poly, fa, fb, dm)
        assert out.nv == poly.nv + 2
        assert len(out.edges) == len(poly.edges) + 4
        assert len(out.faces()) == len(poly.faces()) + 2
        # both hexagons are consumed: interior vertex count rises by the
        # two new crossings plus the four freed ends
        assert out.interior_vertex_count() == poly.interior_vertex_count() + 6
        assert validate(out).valid
        sigs.add(sig8(out))
    if name == "B0":
        assert sigs == {"c83db09f", "745b8573"}
    if name == "B0pp":
        assert sigs == {"dcfafc62", "ce2fa7ca"}


def test_self_assemble_requires_distinct_faces():
    poly = CARRIERS["B0"]
    fa, fb = sorted(poly.marks)
    dmaps = enumerate_double_point_maps(
        boundary_surface(poly, fa), boundary_surface(poly, fb))
    with pytest.raises(ValueError):
        self_assemble_carrier(poly, fa, fa, dmaps[0])


# -- connected sum -----------------------------------------------------------

def test_connected_sum_basic():
    out = connected_sum_carriers(triple_hat(), proj_plane())
    assert out.euler() == 1
    assert len(out.arcs) == 1
    assert validate(out).quasi_standard
    assert sig8(out) == "d673724e"


def test_connected_sum_commutes():
    pairs = [
        (triple_hat(), proj_plane()),
        (CARRIERS["B2"], CARRIERS["B0"]),
        (point_atom(), triple_hat()),
    ]
    for a, b in pairs:
        assert sig8(connected_sum_carriers(a, b)) == \
            sig8(connected_sum_carriers(b, a))


def test_connected_sum_with_point_uses_point_anchor():
    out = connected_sum_carriers(point_atom(), triple_hat())
    assert out.point
    assert out.arcs == [("point", 0)]
    assert out.euler() == 1


def test_connected_sum_of_two_points_is_refused():
    with pytest.raises(UnsupportedAssembling):
        connected_sum_carriers(point_atom(), point_atom())


def test_connected_sum_keeps_marks():
    out = connected_sum_carriers(CARRIERS["B2"], CARRIERS["B0"])
    kinds = sorted((m.surface, m.spine) for m in out.marks.values())
    assert kinds == [("T", "theta")] * 3


# -- sigma chains ------------------------------------------------------------

def test_chain_endpoints_match_census():
    assert sig8(sigma_chain(1)) == SIGS["B2p"]
    assert sig8(sigma_chain(2)) == SIGS["B0pp"]


def test_chain_three_is_a_valid_pair():
    c3 = sigma_chain(3)
    assert sig8(c3) == "ee7e3683"
    assert len(c3.marks) == 3
    assert all(m.surface == "K" and m.spine == "sigma"
               for m in c3.marks.values())
    rep = validate(c3)
    assert rep.valid
    tk = thicken(c3)
    assert tk.thickenable
    assert valid_pair_profile(c3, tk)


def test_chain_three_peels_to_chain_two():
    c3 = sigma_chain(3)
    b2p = CARRIERS["B2p"]
    for fa in sorted(c3.marks):
        out = glue(c3, fa, b2p, sorted(b2p.marks)[0])
        assert sig8(out) == SIGS["B0pp"]


@given(st.integers(min_value=1, max_value=6),
       st.integers(min_value=1, max_value=6))
def test_chain_arithmetic(k, h):
    if k + h == 2:
        # both summands are one-gadget closures; their union closes up
        # with an annular face and has no chain form
        return
    a, b = sigma_chain(k), sigma_chain(h)
    fa = sorted(a.marks)[0]
    fb = sorted(b.marks)[0]
    out = glue(a, fa, b, fb)
    assert sig8(out) == sig8(sigma_chain(k + h - 2))
