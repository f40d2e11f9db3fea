"""Canonical signatures: invariance, separation, frozen digests.

The frozen digests guard the on-disk census format: stored records carry
signatures, so any change to the canonical form is a format break and
must be deliberate.
"""

import itertools

from hypothesis import given, strategies as st

from brickforge._builders import (
    point_atom,
    product_closures,
    proj_plane,
    s2_join,
    self_join_closures,
    triple_hat,
)
from brickforge._model import relabel
from brickforge._signature import canonical_form, canonical_signature

FRAMES4 = tuple(itertools.permutations(range(4)))

FROZEN = {
    "selfjoin": {
        "theta": {
            ("K", "0534bbed79de8535bbe5d145a4cee28339475363"),
            ("K", "6d0ad75ac4d40372cfc4476ec2c13647223d43a1"),
            ("T", "936c17e3bfba8480e912e21eabfa82bc556d8f97"),
        },
        "sigma": {
            ("K", "27336e3e725d1d94f1f8f1803edeb6bd9affe7cf"),
            ("K", "2e2c19a42c1a2749303051c716743bbb3022cca9"),
        },
    },
    "product": {
        ("theta", "theta"): {
            ("KK", "1f145bc009ebe88fd483850a06f229f766bc7e5f"),
            ("KT", "21b9a4f0c5370ce1332c645dfc9ba9325a76fb38"),
            ("TT", "5f34a79683e324d3ac81006ab42070891af07a9a"),
            ("KK", "805b1e3bde7b6e28e602d3dfe0695ef6be453b08"),
        },
        ("sigma", "sigma"): {
            ("KK", "4b4d73f45be26831f2e55612722a2a7d252a052c"),
            ("KK", "9aacd55deea9f8ab63cb3ac7d39c743850e1a3f6"),
        },
    },
    "atom": {
        "point": "744a95e346f5a366350d6609a9236d76e9ef54d4",
        "triple_hat": "9cf85551ff9bda7c47161f7919b6ef6afde758fd",
        "proj_plane": "84b077c2474518a3926a14eac4a56c6ffcd3926a",
        "s2_join": "9f449666989221bda0fa878aecc96942a8253d3c",
    },
}


def test_frozen_selfjoin_signatures():
    for spine in ("theta", "sigma"):
        got = {(next(iter(p.marks.values())).surface, sig)
               for sig, p in self_join_closures(spine).items()}
        assert got == FROZEN["selfjoin"][spine]


def test_frozen_product_signatures():
    for key in (("theta", "theta"), ("sigma", "sigma")):
        got = {("".join(sorted(m.surface for m in p.marks.values())), sig)
               for sig, p in product_closures(*key).items()}
        assert got == FROZEN["product"][key]


def test_frozen_atom_signatures():
    atoms = {
        "point": point_atom(),
        "triple_hat": triple_hat(),
        "proj_plane": proj_plane(),
        "s2_join": s2_join(),
    }
    for name, poly in atoms.items():
        assert canonical_signature(poly) == FROZEN["atom"][name]


def test_all_known_signatures_distinct():
    sigs = [v for group in FROZEN["selfjoin"].values() for _, v in group]
    sigs += [v for group in FROZEN["product"].values() for _, v in group]
    sigs += list(FROZEN["atom"].values())
    assert len(sigs) == len(set(sigs))


@given(st.data())
def test_signature_relabel_invariance(data):
    polys = []
    for spine in ("theta", "sigma"):
        polys.extend(self_join_closures(spine).values())
    polys.extend(product_closures("sigma", "sigma").values())
    poly = polys[data.draw(st.integers(0, len(polys) - 1))]
    vmap = list(data.draw(st.permutations(range(poly.nv))))
    frames = {v: data.draw(st.sampled_from(FRAMES4), label="frame%d" % v)
              for v in range(poly.nv)}
    q = relabel(poly, vmap, frames)
    assert canonical_signature(q) == canonical_signature(poly)


def _brute_isomorphic(a, b):
    """Exhaustive isomorphism search for small carriers (the oracle the
    signature is checked against)."""
    if a.nv != b.nv or len(a.edges) != len(b.edges):
        return False
    ident = {v: (0, 1, 2, 3) for v in range(b.nv)}
    nb = relabel(b, list(range(b.nv)), ident)
    target = (tuple(sorted(nb.edges)), nb.marks)
    for vmap in itertools.permutations(range(a.nv)):
        for frames in itertools.product(FRAMES4, repeat=a.nv):
            na = relabel(a, list(vmap), dict(enumerate(frames)))
            if (tuple(sorted(na.edges)), na.marks) == target:
                return True
    return False


def test_signature_agrees_with_brute_force_on_two_vertex_carriers():
    reps = []
    for spine in ("theta", "sigma"):
        reps.extend(self_join_closures(spine).values())
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            same_sig = canonical_signature(a) == canonical_signature(b)
            assert same_sig == _brute_isomorphic(a, b), (i, j)


def test_marks_enter_the_signature():
    poly = next(iter(self_join_closures("theta").values()))
    stripped = poly.copy()
    stripped.marks = {}
    assert canonical_signature(stripped) != canonical_signature(poly)


def test_canonical_form_is_text():
    form = canonical_form(triple_hat())
    assert isinstance(form, str) and form
