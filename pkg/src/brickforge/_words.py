"""Cyclic hexagon words and their symmetry machinery.

Cutting a marked boundary surface open along its spine leaves one
hexagonal disc.  Reading the boundary of that disc gives a cyclic word of
six letter occurrences, one per side, where the letters are the three
spine edges and the sign records the traversal direction.  Everything the
gluing layer needs lives on that word:

  * the identification complex it spells out (corner classes = spine
    vertices, edge endpoints, loop/bridge shape, orientability),
  * whether a closed walk in the spine preserves orientation on the
    surface (band transport around the vertex fans),
  * the dihedral matchings between two words, which are exactly the
    mapping classes of marked-surface homeomorphisms seen combinatorially.

Conventions.  A word is a tuple of six (letter, sign) pairs with letters
0, 1, 2 and sign +1/-1.  Side k runs from corner k to corner (k+1) mod 6.
A matching (rot, refl) sends side k to side (rot + k) mod 6, or to side
(rot - k - 1) mod 6 with reversed traversal when refl is set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

LETTERS = (0, 1, 2)


def check_word(word):
    """Raise ValueError unless word is six (letter in 0..2, sign +-1)
    pairs with each letter appearing exactly twice."""
    if len(word) != 6:
        raise ValueError("a hexagon word has six sides, got %d" % len(word))
    counts = [0, 0, 0]
    for item in word:
        try:
            letter, sign = item
        except (TypeError, ValueError):
            raise ValueError("word sides must be (letter, sign) pairs")
        if letter not in LETTERS or sign not in (1, -1):
            raise ValueError("bad word side %r" % (item,))
        counts[letter] += 1
    if counts != [2, 2, 2]:
        raise ValueError("each letter must appear exactly twice: %r" % (word,))


def occurrences(word):
    """Side indices of each letter: {letter: (k1, k2)} with k1 < k2."""
    out = {}
    for k, (letter, _sign) in enumerate(word):
        out.setdefault(letter, []).append(k)
    return {letter: tuple(ks) for letter, ks in out.items()}


def corner_classes(word):
    """Merge the six hexagon corners into spine vertices.

    Side k with sign +1 starts at the letter's tail and ends at its head;
    sign -1 swaps the ends.  Corners assigned to the same edge end are the
    same spine vertex, and ends merge further when a letter closes into a
    loop.  Returns a list class_of[corner] with classes numbered by first
    appearance.
    """
    parent = list(range(6))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    ends = {}
    for k, (letter, sign) in enumerate(word):
        start_end = ("t" if sign == 1 else "h", letter)
        stop_end = ("h" if sign == 1 else "t", letter)
        for end, corner in ((start_end, k), (stop_end, (k + 1) % 6)):
            if end in ends:
                union(ends[end], corner)
            else:
                ends[end] = corner
    order = {}
    out = []
    for corner in range(6):
        root = find(corner)
        if root not in order:
            order[root] = len(order)
        out.append(order[root])
    return out


def word_complex(word):
    """Structural summary of the identification complex.

    Returns a dict with
      vertices: number of corner classes,
      endpoints: {letter: (tail class, head class)},
      loops / bridges: letters with equal / distinct endpoint classes,
      trivalent: both vertices meet three edge ends,
      shape: "theta", "sigma", or None,
      orientable: every letter appears once with each sign.
    """
    check_word(word)
    classes = corner_classes(word)
    nverts = max(classes) + 1
    endpoints = {}
    for k, (letter, sign) in enumerate(word):
        tail_corner = k if sign == 1 else (k + 1) % 6
        head_corner = (k + 1) % 6 if sign == 1 else k
        tail, head = classes[tail_corner], classes[head_corner]
        if letter in endpoints and endpoints[letter] != (tail, head):
            raise ValueError("inconsistent endpoints for letter %d" % letter)
        endpoints[letter] = (tail, head)
    loops = tuple(l for l, (t, h) in sorted(endpoints.items()) if t == h)
    bridges = tuple(l for l, (t, h) in sorted(endpoints.items()) if t != h)
    degree = {}
    for t, h in endpoints.values():
        degree[t] = degree.get(t, 0) + 1
        degree[h] = degree.get(h, 0) + 1
    trivalent = nverts == 2 and all(degree.get(v) == 3 for v in range(2))
    shape = None
    if trivalent and len(loops) == 0:
        shape = "theta"
    elif trivalent and len(loops) == 2:
        shape = "sigma"
    signs = occurrences(word)
    orientable = all(
        word[ks[0]][1] != word[ks[1]][1] for ks in signs.values())
    return {
        "vertices": nverts,
        "endpoints": endpoints,
        "loops": loops,
        "bridges": bridges,
        "trivalent": trivalent,
        "shape": shape,
        "orientable": orientable,
    }


# -- band transport ----------------------------------------------------------
#
# Walking a closed edge path in the spine and carrying a transversal band
# along it detects orientation behaviour: the walk is orientation-reversing
# exactly when the band comes back flipped.  The band's bank at any moment
# shadows one of the two side occurrences of the current letter.  At a
# vertex the bank slides around the corner fan from the arrival germ to the
# departure germ, and the fan is read off the word: corner k is flanked by
# the end germ of side k-1 and the start germ of side k, where a germ is an
# edge end (letter, "t"/"h").


def _side_germs(word, k):
    letter, sign = word[k]
    start = (letter, "t" if sign == 1 else "h")
    stop = (letter, "h" if sign == 1 else "t")
    return start, stop


def _corner_flanks(word, corner):
    """The two germs flanking a corner: (end of side corner-1, start of
    side corner)."""
    prev_stop = _side_germs(word, (corner - 1) % 6)[1]
    next_start = _side_germs(word, corner)[0]
    return prev_stop, next_start


def _germ_corners(word, germ):
    """The two corners flanking an edge-end germ."""
    out = []
    for corner in range(6):
        if germ in _corner_flanks(word, corner):
            out.append(corner)
    # A germ can flank one corner twice only if the word is degenerate;
    # the trivalent words this module handles never do that.
    if len(out) != 2:
        raise ValueError("germ %r flanks %d corners" % (germ, len(out)))
    return out


def _arrival(word, bank, direction):
    """Corner where the given bank (side occurrence) arrives when its
    letter is traversed in `direction` (+1 tail to head)."""
    sign = word[bank][1]
    return (bank + 1) % 6 if sign == direction else bank


def _departure_banks(word, letter):
    return occurrences(word)[letter]


def loop_preserves_orientation(word, path):
    """True when the closed spine walk `path` is orientation-preserving.

    `path` is a sequence of (letter, direction) steps, direction +1 for
    tail to head, forming a closed walk in the spine graph.  The walk must
    be embedded (no repeated edges); theta loops are two-edge walks and
    sigma loops are single loop edges.
    """
    check_word(word)
    comp = word_complex(word)
    if not comp["trivalent"]:
        raise ValueError("band transport needs a trivalent spine word")
    for letter, direction in path:
        if letter not in LETTERS or direction not in (1, -1):
            raise ValueError("bad path step %r" % ((letter, direction),))
    # Closed walk check.
    pos = None
    start_vertex = None
    for letter, direction in path:
        tail, head = comp["endpoints"][letter]
        frm, to = (tail, head) if direction == 1 else (head, tail)
        if pos is None:
            start_vertex = frm
        elif pos != frm:
            raise ValueError("path steps do not concatenate")
        pos = to
    if pos != start_vertex:
        raise ValueError("path is not closed")

    def step_bank(bank, step_index):
        letter, direction = path[step_index]
        nxt_letter, nxt_direction = path[(step_index + 1) % len(path)]
        g_in = (letter, "h" if direction == 1 else "t")
        g_out = (nxt_letter, "t" if nxt_direction == 1 else "h")
        if g_in == g_out:
            raise ValueError("path backtracks through a germ")
        corner = _arrival(word, bank, direction)
        crossed = g_in
        while True:
            flanks = _corner_flanks(word, corner)
            if g_out in flanks:
                break
            others = [g for g in flanks if g != crossed]
            if len(others) != 1:
                raise ValueError("fan walk lost at corner %d" % corner)
            crossed = others[0]
            a, b = _germ_corners(word, crossed)
            corner = b if corner == a else a
        # The stop corner flanks g_out as the start (or end) of exactly one
        # side occurrence of the next letter; shadow that occurrence.
        for occ in _departure_banks(word, nxt_letter):
            start_corner = occ if word[occ][1] == nxt_direction \
                else (occ + 1) % 6
            if start_corner == corner and g_out in _corner_flanks(word, corner):
                return occ
        raise ValueError("no departure bank at corner %d" % corner)

    first_letter = path[0][0]
    start_bank = _departure_banks(word, first_letter)[0]
    bank = start_bank
    for i in range(len(path)):
        bank = step_bank(bank, i)
    if bank not in _departure_banks(word, first_letter):
        raise ValueError("band transport ended off the start letter")
    return bank == start_bank


def spine_cycles(word):
    """Embedded essential cycles of the spine as (name, path) pairs.

    Theta: the three two-edge loops, named by the frozenset of letters.
    Sigma: the two loop edges, named by their letter.
    """
    comp = word_complex(word)
    if comp["shape"] == "theta":
        out = []
        for i, j in itertools.combinations(LETTERS, 2):
            ti, hi = comp["endpoints"][i]
            tj, hj = comp["endpoints"][j]
            # walk i forward, then j in whichever direction returns.
            direction = -1 if (tj, hj) == (ti, hi) else 1
            out.append((frozenset((i, j)), ((i, 1), (j, direction))))
        return out
    if comp["shape"] == "sigma":
        return [(letter, ((letter, 1),)) for letter in comp["loops"]]
    raise ValueError("spine cycles need a theta or sigma word")


# -- matchings ---------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    """A dihedral matching between two hexagon words.

    side k of the source maps to side (rot + k) mod 6, or to side
    (rot - k - 1) mod 6 traversed backwards when refl is set.  letter_map
    and sign_map record the induced edge bijection and whether each edge
    keeps (+1) or reverses (-1) its orientation.
    """

    rot: int
    refl: bool
    letter_map: tuple
    sign_map: tuple

    def side_image(self, k):
        return (self.rot - k - 1) % 6 if self.refl else (self.rot + k) % 6

    def corner_image(self, corner):
        return (self.rot - corner) % 6 if self.refl \
            else (self.rot + corner) % 6

    def key(self):
        return (self.refl, self.rot)


def _induced_maps(word_a, word_b, rot, refl):
    """Letter and sign maps induced by the dihedral map, or None."""
    letter_map = {}
    sign_map = {}
    for k, (letter, sign) in enumerate(word_a):
        img = (rot - k - 1) % 6 if refl else (rot + k) % 6
        img_letter, img_sign = word_b[img]
        want = -img_sign if refl else img_sign
        if letter in letter_map:
            if letter_map[letter] != img_letter:
                return None
            if sign_map[letter] != want * sign:
                return None
        else:
            letter_map[letter] = img_letter
            sign_map[letter] = want * sign
    if sorted(letter_map.values()) != [0, 1, 2]:
        return None
    return (tuple(letter_map[l] for l in LETTERS),
            tuple(sign_map[l] for l in LETTERS))


def matchings(word_a, word_b):
    """All dihedral matchings carrying word_a onto word_b, in a fixed
    deterministic order (rotations by offset, then reflections)."""
    check_word(word_a)
    check_word(word_b)
    out = []
    for refl in (False, True):
        for rot in range(6):
            maps = _induced_maps(word_a, word_b, rot, refl)
            if maps is not None:
                out.append(Matching(rot, refl, maps[0], maps[1]))
    return out


def self_matchings(word):
    """The group of dihedral self-matchings of a word."""
    return matchings(word, word)


def vertex_image(word_a, word_b, matching):
    """The induced map on spine vertices: {source class: target class}."""
    classes_a = corner_classes(word_a)
    classes_b = corner_classes(word_b)
    out = {}
    for corner in range(6):
        src = classes_a[corner]
        dst = classes_b[matching.corner_image(corner)]
        if out.setdefault(src, dst) != dst:
            raise ValueError("matching does not respect vertex classes")
    return out


def compose_matchings(word_a, word_b, word_c, first, second):
    """The matching word_a -> word_c equal to second o first, where first
    carries word_a to word_b and second carries word_b to word_c."""
    # Compose on side images instead of juggling offset algebra.
    image0 = second.side_image(first.side_image(0))
    refl = first.refl != second.refl
    rot = image0 if not refl else (image0 + 1) % 6
    maps = _induced_maps(word_a, word_c, rot, refl)
    if maps is None:
        raise ValueError("composite is not a matching")
    return Matching(rot, refl, maps[0], maps[1])


def invert_matching(word_a, word_b, matching):
    """The inverse matching word_b -> word_a."""
    for candidate in matchings(word_b, word_a):
        ident = compose_matchings(word_a, word_b, word_a, matching, candidate)
        if ident.rot == 0 and not ident.refl:
            return candidate
    raise ValueError("matching has no inverse")


def canonical_word(word):
    """Least equivalent word under dihedral moves, letter renaming, and
    per-letter orientation flips.  Signs are compared with +1 < -1."""
    check_word(word)

    def rank(w):
        return tuple((letter, 0 if sign == 1 else 1) for letter, sign in w)

    best = None
    for refl in (False, True):
        for rot in range(6):
            sides = []
            for k in range(6):
                src = (rot - k - 1) % 6 if refl else (k - rot) % 6
                letter, sign = word[src]
                sides.append((letter, -sign if refl else sign))
            for perm in itertools.permutations(LETTERS):
                for flips in itertools.product((1, -1), repeat=3):
                    cand = tuple(
                        (perm[letter], sign * flips[letter])
                        for letter, sign in sides)
                    r = rank(cand)
                    if best is None or r < best[0]:
                        best = (r, cand)
    return best[1]
