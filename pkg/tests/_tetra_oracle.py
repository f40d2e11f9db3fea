"""Independent thickenability check via dual tetrahedron pairings.

Each carrier vertex becomes a tetrahedron (slots = faces), each edge
record a face pairing.  The carrier thickens exactly when no edge class
of the glued complex returns to itself with its endpoints swapped, and
the boundary components of the thickening are the vertex links.
"""
from brickforge._model import wing_other_slot


def _fields(rec, end):
    return rec[3 * end], rec[3 * end + 1], rec[3 * end + 2]


def pairings(poly):
    out = {}
    for rec in poly.edges:
        for flip in (0, 1):
            v0, s0, p0 = _fields(rec, flip)
            v1, s1, p1 = _fields(rec, 1 - flip)
            o0 = {w: wing_other_slot(s0, p0, w) for w in range(3)}
            o1 = {w: wing_other_slot(s1, p1, w) for w in range(3)}
            cmap = {}
            for x in (x for x in range(4) if x != s0):
                ws = [w for w in range(3) if x not in (s0, o0[w])]
                sets = [{y for y in range(4) if y not in (s1, o1[w])}
                        for w in ws]
                common = sets[0] & sets[1]
                assert len(common) == 1
                cmap[x] = common.pop()
            out[(v0, s0)] = (v1, s1, cmap)
    return out


def edge_flip_free(poly, pr=None):
    pr = pr or pairings(poly)
    seen = set()
    for v in range(poly.nv):
        for x in range(4):
            for y in range(4):
                if x == y:
                    continue
                for s in range(4):
                    if s in (x, y):
                        continue
                    state0 = (v, x, y, s)
                    if state0 in seen:
                        continue
                    cur = state0
                    while True:
                        cv, cx, cy, cs = cur
                        seen.add(cur)
                        v2, s2, cmap = pr[(cv, cs)]
                        nx, ny = cmap[cx], cmap[cy]
                        fs = [f for f in range(4) if f not in (nx, ny)]
                        ns = fs[0] if fs[1] == s2 else fs[1]
                        cur = (v2, nx, ny, ns)
                        key = (cur[0], frozenset((cur[1], cur[2])), cur[3])
                        if key == (state0[0],
                                   frozenset((state0[1], state0[2])),
                                   state0[3]):
                            if (cur[1], cur[2]) != (state0[1], state0[2]):
                                return False
                            break
                        if cur in seen:
                            break
    return True


def vertex_links(poly, pr=None):
    """[(chi, orientable)] of the corner-class link surfaces, sorted."""
    pr = pr or pairings(poly)
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    tris = [(v, x) for v in range(poly.nv) for x in range(4)]
    side_glue = {}
    for v, x in tris:
        for s in range(4):
            if s == x:
                continue
            v2, s2, cmap = pr[(v, s)]
            side_glue[(v, x, s)] = (v2, cmap[x], s2, cmap)
            union((v, x), (v2, cmap[x]))
    comps = {}
    for t in tris:
        comps.setdefault(find(t), []).append(t)
    out = []
    for _root, members in sorted(comps.items()):
        F = len(members)
        E = 3 * F // 2
        vparent = {}

        def vfind(a):
            vparent.setdefault(a, a)
            while vparent[a] != a:
                vparent[a] = vparent[vparent[a]]
                a = vparent[a]
            return a

        def vunion(a, b):
            ra, rb = vfind(a), vfind(b)
            if ra != rb:
                vparent[ra] = rb

        for (v, x) in members:
            for s in range(4):
                if s == x:
                    continue
                v2, x2, s2, cmap = side_glue[(v, x, s)]
                for t in range(4):
                    if t in (x, s):
                        continue
                    vunion((v, x, t), (v2, x2, cmap[t]))
        V = len({vfind((v, x, t)) for (v, x) in members
                 for t in range(4) if t != x})
        chi = V - E + F
        sign = {}
        orientable = True
        REF = {m: sorted(t for t in range(4) if t != m[1])
               for m in members}
        start = members[0]
        sign[start] = 1
        stack = [start]
        while stack:
            cur = stack.pop()
            v, x = cur
            a, b, c = REF[cur]
            cyc = [(a, b), (b, c), (c, a)] if sign[cur] == 1 else \
                  [(b, a), (a, c), (c, b)]
            for (t1, t2) in cyc:
                s = ({a, b, c} - {t1, t2}).pop()
                v2, x2, s2, cmap = side_glue[(v, x, s)]
                nbr = (v2, x2)
                na, nb, nc = REF[nbr]
                p1, p2 = cmap[t1], cmap[t2]
                pcyc = [(na, nb), (nb, nc), (nc, na)]
                if (p1, p2) in pcyc:
                    want = -1
                else:
                    assert (p2, p1) in pcyc
                    want = 1
                if nbr not in sign:
                    sign[nbr] = want
                    stack.append(nbr)
                elif sign[nbr] != want:
                    orientable = False
        out.append((chi, orientable))
    return sorted(out)


def kind_name(chi, orientable):
    if chi == 2:
        return "sphere"
    if chi == 1 and not orientable:
        return "projective"
    if chi == 0:
        return "torus" if orientable else "klein"
    return "other"


def link_kinds(poly):
    """Boundary-component names predicted by the pairing complex."""
    pr = pairings(poly)
    if not edge_flip_free(poly, pr):
        return None
    return sorted(kind_name(*l) for l in vertex_links(poly, pr))


def link_profile(poly):
    """Sorted (chi, orientable) pairs, or None when not thickenable."""
    pr = pairings(poly)
    if not edge_flip_free(poly, pr):
        return None
    return vertex_links(poly, pr)
