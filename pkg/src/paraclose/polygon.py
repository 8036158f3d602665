"""Exact convex polygon kernel.

All coordinates are Python ints (weights are integer pairs and every operation
here is closed over them); nothing in this module touches floats. A polygon is
stored in canonical form:

  * vertices in counterclockwise order, starting at the lexicographically
    smallest vertex (min x, then min y),
  * strictly convex: no repeated and no collinear vertices,
  * degenerate cases allowed: 0 vertices (empty), 1 (point), 2 (segment).

Two polygons are equal iff their canonical vertex tuples are equal; witnesses
are metadata and do not take part in equality.

Each vertex optionally carries a witness handle (see witness.py) naming a
lower set that projects onto it. Passing witnesses=None everywhere disables
tracking at zero cost.
"""

from __future__ import annotations

import functools

from .witness import wleaf, wunion


def cross(o, a, b):
    """Cross product of (a - o) and (b - o). >0 means o->a->b turns left."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def crossv(d, e):
    return d[0] * e[1] - d[1] * e[0]


def half(d):
    """0 for directions in [-90deg, 90deg) up to +90 inclusive, 1 for the rest.

    Concretely: 0 iff d is lexicographically positive (dx > 0, or dx == 0 and
    dy > 0). Canonical edge cycles sweep half 0 then half 1.
    """
    return 0 if d[0] > 0 or (d[0] == 0 and d[1] > 0) else 1


class Polygon:
    __slots__ = ("vertices", "wit")

    def __init__(self, vertices, wit=None):
        # Trusted constructor: callers must pass canonical data.
        self.vertices = tuple((int(x), int(y)) for x, y in vertices)
        self.wit = None if wit is None else tuple(wit)
        if self.wit is not None and len(self.wit) != len(self.vertices):
            raise ValueError("witness list length mismatch")

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polygon({list(self.vertices)!r})"

    @property
    def is_empty(self):
        return not self.vertices

    def lexmax_index(self):
        v = self.vertices
        best = 0
        for i in range(1, len(v)):
            if v[i] > v[best]:
                best = i
        return best

    def lower_chain(self):
        """Vertex indices from the lexmin vertex to the lexmax vertex along
        the bottom, in order. Includes a right vertical edge if present."""
        if not self.vertices:
            return []
        return list(range(self.lexmax_index() + 1))

    def upper_chain(self):
        """Vertex indices from lexmin to lexmax along the top. Includes a
        left vertical edge if present (as the first step)."""
        m = len(self.vertices)
        if m == 0:
            return []
        t = self.lexmax_index()
        if t == 0:
            return [0]
        return [0] + list(range(m - 1, t - 1, -1))

    def translate(self, d, tag=None):
        """Shift by vector d. tag, if given, is a witness handle unioned into
        every vertex witness (the ids forced into every underlying set)."""
        dx, dy = d
        verts = tuple((x + dx, y + dy) for x, y in self.vertices)
        if self.wit is None:
            return Polygon(verts)
        if tag is None:
            return Polygon(verts, self.wit)
        return Polygon(verts, tuple(wunion(w, tag) for w in self.wit))

    def witness_sets(self):
        from .witness import expand

        if self.wit is None:
            return None
        return [expand(w) for w in self.wit]

    def contains(self, p):
        """Exact point-in-polygon test (boundary counts as inside)."""
        v = self.vertices
        m = len(v)
        if m == 0:
            return False
        if m == 1:
            return tuple(p) == v[0]
        if m == 2:
            a, b = v
            if cross(a, b, p) != 0:
                return False
            lo = (min(a[0], b[0]), min(a[1], b[1]))
            hi = (max(a[0], b[0]), max(a[1], b[1]))
            return lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1]
        for i in range(m):
            if cross(v[i], v[(i + 1) % m], p) < 0:
                return False
        return True

    def to_json(self, include_witnesses=True):
        out = {"vertices": [[x, y] for x, y in self.vertices]}
        if include_witnesses and self.wit is not None:
            sets = self.witness_sets()
            out["witnesses"] = [sorted(s, key=_id_key) for s in sets]
        return out

    @classmethod
    def from_json(cls, data):
        verts = [tuple(v) for v in data["vertices"]]
        wit = None
        if data.get("witnesses") is not None:
            wit = [wleaf(frozenset(s)) for s in data["witnesses"]]
        return cls(verts, wit)


def _id_key(v):
    return (v.__class__.__name__, v)


EMPTY_POLYGON = Polygon(())


def point(p, tag=None):
    """Single-vertex polygon. tag: optional witness handle for the vertex."""
    return Polygon((p,), None if tag is None else (tag,))


def is_canonical(poly):
    """Validation helper used by tests: canonical-form predicate."""
    v = poly.vertices
    m = len(v)
    if m <= 1:
        return True
    if len(set(v)) != m:
        return False
    if min(v) != v[0]:
        return False
    if m == 2:
        return True
    for i in range(m):
        if cross(v[i], v[(i + 1) % m], v[(i + 2) % m]) <= 0:
            return False
    return True


def hull_of_points(points, witnesses=None):
    """Convex hull (Andrew's monotone chain) over exact integer points.

    Exact duplicate points are collapsed keeping the earliest witness.
    """
    pts = [(tuple(p), i) for i, p in enumerate(points)]
    pts.sort()
    dedup = []
    for p, i in pts:
        if dedup and dedup[-1][0] == p:
            continue
        dedup.append((p, i))
    if not dedup:
        return EMPTY_POLYGON

    def scan(seq):
        out = []
        for item in seq:
            while len(out) >= 2 and cross(out[-2][0], out[-1][0], item[0]) <= 0:
                out.pop()
            out.append(item)
        return out

    lower = scan(dedup)
    upper = scan(reversed(dedup))
    if len(dedup) == 1:
        verts = [dedup[0]]
    elif len(lower) == 2 and len(upper) == 2:
        verts = lower  # collinear input: a segment
    else:
        verts = lower[:-1] + upper[:-1]
    if witnesses is None:
        return Polygon([p for p, _ in verts])
    return Polygon([p for p, _ in verts], [witnesses[i] for _, i in verts])


def _edge_cycle(poly):
    """Full CCW edge cycle from the canonical start vertex.

    For canonical polygons the directions are strictly increasing in angle
    over the half-open sweep (-90, 270], which is what the Minkowski merge
    relies on. A segment contributes its direction and the reverse.
    """
    v = poly.vertices
    m = len(v)
    if m <= 1:
        return []
    if m == 2:
        d = (v[1][0] - v[0][0], v[1][1] - v[0][1])
        return [d, (-d[0], -d[1])]
    return [
        (v[(i + 1) % m][0] - v[i][0], v[(i + 1) % m][1] - v[i][1])
        for i in range(m)
    ]


def minkowski_sum(p, q):
    """Minkowski sum by merging edge cycles in angle order, O(|p| + |q|).

    Vertex witnesses pair the two source vertices whose sum realizes the
    corner. The sum with an empty polygon is empty.
    """
    if p.is_empty or q.is_empty:
        return EMPTY_POLYGON
    ep, eq = _edge_cycle(p), _edge_cycle(q)
    track = p.wit is not None and q.wit is not None
    start = (p.vertices[0][0] + q.vertices[0][0], p.vertices[0][1] + q.vertices[0][1])
    verts = [start]
    wits = [wunion(p.wit[0], q.wit[0])] if track else None
    ip = iq = 0
    while ip < len(ep) or iq < len(eq):
        if ip == len(ep):
            take_p, take_q = False, True
        elif iq == len(eq):
            take_p, take_q = True, False
        else:
            dp, dq = ep[ip], eq[iq]
            hp, hq = half(dp), half(dq)
            if hp != hq:
                take_p, take_q = hp < hq, hq < hp
            else:
                c = crossv(dp, dq)
                # c == 0 in the same half: parallel edges fuse into one.
                take_p, take_q = c >= 0, c <= 0
        dx = dy = 0
        if take_p:
            dx += ep[ip][0]
            dy += ep[ip][1]
            ip += 1
        if take_q:
            dx += eq[iq][0]
            dy += eq[iq][1]
            iq += 1
        x, y = verts[-1]
        verts.append((x + dx, y + dy))
        if track:
            wits.append(
                wunion(p.wit[ip % len(p.vertices)], q.wit[iq % len(q.vertices)])
            )
    assert verts[-1] == start
    if len(verts) > 1:
        verts.pop()  # closing vertex; a strictly convex cycle has no other repeats
        if track:
            wits.pop()
    return Polygon(verts, wits)


def _chain_points(poly, indices):
    v = poly.vertices
    if poly.wit is None:
        return [(v[i], None) for i in indices]
    return [(v[i], poly.wit[i]) for i in indices]


def _merge_lex(a, b):
    """Merge two lex-sorted (point, witness) lists; exact duplicates keep
    the first list's entry."""
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i][0] <= b[j][0]:
            if out and out[-1][0] == a[i][0]:
                i += 1
                continue
            out.append(a[i])
            i += 1
        else:
            if out and out[-1][0] == b[j][0]:
                j += 1
                continue
            out.append(b[j])
            j += 1
    for k in range(i, len(a)):
        if not (out and out[-1][0] == a[k][0]):
            out.append(a[k])
    for k in range(j, len(b)):
        if not (out and out[-1][0] == b[k][0]):
            out.append(b[k])
    return out


def hull_union(p, q):
    """Convex hull of the union of two polygons in O(|p| + |q|).

    Both canonical chains are already lex-sorted, so a merge plus one
    monotone-chain scan per side avoids the sort.
    """
    if p.is_empty:
        return q
    if q.is_empty:
        return p
    lower = _merge_lex(_chain_points(p, p.lower_chain()), _chain_points(q, q.lower_chain()))
    upper = _merge_lex(_chain_points(p, p.upper_chain()), _chain_points(q, q.upper_chain()))

    def scan(seq):
        out = []
        for item in seq:
            while len(out) >= 2 and cross(out[-2][0], out[-1][0], item[0]) <= 0:
                out.pop()
            out.append(item)
        return out

    lo = scan(lower)
    hi = scan(reversed(upper))
    track = p.wit is not None and q.wit is not None
    if len(lo) == 1:
        verts = lo
    elif len(lo) == 2 and len(hi) == 2 and lo[0][0] == hi[-1][0] and lo[-1][0] == hi[0][0]:
        verts = lo  # collinear union
    else:
        verts = lo[:-1] + hi[:-1]
    return Polygon(
        [v for v, _ in verts],
        [w for _, w in verts] if track else None,
    )


def segment_zonotope(generators, gen_ids=None, track=True):
    """Minkowski sum of the segments {(0,0), g} for each generator g.

    generators: iterable of integer pairs; zero vectors are skipped (their
    elements are simply left out of every witness, which is always valid).
    gen_ids: optional parallel list of ids used to build vertex witnesses as
    explicit sets; witness cost is O(k^2) in the worst case, so pass
    track=False for large geometric-only runs.

    Returns a canonical polygon with at most 2k vertices.
    """
    gens = []
    track = track and gen_ids is not None
    base_x = base_y = 0
    base_ids = set()
    for idx, g in enumerate(generators):
        gx, gy = g
        if gx == 0 and gy == 0:
            continue
        if half((gx, gy)) == 1:
            # Normalize to half 0; a flipped generator is "taken" at lexmin.
            base_x += gx
            base_y += gy
            gens.append(((-gx, -gy), idx, True))
            if track:
                base_ids.add(gen_ids[idx])
        else:
            gens.append(((gx, gy), idx, False))
    if not gens:
        w = (wleaf(base_ids),) if track else None
        return Polygon(((base_x, base_y),), w)
    if len(gens) == 2:
        if _dir_cmp(gens[0], gens[1]) > 0:
            gens.reverse()
    elif len(gens) > 2:
        gens.sort(key=_dir_sort_key)
    # Group parallel generators: one edge per direction class.
    groups = []
    for d, idx, flipped in gens:
        if groups and crossv(groups[-1][0], d) == 0:
            pd, items = groups[-1]
            groups[-1] = ((pd[0] + d[0], pd[1] + d[1]), items + [(idx, flipped)])
        else:
            groups.append((d, [(idx, flipped)]))
    verts = [(base_x, base_y)]
    wits = None
    if track:
        cur = set(base_ids)
        wits = [wleaf(cur)]
    # Walk half 0 (forward edges) then half 1 (the same directions reversed).
    for sign in (1, -1):
        for d, items in groups:
            x, y = verts[-1]
            verts.append((x + sign * d[0], y + sign * d[1]))
            if track:
                for idx, flipped in items:
                    taking = (sign == 1) != flipped
                    if taking:
                        cur.add(gen_ids[idx])
                    else:
                        cur.discard(gen_ids[idx])
                wits.append(wleaf(cur))
    assert verts[-1] == verts[0]
    verts.pop()
    if track:
        wits.pop()
    return Polygon(verts, wits)


def _dir_cmp(a, b):
    # All directions are in half 0 here; order by angle via pairwise cross.
    c = crossv(a[0], b[0])
    return -1 if c > 0 else (1 if c < 0 else 0)


_dir_sort_key = functools.cmp_to_key(_dir_cmp)
