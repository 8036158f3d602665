"""Semiorders: utility order with a unit margin, solved in near-linear time.

In sorted utility order, every nonempty lower set is pinned by a grid point
(p, q): q is its largest index, the prefix 0..p-2 is entirely inside, index
p-1 is the smallest one missing below q, and membership of each index
between p and q-1 is a free choice (p = 0 means nothing below q is missing,
so the set is the prefix 0..q). A quadtree over the (p, q) grid classifies
whole squares at once: squares outside the feasible band are dropped,
squares deep inside it become zonotopes of their free elements, and only a
few staircases of squares along the band boundaries ever get subdivided.
Each square's hull is kept relative to its prefix and without its own
always-free block, which the parent restores as a small Minkowski sum; that
keeps the total segment mass near-linear instead of quadratic.
"""

from __future__ import annotations

from collections import namedtuple

from .errors import InputFormatError
from .parametric import rat, rat_str
from .polygon import Polygon, hull_of_points, point, segment_zonotope
from .poset import _check_weight, semiorder_poset
from .splay import SplayPolygon, combine_any
from .witness import wleaf

# Squares of side l that get subdivided hug a few monotone staircases, so
# their count is linear in n/l. Checked on every solve; a violation means
# the classification logic regressed, not that the input is bad.
SPLIT_COEFF = 6
SPLIT_SLACK = 8

# Below this combined vertex count the plain kernel beats a splay merge;
# the quadtree produces mostly small pieces, so it pays to set this high.
_KERNEL_CUTOFF = 128


class PadId:
    """Identity-only id for padding items; never equal to a caller's id."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __repr__(self):
        return f"<pad{self.k}>"


GridSquare = namedtuple("GridSquare", ("origin", "side"))


class Semiorder:
    """Weighted items compared by utility with a unit margin of error:
    x is below y exactly when u(x) < u(y) - 1, so a pair within one unit of
    each other stays incomparable. Items are sorted by utility on
    construction; ties keep their input order.
    """

    __slots__ = ("ids", "utilities", "weights", "index")

    def __init__(self, items):
        rows = []
        for k, item in enumerate(items):
            try:
                xid, util, weight = item
            except (TypeError, ValueError):
                raise InputFormatError(
                    f"item {k}: expected an (id, utility, weight) triple"
                ) from None
            rows.append((xid, rat(util), _check_weight(weight, f"item {k}")))
        rows.sort(key=lambda r: r[1])
        self.ids = tuple(r[0] for r in rows)
        self.utilities = tuple(r[1] for r in rows)
        self.weights = tuple(r[2] for r in rows)
        self.index = {}
        for k, xid in enumerate(self.ids):
            if xid in self.index:
                raise InputFormatError(f"duplicate item id {xid!r}")
            self.index[xid] = k

    def __len__(self):
        return len(self.ids)

    def __repr__(self):
        return f"Semiorder({len(self.ids)} items)"

    def to_poset(self):
        return semiorder_poset(self.ids, self.utilities, self.weights)

    def to_json(self):
        return {
            "items": [
                {"id": i, "utility": rat_str(u), "weight": list(w)}
                for i, u, w in zip(self.ids, self.utilities, self.weights)
            ]
        }

    @staticmethod
    def from_json(data):
        if not isinstance(data, dict) or "items" not in data:
            raise InputFormatError('expected an object with an "items" list')
        items = data["items"]
        if not isinstance(items, list):
            raise InputFormatError('"items" must be a list')
        triples = []
        for k, it in enumerate(items):
            if not isinstance(it, dict) or not {"id", "utility", "weight"} <= it.keys():
                raise InputFormatError(
                    f'item {k}: expected keys "id", "utility", "weight"'
                )
            triples.append((it["id"], it["utility"], it["weight"]))
        return Semiorder(triples)


def pad_to_power_of_two(s: Semiorder) -> Semiorder:
    """Pad with zero-weight items below everything until the size is a power
    of two. Pads never change a projection and sit under every real item, so
    the polygon is unchanged."""
    n = len(s)
    if n == 0:
        return s
    nn = 1
    while nn < n:
        nn *= 2
    if nn == n:
        return s
    pad_util = s.utilities[0] - 2  # past the unit margin below the minimum
    items = [(PadId(k), pad_util, (0, 0)) for k in range(nn - n)]
    items.extend(zip(s.ids, s.utilities, s.weights))
    return Semiorder(items)


def extremes(s: Semiorder, lower) -> tuple:
    """Grid point (p, q) of a nonempty lower set: q its largest index, p-1
    the smallest index below q left out, p = 0 when none is missing."""
    if not lower:
        raise InputFormatError("the empty lower set has no extremes point")
    idxs = {s.index[x] for x in lower}
    j = max(idxs)
    i = -1
    for t in range(j):
        if t not in idxs:
            i = t
            break
    return (i + 1, j)


def freeset(s: Semiorder, square: GridSquare) -> set:
    """Elements strictly between a square's row block and column block; they
    are free to include or drop in every lower set the square captures."""
    (i0, j0), side = square
    lo = max(i0 + side, 0)
    hi = min(j0, len(s))
    return {s.ids[t] for t in range(lo, hi)}


def solve_semiorder(s: Semiorder, track=True) -> Polygon:
    """Hull of the projections of every lower set of the semiorder, with one
    witness per vertex when track is on."""
    n = len(s)
    if n == 0:
        return point((0, 0), wleaf(frozenset()) if track else None)
    padded = pad_to_power_of_two(s)
    nn = len(padded)
    ids = padded.ids
    w = padded.weights
    u = padded.utilities
    # within[q] = smallest index whose utility is within the unit margin of
    # u[q]; nondecreasing and never past q. A point (p, q) with p >= 1 is
    # feasible exactly when p <= q and within[q] <= p - 1.
    within = [0] * nn
    t = 0
    for q in range(nn):
        bar = u[q] - 1
        while u[t] < bar:
            t += 1
        within[q] = t
    px = [0] * (nn + 1)
    py = [0] * (nn + 1)
    for k in range(nn):
        px[k + 1] = px[k] + w[k][0]
        py[k + 1] = py[k] + w[k][1]
    splits = {}

    def zono(ranges):
        gens = None
        gids = None
        for lo, hi in ranges:
            if lo < hi:
                if gens is None:
                    gens = list(w[lo:hi])
                    gids = list(ids[lo:hi]) if track else None
                else:
                    gens.extend(w[lo:hi])
                    if track:
                        gids.extend(ids[lo:hi])
        if gens is None:
            return None
        return segment_zonotope(gens, gids, track)

    def go(a, b, side):
        # Columns [a, a+side) and rows [b, b+side) of the (p, q) grid. The
        # result is relative to the prefix 0..a-2 and leaves out the
        # square's own free block [a+side, b-1]; None when no feasible
        # point lies inside.
        a2 = a + side - 1
        b2 = b + side - 1
        qs = b if b >= a else a
        if qs > b2 or max(1, within[qs] + 1) > a2:
            return None
        if a >= 1 and a2 <= b and within[b2] <= a - 1:
            # Every point is feasible; with the margin holding across the
            # whole block, every subset of [a-1, b2] over the prefix is a
            # genuine lower set, so one zonotope covers the square.
            return zono([(a - 1, a2 + 1), (max(b, a2 + 1), b2 + 1)])
        splits[side] = splits.get(side, 0) + 1
        h = side // 2
        pf_lo, pf_hi = a + side, b  # parent's free block, half open
        parts = []
        for ca in (a, a + h):
            for cb in (b, b + h):
                res = go(ca, cb, h)
                if res is None:
                    continue
                # Restore the child's free block, minus what stays free for
                # this square too.
                cf_lo, cf_hi = ca + h, cb
                z = zono([
                    (cf_lo, min(cf_hi, pf_lo)),
                    (max(cf_lo, pf_hi, pf_lo), cf_hi),
                ])
                if z is not None:
                    res = combine_any("+", res, z, track, threshold=_KERNEL_CUTOFF)
                lo = a - 1 if a >= 1 else 0
                if ca - 1 > lo:
                    # Indices [lo, ca-2] move from variable to forced-in.
                    d = (px[ca - 1] - px[lo], py[ca - 1] - py[lo])
                    tag = wleaf(frozenset(ids[lo:ca - 1])) if track else None
                    res = res.translate(d, tag)
                parts.append(res)
        # Fold pairwise so small pieces meet small pieces first.
        while len(parts) > 1:
            parts = [
                combine_any("u", parts[k], parts[k + 1], track, threshold=_KERNEL_CUTOFF)
                if k + 1 < len(parts) else parts[k]
                for k in range(0, len(parts), 2)
            ]
        return parts[0] if parts else None

    body = go(0, 0, nn)
    # Prefixes are the p = 0 column (plus the empty set); they are cheaper
    # as one hull than through the quadtree.
    pts = [(px[k], py[k]) for k in range(nn + 1)]
    wits = [wleaf(frozenset(ids[:k])) for k in range(nn + 1)] if track else None
    prefixes = hull_of_points(pts, wits)
    res = prefixes if body is None else combine_any("u", body, prefixes, track, threshold=_KERNEL_CUTOFF)
    if isinstance(res, SplayPolygon):
        res = res.to_polygon()
    for side, cnt in splits.items():
        if cnt > SPLIT_COEFF * nn // side + SPLIT_SLACK:
            raise AssertionError(
                f"{cnt} subdivided squares of side {side} for n'={nn}; "
                f"expected at most {SPLIT_COEFF}*n'/side + {SPLIT_SLACK}"
            )
    if track and nn != n:
        stripped = tuple(
            wleaf(frozenset(x for x in ws if not isinstance(x, PadId)))
            for ws in res.witness_sets()
        )
        res = Polygon(res.vertices, stripped)
    return res
