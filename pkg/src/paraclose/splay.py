"""Self-adjusting polygon engine.

Holds a canonical polygon as two splay trees, one per hull chain, keyed by
the lex order of the vertices. Node positions are stored relative to the
parent (the root is absolute), so translating a whole subtree is a single
diff update and rotations fix positions in O(1). Each node also stores the
edge vector to its in-order successor, which lets slope and tangent searches
run root-to-leaf without touching neighbours.

Built for merges where only the smaller argument should cost: the sum merge
inserts the small polygon's edges into the big chain by slope, the union
merge inserts the small polygon's vertices and excises what they dominate.
Both destroy their arguments and recycle the larger tree.

Witnesses are carried as lazily pushed tags. A tag is (acc, cur, ep, rep):
acc is settled, cur is the pairing handle of merge epoch ep, and rep is the
oldest epoch folded in. Delivering the tag replaces a target cur of epoch
rep outright and settles an older one into acc. This is what makes sum
merges work: a vertex re-paired with a later small-chain vertex must drop
the earlier pairing, even when newer tags pile up on top before the pending
one reaches it. Epochs come from a global counter, one per tagging
operation, so an incoming tag is never older than a stored one.

The module-level rotation counter feeds the performance checks; every single
rotation counts once.
"""

from __future__ import annotations

from .polygon import EMPTY_POLYGON, Polygon
from .polygon import hull_union as _kernel_union
from .polygon import minkowski_sum as _kernel_minkowski
from .witness import wunion

STEPS = 0
_EPOCH = 0


def splay_steps():
    return STEPS


def reset_splay_steps():
    global STEPS
    STEPS = 0


def _next_epoch():
    global _EPOCH
    _EPOCH += 1
    return _EPOCH


class _Node:
    __slots__ = (
        "par", "left", "right",
        "dx", "dy",          # position relative to parent; absolute at root
        "ex", "ey",          # edge vector to in-order successor; ex None at the last node
        "sz",
        "base",              # own witness handle
        "tacc", "tcur", "tep",        # tag applied to this vertex
        "pacc", "pcur", "pep", "prep",  # tag owed to the children
    )

    def __init__(self, dx, dy, base=None):
        self.par = self.left = self.right = None
        self.dx = dx
        self.dy = dy
        self.ex = None
        self.ey = 0
        self.sz = 1
        self.base = base
        self.tacc = self.tcur = None
        self.tep = -1
        self.pacc = self.pcur = None
        self.pep = self.prep = -1


def _tag(n, acc, cur, ep, rep):
    """Apply a tag to a subtree root: fold into the node's own state and
    compose onto the tag owed to its children. A stored cur of epoch rep is
    replaced, an older one is settled into acc. Everything below the node
    carries an epoch <= rep, so composition keeps the stored rep."""
    if n.tep == rep:
        n.tacc = wunion(n.tacc, acc)
    else:
        n.tacc = wunion(wunion(n.tacc, n.tcur), acc)
    n.tcur = cur
    n.tep = ep
    if n.pep < 0:
        n.pacc, n.pcur, n.pep, n.prep = acc, cur, ep, rep
    else:
        if n.pep == rep:
            n.pacc = wunion(n.pacc, acc)
        else:
            n.pacc = wunion(wunion(n.pacc, n.pcur), acc)
        n.pcur, n.pep = cur, ep


def _push(n):
    if n.pep >= 0:
        l, r = n.left, n.right
        if l is not None:
            _tag(l, n.pacc, n.pcur, n.pep, n.prep)
        if r is not None:
            _tag(r, n.pacc, n.pcur, n.pep, n.prep)
        n.pacc = n.pcur = None
        n.pep = n.prep = -1


def _handle(n):
    """Effective witness handle of a vertex (base plus settled and live tag)."""
    return wunion(n.base, wunion(n.tacc, n.tcur))


def _sz(n):
    return 0 if n is None else n.sz


def _rotate(x):
    """Single rotation moving x above its parent, fixing relative positions:
    x picks up the parent's offset, the parent becomes relative to x, and the
    transplanted middle subtree keeps its absolute position."""
    global STEPS
    STEPS += 1
    p = x.par
    g = p.par
    xdx, xdy = x.dx, x.dy
    if p.left is x:
        b = x.right
        p.left = b
        x.right = p
    else:
        b = x.left
        p.right = b
        x.left = p
    if b is not None:
        b.par = p
        b.dx += xdx
        b.dy += xdy
    x.dx += p.dx
    x.dy += p.dy
    p.dx = -xdx
    p.dy = -xdy
    x.par = g
    p.par = x
    if g is not None:
        if g.left is p:
            g.left = x
        else:
            g.right = x
    p.sz = _sz(p.left) + _sz(p.right) + 1
    x.sz = _sz(x.left) + _sz(x.right) + 1


def _splay(ch, x, until=None):
    """Splay x upward until its parent is `until` (None: to the root).
    The access path must already be pushed, which every search guarantees."""
    while x.par is not until:
        p = x.par
        g = p.par
        if g is until:
            _rotate(x)
        elif (g.left is p) == (p.left is x):
            _rotate(p)
            _rotate(x)
        else:
            _rotate(x)
            _rotate(x)
    if until is None:
        ch.root = x


class _Chain:
    __slots__ = ("root",)

    def __init__(self, root=None):
        self.root = root

    @property
    def size(self):
        return 0 if self.root is None else self.root.sz


def _build_chain(items):
    """Balanced tree from lex-sorted (x, y, handle) triples."""
    n = len(items)

    def rec(lo, hi, pax, pay, par):
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        x, y, base = items[mid]
        node = _Node(x - pax, y - pay, base)
        node.par = par
        if mid + 1 < n:
            node.ex = items[mid + 1][0] - x
            node.ey = items[mid + 1][1] - y
        node.left = rec(lo, mid, x, y, node)
        node.right = rec(mid + 1, hi, x, y, node)
        node.sz = hi - lo
        return node

    return _Chain(rec(0, n, 0, 0, None))


def _inorder(ch):
    """Yield (node, x, y) in chain order, pushing tags on the way down."""
    stack = []
    n = ch.root
    ax = ay = 0
    while n is not None or stack:
        while n is not None:
            _push(n)
            x = ax + n.dx
            y = ay + n.dy
            stack.append((n, x, y))
            ax, ay = x, y
            n = n.left
        n, x, y = stack.pop()
        yield n, x, y
        ax, ay = x, y
        n = n.right


class SplayPolygon:
    """Mutable polygon with splay-tree chains. Create via from_polygon; the
    merge functions below consume their arguments."""

    __slots__ = ("lo", "up", "track", "dead")

    def __init__(self, lo, up, track):
        self.lo = lo
        self.up = up
        self.track = track
        self.dead = False

    @classmethod
    def from_polygon(cls, poly: Polygon, track=True):
        track = track and poly.wit is not None
        if poly.is_empty:
            return cls(None, None, track)

        def items(indices):
            out = []
            for i in indices:
                x, y = poly.vertices[i]
                out.append((x, y, poly.wit[i] if track else None))
            return out

        return cls(
            _build_chain(items(poly.lower_chain())),
            _build_chain(items(poly.upper_chain())),
            track,
        )

    @property
    def is_empty(self):
        return self.lo is None

    @property
    def count(self):
        if self.lo is None:
            return 0
        ls = self.lo.size
        return 1 if ls == 1 else ls + self.up.size - 2

    def _check(self):
        if self.dead:
            raise RuntimeError("polygon was consumed by a merge")

    def translate(self, d, tag=None):
        self._check()
        if self.lo is None:
            return self
        dx, dy = d
        if self.track and tag is not None:
            ep = _next_epoch()
            _tag(self.lo.root, tag, None, ep, ep)
            _tag(self.up.root, tag, None, ep, ep)
        for ch in (self.lo, self.up):
            ch.root.dx += dx
            ch.root.dy += dy
        return self

    def to_polygon(self) -> Polygon:
        self._check()
        if self.lo is None:
            return EMPTY_POLYGON
        low = [(x, y, n) for n, x, y in _inorder(self.lo)]
        upp = [(x, y, n) for n, x, y in _inorder(self.up)]
        assert low[0][:2] == upp[0][:2] and low[-1][:2] == upp[-1][:2]
        seq = low + upp[1:-1][::-1]
        verts = [(x, y) for x, y, _ in seq]
        wit = [_handle(n) for _, _, n in seq] if self.track else None
        return Polygon(verts, wit)


def _chain_list(ch):
    return [(x, y, _handle(n)) for n, x, y in _inorder(ch)]


def _find_slope(ch, d, sign):
    """First in-order node whose outgoing edge reaches slope d for a sum
    merge: lower chains (sign +1) stop at cross(e, d) <= 0, upper chains
    (sign -1) at >= 0. The edgeless last node always matches. Splays and
    returns the match."""
    dx, dy = d
    n = ch.root
    ax = ay = 0
    best = None
    while n is not None:
        _push(n)
        x = ax + n.dx
        y = ay + n.dy
        if n.ex is None or sign * (n.ex * dy - n.ey * dx) <= 0:
            best = n
            nxt = n.left
        else:
            nxt = n.right
        if nxt is None:
            break
        ax, ay = x, y
        n = nxt
    _splay(ch, best)
    return best


def _mink_chain(ch, small, sign, ep, track):
    """Fold the edges of a small chain into a big one, in slope order.
    small: lex-sorted (x, y, handle) triples of the same side."""
    sx, sy, sh = small[0]
    root = ch.root
    if track:
        _tag(root, None, sh, ep, ep)
    root.dx += sx
    root.dy += sy
    px, py = sx, sy
    for j in range(1, len(small)):
        vx, vy, vh = small[j]
        d = (vx - px, vy - py)
        px, py = vx, vy
        u = _find_slope(ch, d, sign)
        r = u.right
        if u.ex is not None and sign * (u.ex * d[1] - u.ey * d[0]) == 0:
            # parallel edges fuse; everything after shifts and re-pairs
            u.ex += d[0]
            u.ey += d[1]
            r.dx += d[0]
            r.dy += d[1]
            if track:
                _tag(r, None, vh, ep, ep)
        else:
            w = _Node(d[0], d[1])
            if track:
                # inherit only the big-side witness; the pairing handle goes
                # in the tag slot so a later extension at w does not bake it in
                w.base = wunion(u.base, u.tacc)
                w.tcur = vh
                w.tep = ep
            w.ex, w.ey = u.ex, u.ey
            u.ex, u.ey = d
            w.right = r
            if r is not None:
                # r's new parent sits exactly d above u, so r.dx/dy stand
                r.par = w
                if track:
                    _tag(r, None, vh, ep, ep)
            w.par = u
            u.right = w
            w.sz = 1 + _sz(r)
            u.sz += 1


def _locate(ch, vx, vy):
    """Bracket (vx, vy) in the chain: returns (pred, px, py, succ, sx, sy)
    with None sides when v falls off an end; splays whichever side exists.
    An exact coordinate match comes back as succ."""
    n = ch.root
    ax = ay = 0
    pred = succ = None
    ppx = ppy = ssx = ssy = 0
    last = None
    while n is not None:
        _push(n)
        x = ax + n.dx
        y = ay + n.dy
        last = n
        if (x, y) < (vx, vy):
            pred, ppx, ppy = n, x, y
            nxt = n.right
        else:
            succ, ssx, ssy = n, x, y
            nxt = n.left
        if nxt is None:
            break
        ax, ay = x, y
        n = nxt
    if last is not None:
        _splay(ch, last)
    return pred, ppx, ppy, succ, ssx, ssy


def _cut_left(ch, q):
    """Discard everything in-order before q (q must be the root)."""
    gone = q.left
    if gone is not None:
        q.left = None
        gone.par = None
        q.sz -= gone.sz


def _cut_right(ch, q):
    gone = q.right
    if gone is not None:
        q.right = None
        gone.par = None
        q.sz -= gone.sz


def _union_insert(ch, vx, vy, handle, sign):
    """Insert one vertex into a chain hull, excising what it dominates.
    sign +1 keeps the lower hull, -1 the upper. No-op when dominated."""
    pred, ppx, ppy, succ, ssx, ssy = _locate(ch, vx, vy)
    if succ is not None and ssx == vx and ssy == vy:
        return  # coincident vertex: keep the existing witness
    if pred is None:
        # new first vertex: tangent is the first node keeping a convex turn
        n = ch.root
        ax = ay = 0
        best = None
        while n is not None:
            _push(n)
            x = ax + n.dx
            y = ay + n.dy
            if n.ex is None or sign * (
                (x - vx) * (y + n.ey - vy) - (y - vy) * (x + n.ex - vx)
            ) > 0:
                best, bx, by = n, x, y
                nxt = n.left
            else:
                nxt = n.right
            if nxt is None:
                break
            ax, ay = x, y
            n = nxt
        _splay(ch, best)
        _cut_left(ch, best)
        w = _Node(vx - bx, vy - by, handle)
        w.ex, w.ey = bx - vx, by - vy
        w.par = best
        best.left = w
        best.sz += 1
        return
    if succ is None:
        # new last vertex: cut from the first edge that v sees from below
        n = ch.root
        ax = ay = 0
        best = None
        while n is not None:
            _push(n)
            x = ax + n.dx
            y = ay + n.dy
            if n.ex is None or sign * (
                n.ex * (vy - y) - n.ey * (vx - x)
            ) <= 0:
                best, bx, by = n, x, y
                nxt = n.left
            else:
                nxt = n.right
            if nxt is None:
                break
            ax, ay = x, y
            n = nxt
        _splay(ch, best)
        _cut_right(ch, best)
        w = _Node(vx - bx, vy - by, handle)
        best.ex, best.ey = vx - bx, vy - by
        w.par = best
        best.right = w
        best.sz += 1
        return
    # bracketed: strict side test against the spanning edge
    c = (ssx - ppx) * (vy - ppy) - (ssy - ppy) * (vx - ppx)
    if sign * c >= 0:
        return  # above the lower chain / below the upper chain / collinear
    # The edges whose lines have v on the cut side form one contiguous block
    # around the bracketing edge. The cut-side predicate is only monotone on
    # either side of that edge, so anchor the tangent searches at pred.
    _splay(ch, pred)
    lt, ltx, lty = pred, ppx, ppy
    n = pred.left
    ax, ay = ppx, ppy
    while n is not None:
        _push(n)
        x = ax + n.dx
        y = ay + n.dy
        if sign * (n.ex * (vy - y) - n.ey * (vx - x)) <= 0:
            lt, ltx, lty = n, x, y
            nxt = n.left
        else:
            nxt = n.right
        if nxt is None:
            break
        ax, ay = x, y
        n = nxt
    if lt is not pred:
        _splay(ch, lt)
    # right tangent: first node past lt that keeps a convex turn toward v
    n = lt.right
    ax, ay = ltx, lty
    rt = None
    while n is not None:
        _push(n)
        x = ax + n.dx
        y = ay + n.dy
        if n.ex is None or sign * (
            n.ex * (vy - y) - n.ey * (vx - x)
        ) > 0:
            rt, rtx, rty = n, x, y
            nxt = n.left
        else:
            nxt = n.right
        if nxt is None:
            break
        ax, ay = x, y
        n = nxt
    _splay(ch, rt, until=lt)
    _cut_left(ch, rt)
    w = _Node(vx - rtx, vy - rty, handle)
    w.ex, w.ey = rtx - vx, rty - vy
    lt.ex, lt.ey = vx - ltx, vy - lty
    w.par = rt
    rt.left = w
    rt.sz = 1 + _sz(rt.right) + 1  # w is a leaf
    lt.sz = 1 + _sz(lt.left) + rt.sz


def _engine_size(e):
    return 0 if e.lo is None else e.lo.size + e.up.size


def _via_kernel(op, a, b, track):
    res = op(a.to_polygon(), b.to_polygon())
    a.dead = b.dead = True
    return SplayPolygon.from_polygon(res, track)


def merge_minkowski(a: SplayPolygon, b: SplayPolygon) -> SplayPolygon:
    """Minkowski sum; consumes both arguments, recycling the larger tree."""
    a._check()
    b._check()
    track = a.track and b.track
    if a.is_empty or b.is_empty:
        a.dead = b.dead = True
        return SplayPolygon(None, None, track)
    if _engine_size(a) < _engine_size(b):
        a, b = b, a
    if a.count <= 2:
        return _via_kernel(_kernel_minkowski, a, b, track)
    ep = _next_epoch()
    _mink_chain(a.lo, _chain_list(b.lo), 1, ep, track)
    _mink_chain(a.up, _chain_list(b.up), -1, ep, track)
    a.track = track
    b.dead = True
    return a


def combine_any(kind, a, b, track=True, threshold=64):
    """Merge two results that may each be a plain Polygon or an engine.
    Small Polygon pairs go through the kernel directly; anything bigger is
    promoted to an engine and merged smaller-into-larger. kind: "+" for
    Minkowski sum, "u" for hull of union. Engines are consumed."""
    pa, pb = isinstance(a, Polygon), isinstance(b, Polygon)
    if pa and pb and len(a) + len(b) <= threshold:
        op = _kernel_minkowski if kind == "+" else _kernel_union
        return op(a, b)
    if pa:
        a = SplayPolygon.from_polygon(a, track)
    if pb:
        b = SplayPolygon.from_polygon(b, track)
    op = merge_minkowski if kind == "+" else merge_union
    return op(a, b)


def merge_union(a: SplayPolygon, b: SplayPolygon) -> SplayPolygon:
    """Hull of the union; consumes both arguments."""
    a._check()
    b._check()
    track = a.track and b.track
    if a.is_empty:
        a.dead = True
        b.track = track
        return b
    if b.is_empty:
        b.dead = True
        a.track = track
        return a
    if _engine_size(a) < _engine_size(b):
        a, b = b, a
    if a.count <= 2:
        return _via_kernel(_kernel_union, a, b, track)
    for x, y, h in _chain_list(b.lo):
        _union_insert(a.lo, x, y, h if track else None, 1)
    for x, y, h in _chain_list(b.up):
        _union_insert(a.up, x, y, h if track else None, -1)
    a.track = track
    b.dead = True
    return a
