"""Series-parallel weighted orders solved by merging splay polygons.

A series composition puts every left element below every right element, so
its lower sets are the left lower sets plus "all of the left, then a right
lower set": hull of the union with the right polygon translated by the left
total weight. A parallel composition has independent sides: Minkowski sum.
Merges always feed the smaller polygon into the larger, which is what keeps
the whole build near-linear.

Decomposition trees here are strictly binary; n-ary input lists are folded
into right-leaning chains (both compositions are associative, so the result
does not depend on that choice).
"""

from __future__ import annotations

import json

from .errors import InputFormatError
from .polygon import Polygon, hull_of_points
from .poset import Poset, _check_weight
from .splay import SplayPolygon, combine_any
from .witness import wleaf, wunion

LEAF = "leaf"
SERIES = "series"
PARALLEL = "parallel"


class SPTree:
    """One node of a series-parallel decomposition tree. Leaves carry an
    element id and weight; internal nodes cache subtree element count and
    total weight so series translation offsets are O(1)."""

    __slots__ = ("kind", "left", "right", "id", "weight", "count", "total")

    def __init__(self, kind, left=None, right=None, id=None, weight=None):
        self.kind = kind
        self.left = left
        self.right = right
        self.id = id
        self.weight = weight
        if kind == LEAF:
            self.count = 1
            self.total = weight
        else:
            self.count = left.count + right.count
            self.total = (left.total[0] + right.total[0],
                          left.total[1] + right.total[1])


def leaf(id, weight):
    return SPTree(LEAF, id=id, weight=_check_weight(weight, f"leaf {id!r}"))


def series(left, right):
    return SPTree(SERIES, left, right)


def parallel(left, right):
    return SPTree(PARALLEL, left, right)


def _fold_nary(kind, children):
    node = children[-1]
    for child in reversed(children[:-1]):
        node = SPTree(kind, child, node)
    return node


def parse_sp(text):
    """Read a decomposition tree from JSON text (or an already-parsed
    object). Nodes are {"leaf": {"id":…, "weight":[a,b]}}, {"series":[…]}
    or {"parallel":[…]}; composition lists may have any length >= 1."""
    if isinstance(text, (str, bytes)):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"not valid JSON: {e}") from None
    else:
        data = text

    seen = set()
    # iterative: JSON nesting may be deep for chain-shaped orders
    def build(obj):
        stack = [(obj, None)]
        done = {}
        while stack:
            node, state = stack.pop()
            if not isinstance(node, dict) or len(node) != 1:
                raise InputFormatError(f"bad node: {node!r}")
            (key, val), = node.items()
            if key == LEAF:
                if not isinstance(val, dict) or "id" not in val or "weight" not in val:
                    raise InputFormatError(f"bad leaf: {val!r}")
                if val["id"] in seen:
                    raise InputFormatError(f"duplicate element id {val['id']!r}")
                seen.add(val["id"])
                done[id(node)] = leaf(val["id"], val["weight"])
            elif key in (SERIES, PARALLEL):
                if not isinstance(val, list) or not val:
                    raise InputFormatError(f'"{key}" needs a nonempty list')
                if state is None:
                    stack.append((node, "ready"))
                    for child in val:
                        stack.append((child, None))
                else:
                    done[id(node)] = _fold_nary(key, [done[id(c)] for c in val])
            else:
                raise InputFormatError(f"unknown node kind {key!r}")
        return done[id(obj)]

    return build(data)


def sp_tree_to_json(t):
    if t.kind == LEAF:
        return {"leaf": {"id": t.id, "weight": list(t.weight)}}
    return {t.kind: [sp_tree_to_json(t.left), sp_tree_to_json(t.right)]}


def _postorder(t):
    out, stack = [], [t]
    while stack:
        node = stack.pop()
        out.append(node)
        if node.kind != LEAF:
            stack.append(node.left)
            stack.append(node.right)
    out.reverse()
    return out


def sp_to_poset(t) -> Poset:
    """Explicit poset with the same lower sets, for oracle cross-checks.
    Emits all left-below-right pairs of every series node: quadratic, fine
    at oracle scale."""
    ids, weights, pairs = [], [], []
    elems = {}
    for node in _postorder(t):
        if node.kind == LEAF:
            elems[id(node)] = [node.id]
            ids.append(node.id)
            weights.append(node.weight)
        else:
            l, r = elems[id(node.left)], elems[id(node.right)]
            if node.kind == SERIES:
                pairs.extend((u, v) for u in l for v in r)
            elems[id(node)] = l + r
    return Poset(ids, weights, pairs)


def solve_sp(t, track=True) -> Polygon:
    """polygon of the order: bottom-up over the decomposition tree. Small
    intermediates stay plain polygons; combine_any promotes to splay
    engines once a side outgrows the kernel threshold."""
    acc = {}
    allw = {}
    for node in _postorder(t):
        if node.kind == LEAF:
            if track:
                wits = [wleaf(frozenset()), wleaf(frozenset([node.id]))]
                allw[id(node)] = wits[1]
            else:
                wits = None
            acc[id(node)] = hull_of_points([(0, 0), node.weight], wits)
        else:
            l = acc.pop(id(node.left))
            r = acc.pop(id(node.right))
            if node.kind == PARALLEL:
                acc[id(node)] = combine_any("+", l, r, track)
            else:
                tag = allw[id(node.left)] if track else None
                r = r.translate(node.left.total, tag)
                acc[id(node)] = combine_any("u", l, r, track)
            if track:
                allw[id(node)] = wunion(allw[id(node.left)],
                                        allw[id(node.right)])
    res = acc[id(t)]
    return res if isinstance(res, Polygon) else res.to_polygon()


def tree_to_sp(data):
    """Rooted-tree order to SPTree: each vertex must be preceded by its
    parent, so lower sets are the subtrees containing the root. Input is
    {"root": {"id":…, "weight":[a,b]}, "edges": [{"parent":…, "child":…,
    "weight":[a,b]}...]} where a child's weight rides on its parent edge;
    the subtree at v becomes SERIES(leaf v, PARALLEL over child subtrees).
    """
    if not isinstance(data, dict) or "root" not in data:
        raise InputFormatError('expected an object with "root" and "edges"')
    root = data["root"]
    if not isinstance(root, dict) or "id" not in root:
        raise InputFormatError(f"bad root entry: {root!r}")
    children = {root["id"]: []}
    weights = {root["id"]: root.get("weight", [0, 0])}
    for e in data.get("edges", []):
        if not isinstance(e, dict) or "parent" not in e or "child" not in e:
            raise InputFormatError(f"bad edge entry: {e!r}")
        if e["child"] in weights:
            raise InputFormatError(f"vertex {e['child']!r} has two parents")
        weights[e["child"]] = e.get("weight", [0, 0])
        children[e["child"]] = []
        children.setdefault(e["parent"], []).append(e["child"])
    for v in children:
        if v not in weights:
            raise InputFormatError(f"edge names unknown parent {v!r}")

    # post-order without recursion; child lists may be long chains
    built = {}
    stack = [(root["id"], False)]
    while stack:
        v, ready = stack.pop()
        if not ready:
            stack.append((v, True))
            stack.extend((c, False) for c in children[v])
        else:
            lf = leaf(v, weights[v])
            kids = [built[c] for c in children[v]]
            built[v] = lf if not kids else series(lf, _fold_nary(PARALLEL, kids))
    return built[root["id"]]
