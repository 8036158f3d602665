"""Shared witness DAG.

A witness names the lower set that a polygon vertex came from. Merges combine
witnesses of existing vertices thousands of times, so witnesses are kept as
nodes in a shared DAG (leaf = explicit id set, union = disjoint combination)
and only expanded to a concrete frozenset on demand. Expansion memoizes on
node identity, so heavily shared DAGs expand in linear time.
"""

from __future__ import annotations


class WLeaf:
    __slots__ = ("ids",)

    def __init__(self, ids: frozenset):
        self.ids = ids


class WUnion:
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right


EMPTY = WLeaf(frozenset())


def wleaf(ids) -> WLeaf:
    ids = frozenset(ids)
    return EMPTY if not ids else WLeaf(ids)


def wunion(a, b):
    """Combine two witness handles. None (tracking disabled) passes through."""
    if a is None:
        return b
    if b is None:
        return a
    if a is EMPTY:
        return b
    if b is EMPTY:
        return a
    return WUnion(a, b)


def expand(node):
    """Resolve a witness handle to the frozenset of element ids it denotes."""
    if node is None:
        return None
    memo: dict[int, frozenset] = {}
    stack = [node]
    while stack:
        cur = stack.pop()
        if id(cur) in memo:
            continue
        if type(cur) is WLeaf:
            memo[id(cur)] = cur.ids
        else:
            pending = [c for c in (cur.left, cur.right) if id(c) not in memo]
            if pending:
                stack.append(cur)
                stack.extend(pending)
            else:
                memo[id(cur)] = memo[id(cur.left)] | memo[id(cur.right)]
    return memo[id(node)]
