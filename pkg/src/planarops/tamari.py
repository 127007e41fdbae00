"""The partial order on binary diagrams generated by six local moves.

A pair of binary diagrams is an edge-pair when the two arise as the two
binary expansions of a common codimension-one diagram; the junction where
they differ identifies the move type and its direction:

  (1) thin vertex:     left-grouped pair  <  right-grouped pair
  (2) module vertex carrying one left and one right tree:
                       left tree below    <  right tree below
  (3) two left trees:  grouped            <  split onto two vertices
  (4) two right trees: split              <  grouped
  (5) central vertex with one upper tree:
                       on the left arm    <  on the right arm
  (6) central vertex with one lower tree:
                       on the right arm   <  on the left arm

The minimum of each subposet is reached by inserting only negative edges,
the maximum by inserting only positive edges; an edge of a binary diagram is
positive exactly when the diagram is the larger member of the edge-pair at
that edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagrams import (
    INNER, MODULE, TREE, DiagramError, Diagram, ModuleVertex, ThinTree,
    contract, edge_locs, edges, expansions_tagged, fmt, inner_diagram,
    is_binary, module_diagram, shape_class, tree_diagram,
)


@dataclass(frozen=True)
class MoveStep:
    move: int                 # 1..6
    site: frozenset           # edge of the lower diagram consumed by the move
    direction: str            # "up" | "down"
    bijection: tuple          # ((old key, new key), ...) covering every edge

    def inverse(self):
        return MoveStep(self.move, dict(self.bijection)[self.site],
                        "down" if self.direction == "up" else "up",
                        tuple((b, a) for a, b in self.bijection))

    def apply(self, key):
        return dict(self.bijection)[key]


def _junction_pair(d):
    """The two binary expansions of a codim-1 diagram, with tags."""
    pair = expansions_tagged(d)
    if len(pair) != 2:
        raise DiagramError("expected an edge-pair at %s, got %d expansions"
                           % (fmt(d), len(pair)))
    return pair


def _orient_pair(d, pair):
    """Return (move id, smaller index) for the edge-pair `pair` of d."""
    (d1, e1, t1), (d2, e2, t2) = pair
    tags = {t1 if isinstance(t1, str) else t1[0],
            t2 if isinstance(t2, str) else t2[0]}
    if tags == {"group"}:
        # thin junction: the smaller groups the left run
        lo = min(min(e1), min(e2))
        return 1, (0 if lo in e1 else 1)
    if tags == {"group", "split"}:
        split_tag = t1 if t1[0] == "split" else t2
        group_idx = 0 if t1 == "group" else 1
        if split_tag[1] == 1:      # two left trees, grouped is smaller
            return 3, group_idx
        return 4, 1 - group_idx    # two right trees, split is smaller
    if tags == {"split"}:
        return 2, (0 if t1 == ("split", 1, 1) else 1)
    if tags == {"cleft", "cright"}:
        move = 5 if d.payload.up else 6
        want = "cleft" if move == 5 else "cright"
        return move, (0 if t1 == want else 1)
    raise DiagramError("unrecognized junction on %s: %s %s" % (fmt(d), t1, t2))


def _edge_pair(b, e):
    """The partner of binary `b` across the move at edge `e`."""
    d = contract(b, e)
    pair = _junction_pair(d)
    move, smaller = _orient_pair(d, pair)
    (da, ea, _), (db, eb, _) = pair
    if (da, ea) == (b, e):
        other, oe, b_small = db, eb, smaller == 0
    elif (db, eb) == (b, e):
        other, oe, b_small = da, ea, smaller == 1
    else:
        raise DiagramError("contract/expand mismatch at %s" % fmt(b))
    return move, other, oe, b_small


@lru_cache(maxsize=None)
def covers(b):
    """All (B', MoveStep) with b < B' an elementary move."""
    if not is_binary(b):
        raise DiagramError("covers needs a binary diagram")
    out = []
    for e in edges(b):
        move, other, oe, b_small = _edge_pair(b, e)
        if b_small:
            bij = tuple(sorted(((k, oe if k == e else k)
                                for k in edge_locs(b)), key=lambda p: sorted(p[0])))
            out.append((other, MoveStep(move, e, "up", bij)))
    out.sort(key=lambda pair: fmt(pair[0]))
    return tuple(out)


@lru_cache(maxsize=None)
def cocovers(b):
    """All (B', MoveStep) with B' < b an elementary move (step points down)."""
    if not is_binary(b):
        raise DiagramError("cocovers needs a binary diagram")
    out = []
    for e in edges(b):
        move, other, oe, b_small = _edge_pair(b, e)
        if not b_small:
            bij = tuple(sorted(((k, oe if k == e else k)
                                for k in edge_locs(b)), key=lambda p: sorted(p[0])))
            out.append((other, MoveStep(move, e, "down", bij)))
    out.sort(key=lambda pair: fmt(pair[0]))
    return tuple(out)


@lru_cache(maxsize=None)
def classify_edges(b):
    """Positive/negative classification; +1 for positive, -1 for negative."""
    if not is_binary(b):
        raise DiagramError("classify_edges needs a binary diagram")
    out = {}
    for e in edges(b):
        _move, _other, _oe, b_small = _edge_pair(b, e)
        out[e] = -1 if b_small else +1
    return out


def positive_edges(b):
    return frozenset(e for e, s in classify_edges(b).items() if s > 0)


@lru_cache(maxsize=None)
def _descendants(b):
    """All binary diagrams >= b (including b)."""
    seen = {b}
    stack = [b]
    while stack:
        x = stack.pop()
        for y, _step in covers(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def leq(b1, b2):
    """Reachability of b2 from b1 by upward moves."""
    if shape_class(b1) != shape_class(b2):
        raise DiagramError("cannot compare diagrams of different shapes")
    return b2 in _descendants(b1)


def _min_thin(t, comb):
    if t.is_leaf:
        return t
    cs = [_min_thin(c, comb) for c in t.children]
    return comb(cs)


def _left_comb(cs):
    acc = cs[0]
    for c in cs[1:]:
        acc = ThinTree((acc, c))
    return acc


def _right_comb(cs):
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = ThinTree((c, acc))
    return acc


def _min_stack(stack):
    out = []
    for v in stack:
        if v.left:
            out.append(ModuleVertex(
                (_left_comb([_min_thin(t, _left_comb) for t in v.left]),), ()))
        out.extend(ModuleVertex((), (_min_thin(s, _left_comb),))
                   for s in reversed(v.right))
    return tuple(out)


def _max_stack(stack):
    out = []
    for v in stack:
        if v.right:
            out.append(ModuleVertex(
                (), (_right_comb([_min_thin(s, _right_comb) for s in v.right]),)))
        out.extend(ModuleVertex((_min_thin(t, _right_comb),), ())
                   for t in v.left)
    return tuple(out)


def dmin(d):
    """The unique minimal binary expansion of d."""
    if d.kind == TREE:
        return tree_diagram(_min_thin(d.payload, _left_comb))
    if d.kind == MODULE:
        return module_diagram(_min_stack(d.payload))
    inn = d.payload
    la = tuple(ModuleVertex((), (_min_thin(u, _left_comb),))
               for u in reversed(inn.up)) + _min_stack(inn.left_arm)
    ra = tuple(ModuleVertex((), (_min_thin(t, _left_comb),))
               for t in inn.down) + _min_stack(inn.right_arm)
    return inner_diagram(la, (), ra, ())


def dmax(d):
    """The unique maximal binary expansion of d."""
    if d.kind == TREE:
        return tree_diagram(_min_thin(d.payload, _right_comb))
    if d.kind == MODULE:
        return module_diagram(_max_stack(d.payload))
    inn = d.payload
    ra = tuple(ModuleVertex((_min_thin(u, _right_comb),), ())
               for u in inn.up) + _max_stack(inn.right_arm)
    la = tuple(ModuleVertex((_min_thin(t, _right_comb),), ())
               for t in reversed(inn.down)) + _max_stack(inn.left_arm)
    return inner_diagram(la, (), ra, ())


def move_path_down(top, bottom):
    """A deterministic path of downward MoveSteps from `top` to `bottom`.

    Shortest path by breadth-first search, ties broken by the canonical
    serialization of the intermediate diagrams; requires bottom <= top.
    """
    if top == bottom:
        return ()
    parent = {top: None}
    frontier = [top]
    while frontier:
        nxt = []
        for x in sorted(frontier, key=fmt):
            for y, step in sorted(cocovers(x), key=lambda p: fmt(p[0])):
                if y not in parent:
                    parent[y] = (x, step)
                    if y == bottom:
                        path = []
                        cur = y
                        while parent[cur] is not None:
                            px, st = parent[cur]
                            path.append(st)
                            cur = px
                        return tuple(reversed(path))
                    nxt.append(y)
        frontier = nxt
    raise DiagramError("%s is not below %s" % (fmt(bottom), fmt(top)))


def all_binaries(shape):
    from .diagrams import enumerate_class
    return enumerate_class(shape, 0)


def poset_extremes(shape):
    """Unique source and sink of the cover relation, by exhaustive search."""
    nodes = all_binaries(shape)
    sources = [b for b in nodes if not cocovers(b)]
    sinks = [b for b in nodes if not covers(b)]
    if len(sources) != 1 or len(sinks) != 1:
        raise DiagramError("poset of %s has %d sources / %d sinks"
                           % (shape, len(sources), len(sinks)))
    return sources[0], sinks[0]
