"""Planar diagrams: trees, module trees and inner-product diagrams.

Three kinds of diagrams generate everything downstream:

* ``tree``   -- planar rooted trees, every internal vertex of valence >= 3;
* ``module`` -- a vertical thick line (root at the bottom, thick leaf at the
  top) carrying a stack of vertices, each with a forest of thin trees on its
  left and right;
* ``inner``  -- a horizontal thick line with a central vertex, two thick
  leaves at the ends, a left and a right arm (module stacks rooted at the
  center) and forests of thin trees attached above and below the center.

Leaves are numbered by the clockwise boundary walk: trees and module trees
left to right, inner diagrams starting at the left thick leaf, then the upper
leaves left to right, the right thick leaf, and the lower leaves right to
left.  Edges are identified by the set of leaf numbers lying outward of the
edge (away from the root, respectively away from the central vertex); these
sets are stable under contraction and expansion, which is what makes them
usable as orientation symbols.

Conventions pinned here and validated by the test suite:

* forests of a module vertex are stored in planar left-to-right order
  (``left`` bottom-to-top along the thick line, ``right`` top-to-bottom);
* arm stacks of an inner diagram are stored root-first, i.e. the vertex
  nearest the center comes first; the left arm's right forests sit in the
  upper half-plane, the right arm's left forests likewise;
* lower forests of an inner diagram are stored as walked (right to left in
  the drawing), while the sequence of lower trees itself is kept in drawing
  order, so the boundary walk traverses ``reversed(down)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

THIN = 1
THICK = 2
EMPTY = 0

TREE = "tree"
MODULE = "module"
INNER = "inner"


class DiagramError(ValueError):
    pass


class ColorMismatch(DiagramError):
    """Raised when a graft target leaf and the grafted root disagree."""


@dataclass(frozen=True, eq=False)
class ThinTree:
    children: tuple["ThinTree", ...] = ()

    def __post_init__(self):
        if len(self.children) == 1:
            raise DiagramError("thin vertex needs at least 2 children")
        object.__setattr__(self, "_hash", hash(("t", self.children)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (self is other
                or (isinstance(other, ThinTree)
                    and self._hash == other._hash
                    and self.children == other.children))

    @property
    def is_leaf(self):
        return not self.children


LEAF = ThinTree()


@dataclass(frozen=True, eq=False)
class ModuleVertex:
    left: tuple[ThinTree, ...] = ()
    right: tuple[ThinTree, ...] = ()

    def __post_init__(self):
        if len(self.left) + len(self.right) < 1:
            raise DiagramError("module vertex needs at least one thin tree")
        object.__setattr__(self, "_hash", hash(("v", self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (self is other
                or (isinstance(other, ModuleVertex)
                    and self._hash == other._hash
                    and self.left == other.left
                    and self.right == other.right))


@dataclass(frozen=True, eq=False)
class InnerData:
    left_arm: tuple[ModuleVertex, ...]
    up: tuple[ThinTree, ...]
    right_arm: tuple[ModuleVertex, ...]
    down: tuple[ThinTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(
            ("i", self.left_arm, self.up, self.right_arm, self.down)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (self is other
                or (isinstance(other, InnerData)
                    and self._hash == other._hash
                    and self.left_arm == other.left_arm
                    and self.up == other.up
                    and self.right_arm == other.right_arm
                    and self.down == other.down))


@dataclass(frozen=True, eq=False)
class Diagram:
    kind: str
    payload: object

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.kind, self.payload)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (self is other
                or (isinstance(other, Diagram)
                    and self._hash == other._hash
                    and self.kind == other.kind
                    and self.payload == other.payload))

    def __repr__(self):
        return "Diagram(%r)" % fmt(self)


@dataclass(frozen=True)
class ShapeClass:
    kind: str
    params: tuple[int, ...]   # (n,) for trees, (j, k) for module/inner

    def __repr__(self):
        return "ShapeClass(%s, %s)" % (self.kind, self.params)


def tree_diagram(root):
    if root.is_leaf:
        raise DiagramError("a tree diagram needs at least 2 leaves")
    return Diagram(TREE, root)


def module_diagram(stack):
    stack = tuple(stack)
    if not stack:
        raise DiagramError("module diagrams need at least one thin leaf "
                           "(the (0,0)-corolla is excluded)")
    return Diagram(MODULE, stack)


def inner_diagram(left_arm, up, right_arm, down):
    return Diagram(INNER, InnerData(tuple(left_arm), tuple(up),
                                    tuple(right_arm), tuple(down)))


def tree_corolla(n):
    if n < 2:
        raise DiagramError("corolla T_n needs n >= 2")
    return tree_diagram(ThinTree((LEAF,) * n))


def module_corolla(j, k):
    return module_diagram((ModuleVertex((LEAF,) * j, (LEAF,) * k),))


def inner_corolla(j, k):
    return inner_diagram((), (LEAF,) * j, (), (LEAF,) * k)


# ---------------------------------------------------------------------------
# serialization

def _fmt_thin(t):
    if t.is_leaf:
        return "*"
    return "(" + " ".join(_fmt_thin(c) for c in t.children) + ")"


def _fmt_module(stack):
    if not stack:
        return "|"
    v = stack[0]
    return "{%s ; %s ; %s}" % (" ".join(_fmt_thin(t) for t in v.left),
                               _fmt_module(stack[1:]),
                               " ".join(_fmt_thin(t) for t in v.right))


def fmt(d):
    """Canonical serialization; ``parse(fmt(d)) == d``."""
    if d.kind == TREE:
        return _fmt_thin(d.payload)
    if d.kind == MODULE:
        return _fmt_module(d.payload)
    inn = d.payload
    return "<%s ; %s ; %s ; %s>" % (_fmt_module(inn.left_arm),
                                    " ".join(_fmt_thin(t) for t in inn.up),
                                    _fmt_module(inn.right_arm),
                                    " ".join(_fmt_thin(t) for t in inn.down))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise DiagramError("parse error at position %d: %s" % (self.pos, msg))

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error("expected %r" % ch)
        self.pos += 1

    def thin(self):
        ch = self.peek()
        if ch == "*":
            self.pos += 1
            return LEAF
        if ch == "(":
            self.pos += 1
            children = []
            while self.peek() != ")":
                if not self.peek():
                    self.error("unterminated '('")
                children.append(self.thin())
            self.pos += 1
            if len(children) < 2:
                self.error("thin vertex needs at least 2 children")
            return ThinTree(tuple(children))
        self.error("expected thin tree")

    def thin_forest(self, stop):
        trees = []
        while self.peek() not in stop:
            if not self.peek():
                self.error("unterminated forest")
            trees.append(self.thin())
        return tuple(trees)

    def module(self):
        ch = self.peek()
        if ch == "|":
            self.pos += 1
            return ()
        if ch == "{":
            self.pos += 1
            left = self.thin_forest(";")
            self.expect(";")
            child = self.module()
            self.expect(";")
            right = self.thin_forest("}")
            self.expect("}")
            return (ModuleVertex(left, right),) + child
        self.error("expected module tree")

    def diagram(self):
        ch = self.peek()
        if ch == "<":
            self.pos += 1
            la = self.module()
            self.expect(";")
            up = self.thin_forest(";")
            self.expect(";")
            ra = self.module()
            self.expect(";")
            down = self.thin_forest(">")
            self.expect(">")
            return inner_diagram(la, up, ra, down)
        if ch in "|{":
            return module_diagram(self.module())
        return tree_diagram(self.thin())


def parse(text):
    p = _Parser(text)
    d = p.diagram()
    p.peek()
    if p.pos != len(text):
        p.error("trailing input")
    return d


# ---------------------------------------------------------------------------
# leaves, colors, degrees

def _thin_leaf_count(t):
    if t.is_leaf:
        return 1
    return sum(_thin_leaf_count(c) for c in t.children)


def _stack_leaf_count(stack):
    return 1 + sum(_thin_leaf_count(t) for v in stack for t in v.left + v.right)


def leaf_count(d):
    if d.kind == TREE:
        return _thin_leaf_count(d.payload)
    if d.kind == MODULE:
        return _stack_leaf_count(d.payload)
    inn = d.payload
    return (_stack_leaf_count(inn.left_arm) + _stack_leaf_count(inn.right_arm)
            + sum(_thin_leaf_count(t) for t in inn.up + inn.down))


def edge_count(d):
    return len(edge_locs(d))


def degree(d):
    return leaf_count(d) - edge_count(d) - 2


def is_binary(d):
    return degree(d) == 0


def is_corolla(d):
    return edge_count(d) == 0


def shape_class(d):
    if d.kind == TREE:
        return ShapeClass(TREE, (leaf_count(d),))
    if d.kind == MODULE:
        j = k = 0
        for v in d.payload:
            j += sum(_thin_leaf_count(t) for t in v.left)
            k += sum(_thin_leaf_count(t) for t in v.right)
        return ShapeClass(MODULE, (j, k))
    inn = d.payload
    j = sum(_thin_leaf_count(t) for t in inn.up)
    j += sum(_thin_leaf_count(t) for v in inn.left_arm for t in v.right)
    j += sum(_thin_leaf_count(t) for v in inn.right_arm for t in v.left)
    k = sum(_thin_leaf_count(t) for t in inn.down)
    k += sum(_thin_leaf_count(t) for v in inn.left_arm for t in v.left)
    k += sum(_thin_leaf_count(t) for v in inn.right_arm for t in v.right)
    return ShapeClass(INNER, (j, k))


def corolla_of(shape):
    if shape.kind == TREE:
        return tree_corolla(shape.params[0])
    if shape.kind == MODULE:
        return module_corolla(*shape.params)
    return inner_corolla(*shape.params)


def root_color(d):
    return {TREE: THIN, MODULE: THICK, INNER: EMPTY}[d.kind]


# ---------------------------------------------------------------------------
# canonical leaf order
#
# Leaf addresses:
#   tree:    ("t",) + path of child indices
#   module:  ("thick",) | ("L", vi, ti) + path | ("R", vi, ti) + path
#   inner:   ("la",) + module address | ("ra",) + module address
#            | ("up", i) + path | ("dn", i) + path

def _thin_addresses(t, prefix):
    if t.is_leaf:
        return [prefix]
    out = []
    for i, c in enumerate(t.children):
        out.extend(_thin_addresses(c, prefix + (i,)))
    return out


def _stack_addresses(stack):
    pre, post = [], []
    for vi, v in enumerate(stack):
        for ti, t in enumerate(v.left):
            pre.extend(_thin_addresses(t, ("L", vi, ti)))
    for vi in range(len(stack) - 1, -1, -1):
        for ti, t in enumerate(stack[vi].right):
            post.extend(_thin_addresses(t, ("R", vi, ti)))
    return pre + [("thick",)] + post


@lru_cache(maxsize=None)
def canonical_addresses(d):
    """Leaf addresses in canonical (clockwise boundary walk) order."""
    if d.kind == TREE:
        return tuple(_thin_addresses(d.payload, ("t",)))
    if d.kind == MODULE:
        return tuple(_stack_addresses(d.payload))
    inn = d.payload
    la = _stack_addresses(inn.left_arm)
    cut = la.index(("thick",))
    la_pre, la_post = la[:cut], la[cut + 1:]
    order = [("la", "thick")]
    order.extend(("la",) + a for a in la_post)
    for i, t in enumerate(inn.up):
        order.extend(_thin_addresses(t, ("up", i)))
    order.extend(("ra",) + a for a in _stack_addresses(inn.right_arm))
    for i in range(len(inn.down) - 1, -1, -1):
        order.extend(_thin_addresses(inn.down[i], ("dn", i)))
    order.extend(("la",) + a for a in la_pre)
    return tuple(order)


def leaf_color(addr):
    return THICK if addr[-1] == "thick" else THIN


@lru_cache(maxsize=None)
def canonical_colors(d):
    return tuple(leaf_color(a) for a in canonical_addresses(d))


def thick_positions(d):
    """1-based canonical positions of the thick leaves."""
    return tuple(i + 1 for i, c in enumerate(canonical_colors(d)) if c == THICK)


# ---------------------------------------------------------------------------
# edges
#
# Edge locations:
#   ("thin", prefix)    thin edge above the subtree at leaf-address prefix
#   ("mthick", i)       module diagram: thick edge below stack vertex i >= 1
#   ("la_thick", i)     inner: left-arm thick edge below arm vertex i >= 0
#   ("ra_thick", i)     inner: right-arm thick edge below arm vertex i >= 0
# (arm edge 0 joins the central vertex to the innermost arm vertex)

def fmt_edge(key, n):
    """Render an outward leaf set as a cyclic interval ``a-b``."""
    labels = sorted(key)
    if len(labels) == labels[-1] - labels[0] + 1:
        return "%d-%d" % (labels[0], labels[-1])
    s = set(labels)
    starts = [a for a in labels if (a - 2) % n + 1 not in s]
    if len(starts) != 1:
        raise DiagramError("edge key %s is not a cyclic interval" % labels)
    a = starts[0]
    b = (a + len(labels) - 2) % n + 1
    return "%d-%d" % (a, b)


def parse_edge(text, n):
    a, b = (int(x) for x in text.split("-"))
    out = []
    x = a
    while True:
        out.append(x)
        if x == b:
            break
        x = x % n + 1
        if len(out) > n:
            raise DiagramError("bad edge interval %r" % text)
    return frozenset(out)


def _pos_of(d):
    return {a: i + 1 for i, a in enumerate(canonical_addresses(d))}


def _thin_edges(t, prefix, pos, include_root):
    out = []
    if t.is_leaf:
        return out
    if include_root:
        key = frozenset(pos[a] for a in _thin_addresses(t, prefix))
        out.append((key, ("thin", prefix)))
    for i, c in enumerate(t.children):
        out.extend(_thin_edges(c, prefix + (i,), pos, True))
    return out


def _stack_thin_edges(stack, pos, wrap):
    out = []
    for vi, v in enumerate(stack):
        for side, forest in (("L", v.left), ("R", v.right)):
            for ti, t in enumerate(forest):
                out.extend(_thin_edges(t, wrap + (side, vi, ti), pos, True))
    return out


def _arm_outward(stack, i, arm_tag, pos):
    addrs = []
    for a in _stack_addresses(stack[i:]):
        if a == ("thick",):
            addrs.append((arm_tag, "thick"))
        else:
            addrs.append((arm_tag, a[0], a[1] + i) + a[2:])
    return frozenset(pos[a] for a in addrs)


@lru_cache(maxsize=None)
def edge_locs(d):
    """Mapping edge key -> structural location, for all internal edges."""
    pos = _pos_of(d)
    out = []
    if d.kind == TREE:
        for i, c in enumerate(d.payload.children):
            out.extend(_thin_edges(c, ("t", i), pos, True))
    elif d.kind == MODULE:
        stack = d.payload
        for vi in range(1, len(stack)):
            addrs = []
            for a in _stack_addresses(stack[vi:]):
                if a == ("thick",):
                    addrs.append(a)
                else:
                    addrs.append((a[0], a[1] + vi) + a[2:])
            out.append((frozenset(pos[a] for a in addrs), ("mthick", vi)))
        out.extend(_stack_thin_edges(stack, pos, ()))
    else:
        inn = d.payload
        for arm_tag, stack in (("la", inn.left_arm), ("ra", inn.right_arm)):
            for i in range(len(stack)):
                out.append((_arm_outward(stack, i, arm_tag, pos),
                            (arm_tag + "_thick", i)))
            out.extend(_stack_thin_edges(stack, pos, (arm_tag,)))
        for tag, forest in (("up", inn.up), ("dn", inn.down)):
            for i, t in enumerate(forest):
                out.extend(_thin_edges(t, (tag, i), pos, True))
    locs = dict(out)
    if len(locs) != len(out):
        raise DiagramError("edge keys collide on %s" % fmt(d))
    return locs


def edges(d):
    return sorted(edge_locs(d), key=sorted)


# ---------------------------------------------------------------------------
# contraction

def _thin_replace_at(t, path, children):
    if not path:
        return ThinTree(children)
    i = path[0]
    cs = list(t.children)
    cs[i] = _thin_replace_at(cs[i], path[1:], children)
    return ThinTree(tuple(cs))


def _thin_contract(t, path):
    # collapse the edge above the vertex at `path` (path nonempty)
    parent = t
    for i in path[:-1]:
        parent = parent.children[i]
    i = path[-1]
    child = parent.children[i]
    merged = parent.children[:i] + child.children + parent.children[i + 1:]
    return _thin_replace_at(t, path[:-1], merged)


def _forest_splice(forest, i, pieces):
    return forest[:i] + tuple(pieces) + forest[i + 1:]


def _merge_vertices(lower, upper):
    return ModuleVertex(lower.left + upper.left, upper.right + lower.right)


def _stack_contract_thin(stack, side, vi, ti, path):
    v = stack[vi]
    forest = v.left if side == "L" else v.right
    if path:
        new_forest = _forest_splice(forest, ti,
                                    (_thin_contract(forest[ti], path),))
    else:
        new_forest = _forest_splice(forest, ti, forest[ti].children)
    nv = (ModuleVertex(new_forest, v.right) if side == "L"
          else ModuleVertex(v.left, new_forest))
    return stack[:vi] + (nv,) + stack[vi + 1:]


def _stack_merge(stack, i):
    return stack[:i - 1] + (_merge_vertices(stack[i - 1], stack[i]),) + stack[i + 1:]


@lru_cache(maxsize=None)
def contract(d, key):
    """Collapse the internal edge `key`; all other edge keys are unchanged."""
    loc = edge_locs(d).get(key)
    if loc is None:
        raise DiagramError("unknown edge %s on %s" % (sorted(key), fmt(d)))
    if d.kind == TREE:
        return tree_diagram(_thin_contract(d.payload, loc[1][1:]))
    if d.kind == MODULE:
        if loc[0] == "mthick":
            return module_diagram(_stack_merge(d.payload, loc[1]))
        side, vi, ti = loc[1][0], loc[1][1], loc[1][2]
        return module_diagram(
            _stack_contract_thin(d.payload, side, vi, ti, loc[1][3:]))
    inn = d.payload
    if loc[0] in ("la_thick", "ra_thick"):
        arm_tag, i = loc[0][:2], loc[1]
        stack = inn.left_arm if arm_tag == "la" else inn.right_arm
        if i > 0:
            return _with_arm(inn, arm_tag, _stack_merge(stack, i))
        v0, rest = stack[0], stack[1:]
        if arm_tag == "la":
            return inner_diagram(rest, v0.right + inn.up, inn.right_arm,
                                 tuple(reversed(v0.left)) + inn.down)
        return inner_diagram(inn.left_arm, inn.up + v0.left, rest,
                             inn.down + tuple(reversed(v0.right)))
    prefix = loc[1]
    if prefix[0] in ("la", "ra"):
        arm_tag = prefix[0]
        stack = inn.left_arm if arm_tag == "la" else inn.right_arm
        new_stack = _stack_contract_thin(stack, prefix[1], prefix[2],
                                         prefix[3], prefix[4:])
        return _with_arm(inn, arm_tag, new_stack)
    tag, ti, path = prefix[0], prefix[1], prefix[2:]
    forest = inn.up if tag == "up" else inn.down
    if path:
        new_forest = _forest_splice(forest, ti,
                                    (_thin_contract(forest[ti], path),))
    elif tag == "up":
        new_forest = _forest_splice(forest, ti, forest[ti].children)
    else:
        new_forest = _forest_splice(forest, ti,
                                    tuple(reversed(forest[ti].children)))
    if tag == "up":
        return inner_diagram(inn.left_arm, new_forest, inn.right_arm, inn.down)
    return inner_diagram(inn.left_arm, inn.up, inn.right_arm, new_forest)


def _with_arm(inn, arm_tag, stack):
    if arm_tag == "la":
        return inner_diagram(stack, inn.up, inn.right_arm, inn.down)
    return inner_diagram(inn.left_arm, inn.up, stack, inn.down)


def contract_with_map(d, key):
    """Spec surface: returns (D/e, old key -> new key map for other edges)."""
    d2 = contract(d, key)
    return d2, {k: k for k in edge_locs(d) if k != key}


# ---------------------------------------------------------------------------
# expansions
#
# All (D', e') with D'/e' = D.  Tags record the junction type so the order
# module can orient edge-pairs:
#   "group"   a consecutive run grouped under a new thin vertex
#   "split"   a module/arm vertex split in two (a, b = forests kept below/above)
#   "cleft"   a run of central forests moved onto a new innermost left-arm vertex
#   "cright"  same, onto the right arm

def _thin_expansions_at(t, path, build):
    # groupings of consecutive child runs at the vertex `t[path]`
    sub = t
    for i in path:
        sub = sub.children[i]
    out = []
    r = len(sub.children)
    for a in range(r):
        for b in range(a + 2, r + 1):
            if b - a == r:
                continue   # would leave this vertex with a single child
            grouped = sub.children[:a] + (ThinTree(sub.children[a:b]),) + sub.children[b:]
            out.append((build(_thin_replace_at(t, path, grouped)), "group"))
    return out


def _all_thin_vertex_paths(t, path=()):
    if t.is_leaf:
        return []
    out = [path]
    for i, c in enumerate(t.children):
        out.extend(_all_thin_vertex_paths(c, path + (i,)))
    return out


def _tree_in_forest_expansions(forest, fi, rebuild):
    # expansions inside the thin tree forest[fi]; rebuild(new_forest) -> Diagram
    out = []
    t = forest[fi]
    for path in _all_thin_vertex_paths(t):
        out.extend(_thin_expansions_at(
            t, path,
            lambda nt: rebuild(_forest_splice(forest, fi, (nt,)))))
    return out


def _forest_group_expansions(forest, rebuild, reverse=False):
    # group consecutive runs of forest trees under a new thin vertex
    out = []
    r = len(forest)
    for a in range(r):
        for b in range(a + 2, r + 1):
            run = forest[a:b]
            if reverse:
                run = tuple(reversed(run))
            new_forest = forest[:a] + (ThinTree(run),) + forest[b:]
            out.append((rebuild(new_forest), "group"))
    return out


def _vertex_splits(v):
    # all ways to split a module vertex into (lower, upper)
    out = []
    nl, nr = len(v.left), len(v.right)
    for a in range(nl + 1):
        for b in range(nr + 1):
            lower_l, upper_l = v.left[:a], v.left[a:]
            upper_r, lower_r = v.right[:b], v.right[b:]
            if not lower_l and not lower_r:
                continue
            if not upper_l and not upper_r:
                continue
            out.append((ModuleVertex(lower_l, lower_r),
                        ModuleVertex(upper_l, upper_r), (a, b)))
    return out


def _stack_expansions(stack, rebuild):
    out = []
    for vi, v in enumerate(stack):
        for lower, upper, ab in _vertex_splits(v):
            new_stack = stack[:vi] + (lower, upper) + stack[vi + 1:]
            out.append((rebuild(new_stack), ("split",) + ab))
        for side, forest in (("L", v.left), ("R", v.right)):
            def rebuild_forest(nf, vi=vi, side=side):
                nv = (ModuleVertex(nf, stack[vi].right) if side == "L"
                      else ModuleVertex(stack[vi].left, nf))
                return rebuild(stack[:vi] + (nv,) + stack[vi + 1:])
            out.extend(_forest_group_expansions(forest, rebuild_forest))
            for fi in range(len(forest)):
                out.extend(_tree_in_forest_expansions(forest, fi, rebuild_forest))
    return out


def _central_splits(inn):
    out = []
    nu, nd = len(inn.up), len(inn.down)
    for i in range(nu + 1):          # up prefix -> left arm
        for j in range(nd + 1):      # down prefix -> left arm
            if i + j == 0:
                continue
            nv = ModuleVertex(tuple(reversed(inn.down[:j])), inn.up[:i])
            d2 = inner_diagram((nv,) + inn.left_arm, inn.up[i:],
                               inn.right_arm, inn.down[j:])
            out.append((d2, "cleft"))
    for i in range(nu + 1):          # up suffix -> right arm
        for j in range(nd + 1):      # down suffix -> right arm
            if (nu - i) + (nd - j) == 0:
                continue
            nv = ModuleVertex(inn.up[i:], tuple(reversed(inn.down[j:])))
            d2 = inner_diagram(inn.left_arm, inn.up[:i],
                               (nv,) + inn.right_arm, inn.down[:j])
            out.append((d2, "cright"))
    return out


def _expansions_tagged(d):
    out = []
    if d.kind == TREE:
        t = d.payload
        for path in _all_thin_vertex_paths(t):
            out.extend(_thin_expansions_at(
                t, path, lambda nt: tree_diagram(nt)))
    elif d.kind == MODULE:
        out.extend(_stack_expansions(d.payload,
                                     lambda ns: module_diagram(ns)))
    else:
        inn = d.payload
        out.extend(_central_splits(inn))
        for arm_tag in ("la", "ra"):
            stack = inn.left_arm if arm_tag == "la" else inn.right_arm
            out.extend(_stack_expansions(
                stack, lambda ns, at=arm_tag: _with_arm(inn, at, ns)))
        for tag in ("up", "dn"):
            forest = inn.up if tag == "up" else inn.down

            def rebuild_forest(nf, tag=tag):
                if tag == "up":
                    return inner_diagram(inn.left_arm, nf, inn.right_arm, inn.down)
                return inner_diagram(inn.left_arm, inn.up, inn.right_arm, nf)

            out.extend(_forest_group_expansions(forest, rebuild_forest,
                                                reverse=(tag == "dn")))
            for fi in range(len(forest)):
                out.extend(_tree_in_forest_expansions(forest, fi, rebuild_forest))
    return out


@lru_cache(maxsize=None)
def expansions_tagged(d):
    """All (D', e', junction tag) with D'/e' = d, deterministically ordered."""
    old = set(edge_locs(d))
    result = []
    for d2, tag in _expansions_tagged(d):
        new = set(edge_locs(d2)) - old
        if len(new) != 1:
            raise DiagramError("expansion of %s gained %d edges" %
                               (fmt(d), len(new)))
        result.append((d2, next(iter(new)), tag))
    result.sort(key=lambda item: (fmt(item[0]), sorted(item[1])))
    if len({item[:2] for item in result}) != len(result):
        raise DiagramError("duplicate expansions of %s" % fmt(d))
    return tuple(result)


@lru_cache(maxsize=None)
def expansions(d):
    """All (D', e') with D'/e' = d, deterministically ordered."""
    return tuple((d2, e2) for d2, e2, _tag in expansions_tagged(d))


# ---------------------------------------------------------------------------
# grafting and cutting

@dataclass(frozen=True)
class Graft:
    diagram: Diagram
    new_edge: frozenset
    host_pos: dict        # host leaf position -> composite position (graft leaf dropped)
    guest_pos: dict       # guest leaf position -> composite position
    host_edges: dict      # host edge key -> composite edge key
    guest_edges: dict     # guest edge key -> composite edge key
    rot: int              # cyclic shift applied to the spliced leaf order


def _splice_structure(d, pos, e):
    """Plug diagram `e` into leaf `pos` of `d`; returns the composite."""
    addr = canonical_addresses(d)[pos - 1]
    if leaf_color(addr) == THIN:
        if e.kind != TREE:
            raise ColorMismatch("thin leaf takes a tree")
        repl = e.payload
        if d.kind == TREE:
            return tree_diagram(_thin_replace_at(d.payload, addr[1:],
                                                 repl.children))
        if d.kind == MODULE:
            side, vi, ti = addr[0], addr[1], addr[2]
            stack = d.payload
            v = stack[vi]
            forest = v.left if side == "L" else v.right
            nf = _forest_splice(forest, ti,
                                (_thin_replace_at(forest[ti], addr[3:],
                                                  repl.children),))
            nv = (ModuleVertex(nf, v.right) if side == "L"
                  else ModuleVertex(v.left, nf))
            return module_diagram(stack[:vi] + (nv,) + stack[vi + 1:])
        inn = d.payload
        if addr[0] in ("la", "ra"):
            arm_tag, side, vi, ti = addr[0], addr[1], addr[2], addr[3]
            stack = inn.left_arm if arm_tag == "la" else inn.right_arm
            v = stack[vi]
            forest = v.left if side == "L" else v.right
            nf = _forest_splice(forest, ti,
                                (_thin_replace_at(forest[ti], addr[4:],
                                                  repl.children),))
            nv = (ModuleVertex(nf, v.right) if side == "L"
                  else ModuleVertex(v.left, nf))
            return _with_arm(inn, arm_tag,
                             stack[:vi] + (nv,) + stack[vi + 1:])
        tag, ti = addr[0], addr[1]
        forest = inn.up if tag == "up" else inn.down
        nf = _forest_splice(forest, ti,
                            (_thin_replace_at(forest[ti], addr[2:],
                                              repl.children),))
        if tag == "up":
            return inner_diagram(inn.left_arm, nf, inn.right_arm, inn.down)
        return inner_diagram(inn.left_arm, inn.up, inn.right_arm, nf)
    # thick leaf
    if e.kind != MODULE:
        raise ColorMismatch("thick leaf takes a module tree")
    if d.kind == MODULE:
        return module_diagram(d.payload + e.payload)
    if d.kind == INNER:
        inn = d.payload
        if addr == ("la", "thick"):
            return inner_diagram(inn.left_arm + e.payload, inn.up,
                                 inn.right_arm, inn.down)
        return inner_diagram(inn.left_arm, inn.up,
                             inn.right_arm + e.payload, inn.down)
    raise ColorMismatch("tree diagrams have no thick leaves")


def graft(d, pos, e):
    """Attach the root of `e` to leaf `pos` of `d` (spec operation)."""
    if e.kind == INNER:
        raise ColorMismatch("inner-product diagrams cannot be grafted")
    k, l = leaf_count(d), leaf_count(e)
    if not 1 <= pos <= k:
        raise DiagramError("leaf position out of range")
    composite = _splice_structure(d, pos, e)

    order = ([("D", j) for j in range(1, pos)]
             + [("E", i) for i in range(1, l + 1)]
             + [("D", j) for j in range(pos + 1, k + 1)])
    rot = 0
    if (d.kind == INNER and e.kind == MODULE and pos == 1):
        rot = thick_positions(e)[0] - 1
        order = order[rot:] + order[:rot]
    host_pos, guest_pos = {}, {}
    for idx, (src, p) in enumerate(order):
        (host_pos if src == "D" else guest_pos)[p] = idx + 1

    guest_all = frozenset(guest_pos.values())
    host_edges = {}
    for key in edge_locs(d):
        if pos in key:
            new = frozenset(host_pos[p] for p in key if p != pos) | guest_all
        else:
            new = frozenset(host_pos[p] for p in key)
        host_edges[key] = new
    guest_edges = {key: frozenset(guest_pos[p] for p in key)
                   for key in edge_locs(e)}

    expected = set(host_edges.values()) | set(guest_edges.values()) | {guest_all}
    actual = set(edge_locs(composite))
    if expected != actual:
        raise DiagramError("graft bookkeeping failed on %s" % fmt(composite))
    return Graft(composite, guest_all, host_pos, guest_pos,
                 host_edges, guest_edges, rot)


@dataclass(frozen=True)
class Cut:
    host: Diagram         # diagram with the outward part replaced by a leaf
    pos: int              # canonical position of that leaf in `host`
    outer: Diagram        # the part outward of the edge
    graft: Graft          # graft(host, pos, outer), reproducing the original


def cut(d, key):
    """Sever the internal edge `key`; inverse of `graft` at that edge."""
    loc = edge_locs(d)[key]
    if loc[0] == "thin":
        prefix = loc[1]
        sub = d
        if d.kind == TREE:
            sub = d.payload
            for i in prefix[1:]:
                sub = sub.children[i]
            host = tree_diagram(_thin_set_leaf(d.payload, prefix[1:]))
        elif d.kind == MODULE:
            side, vi, ti, path = prefix[0], prefix[1], prefix[2], prefix[3:]
            stack = d.payload
            forest = stack[vi].left if side == "L" else stack[vi].right
            sub = forest[ti]
            for i in path:
                sub = sub.children[i]
            nf = _forest_splice(forest, ti,
                                (_thin_set_leaf(forest[ti], path),))
            v = stack[vi]
            nv = (ModuleVertex(nf, v.right) if side == "L"
                  else ModuleVertex(v.left, nf))
            host = module_diagram(stack[:vi] + (nv,) + stack[vi + 1:])
        else:
            inn = d.payload
            if prefix[0] in ("la", "ra"):
                arm_tag, side, vi, ti = prefix[0], prefix[1], prefix[2], prefix[3]
                path = prefix[4:]
                stack = inn.left_arm if arm_tag == "la" else inn.right_arm
                forest = stack[vi].left if side == "L" else stack[vi].right
                sub = forest[ti]
                for i in path:
                    sub = sub.children[i]
                nf = _forest_splice(forest, ti,
                                    (_thin_set_leaf(forest[ti], path),))
                v = stack[vi]
                nv = (ModuleVertex(nf, v.right) if side == "L"
                      else ModuleVertex(v.left, nf))
                host = _with_arm(inn, arm_tag,
                                 stack[:vi] + (nv,) + stack[vi + 1:])
            else:
                tag, ti, path = prefix[0], prefix[1], prefix[2:]
                forest = inn.up if tag == "up" else inn.down
                sub = forest[ti]
                for i in path:
                    sub = sub.children[i]
                nf = _forest_splice(forest, ti,
                                    (_thin_set_leaf(forest[ti], path),))
                if tag == "up":
                    host = inner_diagram(inn.left_arm, nf, inn.right_arm,
                                         inn.down)
                else:
                    host = inner_diagram(inn.left_arm, inn.up, inn.right_arm,
                                         nf)
        outer = tree_diagram(sub)
    elif loc[0] == "mthick":
        i = loc[1]
        host = module_diagram(d.payload[:i])
        outer = module_diagram(d.payload[i:])
    else:
        arm_tag, i = loc[0][:2], loc[1]
        inn = d.payload
        stack = inn.left_arm if arm_tag == "la" else inn.right_arm
        host = _with_arm(inn, arm_tag, stack[:i])
        outer = module_diagram(stack[i:])
    pos = min(key) if loc[0] != "la_thick" else 1
    g = graft(host, pos, outer)
    if g.diagram != d or g.new_edge != key:
        raise DiagramError("cut/graft mismatch on %s at %s" %
                           (fmt(d), sorted(key)))
    return Cut(host, pos, outer, g)


def _thin_set_leaf(t, path):
    if not path:
        return LEAF
    i = path[0]
    cs = list(t.children)
    cs[i] = _thin_set_leaf(cs[i], path[1:])
    return ThinTree(tuple(cs))


# ---------------------------------------------------------------------------
# enumeration and rotation

@lru_cache(maxsize=None)
def enumerate_class(shape, deg):
    """All diagrams in `shape` of the given degree, lexicographically ordered."""
    if deg < 0:
        return ()
    c = corolla_of(shape)
    top = degree(c)
    if deg > top:
        return ()
    layer = {c}
    for _ in range(top - deg):
        layer = {d2 for d in layer for d2, _e in expansions(d)}
    return tuple(sorted(layer, key=fmt))


def rotate180(d):
    """Rotate an inner diagram by half a turn; an involution."""
    if d.kind != INNER:
        raise DiagramError("rotate180 needs an inner diagram")
    inn = d.payload
    return inner_diagram(inn.right_arm, tuple(reversed(inn.down)),
                         inn.left_arm, tuple(reversed(inn.up)))
