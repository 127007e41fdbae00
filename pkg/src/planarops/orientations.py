"""Wedge orientations of diagram edges and the induced-orientation calculus.

An orientation is a sign together with an ordered wedge of edge keys; the
canonical form sorts the keys and folds the permutation parity into the
sign.  ``None`` stands for the zero orientation (a repeated factor).

The base orientation ``xi`` of a binary diagram is +1 on two-leaf corollas
and propagates through grafting with the sign of the signed operadic
composition; ``omega_std`` differs from it by the global factor
(-1)^((n-2)(n-3)/2).  Transfer along a single local move negates an
orientation under the move's edge identification, and these two descriptions
agree, which the test suite checks move by move.

``omega_sd(S, D, omega_D)`` is the orientation a summand S of the projection
of a fully metric generator D inherits: the positive edges of D_min (the
edges of D) are carried down a move path to the positive edges of S_max and
contracted out of xi(S_max).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagrams import DiagramError, cut, edges, fmt, is_binary, leaf_count
from .tamari import cocovers, dmax, dmin, move_path_down, positive_edges


@dataclass(frozen=True)
class Orientation:
    sign: int
    keys: tuple            # strictly increasing in the lexicographic key order

    def __neg__(self):
        return Orientation(-self.sign, self.keys)


def _key_order(key):
    return tuple(sorted(key))


def _sort_parity(keys):
    keys = list(keys)
    sign = 1
    for i in range(1, len(keys)):           # insertion sort, counting swaps
        j = i
        while j > 0 and _key_order(keys[j - 1]) > _key_order(keys[j]):
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            sign = -sign
            j -= 1
    return keys, sign


def orient(keys, sign=1):
    """Normalize a wedge of edge keys; None when a factor repeats."""
    keys = list(keys)
    if len(set(keys)) != len(keys):
        return None
    sorted_keys, parity = _sort_parity(keys)
    return Orientation(sign * parity, tuple(sorted_keys))


def wedge(a, b):
    """Concatenate two orientations; None on a repeated edge."""
    if a is None or b is None:
        return None
    return orient(a.keys + b.keys, a.sign * b.sign)


def rename(o, mapping):
    if o is None:
        return None
    return orient([mapping[k] for k in o.keys], o.sign)


def pair_contract(sub, full):
    """The contraction sub -| full.

    Bringing the factors of `sub` (in sub's order) to the front of `full`
    and stripping them costs (-1)^(r(r-1)/2) on top of the reordering
    parity.
    """
    if sub is None or full is None:
        return None
    if not set(sub.keys) <= set(full.keys):
        raise DiagramError("contraction of a non-subset")
    rest = [k for k in full.keys if k not in set(sub.keys)]
    target = list(sub.keys) + rest
    # parity of rearranging full.keys into target
    index = {k: i for i, k in enumerate(full.keys)}
    perm = [index[k] for k in target]
    parity = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                parity = -parity
    r = len(sub.keys)
    sign = sub.sign * full.sign * parity * (-1) ** (r * (r - 1) // 2)
    return Orientation(sign, tuple(rest))


def transfer(o, step):
    """Carry an orientation across one local move (negates it)."""
    if o is None:
        return None
    mapping = dict(step.bijection)
    return orient([mapping[k] for k in o.keys], -o.sign)


@lru_cache(maxsize=None)
def xi(d):
    """Base orientation of a binary diagram, +1 on two-leaf corollas."""
    return _xi_via(d, None)


def xi_via(d, edge):
    """xi computed by splitting at a chosen edge (for independence tests)."""
    return _xi_via(d, edge)


def _xi_via(d, edge):
    if not is_binary(d):
        raise DiagramError("xi needs a binary diagram")
    es = edges(d)
    if not es:
        return Orientation(1, ())
    e = es[0] if edge is None else edge
    c = cut(d, e)
    x1, x2 = xi(c.host), xi(c.outer)
    mapped = ([c.graft.host_edges[k] for k in x1.keys]
              + [c.graft.guest_edges[k] for k in x2.keys] + [e])
    i, l = c.pos, leaf_count(c.outer)
    n = leaf_count(d)
    sign = x1.sign * x2.sign * (-1) ** (i * (l + 1)) \
        * (-1) ** (c.graft.rot * (n - 1))
    return orient(mapped, sign)


@lru_cache(maxsize=None)
def omega_std(d):
    """Standard orientation: (-1)^((n-2)(n-3)/2) * xi."""
    n = leaf_count(d)
    x = xi(d)
    return Orientation(x.sign * (-1) ** ((n - 2) * (n - 3) // 2), x.keys)


def _down_step(cur, step):
    for nxt, st in cocovers(cur):
        if st == step:
            return nxt
    raise DiagramError("step does not apply at %s" % fmt(cur))


def omega_sd(s, d, omega_d, path=None):
    """Induced orientation on the edges of `s`, for S_max <= D_min.

    `omega_d` is the metric orientation of the fully metric generator on
    `d`; its keys must be exactly the edges of `d`, which must also be the
    positive edges of dmin(d).
    """
    d_min, s_max = dmin(d), dmax(s)
    own = frozenset(edges(d))
    if set(omega_d.keys) != own:
        raise DiagramError("orientation keys do not match the edges of d")
    if positive_edges(d_min) != own:
        raise DiagramError("the edges of d are not the positive edges of dmin")
    tracked = {k: k for k in omega_d.keys}
    cur = d_min
    if path is None:
        path = move_path_down(d_min, s_max)
    for step in path:
        nxt = _down_step(cur, step)
        lost = positive_edges(cur) - positive_edges(nxt)
        gained = positive_edges(nxt) - positive_edges(cur)
        if len(lost) != 1 or len(gained) != 1 or step.site not in lost:
            raise DiagramError("positive-edge tracking failed at %s" % fmt(cur))
        (old,), (new,) = lost, gained
        for k, v in tracked.items():
            if v == old:
                tracked[k] = new
        cur = nxt
    if cur != s_max:
        raise DiagramError("move path did not reach S_max")
    if set(tracked.values()) != set(positive_edges(s_max)):
        raise DiagramError("tracked edges are not the positive edges of S_max")
    lifted = orient([tracked[k] for k in omega_d.keys], omega_d.sign)
    return pair_contract(lifted, xi(s_max))
