"""The cubical operad of metrically marked diagrams.

Generators carry a marking of each edge as metric or non-metric and an
orientation over the metric edges only; the degree is the number of metric
edges.  The boundary either contracts a metric edge or turns it non-metric,
with alternating signs read off the orientation order.  Unlike the chain
operad, the relabeling action is unsigned and compositions carry no sign;
the edge created by a composition is non-metric.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import perms
from .diagrams import (
    DiagramError, canonical_colors, contract, cut, edges, fmt, graft,
    leaf_count, root_color,
)
from .formal import FormalSum, unit
from .orientations import orient


@dataclass(frozen=True)
class QGenerator:
    diagram: object
    perm: tuple
    metric: tuple          # metric edge keys, sorted; also the wedge order

    def __repr__(self):
        return "Q(%s; %s; m=%s)" % (fmt(self.diagram), list(self.perm),
                                    [sorted(k) for k in self.metric])

    def nonmetric(self):
        return [e for e in edges(self.diagram) if e not in set(self.metric)]


def q_generator(diagram, perm=None, metric=None, orientation=None):
    """Returns (QGenerator, sign); `metric` defaults to every edge."""
    if perm is None:
        perm = perms.identity(leaf_count(diagram))
    if metric is None:
        metric = edges(diagram)
    if orientation is None:
        orientation = orient(metric, 1)
    if set(orientation.keys) != set(metric):
        raise DiagramError("orientation must cover exactly the metric edges")
    if not set(metric) <= set(edges(diagram)):
        raise DiagramError("metric set must consist of edges")
    return QGenerator(diagram, tuple(perm), orientation.keys), orientation.sign


def q_unit(diagram, perm=None, metric=None, orientation=None, coef=1):
    gen, sign = q_generator(diagram, perm, metric, orientation)
    return unit(gen, coef * sign)


def boundary_q(x):
    """sum_j (-1)^j [contract e_j  -  mark e_j non-metric]."""
    def term(gen, coef):
        out = FormalSum()
        for j, e in enumerate(gen.metric, start=1):
            rest = tuple(k for k in gen.metric if k != e)
            sign = coef * (-1) ** j
            out.add_term(QGenerator(contract(gen.diagram, e), gen.perm, rest),
                         sign)
            out.add_term(QGenerator(gen.diagram, gen.perm, rest), -sign)
        return out
    return x.map_terms(term)


def q_action(sigma, x):
    """The unsigned relabeling action."""
    def term(gen, coef):
        if len(sigma) != len(gen.perm):
            raise DiagramError("permutation size mismatch")
        return unit(QGenerator(gen.diagram, perms.compose(gen.perm, sigma),
                               gen.metric), coef)
    return x.map_terms(term)


def compose_q(x, i, y):
    """Sign-free composition; the new edge is non-metric."""
    k, l = leaf_count(x.diagram), leaf_count(y.diagram)
    if not 1 <= i <= k:
        raise DiagramError("input index out of range")
    p = x.perm[i - 1]
    if (y.diagram.kind == "inner"
            or canonical_colors(x.diagram)[p - 1] != root_color(y.diagram)):
        return FormalSum()
    g = graft(x.diagram, p, y.diagram)
    new_perm = []
    for j in range(1, k + l):
        if j < i:
            new_perm.append(g.host_pos[x.perm[j - 1]])
        elif j < i + l:
            new_perm.append(g.guest_pos[y.perm[j - i]])
        else:
            new_perm.append(g.host_pos[x.perm[j - l]])
    o = orient([g.host_edges[e] for e in x.metric]
               + [g.guest_edges[e] for e in y.metric])
    return unit(QGenerator(g.diagram, tuple(new_perm), o.keys), o.sign)


def compose_elements(x, i, y):
    out = FormalSum()
    for gx, cx in x.terms.items():
        for gy, cy in y.terms.items():
            for gz, cz in compose_q(gx, i, gy).terms.items():
                out.add_term(gz, cx * cy * cz)
    return out


class QOps:
    """Evaluation target whose action drops the sign character."""

    @staticmethod
    def corolla(diagram):
        return q_unit(diagram, metric=())

    @staticmethod
    def compose(x, i, y):
        return compose_elements(x, i, y)

    @staticmethod
    def act(sigma, x):
        return q_action(sigma, x)

    @staticmethod
    def scale(n, x):
        return x.scale(n)


# ---------------------------------------------------------------------------
# splitting at non-metric edges
#
# Same expression format as operad_c; leaves are ("fullmetric", diagram)
# standing for the fully metric generator with identity labeling and
# +sorted orientation.

def eval_nonmetric_expr(expr, ops):
    coef, node = expr
    if node[0] == "fullmetric":
        val = ops.fullmetric(node[1])
    elif node[0] == "compose":
        val = ops.compose(eval_nonmetric_expr(node[1], ops), node[2],
                          eval_nonmetric_expr(node[3], ops))
    else:
        val = ops.act(node[1], eval_nonmetric_expr(node[2], ops))
    return ops.scale(coef, val) if coef != 1 else val


def _decompose_metric_canonical(diagram, metric):
    non = [e for e in sorted(set(edges(diagram)) - set(metric), key=sorted)]
    if not non:
        return (1, ("fullmetric", diagram))
    e = non[0]
    c = cut(diagram, e)
    g = c.graft
    host_metric = tuple(sorted((k for k in edges(c.host)
                                if g.host_edges[k] in set(metric)), key=sorted))
    outer_metric = tuple(sorted((k for k in edges(c.outer)
                                 if g.guest_edges[k] in set(metric)), key=sorted))
    sub1 = _decompose_metric_canonical(c.host, host_metric)
    sub2 = _decompose_metric_canonical(c.outer, outer_metric)
    mapped = ([g.host_edges[k] for k in host_metric]
              + [g.guest_edges[k] for k in outer_metric])
    o = orient(mapped, 1)
    if o is None or o.keys != metric:
        raise DiagramError("metric bookkeeping failed in decomposition")
    node = ("compose", sub1, c.pos, sub2)
    if g.rot:
        n = leaf_count(diagram)
        node = ("act", perms.invert(perms.rotation(n, g.rot)), (1, node))
    return (o.sign, node)


def decompose_nonmetric(gen):
    """Express a generator through fully metric ones at non-metric edges."""
    n = leaf_count(gen.diagram)
    base = _decompose_metric_canonical(gen.diagram, gen.metric)
    if gen.perm == perms.identity(n):
        return base
    return (1, ("act", gen.perm, base))


class QRecomposeOps(QOps):
    @staticmethod
    def fullmetric(diagram):
        return q_unit(diagram)
