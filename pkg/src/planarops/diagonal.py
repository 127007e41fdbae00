"""The cubical diagonal and the induced diagonal on the chain operad.

On a generator with metric edges e_1 < ... < e_l the cubical diagonal sums
over subsets X of the metric set: the left factor contracts the edges of X
and keeps the rest metric, the right factor keeps X metric and freezes the
rest, with the shuffle sign (-1)^rho(X) counting pairs (i in X, j not in X,
i < j) in the orientation order.  It is strictly coassociative.

The diagonal on the chain operad is the composite p (x) p . Delta . q; it is
a chain map and multiplicative, but not coassociative.  On a corolla its
unsigned support is exactly the set of pairs S (x) T of complementary degree
with S_max <= T_min, which the tests check against the composite definition.

Reduction modulo higher inner products deletes every tensor factor whose
central vertex carries any forest, i.e. every factor whose evaluation would
use an inner-product operation of positive arity.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .diagrams import (
    INNER, contract, degree, edges, enumerate_class, fmt, is_corolla,
    leaf_count, shape_class,
)
from .formal import FormalSum, unit
from .operad_c import boundary_c, c_unit, compose_c
from .operad_q import QGenerator, boundary_q
from .tamari import dmax, dmin, leq
from .transfer import p_map, q_map


def delta_q(x):
    """Serre diagonal of a sum of cubical generators."""
    out = FormalSum()
    for gen, coef in x.terms.items():
        m = gen.metric
        for r in range(len(m) + 1):
            for xs in combinations(range(len(m)), r):
                chosen = set(xs)
                rho = sum(1 for i in chosen for j in range(len(m))
                          if j not in chosen and i < j)
                left_d = gen.diagram
                for i in xs:
                    left_d = contract(left_d, m[i])
                left = QGenerator(left_d, gen.perm,
                                  tuple(m[j] for j in range(len(m))
                                        if j not in chosen))
                right = QGenerator(gen.diagram, gen.perm,
                                   tuple(m[i] for i in xs))
                out.add_term((left, right), coef * (-1) ** rho)
    return out


def q_tensor_boundary(x):
    """Differential of the tensor square, Koszul sign on the right factor."""
    out = FormalSum()
    for (a, b), coef in x.terms.items():
        for g, c in boundary_q(unit(a)).terms.items():
            out.add_term((g, b), coef * c)
        s = (-1) ** len(a.metric)
        for g, c in boundary_q(unit(b)).terms.items():
            out.add_term((a, g), coef * c * s)
    return out


def c_tensor_boundary(x):
    out = FormalSum()
    for (a, b), coef in x.terms.items():
        for g, c in boundary_c(unit(a)).terms.items():
            out.add_term((g, b), coef * c)
        s = (-1) ** degree(a.diagram)
        for g, c in boundary_c(unit(b)).terms.items():
            out.add_term((a, g), coef * c * s)
    return out


def p_tensor(x):
    """Apply p to both factors of a sum of tensor generators."""
    out = FormalSum()
    for (a, b), coef in x.terms.items():
        pa, pb = p_map(unit(a)), p_map(unit(b))
        for ga, ca in pa.terms.items():
            for gb, cb in pb.terms.items():
                out.add_term((ga, gb), coef * ca * cb)
    return out


def delta_c(x):
    """The induced (non-coassociative) diagonal on the chain operad."""
    return p_tensor(delta_q(q_map(x)))


def c_tensor_compose(x, i, y):
    """Componentwise composition of tensor elements with the Koszul sign."""
    out = FormalSum()
    for (a, b), ca in x.terms.items():
        for (u, v), cb in y.terms.items():
            sign = (-1) ** (degree(b.diagram) * degree(u.diagram))
            left = compose_c(a, i, u)
            right = compose_c(b, i, v)
            for gl, cl in left.terms.items():
                for gr, cr in right.terms.items():
                    out.add_term((gl, gr), ca * cb * cl * cr * sign)
    return out


def c_tensor_action(sigma, x):
    from .operad_c import sym_action
    out = FormalSum()
    for (a, b), coef in x.terms.items():
        for ga, ca in sym_action(sigma, unit(a)).terms.items():
            for gb, cb in sym_action(sigma, unit(b)).terms.items():
                out.add_term((ga, gb), coef * ca * cb)
    return out


def unsigned_support(x):
    """The set of (left diagram, right diagram) pairs of a tensor element."""
    return {(a.diagram, b.diagram) for (a, b) in x.support()}


@lru_cache(maxsize=None)
def support_formula(corolla):
    """Prop.-style direct support: pairs of complementary degree with
    S_max <= T_min, bypassing the composite definition."""
    if not is_corolla(corolla):
        raise ValueError("support_formula expects a corolla")
    shape = shape_class(corolla)
    k = degree(corolla)
    out = set()
    for i in range(k + 1):
        for s in enumerate_class(shape, i):
            s_max = dmax(s)
            for t in enumerate_class(shape, k - i):
                if leq(s_max, dmin(t)):
                    out.add((s, t))
    return frozenset(out)


def _central_vertex_bare(d):
    if d.kind != INNER:
        return True
    return not d.payload.up and not d.payload.down


def delta_c_mod_higher(x):
    """delta_c with every factor using a higher inner product deleted."""
    out = FormalSum()
    for (a, b), coef in delta_c(x).terms.items():
        if _central_vertex_bare(a.diagram) and _central_vertex_bare(b.diagram):
            out.add_term((a, b), coef)
    return out


# ---------------------------------------------------------------------------
# coassociativity

def _coassoc_defect(x, diag):
    lhs = FormalSum()
    for (a, b), coef in diag(x).terms.items():
        for (a1, a2), c in diag(unit(a)).terms.items():
            lhs.add_term((a1, a2, b), coef * c)
        for (b1, b2), c in diag(unit(b)).terms.items():
            lhs.add_term((a, b1, b2), -coef * c)
    return lhs


def coassoc_defect_q(x):
    """(Delta (x) 1) Delta - (1 (x) Delta) Delta on the cubical side."""
    return _coassoc_defect(x, delta_q)


def coassoc_defect_c(x):
    return _coassoc_defect(x, delta_c)


def noncoassociativity_witness(max_leaves):
    """First corolla (by leaf count, then kind, then shape) where the chain
    diagonal fails to be coassociative; None if none is found in range."""
    from .diagrams import ShapeClass, TREE, MODULE, corolla_of
    shapes = []
    for n in range(2, max_leaves + 1):
        shapes.append(ShapeClass(TREE, (n,)))
    for total in range(1, max_leaves):
        for j in range(total + 1):
            shapes.append(ShapeClass(MODULE, (j, total - j)))
    for total in range(0, max_leaves - 1):
        for j in range(total + 1):
            shapes.append(ShapeClass(INNER, (j, total - j)))
    shapes = [s for s in shapes if leaf_count(corolla_of(s)) <= max_leaves]
    shapes.sort(key=lambda s: (leaf_count(corolla_of(s)), s.kind, s.params))
    for shape in shapes:
        c = corolla_of(shape)
        defect = coassoc_defect_c(c_unit(c))
        if defect:
            return c, defect
    return None
