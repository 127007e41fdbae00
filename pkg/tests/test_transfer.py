import itertools
import random

from planarops.diagrams import (
    INNER, MODULE, TREE, ShapeClass, corolla_of, degree, edges,
    enumerate_class, inner_corolla, leaf_count, module_corolla, parse,
    tree_corolla,
)
from planarops.formal import unit
from planarops.operad_c import (
    CGenerator, boundary_c, c_generator, c_unit, compose_elements as comp_c,
)
from planarops.operad_q import (
    boundary_q, compose_elements as comp_q, q_unit,
)
from planarops.orientations import orient, xi
from planarops.tamari import dmax, dmin
from planarops.transfer import p_map, q_map

SMALL_SHAPES = [
    ShapeClass(TREE, (3,)), ShapeClass(TREE, (4,)), ShapeClass(TREE, (5,)),
    ShapeClass(MODULE, (1, 1)), ShapeClass(MODULE, (2, 1)),
    ShapeClass(MODULE, (0, 2)), ShapeClass(MODULE, (3, 0)),
    ShapeClass(INNER, (0, 0)), ShapeClass(INNER, (1, 0)),
    ShapeClass(INNER, (1, 1)), ShapeClass(INNER, (2, 0)),
    ShapeClass(INNER, (2, 1)),
]


def class_c_units(shape):
    c = corolla_of(shape)
    for deg in range(degree(c) + 1):
        for d in enumerate_class(shape, deg):
            yield c_unit(d)


def class_q_units(shape):
    c = corolla_of(shape)
    for deg in range(degree(c) + 1):
        for d in enumerate_class(shape, deg):
            es = edges(d)
            for r in range(len(es) + 1):
                for metric in itertools.combinations(es, r):
                    yield q_unit(d, metric=metric)


def test_q_on_small_corollas():
    x = q_map(c_unit(tree_corolla(3)))
    assert len(x) == 2
    assert all(not gen.nonmetric() for gen, _ in x)
    assert len(q_map(c_unit(tree_corolla(4)))) == 5
    assert len(q_map(c_unit(inner_corolla(2, 0)))) == 5
    assert len(q_map(c_unit(inner_corolla(1, 1)))) == 6


def test_q_preserves_degree():
    for c in [tree_corolla(4), module_corolla(2, 1), inner_corolla(1, 1)]:
        for gen, _coef in q_map(c_unit(c)):
            assert len(gen.metric) == degree(c)


def test_q_is_a_chain_map():
    for shape in SMALL_SHAPES:
        for x in class_c_units(shape):
            assert boundary_q(q_map(x)) == q_map(boundary_c(x)), shape


def test_q_is_multiplicative():
    pairs = [(tree_corolla(3), 2, tree_corolla(2)),
             (module_corolla(1, 1), 2, module_corolla(1, 0)),
             (inner_corolla(1, 0), 1, module_corolla(1, 1)),
             (inner_corolla(0, 1), 2, module_corolla(0, 1)),
             (parse("((* *) *)"), 1, tree_corolla(3))]
    for xd, i, yd in pairs:
        x, y = c_unit(xd), c_unit(yd)
        assert q_map(comp_c(x, i, y)) == comp_q(q_map(x), i, q_map(y))


def test_p_on_corollas():
    for c in [tree_corolla(3), tree_corolla(4), module_corolla(2, 1),
              inner_corolla(1, 1), inner_corolla(2, 0)]:
        x = p_map(q_unit(c, metric=()))
        assert x == c_unit(dmin(c), orientation=xi(dmin(c)))


def test_p_on_fully_metric_binaries():
    from planarops.orientations import omega_std
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        for b in enumerate_class(shape, 0):
            x = p_map(q_unit(b, orientation=omega_std(b)))
            if b == dmax(c):
                assert x == c_unit(c)
            else:
                assert not x


def test_pq_is_identity_on_corollas():
    for shape in SMALL_SHAPES:
        x = c_unit(corolla_of(shape))
        assert p_map(q_map(x)) == x


def test_pq_is_identity_on_generators():
    rng = random.Random(23)
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        n = leaf_count(c)
        for deg in range(degree(c) + 1):
            for d in enumerate_class(shape, deg):
                x = c_unit(d)
                assert p_map(q_map(x)) == x
        sigma = tuple(rng.sample(range(1, n + 1), n))
        gen, sign = c_generator(c)
        x = unit(CGenerator(c, sigma, gen.keys))
        assert p_map(q_map(x)) == x


def test_p_is_a_chain_map():
    for shape in SMALL_SHAPES:
        for x in class_q_units(shape):
            assert boundary_c(p_map(x)) == p_map(boundary_q(x)), shape


def test_p_is_multiplicative():
    pairs = [(parse("((* *) *)"), 1, tree_corolla(3)),
             (module_corolla(1, 1), 2, module_corolla(0, 1)),
             (inner_corolla(1, 1), 1, module_corolla(1, 1))]
    for xd, i, yd in pairs:
        for mx in (list(itertools.combinations(edges(xd), 1)) or [()]):
            x = q_unit(xd, metric=tuple(mx) if mx != () else ())
            y = q_unit(yd)
            assert p_map(comp_q(x, i, y)) == comp_c(p_map(x), i, p_map(y))


def test_qp_augmentation_on_vertices():
    # qp fixes the homology class of every 0-cell: its image is a single
    # fully non-metric generator with coefficient +1
    for shape in SMALL_SHAPES:
        for b in enumerate_class(shape, 0):
            x = q_unit(b, metric=())
            img = q_map(p_map(x))
            assert sum(c for _g, c in img) == 1
