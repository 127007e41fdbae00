import pytest

from planarops.diagrams import (
    INNER, MODULE, TREE, DiagramError, ShapeClass, contract, corolla_of,
    degree, edges, enumerate_class, fmt, inner_corolla, leaf_count,
    module_corolla, parse, tree_corolla,
)
from planarops.tamari import (
    classify_edges, cocovers, covers, dmax, dmin, leq, move_path_down,
    positive_edges, poset_extremes,
)

SMALL_SHAPES = [
    ShapeClass(TREE, (3,)), ShapeClass(TREE, (4,)), ShapeClass(TREE, (5,)),
    ShapeClass(MODULE, (1, 1)), ShapeClass(MODULE, (2, 1)),
    ShapeClass(MODULE, (0, 3)),
    ShapeClass(INNER, (1, 1)), ShapeClass(INNER, (2, 0)),
    ShapeClass(INNER, (2, 1)),
]


def binaries(shape):
    return enumerate_class(shape, 0)


def test_move_1_on_three_leaves():
    left = parse("((* *) *)")
    right = parse("(* (* *))")
    ups = covers(left)
    assert len(ups) == 1
    assert ups[0][0] == right
    assert ups[0][1].move == 1
    assert not covers(right)
    assert leq(left, right) and not leq(right, left)


def test_hexagon_min_out_degree():
    bmin, bmax = poset_extremes(ShapeClass(INNER, (1, 1)))
    assert bmin == dmin(inner_corolla(1, 1))
    assert bmax == dmax(inner_corolla(1, 1))
    assert len(covers(bmin)) == 2
    assert len(cocovers(bmin)) == 0


def test_cmax_has_no_upward_covers():
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        assert covers(dmax(c)) == ()
        assert cocovers(dmin(c)) == ()


def test_leq_is_a_partial_order():
    for shape in SMALL_SHAPES:
        bs = binaries(shape)
        for b in bs:
            assert leq(b, b)
        for b1 in bs:
            for b2 in bs:
                if leq(b1, b2) and leq(b2, b1):
                    assert b1 == b2


def test_leq_shape_mismatch():
    with pytest.raises(DiagramError):
        leq(dmin(tree_corolla(3)), dmin(tree_corolla(4)))


def test_dmin_dmax_of_corollas():
    assert dmin(tree_corolla(4)) == parse("(((* *) *) *)")
    assert dmax(tree_corolla(4)) == parse("(* (* (* *)))")
    # (I_{k,l})_max: upper leaves on the right arm, lower on the left arm
    d = dmax(inner_corolla(2, 1))
    inn = d.payload
    assert not inn.up and not inn.down
    assert all(v.left and not v.right for v in inn.right_arm)
    assert all(v.left and not v.right for v in inn.left_arm)
    d = dmin(inner_corolla(2, 1))
    inn = d.payload
    assert all(v.right and not v.left for v in inn.left_arm)
    assert all(v.right and not v.left for v in inn.right_arm)


def test_dmin_dmax_fix_binaries():
    for shape in SMALL_SHAPES:
        for b in binaries(shape):
            assert dmin(b) == b
            assert dmax(b) == b


def test_dmin_dmax_against_poset_search():
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        bmin, bmax = poset_extremes(shape)
        assert bmin == dmin(c)
        assert bmax == dmax(c)


def test_min_max_all_negative_all_positive():
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        assert set(classify_edges(dmin(c)).values()) <= {-1}
        assert set(classify_edges(dmax(c)).values()) <= {+1}
        # uniqueness of the all-positive and all-negative diagrams
        for b in binaries(shape):
            signs = set(classify_edges(b).values())
            if signs <= {+1}:
                assert b == dmax(c)
            if signs <= {-1}:
                assert b == dmin(c)


def test_right_comb_all_positive():
    b = dmax(tree_corolla(5))
    assert set(classify_edges(b).values()) == {+1}


def test_positive_count_is_monotone():
    for shape in SMALL_SHAPES:
        for b in binaries(shape):
            np = len(positive_edges(b))
            for b2, _step in covers(b):
                assert len(positive_edges(b2)) >= np


def test_collapse_positive_negative():
    # S = S_max / {positive edges} and D = D_min / {negative edges}
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        for deg in range(degree(c) + 1):
            for d in enumerate_class(shape, deg):
                up = dmax(d)
                for e in positive_edges(up) - set(edges(d)):
                    up = contract(up, e)
                assert up == d
                dn = dmin(d)
                for e in (set(edges(dn)) - positive_edges(dn)) - set(edges(d)):
                    dn = contract(dn, e)
                assert dn == d


def test_dmin_inserts_negative_dmax_positive():
    for shape in SMALL_SHAPES:
        c = corolla_of(shape)
        for deg in range(degree(c) + 1):
            for d in enumerate_class(shape, deg):
                mn, mx = dmin(d), dmax(d)
                own = set(edges(d))
                cls_mn = classify_edges(mn)
                assert all(cls_mn[e] == -1 for e in set(edges(mn)) - own)
                cls_mx = classify_edges(mx)
                assert all(cls_mx[e] == +1 for e in set(edges(mx)) - own)


def test_move_path_down():
    shape = ShapeClass(TREE, (4,))
    bmin, bmax = poset_extremes(shape)
    path = move_path_down(bmax, bmin)
    cur = bmax
    for step in path:
        assert step.direction == "down"
        nxt = [b for b, st in cocovers(cur) if st == step]
        assert len(nxt) == 1
        cur = nxt[0]
    assert cur == bmin
    assert move_path_down(bmax, bmax) == ()
    with pytest.raises(DiagramError):
        move_path_down(bmin, bmax)


def test_move_step_bijection_roundtrip():
    b = dmin(tree_corolla(4))
    for b2, step in covers(b):
        inv = step.inverse()
        for e in edges(b):
            assert inv.apply(step.apply(e)) == e
