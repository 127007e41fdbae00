import random
from fractions import Fraction
from pathlib import Path

import pytest

from planarops.diagrams import (
    INNER, MODULE, TREE, ShapeClass, ThinTree, LEAF, corolla_of, degree,
    enumerate_class, inner_corolla, leaf_count, module_corolla, parse,
    tree_corolla, tree_diagram,
)
from planarops.formal import unit
from planarops.operad_c import boundary_c, c_generator, c_unit, compose_c
from planarops.diagonal import delta_c
from planarops.endo import (
    EndOps, GradedModule, MultiMap, StructureError, StructureSet, commutator,
    compose_at, eval_element, eval_generator, load_structures, maps_equal,
    pair_evaluate, residual_a_infinity, residual_bimodule, residual_inner,
    sigma_sharp, structures_from_dict, tensor_module, tensor_structure,
    check_rho20_identity, validate_structures, zero_map,
)

FIXTURES = Path(__file__).resolve().parent.parent / "src/planarops/fixtures"


def fixture(name, validate=True):
    return load_structures(FIXTURES / ("%s.json" % name), validate=validate)


def random_structures(rng, degrees, max_mu=4, rho_degree=0, max_inner=1):
    """Arbitrary (generally invalid) structure constants, degree-consistent."""
    module = GradedModule(tuple("b%d" % i for i in range(len(degrees))),
                          tuple(degrees))
    dim = len(degrees)
    d = MultiMap(module, 1, "module", 1,
                 [((i,), {j: Fraction(rng.randint(-2, 2))})
                  for i in range(dim) for j in range(dim)
                  if degrees[j] == degrees[i] + 1])
    s = StructureSet(module, d, name="random", rho_degree=rho_degree)
    import itertools
    for k in range(2, max_mu + 1):
        entries = []
        for args in itertools.product(range(dim), repeat=k):
            for out in range(dim):
                if sum(degrees[a] for a in args) + 2 - k == degrees[out]:
                    entries.append((args, {out: Fraction(rng.randint(-2, 2))}))
        s.mu[k] = MultiMap(module, k, "module", 2 - k, entries)
    for j in range(max_inner + 1):
        for k in range(max_inner + 1 - j):
            entries = []
            for args in itertools.product(range(dim), repeat=j + k + 2):
                if sum(degrees[a] for a in args) + rho_degree - j - k == 0:
                    entries.append((args, Fraction(rng.randint(-2, 2))))
            s.rho[(j, k)] = MultiMap(module, j + k + 2, "scalar",
                                     rho_degree - j - k, entries)
    s.use_canonical_bimodule(max_mu + 2)
    return s


# --- evaluation basics --------------------------------------------------------

def test_corolla_evaluates_to_structure_map():
    s = fixture("frobenius")
    assert eval_generator(c_generator(tree_corolla(2))[0], s) == s.mu_map(2)
    assert eval_generator(c_generator(module_corolla(1, 0))[0], s) \
        == s.lam_map(1, 0)
    assert eval_generator(c_generator(inner_corolla(0, 0))[0], s) \
        == s.rho_map(0, 0)


def test_one_edge_tree_sign():
    # a subtree of arity j at slot i of an arity-l vertex evaluates to
    # (-1)^{i(j+1)+jl} mu_l o_i mu_j
    rng = random.Random(1)
    s = random_structures(rng, (0, -1), max_mu=4)
    for i, j, l in [(1, 2, 2), (2, 2, 2), (1, 2, 3), (2, 3, 2), (3, 2, 3)]:
        children = [LEAF] * l
        children[i - 1] = ThinTree((LEAF,) * j)
        d = tree_diagram(ThinTree(tuple(children)))
        got = eval_generator(c_generator(d)[0], s)
        expected = compose_at(s.mu_map(l), i, s.mu_map(j)) \
            .scaled((-1) ** (i * (j + 1) + j * l))
        assert got == expected, (i, j, l)


def test_eval_is_multiplicative_on_random_draws():
    rng = random.Random(42)
    pool = [tree_corolla(2), tree_corolla(3), parse("((* *) *)"),
            module_corolla(1, 1), module_corolla(1, 0),
            inner_corolla(1, 0), inner_corolla(0, 0)]
    for draw in range(20):
        s = random_structures(rng, (0, rng.choice((-1, 1))), max_mu=4,
                              max_inner=1)
        ops = EndOps(s)
        for _ in range(6):
            xd = rng.choice(pool)
            yd = rng.choice([p for p in pool if p.kind != INNER])
            i = rng.randint(1, leaf_count(xd))
            x, y = c_generator(xd)[0], c_generator(yd)[0]
            xy = compose_c(x, i, y)
            lhs = eval_element(xy, s) if xy else None
            fx, fy = eval_generator(x, s), eval_generator(y, s)
            if not xy:
                continue
            rhs = compose_at(fx, i, fy)
            assert lhs == rhs


def test_eval_respects_the_action():
    rng = random.Random(9)
    s = random_structures(rng, (0, 1), max_mu=4)
    from planarops.operad_c import sym_action
    from planarops import perms
    x = c_unit(parse("((* *) *)"))
    for _ in range(8):
        sigma = tuple(rng.sample(range(1, 4), 3))
        # the two sign characters cancel: F(sigma . x) = F(x) o sigma_#
        lhs = eval_element(sym_action(sigma, x), s)
        rhs = sigma_sharp(eval_element(x, s), sigma)
        assert lhs == rhs


# --- structure relations ------------------------------------------------------

def test_associative_fixture_residuals_vanish():
    s = fixture("frobenius")
    for k in range(2, 6):
        assert not residual_a_infinity(s, k)


def test_mu3_fixture_residuals_vanish():
    s = fixture("mu3")
    for k in range(2, 6):
        assert not residual_a_infinity(s, k)


def test_two_term_fixture_residuals_vanish():
    s = fixture("two_term")
    for k in range(2, 6):
        assert not residual_a_infinity(s, k)
    assert not residual_inner(s, 0, 0)


def test_random_structures_fail_residuals():
    rng = random.Random(3)
    failures = 0
    for _ in range(10):
        s = random_structures(rng, (0, 1), max_mu=3)
        if residual_a_infinity(s, 3):
            failures += 1
    assert failures >= 8


def test_fixture_validation_rejects_broken_pairing():
    import json
    with open(FIXTURES / "two_term.json") as fh:
        data = json.load(fh)
    data["rho"]["0,0"][1][1] = "1"      # break the sign choice
    s = structures_from_dict(data)
    with pytest.raises(StructureError):
        validate_structures(s)


# --- chain-map property -------------------------------------------------------

def all_generators(max_leaves):
    shapes = []
    for n in range(2, max_leaves + 1):
        shapes.append(ShapeClass(TREE, (n,)))
    for total in range(1, max_leaves):
        for j in range(total + 1):
            if total + 1 <= max_leaves:
                shapes.append(ShapeClass(MODULE, (j, total - j)))
    for total in range(0, max_leaves - 1):
        for j in range(total + 1):
            shapes.append(ShapeClass(INNER, (j, total - j)))
    for shape in shapes:
        c = corolla_of(shape)
        for deg in range(degree(c) + 1):
            for d in enumerate_class(shape, deg):
                yield d


def test_eval_intertwines_differentials():
    for name in ("frobenius", "two_term", "mu3"):
        s = fixture(name)
        for d in all_generators(4):
            x = c_unit(d)
            lhs = eval_element(boundary_c(x), s)
            rhs = commutator(s.d, eval_element(x, s))
            assert maps_equal(lhs, rhs), (name, d)


# --- tensor structures ---------------------------------------------------------

def test_phi2_is_mu2_tensor_nu2():
    sa, sb = fixture("frobenius"), fixture("two_term")
    pair = tensor_structure(sa, sb, max_mu=3, max_inner=1)
    mod = pair.module
    dim_b = sb.module.dim
    expected = MultiMap(mod, 2, "module", 0)
    for a1 in range(2):
        for a2 in range(2):
            for b1 in range(2):
                for b2 in range(2):
                    coef = Fraction(0)
                    for (aa, ao, ac) in sa.mu_map(2).items():
                        pass
                    mu_out = sa.mu_map(2).entries.get((a1, a2), {})
                    nu_out = sb.mu_map(2).entries.get((b1, b2), {})
                    sign = (-1) ** (sb.module.degrees[b1]
                                    * sa.module.degrees[a2])
                    for ao, ac in mu_out.items():
                        for bo, bc in nu_out.items():
                            expected._add((a1 * dim_b + b1, a2 * dim_b + b2),
                                          {ao * dim_b + bo: ac * bc * sign})
    assert pair.mu_map(2) == expected


def test_phi3_support_matches_display():
    sa, sb = fixture("frobenius"), fixture("frobenius")
    pair = tensor_structure(sa, sb, max_mu=3, max_inner=1)
    phi3 = pair.mu_map(3)
    lc = eval_generator(c_generator(parse("((* *) *)"))[0], sa)
    rc = eval_generator(c_generator(parse("(* (* *))"))[0], sb)
    t1 = pair_evaluate(unit((c_generator(parse("((* *) *)"))[0],
                             c_generator(tree_corolla(3))[0])),
                       sa, sb, 3, "module", -1)
    t2 = pair_evaluate(unit((c_generator(tree_corolla(3))[0],
                             c_generator(parse("(* (* *))"))[0])),
                       sa, sb, 3, "module", -1)
    assert phi3.support() == t1.plus(t2).support()


def test_pairing_display_on_i00_component():
    sa, sb = fixture("two_term"), fixture("frobenius")
    pair = tensor_structure(sa, sb, max_mu=2, max_inner=1)
    rho = pair.rho_map(0, 0)
    da, db = sa.module.degrees, sb.module.degrees
    dim_b = sb.module.dim
    expected = MultiMap(pair.module, 2, "scalar", pair.rho_degree)
    for (a1, a2), va in sa.rho_map(0, 0).entries.items():
        for (b1, b2), vb in sb.rho_map(0, 0).entries.items():
            sign = (-1) ** (da[a2] * db[b1])
            expected._add((a1 * dim_b + b1, a2 * dim_b + b2), va * vb * sign)
    assert rho == expected


def test_tensor_structure_satisfies_relations():
    sa, sb = fixture("frobenius"), fixture("two_term")
    pair = tensor_structure(sa, sb, max_mu=4, max_inner=2)
    for k in range(2, 5):
        assert not residual_a_infinity(pair, k)
    for j, k in [(1, 0), (0, 1), (1, 1), (2, 0)]:
        assert not residual_bimodule(pair, j, k)
    for j, k in [(0, 0), (1, 0), (0, 1)]:
        assert not residual_inner(pair, j, k)


def test_rho20_identity_on_fixture_pairings():
    assert not check_rho20_identity(fixture("frobenius"), fixture("frobenius"))
    assert not check_rho20_identity(fixture("two_term"), fixture("frobenius"))


def test_rho20_identity_negative_control():
    rng = random.Random(17)
    hits = 0
    for _ in range(3):
        sa = random_structures(rng, (0, 1), max_mu=3, max_inner=2)
        sb = fixture("frobenius")
        if check_rho20_identity(sa, sb):
            hits += 1
    assert hits >= 2


def test_tensor_psi_intertwines_differentials():
    sa, sb = fixture("two_term"), fixture("frobenius")
    pair_d = tensor_structure(sa, sb, max_mu=2, max_inner=1).d
    for d in all_generators(4):
        x = c_unit(d)
        shape = None
        arity = leaf_count(d)
        out = "scalar" if d.kind == INNER else "module"
        base = -degree(d) if d.kind != INNER \
            else sa.rho_degree + sb.rho_degree - degree(d)
        psi_x = pair_evaluate(delta_c(x), sa, sb, arity, out, base)
        psi_dx = pair_evaluate(delta_c(boundary_c(x)), sa, sb, arity, out,
                               base + 1)
        assert maps_equal(psi_dx, commutator(pair_d, psi_x)), d
