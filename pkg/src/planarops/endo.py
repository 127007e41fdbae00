"""Evaluation into the endomorphism operad of a finite graded module.

A structure set holds a degree-1 differential d, multiplications mu_k of
degree 2-k, bimodule maps lambda_{j,k} of degree 1-j-k on the module itself
(the canonical bimodule), and scalar-valued pairings rho_{j,k} of degree
rho_degree-(j-k.. the base degree shifted down by j+k).  Corollas evaluate
to these maps; one-edge diagrams pick up the sign of the corresponding
structure relation, and in general the evaluation is multiplicative for the
Koszul composition

    (f o_i g)(a_1, ...) = (-1)^{|g| (|a_1|+...+|a_{i-1}|)} f(..., g(...), ...)

with relabelings acting by permuting graded tensor factors.  Everything is
exact rational arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .diagrams import MODULE, TREE, shape_class
from .operad_c import decompose_corollas, eval_expr
from . import perms


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class GradedModule:
    names: tuple
    degrees: tuple

    def __post_init__(self):
        if not self.names:
            raise StructureError("zero module is not allowed")

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)


class MultiMap:
    """A homogeneous multilinear map with sparse exact-rational entries."""

    __slots__ = ("module", "arity", "out", "degree", "entries")

    def __init__(self, module, arity, out, degree, entries=()):
        self.module = module
        self.arity = arity
        self.out = out                      # "module" | "scalar"
        self.degree = degree
        self.entries = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for args, val in items:
            self._add(args, val)

    def _add(self, args, val):
        degs = self.module.degrees
        if self.out == "scalar":
            if val == 0:
                return
            if sum(degs[a] for a in args) + self.degree != 0:
                raise StructureError("inhomogeneous scalar entry %s" % (args,))
            new = self.entries.get(args, Fraction(0)) + val
            if new:
                self.entries[args] = new
            else:
                self.entries.pop(args, None)
        else:
            for out_i, c in (val.items() if isinstance(val, dict) else val):
                if c == 0:
                    continue
                if sum(degs[a] for a in args) + self.degree != degs[out_i]:
                    raise StructureError("inhomogeneous entry %s -> %s"
                                         % (args, out_i))
                row = self.entries.setdefault(args, {})
                new = row.get(out_i, Fraction(0)) + c
                if new:
                    row[out_i] = new
                else:
                    del row[out_i]
                    if not row:
                        del self.entries[args]

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        return (isinstance(other, MultiMap) and self.arity == other.arity
                and self.out == other.out and self.degree == other.degree
                and self.entries == other.entries)

    def __repr__(self):
        return "MultiMap(arity=%d, out=%s, deg=%d, %d entries)" % (
            self.arity, self.out, self.degree, len(self.entries))

    def items(self):
        if self.out == "scalar":
            return [(args, None, v) for args, v in self.entries.items()]
        return [(args, o, c) for args, row in self.entries.items()
                for o, c in row.items()]

    def support(self):
        return {(args, o) for args, o, _c in self.items()}

    def scaled(self, n):
        if self.out == "scalar":
            return MultiMap(self.module, self.arity, self.out, self.degree,
                            {a: v * n for a, v in self.entries.items()})
        return MultiMap(self.module, self.arity, self.out, self.degree,
                        {a: {o: c * n for o, c in row.items()}
                         for a, row in self.entries.items()})

    def plus(self, other):
        if (self.arity, self.out, self.degree) != (other.arity, other.out,
                                                   other.degree):
            raise StructureError("cannot add maps of different type")
        out = MultiMap(self.module, self.arity, self.out, self.degree,
                       dict(self.entries) if self.out == "scalar" else
                       {a: dict(r) for a, r in self.entries.items()})
        for args, o, c in other.items():
            out._add(args, {o: c} if o is not None else c)
        return out

    def minus(self, other):
        return self.plus(other.scaled(-1))


def zero_map(module, arity, out, degree):
    return MultiMap(module, arity, out, degree)


def compose_at(f, i, g):
    """(f o_i g) with the Koszul sign on the passed-over inputs."""
    if g.out != "module":
        raise StructureError("inner factor must land in the module")
    if not 1 <= i <= f.arity:
        raise StructureError("slot out of range")
    degs = f.module.degrees
    out = MultiMap(f.module, f.arity + g.arity - 1, f.out,
                   f.degree + g.degree)
    for f_args, f_out, f_c in f.items():
        for g_args, g_out, g_c in g.items():
            if f_args[i - 1] != g_out:
                continue
            sign = (-1) ** (g.degree * sum(degs[a] for a in f_args[:i - 1]))
            args = f_args[:i - 1] + g_args + f_args[i:]
            val = f_c * g_c * sign
            out._add(args, val if f.out == "scalar" else {f_out: val})
    return out


def _koszul_rearrange_sign(degrees_in_new_order, old_of_new):
    """Sign for permuting graded factors so that new slot r holds the old
    factor old_of_new[r]."""
    sign = 1
    for r in range(len(old_of_new)):
        for s in range(r + 1, len(old_of_new)):
            if old_of_new[r] > old_of_new[s]:
                if (degrees_in_new_order[r] % 2) and \
                        (degrees_in_new_order[s] % 2):
                    sign = -sign
    return sign


def sigma_sharp(f, sigma):
    """f composed with the graded permutation of tensor factors.

    (f o sigma_#)(x_1,...,x_k) = Koszul * f(x_{sigma^{-1}(1)}, ...).
    """
    inv = perms.invert(sigma)
    degs = f.module.degrees
    out = MultiMap(f.module, f.arity, f.out, f.degree)
    for f_args, f_out, f_c in f.items():
        # f receives (x_{inv(1)}, ..., x_{inv(k)}) = f_args, so x_j is
        # f_args at the position where inv equals j
        x = [None] * f.arity
        for r in range(f.arity):
            x[inv[r] - 1] = f_args[r]
        x = tuple(x)
        sign = _koszul_rearrange_sign([degs[f_args[r]] for r in range(f.arity)],
                                      [inv[r] for r in range(f.arity)])
        out._add(x, {f_out: f_c * sign} if f.out == "module" else f_c * sign)
    return out


def rotate_last_to_front(f):
    """f composed with one back-to-front rotation of tensor factors."""
    degs = f.module.degrees
    out = MultiMap(f.module, f.arity, f.out, f.degree)
    for f_args, f_out, f_c in f.items():
        # f saw (x_k, x_1, ..., x_{k-1}); the outer map's arguments are x
        x = f_args[1:] + f_args[:1]
        sign = (-1) ** (degs[f_args[0]] * sum(degs[a] for a in f_args[1:]))
        out._add(x, {f_out: f_c * sign} if f.out == "module" else f_c * sign)
    return out


def precompose_differential(f, d):
    """f o d_tensor, the sum over inputs with Koszul signs."""
    degs = f.module.degrees
    out = MultiMap(f.module, f.arity, f.out, f.degree + 1)
    d_entries = {args[0]: row for args, row in d.entries.items()}
    for args in _all_tuples(f.module, f.arity):
        for i in range(f.arity):
            row = d_entries.get(args[i])
            if not row:
                continue
            sign = (-1) ** sum(degs[a] for a in args[:i])
            for mid, c in row.items():
                inner = args[:i] + (mid,) + args[i + 1:]
                if f.out == "scalar":
                    v = f.entries.get(inner)
                    if v:
                        out._add(args, v * c * sign)
                else:
                    for o, fc in f.entries.get(inner, {}).items():
                        out._add(args, {o: fc * c * sign})
    return out


def commutator(d, f):
    """[D, f] = d o f - (-1)^{|f|} f o d_tensor."""
    lhs = MultiMap(f.module, f.arity, f.out, f.degree + 1)
    if f.out == "module":
        for args, row in f.entries.items():
            for o, c in row.items():
                for (src,), drow in d.entries.items():
                    if src == o:
                        for o2, dc in drow.items():
                            lhs._add(args, {o2: c * dc})
    return lhs.plus(precompose_differential(f, d).scaled(-((-1) ** f.degree)))


def _all_tuples(module, arity):
    return product(range(module.dim), repeat=arity)


# ---------------------------------------------------------------------------
# structure sets

@dataclass
class StructureSet:
    module: GradedModule
    d: MultiMap
    mu: dict = field(default_factory=dict)       # k >= 2 -> MultiMap
    lam: dict = field(default_factory=dict)      # (j, k) -> MultiMap
    rho: dict = field(default_factory=dict)      # (j, k) -> MultiMap (scalar)
    rho_degree: int = 0
    name: str = ""

    def mu_map(self, k):
        got = self.mu.get(k)
        return got if got is not None else zero_map(self.module, k,
                                                    "module", 2 - k)

    def lam_map(self, j, k):
        got = self.lam.get((j, k))
        if got is not None:
            return got
        return zero_map(self.module, j + k + 1, "module", 1 - j - k)

    def rho_map(self, j, k):
        got = self.rho.get((j, k))
        if got is not None:
            return got
        return zero_map(self.module, j + k + 2, "scalar",
                        self.rho_degree - j - k)

    def corolla_map(self, diagram):
        shape = shape_class(diagram)
        if shape.kind == TREE:
            return self.mu_map(shape.params[0])
        if shape.kind == MODULE:
            return self.lam_map(*shape.params)
        return self.rho_map(*shape.params)

    def use_canonical_bimodule(self, max_arity):
        """lambda_{j,k} := mu_{j+k+1} for all shapes up to the arity cap."""
        for j in range(max_arity):
            for k in range(max_arity - j):
                if 1 <= j + k + 1 <= max_arity:
                    self.lam[(j, k)] = self.mu_map(j + k + 1)
        return self


class EndOps:
    """Evaluation target: the endomorphism operad of a structure set."""

    def __init__(self, structures):
        self.structures = structures

    def corolla(self, diagram):
        return self.structures.corolla_map(diagram)

    @staticmethod
    def compose(f, i, g):
        return compose_at(f, i, g)

    @staticmethod
    def act(sigma, f):
        return sigma_sharp(f, sigma)

    @staticmethod
    def scale(n, f):
        return f.scaled(n)


def eval_generator(gen, structures):
    return eval_expr(decompose_corollas(gen), EndOps(structures))


def eval_element(x, structures):
    """Linear extension of the operad map over a formal sum."""
    out = None
    for gen, coef in x.terms.items():
        val = eval_generator(gen, structures).scaled(coef)
        out = val if out is None else out.plus(val)
    return out


def maps_equal(a, b):
    """Equality of possibly-None, possibly-empty multilinear maps."""
    if a is None or not a:
        return b is None or not b
    return a == b


# ---------------------------------------------------------------------------
# structure relations (direct transcriptions, independent of eval_generator)

def residual_a_infinity(structures, k):
    """Defect of the multiplication relation at arity k."""
    s = structures
    total = commutator(s.d, s.mu_map(k))
    for j in range(2, k):
        ell = k + 1 - j
        if ell < 2:
            continue
        for i in range(1, ell + 1):
            term = compose_at(s.mu_map(ell), i, s.mu_map(j))
            total = total.minus(term.scaled((-1) ** (i * (j + 1) + j * ell)))
    return total


def residual_bimodule(structures, kp, kpp):
    """Defect of the bimodule relation at (kp, kpp); module slot kp+1."""
    s = structures
    k = kp + kpp + 1
    slot = kp + 1
    total = commutator(s.d, s.lam_map(kp, kpp))
    for j in range(2, k):
        ell = k + 1 - j
        for i in range(1, k - j + 2):
            block = range(i, i + j)
            if slot in block:
                q = s.lam_map(slot - i, i + j - 1 - slot)
                outer = s.lam_map(i - 1, ell - i)
            elif i + j - 1 < slot:
                q = s.mu_map(j)
                outer = s.lam_map(kp - j + 1, kpp)
            else:
                q = s.mu_map(j)
                outer = s.lam_map(kp, kpp - j + 1)
            term = compose_at(outer, i, q)
            total = total.minus(term.scaled((-1) ** (i * (j + 1) + j * ell)))
    return total


def residual_inner(structures, kp, kpp):
    """Defect of the homotopy-inner-product relation at (kp, kpp)."""
    s = structures
    k = kp + kpp + 2
    slot2 = kp + 2
    total = commutator(s.d, s.rho_map(kp, kpp))
    # compositions at the first module slot, after rotating j' inputs
    for jp in range(0, kpp + 1):
        for jpp in range(0, kp + 1):
            if jp + jpp < 1:
                continue
            j = jp + jpp + 1
            ell = k - jp - jpp
            outer = s.rho_map(kp - jpp, kpp - jp)
            term = compose_at(outer, 1, s.lam_map(jp, jpp))
            for _ in range(jp):
                term = rotate_last_to_front(term)
            sign = (-1) ** ((j + 1) + j * ell + jp * (jpp + ell))
            total = total.minus(term.scaled(sign))
    # compositions away from the first slot
    for j in range(2, k):
        ell = k - j + 1
        for i in range(2, k - j + 2):
            block = range(i, i + j)
            if slot2 in block:
                q = s.lam_map(slot2 - i, i + j - 1 - slot2)
                outer = s.rho_map(i - 2, k - (i + j - 1))
            elif i + j - 1 < slot2:
                q = s.mu_map(j)
                outer = s.rho_map(kp - j + 1, kpp)
            else:
                q = s.mu_map(j)
                outer = s.rho_map(kp, kpp - j + 1)
            term = compose_at(outer, i, q)
            total = total.minus(term.scaled((-1) ** (i * (j + 1) + j * ell)))
    return total


def validate_structures(structures, max_mu=4, max_inner=2):
    """Run the relation checkers; raises when any defect is nonzero."""
    s = structures
    square = compose_at(s.d, 1, s.d)
    if square:
        raise StructureError("d^2 != 0 in %s" % s.name)
    for k in range(2, max_mu + 1):
        if residual_a_infinity(s, k):
            raise StructureError("multiplication relation fails at %d in %s"
                                 % (k, s.name))
    for j in range(0, max_inner + 1):
        for k in range(0, max_inner + 1 - j):
            if j + k >= 1 and residual_bimodule(s, j, k):
                raise StructureError("bimodule relation fails at (%d,%d) in %s"
                                     % (j, k, s.name))
            if residual_inner(s, j, k):
                raise StructureError("pairing relation fails at (%d,%d) in %s"
                                     % (j, k, s.name))
    return structures


# ---------------------------------------------------------------------------
# tensor products

def tensor_module(ma, mb):
    names = tuple("%s|%s" % (na, nb) for na in ma.names for nb in mb.names)
    degrees = tuple(da + db for da in ma.degrees for db in mb.degrees)
    return GradedModule(names, degrees)


def _split(idx, dim_b):
    return idx // dim_b, idx % dim_b


def _pair_sign(degs_a, degs_b, a_args, b_args):
    # sigma_n: (a_1|b_1, ..., a_n|b_n) -> (a_1..a_n | b_1..b_n)
    sign = 1
    for i in range(len(a_args)):
        for j in range(i + 1, len(a_args)):
            if (degs_b[b_args[i]] % 2) and (degs_a[a_args[j]] % 2):
                sign = -sign
    return sign


def pair_evaluate(tensor_elem, sa, sb, arity, out, degree):
    """Evaluate a sum of tensor-square generators as a map on A (x) B."""
    ma, mb = sa.module, sb.module
    mod = tensor_module(ma, mb)
    dim_b = mb.dim
    result = MultiMap(mod, arity, out, degree)
    for (gl, gr), coef in tensor_elem.terms.items():
        fa = eval_generator(gl, sa)
        fb = eval_generator(gr, sb)
        if not fa or not fb:
            continue
        for a_args, a_out, a_c in fa.items():
            deg_a_total = sum(ma.degrees[a] for a in a_args)
            koszul = (-1) ** (fb.degree * deg_a_total)
            for b_args, b_out, b_c in fb.items():
                args = tuple(a * dim_b + b for a, b in zip(a_args, b_args))
                sign = koszul * _pair_sign(ma.degrees, mb.degrees,
                                           a_args, b_args)
                val = coef * a_c * b_c * sign
                if out == "scalar":
                    result._add(args, val)
                else:
                    result._add(args, {a_out * dim_b + b_out: val})
    return result


def tensor_structure(sa, sb, max_mu=3, max_inner=2):
    """The structure induced on A (x) B through the chain diagonal."""
    from .diagrams import inner_corolla, module_corolla, tree_corolla
    from .diagonal import delta_c
    from .operad_c import c_unit

    mod = tensor_module(sa.module, sb.module)
    dim_b = sb.module.dim
    d_entries = {}
    for (src,), row in sa.d.entries.items():
        for o, c in row.items():
            for b in range(dim_b):
                d_entries.setdefault((src * dim_b + b,), {})[o * dim_b + b] = c
    for (src,), row in sb.d.entries.items():
        for o, c in row.items():
            for a in range(sa.module.dim):
                sgn = (-1) ** sa.module.degrees[a]
                row2 = d_entries.setdefault((a * dim_b + src,), {})
                row2[a * dim_b + o] = row2.get(a * dim_b + o,
                                               Fraction(0)) + c * sgn
    d = MultiMap(mod, 1, "module", 1, d_entries)

    out = StructureSet(mod, d, name="%s(x)%s" % (sa.name, sb.name),
                       rho_degree=sa.rho_degree + sb.rho_degree)
    for n in range(2, max_mu + 1):
        diag = delta_c(c_unit(tree_corolla(n)))
        out.mu[n] = pair_evaluate(diag, sa, sb, n, "module", 2 - n)
    for j in range(max_mu):
        for k in range(max_mu - j):
            if j + k >= 1:
                diag = delta_c(c_unit(module_corolla(j, k)))
                out.lam[(j, k)] = pair_evaluate(diag, sa, sb, j + k + 1,
                                                "module", 1 - j - k)
    for j in range(max_inner + 1):
        for k in range(max_inner + 1 - j):
            diag = delta_c(c_unit(inner_corolla(j, k)))
            out.rho[(j, k)] = pair_evaluate(diag, sa, sb, j + k + 2, "scalar",
                                            out.rho_degree - j - k)
    return out


def check_rho20_identity(sa, sb):
    """The chain-homotopy identity for the degree-2 pairing of a tensor
    product: the full inner-product relation at (2, 0)."""
    pair = tensor_structure(sa, sb, max_mu=3, max_inner=2)
    return residual_inner(pair, 2, 0)


# ---------------------------------------------------------------------------
# fixtures

def _parse_fraction(text):
    return Fraction(text)


def structures_from_dict(data):
    basis = data["basis"]
    module = GradedModule(tuple(b["name"] for b in basis),
                          tuple(int(b["degree"]) for b in basis))
    idx = {b["name"]: i for i, b in enumerate(basis)}
    d = MultiMap(module, 1, "module", 1,
                 [((idx[src],), {idx[dst]: _parse_fraction(c)})
                  for src, dst, c in data.get("d", [])])
    s = StructureSet(module, d, name=data.get("name", ""),
                     rho_degree=int(data.get("rho_degree", 0)))
    for k_text, entries in data.get("mu", {}).items():
        k = int(k_text)
        s.mu[k] = MultiMap(module, k, "module", 2 - k,
                           [(tuple(idx[a] for a in args),
                             {idx[out]: _parse_fraction(c)})
                            for args, out, c in entries])
    for jk_text, entries in data.get("rho", {}).items():
        j, k = (int(t) for t in jk_text.split(","))
        s.rho[(j, k)] = MultiMap(module, j + k + 2, "scalar",
                                 s.rho_degree - j - k,
                                 [(tuple(idx[a] for a in args),
                                   _parse_fraction(c))
                                  for args, c in entries])
    if data.get("bimodule", "canonical") == "canonical":
        s.use_canonical_bimodule(max_arity=int(data.get("max_arity", 5)))
    return s


def load_structures(path, validate=True):
    with open(path) as fh:
        data = json.load(fh)
    s = structures_from_dict(data)
    if validate:
        validate_structures(s)
    return s
