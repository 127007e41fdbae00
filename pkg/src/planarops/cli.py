"""Command-line surface.

Shapes are written ``T4``, ``M2,3``, ``I1,2``.  Generators are written

    coef * (diagram ; perm ; [edge, ...] ; metric:[edge, ...])

with the diagram grammar of the library, a space-separated permutation (or
``id``), edges as leaf intervals ``a-b`` listed in wedge order, and the
metric section only meaningful for cubical generators (it defaults to every
edge).  All commands accept ``--format json``; order-related commands can
emit DOT digraphs with ``--dot``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import perms
from .diagrams import (
    INNER, MODULE, TREE, DiagramError, ShapeClass, corolla_of, degree, edges,
    enumerate_class, fmt, fmt_edge, is_corolla, leaf_count, parse, parse_edge,
    shape_class,
)
from .formal import unit
from .operad_c import CGenerator, boundary_c, c_generator, compose_elements
from .operad_q import QGenerator, boundary_q, q_generator
from .operad_q import compose_elements as q_compose_elements
from .orientations import orient
from .tamari import covers, dmax, dmin, leq
from .transfer import p_map, q_map


def parse_shape(text):
    kind = {"T": TREE, "M": MODULE, "I": INNER}.get(text[:1].upper())
    if kind is None:
        raise DiagramError("shapes look like T4, M2,3 or I1,2")
    nums = tuple(int(x) for x in text[1:].split(","))
    if kind == TREE and len(nums) == 1:
        return ShapeClass(TREE, nums)
    if kind != TREE and len(nums) == 2:
        return ShapeClass(kind, nums)
    raise DiagramError("shapes look like T4, M2,3 or I1,2")


def _split_top(text, sep=";"):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({<[":
            depth += 1
        elif ch in ")}>]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parse_keys(text, n):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise DiagramError("expected a bracketed edge list")
    inner = text[1:-1].strip()
    if not inner:
        return []
    return [parse_edge(tok.strip(), n) for tok in inner.split(",")]


def parse_generator(text, which):
    """Parse the generator literal; returns a one-term formal sum."""
    text = text.strip()
    coef = 1
    if "*" in text and not text.lstrip().startswith("("):
        head, _star, rest = text.partition("*")
        coef = int(head.strip())
        text = rest.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise DiagramError("generator literals are parenthesized")
    sections = _split_top(text[1:-1])
    diagram = parse(sections[0])
    n = leaf_count(diagram)
    perm = perms.identity(n)
    if len(sections) > 1 and sections[1] and sections[1] != "id":
        perm = tuple(int(tok) for tok in sections[1].split())
        if sorted(perm) != list(range(1, n + 1)):
            raise DiagramError("labeling must be a permutation of 1..%d" % n)
    orientation = None
    if len(sections) > 2 and sections[2]:
        orientation = orient(_parse_keys(sections[2], n), 1)
    metric = None
    for sec in sections[3:]:
        if sec.startswith("metric:"):
            metric = _parse_keys(sec[len("metric:"):], n)
    if which == "c":
        gen, sign = c_generator(diagram, perm, orientation)
    else:
        if metric is None and orientation is not None:
            metric = list(orientation.keys)
        gen, sign = q_generator(diagram, perm, metric, orientation)
    return unit(gen, coef * sign)


def fmt_generator(gen, coef=None):
    n = leaf_count(gen.diagram)
    perm = " ".join(str(p) for p in gen.perm)
    if isinstance(gen, CGenerator):
        keys = ", ".join(fmt_edge(k, n) for k in gen.keys)
        body = "(%s ; %s ; [%s])" % (fmt(gen.diagram), perm, keys)
    else:
        keys = ", ".join(fmt_edge(k, n) for k in gen.metric)
        body = "(%s ; %s ; [%s] ; metric:[%s])" % (fmt(gen.diagram), perm,
                                                   keys, keys)
    return body if coef is None else "%+d * %s" % (coef, body)


def gen_json(gen, coef):
    n = leaf_count(gen.diagram)
    keys = gen.keys if isinstance(gen, CGenerator) else gen.metric
    out = {"coef": coef, "diagram": fmt(gen.diagram), "perm": list(gen.perm),
           "orientation": [fmt_edge(k, n) for k in keys]}
    if isinstance(gen, QGenerator):
        out["metric"] = out["orientation"]
    return out


def emit_element(x, args, pair=False):
    if args.format == "json":
        if pair:
            data = [{"left": gen_json(a, 1), "right": gen_json(b, 1),
                     "coef": c} for (a, b), c in x]
        else:
            data = [gen_json(g, c) for g, c in x]
        print(json.dumps(data, indent=2, sort_keys=True))
        return
    if not x:
        print("0")
        return
    for key, coef in x:
        if pair:
            a, b = key
            print("%+d * %s (x) %s" % (coef, fmt_generator(a),
                                       fmt_generator(b)))
        else:
            print(fmt_generator(key, coef))


def cmd_enumerate(args):
    shape = parse_shape(args.shape)
    items = enumerate_class(shape, args.degree)
    if args.format == "json":
        print(json.dumps([fmt(d) for d in items], indent=2))
    else:
        for d in items:
            print(fmt(d))
        print("# %d diagrams" % len(items))


def cmd_boundary(args):
    x = parse_generator(args.generator, args.operad)
    emit_element(boundary_c(x) if args.operad == "c" else boundary_q(x), args)


def cmd_compose(args):
    x = parse_generator(args.x, args.operad)
    y = parse_generator(args.y, args.operad)
    fn = compose_elements if args.operad == "c" else q_compose_elements
    emit_element(fn(x, args.index, y), args)


def cmd_minmax(args):
    d = parse(args.diagram)
    lo, hi = dmin(d), dmax(d)
    if args.dot:
        print(poset_dot(shape_class(d)))
        return
    if args.format == "json":
        print(json.dumps({"min": fmt(lo), "max": fmt(hi)}, indent=2))
    else:
        print("min: %s" % fmt(lo))
        print("max: %s" % fmt(hi))


def cmd_leq(args):
    b1, b2 = parse(args.b1), parse(args.b2)
    result = leq(b1, b2)
    if args.dot:
        print(poset_dot(shape_class(b1)))
        return
    if args.format == "json":
        print(json.dumps({"leq": result}))
    else:
        print("true" if result else "false")
    return 0 if result else 1


def cmd_qmap(args):
    emit_element(q_map(parse_generator(args.generator, "c")), args)


def cmd_pmap(args):
    emit_element(p_map(parse_generator(args.generator, "q")), args)


def cmd_diagonal(args):
    from .diagonal import delta_c, delta_c_mod_higher
    x = parse_generator(args.corolla, "c")
    for gen, _c in x:
        if not is_corolla(gen.diagram):
            raise DiagramError("the diagonal command expects a corolla")
    fn = delta_c_mod_higher if args.mod_higher else delta_c
    emit_element(fn(x), args, pair=True)


def cmd_homology(args):
    from .homology import homology_report
    shape = parse_shape(args.shape)
    which = "q" if args.q else "c"
    if args.dot:
        print(complex_dot(shape, which))
        return
    report = homology_report(shape, which)
    if args.format == "json":
        print(json.dumps({"shape": repr(report.shape), "which": which,
                          "f_vector": list(report.f_vector),
                          "betti": list(report.betti),
                          "euler": report.euler}, indent=2))
    else:
        for line in report.lines():
            print(line)


def cmd_tensor_ainf(args):
    from .endo import (load_structures, residual_a_infinity, tensor_structure)
    sa = load_structures(args.fixture_a)
    sb = load_structures(args.fixture_b)
    pair = tensor_structure(sa, sb, max_mu=max(args.arity, 2), max_inner=1)
    residual = residual_a_infinity(pair, args.arity)
    ok = not residual
    if args.format == "json":
        print(json.dumps({"arity": args.arity, "residual_zero": ok,
                          "entries": len(residual.entries)}))
    else:
        print("tensor structure relation at arity %d: %s"
              % (args.arity, "holds" if ok else
                 "FAILS (%d entries)" % len(residual.entries)))
    return 0 if ok else 1


def cmd_verify(args):
    from .verify import run_suite
    return 1 if run_suite(args.max_leaves) else 0


def poset_dot(shape):
    lines = ["digraph covers {"]
    for b in enumerate_class(shape, 0):
        lines.append('  "%s";' % fmt(b))
        for b2, step in covers(b):
            lines.append('  "%s" -> "%s" [label="move %d"];'
                         % (fmt(b), fmt(b2), step.move))
    lines.append("}")
    return "\n".join(lines)


def complex_dot(shape, which):
    from .homology import c_cells, q_cells
    from .operad_c import c_unit
    from .operad_q import q_unit
    lines = ["digraph boundary {"]
    if which == "c":
        layers = c_cells(shape)
        for layer in layers:
            for d in layer:
                x = boundary_c(c_unit(d))
                for gen, coef in x:
                    lines.append('  "%s" -> "%s" [label="%+d"];'
                                 % (fmt(d), fmt(gen.diagram), coef))
    else:
        layers = q_cells(shape)
        for layer in layers:
            for d, metric in layer:
                n = leaf_count(d)
                src = "%s | m=%s" % (fmt(d),
                                     ",".join(fmt_edge(k, n) for k in metric))
                for gen, coef in boundary_q(q_unit(d, metric=metric)):
                    dst = "%s | m=%s" % (
                        fmt(gen.diagram),
                        ",".join(fmt_edge(k, leaf_count(gen.diagram))
                                 for k in gen.metric))
                    lines.append('  "%s" -> "%s" [label="%+d"];'
                                 % (src, dst, coef))
    lines.append("}")
    return "\n".join(lines)


def build_parser():
    ap = argparse.ArgumentParser(prog="planarops", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--dot", action="store_true",
                       help="emit a DOT digraph where applicable")

    p = sub.add_parser("enumerate", help="diagrams of a shape class by degree")
    p.add_argument("shape")
    p.add_argument("degree", type=int)
    common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("boundary", help="boundary of a generator")
    p.add_argument("operad", choices=("c", "q"))
    p.add_argument("generator")
    common(p)
    p.set_defaults(fn=cmd_boundary)

    p = sub.add_parser("compose", help="operadic composition x o_i y")
    p.add_argument("operad", choices=("c", "q"))
    p.add_argument("x")
    p.add_argument("index", type=int)
    p.add_argument("y")
    common(p)
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("minmax", help="minimal and maximal binary expansions")
    p.add_argument("diagram")
    common(p)
    p.set_defaults(fn=cmd_minmax)

    p = sub.add_parser("leq", help="compare binary diagrams in the order")
    p.add_argument("b1")
    p.add_argument("b2")
    common(p)
    p.set_defaults(fn=cmd_leq)

    p = sub.add_parser("qmap", help="subdivision image of a chain generator")
    p.add_argument("generator")
    common(p)
    p.set_defaults(fn=cmd_qmap)

    p = sub.add_parser("pmap", help="projection image of a cubical generator")
    p.add_argument("generator")
    common(p)
    p.set_defaults(fn=cmd_pmap)

    p = sub.add_parser("diagonal", help="tensor diagonal of a corolla")
    p.add_argument("corolla")
    p.add_argument("--mod-higher", action="store_true",
                   help="delete factors using higher inner products")
    common(p)
    p.set_defaults(fn=cmd_diagonal)

    p = sub.add_parser("homology", help="Betti numbers of a shape class")
    p.add_argument("shape")
    p.add_argument("--q", action="store_true",
                   help="use the cubical complex")
    common(p)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("tensor-ainf",
                       help="check a tensor-product structure relation")
    p.add_argument("fixture_a")
    p.add_argument("fixture_b")
    p.add_argument("--arity", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_tensor_ainf)

    p = sub.add_parser("verify", help="run the exhaustive invariant suites")
    p.add_argument("--max-leaves", type=int, default=6)
    common(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except (DiagramError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    return 0 if code is None else code


if __name__ == "__main__":
    sys.exit(main())
