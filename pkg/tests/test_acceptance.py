"""Acceptance gate: every exit criterion at its stated cap.

Run with ``pytest tests/test_acceptance.py -s`` to see one line per
criterion.  The caps are fixed here and match the specification of each
identity; the two timed criteria assert their runtime budgets.
"""

import time

from planarops import verify


def _run(number, name, fn, cap, budget=None):
    t0 = time.time()
    ok, detail = fn(cap)
    elapsed = time.time() - t0
    status = "PASS" if ok else "FAIL"
    if budget is not None and elapsed > budget:
        status, ok = "FAIL", False
        detail += " (over the %ds budget: %.1fs)" % (budget, elapsed)
    print("%s  criterion %d (%s): %s  [%.1fs]"
          % (status, number, name, detail, elapsed))
    assert ok, "criterion %d (%s): %s" % (number, name, detail)


def test_criterion_1_complex_axioms():
    _run(1, "complex axioms", verify.check_complex_axioms, 7, budget=120)


def test_criterion_2_face_counts():
    _run(2, "face counts", verify.check_face_counts, 7)


def test_criterion_3_contractibility():
    _run(3, "contractibility", verify.check_contractibility, 7)


def test_criterion_4_chain_maps():
    _run(4, "chain maps", verify.check_chain_maps, 7)


def test_criterion_5_projection_inverts_subdivision():
    _run(5, "projection inverts subdivision",
         verify.check_projection_inverts_subdivision, 7)


def test_criterion_6_partial_order():
    _run(6, "partial order", verify.check_order, 8)


def test_criterion_7_orientations():
    _run(7, "orientations", verify.check_orientations, 7)


def test_criterion_8_diagonal():
    _run(8, "diagonal", verify.check_diagonal, 7)


def test_criterion_9_endomorphism_evaluation():
    _run(9, "endomorphism evaluation", verify.check_endomorphisms, 5,
         budget=60)
