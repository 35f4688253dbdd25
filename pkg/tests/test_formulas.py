"""Closed-form invariants: branch selection, bounds shapes and internal consistency."""

import pytest

from circdepth.formulas import (
    FormulaUnavailable,
    FormulaValue,
    base_family_invariants,
    ceil_div,
    cubic_connected_invariants,
    cubic_general_invariants,
    formula_for_spec,
    ladder_invariants,
)
from circdepth.graphs import (
    CirculantSpec,
    CompleteSpec,
    CycleSpec,
    PathSpec,
    StarSpec,
    UnionSpec,
    parse_graph_spec,
)


def test_formula_value_shapes():
    assert FormulaValue.exact(3).is_exact
    assert str(FormulaValue.bounds(2, 3)) == "[2,3]"
    assert str(FormulaValue.at_least(2)) == ">=2"
    assert FormulaValue.at_least(2).contains(9)
    assert not FormulaValue.bounds(2, 3).contains(4)
    with pytest.raises(ValueError):
        FormulaValue.bounds(3, 2)


def test_base_family_examples():
    assert base_family_invariants(PathSpec(4)).depth.value == 2
    c7 = base_family_invariants(CycleSpec(7))
    assert c7.depth.value == 2
    assert (c7.sdepth.lo, c7.sdepth.hi) == (2, 3)
    assert base_family_invariants(StarSpec(9)).depth.value == 1
    assert base_family_invariants(CompleteSpec(5)).pdim.value == 4


def test_cycle_sdepth_exact_branches():
    for q in (3, 5, 6, 8, 9):
        rep = base_family_invariants(CycleSpec(q))
        assert rep.sdepth.is_exact
        assert rep.sdepth.value == ceil_div(q - 1, 3)
    for q in (4, 7, 10):
        assert not base_family_invariants(CycleSpec(q)).sdepth.is_exact


def test_ladder_examples():
    b5 = ladder_invariants("B", 5)
    assert (b5.depth.value, b5.pdim.value) == (3, 8)
    c6 = ladder_invariants("C", 6)
    assert (c6.depth.value, c6.pdim.value) == (5, 9)
    d4 = ladder_invariants("D", 4)
    assert (d4.depth.value, d4.pdim.value) == (4, 6)
    a4 = ladder_invariants("A", 4)
    assert (a4.depth.value, a4.pdim.value) == (2, 6)
    assert (a4.sdepth.lo, a4.sdepth.hi) == (2, 3)
    a5 = ladder_invariants("A", 5)
    assert a5.sdepth.value == 3


def test_ladder_degenerate_values():
    assert ladder_invariants("B", 0).depth.value == 1
    assert ladder_invariants("B", 0).pdim.value == 0
    assert ladder_invariants("A", 1).depth.value == 1
    assert ladder_invariants("B", 1).depth.value == 1
    assert ladder_invariants("C", 1).depth.value == 1
    assert ladder_invariants("D", 1).depth.value == 2


def test_cubic_connected_examples():
    one5 = cubic_connected_invariants(1, 5)
    assert one5.depth.value == 3 and one5.sdepth.value == 3
    one4 = cubic_connected_invariants(1, 4)
    assert one4.depth.value == 2
    assert (one4.sdepth.lo, one4.sdepth.hi) == (2, 3)
    assert cubic_connected_invariants(2, 3).depth.value == 2
    assert cubic_connected_invariants(2, 5).depth.value == 2
    with pytest.raises(FormulaUnavailable):
        cubic_connected_invariants(2, 4)


def test_cubic_general_examples():
    r = cubic_general_invariants(6, 2)
    assert (r.depth.value, r.pdim.value) == (2, 10)
    assert cubic_general_invariants(2, 1).depth.value == 1
    assert cubic_general_invariants(5, 2).depth.value == 2
    assert cubic_general_invariants(6, 3).depth.value == 3


def test_cubic_general_ab_consistency():
    for n in range(2, 31):
        for a in range(1, n):
            r = cubic_general_invariants(n, a)
            assert r.depth.value + r.pdim.value == 2 * n


def test_cubic_general_matches_per_copy_composition():
    from math import gcd

    for n in range(2, 11):
        for a in range(1, n):
            t = gcd(2 * n, a)
            m = 2 * n // t
            r = cubic_general_invariants(n, a)
            if m % 2 == 0:
                per = cubic_connected_invariants(1, n // t)
                assert r.depth.value == t * per.depth.value
            else:
                per = cubic_connected_invariants(2, m)
                assert r.depth.value == (t // 2) * per.depth.value


def test_bounds_lower_end_is_depth():
    reports = [cubic_connected_invariants(1, n) for n in range(2, 12)]
    reports += [cubic_connected_invariants(2, n) for n in range(3, 12, 2)]
    reports += [cubic_general_invariants(n, a) for n in range(2, 9) for a in range(1, n)]
    reports += [ladder_invariants("A", n) for n in range(1, 9)]
    for r in reports:
        assert r.sdepth.lo == r.depth.value


def test_formula_dispatch():
    assert formula_for_spec(parse_graph_spec("cubic:5:2")).depth.value == 2
    # circulants recognized as cycles / paths / cubic forms
    assert formula_for_spec(CirculantSpec(5, (1,))).depth.value == ceil_div(4, 3)
    assert formula_for_spec(CirculantSpec(2, (1,))).depth.value == 1
    assert formula_for_spec(CirculantSpec(6, (1, 3))).depth.value == 1
    with pytest.raises(FormulaUnavailable):
        formula_for_spec(CirculantSpec(7, (1, 3)))


def test_union_composition():
    spec = UnionSpec((PathSpec(4), CycleSpec(5)))
    rep = formula_for_spec(spec)
    assert rep.depth.value == 2 + 2
    assert rep.pdim.value == 9 - 4
    assert rep.sdepth.kind == "lower-bound"
    assert rep.sdepth.lo == 4


def test_out_of_range_rejected():
    with pytest.raises(FormulaUnavailable):
        base_family_invariants(PathSpec(1))
    with pytest.raises(FormulaUnavailable):
        ladder_invariants("A", 0)
    with pytest.raises(FormulaUnavailable):
        cubic_general_invariants(3, 3)
