import random

import pytest

from trisect import hopf, moves
from trisect.bracket import BracketConfig, trisection_bracket
from trisect.diagram import cp2, standard_s4, validate
from trisect.errors import MoveNotApplicable, NoStandardSummand
from trisect.groups import cyclic


def test_shift_basepoint_identity_cases():
    d = standard_s4()
    assert moves.shift_basepoint(d, "F3", 0) == d
    assert moves.shift_basepoint(d, "F3", 2) == d  # full cycle
    shifted = moves.shift_basepoint(d, "F3", 1)
    assert shifted.curve("F3").visits == ("x6", "x5")
    assert validate(shifted, strict=True).ok


def test_reverse_orientation_involution():
    d = cp2()
    r = moves.reverse_orientation(d, "b")
    assert {x.id: x.sign for x in r.crossings}["p_ab"] == -1
    assert moves.reverse_orientation(r, "b") == d


def test_two_point_roundtrip_and_preconditions():
    d = cp2()
    ins = moves.two_point_insert(d, "a", 1, "g", 0, -1)
    assert validate(ins, strict=True).ok
    assert len(ins.crossings) == 5
    new = [x.id for x in ins.crossings if x.id.startswith("tp")]
    back = moves.two_point_delete(ins, *new)
    assert back == d
    with pytest.raises(MoveNotApplicable):
        moves.two_point_insert(d, "a", 0, "a", 0, 1)  # same curve
    with pytest.raises(MoveNotApplicable):
        moves.two_point_delete(d, "p_ab", "p_bc")  # different pairs, same signs
    with pytest.raises(MoveNotApplicable):
        moves.two_point_insert(d, "a", 9, "b", 0, 1)


def test_two_point_delete_preconditions():
    from trisect.diagram import Crossing, TrisectionDiagram

    d = cp2()
    ins = moves.two_point_insert(d, "a", 1, "g", 0, 1)
    p, q = [x.id for x in ins.crossings if x.id.startswith("tp")]
    # equal signs are rejected
    same_sign = TrisectionDiagram(
        ins.genus, ins.kind, ins.curves,
        tuple(Crossing(x.id, abs(x.sign), x.ends) for x in ins.crossings),
        ins.declared_k,
    )
    with pytest.raises(MoveNotApplicable):
        moves.two_point_delete(same_sign, p, q)
    # breaking adjacency on one curve is rejected
    wedged = moves.two_point_insert(ins, "a", 2, "b", 0, 1)
    with pytest.raises(MoveNotApplicable):
        moves.two_point_delete(wedged, p, q)


def test_three_point_flip_involution():
    d = cp2()
    f = moves.three_point_flip(d, "p_ab", "p_bc", "p_ca")
    assert validate(f, strict=True).ok
    assert moves.three_point_flip(f, "p_ab", "p_bc", "p_ca") == d
    with pytest.raises(MoveNotApplicable):
        moves.three_point_flip(standard_s4(), "x1", "x2", "x3")


def test_handle_slide_over_crossing_free_curve():
    from trisect.diagram import Curve, TrisectionDiagram

    d = standard_s4()
    bare = TrisectionDiagram(
        4, "closed",
        d.curves + (Curve("F4", "red", ()), Curve("b4", "blue", ()), Curve("c4", "green", ())),
        d.crossings, None,
    )
    slid = moves.handle_slide(bare, "F1", "F4", 0, 0, 1)
    assert slid == bare


def test_handle_slide_structure():
    d = standard_s4()
    s = moves.handle_slide(d, "F1", "F3", 0, 0, 1)
    assert validate(s, strict=True).ok
    assert len(s.curve("F1").visits) == 3  # gained parallel copies of F3's crossings
    assert len(s.crossings) == 8
    with pytest.raises(MoveNotApplicable):
        moves.handle_slide(d, "F1", "b1", 0, 0, 1)
    with pytest.raises(MoveNotApplicable):
        moves.handle_slide(d, "F1", "F1", 0, 0, 1)


def test_stabilize_destabilize_roundtrip():
    d = cp2()
    s = moves.stabilize(d)
    assert s.genus == 4 and validate(s, strict=True).ok
    assert moves.destabilize(s) == d
    with pytest.raises(NoStandardSummand):
        moves.destabilize(cp2())
    # destabilizing s4 itself would leave an empty genus-0 diagram
    with pytest.raises(MoveNotApplicable):
        moves.destabilize(standard_s4())
    ss = moves.stabilize(moves.stabilize(cp2()))
    assert moves.destabilize(moves.destabilize(ss)) == cp2()


def test_move_spec_json_roundtrip():
    spec = moves.MoveSpec("two_point_insert", {"curve_a": "a", "pos_a": 0, "curve_b": "b", "pos_b": 1, "sign": -1})
    back = moves.MoveSpec.from_json(spec.to_json())
    assert back == spec
    d2 = moves.apply_move(cp2(), back)
    assert len(d2.crossings) == 5


def test_random_move_determinism():
    rng1, rng2 = random.Random(7), random.Random(7)
    d1, d2 = cp2(), cp2()
    for _ in range(6):
        s1, d1 = moves.random_move(d1, rng1)
        s2, d2 = moves.random_move(d2, rng2)
        assert s1 == s2
    assert d1 == d2
    assert validate(d1, strict=True).ok


def test_moves_preserve_bracket_spot_check():
    cfg = BracketConfig(hopf.group_triplet(cyclic(3), cyclic(2)))
    d = standard_s4()
    base = trisection_bracket(d, cfg)
    rng = random.Random(3)
    for _ in range(8):
        _, d = moves.random_move(d, rng, max_visits=5)
        assert validate(d, strict=True).ok
    assert trisection_bracket(d, cfg) == base
