import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdkit import fano
from zdkit.boxkite import KiteKind, build_box_kite
from zdkit.spandrel import SAIL_NAMES, spandrel_of

steps = st.one_of(
    st.tuples(st.just("PL"), st.sampled_from(fano.LINE_NAMES), st.sampled_from(fano.LOAD_ORDER)),
    st.tuples(st.just("DX"), st.sampled_from(fano.LINE_NAMES), st.sampled_from(fano.OPS)),
)


def test_standard_presentations():
    p1, p2 = fano.standard_type_i(), fano.standard_type_ii()
    assert fano.reversed_count(p1) == 0 and fano.kind_of(p1) is KiteKind.TYPE_I
    assert p2.reversed_lines == {"bSe", "cSd"} and fano.kind_of(p2) is KiteKind.TYPE_II


def test_numeric_presentation_of_seed(sedenion_kite):
    p = fano.from_box_kite(sedenion_kite)
    assert p.labels == (3, 6, 5, 4, 7, 2, 1)
    assert p.flags == (True,) * 7 and p.numeric


@pytest.mark.parametrize("line", fano.LINE_NAMES)
def test_klein_group(line):
    p = fano.standard_type_i()
    for op in fano.OPS:
        assert fano.dx(fano.dx(p, line, op), line, op) == p
    hv = fano.dx(fano.dx(p, line, "H"), line, "V")
    vh = fano.dx(fano.dx(p, line, "V"), line, "H")
    assert hv == vh == fano.dx(p, line, "D")


def test_dx_pairs_for_vertical_strut():
    assert fano.dx_pairs("cSd", "H") == (("a", "e"), ("b", "f"))
    assert fano.dx_pairs("cSd", "V") == (("a", "b"), ("e", "f"))
    assert fano.dx_pairs("cSd", "D") == (("a", "f"), ("b", "e"))
    assert fano.dx_pairs("cSd", "I") == ()
    with pytest.raises(ValueError):
        fano.dx_pairs("cSd", "X")
    with pytest.raises(KeyError):
        fano.dx_pairs("abd", "H")


def test_dx_trades_zigzag_and_trefoil():
    q = fano.dx(fano.standard_type_i(), "cSd", "H")
    assert [str(v) for v in q.line_labels("abc")] == ["e", "f", "c"]
    assert [str(v) for v in q.line_labels("efc")] == ["a", "b", "c"]
    assert q.flag("abc") and q.flag("efc") and q.flag("cSd")


def test_pl_flips_six_lines():
    q = fano.pl(fano.standard_type_i(), "abc", "G")
    assert [str(v) for v in q.labels] == ["a", "b", "c", "d+G", "e+G", "f+G", "s+G"]
    assert q.reversed_lines == set(fano.LINE_NAMES) - {"abc"}
    assert fano.shape(q).name == "ExplodedZigzag"
    assert q.history == (("PL", "abc", "G", 0, 6),)


def test_numeric_pl_raises_level(sedenion_kite):
    q = fano.pl(fano.from_box_kite(sedenion_kite), "abc", 8)
    assert q.n == 5
    assert q.flags == fano.numeric_flags(q.labels, 5)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["I", "II"]), st.lists(steps, min_size=1, max_size=12))
def test_parity_is_even_and_no_forbidden_types(start, ops):
    p = fano.standard_type_i() if start == "I" else fano.standard_type_ii()
    q = fano.apply_ops(p, ops)
    assert fano.reversed_count(q) % 2 == 0
    assert not fano.is_forbidden(q)


def _fresh_loads(ops):
    """Each PL gets the next unused generator, as loading assumes."""
    out, fresh = [], iter(fano.LOAD_ORDER)
    for kind, line, arg in ops:
        if kind == "PL":
            arg = next(fresh, None)
            if arg is None:
                continue
        out.append((kind, line, arg))
    return out


@settings(max_examples=150, deadline=None)
@given(st.lists(steps, min_size=1, max_size=8))
def test_symbolic_flags_match_numbers(ops):
    """Instantiating symbolic labels reproduces the orientation bookkeeping."""
    bk = build_box_kite(1, (3, 6, 5), 4)
    letters = {c: bk.l(c.upper()) for c in "abcdef"} | {"s": 1}
    loads = {"g": 8, "G": 16, "Γ": 32}
    q = fano.apply_ops(fano.standard_type_i(), _fresh_loads(ops))
    numeric = fano.instantiate(q, letters, loads, 7)
    assert numeric.flags == fano.numeric_flags(numeric.labels, 7)


def test_type_i_to_type_ii_both_orders(sedenion_kite):
    p = fano.from_box_kite(sedenion_kite)
    one = fano.pl(fano.dx(p, "aSf", "V"), "aSf", 8)
    two = fano.dx(fano.pl(p, "aSf", 8), "aSf", "V")
    assert one.labels == two.labels == (3, 13, 14, 15, 12, 2, 1)
    assert one.flags == two.flags
    assert fano.shape(one).name == "TypeII"
    target = build_box_kite(1, (3, 13, 14), 5)
    assert target.kind is KiteKind.TYPE_II
    assert fano.from_box_kite(target).flags == one.flags


def test_flowmorphic_spandrels():
    sp1 = spandrel_of(build_box_kite(1, (3, 6, 5), 4))
    sp2 = spandrel_of(build_box_kite(1, (3, 13, 14), 5))
    for name in SAIL_NAMES:
        a, b = fano.from_box_kite(sp1.member(name)), fano.from_box_kite(sp2.member(name))
        assert fano.flowmorphic(a, fano.represent(b, "ade"))
        assert fano.flowmorphic(fano.represent(a, "ade"), b)


def test_spandrel_shapes():
    sp1 = spandrel_of(build_box_kite(1, (3, 6, 5), 4))
    sp2 = spandrel_of(build_box_kite(1, (3, 13, 14), 5))
    row = lambda sp, sail: [str(fano.shape(fano.represent(fano.from_box_kite(m), sail))) for m in sp.members]
    assert row(sp1, "abc") == ["ExplodedZigzag", "T-bar(a)", "T-bar(b)", "T-bar(c)"]
    assert row(sp1, "ade") == ["PupTent", "SwallowsTail", "ShrimpFork", "Switchblade"]
    assert row(sp2, "abc") == row(sp1, "ade")
    assert row(sp2, "ade") == row(sp1, "abc")


def test_represent_keeps_circle_oriented():
    for name in SAIL_NAMES:
        q = fano.represent(fano.standard_type_i(), name)
        assert q.flag("abc")
        assert {str(v) for v in q.line_labels("abc")} == set(fano.LINES[name])


def test_shape_table():
    assert len(fano.SHAPES) == 24
    assert fano.shape(fano.FanoPresentation(fano.standard_type_i().labels, (True,) * 4 + (False,) * 3)).name == "TypeIV"
    assert str(fano.Shape(None, frozenset({"abc", "ade"}))).startswith("unrecognized:")


def test_serialisation(sedenion_kite):
    p = fano.from_box_kite(sedenion_kite)
    d = json.loads(p.to_json())
    assert d["labels"]["S"] == 1 and d["lines"]["abc"] == "+"
    dot = p.to_dot()
    assert dot.startswith("digraph fano {") and dot.count("->") == 14
