import pytest

from zdkit.boxkite import EDGES, KiteKind, all_box_kites, build_box_kite
from zdkit.errors import InvalidStrutError, NotAnEdgeError
from zdkit.twist import brocade, catamaran, catamarans, mast_keel, royal_hunt, target_kite, twist_edge

TABLE_ONE = [
    ["", "3A", "2F", "5B", "4F", "7F", "6C"],
    ["3F", "", "1A", "6B", "7C", "4E", "5F"],
    ["2A", "1F", "", "7B", "6F", "5C", "4D"],
    ["5E", "6E", "7E", "", "1C", "2C", "3C"],
    ["4A", "7D", "6A", "1D", "", "3E", "2B"],
    ["7A", "4B", "5D", "2D", "3B", "", "1E"],
    ["6D", "5A", "4C", "3D", "2E", "1B", ""],
]


def test_zigzag_twist_lands_on_e_and_c(sedenion_kite):
    t = twist_edge(sedenion_kite, "AB")
    assert t.target_s == 4
    assert [a.as_pair() for a in t.pair] == [(6, 10), (3, 15)]
    target = t.target
    assert [target.letter_of(a.l) for a in t.pair] == ["E", "C"]
    assert target.vertex("E").u == 10 and target.vertex("C").u == 15
    # a negative edge twists to a positive one
    assert t.edge_sign == 1


def test_twists_flip_edge_sign_in_sedenions():
    for bk in all_box_kites(4):
        for p, q in EDGES:
            t = twist_edge(bk, p + q)
            assert t.edge_sign == -bk.edge_sign(p, q)
            assert t.target.kind is KiteKind.TYPE_I
            assert t.target_s == bk.l(p) ^ bk.l(q) ^ bk.s


def test_every_l_index_is_a_twist_target(sedenion_kite):
    targets = {twist_edge(sedenion_kite, p + q).target_s for p, q in EDGES}
    assert targets == set(sedenion_kite.l_indices)


def test_bad_edges():
    bk = build_box_kite(1, (3, 6, 5), 4)
    with pytest.raises(NotAnEdgeError):
        twist_edge(bk, "AF")
    with pytest.raises(NotAnEdgeError):
        twist_edge(bk, "AZ")
    with pytest.raises(InvalidStrutError):
        catamaran(bk, "AB")
    with pytest.raises(InvalidStrutError):
        target_kite(3, 2, 1, 4)


def test_catamaran_reversed_edges(sedenion_kite):
    got = {c.strut: c.reversed_edge for c in catamarans(sedenion_kite)}
    assert got == {"AF": ("E", "D"), "BE": ("F", "D"), "CD": ("F", "E")}


@pytest.mark.parametrize("n", [4, 5])
def test_royal_hunt_everywhere(n):
    for bk in all_box_kites(n):
        if not bk.kind.proper:
            continue
        for cat in catamarans(bk):
            rh = royal_hunt(bk, cat)
            assert rh.forms_trip()
            assert rh.bottoms_match()
            assert rh.second_twists_close()


def test_royal_hunt_strut_constants_are_octonion_trip(sedenion_kite):
    rh = royal_hunt(sedenion_kite, catamaran(sedenion_kite, "AF"))
    s0, s1, s2 = rh.strut_constants
    assert s0 == 1 and {s1, s2} == {2, 3}


def test_mast_keel_completes_targets():
    for bk in all_box_kites(4):
        for strut in ("AF", "BE", "CD"):
            out = mast_keel(bk, strut)
            assert len(out) == 2
            assert all(complete for _, _, complete in out.values())


def test_brocade_matches_table_one():
    b = brocade(4)
    rows = b.to_rows()
    assert rows[0] == [""] + [str(v) for v in range(1, 8)]
    assert [r[0] for r in rows[1:]] == [f"{u:02d}" for u in range(9, 16)]
    assert [r[1:] for r in rows[1:]] == TABLE_ONE
    assert b.filled() == 42
    assert b.cell(10, 3).label() == "1A"


def test_brocade_beyond_sedenions_names_kites():
    b = brocade(5)
    assert b.filled() == 42
    assert b.rows == tuple(range(17, 24))
    cells = [c for c in b.cells.values() if c is not None]
    assert all(c.key[0] == 5 for c in cells)
    assert b.to_dict()["cells"][0].keys() >= {"s", "letter", "kind", "key"}
