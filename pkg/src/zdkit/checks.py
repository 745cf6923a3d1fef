"""Verification suites behind ``zdkit verify``.

Each check returns a :class:`Check`; a failing check carries a short
counterexample in ``detail``.
"""

import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import fano
from .algebra import HyperNum, context, generate_trips, oracle_mul, trip_count
from .boxkite import EDGES, KiteKind, STRUTS, all_box_kites, build_box_kite, enumerate_assessors, enumerate_box_kites
from .emanation import build_et, predicted_et, skybox_check
from .spandrel import SAIL_NAMES, egg_candidates, hide_fill, spandrel_of
from .twist import brocade, catamarans, royal_hunt

OCTONION_TRIPS = {(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)}

BROCADE_N4 = [
    ["", "3A", "2F", "5B", "4F", "7F", "6C"],
    ["3F", "", "1A", "6B", "7C", "4E", "5F"],
    ["2A", "1F", "", "7B", "6F", "5C", "4D"],
    ["5E", "6E", "7E", "", "1C", "2C", "3C"],
    ["4A", "7D", "6A", "1D", "", "3E", "2B"],
    ["7A", "4B", "5D", "2D", "3B", "", "1E"],
    ["6D", "5A", "4C", "3D", "2E", "1B", ""],
]

EXPLOSION_S1 = {
    "L": [(3, 6, 5), (3, 4, 7), (4, 6, 2), (7, 2, 5)],
    "HBK U": [(26, 31, 28), (26, 29, 30), (29, 31, 27), (30, 27, 28)],
    "source U": [(10, 15, 12), (10, 13, 14), (13, 15, 11), (14, 11, 12)],
    "HBK U'": [(19, 22, 21), (19, 20, 23), (20, 22, 18), (23, 18, 21)],
}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def _zero_pair(x, y):
    return oracle_mul(x, y).is_zero() and oracle_mul(y, x).is_zero()


def _diag(n, l, u, sigma):
    return HyperNum.from_terms({u: 1, l: sigma}, n)


def _any_zero_pairing(n, a, b):
    return any(
        _zero_pair(_diag(n, a.l, a.u, s1), _diag(n, b.l, b.u, s2)) for s1 in (1, -1) for s2 in (1, -1)
    )


# -- tables -------------------------------------------------------------------


def check_trip_census():
    got = [len(generate_trips(n)) for n in (2, 3, 4, 5)]
    formula = [trip_count(n) for n in (2, 3, 4, 5)]
    ok = got == [1, 7, 35, 155] == formula
    return Check("trip census N=2..5", ok, f"got {got}")


def check_octonion_trips():
    got = {t.as_tuple() for t in generate_trips(3)}
    return Check("octonion trips", got == OCTONION_TRIPS, f"diff {sorted(got ^ OCTONION_TRIPS)}")


def check_sign_table_vs_oracle(max_n=5):
    for n in range(1, max_n + 1):
        sign = context(n).sign_table
        size = 1 << n
        for i in range(size):
            for j in range(size):
                prod = oracle_mul(HyperNum.basis(i, n), HyperNum.basis(j, n)).terms()
                if prod != {i ^ j: int(sign[i, j])}:
                    return Check(f"sign table vs oracle N<={max_n}", False, f"N={n} e{i}*e{j} -> {prod}")
    return Check(f"sign table vs oracle N<={max_n}", True)


def check_sedenion_structure():
    assessors = enumerate_assessors(4)
    kites = all_box_kites(4)
    problems = []
    if len(assessors) != 42:
        problems.append(f"{len(assessors)} assessors")
    if len(kites) != 7 or any(bk.kind is not KiteKind.TYPE_I for bk in kites):
        problems.append(f"kites {Counter(bk.kind.value for bk in kites)}")
    for bk in kites:
        signs = dict(zip(EDGES, bk.edge_signs))
        if any(signs[e] != -1 for e in EDGES[:6]) or any(signs[e] != 1 for e in EDGES[6:]):
            problems.append(f"edge signs s={bk.s}")
        for p, q in STRUTS:
            if _any_zero_pairing(4, bk.vertex(p), bk.vertex(q)):
                problems.append(f"strut {p}{q} of s={bk.s} zero-divides")
    return Check("sedenion box-kites", not problems, "; ".join(problems))


def check_brocade():
    rows = brocade(4).to_rows()
    body = [r[1:] for r in rows[1:]]
    labels = [r[0] for r in rows[1:]]
    filled = sum(1 for r in body for c in r if c)
    ok = body == BROCADE_N4 and labels == [f"{u:02d}" for u in range(9, 16)] and filled == 42
    return Check("sedenion brocade", ok, "" if ok else f"rows {rows}")


def check_explosion():
    sp = spandrel_of(build_box_kite(1, (3, 6, 5), 4))
    rows = sp.table_rows()
    ok = rows == EXPLOSION_S1 and (sp.s, sp.x_new, sp.g_new) == (9, 25, 16)
    return Check("s=1 explosion table", ok, f"(S,X,G)=({sp.s},{sp.x_new},{sp.g_new})")


def check_pathion_census():
    kites = all_box_kites(5)
    total = Counter(bk.kind for bk in kites)
    problems = []
    if len(kites) != 105 or total[KiteKind.TYPE_II] != 21 or total[KiteKind.HIDDEN] != 28:
        problems.append(f"totals {dict(total)}")
    for s in range(9, 16):
        c = Counter(bk.kind for bk in enumerate_box_kites(s, 5))
        if c != Counter({KiteKind.TYPE_I: 3, KiteKind.HIDDEN: 4}):
            problems.append(f"s={s}: {dict(c)}")
    if Counter(bk.kind for bk in enumerate_box_kites(8, 5)) != Counter({KiteKind.TYPE_I: 7}):
        problems.append("s=8")
    return Check("pathion census", not problems, "; ".join(problems))


def check_royal_hunt():
    octonion_lines = {tuple(sorted(t.as_tuple())) for t in generate_trips(3)}
    for bk in all_box_kites(4):
        for cat in catamarans(bk):
            rh = royal_hunt(bk, cat)
            trip = tuple(sorted(rh.strut_constants))
            if not (rh.forms_trip() and rh.second_twists_close() and trip in octonion_lines):
                return Check("royal hunt", False, f"s={bk.s} strut {cat.strut}: {rh.to_dict()}")
    return Check("royal hunt", True)


# -- cowbird ------------------------------------------------------------------


def check_cowbird(n=4, oracle_edges=True):
    problems = []
    members = 0
    for src in all_box_kites(n):
        if not src.kind.proper:
            continue
        sp = spandrel_of(src)
        for name, hbk in zip(SAIL_NAMES, sp.members):
            members += 1
            if hbk.kind is not KiteKind.HIDDEN:
                problems.append(f"{hbk.key} is {hbk.kind.value}")
            if oracle_edges:
                for p, q in EDGES:
                    if _any_zero_pairing(hbk.n, hbk.vertex(p), hbk.vertex(q)):
                        problems.append(f"{hbk.key} edge {p}{q} zero-divides")
            reports = egg_candidates(hbk)
            good = [k for k, r in reports.items() if r.ok]
            want = "abc" if src.kind is KiteKind.TYPE_I else "ade"
            if good != [want]:
                problems.append(f"{hbk.key} eggs in {good}")
            for k, r in reports.items():
                if k != want and r.zero_witness is None:
                    problems.append(f"{hbk.key} sail {k} has no zero witness")
    return Check(f"cowbird eggs N={n + 1}", not problems and members > 0, "; ".join(problems[:5]))


def check_hide_fill():
    problems = []
    for bk in all_box_kites(4):
        for edge in EDGES:
            pattern = [live for _, _, live in hide_fill(bk, edge)]
            if pattern != [True, False, True]:
                problems.append(f"s={bk.s} {edge}: {pattern}")
    return Check("hide/fill on-off-on", not problems, "; ".join(problems[:5]))


# -- fano ---------------------------------------------------------------------


def check_klein():
    p = fano.standard_type_i()
    for line in fano.LINE_NAMES:
        for op in fano.OPS:
            if fano.dx(fano.dx(p, line, op), line, op) != p:
                return Check("klein relations", False, f"{op}^2 != I on {line}")
        h = fano.dx(fano.dx(p, line, "H"), line, "V")
        v = fano.dx(fano.dx(p, line, "V"), line, "H")
        if not (h == v == fano.dx(p, line, "D")):
            return Check("klein relations", False, f"HV != VH != D on {line}")
    return Check("klein relations", True)


def check_parity(samples=1000, seed=0):
    rng = random.Random(seed)
    for start in (fano.standard_type_i(), fano.standard_type_ii()):
        for _ in range(samples):
            p = start
            for _ in range(rng.randint(1, 12)):
                if rng.random() < 0.5:
                    p = fano.pl(p, rng.choice(fano.LINE_NAMES), rng.choice(fano.LOAD_ORDER))
                else:
                    p = fano.dx(p, rng.choice(fano.LINE_NAMES), rng.choice(fano.OPS))
            if fano.reversed_count(p) % 2 or fano.is_forbidden(p):
                return Check("PL/DX parity", False, f"{p.history}")
    return Check("PL/DX parity", True)


def check_lemma6():
    bk = build_box_kite(1, (3, 6, 5), 4)
    p = fano.from_box_kite(bk)
    one = fano.pl(fano.dx(p, "aSf", "V"), "aSf", 8)
    two = fano.dx(fano.pl(p, "aSf", 8), "aSf", "V")
    target = fano.from_box_kite(build_box_kite(1, (3, 13, 14), 5))
    ok = (
        one.labels == two.labels == target.labels
        and one.flags == two.flags == target.flags
        and fano.shape(target).name == "TypeII"
    )
    return Check("Type I to Type II conversion", ok, f"{one.labels} {target.labels}")


def check_flowmorphic():
    spandrel_i = spandrel_of(build_box_kite(1, (3, 6, 5), 4))
    spandrel_ii = spandrel_of(build_box_kite(1, (3, 13, 14), 5))
    for name in SAIL_NAMES:
        p1 = fano.from_box_kite(spandrel_i.member(name))
        p2 = fano.from_box_kite(spandrel_ii.member(name))
        if not fano.flowmorphic(p1, fano.represent(p2, "ade")):
            return Check("flowmorphic nests", False, f"I:{name}/abc vs II:{name}/ade")
        if not fano.flowmorphic(fano.represent(p1, "ade"), p2):
            return Check("flowmorphic nests", False, f"I:{name}/ade vs II:{name}/abc")
    return Check("flowmorphic nests", True)


# -- emanation tables ---------------------------------------------------------


def check_fill_formula():
    cases = [(5, s) for s in range(9, 16)] + [(6, s) for s in range(17, 25)]
    for n, s in cases:
        if not np.array_equal(build_et(s, n).cells, predicted_et(s, n).cells):
            return Check("fill formula", False, f"n={n} s={s}")
    counts = {build_et(s, 5).filled for s in range(9, 16)}
    return Check("fill formula", counts == {72}, f"pathion fill counts {counts}")


def check_skybox():
    ok = skybox_check(build_et(15, 5), build_et(15, 6)) and skybox_check(build_et(9, 5), build_et(9, 6))
    return Check("skybox nesting", ok)


def check_empty_trend():
    fr = [build_et(15, n).empty_fraction for n in (5, 6, 7)]
    ok = fr[0] > fr[1] > fr[2]
    return Check("s=15 empty fraction falls with N", ok, ", ".join(f"{f:.4f}" for f in fr))


SUITES = {
    "tables": (
        check_trip_census,
        check_octonion_trips,
        check_sign_table_vs_oracle,
        check_sedenion_structure,
        check_brocade,
        check_explosion,
        check_pathion_census,
        check_royal_hunt,
    ),
    "cowbird": (check_cowbird, check_hide_fill),
    "fano": (check_klein, check_parity, check_lemma6, check_flowmorphic),
    "et": (check_fill_formula, check_skybox, check_empty_trend),
}


def run_suite(name):
    names = list(SUITES) if name == "all" else [name]
    return [fn() for suite in names for fn in SUITES[suite]]
