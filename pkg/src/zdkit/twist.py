"""Catamaran twists, Royal Hunt diagrams and brocades."""

import csv
import io
from dataclasses import dataclass

from .algebra import context, is_cpo
from .boxkite import (
    LETTERS,
    STRUT_OPPOSITE,
    Assessor,
    _hexad_kite,
    build_box_kite,
    strut_table,
)
from .errors import InvalidStrutError, NotAnEdgeError

# square cycle orthogonal to each strut
SQUARES = {
    "AF": ("B", "C", "E", "D"),
    "BE": ("A", "C", "F", "D"),
    "CD": ("A", "B", "F", "E"),
}


def _edge_letters(edge):
    if isinstance(edge, str):
        edge = tuple(edge.upper())
    p, q = (e.upper() for e in edge)
    if p not in LETTERS or q not in LETTERS or p == q:
        raise NotAnEdgeError(f"{p}{q} is not a pair of vertex letters")
    if STRUT_OPPOSITE[p] == q:
        raise NotAnEdgeError(f"{p}{q} is a strut, not an edge")
    return p, q


def target_kite(l1, l2, s, n):
    """The box-kite at strut constant ``s`` whose hexad contains ``l1`` and ``l2``."""
    c = l1 ^ l2
    if c in (0, s):
        raise InvalidStrutError(f"{l1} and {l2} do not span a sail at s={s}")
    return _hexad_kite(frozenset((l1, l2, c, l1 ^ s, l2 ^ s, c ^ s)), s, n)


@dataclass(frozen=True)
class Twist:
    source_edge: tuple
    target_s: int
    pair: tuple
    edge_sign: int

    @property
    def target(self):
        a, b = self.pair
        return target_kite(a.l, b.l, self.target_s, a.n)


def twist_pair(p, q):
    """Swap the L-indices of two edge-adjacent assessors of one box-kite."""
    if p.x != q.x or p.l ^ q.l == p.s:
        raise NotAnEdgeError(f"{p.as_pair()} and {q.as_pair()} are not edge-adjacent")
    target_s = p.l ^ q.l ^ p.s
    g = p.g_top
    if not 0 < target_s < g:
        raise InvalidStrutError(f"twist target {target_s} is not a strut constant")
    new_p = Assessor(p.n, q.l, p.u)
    new_q = Assessor(p.n, p.l, q.u)
    sign = strut_table(p.n, target_s).edge_sign(new_p.l, new_q.l)
    return Twist(((p.l, p.u), (q.l, q.u)), target_s, (new_p, new_q), sign)


def twist_edge(bk, edge):
    """Twist product of the edge joining two vertex letters of ``bk``."""
    p, q = _edge_letters(edge)
    return twist_pair(bk.vertex(p), bk.vertex(q))


@dataclass(frozen=True)
class Catamaran:
    parent: object
    strut: str
    square: tuple
    reversed_edge: tuple

    @property
    def edges(self):
        sq = self.square
        return tuple((sq[k], sq[(k + 1) % 4]) for k in range(4))

    def parallel_classes(self):
        """Edge pairs twisting to a common target, the reversed edge's pair first."""
        e = self.edges
        first, second = (e[0], e[2]), (e[1], e[3])
        if self.reversed_edge is not None and frozenset(self.reversed_edge) in map(frozenset, second):
            first, second = second, first
        return first, second


def _flow(bk, p, q):
    ctx = context(bk.n)
    lp, lq = bk.l(p), bk.l(q)
    return 1 if is_cpo(lp, lq, lp ^ lq, ctx) else -1


def catamaran(bk, strut):
    strut = strut.upper()
    if strut not in SQUARES:
        if strut[::-1] in SQUARES:
            strut = strut[::-1]
        else:
            raise InvalidStrutError(f"{strut} is not a strut (use AF, BE or CD)")
    square = SQUARES[strut]
    flows = [_flow(bk, square[k], square[(k + 1) % 4]) for k in range(4)]
    reversed_edge = None
    for k in range(4):
        others = flows[:k] + flows[k + 1 :]
        if len(set(others)) == 1 and flows[k] != others[0]:
            reversed_edge = (square[k], square[(k + 1) % 4])
    return Catamaran(bk, strut, square, reversed_edge)


def catamarans(bk):
    return tuple(catamaran(bk, strut) for strut in SQUARES)


@dataclass(frozen=True)
class Box:
    """Four assessors of one strut constant forming two struts."""

    s: int
    assessors: frozenset

    @property
    def n(self):
        return next(iter(self.assessors)).n

    def struts(self):
        seen, out = set(), []
        for a in sorted(self.assessors):
            if a in seen:
                continue
            opp = a.strut_opposite()
            seen.update((a, opp))
            out.append((a, opp))
        return out

    def parallel_classes(self):
        (p, p_opp), (q, q_opp) = self.struts()
        return ((p, q), (p_opp, q_opp)), ((p, q_opp), (p_opp, q))

    def twist(self, cls):
        twists = [twist_pair(a, b) for a, b in cls]
        target = {t.target_s for t in twists}
        if len(target) != 1:
            raise NotAnEdgeError(f"parallel edges twist to different kites {sorted(target)}")
        return Box(target.pop(), frozenset(a for t in twists for a in t.pair)), twists

    def class_containing(self, pair):
        pair = frozenset(pair)
        for cls in self.parallel_classes():
            if any(frozenset(e) == pair for e in cls):
                return cls
        raise KeyError(pair)

    def other_class(self, pair):
        first, second = self.parallel_classes()
        return second if self.class_containing(pair) == first else first

    def to_dict(self):
        return {"s": self.s, "assessors": [list(a.as_pair()) for a in sorted(self.assessors)]}


@dataclass(frozen=True)
class RoyalHunt:
    start: Box
    top_right: Box
    bottom_left: Box
    bottom_right: Box
    bottom_left_twisted: Box

    @property
    def strut_constants(self):
        return (self.start.s, self.top_right.s, self.bottom_left.s)

    def forms_trip(self):
        s0, s1, s2 = self.strut_constants
        return len({s0, s1, s2}) == 3 and s0 ^ s1 == s2

    def bottoms_match(self):
        """The two bottom boxes hold the same assessors (a 90 degree rotation)."""
        return self.bottom_right == self.bottom_left

    def second_twists_close(self):
        """Second twists of the two one-step boxes land on each other."""
        return self.bottom_right == self.bottom_left and self.bottom_left_twisted == self.top_right

    def to_dict(self):
        return {
            "strut_constants": list(self.strut_constants),
            "start": self.start.to_dict(),
            "top_right": self.top_right.to_dict(),
            "bottom_left": self.bottom_left.to_dict(),
            "bottom_right": self.bottom_right.to_dict(),
            "bottom_left_twisted": self.bottom_left_twisted.to_dict(),
            "forms_trip": self.forms_trip(),
            "bottoms_match": self.bottoms_match(),
            "second_twists_close": self.second_twists_close(),
        }


def royal_hunt(bk, cat):
    """Start box, its two single twists, and the two second twists."""
    if cat.parent.key != bk.key:
        raise ValueError("catamaran does not belong to this box-kite")
    horizontal, vertical = cat.parallel_classes()
    as_pairs = lambda cls: tuple((bk.vertex(p), bk.vertex(q)) for p, q in cls)
    start = Box(bk.s, frozenset(bk.vertex(letter) for letter in cat.square))
    top_right, h_twists = start.twist(as_pairs(horizontal))
    bottom_left, v_twists = start.twist(as_pairs(vertical))
    bottom_right, _ = top_right.twist(top_right.other_class(h_twists[0].pair))
    bl_twisted, _ = bottom_left.twist(bottom_left.other_class(v_twists[0].pair))
    return RoyalHunt(start, top_right, bottom_left, bottom_right, bl_twisted)


def mast_keel(bk, strut):
    """Complete the two kites a catamaran twists into.

    The square orthogonal to strut (P, Q) twists into the kites whose strut
    constants are p and q.  Twisting (p, P) and (q, Q) against the pair
    (S, X) supplies each of those kites with its missing strut.  Returns a
    mapping target_s -> (four twisted assessors, completing strut, complete).
    """
    cat = catamaran(bk, strut)
    p_letter, q_letter = cat.strut
    n, s, x = bk.n, bk.s, bk.x
    p, q = bk.l(p_letter), bk.l(q_letter)
    classes = cat.parallel_classes()
    boxes = {}
    for cls in classes:
        pairs = tuple((bk.vertex(a), bk.vertex(b)) for a, b in cls)
        box, _ = Box(s, frozenset(bk.vertex(v) for v in cat.square)).twist(pairs)
        boxes[box.s] = box
    mast = {
        p: (Assessor(n, s, bk.u(p_letter)), Assessor(n, q, x)),
        q: (Assessor(n, s, bk.u(q_letter)), Assessor(n, p, x)),
    }
    out = {}
    for target, box in boxes.items():
        completing = mast[target]
        six = set(box.assessors) | set(completing)
        ls = sorted(a.l for a in six)
        l2 = next(l for l in ls[1:] if l ^ ls[0] != target)
        ref = target_kite(ls[0], l2, target, n)
        out[target] = (box, completing, set(ref.vertices) == six)
    return out


# -- brocade ------------------------------------------------------------------


@dataclass(frozen=True)
class BrocadeCell:
    s: int
    letter: str
    kind: str
    key: tuple

    def label(self):
        return f"{self.s}{self.letter}"


@dataclass(frozen=True)
class Brocade:
    n: int
    rows: tuple
    cols: tuple
    cells: dict

    def cell(self, u, l):
        return self.cells.get((u, l))

    def filled(self):
        return sum(1 for c in self.cells.values() if c is not None)

    def to_rows(self):
        out = [[""] + [str(l) for l in self.cols]]
        for u in self.rows:
            row = [f"{u:02d}"]
            for l in self.cols:
                c = self.cells[(u, l)]
                row.append("" if c is None else c.label())
            out.append(row)
        return out

    def to_csv(self):
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.to_rows())
        return buf.getvalue()

    def to_dict(self):
        return {
            "n": self.n,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "cells": [
                {"u": u, "l": l, "s": c.s, "letter": c.letter, "kind": c.kind, "key": list(c.key[2])}
                for (u, l), c in sorted(self.cells.items())
                if c is not None
            ],
        }


def default_seed(n):
    """The zero-padded sedenion kite with ``s = 1`` and zigzag ``(3, 6, 5)``."""
    return build_box_kite(1, (3, 6, 5), n)


def brocade(n=4, seed=None):
    """The 7-in-1 table collecting every box-kite on one seed's frame.

    Columns are the seed's six L-indices plus ``s``; rows are ``G + w`` for
    the same seven values.  For ``n > 4`` each cell also names its kite.
    """
    if seed is None:
        seed = default_seed(n)
    elif seed.n != n:
        raise ValueError(f"seed kite lives at N={seed.n}, not N={n}")
    g = 1 << (n - 1)
    frame = tuple(sorted(set(seed.l_indices) | {seed.s}))
    rows = tuple(g + w for w in frame)
    cells = {}
    kites = {}
    for u in rows:
        for l in frame:
            s = (u - g) ^ l
            if s == 0:
                cells[(u, l)] = None
                continue
            if s not in kites:
                l1 = next(w for w in frame if w != s)
                l2 = next(w for w in frame if w not in (s, l1, l1 ^ s))
                kites[s] = target_kite(l1, l2, s, n)
            bk = kites[s]
            cells[(u, l)] = BrocadeCell(s, bk.letter_of(l), bk.kind.value, bk.key)
    return Brocade(n, rows, frame, cells)
