"""Assessors, diagonals and box-kites.

Vertex letters follow the usual octahedral frame: the zigzag sail is
``A, B, C`` and the strut opposites are ``F, E, D`` (struts ``AF``, ``BE``,
``CD``).  For strut constant ``s`` every assessor has ``u = l ^ (G + s)``.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _kernels
from .algebra import HyperNum, context, is_cpo, mul, orient
from .errors import (
    DimensionMismatchError,
    ImpossibleTypeError,
    InvalidIndexError,
    InvalidStrutError,
    NoEmanationError,
    NotAZigzagError,
    NoZeroDivisorsError,
    RoundaboutViolation,
)

LETTERS = ("A", "B", "C", "D", "E", "F")
STRUT_OPPOSITE = {"A": "F", "F": "A", "B": "E", "E": "B", "C": "D", "D": "C"}
STRUTS = (("A", "F"), ("B", "E"), ("C", "D"))
ZIGZAG_EDGES = (("A", "B"), ("B", "C"), ("C", "A"))
VENT_EDGES = (("D", "E"), ("E", "F"), ("F", "D"))
CROSS_EDGES = (("A", "D"), ("A", "E"), ("B", "D"), ("B", "F"), ("C", "E"), ("C", "F"))
EDGES = ZIGZAG_EDGES + VENT_EDGES + CROSS_EDGES
SAILS = {
    "abc": ("A", "B", "C"),
    "ade": ("A", "D", "E"),
    "dbf": ("D", "B", "F"),
    "efc": ("E", "F", "C"),
}

_PLUS_MASK = 0b1001
_MINUS_MASK = 0b0110


class KiteKind(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    HIDDEN = "Hidden"

    @property
    def proper(self):
        return self is not KiteKind.HIDDEN

    def __str__(self):
        return self.value


def _require_zd_level(n):
    if n < 4:
        raise NoZeroDivisorsError(f"the 2^{n}-ions have no zero divisors (need N >= 4)")


@dataclass(frozen=True, order=True)
class Assessor:
    """Plane spanned by ``e_l`` (``l < G``) and ``e_u`` (``u > G``)."""

    n: int
    l: int
    u: int

    def __post_init__(self):
        _require_zd_level(self.n)
        g = 1 << (self.n - 1)
        if not (0 < self.l < g < self.u < 2 * g):
            raise InvalidIndexError(f"assessor needs 0 < l < {g} < u < {2 * g}, got ({self.l}, {self.u})")
        if self.u == g ^ self.l:
            raise InvalidIndexError(f"({self.l}, {self.u}) is an (S, X) pair, not an assessor")

    @property
    def g_top(self):
        return 1 << (self.n - 1)

    @property
    def x(self):
        return self.l ^ self.u

    @property
    def s(self):
        return self.x ^ self.g_top

    def strut_opposite(self):
        return Assessor(self.n, self.l ^ self.s, self.u ^ self.s)

    def diagonal(self, slope):
        return Diagonal(self, slope)

    def as_pair(self):
        return (self.l, self.u)


@dataclass(frozen=True)
class Diagonal:
    """``e_u + slope * e_l``; slope +1 is "/", -1 is "\\"."""

    assessor: Assessor
    slope: int

    def __post_init__(self):
        if self.slope not in (1, -1):
            raise ValueError(f"slope must be +1 or -1, got {self.slope}")

    def hypernum(self):
        a = self.assessor
        return HyperNum.from_terms({a.u: 1, a.l: self.slope}, a.n)


def mutually_zero_divide(d1, d2):
    """True when both products of the two diagonals vanish exactly."""
    if d1.assessor.n != d2.assessor.n:
        raise DimensionMismatchError(f"N mismatch: {d1.assessor.n} vs {d2.assessor.n}")
    if d1.assessor == d2.assessor:
        return False
    x, y = d1.hypernum(), d2.hypernum()
    ctx = context(d1.assessor.n)
    return mul(x, y, ctx).is_zero() and mul(y, x, ctx).is_zero()


class StrutTable:
    """Diagonal-pairing masks for every pair of assessors sharing one ``s``."""

    def __init__(self, n, s):
        ctx = context(n)
        g = ctx.g_top
        if not 0 < s < g:
            raise InvalidStrutError(f"strut constant must satisfy 0 < s < {g}, got {s}")
        self.n = n
        self.s = s
        self.x = g + s
        self.labels = np.array([l for l in range(1, g) if l != s], dtype=np.int64)
        self.position = {int(l): k for k, l in enumerate(self.labels)}
        self.masks = _kernels.zd_masks(self.labels, self.x, ctx.sign_table)

    def mask(self, l1, l2):
        return int(self.masks[self.position[l1], self.position[l2]])

    def edge_sign(self, l1, l2):
        return _mask_sign(self.mask(l1, l2))


def _mask_sign(mask):
    if mask == 0:
        return 0
    if mask == _PLUS_MASK:
        return 1
    if mask == _MINUS_MASK:
        return -1
    raise RoundaboutViolation(f"unexpected diagonal-pairing mask {mask:04b}")


@lru_cache(maxsize=256)
def strut_table(n, s):
    return StrutTable(n, s)


def pairing_mask(a1, a2):
    """4-bit mask of the diagonal pairings of two assessors whose product vanishes."""
    if a1.n != a2.n:
        raise DimensionMismatchError(f"N mismatch: {a1.n} vs {a2.n}")
    if a1.x != a2.x or a1 == a2:
        return 0
    return strut_table(a1.n, a1.s).mask(a1.l, a2.l)


def enumerate_assessors(n):
    """Every assessor of the 2^N-ions that zero-divides with some other assessor."""
    _require_zd_level(n)
    g = 1 << (n - 1)
    found = []
    for s in range(1, g):
        table = strut_table(n, s)
        live = table.masks.any(axis=1)
        found.extend(Assessor(n, int(l), int(l) ^ table.x) for l in table.labels[live])
    return sorted(found)


@dataclass(frozen=True)
class BoxKite:
    n: int
    s: int
    vertices: tuple
    edge_signs: tuple
    kind: KiteKind
    source: tuple = None

    @property
    def g_top(self):
        return 1 << (self.n - 1)

    @property
    def x(self):
        return self.g_top + self.s

    @property
    def key(self):
        return (self.n, self.s, tuple(sorted(self.l_indices)))

    @property
    def l_indices(self):
        return tuple(v.l for v in self.vertices)

    def vertex(self, letter):
        return self.vertices[LETTERS.index(letter.upper())]

    def l(self, letter):
        return self.vertex(letter).l

    def u(self, letter):
        return self.vertex(letter).u

    def letter_of(self, l):
        for letter, v in zip(LETTERS, self.vertices):
            if v.l == l:
                return letter
        raise KeyError(l)

    @property
    def zigzag(self):
        return self.sail("abc")

    def sail(self, name):
        return tuple(self.l(letter) for letter in SAILS[name])

    def edge_sign(self, p, q):
        p, q = p.upper(), q.upper()
        for (x, y), sign in zip(EDGES, self.edge_signs):
            if {x, y} == {p, q}:
                return sign
        raise KeyError(f"{p}{q} is not an edge")

    def to_dict(self):
        symbol = {1: "+", -1: "-", 0: None}
        out = {
            "n": self.n,
            "s": self.s,
            "x": self.x,
            "vertices": {letter: [v.l, v.u] for letter, v in zip(LETTERS, self.vertices)},
            "edge_signs": {x + y: symbol[sign] for (x, y), sign in zip(EDGES, self.edge_signs)},
            "kind": self.kind.value,
        }
        if self.source is not None:
            out["source"] = {"key": list(self.source[0][2]), "s": self.source[0][1], "n": self.source[0][0], "sail": self.source[1]}
        return out


def _lettered(n, s, abc):
    a, b, c = abc
    x = (1 << (n - 1)) + s
    ls = (a, b, c, c ^ s, b ^ s, a ^ s)
    return tuple(Assessor(n, l, l ^ x) for l in ls)


def _edge_signs(n, s, vertices):
    table = strut_table(n, s)
    index = dict(zip(LETTERS, vertices))
    return tuple(table.edge_sign(index[p].l, index[q].l) for p, q in EDGES)


def _zigzag_by_signs(signs):
    by_edge = {frozenset(e): sign for e, sign in zip(EDGES, signs)}
    found = []
    for name, letters in SAILS.items():
        if all(by_edge[frozenset((p, q))] == -1 for p, q in combinations(letters, 2)):
            found.append(name)
    return found


def _kind_from(n, s, vertices, signs):
    if not any(signs):
        return KiteKind.HIDDEN
    if not all(signs):
        raise RoundaboutViolation(f"hexad {[v.l for v in vertices]} at s={s} has {sum(map(bool, signs))}/12 live edges")
    zig = _zigzag_by_signs(signs)
    if len(zig) != 1:
        raise RoundaboutViolation(f"expected one all-negative sail, found {zig}")
    index = dict(zip(LETTERS, vertices))
    zigzag_ls = [index[letter].l for letter in SAILS[zig[0]]]
    ctx = context(n)
    reversed_struts = sum(1 for z in zigzag_ls if not is_cpo(z, s, z ^ s, ctx))
    if reversed_struts == 0:
        return KiteKind.TYPE_I
    if reversed_struts == 2:
        return KiteKind.TYPE_II
    raise ImpossibleTypeError(f"ZD-carrying kite with {reversed_struts} reversed strut(s) at s={s}")


def classify(bk):
    """TypeI, TypeII or Hidden, recomputed from the algebra."""
    signs = _edge_signs(bk.n, bk.s, bk.vertices)
    return _kind_from(bk.n, bk.s, bk.vertices, signs)


def make_box_kite(n, s, abc, source=None):
    """Letter a hexad from an ordered zigzag L-trip without reorienting it."""
    vertices = _lettered(n, s, abc)
    signs = _edge_signs(n, s, vertices)
    return BoxKite(n, s, vertices, signs, _kind_from(n, s, vertices, signs), source)


def _check_trip_and_strut(s, abc, n):
    _require_zd_level(n)
    g = 1 << (n - 1)
    a, b, c = abc
    if not all(0 < t < g for t in abc) or a ^ b != c or len({a, b, c}) != 3:
        raise InvalidIndexError(f"{tuple(abc)} is not a trip of L-indices below {g}")
    if not 0 < s < g:
        raise InvalidStrutError(f"strut constant must satisfy 0 < s < {g}, got {s}")
    if s in abc:
        raise InvalidStrutError(f"strut constant {s} collides with zigzag {tuple(abc)}")


def build_box_kite(s, zigzag, n):
    """Box-kite with the given zigzag L-trip, lettered CPO with A smallest.

    Raises :class:`NotAZigzagError` if the kite is proper but the trip is one
    of its trefoils.
    """
    abc = tuple(zigzag)
    _check_trip_and_strut(s, abc, n)
    ctx = context(n)
    trip = orient(abc[0], abc[1], ctx)
    bk = make_box_kite(n, s, trip.as_tuple())
    if bk.kind.proper and _zigzag_by_signs(bk.edge_signs) != ["abc"]:
        actual = bk.sail(_zigzag_by_signs(bk.edge_signs)[0])
        raise NotAZigzagError(f"{trip.as_tuple()} is a trefoil at s={s}; the zigzag is {tuple(sorted(actual))}")
    return bk


def hexads(s, n):
    """L-index sets of every box-kite-shaped hexad with strut constant ``s``."""
    g = 1 << (n - 1)
    reps = sorted({min(l, l ^ s) for l in range(1, g) if l != s})
    seen = set()
    out = []
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            c = a ^ b
            hexad = frozenset((a, b, c, a ^ s, b ^ s, c ^ s))
            if hexad not in seen:
                seen.add(hexad)
                out.append(hexad)
    return sorted(out, key=sorted)


def sails_of(hexad, s):
    """The four sail L-trips (as sorted tuples) of a hexad."""
    return sorted(
        t for t in combinations(sorted(hexad), 3) if t[0] ^ t[1] == t[2] and all(p ^ q != s for p, q in combinations(t, 2))
    )


def lifts_to_proper(trip, s, n):
    """Whether ``trip`` heads a proper box-kite after adding the next high bit to ``s``."""
    s2 = s + (1 << (n - 1))
    table = strut_table(n + 1, s2)
    hexad = list(trip) + [t ^ s2 for t in trip]
    return all(table.mask(p, q) for p, q in combinations(hexad, 2) if p ^ q != s2)


def _hidden_zigzag(hexad, s, n):
    g = 1 << (n - 2)
    low = [t for t in sails_of(hexad, s) if max(t) < g]
    if len(low) == 1:
        return low[0]
    return sails_of(hexad, s)[0]


def _hexad_kite(hexad, s, n):
    table = strut_table(n, s)
    ls = sorted(hexad)
    live = [table.mask(p, q) != 0 for p, q in combinations(ls, 2) if p ^ q != s]
    ctx = context(n)
    if all(live):
        for trip in sails_of(hexad, s):
            bk = make_box_kite(n, s, orient(trip[0], trip[1], ctx).as_tuple())
            if _zigzag_by_signs(bk.edge_signs) == ["abc"]:
                return bk
        raise RoundaboutViolation(f"no zigzag found for hexad {ls} at s={s}")
    if any(live):
        raise RoundaboutViolation(f"hexad {ls} at s={s} is partly live")
    trip = _hidden_zigzag(hexad, s, n)
    if not lifts_to_proper(trip, s, n):
        return None
    return make_box_kite(n, s, orient(trip[0], trip[1], ctx).as_tuple())


def enumerate_box_kites(s, n):
    """Proper and hidden box-kites for one strut constant, one per hexad."""
    _require_zd_level(n)
    g = 1 << (n - 1)
    if not 0 < s < g:
        raise InvalidStrutError(f"strut constant must satisfy 0 < s < {g}, got {s}")
    kites = (_hexad_kite(h, s, n) for h in hexads(s, n))
    return sorted((bk for bk in kites if bk is not None), key=lambda bk: bk.key)


def all_box_kites(n):
    return [bk for s in range(1, 1 << (n - 1)) for bk in enumerate_box_kites(s, n)]


def emanate(p, q):
    """Third sail assessor completed by two edge-adjacent assessors."""
    if p.n != q.n:
        raise DimensionMismatchError(f"N mismatch: {p.n} vs {q.n}")
    if not pairing_mask(p, q):
        raise NoEmanationError(f"{p.as_pair()} and {q.as_pair()} do not mutually zero-divide")
    l = p.l ^ q.l
    return Assessor(p.n, l, l ^ p.x)
