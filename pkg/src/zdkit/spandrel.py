"""Exploded box-kites: spandrels, triptychs, hide/fill and octonion eggs."""

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .algebra import context, is_cpo
from .boxkite import (
    EDGES,
    KiteKind,
    enumerate_box_kites,
    make_box_kite,
    strut_table,
)
from .errors import NotProperError, NotSpandrelMemberError, ZDKitError

SAIL_NAMES = ("abc", "ade", "dbf", "efc")

# letter order of each exploded sail; a Type II source walks two trefoils
# from the properly oriented strut end
NEST_ORDER = {
    KiteKind.TYPE_I: {"abc": "ABC", "ade": "ADE", "dbf": "DBF", "efc": "EFC"},
    KiteKind.TYPE_II: {"abc": "ABC", "ade": "ADE", "dbf": "FDB", "efc": "FCE"},
}

# sail of the hidden kite holding the egg, by source kind
EGG_SAIL = {KiteKind.TYPE_I: "abc", KiteKind.TYPE_II: "ade"}


def _sail_name(sail):
    name = sail.lower()
    if name not in NEST_ORDER[KiteKind.TYPE_I]:
        raise ValueError(f"unknown sail {sail!r}; expected one of {', '.join(SAIL_NAMES)}")
    return name


def explode(bk, sail):
    """Inflate one sail into a hidden box-kite one level up.

    The new strut constant is ``s + G``; the sail's L-trip becomes the
    zigzag, so the old U-indices of that sail turn into strut opposites.
    """
    if not bk.kind.proper:
        raise NotProperError(f"only Type I or Type II kites explode, got {bk.kind.value}")
    name = _sail_name(sail)
    trip = tuple(bk.l(letter) for letter in NEST_ORDER[bk.kind][name])
    hbk = make_box_kite(bk.n + 1, bk.s + bk.g_top, trip, source=(bk.key, name))
    return hbk


@dataclass(frozen=True)
class Spandrel:
    source: object
    members: tuple

    @property
    def s(self):
        return self.members[0].s

    @property
    def x_new(self):
        return self.members[0].x

    @property
    def g_new(self):
        return self.members[0].g_top

    def member(self, sail):
        return self.members[SAIL_NAMES.index(_sail_name(sail))]

    def eggs(self):
        """Verification report of the designated egg in each member."""
        sail = EGG_SAIL[self.source.kind]
        return tuple(verify_egg(egg_candidate(m, sail)) for m in self.members)

    def to_dict(self):
        return {
            "source_key": [self.source.n, self.source.s, list(self.source.key[2])],
            "source": self.source.to_dict(),
            "s": self.s,
            "x": self.x_new,
            "g": self.g_new,
            "members": {name: m.to_dict() for name, m in zip(SAIL_NAMES, self.members)},
            "eggs": [r.to_dict() for r in self.eggs()],
        }

    def table_rows(self):
        """Rows of L, hidden U, source U and the hidden U of those, per sail."""
        src = self.source
        x = self.x_new
        rows = {"L": [], "HBK U": [], "source U": [], "HBK U'": []}
        for name, m in zip(SAIL_NAMES, self.members):
            letters = NEST_ORDER[src.kind][name]
            ls = tuple(src.l(c) for c in letters)
            us = tuple(src.u(c) for c in letters)
            rows["L"].append(ls)
            rows["HBK U"].append(tuple(l ^ x for l in ls))
            rows["source U"].append(us)
            rows["HBK U'"].append(tuple(u ^ x for u in us))
        return rows

    def to_text(self):
        head = f"(S,X,G) = ({self.s}, {self.x_new}, {self.g_new})"
        lines = [head, "row      " + "  ".join(f"{n.upper():>12}" for n in SAIL_NAMES)]
        for label, cells in self.table_rows().items():
            body = "  ".join(f"{'(' + ','.join(f'{v:02d}' for v in t) + ')':>12}" for t in cells)
            lines.append(f"{label:<8} {body}")
        return "\n".join(lines) + "\n"


def spandrel_of(bk):
    if not bk.kind.proper:
        raise NotProperError(f"only Type I or Type II kites explode, got {bk.kind.value}")
    return Spandrel(bk, tuple(explode(bk, name) for name in SAIL_NAMES))


# -- triptychs ----------------------------------------------------------------


@dataclass(frozen=True)
class Triptych:
    n: int
    s: int
    kites: tuple
    struts: tuple  # distinct struts as sorted L-pairs
    common: tuple  # struts shared by every kite

    def sharing(self):
        """Map strut -> number of kites holding it."""
        out = {}
        for bk in self.kites:
            for st in _struts(bk):
                out[st] = out.get(st, 0) + 1
        return out


def _struts(bk):
    return {tuple(sorted((bk.l(p), bk.l(q)))) for p, q in (("A", "F"), ("B", "E"), ("C", "D"))}


def triptych(s, n):
    """Proper kites of one strut constant and the struts they share."""
    kites = tuple(bk for bk in enumerate_box_kites(s, n) if bk.kind.proper)
    sets = [_struts(bk) for bk in kites]
    struts = tuple(sorted(set().union(*sets))) if sets else ()
    common = tuple(sorted(set.intersection(*sets))) if sets else ()
    return Triptych(n, s, kites, struts, common)


# -- hide / fill --------------------------------------------------------------


def hide_fill(bk, edge, levels=2):
    """Whether an edge carries zero-divisors as ``s`` gains successive high bits.

    Starts at the kite's own level and adds the current ``G`` to ``s`` at each
    step.  Returns ``[(n, s, live), ...]``.
    """
    p, q = (bk.l(c) for c in edge)
    n, s = bk.n, bk.s
    out = []
    for _ in range(levels + 1):
        out.append((n, s, strut_table(n, s).mask(p, q) != 0))
        s += 1 << (n - 1)
        n += 1
    return out


def hide_fill_all(bk, levels=2):
    return {p + q: hide_fill(bk, (p, q), levels) for p, q in EDGES}


# -- eggs ---------------------------------------------------------------------


def _sub_mul(a, b, sign):
    """Multiply two sparse elements given as {index: coeff}."""
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i ^ j
            out[k] = out.get(k, 0) + x * y * int(sign[i, j])
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class EggOctet:
    n: int
    indices: tuple  # (0, a, b, c, A, B, C, X)
    sail: str = None


@dataclass(frozen=True)
class EggReport:
    egg: EggOctet
    closed: bool
    associative: bool
    zero_witness: tuple  # ((i, j, sigma), (k, m, tau)) or None
    mapping: dict  # index -> (octonion index, sign), or None

    @property
    def ok(self):
        return self.closed and self.associative and self.zero_witness is None and self.mapping is not None

    def to_dict(self):
        return {
            "indices": list(self.egg.indices),
            "sail": self.egg.sail,
            "closed": self.closed,
            "associative": self.associative,
            "zero_witness": None if self.zero_witness is None else [list(w) for w in self.zero_witness],
            "mapping": None if self.mapping is None else {str(k): list(v) for k, v in self.mapping.items()},
            "ok": self.ok,
        }


def _octonion_mapping(indices, n):
    """Signed relabeling onto the standard octonion units with X sent to 4."""
    _, a, b, c, _, _, _, x = indices
    sign = context(n).sign_table
    octo = context(3).sign_table
    units = [i for i in indices if i]
    for p, q, r in permutations((a, b, c)):
        if p ^ q != r:
            continue
        base = {0: 0, p: 1, q: 2, r: 3, x: 4}
        for i in (p, q, r):
            base[i ^ x] = base[i] ^ 4
        for flips in product((1, -1), repeat=7):
            eps = dict(zip(sorted(units), flips))
            eps[0] = 1
            if all(
                int(sign[i, j]) * eps[i ^ j] == eps[i] * eps[j] * int(octo[base[i], base[j]])
                for i in units
                for j in units
            ):
                return {i: (base[i], eps[i]) for i in indices}
    return None


def verify_egg(egg):
    """Closure, associativity of its 7 trips, no zero diagonal products, octonion map."""
    n = egg.n
    idx = tuple(egg.indices)
    sign = context(n).sign_table
    members = set(idx)
    closed = len(members) == 8 and 0 in members and all(i ^ j in members for i in idx for j in idx)
    units = sorted(i for i in members if i)
    lines = [t for t in combinations(units, 3) if t[0] ^ t[1] == t[2]]
    associative = closed and len(lines) == 7
    if associative:
        for line in lines:
            for i, j, k in permutations(line):
                ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
                if _sub_mul(_sub_mul(ei, ej, sign), ek, sign) != _sub_mul(ei, _sub_mul(ej, ek, sign), sign):
                    associative = False
    witness = None
    diagonals = [(i, j, sg) for i, j in combinations(units, 2) for sg in (1, -1)]
    for d1, d2 in combinations(diagonals, 2):
        if {d1[0], d1[1]} == {d2[0], d2[1]}:
            continue
        x = {d1[0]: 1, d1[1]: d1[2]}
        y = {d2[0]: 1, d2[1]: d2[2]}
        if not _sub_mul(x, y, sign) or not _sub_mul(y, x, sign):
            witness = (d1, d2)
            break
    mapping = _octonion_mapping(idx, n) if closed else None
    return EggReport(egg, closed, associative, witness, mapping)


def egg_candidate(hbk, sail):
    """Octet built from one sail's L-units, their U partners, X and 0."""
    name = _sail_name(sail)
    ls = hbk.sail(name)
    return EggOctet(hbk.n, (0,) + ls + tuple(l ^ hbk.x for l in ls) + (hbk.x,), name)


def _source_kind(hbk):
    if hbk.kind is not KiteKind.HIDDEN or hbk.source is None:
        raise NotSpandrelMemberError("egg search needs a hidden kite produced by explode()")
    n, s, ls = hbk.source[0]
    for bk in enumerate_box_kites(s, n):
        if bk.key == hbk.source[0]:
            return bk.kind
    raise NotSpandrelMemberError(f"source kite {hbk.source[0]} not found")


def egg_candidates(hbk):
    """Verification report for each of the four sails."""
    return {name: verify_egg(egg_candidate(hbk, name)) for name in SAIL_NAMES}


def find_egg(hbk, spandrel_kind=None):
    """The egg in the sail designated by the source kite's type, or None."""
    kind = spandrel_kind or _source_kind(hbk)
    kind = KiteKind(kind)
    if not kind.proper:
        raise ZDKitError("spandrel kind must be TypeI or TypeII")
    egg = egg_candidate(hbk, EGG_SAIL[kind])
    return egg if verify_egg(egg).ok else None


def trip_sync(bk, sail="abc"):
    """Orientation of a sail's L-trip and its three allied U-trips.

    Returns booleans for ``(a,b,c), (a,B,C), (A,b,C), (A,B,c)`` (CPO in that
    order or not), using the sail's letters in place of a, b, c.
    """
    ctx = context(bk.n)
    l = bk.sail(_sail_name(sail))
    u = tuple(v ^ bk.x for v in l)
    trips = ((l[0], l[1], l[2]), (l[0], u[1], u[2]), (u[0], l[1], u[2]), (u[0], u[1], l[2]))
    return tuple(is_cpo(*t, ctx) for t in trips)
