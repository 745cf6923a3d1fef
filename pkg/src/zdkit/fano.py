"""Oriented Fano-plane presentations of box-kites.

Seven positions ``a..f`` and ``S`` sit on seven lines, each stored in the
orientation it has for a standard Type I kite::

    circle  abc      sides  ade  dbf  efc      struts  aSf  bSe  cSd

A presentation keeps one label per position and one flag per line: True if
the line is oriented as in the standard layout (set P), False if reversed
(set R).

``pl`` loads a new high bit onto the four nodes off a fixed line, which
reverses the other six lines.  ``dx`` swaps labels in pairs across the same
four nodes, keeping the fixed line pointwise.  For a fixed line ``(m, n, p)``
the pairs are cut by the lines through ``m`` (V), ``n`` (D) or ``p`` (H).
"""

import json
from dataclasses import dataclass, field, replace

from .algebra import context, is_cpo
from .boxkite import KiteKind

POSITIONS = ("a", "b", "c", "d", "e", "f", "S")
LINES = {
    "abc": ("a", "b", "c"),
    "ade": ("a", "d", "e"),
    "dbf": ("d", "b", "f"),
    "efc": ("e", "f", "c"),
    "aSf": ("a", "S", "f"),
    "bSe": ("b", "S", "e"),
    "cSd": ("c", "S", "d"),
}
LINE_NAMES = tuple(LINES)
CIRCLE = "abc"
SIDES = ("ade", "dbf", "efc")
STRUTS = ("aSf", "bSe", "cSd")
OPS = ("I", "H", "V", "D")
LOAD_ORDER = ("g", "G", "Γ")

_LETTER_OF = {"a": "A", "b": "B", "c": "C", "d": "D", "e": "E", "f": "F"}


def _line_name(line):
    if isinstance(line, str):
        if line in LINES:
            return line
        for name, pts in LINES.items():
            if set(line) == set(pts) and len(line) == 3:
                return name
    else:
        pts = set(line)
        for name, std in LINES.items():
            if pts == set(std):
                return name
    raise KeyError(f"{line!r} is not a Fano line")


def _same_cycle(seq, std):
    k = std.index(seq[0])
    return tuple(seq) == std[k:] + std[:k]


@dataclass(frozen=True, order=True)
class Label:
    """A base letter plus a set of high-bit loadings, e.g. ``b+g+G``."""

    base: str
    loads: frozenset = frozenset()

    def load(self, name):
        return Label(self.base, self.loads ^ {name})

    def value(self, letters, loads):
        v = letters[self.base]
        for name in self.loads:
            v ^= loads[name]
        return v

    def __str__(self):
        return "+".join([self.base] + [l for l in LOAD_ORDER if l in self.loads])


@dataclass(frozen=True)
class FanoPresentation:
    labels: tuple  # one per POSITIONS entry: int or Label
    flags: tuple  # one per LINE_NAMES entry
    n: int = None  # level for numeric labels
    history: tuple = field(default=(), compare=False)

    @property
    def numeric(self):
        return all(isinstance(v, int) for v in self.labels)

    def label(self, position):
        return self.labels[POSITIONS.index(position)]

    def flag(self, line):
        return self.flags[LINE_NAMES.index(_line_name(line))]

    def line_labels(self, line):
        return tuple(self.label(p) for p in LINES[_line_name(line)])

    @property
    def reversed_lines(self):
        return frozenset(name for name, ok in zip(LINE_NAMES, self.flags) if not ok)

    def graph(self):
        """Labels erased: only the oriented lines remain."""
        return self.flags

    def to_dict(self):
        return {
            "labels": {p: (v if isinstance(v, int) else str(v)) for p, v in zip(POSITIONS, self.labels)},
            "lines": {name: ("+" if ok else "-") for name, ok in zip(LINE_NAMES, self.flags)},
            "n": self.n,
            "reversed_count": reversed_count(self),
            "history": [list(h) for h in self.history],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def to_dot(self, name="fano"):
        out = [f"digraph {name} {{"]
        for p, v in zip(POSITIONS, self.labels):
            out.append(f'  {p} [label="{v}"];')
        for line, ok in zip(LINE_NAMES, self.flags):
            x, y, z = LINES[line] if ok else LINES[line][::-1]
            style = "solid" if ok else "dashed"
            out.append(f'  {x} -> {y} -> {z} [style={style}, comment="{line}"];')
        out.append("}")
        return "\n".join(out) + "\n"


def numeric_flags(labels, n):
    """Orientation flags recomputed from integer labels."""
    ctx = context(n)
    pos = dict(zip(POSITIONS, labels))
    return tuple(is_cpo(*(pos[p] for p in LINES[name]), ctx) for name in LINE_NAMES)


def from_labels(labels, n):
    labels = tuple(int(v) for v in labels)
    return FanoPresentation(labels, numeric_flags(labels, n), n)


def from_box_kite(bk):
    """Sail ``A, B, C`` on the circle, ``s`` at the center."""
    labels = tuple(bk.l(_LETTER_OF[p]) for p in POSITIONS[:6]) + (bk.s,)
    return from_labels(labels, bk.n)


def standard_type_i():
    labels = tuple(Label(p if p != "S" else "s") for p in POSITIONS)
    return FanoPresentation(labels, (True,) * 7)


def standard_type_ii():
    """Type I with its b- and c-struts reversed."""
    flags = tuple(name not in ("bSe", "cSd") for name in LINE_NAMES)
    return FanoPresentation(standard_type_i().labels, flags)


def reversed_count(p):
    return sum(1 for ok in p.flags if not ok)


def pl(p, line, load="g"):
    """Load a high bit onto the four nodes off ``line``; the other six lines flip."""
    name = _line_name(line)
    fixed = set(LINES[name])
    labels = []
    for pos, v in zip(POSITIONS, p.labels):
        if pos in fixed:
            labels.append(v)
        elif isinstance(v, int):
            labels.append(v ^ int(load))
        else:
            labels.append(v.load(load))
    flags = tuple(ok if ln == name else not ok for ln, ok in zip(LINE_NAMES, p.flags))
    n = p.n
    if n is not None and isinstance(load, int) and load >= 1 << (n - 1):
        n = int(load).bit_length() + 1
    before = reversed_count(p)
    entry = ("PL", name, str(load), before, sum(1 for ok in flags if not ok))
    return FanoPresentation(tuple(labels), flags, n, p.history + (entry,))


def dx_pairs(line, op):
    """Position pairs exchanged by ``op`` for the fixed ``line``."""
    name = _line_name(line)
    if op not in OPS:
        raise ValueError(f"unknown DX operator {op!r}; expected one of {OPS}")
    if op == "I":
        return ()
    m, n, p = LINES[name]
    pivot = {"V": m, "D": n, "H": p}[op]
    pairs = []
    for other, pts in LINES.items():
        if other != name and pivot in pts:
            pairs.append(tuple(sorted(set(pts) - {pivot}, key=POSITIONS.index)))
    return tuple(pairs)


def _permutation(line, op):
    perm = {x: x for x in POSITIONS}
    for x, y in dx_pairs(line, op):
        perm[x], perm[y] = y, x
    return perm


def dx(p, line, op):
    """Double exchange of labels across the four nodes off ``line``."""
    name = _line_name(line)
    perm = _permutation(name, op)
    labels = tuple(p.label(perm[x]) for x in POSITIONS)
    flags = []
    for ln in LINE_NAMES:
        image = tuple(perm[x] for x in LINES[ln])
        target = _line_name(image)
        ok = p.flag(target)
        flags.append(ok if _same_cycle(image, LINES[target]) else not ok)
    entry = ("DX", name, op, reversed_count(p), sum(1 for ok in flags if not ok))
    return FanoPresentation(labels, tuple(flags), p.n, p.history + (entry,))


def _circle_move(sail):
    name = _line_name(sail)
    if name == CIRCLE:
        return None
    if name not in SIDES:
        raise ValueError(f"{sail!r} is not a sail")
    meet = (set(LINES[name]) & set(LINES[CIRCLE])).pop()
    strut = next(s for s in STRUTS if meet in LINES[s])
    return strut


def represent(p, sail):
    """Bring ``sail`` onto the circle, choosing H or D so the circle is preserved."""
    strut = _circle_move(sail)
    if strut is None:
        return p
    options = []
    for op in ("H", "D"):
        perm = _permutation(strut, op)
        image = {perm[x] for x in LINES[CIRCLE]}
        if image == set(LINES[_line_name(sail)]):
            options.append(op)
    for op in options:
        q = dx(p, strut, op)
        if q.flag(CIRCLE):
            return q
    return dx(p, strut, options[0])


def flowmorphic(p1, p2):
    return p1.graph() == p2.graph()


# -- shapes -------------------------------------------------------------------

# one clockwise step of 120 degrees about S
ROTATION = {"a": "b", "b": "c", "c": "a", "d": "f", "e": "d", "f": "e", "S": "S"}

_BASE_SHAPES = {
    "TypeII": {"bSe", "cSd"},
    "ExplodedZigzag": set(LINE_NAMES) - {CIRCLE},
    "T-bar": {"ade", "aSf"},
    "PupTent": {"ade", "dbf", "efc", "aSf"},
    "SwallowsTail": {"ade", "aSf", "bSe", "cSd"},
    "ShrimpFork": {"efc", "bSe"},
    "Switchblade": {"dbf", "cSd"},
    "TypeIII": {"aSf"},
}


def rotate_lines(lines, k=1):
    out = set(lines)
    for _ in range(k % 3):
        out = {_line_name(tuple(ROTATION[x] for x in LINES[ln])) for ln in out}
    return frozenset(out)


def _shape_table():
    table = {frozenset(): "TypeI", frozenset(STRUTS): "TypeIV"}
    for name, base in _BASE_SHAPES.items():
        for k in range(3):
            rev = rotate_lines(base, k)
            if rev in table:
                continue
            if name == "T-bar":
                table[rev] = f"T-bar({'abc'[k]})"
            elif name in ("TypeII", "TypeIII"):
                table[rev] = name
            else:
                table[rev] = name if k == 0 else f"{name}/rot{120 * k}"
    return table


SHAPES = _shape_table()


@dataclass(frozen=True)
class Shape:
    name: str  # None when the pattern has no name
    reversed_lines: frozenset

    def __str__(self):
        return self.name or "unrecognized:" + ",".join(sorted(self.reversed_lines))


def shape(p):
    rev = p.reversed_lines
    return Shape(SHAPES.get(rev), rev)


def is_forbidden(p):
    """One or three struts reversed with everything else standard."""
    return shape(p).name in ("TypeIII", "TypeIV")


def kind_of(p):
    """Proper type read off a presentation, or None."""
    name = shape(p).name
    if name == "TypeI":
        return KiteKind.TYPE_I
    if name == "TypeII":
        return KiteKind.TYPE_II
    return None


def apply_ops(p, ops):
    """Apply a sequence of ``("PL", line, load)`` / ``("DX", line, op)`` steps."""
    for step in ops:
        kind, line, arg = step
        p = pl(p, line, arg) if kind == "PL" else dx(p, line, arg)
    return p


def instantiate(p, letters, loads, n):
    """Numeric labels from a symbolic presentation."""
    labels = tuple(v.value(letters, loads) for v in p.labels)
    return replace(p, labels=labels, n=n)
