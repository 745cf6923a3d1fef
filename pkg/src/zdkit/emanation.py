"""Emanation tables: brute-force fill, the single-high-bit fill rule, renders."""

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import _check_n
from .boxkite import KiteKind, enumerate_box_kites, strut_table
from .errors import DimensionMismatchError, InvalidStrutError, UnsupportedBandError

WHITE, BLACK, DARK, LIGHT = 255, 0, 96, 160


def et_labels(s, n):
    """Row/column order: smaller strut members ascending, then partners mirrored.

    Position ``k`` and ``len - 1 - k`` always hold strut opposites.
    """
    _check_n(n, 4)
    g = 1 << (n - 1)
    if not 0 < s < g:
        raise InvalidStrutError(f"strut constant must satisfy 0 < s < {g}, got {s}")
    low = sorted(l for l in range(1, g) if l != s and l < l ^ s)
    return tuple(low) + tuple(l ^ s for l in reversed(low))


@dataclass(frozen=True)
class EmanationTable:
    n: int
    s: int
    labels: tuple
    cells: np.ndarray = field(repr=False)  # 0 marks an empty cell

    @property
    def size(self):
        return len(self.labels)

    @property
    def filled(self):
        return int(np.count_nonzero(self.cells))

    @property
    def empty(self):
        return self.size * self.size - self.filled

    @property
    def empty_fraction(self):
        return self.empty / (self.size * self.size)

    def census(self):
        return {"n": self.n, "s": self.s, "filled": self.filled, "empty": self.empty}

    def index(self, label):
        return self.labels.index(label)

    def cell(self, r, c):
        """Emanated L-index for row label ``r`` and column label ``c``, or None."""
        v = int(self.cells[self.index(r), self.index(c)])
        return v or None

    def is_filled(self, r, c):
        return self.cell(r, c) is not None

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.labels))
        for k, r in enumerate(self.labels):
            w.writerow([r] + [int(v) if v else "" for v in self.cells[k]])
        return buf.getvalue()

    def to_json(self):
        return json.dumps(self.census())

    def check_invariants(self):
        """Symmetric fill, both long diagonals empty, mirrored labels."""
        m = len(self.labels)
        filled = self.cells != 0
        idx = np.arange(m)
        return (
            bool(np.array_equal(filled, filled.T))
            and not filled[idx, idx].any()
            and not filled[idx, m - 1 - idx].any()
            and all(self.labels[k] ^ self.labels[m - 1 - k] == self.s for k in range(m))
        )


def build_et(s, n):
    """Fill every cell whose row and column assessors mutually zero-divide."""
    labels = et_labels(s, n)
    table = strut_table(n, s)
    order = np.array([table.position[l] for l in labels], dtype=np.int64)
    masks = table.masks[np.ix_(order, order)]
    lab = np.array(labels, dtype=np.int64)
    cells = np.where(masks != 0, lab[:, None] ^ lab[None, :], 0)
    cells.setflags(write=False)
    return EmanationTable(n, s, labels, cells)


def in_fill_band(s, n):
    """True when ``s`` has its top bit at ``g = G/2`` and ``s mod g`` fits below 8."""
    g = 1 << (n - 2)
    return n >= 5 and g < s < 2 * g and s - g <= 8


def predict_fill(r, c, s, n):
    """Fill rule for the single-high-bit band: R, C or R^C hits g or s mod g."""
    if not in_fill_band(s, n):
        raise UnsupportedBandError(f"s={s} at N={n} is outside the single-high-bit band; use build_et")
    g = 1 << (n - 2)
    p = r ^ c
    if r == c or p == s:
        return False
    hits = {g, s % g}
    return r in hits or c in hits or p in hits


def predicted_et(s, n):
    labels = et_labels(s, n)
    m = len(labels)
    cells = np.zeros((m, m), dtype=np.int64)
    for i, r in enumerate(labels):
        for j, c in enumerate(labels):
            if predict_fill(r, c, s, n):
                cells[i, j] = r ^ c
    cells.setflags(write=False)
    return EmanationTable(n, s, labels, cells)


# -- skyboxes -----------------------------------------------------------------


@dataclass(frozen=True)
class Skybox:
    """The label line of a larger table and what its filled cells spell."""

    label_row: int
    forward: tuple
    backward: tuple
    ok: bool


def skybox(et_small, et_big):
    """Read the smaller table's labels off the larger table's label line.

    Restricted to values that are labels of the smaller table, the row
    labelled with the smaller table's G must spell those labels in order and
    its strut-opposite row must spell them in reverse.
    """
    if et_small.s != et_big.s:
        raise InvalidStrutError(f"strut constants differ: {et_small.s} vs {et_big.s}")
    if et_big.n != et_small.n + 1:
        raise DimensionMismatchError(f"expected N={et_small.n + 1} for the larger table, got {et_big.n}")
    row = 1 << (et_small.n - 1)
    small = set(et_small.labels)
    spell = lambda r: tuple(int(v) for v in et_big.cells[et_big.index(r)] if v in small)
    forward, backward = spell(row), spell(row ^ et_small.s)
    ok = forward == et_small.labels and backward == et_small.labels[::-1]
    return Skybox(row, forward, backward, ok)


def skybox_check(et_small, et_big):
    return skybox(et_small, et_big).ok


# -- rendering ----------------------------------------------------------------


def shade(et, tiers=True):
    """Gray level per cell.

    White empty, black filled.  With ``tiers``: dark gray for cells emanating
    g or s mod g, light gray for empty off-diagonal cells of hidden kites.
    """
    img = np.where(et.cells != 0, BLACK, WHITE).astype(np.uint8)
    if not tiers:
        return img
    pos = {l: k for k, l in enumerate(et.labels)}
    for bk in enumerate_box_kites(et.s, et.n):
        if bk.kind is not KiteKind.HIDDEN:
            continue
        for r in bk.l_indices:
            for c in bk.l_indices:
                if r != c and r ^ c != et.s:
                    img[pos[r], pos[c]] = LIGHT
    if in_fill_band(et.s, et.n):
        g = 1 << (et.n - 2)
        hits = {g, et.s % g}
        lab = np.array(et.labels)
        r = lab[:, None]
        c = lab[None, :]
        mark = np.isin(r ^ c, list(hits)) & (et.cells != 0)
        img[mark] = DARK
    return img


def pgm_bytes(img):
    h, w = img.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(img, dtype=np.uint8).tobytes()


def render_et(et, path, tiers=True):
    path = Path(path)
    path.write_bytes(pgm_bytes(shade(et, tiers)))
    return path


def read_pgm(path):
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM file")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w)


def flipbook(s_values, n, directory, tiers=True):
    """One PGM per strut constant, named ``et_n{n}_s{s}.pgm``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return [render_et(build_et(s, n), directory / f"et_n{n}_s{s:03d}.pgm", tiers) for s in s_values]
