"""XOR-indexed Cayley-Dickson algebras.

Units of the 2^N-ions are indexed ``0 .. 2^N - 1`` with ``0`` the real unit;
the product of two units carries the XOR of their indices.  Signs come from
the trip system grown by three bit-twiddling rules:

* rule 0 -- every trip of the 2^(N-1)-ions stays a trip;
* rule 1 -- ``(L, G, G + L)`` for each ``0 < L < G``;
* rule 2 -- for each inherited trip, fix one index, add ``G`` to the other
  two and swap them.

:func:`oracle_mul` is an independent route to the same products, by
recursive dimension doubling on coefficient halves.
"""

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidIndexError,
    OracleCalibrationError,
)

DEFAULT_MAX_N = 12


def max_n():
    """Largest supported dimension exponent (``ZDKIT_MAX_N``, default 12)."""
    raw = os.environ.get("ZDKIT_MAX_N")
    if not raw:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidDimensionError(f"ZDKIT_MAX_N must be an integer, got {raw!r}") from exc
    if value < 2:
        raise InvalidDimensionError(f"ZDKIT_MAX_N must be >= 2, got {value}")
    return value


def _check_n(n, minimum=1):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidDimensionError(f"dimension exponent must be an int, got {n!r}")
    if n < minimum:
        raise InvalidDimensionError(f"dimension exponent must be >= {minimum}, got {n}")
    if n > max_n():
        raise InvalidDimensionError(f"dimension exponent {n} exceeds ZDKIT_MAX_N={max_n()}")
    return int(n)


def trip_count(n):
    """Number of trips in the 2^N-ions: ``(2^N - 1)(2^N - 2) / 6``."""
    size = 1 << n
    return (size - 1) * (size - 2) // 6


def _rotate_min_first(p, q, r):
    if p < q and p < r:
        return p, q, r
    if q < r:
        return q, r, p
    return r, p, q


@dataclass(frozen=True, order=True)
class Trip:
    """Oriented XOR-closed triple with ``e_p e_q = +e_r``.

    Cyclic rotations denote the same trip; storage rotates the smallest index
    into the first slot.
    """

    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = int(self.p), int(self.q), int(self.r)
        if min(p, q, r) <= 0 or len({p, q, r}) != 3:
            raise InvalidIndexError(f"trip needs three distinct nonzero indices, got {(p, q, r)}")
        if p ^ q != r:
            raise InvalidIndexError(f"{(p, q, r)} is not XOR-closed")
        p, q, r = _rotate_min_first(p, q, r)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    def __iter__(self):
        return iter((self.p, self.q, self.r))

    def __contains__(self, index):
        return index in (self.p, self.q, self.r)

    def as_tuple(self):
        return (self.p, self.q, self.r)

    def reversed(self):
        return Trip(self.p, self.r, self.q)


@lru_cache(maxsize=None)
def trip_array(n):
    """Canonical trips of the 2^N-ions as an ``(T, 3)`` int64 array."""
    n = _check_n(n, minimum=2)
    if n == 2:
        trips = np.array([[1, 2, 3]], dtype=np.int64)
    else:
        prev = trip_array(n - 1)
        g = 1 << (n - 1)
        low = np.arange(1, g, dtype=np.int64)
        rule1 = np.stack([low, np.full_like(low, g), low + g], axis=1)
        p, q, r = prev[:, 0], prev[:, 1], prev[:, 2]
        rule2 = np.concatenate(
            [
                np.stack([p, r + g, q + g], axis=1),
                np.stack([r + g, q, p + g], axis=1),
                np.stack([q + g, p + g, r], axis=1),
            ]
        )
        trips = np.concatenate([prev, rule1, _canonical_rows(rule2)])
    trips.setflags(write=False)
    return trips


def _canonical_rows(rows):
    shift = np.argmin(rows, axis=1)
    cols = (np.arange(3)[None, :] + shift[:, None]) % 3
    return np.take_along_axis(rows, cols, axis=1)


@lru_cache(maxsize=16)
def generate_trips(n):
    """The canonical trip set of the 2^N-ions, built by rules 0, 1 and 2."""
    return frozenset(Trip(*row) for row in trip_array(n).tolist())


@dataclass(frozen=True)
class AlgebraContext:
    """Immutable multiplication data for one value of N."""

    n: int

    def __post_init__(self):
        _check_n(self.n, minimum=1)

    @property
    def size(self):
        return 1 << self.n

    @property
    def g_top(self):
        return 1 << (self.n - 1)

    @cached_property
    def trip_set(self):
        if self.n < 2:
            return frozenset()
        return generate_trips(self.n)

    @cached_property
    def sign_table(self):
        trips = trip_array(self.n) if self.n >= 2 else np.zeros((0, 3), dtype=np.int64)
        table = _kernels.sign_table(np.ascontiguousarray(trips), self.size)
        table.setflags(write=False)
        return table

    def check_index(self, i):
        if not 0 <= i < self.size:
            raise InvalidIndexError(f"unit index {i} outside [0, {self.size}) for N={self.n}")

    def sign(self, i, j):
        return int(self.sign_table[i, j])


@lru_cache(maxsize=None)
def context(n):
    """Shared :class:`AlgebraContext` for ``n``."""
    return AlgebraContext(_check_n(n))


def unit_product(i, j, ctx):
    """``e_i e_j`` as ``(index, sign)``."""
    ctx.check_index(i)
    ctx.check_index(j)
    return i ^ j, ctx.sign(i, j)


def orient(p, q, ctx):
    """The trip through ``p`` and ``q`` written in CPO order."""
    if p == q or not p or not q:
        raise InvalidIndexError(f"need two distinct nonzero indices, got {(p, q)}")
    ctx.check_index(p)
    ctx.check_index(q)
    if ctx.sign(p, q) > 0:
        return Trip(p, q, p ^ q)
    return Trip(q, p, p ^ q)


def is_cpo(p, q, r, ctx):
    """True when ``e_p e_q = +e_r``."""
    return p ^ q == r and ctx.sign(p, q) > 0


class HyperNum:
    """Exact integer element of the 2^N-ions."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        arr = np.array(coeffs, dtype=np.int64)
        if arr.ndim != 1 or arr.shape[0] != 1 << n:
            raise DimensionMismatchError(f"expected {1 << n} coefficients for N={n}, got {arr.shape}")
        arr.setflags(write=False)
        self.n = n
        self.coeffs = arr

    @classmethod
    def zero(cls, n):
        return cls(n, np.zeros(1 << n, dtype=np.int64))

    @classmethod
    def basis(cls, i, n, coeff=1):
        coeffs = np.zeros(1 << n, dtype=np.int64)
        if not 0 <= i < coeffs.shape[0]:
            raise InvalidIndexError(f"unit index {i} outside [0, {coeffs.shape[0]}) for N={n}")
        coeffs[i] = coeff
        return cls(n, coeffs)

    @classmethod
    def from_terms(cls, terms, n):
        """Build from a ``{index: coefficient}`` mapping."""
        coeffs = np.zeros(1 << n, dtype=np.int64)
        for i, c in terms.items():
            if not 0 <= i < coeffs.shape[0]:
                raise InvalidIndexError(f"unit index {i} outside [0, {coeffs.shape[0]}) for N={n}")
            coeffs[i] += c
        return cls(n, coeffs)

    def terms(self):
        return {int(i): int(self.coeffs[i]) for i in np.flatnonzero(self.coeffs)}

    def is_zero(self):
        return not self.coeffs.any()

    def conj(self):
        out = -self.coeffs
        out[0] = self.coeffs[0]
        return HyperNum(self.n, out)

    def _check_n(self, other):
        if other.n != self.n:
            raise DimensionMismatchError(f"N mismatch: {self.n} vs {other.n}")

    def __eq__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.coeffs.tobytes()))

    def __add__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        self._check_n(other)
        return HyperNum(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, HyperNum):
            return NotImplemented
        self._check_n(other)
        return HyperNum(self.n, self.coeffs - other.coeffs)

    def __neg__(self):
        return HyperNum(self.n, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return HyperNum(self.n, self.coeffs * int(other))
        if isinstance(other, HyperNum):
            return mul(self, other, context(self.n))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return HyperNum(self.n, self.coeffs * int(other))
        return NotImplemented

    def __repr__(self):
        terms = self.terms()
        if not terms:
            return f"HyperNum(n={self.n}, 0)"
        body = " ".join(f"{c:+d}*e{i}" for i, c in sorted(terms.items()))
        return f"HyperNum(n={self.n}, {body})"


def mul(x, y, ctx=None):
    """Bilinear product through the trip-derived sign table."""
    if x.n != y.n:
        raise DimensionMismatchError(f"N mismatch: {x.n} vs {y.n}")
    if ctx is None:
        ctx = context(x.n)
    elif ctx.n != x.n:
        raise DimensionMismatchError(f"context N={ctx.n} does not match operands N={x.n}")
    return HyperNum(x.n, _kernels.dense_mul(x.coeffs, y.coeffs, ctx.sign_table))


# -- independent doubling oracle ---------------------------------------------


def _conj(v):
    return [v[0]] + [-c for c in v[1:]]


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def _doubling(variant):
    def product(x, y):
        if len(x) == 1:
            return [x[0] * y[0]]
        h = len(x) // 2
        a, b, c, d = x[:h], x[h:], y[:h], y[h:]
        return variant(product, a, b, c, d)

    return product


# (a, b)(c, d) for the usual placements of the conjugates
DOUBLING_VARIANTS = {
    "ac-d*b|da+bc*": lambda m, a, b, c, d: _sub(m(a, c), m(_conj(d), b)) + _add(m(d, a), m(b, _conj(c))),
    "ac-bd*|a*d+cb": lambda m, a, b, c, d: _sub(m(a, c), m(b, _conj(d))) + _add(m(_conj(a), d), m(c, b)),
    "ac-b*d|da*+bc": lambda m, a, b, c, d: _sub(m(a, c), m(_conj(b), d)) + _add(m(d, _conj(a)), m(b, c)),
    "ac-db*|a*d+cb": lambda m, a, b, c, d: _sub(m(a, c), m(d, _conj(b))) + _add(m(_conj(a), d), m(c, b)),
}


def _unit(i, n):
    v = [0] * (1 << n)
    v[i] = 1
    return v


@lru_cache(maxsize=None)
def calibrated_variant():
    """Name of the doubling formula that reproduces the rule-built trips.

    Candidates are tested against the octonion and sedenion trip sets; exactly
    one must match.
    """
    matches = []
    for name, variant in DOUBLING_VARIANTS.items():
        product = _doubling(variant)
        ok = all(
            product(_unit(p, n), _unit(q, n)) == _unit(r, n)
            for n in (3, 4)
            for p, q, r in trip_array(n).tolist()
        )
        if ok:
            matches.append(name)
    if len(matches) != 1:
        raise OracleCalibrationError(f"expected exactly one matching doubling variant, got {matches}")
    return matches[0]


def oracle_product(x, y):
    """Doubling-formula product of two equal-length integer lists."""
    if len(x) != len(y):
        raise DimensionMismatchError(f"length mismatch: {len(x)} vs {len(y)}")
    return _doubling(DOUBLING_VARIANTS[calibrated_variant()])(list(x), list(y))


def oracle_mul(x, y):
    """Product by recursive Cayley-Dickson doubling, independent of the trips."""
    if x.n != y.n:
        raise DimensionMismatchError(f"N mismatch: {x.n} vs {y.n}")
    return HyperNum(x.n, oracle_product(x.coeffs.tolist(), y.coeffs.tolist()))
