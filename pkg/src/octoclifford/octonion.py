"""Octonion arithmetic over exact rationals or floats.

The multiplication table is generated by Cayley-Dickson doubling of the
quaternions, ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``, and then
relabelled by a fixed signed permutation so that the imaginary units follow
the cyclic Fano-plane rule ``e_i e_{i+1} = e_{i+3}`` (indices mod 7 in 1..7).
Index 0 is the real unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np

DIM = 8


def _quat_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def _quat_conj(a):
    return (a[0], -a[1], -a[2], -a[3])


def cayley_dickson_product(x: Sequence, y: Sequence) -> tuple:
    """Product on H + H*l in the raw doubling basis (1, i, j, k, l, il, jl, kl)."""
    a, b = tuple(x[:4]), tuple(x[4:])
    c, d = tuple(y[:4]), tuple(y[4:])
    first = tuple(p - q for p, q in zip(_quat_mul(a, c), _quat_mul(_quat_conj(d), b)))
    second = tuple(p + q for p, q in zip(_quat_mul(d, a), _quat_mul(b, _quat_conj(c))))
    return first + second


# new e_a = sign * (raw doubling unit), for a = 1..7
FANO_RELABEL = ((1, 1), (2, 1), (4, 1), (3, 1), (6, 1), (7, -1), (5, 1))


def _build_table(relabel=FANO_RELABEL):
    raw_of = [(0, 1)] + list(relabel)
    new_of = {raw: (a, s) for a, (raw, s) in enumerate(raw_of)}
    sign = np.zeros((DIM, DIM), dtype=np.int64)
    index = np.zeros((DIM, DIM), dtype=np.int64)
    for i in range(DIM):
        for j in range(DIM):
            ri, si = raw_of[i]
            rj, sj = raw_of[j]
            x = [0] * DIM
            y = [0] * DIM
            x[ri], y[rj] = 1, 1
            v = cayley_dickson_product(x, y)
            (rk,) = [n for n in range(DIM) if v[n]]
            k, sk = new_of[rk]
            index[i, j] = k
            sign[i, j] = si * sj * v[rk] * sk
    return sign, index


SIGN, INDEX = _build_table()
SIGN.setflags(write=False)
INDEX.setflags(write=False)


def structure_tensor(sign=SIGN, index=INDEX) -> np.ndarray:
    """T[i, j, k] with e_i e_j = sum_k T[i, j, k] e_k."""
    t = np.zeros((DIM, DIM, DIM))
    for i in range(DIM):
        for j in range(DIM):
            t[i, j, index[i, j]] = sign[i, j]
    return t


STRUCTURE = structure_tensor()
STRUCTURE.setflags(write=False)


def _check_scalar(v):
    if not isinstance(v, (Real, Fraction)):
        raise TypeError(f"octonion coefficient must be a real scalar, got {type(v).__name__}")
    return v


@dataclass(frozen=True)
class Octonion:
    """Immutable octonion ``x0 + x1 e1 + ... + x7 e7``.

    Coefficients are either all ``Fraction``/``int`` (exact kind) or floats.
    """

    coeffs: tuple

    def __post_init__(self):
        c = tuple(_check_scalar(v) for v in self.coeffs)
        if len(c) != DIM:
            raise ValueError(f"an octonion needs exactly 8 coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def unit(cls, i: int, exact: bool = True) -> "Octonion":
        one = Fraction(1) if exact else 1.0
        zero = Fraction(0) if exact else 0.0
        return cls(tuple(one if k == i else zero for k in range(DIM)))

    @classmethod
    def zero(cls, exact: bool = True) -> "Octonion":
        z = Fraction(0) if exact else 0.0
        return cls((z,) * DIM)

    @classmethod
    def from_vector(cls, v: Sequence) -> "Octonion":
        return cls(tuple(v))

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.coeffs)

    @property
    def real(self):
        return self.coeffs[0]

    def to_float(self) -> "Octonion":
        return Octonion(tuple(float(v) for v in self.coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        return Octonion(tuple(a * other for a in self.coeffs))

    def __rmul__(self, other):
        return Octonion(tuple(other * a for a in self.coeffs))

    def __truediv__(self, scalar):
        if self.exact and isinstance(scalar, (int, Fraction)):
            return Octonion(tuple(Fraction(a) / scalar for a in self.coeffs))
        return Octonion(tuple(a / scalar for a in self.coeffs))

    def conj(self) -> "Octonion":
        return oct_conj(self)

    def norm2(self):
        return sum(a * a for a in self.coeffs)

    def __abs__(self) -> float:
        return float(self.norm2()) ** 0.5

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*e{i}" for i, c in enumerate(self.coeffs) if c != 0)
        return f"Octonion({terms or '0'})"


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    out = [a.coeffs[0] * 0] * DIM
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj == 0:
                continue
            out[INDEX[i, j]] += int(SIGN[i, j]) * ai * bj
    if not (a.exact and b.exact):
        out = [float(v) for v in out]
    return Octonion(tuple(out))


def oct_conj(a: Octonion) -> Octonion:
    c = a.coeffs
    return Octonion((c[0],) + tuple(-v for v in c[1:]))


def oct_inner(p: Octonion, q: Octonion):
    """Euclidean inner product ``Re(p conj(q))``; equals the coefficient dot product."""
    return sum(a * b for a, b in zip(p.coeffs, q.coeffs))


def associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion:
    return oct_mul(oct_mul(a, b), c) - oct_mul(a, oct_mul(b, c))


def left_mul_matrix(q: Octonion) -> np.ndarray:
    """8x8 matrix of ``p -> q p``; object dtype for exact octonions."""
    dtype = object if q.exact else float
    m = np.zeros((DIM, DIM), dtype=dtype)
    if dtype is object:
        m[:] = Fraction(0)
    for i, qi in enumerate(q.coeffs):
        if qi == 0:
            continue
        for j in range(DIM):
            m[INDEX[i, j], j] += int(SIGN[i, j]) * qi
    return m


def right_mul_matrix(q: Octonion) -> np.ndarray:
    """8x8 matrix of ``p -> p q``."""
    dtype = object if q.exact else float
    m = np.zeros((DIM, DIM), dtype=dtype)
    if dtype is object:
        m[:] = Fraction(0)
    for j, qj in enumerate(q.coeffs):
        if qj == 0:
            continue
        for i in range(DIM):
            m[INDEX[i, j], i] += int(SIGN[i, j]) * qj
    return m


# -- array kernels: octonions stored along the last axis ------------------


def mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise octonion product of arrays of shape (..., 8)."""
    a = np.asarray(a)
    b = np.asarray(b)
    shape = np.broadcast_shapes(a.shape, b.shape)
    dtype = np.result_type(a, b)
    out = np.zeros(shape, dtype=dtype)
    for i in range(DIM):
        ai = a[..., i]
        for j in range(DIM):
            k = INDEX[i, j]
            if SIGN[i, j] > 0:
                out[..., k] += ai * b[..., j]
            else:
                out[..., k] -= ai * b[..., j]
    return out


def unit_left_mul(i: int, b: np.ndarray) -> np.ndarray:
    """``e_i * b`` for an array of octonions; a signed permutation of components."""
    out = np.empty_like(b)
    for j in range(DIM):
        out[..., INDEX[i, j]] = SIGN[i, j] * b[..., j]
    return out


def conj_arrays(a: np.ndarray) -> np.ndarray:
    out = -np.asarray(a)
    out[..., 0] = -out[..., 0]
    return out


def norm_arrays(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(a) ** 2, axis=-1))


def multiplication_table() -> list[list[str]]:
    """Human-readable table: entry [i][j] is e.g. ``'-e5'``."""
    rows = []
    for i in range(DIM):
        row = []
        for j in range(DIM):
            s = "-" if SIGN[i, j] < 0 else ""
            row.append(f"{s}e{INDEX[i, j]}")
        rows.append(row)
    return rows
