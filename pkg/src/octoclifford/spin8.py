"""Cl_8 acting on the spinor space O + O through A(q) = [[0, L_q], [-L_conj(q), 0]].

A spinor pair is stored as a 16-vector (plus coefficients, then minus).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .clifford import blades, mask_to_indices
from .octonion import DIM, Octonion, left_mul_matrix, oct_conj


@dataclass(frozen=True)
class SpinorPair:
    plus: Octonion
    minus: Octonion

    @classmethod
    def from_vector(cls, v: Sequence) -> "SpinorPair":
        if len(v) != 2 * DIM:
            raise ValueError(f"a spinor pair has 16 components, got {len(v)}")
        return cls(Octonion(tuple(v[:DIM])), Octonion(tuple(v[DIM:])))

    def to_vector(self) -> np.ndarray:
        dtype = object if self.plus.exact and self.minus.exact else float
        return np.array(self.plus.coeffs + self.minus.coeffs, dtype=dtype)

    def __add__(self, other: "SpinorPair") -> "SpinorPair":
        return SpinorPair(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other: "SpinorPair") -> "SpinorPair":
        return SpinorPair(self.plus - other.plus, self.minus - other.minus)

    def __neg__(self) -> "SpinorPair":
        return SpinorPair(-self.plus, -self.minus)


@dataclass(frozen=True)
class Splitting:
    """Coefficients of s = h0_part*(1, 1) + h1_part*(1, -1)."""

    h0_part: Octonion
    h1_part: Octonion

    def reconstruct(self) -> SpinorPair:
        return SpinorPair(self.h0_part + self.h1_part, self.h0_part - self.h1_part)


def _as_octonion(q) -> Octonion:
    return q if isinstance(q, Octonion) else Octonion(tuple(q))


def rep_vector(q) -> np.ndarray:
    """16x16 image A(q) of the vector q = sum q_i e_i (e_0 the real unit)."""
    q = _as_octonion(q)
    upper = left_mul_matrix(q)
    lower = -left_mul_matrix(oct_conj(q))
    m = np.zeros((2 * DIM, 2 * DIM), dtype=upper.dtype)
    if m.dtype == object:
        m[:] = Fraction(0)
    m[:DIM, DIM:] = upper
    m[DIM:, :DIM] = lower
    return m


def _identity(exact: bool) -> np.ndarray:
    if exact:
        m = np.full((2 * DIM, 2 * DIM), Fraction(0), dtype=object)
        for i in range(2 * DIM):
            m[i, i] = Fraction(1)
        return m
    return np.eye(2 * DIM)


def generator(i: int, exact: bool = True) -> np.ndarray:
    return rep_vector(Octonion.unit(i, exact=exact))


def rep_blade(indices: Iterable[int], exact: bool = True) -> np.ndarray:
    """Ordered product A(e_i1) A(e_i2) ... over the listed generators."""
    m = _identity(exact)
    for i in indices:
        m = m @ generator(i, exact)
    return m


def blade_images(exact: bool = True) -> list[np.ndarray]:
    """Images of all 256 blades of Cl_8, in the clifford module's blade order."""
    return [rep_blade(mask_to_indices(mask), exact) for mask in blades(DIM)]


def apply(m: np.ndarray, s: SpinorPair) -> SpinorPair:
    return SpinorPair.from_vector(list(m @ s.to_vector()))


def split(s: SpinorPair) -> Splitting:
    return Splitting((s.plus + s.minus) / 2, (s.plus - s.minus) / 2)


def tan_projection(s: SpinorPair) -> SpinorPair:
    """Projection onto H0 = O(1, 1) along e0 H0 = O(1, -1)."""
    p = (s.plus + s.minus) / 2
    return SpinorPair(p, p)


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination on Fractions (sparse row dicts)."""
    work = []
    for r in rows:
        d = {j: Fraction(v) for j, v in enumerate(r) if v != 0}
        if d:
            work.append(d)
    rank = 0
    pivots: dict[int, dict] = {}
    for row in work:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                pivots[col] = row
                rank += 1
                break
            prow = pivots[col]
            factor = row[col] / prow[col]
            for j, v in prow.items():
                nv = row.get(j, 0) - factor * v
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
    return rank
