"""Universal Clifford algebra Cl_n (n <= 8) with e_i e_j + e_j e_i = -2 delta_ij.

Multivectors are dense: ``coeffs[k]`` multiplies the blade ``blades(n)[k]``,
blades being bitmasks listed in graded-lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

MAX_DIM = 8


@lru_cache(maxsize=None)
def blades(n: int) -> tuple[int, ...]:
    """Subset bitmasks of {0..n-1}: by grade, then lexicographically."""
    out = []
    for grade in range(n + 1):
        for combo in combinations(range(n), grade):
            out.append(sum(1 << i for i in combo))
    return tuple(out)


@lru_cache(maxsize=None)
def blade_index(n: int) -> dict[int, int]:
    return {mask: k for k, mask in enumerate(blades(n))}


def mask_to_indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def indices_to_mask(indices: Sequence[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def blade_product_sign(a: int, b: int) -> int:
    """Sign of e_A e_B = sign * e_(A xor B).

    Reordering the concatenated generator list contributes (-1)^inversions;
    each shared generator then contracts as e_i e_i = -1.
    """
    inversions = 0
    shifted = a >> 1
    while shifted:
        inversions += bin(shifted & b).count("1")
        shifted >>= 1
    contractions = bin(a & b).count("1")
    return -1 if (inversions + contractions) % 2 else 1


def _zero_like(v):
    return Fraction(0) if isinstance(v, (int, Fraction)) else 0.0


@dataclass(frozen=True)
class Multivector:
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {self.n}")
        c = np.array(self.coeffs, dtype=object if _is_exact(self.coeffs) else float)
        if c.shape != (2**self.n,):
            raise ValueError(f"Cl_{self.n} needs {2**self.n} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def scalar(cls, n: int, value=1) -> "Multivector":
        c = [value * 0] * 2**n
        c[0] = value
        return cls(n, c)

    @classmethod
    def blade(cls, n: int, indices: Sequence[int], value=1) -> "Multivector":
        """The ordered product e_{i1} e_{i2} ... (indices may be unsorted or repeated)."""
        out = cls.scalar(n, value)
        for i in indices:
            out = geometric_product(out, cls.generator(n, i))
        return out

    @classmethod
    def generator(cls, n: int, i: int) -> "Multivector":
        if not 0 <= i < n:
            raise ValueError(f"generator e{i} not in Cl_{n}")
        c = [0] * 2**n
        c[blade_index(n)[1 << i]] = 1
        return cls(n, c)

    def coefficient(self, indices: Sequence[int]):
        return self.coeffs[blade_index(self.n)[indices_to_mask(indices)]]

    @property
    def exact(self) -> bool:
        return self.coeffs.dtype == object

    def __add__(self, other: "Multivector") -> "Multivector":
        _same_dim(self, other)
        return Multivector(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        _same_dim(self, other)
        return Multivector(self.n, self.coeffs - other.coeffs)

    def __neg__(self) -> "Multivector":
        return Multivector(self.n, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self.n, self.coeffs * other)

    def __rmul__(self, other):
        return Multivector(self.n, other * self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector) or other.n != self.n:
            return NotImplemented
        return bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs)))

    def __repr__(self) -> str:
        terms = []
        for mask, c in zip(blades(self.n), self.coeffs):
            if c != 0:
                name = "".join(f"e{i}" for i in mask_to_indices(mask)) or "1"
                terms.append(f"{c}*{name}")
        return f"Multivector(n={self.n}, {' + '.join(terms) or '0'})"


def _is_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in np.ravel(values))


def _same_dim(a: Multivector, b: Multivector) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: Cl_{a.n} vs Cl_{b.n}")


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    _same_dim(a, b)
    masks = blades(a.n)
    index = blade_index(a.n)
    out = [_zero_like(a.coeffs[0])] * len(masks) if a.exact and b.exact else [0.0] * len(masks)
    nz_b = [(mb, cb) for mb, cb in zip(masks, b.coeffs) if cb != 0]
    for ma, ca in zip(masks, a.coeffs):
        if ca == 0:
            continue
        for mb, cb in nz_b:
            k = index[ma ^ mb]
            if blade_product_sign(ma, mb) > 0:
                out[k] += ca * cb
            else:
                out[k] -= ca * cb
    return Multivector(a.n, out)


def star_sign(grade: int) -> int:
    return -1 if (grade * (grade + 1) // 2) % 2 else 1


def star_conj(a: Multivector) -> Multivector:
    """Clifford conjugation: e_A -> (-1)^{|A|(|A|+1)/2} e_A."""
    signs = [star_sign(bin(m).count("1")) for m in blades(a.n)]
    return Multivector(a.n, [s * c for s, c in zip(signs, a.coeffs)])


def embed_vector(v: Sequence, n: int | None = None) -> Multivector:
    """Grade-one multivector sum_i v_i e_i."""
    n = len(v) if n is None else n
    if len(v) != n:
        raise ValueError(f"vector of length {len(v)} cannot be embedded in Cl_{n}")
    index = blade_index(n)
    zero = _zero_like(v[0]) if len(v) else 0
    c = [zero] * 2**n
    for i, vi in enumerate(v):
        c[index[1 << i]] = vi
    return Multivector(n, c)
