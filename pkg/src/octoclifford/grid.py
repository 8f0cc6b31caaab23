"""Fields sampled on uniform periodic grids and finite-difference operators.

Field data has shape ``spec.shape + (components,)``; all stencils wrap
periodically, so test data must be band-limited or negligible at the box edge
(polynomial fields are only meaningful away from the outermost layer).
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .octonion import DIM as OCT_DIM
from .octonion import STRUCTURE, conj_arrays, unit_left_mul

KINDS = {"real": 1, "octonion": 8, "spinor": 16}
KIND_TAGS = {"real": 0, "octonion": 1, "spinor": 2}
MAGIC = b"CDF1"


@dataclass(frozen=True)
class GridSpec:
    d: int
    n: tuple[int, ...]
    length: tuple[float, ...]
    origin: tuple[float, ...] = None

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        length = tuple(float(v) for v in self.length)
        if self.d < 1 or len(n) != self.d or len(length) != self.d:
            raise ValueError("GridSpec needs d >= 1 and one N and one L per axis")
        for v in n:
            if v < 4 or v % 2:
                raise ValueError(f"points per axis must be even and >= 4, got {v}")
        if any(not np.isfinite(v) or v <= 0 for v in length):
            raise ValueError("axis lengths must be positive")
        origin = tuple(-v / 2 for v in length) if self.origin is None else tuple(float(v) for v in self.origin)
        if len(origin) != self.d:
            raise ValueError("origin must have one entry per axis")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "origin", origin)

    @classmethod
    def cube(cls, d: int, n: int, length: float, origin=None) -> "GridSpec":
        if origin is not None and np.ndim(origin) == 0:
            origin = (origin,) * d
        return cls(d, (n,) * d, (length,) * d, origin)

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(L / n for L, n in zip(self.length, self.n))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.h))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def size(self) -> int:
        return int(np.prod(self.n))

    @property
    def centered(self) -> bool:
        return all(np.isclose(o, -L / 2) for o, L in zip(self.origin, self.length))

    def axis(self, a: int) -> np.ndarray:
        return self.origin[a] + self.h[a] * np.arange(self.n[a])

    def points(self) -> np.ndarray:
        """All grid points, shape (N1*...*Nd, d), row-major."""
        mesh = np.meshgrid(*[self.axis(a) for a in range(self.d)], indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


@dataclass(frozen=True)
class Field:
    spec: GridSpec
    kind: str
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        data = np.asarray(self.data, dtype=float)
        expected = self.spec.shape + (KINDS[self.kind],)
        if data.shape != expected:
            if data.size == int(np.prod(expected)):
                data = data.reshape(expected)
            else:
                raise ValueError(f"field data has shape {data.shape}, expected {expected}")
        if not np.all(np.isfinite(data)):
            raise ValueError("field values must be finite")
        data = np.ascontiguousarray(data)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def components(self) -> int:
        return KINDS[self.kind]

    def with_data(self, data: np.ndarray, kind: str | None = None) -> "Field":
        return Field(self.spec, kind or self.kind, data)

    def __add__(self, other: "Field") -> "Field":
        _compatible(self, other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other: "Field") -> "Field":
        _compatible(self, other)
        return self.with_data(self.data - other.data)

    def __neg__(self) -> "Field":
        return self.with_data(-self.data)

    def __mul__(self, scalar: float) -> "Field":
        return self.with_data(self.data * scalar)

    __rmul__ = __mul__

    def mean(self) -> np.ndarray:
        return self.data.reshape(-1, self.components).mean(axis=0)


def _compatible(a: Field, b: Field) -> None:
    if a.spec != b.spec or a.kind != b.kind:
        raise ValueError("fields live on different grids or have different kinds")


@dataclass(frozen=True)
class HalfSpaceField:
    """Slices F(t_k, .) of a half-space field plus its boundary trace."""

    boundary: Field
    levels: tuple[float, ...]
    slices: tuple[Field, ...]

    def __post_init__(self):
        levels = tuple(float(t) for t in self.levels)
        if len(levels) != len(self.slices):
            raise ValueError("one slice per t-level is required")
        if any(t <= 0 for t in levels) or any(a <= b for a, b in zip(levels, levels[1:])):
            raise ValueError("t-levels must be positive and strictly decreasing")
        if any(s.spec != self.boundary.spec for s in self.slices):
            raise ValueError("all slices must share the boundary grid")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "slices", tuple(self.slices))


def sample(fn: Callable[[np.ndarray], np.ndarray], spec: GridSpec, kind: str = "real") -> Field:
    """Evaluate ``fn`` on all grid points at once; ``fn`` maps (M, d) -> (M,) or (M, c)."""
    values = np.asarray(fn(spec.points()), dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError("sampled function produced non-finite values")
    return Field(spec, kind, values.reshape(spec.shape + (KINDS[kind],)))


def partial_fd(f: Field, axis: int) -> Field:
    """Centered difference (f(x + h e_a) - f(x - h e_a)) / 2h with periodic wrap."""
    if not 0 <= axis < f.spec.d:
        raise ValueError(f"axis {axis} out of range for d={f.spec.d}")
    h = f.spec.h[axis]
    data = (np.roll(f.data, -1, axis=axis) - np.roll(f.data, 1, axis=axis)) / (2 * h)
    return f.with_data(data)


def _require(f: Field, kind: str, d: int) -> None:
    if f.kind != kind or f.spec.d != d:
        raise ValueError(f"expected a {kind} field on a d={d} grid, got {f.kind} with d={f.spec.d}")


def _cauchy_sum(f: Field, conjugate: bool) -> np.ndarray:
    out = np.zeros(f.data.shape)
    for j in range(OCT_DIM):
        term = unit_left_mul(j, partial_fd(f, j).data)
        if conjugate and j > 0:
            out -= term
        else:
            out += term
    return out


def oct_cauchy_op(f: Field) -> Field:
    """D f = sum_j e_j df/dx_j with left octonion multiplication (d = 8)."""
    _require(f, "octonion", 8)
    return f.with_data(_cauchy_sum(f, conjugate=False))


def oct_cauchy_conj_op(f: Field) -> Field:
    """conj(D) f = sum_j conj(e_j) df/dx_j."""
    _require(f, "octonion", 8)
    return f.with_data(_cauchy_sum(f, conjugate=True))


def dirac8_fd(f: Field) -> Field:
    """D_8 (f1, f2) = (D f2, -conj(D) f1)."""
    _require(f, "spinor", 8)
    plus = Field(f.spec, "octonion", f.data[..., :OCT_DIM])
    minus = Field(f.spec, "octonion", f.data[..., OCT_DIM:])
    out = np.concatenate([_cauchy_sum(minus, False), -_cauchy_sum(plus, True)], axis=-1)
    return f.with_data(out)


def real_to_octonion(f: Field) -> Field:
    data = np.zeros(f.spec.shape + (OCT_DIM,))
    data[..., 0] = f.data[..., 0]
    return Field(f.spec, "octonion", data)


def laplacian_fd(f: Field) -> Field:
    """Standard (2d+1)-point periodic Laplacian."""
    out = np.zeros(f.data.shape)
    for a in range(f.spec.d):
        h = f.spec.h[a]
        out += (np.roll(f.data, -1, axis=a) + np.roll(f.data, 1, axis=a) - 2 * f.data) / h**2
    return f.with_data(out)


def pointwise_norm(f: Field) -> np.ndarray:
    return np.sqrt(np.sum(f.data**2, axis=-1))


def lp_norm(f: Field, p: float) -> float:
    """Discrete L^p norm (h^d sum |f|^p)^(1/p); |.| is the Euclidean norm of a value."""
    if p < 1:
        raise ValueError(f"L^p norm needs p >= 1, got {p}")
    mag = pointwise_norm(f).ravel()
    if np.isinf(p):
        return float(mag.max())
    return float((f.spec.cell_volume * np.sum(mag**p)) ** (1.0 / p))


def integrate_weighted(f: Field, weight) -> np.ndarray:
    """Riemann sum h^d sum_x w(x) f(x).

    ``weight`` is a callable on the (M, d) point array or a precomputed array,
    giving scalars (M,) or octonions (M, 8). Octonion weights multiply an
    octonion field from the left: w(x) f(x).
    """
    w = weight(f.spec.points()) if callable(weight) else weight
    w = np.asarray(w, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValueError("weight is not finite on the grid")
    values = f.data.reshape(-1, f.components)
    vol = f.spec.cell_volume
    if w.ndim == 1:
        return vol * (w @ values)
    if w.shape[-1] != OCT_DIM or f.kind != "octonion":
        raise ValueError("octonion weights need an octonion field")
    w = w.reshape(-1, OCT_DIM)
    # bilinearity: sum_x w(x) f(x) = T(sum_x w(x) (x) f(x))
    gram = w.T @ values
    return vol * np.einsum("ij,ijk->k", gram, STRUCTURE)


def conj_field(f: Field) -> Field:
    return f.with_data(conj_arrays(f.data))


# -- pointwise stencils: used for refinement studies on non-periodic data ---------


def laplacian_stencil_at(fn: Callable[[np.ndarray], np.ndarray], points: np.ndarray, h: float) -> np.ndarray:
    """(2d+1)-point Laplacian of ``fn`` at each row of ``points``."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    d = points.shape[1]
    centre = np.asarray(fn(points))
    out = -2 * d * centre
    for a in range(d):
        step = np.zeros(d)
        step[a] = h
        out = out + np.asarray(fn(points + step)) + np.asarray(fn(points - step))
    return out / h**2


def oct_cauchy_stencil_at(fn: Callable[[np.ndarray], np.ndarray], points: np.ndarray, h: float) -> np.ndarray:
    """Centered-difference D fn at each point; ``fn`` maps (M, 8) -> (M, 8)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.zeros((points.shape[0], OCT_DIM))
    for j in range(OCT_DIM):
        step = np.zeros(OCT_DIM)
        step[j] = h
        deriv = (np.asarray(fn(points + step)) - np.asarray(fn(points - step))) / (2 * h)
        out += unit_left_mul(j, deriv)
    return out


# -- dump / load --------------------------------------------------------------


def dump_csv(f: Field, path) -> None:
    pts = f.spec.points()
    vals = f.data.reshape(-1, f.components)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{a}" for a in range(f.spec.d)] + [f"c{k}" for k in range(f.components)])
        for p, v in zip(pts, vals):
            w.writerow([repr(float(x)) for x in p] + [repr(float(x)) for x in v])


def load_csv(path, kind: str | None = None) -> Field:
    """Read a CSV dump; the grid is recovered from the coordinate columns."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float)
    d = sum(1 for name in header if name.startswith("x"))
    comps = len(header) - d
    if kind is None:
        kind = {v: k for k, v in KINDS.items()}[comps]
    if KINDS[kind] != comps:
        raise ValueError(f"CSV has {comps} components, kind {kind} needs {KINDS[kind]}")
    n, length, origin = [], [], []
    for a in range(d):
        ax = np.unique(body[:, a])
        step = ax[1] - ax[0]
        n.append(len(ax))
        length.append(step * len(ax))
        origin.append(ax[0])
    spec = GridSpec(d, tuple(n), tuple(length), tuple(origin))
    return Field(spec, kind, body[:, d:])


def dump_binary(f: Field, path) -> None:
    """Little-endian: b'CDF1', uint32 d, uint32 kind tag, uint32 N[d], float64 L[d], float64 data."""
    if not f.spec.centered:
        raise ValueError("binary dumps store centered grids (origin = -L/2) only")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", f.spec.d, KIND_TAGS[f.kind]))
        fh.write(struct.pack(f"<{f.spec.d}I", *f.spec.n))
        fh.write(struct.pack(f"<{f.spec.d}d", *f.spec.length))
        fh.write(f.data.astype("<f8").tobytes())


def load_binary(path) -> Field:
    raw = Path(path).read_bytes()
    if raw[:4] != MAGIC:
        raise ValueError("not a CDF1 field dump")
    d, tag = struct.unpack_from("<II", raw, 4)
    offset = 12
    n = struct.unpack_from(f"<{d}I", raw, offset)
    offset += 4 * d
    length = struct.unpack_from(f"<{d}d", raw, offset)
    offset += 8 * d
    kind = {v: k for k, v in KIND_TAGS.items()}[tag]
    spec = GridSpec(d, n, length)
    data = np.frombuffer(raw, dtype="<f8", offset=offset)
    return Field(spec, kind, data.astype(float))


def load_field(path) -> Field:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(4)
    return load_binary(path) if head == MAGIC else load_csv(path)


def dump_field(f: Field, path) -> None:
    if str(path).endswith(".csv"):
        dump_csv(f, path)
    else:
        dump_binary(f, path)
