"""FFT Fourier-multiplier engine on the periodic grid.

Convention: fhat(xi) = sum_x f(x) exp(-i xi.x) h^d with xi = 2 pi k / L, the
Riesz symbol is -i xi_j/|xi| and the Poisson symbol exp(-t|xi|). Degree-zero
multipliers send the mean (xi = 0) to zero, and the Riesz symbol is zeroed on
its own axis' Nyquist plane so real input stays real.

Boundary axis ``a`` (0-based) carries the octonion unit e_(a+1); dimension
d <= 7 uses e_1..e_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft as sfft

from .grid import KINDS, Field, GridSpec
from .octonion import DIM as OCT_DIM
from .octonion import INDEX, SIGN, unit_left_mul

MAX_HILBERT_DIM = 7


@dataclass(frozen=True)
class FrequencyGrid:
    """Integer modes and angular frequencies in the real-FFT layout."""

    spec: GridSpec
    modes: tuple[np.ndarray, ...]
    xi: tuple[np.ndarray, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(k) for k in self.modes)

    def broadcast(self, a: int, values: np.ndarray) -> np.ndarray:
        shape = [1] * self.spec.d
        shape[a] = -1
        return values.reshape(shape)

    def xi_axis(self, a: int) -> np.ndarray:
        return self.broadcast(a, self.xi[a])

    def nyquist(self, a: int) -> np.ndarray:
        return self.broadcast(a, np.abs(self.modes[a]) == self.spec.n[a] // 2)

    def abs_xi(self) -> np.ndarray:
        total = 0.0
        for a in range(self.spec.d):
            total = total + self.xi_axis(a) ** 2
        return np.sqrt(total)

    def abs_modes(self) -> np.ndarray:
        total = 0
        for a in range(self.spec.d):
            total = total + self.broadcast(a, self.modes[a]) ** 2
        return np.sqrt(total)


@lru_cache(maxsize=16)
def frequency_grid(spec: GridSpec) -> FrequencyGrid:
    modes = []
    for a, n in enumerate(spec.n):
        k = np.fft.rfftfreq(n, 1.0 / n) if a == spec.d - 1 else np.fft.fftfreq(n, 1.0 / n)
        modes.append(np.round(k).astype(int))
    xi = tuple(2 * np.pi * k / L for k, L in zip(modes, spec.length))
    return FrequencyGrid(spec, tuple(modes), xi)


@dataclass(frozen=True)
class SpectralField:
    spec: GridSpec
    kind: str
    coeffs: np.ndarray

    @property
    def freq(self) -> FrequencyGrid:
        return frequency_grid(self.spec)


def _axes(spec: GridSpec) -> tuple[int, ...]:
    return tuple(range(spec.d))


def to_spectral(f: Field) -> SpectralField:
    coeffs = sfft.rfftn(f.data, axes=_axes(f.spec)) * f.spec.cell_volume
    return SpectralField(f.spec, f.kind, coeffs)


def from_spectral(s: SpectralField) -> Field:
    data = sfft.irfftn(s.coeffs / s.spec.cell_volume, s=s.spec.shape, axes=_axes(s.spec))
    return Field(s.spec, s.kind, data)


def apply_symbol(f: Field, symbol: np.ndarray) -> Field:
    """Componentwise multiplier; ``symbol`` broadcasts against the frequency grid."""
    s = to_spectral(f)
    return from_spectral(SpectralField(s.spec, s.kind, s.coeffs * symbol[..., None]))


def riesz_symbol(spec: GridSpec, j: int) -> np.ndarray:
    """-i xi_j/|xi| for axis j (1-based), zero at xi = 0 and on the j-Nyquist plane."""
    if not 1 <= j <= spec.d:
        raise ValueError(f"Riesz index must be in 1..{spec.d}, got {j}")
    return _riesz_symbol(spec, j)


@lru_cache(maxsize=32)
def _riesz_symbol(spec: GridSpec, j: int) -> np.ndarray:
    fg = frequency_grid(spec)
    mag = fg.abs_xi()
    safe = np.where(mag > 0, mag, 1.0)
    sym = np.where(mag > 0, -1j * fg.xi_axis(j - 1) / safe, 0.0)
    sym = np.where(fg.nyquist(j - 1), 0.0, sym)
    sym.setflags(write=False)
    return sym


def poisson_symbol(spec: GridSpec, t: float) -> np.ndarray:
    if t <= 0:
        raise ValueError(f"Poisson extension needs t > 0, got {t}")
    return np.exp(-t * frequency_grid(spec).abs_xi())


def riesz(j: int, g: Field) -> Field:
    return apply_symbol(g, riesz_symbol(g.spec, j))


def poisson_extend(f: Field, t: float) -> Field:
    return apply_symbol(f, poisson_symbol(f.spec, t))


def conj_poisson(j: int, f: Field, t: float) -> Field:
    return apply_symbol(f, riesz_symbol(f.spec, j) * poisson_symbol(f.spec, t))


def _check_hilbert_dim(spec: GridSpec) -> None:
    if spec.d > MAX_HILBERT_DIM:
        raise ValueError(f"Hilbert transforms use units e_1..e_d and need d <= 7, got {spec.d}")


def _unit_mul_sum(coeffs: np.ndarray, spec: GridSpec, blocks) -> np.ndarray:
    """sum_j symbol_j * (block_j applied to the component axis), component-major."""
    comps = np.moveaxis(coeffs, -1, 0).copy()
    out = np.zeros_like(comps)
    for j in range(1, spec.d + 1):
        sym = riesz_symbol(spec, j)
        for src, dst, sign in blocks(j):
            if sign > 0:
                out[dst] += sym * comps[src]
            else:
                out[dst] -= sym * comps[src]
    return np.moveaxis(out, 0, -1)


def _left_unit_entries(j: int):
    return [(i, int(INDEX[j, i]), int(SIGN[j, i])) for i in range(OCT_DIM)]


def _generator_entries(j: int):
    """Nonzero entries of A(e_j), j >= 1: (f1, f2) -> (e_j f2, e_j f1)."""
    out = []
    for src, dst, sign in _left_unit_entries(j):
        out.append((src + OCT_DIM, dst, sign))
        out.append((src, dst + OCT_DIM, sign))
    return out


def _oct_hilbert_coeffs(coeffs: np.ndarray, spec: GridSpec) -> np.ndarray:
    """Spectrum of sum_j e_j R_j applied to an octonion spectrum."""
    return _unit_mul_sum(coeffs, spec, _left_unit_entries)


def hilbert_oct(f: Field) -> Field:
    """H_O f = -sum_j e_j R_j f."""
    if f.kind != "octonion":
        raise ValueError(f"hilbert_oct needs an octonion field, got {f.kind}")
    _check_hilbert_dim(f.spec)
    s = to_spectral(f)
    return from_spectral(SpectralField(f.spec, f.kind, -_oct_hilbert_coeffs(s.coeffs, f.spec)))


def generator_apply(i: int, data: np.ndarray) -> np.ndarray:
    """A(e_i) on spinor arrays (..., 16): (f1, f2) -> (e_i f2, -conj(e_i) f1)."""
    f1, f2 = data[..., :OCT_DIM], data[..., OCT_DIM:]
    lower = -unit_left_mul(i, f1) if i == 0 else unit_left_mul(i, f1)
    return np.concatenate([unit_left_mul(i, f2), lower], axis=-1)


def _clifford_hilbert_coeffs(coeffs: np.ndarray, spec: GridSpec) -> np.ndarray:
    return _unit_mul_sum(coeffs, spec, _generator_entries)


def hilbert_clifford(f: Field) -> Field:
    """H f = sum_j A(e_j) R_j f on spinor-pair fields."""
    if f.kind != "spinor":
        raise ValueError(f"hilbert_clifford needs a spinor field, got {f.kind}")
    _check_hilbert_dim(f.spec)
    s = to_spectral(f)
    return from_spectral(SpectralField(f.spec, f.kind, _clifford_hilbert_coeffs(s.coeffs, f.spec)))


def e0_hilbert(f: Field) -> Field:
    """A(e_0) H f, the boundary operator whose fixed points are Hardy boundary values."""
    h = hilbert_clifford(f)
    return h.with_data(generator_apply(0, h.data))


def hardy_project_oct(f: Field) -> Field:
    """(I + H_O) f / 2."""
    return (f + hilbert_oct(f)) * 0.5


def hardy_project_clifford(f: Field) -> Field:
    """(I + e_0 H) f / 2."""
    return (f + e0_hilbert(f)) * 0.5


def cauchy_oct_spectral(f: Field, t: float) -> Field:
    """Octonionic Cauchy integral at height t: P_t * (I + H_O) f / 2."""
    return poisson_extend(hardy_project_oct(f), t)


def evaluate_at(f: Field, points: np.ndarray) -> np.ndarray:
    """Trigonometric interpolant of ``f`` at arbitrary points, shape (M, components)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    spec = f.spec
    coeffs = np.fft.fftn(f.data, axes=_axes(spec)) / spec.size
    out = np.zeros((points.shape[0], f.components))
    for m, x in enumerate(points):
        phase = 1.0
        for a in range(spec.d):
            k = np.fft.fftfreq(spec.n[a], 1.0 / spec.n[a])
            shape = [1] * spec.d
            shape[a] = -1
            phase = phase * np.exp(2j * np.pi * k * (x[a] - spec.origin[a]) / spec.length[a]).reshape(shape)
        out[m] = np.real(np.tensordot(phase, coeffs, axes=(tuple(range(spec.d)), tuple(range(spec.d)))))
    return out


def random_bandlimited(spec: GridSpec, kind: str, seed: int, kmax: float | None = None,
                       exclude_axis: int | None = None) -> Field:
    """Seeded Gaussian field with integer modes 0 < |k| <= kmax (default N/4).

    ``exclude_axis`` (1-based) keeps only modes with k_axis = 0.
    """
    kmax = min(spec.n) / 4 if kmax is None else kmax
    rng = np.random.default_rng(seed)
    comps = KINDS[kind]
    noise = rng.standard_normal(spec.shape + (comps,))
    coeffs = sfft.rfftn(noise, axes=_axes(spec))
    fg = frequency_grid(spec)
    keep = (fg.abs_modes() <= kmax) & (fg.abs_modes() > 0)
    if exclude_axis is not None:
        keep = keep & (fg.broadcast(exclude_axis - 1, fg.modes[exclude_axis - 1]) == 0)
    coeffs = coeffs * keep[..., None]
    data = sfft.irfftn(coeffs, s=spec.shape, axes=_axes(spec))
    scale = np.sqrt(np.mean(data**2))
    return Field(spec, kind, data / scale if scale > 0 else data)


def mean_zero(f: Field) -> Field:
    return f.with_data(f.data - f.mean())


def derivative_symbol(spec: GridSpec, axis: int) -> np.ndarray:
    """i xi_axis (axis 0-based), zeroed on that axis' Nyquist plane."""
    fg = frequency_grid(spec)
    return np.where(fg.nyquist(axis), 0.0, 1j * fg.xi_axis(axis))


def spectral_derivative(f: Field, axis: int) -> Field:
    """Exact derivative of the trigonometric interpolant along ``axis`` (0-based)."""
    return apply_symbol(f, derivative_symbol(f.spec, axis))


def resample(f: Field, n: int) -> Field:
    """Same trigonometric polynomial on an n^d grid (modes must fit below both Nyquists)."""
    spec = GridSpec(f.spec.d, (n,) * f.spec.d, f.spec.length, f.spec.origin)
    full = np.fft.fftn(f.data, axes=_axes(f.spec))
    out = np.zeros(spec.shape + (f.components,), dtype=complex)
    src = [np.fft.fftfreq(m, 1.0 / m).round().astype(int) for m in f.spec.n]
    keep = [np.abs(k) < min(m, n) // 2 for k, m in zip(src, f.spec.n)]
    sel = np.ix_(*[np.nonzero(k)[0] for k in keep])
    dst = np.ix_(*[np.mod(k[kk], n) for k, kk in zip(src, keep)])
    out[dst] = full[sel] * (spec.size / f.spec.size)
    return Field(spec, f.kind, np.real(np.fft.ifftn(out, axes=_axes(spec))))
