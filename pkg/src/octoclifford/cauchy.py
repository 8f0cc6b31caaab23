"""Explicit half-space kernels and quadrature Cauchy integrals.

Octonion integrands are always evaluated as kernel * (value) with the kernel
on the left; on the sphere the nested grouping kernel * (normal * F) is the
default and the other grouping is available as a non-associativity witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma, pi

import numpy as np

from .grid import Field, integrate_weighted
from .octonion import DIM as OCT_DIM
from .octonion import conj_arrays, mul_arrays

KERNELS = ("poisson", "conj_poisson", "cauchy_oct", "cauchy_clifford")


def omega(n: int) -> float:
    """Surface area of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1:
        raise ValueError(f"omega needs n >= 1, got {n}")
    return 2 * pi ** (n / 2) / gamma(n / 2)


@dataclass(frozen=True)
class KernelEval:
    """A closed-form kernel; ``n`` is the ambient dimension (boundary is R^(n-1))."""

    kernel: str
    t: float = 1.0
    j: int = 1
    n: int = 8

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ValueError(f"unknown kernel {self.kernel!r}; choose from {KERNELS}")
        if self.kernel in ("poisson", "conj_poisson") and self.t <= 0:
            raise ValueError("Poisson kernels need t > 0")

    def __call__(self, points) -> np.ndarray:
        return kernel_eval(self.kernel, {"t": self.t, "j": self.j, "n": self.n}, points)


def kernel_eval(kernel: str, params: dict, points) -> np.ndarray:
    """Evaluate a kernel at rows of ``points``.

    poisson / conj_poisson take boundary points in R^(n-1) and return scalars;
    cauchy_oct returns conj(x)/|x|^8 and cauchy_clifford x/|x|^n for x in R^n.
    """
    x = np.atleast_2d(np.asarray(points, dtype=float))
    n = int(params.get("n", x.shape[1] + (1 if kernel in ("poisson", "conj_poisson") else 0)))
    r2 = np.sum(x**2, axis=1)
    if kernel in ("poisson", "conj_poisson"):
        t = float(params["t"])
        if t <= 0:
            raise ValueError("Poisson kernels need t > 0")
        if x.shape[1] != n - 1:
            raise ValueError(f"boundary points must have {n - 1} coordinates")
        denom = (t * t + r2) ** (n / 2)
        if kernel == "poisson":
            return (2 / omega(n)) * t / denom
        j = int(params["j"])
        if not 1 <= j <= n - 1:
            raise ValueError(f"conjugate Poisson index must be in 1..{n - 1}")
        return (2 / omega(n)) * x[:, j - 1] / denom
    if kernel == "cauchy_oct" and x.shape[1] != OCT_DIM:
        raise ValueError("the octonionic Cauchy kernel lives on R^8")
    if kernel == "cauchy_clifford" and x.shape[1] != n:
        raise ValueError(f"points must have {n} coordinates")
    if np.any(r2 == 0):
        raise ValueError("kernel evaluated at its singularity")
    if kernel == "cauchy_oct":
        return conj_arrays(x) / (r2**4)[:, None]
    return x / (r2 ** (n / 2))[:, None]


def _targets(z) -> np.ndarray:
    z = np.atleast_2d(np.asarray(z, dtype=float))
    if z.shape[1] != OCT_DIM:
        raise ValueError("interior points are (t, x1..x7)")
    if np.any(z[:, 0] <= 0):
        raise ValueError("interior points need t > 0 (the boundary itself is excluded)")
    return z


def _boundary_points(f: Field) -> np.ndarray:
    if f.spec.d != OCT_DIM - 1:
        raise ValueError("boundary data must live on a 7-dimensional grid")
    return f.spec.points()


def _half_space_weights(points: np.ndarray, target: np.ndarray) -> np.ndarray:
    """conj(z - u)/|z - u|^8 for boundary nodes u, with z - u = (t, x - u)."""
    diff = np.empty((points.shape[0], OCT_DIM))
    diff[:, 0] = target[0]
    diff[:, 1:] = target[1:] - points
    return kernel_eval("cauchy_oct", {}, diff)


def cauchy_halfspace_oct(f: Field, z) -> np.ndarray:
    """C_O f(z) = (1/omega_8) sum_u conj(z - u)/|z - u|^8 f(u) h^7.

    ``z`` is one point (8,) or a batch (M, 8); returns (8,) or (M, 8).
    """
    if f.kind != "octonion":
        raise ValueError("cauchy_halfspace_oct needs octonion boundary data")
    targets = _targets(z)
    pts = _boundary_points(f)
    out = np.array([integrate_weighted(f, _half_space_weights(pts, zt)) for zt in targets]) / omega(8)
    return out[0] if np.ndim(z) == 1 else out


def cauchy_halfspace_clifford(f: Field, z) -> np.ndarray:
    """C f(z) = (1/omega_8) sum_u A(u - z) A(e_0) f(u) h^7 on spinor-pair data.

    A(u - z) A(e_0) = diag(-L_(u-z), -L_conj(u-z)), so the slots decouple:
    the first uses (z - u)/|z - u|^8 and the second conj(z - u)/|z - u|^8.
    """
    if f.kind != "spinor":
        raise ValueError("cauchy_halfspace_clifford needs spinor-pair boundary data")
    targets = _targets(z)
    pts = _boundary_points(f)
    plus = Field(f.spec, "octonion", f.data[..., :OCT_DIM])
    minus = Field(f.spec, "octonion", f.data[..., OCT_DIM:])
    rows = []
    for zt in targets:
        w = _half_space_weights(pts, zt)
        rows.append(np.concatenate([integrate_weighted(plus, conj_arrays(w)),
                                    integrate_weighted(minus, w)]))
    out = np.array(rows) / omega(8)
    return out[0] if np.ndim(z) == 1 else out


@dataclass(frozen=True)
class MCEstimate:
    value: np.ndarray
    stderr: np.ndarray
    samples: int
    seed: int


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    """Counter-based stream for chunk ``chunk``: reproducible under any chunk scheduling."""
    return np.random.Generator(np.random.Philox(key=int(seed) + (int(chunk) << 64)))


def sphere_samples(rng: np.random.Generator, count: int, dim: int = OCT_DIM) -> np.ndarray:
    g = rng.standard_normal((count, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def cauchy_sphere_oct(fn, center, radius: float, z, budget: int = 10**6, seed: int = 0,
                      grouping: str = "nested", chunk_size: int = 200_000) -> MCEstimate:
    """Monte Carlo value of (1/omega_8) int_{|x-a|=r} K(x - z) (eta(x) F(x)) dS.

    K(y) = conj(y)/|y|^8 and eta the outer unit normal. ``grouping='swapped'``
    evaluates (K eta) F instead. ``fn`` maps (M, 8) points to (M, 8) octonions.
    """
    center = np.asarray(center, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.linalg.norm(z - center) >= radius:
        raise ValueError("z must lie strictly inside the sphere")
    if grouping not in ("nested", "swapped"):
        raise ValueError("grouping is 'nested' or 'swapped'")
    total = np.zeros(OCT_DIM)
    total_sq = np.zeros(OCT_DIM)
    done = 0
    chunk = 0
    while done < budget:
        count = min(chunk_size, budget - done)
        eta = sphere_samples(chunk_generator(seed, chunk), count)
        x = center + radius * eta
        k = kernel_eval("cauchy_oct", {}, x - z)
        values = np.asarray(fn(x), dtype=float)
        if grouping == "nested":
            integrand = mul_arrays(k, mul_arrays(eta, values))
        else:
            integrand = mul_arrays(mul_arrays(k, eta), values)
        total += integrand.sum(axis=0)
        total_sq += (integrand**2).sum(axis=0)
        done += count
        chunk += 1
    scale = radius**7  # |S^7_r| / omega_8
    mean = total / budget
    var = np.maximum(total_sq / budget - mean**2, 0.0)
    return MCEstimate(scale * mean, scale * np.sqrt(var / budget), budget, seed)


def translated_kernel(b):
    """F(x) = conj(x - b)/|x - b|^8, octonionic analytic away from b."""
    b = np.asarray(b, dtype=float)

    def fn(x):
        return kernel_eval("cauchy_oct", {}, np.asarray(x) - b)

    return fn


def scenario_record(target, value, reference, budget=None, seed=None) -> dict:
    value = np.asarray(value, dtype=float)
    reference = np.asarray(reference, dtype=float)
    abs_err = float(np.linalg.norm(value - reference))
    ref_norm = float(np.linalg.norm(reference))
    return {
        "target": [float(v) for v in np.ravel(target)],
        "value": [float(v) for v in np.ravel(value)],
        "reference": [float(v) for v in np.ravel(reference)],
        "abs_error": abs_err,
        "rel_error": abs_err / ref_norm if ref_norm > 0 else abs_err,
        "budget": budget,
        "seed": seed,
    }
