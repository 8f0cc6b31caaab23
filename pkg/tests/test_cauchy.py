import math

import numpy as np
import pytest

from octoclifford import cauchy, grid, multiplier
from octoclifford.grid import Field, GridSpec


def test_sphere_areas():
    assert cauchy.omega(2) == pytest.approx(2 * math.pi)
    assert cauchy.omega(3) == pytest.approx(4 * math.pi)
    assert cauchy.omega(7) == pytest.approx(16 * math.pi**3 / 15)
    assert cauchy.omega(8) == pytest.approx(math.pi**4 / 3)
    with pytest.raises(ValueError):
        cauchy.omega(0)


def test_kernel_values():
    # P_1(0) in R^3_+ is 1/(2 pi); Q_t^(1) vanishes on x_1 = 0
    assert cauchy.kernel_eval("poisson", {"t": 1.0, "n": 3}, [[0.0, 0.0]])[0] == pytest.approx(1 / (2 * math.pi))
    assert cauchy.kernel_eval("conj_poisson", {"t": 1.0, "j": 1, "n": 3}, [[0.0, 2.0]])[0] == 0
    x = np.array([[1.0, 0, 0, 0, 0, 0, 0, 1.0]])
    np.testing.assert_allclose(cauchy.kernel_eval("cauchy_oct", {}, x), [[1 / 16, 0, 0, 0, 0, 0, 0, -1 / 16]])
    np.testing.assert_allclose(cauchy.KernelEval("cauchy_clifford", n=3)([[0, 0, 2.0]]), [[0, 0, 0.25]])


@pytest.mark.parametrize("kernel,params,pts", [
    ("poisson", {"t": 0.0, "n": 3}, [[0.0, 0.0]]),
    ("poisson", {"t": 1.0, "n": 3}, [[0.0, 0.0, 0.0]]),
    ("conj_poisson", {"t": 1.0, "j": 3, "n": 3}, [[0.0, 0.0]]),
    ("cauchy_oct", {}, [[0.0] * 8]),
    ("cauchy_oct", {}, [[1.0] * 7]),
])
def test_kernel_errors(kernel, params, pts):
    with pytest.raises(ValueError):
        cauchy.kernel_eval(kernel, params, pts)
    with pytest.raises(ValueError):
        cauchy.KernelEval("nope")


def test_poisson_mass_by_radial_quadrature():
    from scipy import integrate

    for n in (3, 4, 8):
        d = n - 1
        mass, _ = integrate.quad(lambda r: cauchy.omega(d) * r ** (d - 1) * cauchy.kernel_eval(
            "poisson", {"t": 0.7, "n": n}, [[r] + [0.0] * (d - 1)])[0], 0, math.inf)
        assert mass == pytest.approx(1.0, abs=1e-8)


def test_translated_kernel_is_analytic():
    fn = cauchy.translated_kernel(np.full(8, 2.0))
    pt = np.zeros((1, 8))
    r1 = np.linalg.norm(grid.oct_cauchy_stencil_at(fn, pt, 0.02))
    r2 = np.linalg.norm(grid.oct_cauchy_stencil_at(fn, pt, 0.01))
    assert r1 / r2 == pytest.approx(4, abs=0.1)


def test_sphere_formula_constant_and_determinism():
    c = np.arange(1.0, 9.0)
    const = lambda x: np.broadcast_to(c, x.shape)  # noqa: E731
    z = np.array([0.1, 0, 0, 0.2, 0, 0, 0, 0])
    a = cauchy.cauchy_sphere_oct(const, np.zeros(8), 1.0, z, budget=50_000, seed=3, chunk_size=7_000)
    b = cauchy.cauchy_sphere_oct(const, np.zeros(8), 1.0, z, budget=50_000, seed=3, chunk_size=7_000)
    np.testing.assert_array_equal(a.value, b.value)
    assert np.linalg.norm(a.value - c) < 5 * np.linalg.norm(a.stderr) + 1e-3
    with pytest.raises(ValueError):
        cauchy.cauchy_sphere_oct(const, np.zeros(8), 1.0, np.full(8, 1.0))
    with pytest.raises(ValueError):
        cauchy.cauchy_sphere_oct(const, np.zeros(8), 1.0, z, grouping="other")


def test_grouping_changes_the_integrand():
    fn = cauchy.translated_kernel(np.array([3.0, 1, -1.5, 0.5, 0, 1, -0.5, 0.5]))
    z = np.array([0.2, 0, 0.1, 0, -0.1, 0, 0, 0.1])
    p = cauchy.cauchy_sphere_oct(fn, np.zeros(8), 1.0, z, budget=20_000, seed=1, grouping="nested")
    s = cauchy.cauchy_sphere_oct(fn, np.zeros(8), 1.0, z, budget=20_000, seed=1, grouping="swapped")
    assert np.linalg.norm(p.value - s.value) > 0


@pytest.fixture(scope="module")
def boundary7():
    spec = GridSpec.cube(7, 8, 8.0)
    a = np.array([0.3, 1.0, -0.5, 0.2, 0.7, -0.4, 0.1, 0.6])
    return grid.sample(lambda x: np.exp(-np.sum(x**2, axis=1) / 2)[:, None] * a, spec, "octonion")


def test_halfspace_quadrature_tracks_spectral_route(boundary7):
    spec = boundary7.spec
    t = 2 * spec.h[0]
    node = (4,) * 7
    z = np.concatenate([[t], spec.points().reshape(spec.shape + (7,))[node]])
    quad = cauchy.cauchy_halfspace_oct(boundary7, z)
    ref = multiplier.cauchy_oct_spectral(boundary7, t).data[node]
    assert np.linalg.norm(quad - ref) / np.linalg.norm(ref) < 5e-2


def test_halfspace_clifford_slots(boundary7):
    spec = boundary7.spec
    pair = Field(spec, "spinor", np.concatenate([boundary7.data, 2 * boundary7.data], axis=-1))
    z = np.array([[2.0, 0, 0, 0, 0, 0, 0, 0], [3.0, 1, 0, 0, 0, 0, 0, 0]])
    out = cauchy.cauchy_halfspace_clifford(pair, z)
    np.testing.assert_allclose(out[:, 8:], 2 * cauchy.cauchy_halfspace_oct(boundary7, z), rtol=1e-12)
    with pytest.raises(ValueError):
        cauchy.cauchy_halfspace_oct(boundary7, np.zeros(8))
    with pytest.raises(ValueError):
        cauchy.cauchy_halfspace_clifford(boundary7, z)


def test_scenario_record_fields():
    r = cauchy.scenario_record([1, 2], [1.0, 0.0], [2.0, 0.0], budget=10, seed=4)
    assert r["abs_error"] == 1.0 and r["rel_error"] == 0.5 and r["seed"] == 4
