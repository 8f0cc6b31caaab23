import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from octoclifford import grid
from octoclifford.grid import Field, GridSpec
from octoclifford.octonion import mul_arrays


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec.cube(3, 7, 1.0)
    with pytest.raises(ValueError):
        GridSpec.cube(3, 2, 1.0)
    with pytest.raises(ValueError):
        GridSpec.cube(2, 8, -1.0)
    spec = GridSpec.cube(2, 8, 4.0)
    assert spec.origin == (-2.0, -2.0) and spec.centered
    assert spec.points().shape == (64, 2)
    assert spec.cell_volume == pytest.approx(0.25)


def test_field_validation_and_read_only():
    spec = GridSpec.cube(1, 4, 1.0)
    with pytest.raises(ValueError):
        Field(spec, "octonion", np.zeros((4, 3)))
    with pytest.raises(ValueError):
        Field(spec, "real", np.array([0, np.nan, 0, 0]))
    f = Field(spec, "real", np.arange(4.0))
    with pytest.raises(ValueError):
        f.data[0] = 1
    assert (f + f).data[3, 0] == 6 and (2 * f).data[1, 0] == 2
    with pytest.raises(ValueError):
        f + Field(GridSpec.cube(1, 6, 1.0), "real", np.zeros(6))


def test_halfspace_levels_must_decrease():
    spec = GridSpec.cube(1, 4, 1.0)
    f = Field(spec, "real", np.zeros(4))
    grid.HalfSpaceField(f, [1.0, 0.5], [f, f])
    with pytest.raises(ValueError):
        grid.HalfSpaceField(f, [0.5, 1.0], [f, f])


def test_fd_derivative_second_order():
    errs = []
    for n in (32, 64):
        spec = GridSpec.cube(2, n, 2 * np.pi)
        f = grid.sample(lambda x: np.sin(x[:, 0]) * np.cos(2 * x[:, 1]), spec)
        exact = grid.sample(lambda x: np.cos(x[:, 0]) * np.cos(2 * x[:, 1]), spec)
        errs.append(np.abs(grid.partial_fd(f, 0).data - exact.data).max())
    assert errs[0] / errs[1] == pytest.approx(4, abs=0.1)


def test_conj_dirac_composition_is_wide_laplacian():
    spec = GridSpec.cube(8, 4, 4.0)
    rng = np.random.default_rng(0)
    f = Field(spec, "octonion", rng.standard_normal(spec.shape + (8,)))
    lhs = grid.oct_cauchy_conj_op(grid.oct_cauchy_op(f)).data
    rhs = sum(grid.partial_fd(grid.partial_fd(f, j), j).data for j in range(8))
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
    lhs2 = grid.oct_cauchy_op(grid.oct_cauchy_conj_op(f)).data
    np.testing.assert_allclose(lhs2, rhs, atol=1e-10)


def test_dirac8_squares_to_minus_wide_laplacian():
    spec = GridSpec.cube(8, 4, 4.0)
    rng = np.random.default_rng(1)
    f = Field(spec, "spinor", rng.standard_normal(spec.shape + (16,)))
    lhs = grid.dirac8_fd(grid.dirac8_fd(f)).data
    rhs = sum(grid.partial_fd(grid.partial_fd(f, j), j).data for j in range(8))
    np.testing.assert_allclose(lhs, -rhs, atol=1e-10)


def test_oct_cauchy_kills_kernel_pointwise():
    # conj(x)/|x|^8 is analytic away from 0; stencil residual is O(h^2)
    def fn(x):
        r2 = np.sum(x**2, axis=1)
        out = -x / (r2**4)[:, None]
        out[:, 0] *= -1
        return out

    pt = np.array([[0.9, 0.3, -0.2, 0.1, 0.4, 0.0, -0.3, 0.2]])
    r1 = np.linalg.norm(grid.oct_cauchy_stencil_at(fn, pt, 0.02))
    r2 = np.linalg.norm(grid.oct_cauchy_stencil_at(fn, pt, 0.01))
    assert r1 / r2 == pytest.approx(4, abs=0.1)


def test_laplacian_matches_stencil_and_norms():
    spec = GridSpec.cube(2, 8, 1.0)
    fn = lambda x: np.exp(x[:, 0]) + x[:, 1] ** 2  # noqa: E731
    f = grid.sample(fn, spec)
    lap = grid.laplacian_fd(f).data[2:-2, 2:-2, 0].ravel()
    pts = spec.points().reshape(8, 8, 2)[2:-2, 2:-2].reshape(-1, 2)
    np.testing.assert_allclose(lap, grid.laplacian_stencil_at(fn, pts, spec.h[0]), rtol=1e-12)
    with pytest.raises(ValueError):
        grid.lp_norm(f, 0.5)
    assert grid.lp_norm(f, np.inf) == pytest.approx(np.abs(f.data).max())


@given(st.integers(0, 7))
def test_integrate_weighted_octonion_weight_left_multiplies(seed):
    rng = np.random.default_rng(seed)
    spec = GridSpec.cube(2, 4, 2.0)
    f = Field(spec, "octonion", rng.standard_normal(spec.shape + (8,)))
    w = rng.standard_normal((spec.size, 8))
    direct = spec.cell_volume * mul_arrays(w, f.data.reshape(-1, 8)).sum(axis=0)
    np.testing.assert_allclose(grid.integrate_weighted(f, w), direct, atol=1e-12)
    scalar = grid.integrate_weighted(f, lambda x: np.ones(len(x)))
    np.testing.assert_allclose(scalar, spec.cell_volume * f.data.reshape(-1, 8).sum(axis=0))


@pytest.mark.parametrize("suffix", [".csv", ".cdf"])
@pytest.mark.parametrize("kind", ["real", "octonion", "spinor"])
def test_dump_round_trip(tmp_path, suffix, kind):
    spec = GridSpec((2), (4, 6), (2.0, 3.0))
    rng = np.random.default_rng(2)
    f = Field(spec, kind, rng.standard_normal(spec.shape + (grid.KINDS[kind],)))
    path = tmp_path / f"f{suffix}"
    grid.dump_field(f, path)
    g = grid.load_field(path)
    assert g.kind == kind and g.spec.n == spec.n
    np.testing.assert_allclose(g.spec.length, spec.length)
    np.testing.assert_array_equal(g.data, f.data)


def test_binary_layout(tmp_path):
    spec = GridSpec.cube(1, 4, 2.0)
    f = Field(spec, "real", np.arange(4.0))
    grid.dump_binary(f, tmp_path / "f")
    raw = (tmp_path / "f").read_bytes()
    assert raw[:4] == b"CDF1" and len(raw) == 4 + 8 + 4 + 8 + 32
    with pytest.raises(ValueError):
        grid.dump_binary(Field(GridSpec.cube(1, 4, 2.0, origin=0.0), "real", np.zeros(4)), tmp_path / "g")
    (tmp_path / "bad").write_bytes(b"XXXX")
    with pytest.raises(ValueError):
        grid.load_binary(tmp_path / "bad")
