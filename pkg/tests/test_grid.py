"""Grid construction and the two bidiagonal difference operators."""

import numpy as np
import pytest

from msdiff import ValidationError, build_grid, diff_backward, diff_forward
from msdiff.errors import GridMismatchError


class TestBuildGrid:
    def test_default_resolution_grid(self):
        grid = build_grid(140)
        assert grid.n_nodes == 141
        assert grid.dx == 1.0 / 140
        assert abs(grid.dx * grid.j_max - 1.0) < 1e-15

    def test_minimal_grid_nodes(self):
        grid = build_grid(2)
        assert grid.node_positions().tolist() == [0.0, 0.5, 1.0]

    @pytest.mark.parametrize("bad", [1, 0, -3])
    def test_rejects_degenerate(self, bad):
        with pytest.raises(ValidationError):
            build_grid(bad)

    def test_positions_hit_representable_fractions(self):
        x = build_grid(140).node_positions()
        assert x[35] == 0.25 and x[70] == 0.5 and x[105] == 0.75 and x[140] == 1.0


class TestDiffForward:
    def test_constant_field(self):
        grid = build_grid(8)
        out = diff_forward(np.full(9, 3.0), grid)
        assert out[0] == -3.0 / grid.dx
        assert np.all(out[1:] == 0.0)

    def test_node_index_field_j2(self):
        # Hand application of the 3x3 matrix at J = 2 to the field (0, 1, 2).
        grid = build_grid(2)
        out = diff_forward(np.array([0.0, 1.0, 2.0]), grid)
        assert out.tolist() == [0.0, (0.0 - 1.0) / 0.5, (1.0 - 2.0) / 0.5]

    def test_linear_positions_give_minus_one(self):
        # Dyadic node count keeps every position and difference exact.
        grid = build_grid(8)
        out = diff_forward(grid.node_positions(), grid)
        assert out[0] == 0.0
        assert np.all(out[1:] == -1.0)

    def test_zero_field(self):
        grid = build_grid(5)
        assert np.all(diff_forward(np.zeros(6), grid) == 0.0)

    def test_length_mismatch(self):
        with pytest.raises(GridMismatchError):
            diff_forward(np.zeros(7), build_grid(7))


class TestDiffBackward:
    def test_constant_field(self):
        grid = build_grid(8)
        out = diff_backward(np.full(9, 2.5), grid)
        assert np.all(out[:-1] == 0.0)
        assert out[-1] == -2.5 / grid.dx

    def test_linear_field_j4(self):
        # Hand application at J = 4: forward difference of x is exactly 1.
        grid = build_grid(4)
        out = diff_backward(grid.node_positions(), grid)
        assert np.all(out[:-1] == 1.0)
        assert out[-1] == -1.0 / grid.dx

    def test_zero_field(self):
        grid = build_grid(5)
        assert np.all(diff_backward(np.zeros(6), grid) == 0.0)

    def test_length_mismatch(self):
        with pytest.raises(GridMismatchError):
            diff_backward(np.zeros(6), build_grid(7))


class TestOperatorProperties:
    def test_linearity(self, rng):
        grid = build_grid(24)
        f = rng.normal(size=25)
        g = rng.normal(size=25)
        a, b = 1.7, -0.45
        for op in (diff_forward, diff_backward):
            lhs = op(a * f + b * g, grid)
            rhs = a * op(f, grid) + b * op(g, grid)
            assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_forward_image_sums_to_zero_when_last_entry_zero(self, rng):
        # The conservation mechanism: sum_j (D+ N)_j telescopes to -N_J/dx.
        grid = build_grid(140)
        for _ in range(25):
            flux = rng.normal(size=141)
            flux[-1] = 0.0
            total = diff_forward(flux, grid).sum()
            assert abs(total) <= 1e-13 * np.linalg.norm(flux) / grid.dx

    def test_forward_image_sum_tracks_last_entry(self, rng):
        grid = build_grid(40)
        flux = rng.normal(size=41)
        total = diff_forward(flux, grid).sum()
        assert np.isclose(total, -flux[-1] / grid.dx, rtol=1e-10)
