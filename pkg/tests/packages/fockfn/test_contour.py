"""
Tests for circle and planar quadratures of the identity
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add packages to path for testing
root_dir = Path(__file__).parent.parent.parent.parent
sys.path.insert(0, str(root_dir / "packages" / "fockfn"))

from fockfn.approx import taylor_series
from fockfn.contour import (
    aliased_powers,
    circle_nodes,
    entire_resolution_quadrature,
    glauber_identity_quadrature,
    identity_quadrature,
    incomplete_gamma_bound,
    radial_rule,
    translated_identity_quadrature,
)
from fockfn.errors import InsufficientNodesError, TailTooLargeError
from fockfn.fock_core import coherent, ladder_a
from fockfn.types import (
    DiskDomain,
    FunctionKind,
    PlanarGridSpec,
    QuadratureSpec,
    TruncationConfig,
)

BASELINE_GRID = PlanarGridSpec(radial_cutoff=6.0, radial_nodes=400, angular_nodes=64)
ENTIRE = DiskDomain(center=0, radius=6)


def _max_deviation(op, rows=None):
    rows = op.dim if rows is None else rows
    return float(np.max(np.abs(op.entries[:rows] - np.eye(op.dim)[:rows])))


def test_circle_nodes():
    """Test nodes start on the positive real axis and go counterclockwise"""
    nodes = circle_nodes(QuadratureSpec(radius=0.5, nodes=4))
    assert_allclose(nodes, [0.5, 0.5j, -0.5, -0.5j], atol=1e-16)


def test_aliased_powers():
    """Test residue classes below the cutoff"""
    assert list(aliased_powers(2, 20, 8)) == [2, 10, 18]
    assert list(aliased_powers(-3, 20, 8)) == [5, 13]
    assert list(aliased_powers(9, 5, 8)) == [1]


class TestIdentityQuadrature:
    """Test the circle identity for every contour radius"""

    @pytest.mark.parametrize("radius", [0.5, 1.0, 1.5])
    def test_identity(self, radius):
        spec = QuadratureSpec(radius=radius, nodes=64)
        op = identity_quadrature(spec, TruncationConfig(dim=16))
        assert _max_deviation(op) <= 1e-12

    def test_radius_independence(self):
        cfg = TruncationConfig(dim=16)
        results = [
            identity_quadrature(QuadratureSpec(radius=r, nodes=64), cfg).entries
            for r in (0.5, 1.0, 1.5)
        ]
        for other in results[1:]:
            assert np.max(np.abs(other - results[0])) <= 1e-11

    def test_node_count_independence(self):
        cfg = TruncationConfig(dim=16)
        coarse = identity_quadrature(QuadratureSpec(nodes=32), cfg).entries
        fine = identity_quadrature(QuadratureSpec(nodes=96), cfg).entries
        assert np.max(np.abs(coarse - fine)) <= 1e-13

    def test_smallest_exact_rule(self):
        spec = QuadratureSpec(radius=1.0, nodes=4)
        op = identity_quadrature(spec, TruncationConfig(dim=2))
        assert_allclose(op.entries, np.eye(2), atol=0)

    @pytest.mark.parametrize("radius", [0.9, 1.0])
    def test_nodal_sum_at_small_dim(self, radius):
        """Test the literal dyad sum agrees with the closed form"""
        spec = QuadratureSpec(radius=radius, nodes=32, method="nodal")
        op = identity_quadrature(spec, TruncationConfig(dim=8))
        assert _max_deviation(op) <= 1e-12

    def test_too_few_nodes(self):
        with pytest.raises(InsufficientNodesError) as error:
            identity_quadrature(QuadratureSpec(nodes=31), TruncationConfig(dim=16))
        assert error.value.field == "nodes"

    def test_nodal_radius_beyond_tail_guard(self):
        spec = QuadratureSpec(radius=3.0, nodes=16, method="nodal")
        with pytest.raises(TailTooLargeError):
            identity_quadrature(spec, TruncationConfig(dim=8))


class TestTranslatedIdentity:
    """Test the circle identity conjugated by a translation"""

    def test_zero_shift_is_plain_identity(self):
        cfg = TruncationConfig(dim=12)
        spec = QuadratureSpec(radius=0.8, nodes=32)
        assert_allclose(
            translated_identity_quadrature(0, spec, cfg).entries,
            identity_quadrature(spec, cfg).entries,
            atol=0,
        )

    @pytest.mark.parametrize(
        "z0,radius,tolerance",
        [(1.0, 0.5, 1e-10), (1 + 1j, 0.4, 1e-9), (1 + 1j, 0.5, 1e-9)],
    )
    def test_identity_on_valid_rows(self, z0, radius, tolerance):
        spec = QuadratureSpec(radius=radius, nodes=96)
        op = translated_identity_quadrature(z0, spec, TruncationConfig(dim=24))
        assert _max_deviation(op, rows=13) <= tolerance

    @pytest.mark.parametrize(
        "z0,radius", [(1.0, 1.0), (1 + 1j, 0.5), (-0.7 + 0.2j, 1.5)]
    )
    def test_identity_at_default_dimension(self, z0, radius):
        """Test every row stays at rounding level when the binomial terms are large"""
        op = translated_identity_quadrature(
            z0, QuadratureSpec(radius=radius, nodes=256), TruncationConfig(dim=64)
        )
        assert _max_deviation(op) <= 1e-12

    def test_maps_coherent_state_to_itself(self):
        cfg = TruncationConfig(dim=24)
        spec = QuadratureSpec(radius=0.5, nodes=96)
        op = translated_identity_quadrature(1.0, spec, cfg)
        for alpha in (0.3, 0.5 - 0.5j, -0.4j):
            state = coherent(alpha, cfg).amps
            image = op.apply(coherent(alpha, cfg))
            assert np.max(np.abs(image[:13] - state[:13])) <= 1e-9

    def test_nodal_matches_harmonic(self):
        cfg = TruncationConfig(dim=6)
        harmonic_spec = QuadratureSpec(radius=0.5, nodes=16)
        harmonic = translated_identity_quadrature(0.3, harmonic_spec, cfg)
        nodal_spec = QuadratureSpec(radius=0.5, nodes=16, method="nodal")
        nodal = translated_identity_quadrature(0.3, nodal_spec, cfg)
        assert np.max(np.abs(harmonic.entries - nodal.entries)) <= 1e-11


class TestPlanarQuadrature:
    """Test the classical coherent-state resolution on a polar grid"""

    @pytest.mark.parametrize("rule,tolerance", [("gauss", 1e-12), ("midpoint", 1e-4)])
    def test_radial_rules_integrate_gaussian(self, rule, tolerance):
        grid = PlanarGridSpec(
            radial_cutoff=6.0, radial_nodes=400, angular_nodes=8, radial_rule=rule
        )
        radii, weights = radial_rule(grid)
        assert np.all(radii > 0)
        integral = np.sum(weights * 2 * radii * np.exp(-(radii**2)))
        assert integral == pytest.approx(1.0, abs=tolerance)

    def test_glauber_identity(self):
        op = glauber_identity_quadrature(BASELINE_GRID, TruncationConfig(dim=8))
        assert _max_deviation(op) <= 1e-6

    def test_off_diagonal_vanishes(self):
        op = glauber_identity_quadrature(BASELINE_GRID, TruncationConfig(dim=8))
        entries = op.entries
        assert np.max(np.abs(entries - np.diag(np.diag(entries)))) <= 1e-12

    def test_diagonal_matches_incomplete_gamma(self):
        grid = PlanarGridSpec(radial_cutoff=3.0, radial_nodes=200, angular_nodes=32)
        op = glauber_identity_quadrature(grid, TruncationConfig(dim=8))
        diagonal = np.diag(op.entries).real
        lost = np.array([incomplete_gamma_bound(grid, n) for n in range(8)])
        assert_allclose(1.0 - diagonal, lost, atol=1e-12)

    def test_vacuum_entry(self):
        op = glauber_identity_quadrature(BASELINE_GRID, TruncationConfig(dim=2))
        assert op.entries[0, 0].real == pytest.approx(1.0, abs=1e-8)

    def test_constant_function_is_glauber(self):
        cfg = TruncationConfig(dim=8)
        one = taylor_series(FunctionKind(tag="poly", coeffs=(1,)), ENTIRE, 0)
        assert_allclose(
            entire_resolution_quadrature(one, BASELINE_GRID, cfg).entries,
            glauber_identity_quadrature(BASELINE_GRID, cfg).entries,
            atol=1e-14,
        )

    def test_linear_function_gives_ladder_a(self):
        cfg = TruncationConfig(dim=8)
        series = taylor_series(FunctionKind(tag="poly", coeffs=(0, 1)), ENTIRE, 1)
        op = entire_resolution_quadrature(series, BASELINE_GRID, cfg)
        assert np.max(np.abs(op.entries - ladder_a(cfg).entries)) <= 1e-6

    def test_square_gives_ladder_a_squared(self):
        cfg = TruncationConfig(dim=8)
        series = taylor_series(FunctionKind(tag="poly", coeffs=(0, 0, 1)), ENTIRE, 2)
        a = ladder_a(cfg).entries
        op = entire_resolution_quadrature(series, BASELINE_GRID, cfg)
        assert np.max(np.abs(op.entries - a @ a)) <= 1e-5

    def test_needs_series_about_origin(self):
        domain = DiskDomain(center=1, radius=1)
        series = taylor_series(FunctionKind(tag="exp"), domain, 4)
        with pytest.raises(ValueError):
            entire_resolution_quadrature(series, BASELINE_GRID, TruncationConfig(dim=4))
