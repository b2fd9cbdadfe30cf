"""
Tests for command-line run configuration
"""

import argparse
import sys
from pathlib import Path

import pytest
from pydantic import ValidationError

# Add packages to path for testing
root_dir = Path(__file__).parent.parent.parent
sys.path.insert(0, str(root_dir / "packages" / "fockfn"))
sys.path.insert(0, str(root_dir / "packages" / "dispatch"))
sys.path.insert(0, str(root_dir / "cli"))

from fockfn import FockfnSettings
from fockfn_cli.run_config import (
    RingSpec,
    RunConfig,
    add_run_arguments,
    build_run_config,
    load_yaml_config,
    metadata_for,
    parse_coeff_list,
    parse_complex,
    parse_complex_list,
    parse_int_list,
)


def test_parse_complex():
    """Test 're,im' pairs and complex literals"""
    assert parse_complex("1,0.5") == 1 + 0.5j
    assert parse_complex(" -2, 1 ") == -2 + 1j
    assert parse_complex("1+2j") == 1 + 2j
    assert parse_complex("3") == 3
    with pytest.raises(ValueError):
        parse_complex("one")


def test_parse_lists():
    """Test list flags"""
    assert parse_complex_list("1,0;0,1;") == [1, 1j]
    assert parse_coeff_list("1, -2, 0.5j") == [1, -2, 0.5j]
    assert parse_int_list("10,20,30") == [10, 20, 30]


def test_ring_spec():
    """Test ring parsing and equispaced points"""
    ring = RingSpec.parse("1,0;0.4;16")
    points = ring.points()
    assert len(points) == 16
    assert points[0] == pytest.approx(1.4)
    assert points[4] == pytest.approx(1 + 0.4j)

    with pytest.raises(ValueError):
        RingSpec.parse("1,0;0.4")
    with pytest.raises(ValidationError):
        RingSpec.parse("1,0;0;16")


class TestRunConfig:
    """Test RunConfig defaults and guards"""

    def test_defaults(self):
        config = RunConfig(command="eigen-test")
        assert config.function == "ln"
        assert config.center == 1
        assert config.radius == 0.5
        assert config.dim == 64
        assert config.nodes == 256
        assert config.series_degree == 30
        assert config.tol_commutator == 1e-3
        assert config.kind.tag == "log"
        assert config.domain.excludes_origin()
        assert config.quadrature.radius == 1.0

    def test_poly_degree_from_coefficients(self):
        config = RunConfig(
            command="eigen-test", function="poly", poly_coeffs=[1, 2, 3], center=0
        )
        assert config.series_degree == 2
        assert config.kind.coeffs == (1, 2, 3)

    @pytest.mark.parametrize(
        "overrides,field",
        [
            ({"radius": 1.0}, "radius"),
            ({"function": "inv", "center": 0.3}, "radius"),
            ({"function": "poly"}, "poly_coeffs"),
            ({"degree": 64}, "degree"),
            (
                {
                    "function": "poly",
                    "poly_coeffs": [1, 2, 3],
                    "degree": 1,
                    "center": 0,
                },
                "degree",
            ),
            ({"command": "build"}, "output_path"),
            ({"command": "commutator", "function": "inv"}, "function"),
        ],
    )
    def test_guards(self, overrides, field):
        arguments = {"command": "eigen-test", **overrides}
        with pytest.raises(ValidationError, match=field):
            RunConfig(**arguments)

    def test_dimension_bounds(self):
        with pytest.raises(ValidationError):
            RunConfig(command="eigen-test", dim=600)

    def test_verify_identity_skips_function_guards(self):
        config = RunConfig(command="verify-identity", radius=5.0, dim=16)
        assert config.command == "verify-identity"

    def test_exp_allows_disk_through_origin(self):
        config = RunConfig(
            command="eigen-test",
            function="exp",
            center=0,
            radius=2.0,
            degree=12,
            dim=32,
        )
        assert config.series_degree == 12


def test_build_run_config_precedence():
    """Test defaults < environment < YAML < flags"""
    settings = FockfnSettings(default_dim=32, tol_eigen=1e-7)
    config = build_run_config(
        "eigen-test",
        {"dim": 48, "degree": None, "config": "ignored.yaml", "log_level": "DEBUG"},
        settings,
        {"dim": 40, "degree": 12, "nodes": 128},
    )
    assert config.dim == 48
    assert config.degree == 12
    assert config.nodes == 128
    assert config.tol_eigen == 1e-7


def test_load_yaml_config(tmp_path):
    """Test hyphenated keys and string values that need parsing"""
    path = tmp_path / "run.yaml"
    path.write_text(
        "function: poly\npoly-coeffs: '1, 2'\ncenter: '0,0'\ndim: 24\n"
        "tol-eigen: 1.0e-8\n"
    )
    values = load_yaml_config(path)
    assert values == {
        "function": "poly",
        "poly_coeffs": [1, 2],
        "center": 0j,
        "dim": 24,
        "tol_eigen": 1e-8,
    }


def test_load_yaml_config_requires_mapping(tmp_path):
    """Test a YAML list is rejected"""
    path = tmp_path / "run.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError):
        load_yaml_config(path)


def test_add_run_arguments():
    """Test flags stay None when absent"""
    parser = argparse.ArgumentParser()
    add_run_arguments(parser)
    argv = ["--center", "1,1", "--out", "op.opm", "--precision-guard", "30"]
    args = parser.parse_args(argv)
    assert args.center == 1 + 1j
    assert args.output_path == "op.opm"
    assert args.guard_digits == 30
    assert args.dim is None
    assert args.route is None


def test_metadata_for():
    """Test metadata is deterministic text"""
    config = RunConfig(command="build", output_path="x", degree=8, dim=24)
    metadata = metadata_for(config, {"valid_rows": 16})
    assert metadata == {
        "function": "ln",
        "center": "1.0,0.0",
        "radius": "0.5",
        "degree": "8",
        "dim": "24",
        "valid_rows": "16",
    }
