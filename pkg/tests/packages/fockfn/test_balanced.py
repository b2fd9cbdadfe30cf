"""
Tests for extended-precision balanced-frame operators
"""

import sys
from pathlib import Path

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add packages to path for testing
root_dir = Path(__file__).parent.parent.parent.parent
sys.path.insert(0, str(root_dir / "packages" / "fockfn"))

from fockfn.balanced import BalancedOperator, working_precision, zeros
from fockfn.errors import FockOverflowError
from fockfn.fock_core import coherent, ladder_a, ladder_adag
from fockfn.types import TruncationConfig


def _balanced_a(dim: int) -> BalancedOperator:
    """The annihilation operator is a superdiagonal of ones in the balanced frame"""
    return BalancedOperator.identity(dim).right_ladder_a()


def test_working_precision():
    """Test digits grow with the magnitude of the summed terms"""
    assert working_precision(0.0) == 37
    assert working_precision(-5.0) == 37
    assert working_precision(10.2) == 48
    assert working_precision(3.0, guard_digits=0) == 20


def test_identity_round_trips_to_doubles():
    """Test the balanced identity rounds to the exact identity"""
    op = BalancedOperator.identity(6).to_fock_operator()
    assert_allclose(op.entries, np.eye(6), atol=0)


def test_right_ladder_a_reproduces_ladder_a():
    """Test I . a in the balanced frame matches the Fock-basis annihilation operator"""
    cfg = TruncationConfig(dim=12)
    entries = _balanced_a(12).to_fock_operator().entries
    assert_allclose(entries, ladder_a(cfg).entries, rtol=1e-14)


def test_ladder_products_match_matrix_products():
    """Test the balanced ladder rules against dense matrix products"""
    dim = 8
    cfg = TruncationConfig(dim=dim)
    a, adag = ladder_a(cfg).entries, ladder_adag(cfg).entries
    op = _balanced_a(dim)

    right = op.right_ladder_adag().to_fock_operator().entries
    assert_allclose(right, a @ adag, rtol=1e-13, atol=1e-13)
    left = op.left_ladder_adag().to_fock_operator().entries
    assert_allclose(left, adag @ a, rtol=1e-13, atol=1e-13)


def test_identity_commutes_with_adag():
    """Test [I, a^dag] vanishes exactly"""
    ident = BalancedOperator.identity(10)
    difference = ident.right_ladder_adag() - ident.left_ladder_adag()
    assert all(value == 0 for value in difference.entries.flat)


def test_number_commutator():
    """Test [N, a] = -a"""
    op = _balanced_a(10)
    commutator = op.number_commutator().to_fock_operator().entries
    assert_allclose(commutator, -op.to_fock_operator().entries, atol=0)


def test_scaled_and_arithmetic():
    """Test scaling and sums keep the larger precision"""
    low = BalancedOperator.identity(4, dps=20)
    high = BalancedOperator.identity(4, dps=40).scaled(2j)
    total = low + high
    assert total.dps == 40
    assert_allclose(total.to_fock_operator().entries, (1 + 2j) * np.eye(4), atol=0)
    assert not (high - high).to_fock_operator().entries.any()


def test_apply_coherent_identity():
    """Test the identity maps |alpha> to itself"""
    cfg = TruncationConfig(dim=24)
    alpha = 0.6 - 0.3j
    image = BalancedOperator.identity(24, dps=30).apply_coherent(alpha)
    assert_allclose(image, coherent(alpha, cfg).amps, rtol=1e-13, atol=1e-300)


def test_apply_coherent_rows():
    """Test a|alpha> = alpha|alpha> on the rows below the truncation edge"""
    cfg = TruncationConfig(dim=24)
    alpha = 0.5 + 0.5j
    image = _balanced_a(24).apply_coherent(alpha, rows=23)
    assert image.shape == (23,)
    expected = alpha * coherent(alpha, cfg).amps[:23]
    assert_allclose(image, expected, rtol=1e-13, atol=1e-300)


def test_to_fock_operator_overflow():
    """Test entries beyond the double range raise with their index"""
    entries = zeros(200)
    entries[0, 199] = mp.mpc(1e200)
    with pytest.raises(FockOverflowError) as error:
        BalancedOperator(entries=entries, dps=30).to_fock_operator()
    assert error.value.index == (0, 199)
