# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import numpy as np
import pytest
import scipy.linalg

from svrgreg.linop import BlockOperator, Observation, load_operator, power_iteration, save_operator
from svrgreg.output import read_metadata
from svrgreg.problems import phillips
from svrgreg.testing import assert_close, random_block_ranges, random_operator
from svrgreg.util import DimensionError, ValidationError


def test_apply_identity():
    A = BlockOperator(np.eye(2))
    y = A.apply(np.array([3., -1.]))
    assert A.num_blocks == 2
    assert [list(b) for b in y.blocks] == [[3.], [-1.]]


def test_apply_single_block():
    A = BlockOperator([[1., 2.], [3., 4.]], [(0, 2)])
    assert A.num_blocks == 1
    assert_close(A(np.ones(2)).block(0), np.array([3., 7.]))


def test_apply_zero():
    A = random_operator(5, 3)
    assert not np.any(A.apply(np.zeros(3)).data)


def test_apply_dimension_mismatch():
    A = BlockOperator(np.eye(3))
    with pytest.raises(DimensionError, match="incompatible vector length"):
        A.apply(np.ones(2))


@pytest.mark.parametrize('entries,ranges,z,expected', [
    (np.eye(2), None, [3., -1.], [3., -1.]),
    ([[1., 2.], [3., 4.]], [(0, 2)], [1., 0.], [1., 2.]),
    ([[1., 2.], [3., 4.]], [(0, 2)], [0., 0.], [0., 0.]),
])
def test_apply_adjoint(entries, ranges, z, expected):
    A = BlockOperator(entries, ranges)
    assert_close(A.apply_adjoint(Observation(z, A.block_ranges)), np.array(expected))


def test_apply_adjoint_mismatch():
    A = BlockOperator(np.eye(2), [(0, 2)])
    with pytest.raises(DimensionError):
        A.apply_adjoint(Observation([1., 2.]))


def test_apply_block():
    A = BlockOperator(np.eye(2))
    assert_close(A.apply_block(0, np.array([5., 0.])), np.array([5.]))
    B = BlockOperator([[1., 2.]])
    assert_close(B.apply_block_adjoint(0, np.array([2.])), np.array([2., 4.]))
    assert not np.any(B.apply_block(0, np.zeros(2)))
    with pytest.raises(IndexError):
        A.apply_block(2, np.zeros(2))


@pytest.mark.parametrize('num_rows,num_blocks', [(7, 1), (7, 3), (12, 12)])
def test_adjoint_identity_and_block_consistency(num_rows, num_blocks):
    entries = np.random.randn(num_rows, 4)
    A = BlockOperator(entries, random_block_ranges(num_rows, num_blocks))
    x = np.random.randn(4)
    z = Observation(np.random.randn(num_rows), A.block_ranges)
    lhs = A.apply(x).data @ z.data
    rhs = x @ A.apply_adjoint(z)
    assert abs(lhs - rhs) <= 1e-10 * max(1., abs(lhs))

    stacked = np.concatenate([A.apply_block(i, x) for i in range(A.num_blocks)])
    assert (stacked == A.apply(x).data).all()
    summed = sum(A.apply_block_adjoint(i, z.block(i)) for i in range(A.num_blocks))
    assert_close(summed, A.apply_adjoint(z), atol=1e-12)


@pytest.mark.parametrize('ranges', [
    [(0, 1), (2, 3)],
    [(0, 2), (1, 3)],
    [(0, 0), (0, 3)],
    [(0, 2)],
    [],
])
def test_bad_block_ranges(ranges):
    with pytest.raises(ValidationError):
        BlockOperator(np.ones((3, 2)), ranges)


def test_entries_are_read_only():
    A = BlockOperator(np.eye(2))
    with pytest.raises(ValueError):
        A.entries[0, 0] = 5.


@pytest.mark.parametrize('entries,expected', [
    (np.eye(2), 1.0),
    (np.diag([3., 1.]), 3.0),
])
def test_operator_norm_small(entries, expected):
    A = BlockOperator(entries)
    assert abs(A.operator_norm() - expected) <= 1e-10 * expected
    assert A.norm_info.converged
    assert A.cached_op_norm == A.operator_norm()


def test_operator_norm_oracle():
    entries = np.random.RandomState(1).randn(5, 5)
    A = BlockOperator(entries)
    expected = scipy.linalg.svdvals(entries)[0]
    assert abs(A.operator_norm() - expected) <= 1e-8


def test_operator_norm_zero():
    A = BlockOperator(np.zeros((3, 2)))
    assert A.operator_norm() == 0.
    assert A.norm_info.num_iters == 0


def test_power_iteration_null_start():
    # the all-ones start is annihilated by this matrix
    entries = np.array([[1., -1.]])
    info = power_iteration(entries.__matmul__, entries.T.__matmul__, 2)
    assert info.converged
    assert abs(info.value - np.sqrt(2)) < 1e-8


def test_power_iteration_validation():
    with pytest.raises(ValidationError):
        power_iteration(np.eye(2).__matmul__, np.eye(2).__matmul__, 2, tol=0.)
    with pytest.raises(ValidationError):
        power_iteration(np.eye(2).__matmul__, np.eye(2).__matmul__, 2, max_iter=0)


def test_norm_bound():
    A = random_operator(30, 10, rows_per_block=2)
    norm = A.operator_norm()
    for _ in range(100):
        x = np.random.randn(10)
        x /= np.linalg.norm(x)
        assert np.linalg.norm(A.apply(x).data) <= norm * (1 + 10 * 1e-10)


@pytest.mark.parametrize('entries,ranges,expected', [
    (np.eye(2), None, 1.0),
    ([[2., 0.], [0., 5.]], None, 5.0),
    ([[2., 0.], [0., 5.]], [(0, 2)], 5.0),
])
def test_max_block_norm(entries, ranges, expected):
    A = BlockOperator(entries, ranges)
    assert abs(A.max_block_norm() - expected) <= 1e-10 * expected
    assert A.max_block_norm() <= A.operator_norm() * (1 + 1e-8)


def test_max_block_norm_phillips():
    A = phillips(100).operator
    expected = max(scipy.linalg.svdvals(A.block(i))[0] for i in range(A.num_blocks))
    assert abs(A.max_block_norm() - expected) <= 1e-8


def test_max_block_norm_multirow_oracle():
    A = random_operator(6, 4, rows_per_block=3)
    expected = max(scipy.linalg.svdvals(A.block(i))[0] for i in range(A.num_blocks))
    assert abs(A.max_block_norm() - expected) <= 1e-8
    assert A.max_block_norm() <= A.operator_norm() * (1 + 1e-8)


def test_observation_arithmetic():
    a = Observation.from_blocks([[1., 2.], [3.]])
    b = Observation([1., 1., 1.], a.block_ranges)
    assert a.num_blocks == 2
    assert_close(a + b, Observation([2., 3., 4.], a.block_ranges))
    assert_close(a - b, Observation([0., 1., 2.], a.block_ranges))
    assert_close(2 * a, Observation([2., 4., 6.], a.block_ranges))
    assert_close(-a, Observation([-1., -2., -3.], a.block_ranges))
    assert a.norm() == pytest.approx(np.sqrt(14.))
    with pytest.raises(DimensionError):
        a + Observation([1., 1., 1.])


def test_from_blocks():
    A = BlockOperator.from_blocks([[[1., 0.]], [[0., 1.], [1., 1.]]])
    assert A.block_ranges == ((0, 1), (1, 3))
    assert A.shape == (3, 2)
    assert not A.unit_blocks


def test_save_load_operator(tmpdir):
    A = BlockOperator(np.random.randn(6, 3) / 3., [(0, 2), (2, 3), (3, 6)])
    prefix = str(tmpdir.join("op"))
    save_operator(A, prefix)
    B = load_operator(prefix)
    assert B.block_ranges == A.block_ranges
    assert (B.entries == A.entries).all()


def test_saved_operator_has_metadata(tmpdir):
    A = BlockOperator(np.random.randn(4, 2))
    prefix = str(tmpdir.join("sub", "op"))
    save_operator(A, prefix)
    with open(prefix + ".csv") as f:
        assert f.readline().startswith("# svrgreg_version: ")
    assert read_metadata(prefix + ".csv")['operator'] == {'N': 4, 'd': 2}
    assert (load_operator(prefix).entries == A.entries).all()
