#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
import math
from unittest.mock import patch

import numpy as np
import pytest
from evostream import kernelspace
from evostream.errors import ConfigurationError, InputError
from evostream.kernelspace import (
    KernelConfig,
    as_points,
    as_vector,
    cross_gram,
    gram_matrix,
    kernel_column,
    kernel_eval,
    median_bandwidth,
    register_kernel,
)


class TestKernelConfig:
    def test_defaults(self):
        cfg = KernelConfig(1.0)
        assert cfg.kind == "gaussian"

    @pytest.mark.parametrize("bandwidth", [0.0, -1.0, math.inf, math.nan])
    def test_invalid_bandwidth(self, bandwidth):
        with pytest.raises(ConfigurationError, match="bandwidth must be > 0"):
            KernelConfig(bandwidth)

    def test_unknown_kind(self):
        with pytest.raises(ConfigurationError, match="unknown kernel 'cosine'"):
            KernelConfig(1.0, "cosine")

    def test_register_kernel(self):
        with patch.dict(kernelspace.KERNELS):
            register_kernel("flat", lambda sq, bw: np.ones_like(sq))
            cfg = KernelConfig(1.0, "flat")
            assert kernel_eval(cfg, [0.0], [5.0]) == 1.0
        assert "flat" not in kernelspace.KERNELS

    def test_frozen(self):
        cfg = KernelConfig(1.0)
        with pytest.raises(AttributeError):
            cfg.bandwidth = 2.0  # type: ignore


class TestKernelEval:
    def test_gaussian(self):
        cfg = KernelConfig(1.0)
        assert kernel_eval(cfg, [0.0, 0.0], [1.0, 0.0]) == pytest.approx(math.exp(-0.5))

    def test_gaussian_bandwidth(self):
        cfg = KernelConfig(2.0)
        assert kernel_eval(cfg, [0.0], [2.0]) == pytest.approx(math.exp(-0.5))

    def test_identical(self):
        cfg = KernelConfig(0.3)
        assert kernel_eval(cfg, [1.0, -2.0], [1.0, -2.0]) == 1.0

    def test_symmetric(self):
        cfg = KernelConfig(0.7)
        a, b = [0.1, 0.4, -1.0], [1.0, 0.0, 0.5]
        assert kernel_eval(cfg, a, b) == kernel_eval(cfg, b, a)

    def test_laplacian(self):
        cfg = KernelConfig(2.0, "laplacian")
        assert kernel_eval(cfg, [0.0, 0.0], [3.0, 4.0]) == pytest.approx(math.exp(-2.5))

    def test_dimension_mismatch(self):
        with pytest.raises(InputError, match="dimension mismatch"):
            kernel_eval(KernelConfig(1.0), [0.0, 1.0], [0.0])


class TestConversions:
    def test_as_vector(self):
        vec = as_vector([1, 2])
        assert vec.dtype == float
        assert vec.tolist() == [1.0, 2.0]

    def test_as_vector_matrix(self):
        with pytest.raises(InputError, match="expected a feature vector"):
            as_vector([[1.0, 2.0]])

    def test_as_points_empty(self):
        assert as_points([], 3).shape == (0, 3)
        assert as_points(np.zeros((0, 2))).shape == (0, 2)

    def test_as_points_ragged(self):
        with pytest.raises(InputError, match="share one dimension"):
            as_points([[1.0, 2.0], [1.0]])

    def test_as_points_dim(self):
        with pytest.raises(InputError, match="expected 3 features, got 2"):
            as_points([[1.0, 2.0]], 3)


class TestGram:
    def test_gram_matrix(self):
        cfg = KernelConfig(1.0)
        points = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
        gram = gram_matrix(cfg, points)
        assert gram.shape == (3, 3)
        np.testing.assert_allclose(np.diag(gram), 1.0)
        np.testing.assert_allclose(gram, gram.T)
        assert gram[0, 1] == pytest.approx(math.exp(-0.5))
        assert gram[1, 2] == pytest.approx(math.exp(-2.5))

    def test_gram_small(self):
        cfg = KernelConfig(1.0)
        assert gram_matrix(cfg, np.zeros((0, 2))).shape == (0, 0)
        assert gram_matrix(cfg, [[3.0, 4.0]]).tolist() == [[1.0]]

    def test_gram_positive_semidefinite(self):
        rng = np.random.default_rng(3)
        gram = gram_matrix(KernelConfig(0.5), rng.normal(size=(20, 3)))
        assert np.linalg.eigvalsh(gram).min() > -1e-10

    def test_cross_gram(self):
        cfg = KernelConfig(1.5)
        left = np.array([[0.0, 0.0], [1.0, 1.0]])
        right = np.array([[1.0, 0.0], [0.0, 0.0], [2.0, 2.0]])
        gram = cross_gram(cfg, left, right)
        assert gram.shape == (2, 3)
        for i in range(2):
            for j in range(3):
                assert gram[i, j] == pytest.approx(kernel_eval(cfg, left[i], right[j]))

    def test_cross_gram_empty(self):
        assert cross_gram(KernelConfig(1.0), np.zeros((0, 2)), [[1.0, 2.0]]).shape == (0, 1)

    def test_cross_gram_mismatch(self):
        with pytest.raises(InputError):
            cross_gram(KernelConfig(1.0), [[1.0, 2.0]], [[1.0]])

    def test_kernel_column(self):
        cfg = KernelConfig(1.0)
        points = np.array([[0.0], [1.0], [3.0]])
        column = kernel_column(cfg, points, [1.0])
        np.testing.assert_allclose(column, np.exp(-np.array([1.0, 0.0, 4.0]) / 2.0))

    def test_kernel_column_empty(self):
        assert kernel_column(KernelConfig(1.0), np.zeros((0, 2)), [1.0, 2.0]).shape == (0,)


class TestMedianBandwidth:
    def test_median(self):
        points = np.array([[0.0], [1.0], [3.0]])
        # distances 1, 3, 2
        assert median_bandwidth(points) == 2.0

    def test_limit(self):
        points = np.array([[0.0], [1.0], [100.0], [200.0]])
        assert median_bandwidth(points, limit=2) == 1.0

    def test_single_point(self):
        assert median_bandwidth([[1.0, 2.0]]) == 1.0

    def test_identical_points(self):
        assert median_bandwidth(np.ones((5, 2))) == 1.0
