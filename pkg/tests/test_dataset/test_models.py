"""Tests for Dataset and DatasetSummary containers."""

import numpy as np
import pytest
import scipy.sparse as sp

from src.core.errors import ConfigurationError
from src.core.models import Label
from src.dataset.models import Dataset
from tests.helpers import make_dataset


class TestDataset:
    def test_counts(self, toy_dataset):
        assert toy_dataset.n_rows == 20
        assert toy_dataset.n_features == 1
        assert toy_dataset.positives == 6
        assert toy_dataset.negatives == 14
        assert toy_dataset.class_counts() == {Label.NEGATIVE: 14, Label.POSITIVE: 6}
        assert len(toy_dataset) == 20

    def test_dense_input_is_stored_as_csr(self):
        data = Dataset(np.eye(3), [0, 1, 0])
        assert sp.isspmatrix_csr(data.features)
        assert data.features.dtype == np.float64
        assert data.labels.dtype == np.int8

    def test_labels_are_read_only(self, toy_dataset):
        with pytest.raises(ValueError):
            toy_dataset.labels[0] = 1

    def test_row_label_mismatch_rejected(self):
        with pytest.raises(ConfigurationError, match="labels"):
            make_dataset(np.zeros((3, 2)), [0, 1])

    def test_non_binary_labels_rejected(self):
        with pytest.raises(ConfigurationError, match="binary"):
            make_dataset(np.zeros((3, 2)), [0, 1, 2])

    def test_non_finite_rejected(self):
        with pytest.raises(ConfigurationError, match="non-finite"):
            make_dataset([[np.inf, 0.0]], [1])

    def test_vocabulary_length_checked(self):
        with pytest.raises(ConfigurationError, match="vocabulary size"):
            make_dataset(np.zeros((2, 2)), [0, 1], ("a",))

    def test_duplicate_vocabulary_rejected(self):
        with pytest.raises(ConfigurationError, match="duplicate"):
            make_dataset(np.zeros((2, 2)), [0, 1], ("a", "a"))

    def test_minority_label(self, toy_dataset):
        assert toy_dataset.minority_label() == Label.POSITIVE
        flipped = make_dataset(np.zeros((3, 1)), [1, 1, 0])
        assert flipped.minority_label() == Label.NEGATIVE

    def test_minority_label_tie_is_positive(self):
        assert make_dataset(np.zeros((2, 1)), [0, 1]).minority_label() == Label.POSITIVE

    def test_subset_repeats_rows_in_order(self, toy_dataset):
        sub = toy_dataset.subset(np.array([19, 0, 19]))
        assert sub.features.toarray().ravel().tolist() == [19.0, 0.0, 19.0]
        assert sub.labels.tolist() == [1, 0, 1]

    def test_subset_leaves_source_untouched(self, toy_dataset):
        before = toy_dataset.features.toarray().copy()
        toy_dataset.subset(np.arange(5))
        np.testing.assert_array_equal(toy_dataset.features.toarray(), before)

    def test_is_binary(self):
        assert make_dataset([[0, 1], [1, 0]], [0, 1]).is_binary()
        assert not make_dataset([[0, 0.5], [1, 0]], [0, 1]).is_binary()
