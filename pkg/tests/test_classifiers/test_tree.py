"""Tests for the CART decision tree."""

import numpy as np
import pytest

from src.classifiers.tree import train_decision_tree
from src.core.errors import ConfigurationError
from tests.helpers import make_dataset


class TestDecisionTree:
    def test_separable_pair(self):
        tree = train_decision_tree(make_dataset([[0.0], [1.0]], [0, 1]))
        assert tree.predict([[0.0], [1.0]]).tolist() == [0, 1]
        assert tree.nodes[0].threshold == pytest.approx(0.5)

    def test_pure_training_set_is_single_leaf(self):
        tree = train_decision_tree(make_dataset([[0.0], [3.0], [7.0]], [1, 1, 1]))
        assert tree.n_nodes == 1
        assert tree.n_leaves == 1
        assert tree.depth == 0
        assert tree.predict([[100.0], [-5.0]]).tolist() == [1, 1]

    def test_root_splits_on_informative_feature(self):
        data = make_dataset([[0, 0], [0, 1], [1, 0], [1, 1]], [0, 0, 1, 1])
        tree = train_decision_tree(data)
        root = tree.nodes[0]
        assert root.feature_index == 0
        assert root.threshold == pytest.approx(0.5)
        assert tree.n_leaves == 2

    def test_fits_training_data_without_depth_limit(self, blobs):
        tree = train_decision_tree(blobs)
        np.testing.assert_array_equal(tree.predict(blobs.features), blobs.labels)

    def test_max_depth(self, blobs):
        stump = train_decision_tree(blobs, max_depth=1)
        assert stump.depth <= 1
        assert stump.n_leaves <= 2

    def test_max_depth_zero_predicts_prior(self, toy_dataset):
        tree = train_decision_tree(toy_dataset, max_depth=0)
        support = tree.support([[5.0]])
        np.testing.assert_allclose(support, [[0.7, 0.3]])

    def test_min_samples_split(self, toy_dataset):
        tree = train_decision_tree(toy_dataset, min_samples_split=30)
        assert tree.n_nodes == 1

    def test_support_is_leaf_class_fraction(self):
        # duplicate x with conflicting labels cannot be separated
        data = make_dataset([[0.0], [0.0], [0.0], [1.0]], [0, 0, 1, 1])
        tree = train_decision_tree(data)
        np.testing.assert_allclose(tree.support([[0.0]]), [[2 / 3, 1 / 3]])

    def test_feature_subsample_is_seeded(self, blobs):
        a = train_decision_tree(blobs, feature_subsample=1, seed=3)
        b = train_decision_tree(blobs, feature_subsample=1, seed=3)
        assert [n.feature_index for n in a.nodes] == [n.feature_index for n in b.nodes]

    def test_sparse_binary_input(self):
        data = make_dataset([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1]], [0, 1, 0, 1])
        tree = train_decision_tree(data)
        np.testing.assert_array_equal(tree.predict(data.features), data.labels)

    def test_empty_rejected(self):
        with pytest.raises(ConfigurationError):
            train_decision_tree(make_dataset(np.zeros((0, 1)), []))

    def test_describe(self, toy_dataset):
        info = train_decision_tree(toy_dataset).describe()
        assert info == {"learner": "tree", "nodes": 3, "leaves": 2}
