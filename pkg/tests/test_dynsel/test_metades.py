"""Tests for META-DES meta-features, training and selection."""

import numpy as np
import pytest

from src.classifiers.tree import train_decision_tree
from src.core.errors import ConfigurationError
from src.dynsel.dsel import Dsel
from src.dynsel.knop import KnopSelector
from src.dynsel.metades import (
    MetaDesSelector,
    consensus,
    meta_feature_vector,
    meta_features,
    metades_select,
    metades_train,
)
from src.dynsel.ola import OlaSelector
from src.pool.static import majority_vote
from tests.helpers import ColumnClassifier, make_dataset, make_pool


def _make_label_column_dsel(members):
    """Ten DSEL rows whose first column equals the (alternating) label."""
    labels = [j % 2 for j in range(10)]
    features = [[label, j] for j, label in enumerate(labels)]
    return Dsel.precompute(make_dataset(features, labels), make_pool(members))


def _make_perfect_and_inverted():
    return _make_label_column_dsel(
        [ColumnClassifier(col=0), ColumnClassifier(col=0, invert=True)]
    )


def _make_identical_dsel(n_members=3):
    """One column x = 0..9; every member predicts x > 4.5 and errs on rows 3, 4 and 5."""
    x = np.arange(10, dtype=float).reshape(-1, 1)
    labels = [0, 0, 0, 1, 1, 0, 1, 1, 1, 1]
    members = [ColumnClassifier(col=0, cut=4.5) for _ in range(n_members)]
    return Dsel.precompute(make_dataset(x, labels), make_pool(members))


class TestMetaFeatures:
    def test_vector_length(self):
        vector = meta_feature_vector(np.arange(21, dtype=float), k=7, kp=5)
        assert len(vector) == 21
        assert vector.f1.tolist() == list(range(7))
        assert vector.f2.tolist() == list(range(7, 14))
        assert vector.f3 == 14
        assert vector.f4.tolist() == list(range(15, 20))
        assert vector.f5 == 20
        np.testing.assert_array_equal(vector.as_array(), np.arange(21))

    def test_tensor_layout(self):
        dsel = _make_perfect_and_inverted()
        region = np.array([[0, 1, 2]] * 10)
        profile_region = np.array([[3, 4]] * 10)
        tensor = meta_features(dsel, dsel.supports, region, profile_region)
        assert tensor.shape == (10, 2, 2 * 3 + 2 + 2)
        # member 0 is always right with full support, member 1 always wrong
        np.testing.assert_array_equal(tensor[:, 0, :], np.ones((10, 10)))
        expected_wrong = np.zeros((10, 10))
        expected_wrong[:, -1] = 1.0
        np.testing.assert_array_equal(tensor[:, 1, :], expected_wrong)

    def test_consensus(self):
        agreement = consensus(np.array([[1, 1, 0], [1, 0, 1], [0, 0, 0]]))
        np.testing.assert_allclose(agreement, [2 / 3, 2 / 3, 1.0])


class TestMetadesTrain:
    def test_meta_vector_size(self):
        dsel = _make_perfect_and_inverted()
        meta = metades_train(dsel.pool, dsel, k=7, kp=5)
        assert meta.n_meta_features == 21

    def test_constructed_meta_labels(self):
        dsel = _make_perfect_and_inverted()
        assert dsel.correct[:, 0].all()
        assert not dsel.correct[:, 1].any()
        meta = metades_train(dsel.pool, dsel, k=3, kp=3, consensus_threshold=0.7)
        # members always disagree, so every DSEL row is a training row without relaxation
        assert meta.n_meta_rows == 10
        assert meta.consensus_threshold == 0.7

    def test_identical_members_relax_threshold(self):
        dsel = _make_identical_dsel()
        meta = metades_train(dsel.pool, dsel, k=3, kp=3, consensus_threshold=0.7)
        assert meta.consensus_threshold == 1.0
        assert meta.n_meta_rows == 10

    def test_no_incompetent_examples(self):
        dsel = _make_label_column_dsel([ColumnClassifier(col=0), ColumnClassifier(col=0)])
        with pytest.raises(ConfigurationError, match="competent"):
            metades_train(dsel.pool, dsel, k=3, kp=3)

    @pytest.mark.parametrize("k, kp", [(10, 3), (3, 0), (0, 3)])
    def test_neighborhood_bounds(self, k, kp):
        dsel = _make_perfect_and_inverted()
        with pytest.raises(ConfigurationError):
            metades_train(dsel.pool, dsel, k=k, kp=kp)

    def test_threshold_bounds(self):
        dsel = _make_perfect_and_inverted()
        with pytest.raises(ConfigurationError):
            metades_train(dsel.pool, dsel, k=3, kp=3, consensus_threshold=0.0)

    def test_pool_must_match_dsel(self):
        dsel = _make_perfect_and_inverted()
        other = make_pool([ColumnClassifier(col=0)])
        with pytest.raises(ConfigurationError):
            metades_train(other, dsel, k=3, kp=3)


class TestMetadesSelect:
    def setup_method(self):
        self.dsel = _make_perfect_and_inverted()
        self.meta = metades_train(self.dsel.pool, self.dsel, k=3, kp=3)

    def test_only_competent_member_selected(self):
        selector = MetaDesSelector(self.dsel.pool, self.dsel, self.meta, threshold=0.5)
        queries = np.array([[1.0, 4.5], [0.0, 2.5]])
        assert selector.selected(queries).tolist() == [[True, False], [True, False]]
        assert selector.predict(queries).tolist() == [1, 0]

    def test_row_helper(self):
        assert metades_select(self.meta, self.dsel.pool, self.dsel, [0.0, 7.0]) == 0

    def test_nobody_above_threshold_uses_full_pool(self):
        selector = MetaDesSelector(self.dsel.pool, self.dsel, self.meta, threshold=1.5)
        queries = np.array([[1.0, 4.5], [0.0, 2.5]])
        assert selector.selected(queries).all()
        # perfect and inverted members tie, ties go positive
        assert selector.predict(queries).tolist() == [1, 1]

    def test_competence_is_probability(self):
        selector = MetaDesSelector(self.dsel.pool, self.dsel, self.meta)
        competence = selector.competence(np.array([[1.0, 4.5]]))
        assert competence.shape == (1, 2)
        assert ((competence >= 0) & (competence <= 1)).all()
        assert competence[0, 0] > competence[0, 1]

    def test_identical_members_match_member_zero(self):
        dsel = _make_identical_dsel()
        meta = metades_train(dsel.pool, dsel, k=3, kp=3)
        x = np.linspace(-2, 12, 29).reshape(-1, 1)
        predicted = MetaDesSelector(dsel.pool, dsel, meta).predict(x)
        np.testing.assert_array_equal(predicted, dsel.pool.members[0].predict(x))


class TestDegeneratePool:
    def test_all_selectors_reduce_to_majority_vote_and_member(self, blobs):
        tree = train_decision_tree(blobs, max_depth=3)
        dsel = Dsel.precompute(blobs, make_pool([tree] * 4))
        meta = metades_train(dsel.pool, dsel, k=7, kp=5)
        dense = blobs.features.toarray()
        rng = np.random.default_rng(0)
        x = rng.uniform(dense.min(axis=0), dense.max(axis=0), size=(500, dense.shape[1]))

        expected = tree.predict(x)
        np.testing.assert_array_equal(dsel.pool.predict(x), expected)
        assert [majority_vote(dsel.pool, row) for row in x] == expected.tolist()
        np.testing.assert_array_equal(OlaSelector(dsel.pool, dsel, 7).predict(x), expected)
        np.testing.assert_array_equal(KnopSelector(dsel.pool, dsel, 7).predict(x), expected)
        np.testing.assert_array_equal(MetaDesSelector(dsel.pool, dsel, meta).predict(x), expected)