"""Tests for the base-learner factory."""

import pytest
from pydantic import ValidationError

from src.classifiers.factory import LearnerParams, resolve_feature_subsample, train_base
from src.classifiers.forest import RandomForest
from src.classifiers.knn import KNearestNeighbors
from src.classifiers.naive_bayes import BernoulliNaiveBayes
from src.classifiers.tree import DecisionTree
from src.core.errors import ConfigurationError
from src.core.models import BaseKind


class TestTrainBase:
    @pytest.mark.parametrize(
        "kind, cls",
        [
            (BaseKind.TREE, DecisionTree),
            (BaseKind.KNN, KNearestNeighbors),
            (BaseKind.NB, BernoulliNaiveBayes),
            (BaseKind.FOREST, RandomForest),
        ],
    )
    def test_dispatch(self, toy_dataset, kind, cls):
        assert isinstance(train_base(kind, toy_dataset), cls)

    def test_params_flow_through(self, toy_dataset):
        knn = train_base(BaseKind.KNN, toy_dataset, LearnerParams(knn_k=3))
        assert knn.k == 3
        stump = train_base(BaseKind.TREE, toy_dataset, LearnerParams(max_depth=1))
        assert stump.depth == 1
        forest = train_base(BaseKind.FOREST, toy_dataset, LearnerParams(forest_size=3), seed=2)
        assert forest.n_trees == 3

    def test_depth_must_be_positive(self):
        with pytest.raises(ValidationError):
            LearnerParams(max_depth=0)

    def test_unknown_kind(self, toy_dataset):
        with pytest.raises(ConfigurationError):
            train_base("svm", toy_dataset)


class TestResolveFeatureSubsample:
    def test_sqrt(self):
        assert resolve_feature_subsample("sqrt", 100) == 10
        assert resolve_feature_subsample("sqrt", 2) == 1

    def test_int_clamped(self):
        assert resolve_feature_subsample(50, 8) == 8

    def test_none(self):
        assert resolve_feature_subsample(None, 8) is None

    @pytest.mark.parametrize("value", [0, "log2", -3])
    def test_invalid(self, value):
        with pytest.raises(ConfigurationError):
            resolve_feature_subsample(value, 8)
