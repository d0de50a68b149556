"""Incremental learners, drift detection and the per-cluster model bank."""
from .adwin import ADWIN, DRIFT, STABLE, WARNING, DriftDetector, adwin_update
from .arf import AdaptiveRandomForest, arf_learn, arf_predict_proba
from .bank import FAMILIES, ModelBank, Prediction, bank_learn, bank_predict, make_classifier
from .gnb import GaussianNB, nb_learn, nb_predict_proba
from .hat import HoeffdingAdaptiveTree, hat_learn, hat_predict_proba
from .hoeffding import HoeffdingTree, count_nodes, hoeffding_bound, ht_learn, ht_predict_proba
from .kmeans import OnlineKMeans, kmeans_assign, kmeans_update
