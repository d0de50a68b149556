"""Feature engineering: profiles, duplicates, n-grams, selection and assembly."""
from .assemble import (
    CLUSTER_FEATURES, FEATURE_SETS, TRACKED, AssemblyError, FeatureSpace, FeatureVector,
    assemble, export_feature_dictionary, feature_dictionary, profile_class, user_companions,
)
from .duplicates import DuplicateStore, duplicate_check
from .featurizer import Featurized, Featurizer
from .profile import UserProfile, context_features, creator_features, trend_flag, update_profile
from .selection import RunningStats, Standardizer, VarianceSelector, is_textual, standardize, variance_select
from .vectorizer import NgramVectorizer, vectorize_ngrams, word_ngrams
