"""Per-event stream engine: featurize, select, standardize, route, predict, then train."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import (
    CLUSTER_FEATURES, FeatureSpace, Featurizer, RunningStats, Standardizer, VarianceSelector,
)
from .learn import ModelBank
from .learn.arf import AdaptiveRandomForest
from .learn.hat import HoeffdingAdaptiveTree
from .lexicon import FrequencyLexicon
from .textproc import load_resources


@dataclass
class Step:
    event: object
    item: object          # Featurized
    selected: dict        # surviving feature name -> value
    x: np.ndarray         # dense vector over the feature space
    xc: np.ndarray        # standardized clustering input
    prediction: object    # learn.Prediction


class Engine:
    def __init__(self, config, resources=None, expected_size=None):
        self.config = config
        self.family = config.family
        self.feature_set = config.feature_set
        if resources is None:
            resources = load_resources(**config.resource_overrides())
        self.resources = resources
        lexicon = FrequencyLexicon(
            ngram_range=(config.lexicon_ngram_min, config.lexicon_ngram_max),
            num_elements=config.lexicon_size, threshold=config.lexicon_min_freq,
            warm_up_fraction=config.lexicon_warmup_fraction,
            expected_size=config.expected_size or expected_size,
            warm_up_count=config.lexicon_warmup_count, rebuild_every=config.lexicon_rebuild_every,
        )
        self.featurizer = Featurizer(
            resources, config.feature_set, (config.ngram_min, config.ngram_max),
            config.max_df, config.min_df, lexicon, config.timezone_cap, config.ms_per_char,
        )
        self.selector = VarianceSelector(config.variance_threshold)
        self.standardizer = Standardizer()
        # running stats of the standardized clustering inputs, for cluster profiles
        self.cluster_input_stats = RunningStats()
        self.space = FeatureSpace()
        self.bank = ModelBank(config.family, config.k, seed=config.seed, **config.classifier_params())
        self.n_events = 0

    def __getstate__(self):
        state = self.__dict__.copy()
        state["resources"] = None
        state["featurizer"] = self.featurizer.__dict__.copy()
        state["featurizer"]["resources"] = None
        return state

    def __setstate__(self, state):
        fz = Featurizer.__new__(Featurizer)
        fz.__dict__.update(state["featurizer"])
        state["featurizer"] = fz
        self.__dict__.update(state)

    def attach_resources(self, resources=None):
        if resources is None:
            resources = load_resources(**self.config.resource_overrides())
        self.resources = resources
        self.featurizer.resources = resources

    @property
    def lexicon(self):
        return self.featurizer.lexicon

    def cluster_input(self, values, selected):
        raw = {n: values[n] for n in CLUSTER_FEATURES}
        z = self.standardizer.transform(raw)
        return raw, np.array([z[n] if n in selected else 0.0 for n in CLUSTER_FEATURES])

    def predict(self, event) -> Step:
        item = self.featurizer.featurize(event)
        selected = self.selector.transform(item.vector.values)
        _, xc = self.cluster_input(item.vector.values, selected)
        x = self.space.to_array(selected)
        pred = self.bank.predict(x, xc)
        return Step(event, item, selected, x, xc, pred)

    def learn(self, step: Step):
        ev = step.event
        self.featurizer.learn(step.item, ev.label)
        values = step.item.vector.values
        self.selector.update(values)
        self.standardizer.update({n: values[n] for n in CLUSTER_FEATURES})
        self.cluster_input_stats.update(dict(zip(CLUSTER_FEATURES, step.xc)))
        self.bank.learn(step.x, step.xc, ev.label_index, cluster=step.prediction.cluster)
        self.n_events += 1

    def process(self, event) -> Step:
        step = self.predict(event)
        self.learn(step)
        return step

    def drift_events(self):
        total = 0
        for model in self.bank.models:
            if isinstance(model, AdaptiveRandomForest):
                total += model.n_drifts
            elif isinstance(model, HoeffdingAdaptiveTree):
                total += model.n_replacements
        return total
