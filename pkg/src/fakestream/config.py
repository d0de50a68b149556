"""Run configuration: a flat ``key = value`` file, flags on top, defaults underneath."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields

OUTPUT_ENV = "FAKESTREAM_OUTPUT_DIR"


class ConfigError(ValueError):
    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RunConfig:
    input: str = ""
    output_dir: str = "fakestream-run"
    family: str = "arfc"
    feature_set: str = "C"
    window: str = "full"            # full | fraction:<f> | count:<n>
    k: int = 10
    seed: int = 42
    # n-gram vectorizer
    ngram_min: int = 1
    ngram_max: int = 3
    max_df: float = 0.7
    min_df: float = 0.01
    # frequency lexicon
    lexicon_ngram_min: int = 2
    lexicon_ngram_max: int = 4
    lexicon_size: int = 700
    lexicon_min_freq: int = 1
    lexicon_warmup_fraction: float = 0.05
    lexicon_warmup_count: int = 300
    lexicon_rebuild_every: int = 100
    expected_size: int = 0          # 0: use the stream length when it is known
    # adaptive random forest
    arf_models: int = 200
    arf_features: int = 50
    arf_lambda: float = 50.0
    arf_grace: int = 50
    arf_delta: float = 0.01
    arf_tie: float = 0.05
    arf_depth: int = 50
    warning_delta: float = 0.01
    drift_delta: float = 0.002
    # hoeffding tree
    htc_depth: int = 50
    htc_tie: float = 0.5
    htc_maxsize: int = 50
    htc_grace: int = 200
    htc_delta: float = 1e-7
    # hoeffding adaptive tree
    hatc_depth: int = 50
    hatc_tie: float = 0.5
    hatc_maxsize: int = 200
    hatc_grace: int = 200
    hatc_delta: float = 1e-7
    hatc_adwin_delta: float = 0.002
    # features
    variance_threshold: float = 0.0
    timezone_cap: int = 64
    ms_per_char: float = 14.69
    # lexicon data files (empty: shipped files)
    stopwords_path: str = ""
    lemmas_path: str = ""
    corpus_path: str = ""
    bad_words_path: str = ""
    easy_words_path: str = ""
    pos_tags_path: str = ""
    polarity_path: str = ""
    emotion_path: str = ""
    # outputs
    explain_k: int = 5
    explain_every: int = 0
    explain_ids: str = ""
    explain_format: str = "structured"
    metrics_every: int = 100
    snapshot_every: int = 1000

    # -- validation -----------------------------------------------------
    def validate(self):
        if self.family not in ("gnb", "htc", "hatc", "arfc"):
            raise ConfigError("family", f"must be one of gnb, htc, hatc, arfc (got {self.family!r})")
        if self.feature_set not in ("A", "B", "C"):
            raise ConfigError("feature_set", f"must be A, B or C (got {self.feature_set!r})")
        self.window_spec()
        if self.k < 1:
            raise ConfigError("k", "must be >= 1")
        if not 0.0 <= self.min_df <= self.max_df <= 1.0:
            raise ConfigError("min_df", "need 0 <= min_df <= max_df <= 1")
        if self.ngram_min < 1 or self.ngram_max < self.ngram_min:
            raise ConfigError("ngram_max", "need 1 <= ngram_min <= ngram_max")
        if self.lexicon_ngram_min < 1 or self.lexicon_ngram_max < self.lexicon_ngram_min:
            raise ConfigError("lexicon_ngram_max", "need 1 <= lexicon_ngram_min <= lexicon_ngram_max")
        for name in ("arf_models", "arf_features", "lexicon_size", "metrics_every", "snapshot_every",
                     "htc_grace", "hatc_grace", "arf_grace", "explain_k"):
            if getattr(self, name) < 1:
                raise ConfigError(name, "must be >= 1")
        if self.arf_lambda <= 0:
            raise ConfigError("arf_lambda", "must be > 0")
        if self.explain_format not in ("structured", "text", "html"):
            raise ConfigError("explain_format", "must be structured, text or html")
        return self

    def window_spec(self):
        """('full', None) | ('fraction', f) | ('count', n)."""
        w = str(self.window).strip().lower()
        if w == "full":
            return "full", None
        kind, _, value = w.partition(":")
        try:
            if kind == "fraction":
                f = float(value)
                if not 0.0 < f <= 1.0:
                    raise ValueError
                return "fraction", f
            if kind == "count":
                n = int(value)
                if n < 1:
                    raise ValueError
                return "count", n
        except ValueError:
            pass
        raise ConfigError("window", f"expected full, fraction:<0-1> or count:<n> (got {self.window!r})")

    def classifier_params(self):
        if self.family == "htc":
            return dict(max_depth=self.htc_depth, tau=self.htc_tie, max_size=self.htc_maxsize,
                        grace_period=self.htc_grace, delta=self.htc_delta)
        if self.family == "hatc":
            return dict(max_depth=self.hatc_depth, tau=self.hatc_tie, max_size=self.hatc_maxsize,
                        grace_period=self.hatc_grace, delta=self.hatc_delta,
                        adwin_delta=self.hatc_adwin_delta)
        if self.family == "arfc":
            return dict(n_models=self.arf_models, max_features=self.arf_features,
                        lambda_value=self.arf_lambda, grace_period=self.arf_grace,
                        delta=self.arf_delta, tau=self.arf_tie, max_depth=self.arf_depth,
                        warning_delta=self.warning_delta, drift_delta=self.drift_delta)
        return {}

    def resource_overrides(self):
        keys = ("stopwords", "lemmas", "corpus", "bad_words", "easy_words", "pos_tags", "polarity", "emotion")
        return {k: getattr(self, k + "_path") for k in keys if getattr(self, k + "_path")}

    # -- serialization ----------------------------------------------------
    def to_text(self):
        lines = [f"{f.name} = {getattr(self, f.name)}" for f in fields(self)]
        return "\n".join(lines) + "\n"


FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name, raw):
    kind = FIELD_TYPES[name]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(name, f"cannot parse {raw!r} as {kind}") from None
    return str(raw)


def parse_config_text(text):
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(key or f"line {lineno}", "expected key = value")
        if key not in FIELD_TYPES:
            raise ConfigError(key, "unknown key")
        values[key] = _coerce(key, value.strip())
    return values


def load_config(path=None, overrides=None, env=None):
    """Defaults < config file < explicit overrides; output dir env var wins over the file."""
    values = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    env = os.environ if env is None else env
    if env.get(OUTPUT_ENV):
        values["output_dir"] = env[OUTPUT_ENV]
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in FIELD_TYPES:
            raise ConfigError(key, "unknown key")
        values[key] = _coerce(key, value)
    return RunConfig(**values).validate()
