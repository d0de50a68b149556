"""Per-prediction explanations: features, confidence, lexica, cluster profile and tree path."""
from __future__ import annotations

import html
import json
import math
import textwrap
from dataclasses import asdict, dataclass, field

import numpy as np

from .features import CLUSTER_FEATURES, TRACKED, is_textual, profile_class
from .features.assemble import AVG_SUFFIX
from .ingest import CLASSES
from .learn.arf import AdaptiveRandomForest
from .learn.gnb import GaussianNB
from .learn.hat import HoeffdingAdaptiveTree
from .learn.hoeffding import HoeffdingTree

FORMATS = ("structured", "text", "html")
MAX_SELECTED = 8
TEXT_WIDTH = 100
COLD_SENTENCE = "The model predicted from overall class frequencies (no splits yet)."
INSUFFICIENT = "insufficient history"
PROFILES = ("creator", "content", "context")
BLOCK_TITLES = {
    "features": "Selected features",
    "prediction": "Prediction",
    "lexicon": "Lexicon elements",
    "cluster": "Cluster characteristic features",
}


def label_text(label):
    return CLASSES[label].replace("_", "-") if isinstance(label, int) else str(label).replace("_", "-")


def confidence_text(p):
    return f"{100.0 * p:.0f}%"


@dataclass
class Explanation:
    event_id: str
    label: str
    confidence: float                      # percent, 0..100
    cold: bool
    features: dict                         # profile -> list of feature rows
    fake_lexicon: list
    nonfake_lexicon: list
    cluster: int
    cluster_features: list
    path: list
    transcript: list
    marker: str | None = None
    cluster_marker: str | None = None
    model: str = ""
    member: int | None = None
    proba: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def decision_path(tree, x, names=None):
    """Root-to-leaf tests of ``tree`` for ``x`` as dicts (empty for a single leaf)."""
    out = []
    for f, thr, direction, value in tree.decision_path(x):
        name = names[f] if names is not None and f < len(names) else f"f{f}"
        out.append({"feature": name, "index": int(f), "threshold": float(thr),
                    "direction": direction, "value": float(value)})
    return out


def replay_path(tree, path):
    """Leaf reached by following ``path`` through ``tree``."""
    steps = [(p["index"], p["threshold"], p["direction"]) for p in path]
    return tree.follow(steps)


def cluster_characteristic_features(kmeans, cid, means, stds, k, names=CLUSTER_FEATURES):
    """The k centroid coordinates farthest (in |z|) from the global running mean.

    Returns (list of (name, z), marker); the marker is set for an empty cluster.
    """
    if kmeans.centroids is None or cid >= kmeans.n_active or kmeans.counts[cid] == 0:
        return [], "empty cluster"
    c = kmeans.centroids[cid]
    means = np.asarray(means, dtype=float)
    stds = np.asarray(stds, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(stds > 0, (c[: len(means)] - means) / np.where(stds > 0, stds, 1.0), 0.0)
    order = sorted(range(len(z)), key=lambda j: (-abs(z[j]), j))
    return [(names[j], float(z[j])) for j in order[:k]], None


def render_step(step):
    op = "≤" if step["direction"] == "left" else ">"
    return (f"Because {step['feature']} was {step['value']:.2f}, which is {op} "
            f"{step['threshold']:.2f}, the model followed the {step['direction']} branch.")


def transcript_for(path, label, p):
    if not path:
        sentences = [COLD_SENTENCE]
    else:
        sentences = [render_step(s) for s in path]
        sentences.append(f"The post was classified as {label_text(label)} with "
                         f"{confidence_text(p)} confidence.")
    return sentences


def _feature_rows(selected, values, split_names, has_history):
    """Rows for the displayed features, grouped by profile class."""
    base = [n for n in selected if not is_textual(n)]
    chosen = [n for n in split_names if n in selected][:MAX_SELECTED]
    if not chosen:
        chosen = base[:MAX_SELECTED]
    groups = {p: [] for p in PROFILES}
    for name in chosen:
        value = float(values.get(name, 0.0))
        avg = values.get(name + AVG_SUFFIX) if name in TRACKED else None
        warn = bool(has_history and avg is not None and value != avg)
        groups[profile_class(name)].append({
            "name": name, "value": value,
            "user_average": None if avg is None else float(avg),
            "warning": warn,
        })
    return groups


def _recent_split_names(tree, names):
    """Features the tree currently splits on, most recently created node first."""
    nodes = []
    stack = [tree.root] if tree is not None and tree.root is not None else []
    while stack:
        node = stack.pop()
        if not node.is_leaf:
            nodes.append(node)
            stack.extend(node.children)
    nodes.sort(key=lambda n: -n.id)
    seen, out = set(), []
    for n in nodes:
        nm = names[n.feature] if n.feature < len(names) else f"f{n.feature}"
        if nm not in seen:
            seen.add(nm)
            out.append(nm)
    return out


def model_kind(model):
    if isinstance(model, GaussianNB):
        return "gnb"
    if isinstance(model, AdaptiveRandomForest):
        return "arfc"
    if isinstance(model, HoeffdingAdaptiveTree):
        return "hatc"
    return "htc"


def explaining_tree(model, x, label):
    """(tree, member index) whose path is shown; None for non-tree models."""
    if isinstance(model, AdaptiveRandomForest):
        i = model.best_member(x, label)
        return model.members[i].tree, i
    if isinstance(model, HoeffdingTree):
        return model, None
    return None, None


def build_explanation(event, selected, values, prediction, lexicon, kmeans, model, x, names,
                      cluster_means, cluster_stds, k=5, has_history=False):
    """Assemble the explanation for one prediction (call before the model learns)."""
    label = prediction.label
    p = float(prediction.proba[label])
    tree, member = (None, None) if prediction.cold else explaining_tree(model, x, label)
    path = decision_path(tree, x, names) if tree is not None else []
    split_names = _recent_split_names(tree, names) if tree is not None else []
    marker = INSUFFICIENT if prediction.cold else (None if tree is not None else "no decision tree")
    cfeat, cmark = cluster_characteristic_features(kmeans, prediction.cluster, cluster_means,
                                                   cluster_stds, k)
    kind = model_kind(model)
    return Explanation(
        event_id=str(event.tweet_id),
        label=CLASSES[label],
        confidence=100.0 * p,
        cold=bool(prediction.cold),
        features=_feature_rows(selected, values, split_names, has_history),
        fake_lexicon=[[g, int(f)] for g, f in lexicon.fake[:k]],
        nonfake_lexicon=[[g, int(f)] for g, f in lexicon.non_fake[:k]],
        cluster=int(prediction.cluster),
        cluster_features=[[n, z] for n, z in cfeat],
        path=path,
        transcript=transcript_for(path, label, p),
        marker=marker,
        cluster_marker=cmark,
        model=kind,
        member=member,
        proba=[float(v) for v in prediction.proba],
    )


def explain_step(engine, step, k=5):
    """Explanation for an engine step, using the state that made the prediction."""
    pred = step.prediction
    model = engine.bank.models[pred.cluster]
    stats = engine.cluster_input_stats
    means = [stats.mean(n) or 0.0 for n in CLUSTER_FEATURES]
    stds = [stats.std(n) or 0.0 for n in CLUSTER_FEATURES]
    profile = engine.featurizer.profiles.get(step.event.user_id)
    return build_explanation(step.event, step.selected, step.item.vector.values, pred,
                             engine.lexicon, engine.bank.kmeans, model, step.x, engine.space.names,
                             means, stds, k, has_history=profile is not None and profile.n_posts > 0)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render_text(expl: Explanation) -> str:
    """The natural-language transcript: one sentence per path step plus the verdict."""
    return " ".join(expl.transcript)


def _fmt_avg(row):
    return "-" if row["user_average"] is None else f"{row['user_average']:.2f}"


def to_text(expl: Explanation, width=TEXT_WIDTH) -> str:
    lines = [f"Explanation for post {expl.event_id}", ""]
    lines.append(f"[{BLOCK_TITLES['features']}]")
    for prof in PROFILES:
        for row in expl.features.get(prof, []):
            flag = "WARNING" if row["warning"] else "OK"
            lines.append(f"  {prof:<8} {row['name'][:40]:<40} {row['value']:>12.2f}  avg {_fmt_avg(row):>10}  {flag}")
    lines += ["", f"[{BLOCK_TITLES['prediction']}]"]
    lines.append(f"  {label_text(expl.label)} with {expl.confidence:.0f}% confidence"
                 + (f" ({expl.marker})" if expl.marker else ""))
    lines += ["", f"[{BLOCK_TITLES['lexicon']}]"]
    for title, items in (("fake", expl.fake_lexicon), ("non-fake", expl.nonfake_lexicon)):
        shown = ", ".join(f"{g} ({f})" for g, f in items) or "(empty)"
        lines.extend(textwrap.wrap(f"{title}: {shown}", width, initial_indent="  ", subsequent_indent="    "))
    lines += ["", f"[{BLOCK_TITLES['cluster']}]", f"  cluster {expl.cluster}"
              + (f" ({expl.cluster_marker})" if expl.cluster_marker else "")]
    for name, z in expl.cluster_features:
        lines.append(f"  {name[:60]:<60} z = {z:+.2f}")
    lines += ["", "[Decision path]"]
    for sentence in expl.transcript:
        lines.extend(textwrap.wrap(sentence, width, initial_indent="  ", subsequent_indent="    "))
    return "\n".join(line[:width] for line in lines) + "\n"


def to_html(expl: Explanation) -> str:
    e = html.escape
    out = ["<!DOCTYPE html>", "<html><head><meta charset=\"utf-8\">",
           f"<title>Explanation {e(expl.event_id)}</title></head><body>",
           f"<h1>Explanation for post {e(expl.event_id)}</h1>"]
    out.append(f"<section id=\"features\"><h2>{BLOCK_TITLES['features']}</h2><table>")
    out.append("<tr><th>profile</th><th>feature</th><th>value</th><th>user average</th><th>status</th></tr>")
    for prof in PROFILES:
        for row in expl.features.get(prof, []):
            status = "&#9888; warning" if row["warning"] else "&#10004; OK"
            out.append(f"<tr><td>{prof}</td><td>{e(row['name'])}</td><td>{row['value']:.2f}</td>"
                       f"<td>{_fmt_avg(row)}</td><td>{status}</td></tr>")
    out.append("</table></section>")
    marker = f" ({e(expl.marker)})" if expl.marker else ""
    out.append(f"<section id=\"prediction\"><h2>{BLOCK_TITLES['prediction']}</h2>"
               f"<p>{e(label_text(expl.label))} with {expl.confidence:.0f}% confidence{marker}</p></section>")
    out.append(f"<section id=\"lexicon\"><h2>{BLOCK_TITLES['lexicon']}</h2>")
    for title, items in (("fake", expl.fake_lexicon), ("non-fake", expl.nonfake_lexicon)):
        out.append(f"<h3>{title}</h3><ol>" + "".join(f"<li>{e(g)} ({f})</li>" for g, f in items) + "</ol>")
    out.append("</section>")
    out.append(f"<section id=\"cluster\"><h2>{BLOCK_TITLES['cluster']}</h2><p>cluster {expl.cluster}</p><ol>")
    out.extend(f"<li>{e(n)}: z = {z:+.2f}</li>" for n, z in expl.cluster_features)
    out.append("</ol></section>")
    out.append("<section id=\"path\"><h2>Decision path</h2><ol>")
    out.extend(f"<li>{e(s)}</li>" for s in expl.transcript)
    out.append("</ol></section></body></html>")
    return "\n".join(out) + "\n"


def to_structured(expl: Explanation) -> str:
    return json.dumps(_clean(expl.to_dict()), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _clean(obj):
    # json cannot carry nan/inf; they never occur in valid explanations
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError("non-finite value in explanation")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def parse_structured(text: str) -> Explanation:
    return Explanation.from_dict(json.loads(text))


EXTENSIONS = {"structured": "json", "text": "txt", "html": "html"}


def emit_report(expl: Explanation, fmt="structured", path=None) -> str:
    if fmt == "structured":
        body = to_structured(expl)
    elif fmt == "text":
        body = to_text(expl)
    elif fmt == "html":
        body = to_html(expl)
    else:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(body)
    return body
