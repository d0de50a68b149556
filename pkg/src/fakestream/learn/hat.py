from __future__ import annotations

import math

import numpy as np

from .adwin import ADWIN
from .hoeffding import HoeffdingTree, count_nodes

REPLACE_MIN_WIDTH = 300
REPLACE_DELTA = 0.05


class HoeffdingAdaptiveTree(HoeffdingTree):
    """Hoeffding tree whose nodes watch their own error with ADWIN.

    When a split node's error rises significantly an alternate subtree starts
    growing from a fresh leaf on the same samples.  Once both error windows
    are longer than 300 samples the alternate replaces the node if its error
    is lower by more than a confidence bound, or is discarded if it is worse
    by the same margin.  Without detected drift the main tree grows exactly
    like a plain Hoeffding tree.  Alternates have their own node budget.
    """

    def __init__(self, *args, adwin_delta=0.002, **kwargs):
        super().__init__(*args, **kwargs)
        self.adwin_delta = adwin_delta
        self.n_alternates = 0
        self.n_replacements = 0
        self.n_pruned = 0
        self.drift_events = []

    def _subtree_proba(self, node, x):
        while not node.is_leaf:
            node = node.children[node.branch(x)]
        return self.leaf_proba(node, x)

    def _monitor(self, node, x, y):
        if node.adwin is None:
            node.adwin = ADWIN(self.adwin_delta)
        correct = int(np.argmax(self._subtree_proba(node, x))) == y
        old = node.adwin.estimation
        node.adwin.update(0.0 if correct else 1.0)
        return node.adwin.drift_detected and node.adwin.estimation > old

    def learn(self, x, y, w=1.0):
        x = np.asarray(x, dtype=np.float64)
        self._ensure_root(x)
        self._learn_node(self.root, None, None, x, int(y), w, None)
        self.n_learned += w

    def _learn_node(self, node, parent, branch, x, y, w, budget_root):
        increased = self._monitor(node, x, y)
        if node.is_leaf:
            self._learn_leaf(node, parent, branch, x, y, w, budget_root)
            return
        if increased and node.alternate is None:
            node.alternate = self._new_leaf(node.depth)
            self.n_alternates += 1
            self.drift_events.append((self.n_learned, node.id, "alternate"))
        elif node.alternate is not None and node.alternate.adwin is not None:
            alt = node.alternate
            if alt.adwin.width > REPLACE_MIN_WIDTH and node.adwin.width > REPLACE_MIN_WIDTH:
                old_rate = node.adwin.estimation
                alt_rate = alt.adwin.estimation
                n_inv = 1.0 / alt.adwin.width + 1.0 / node.adwin.width
                bound = math.sqrt(2.0 * old_rate * (1.0 - old_rate) * math.log(2.0 / REPLACE_DELTA) * n_inv)
                if bound < old_rate - alt_rate:
                    self._replace(node, parent, branch, alt, budget_root)
                    self.n_replacements += 1
                    self.drift_events.append((self.n_learned, node.id, "replace"))
                    # the promoted subtree carries on with this sample
                    self._learn_node(alt, parent, branch, x, y, w, budget_root)
                    return
                if bound < alt_rate - old_rate:
                    node.alternate = None
                    self.n_pruned += 1
        if node.alternate is not None:
            self._learn_node(node.alternate, node, None, x, y, w, node.alternate)
        b = node.branch(x)
        self._learn_node(node.children[b], node, b, x, y, w, budget_root)

    def _replace(self, node, parent, branch, alt, budget_root):
        if parent is None:
            self.root = alt
        elif branch is None:
            parent.alternate = alt
        else:
            parent.children[branch] = alt
        if budget_root is None:
            self.n_nodes = count_nodes(self.root)


def hat_learn(x, y, model, w=1.0):
    model.learn(x, y, w)
    return model


def hat_predict_proba(x, model):
    return model.predict_proba(x)
