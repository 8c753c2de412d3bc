"""Precision, recall and F1 on the sarcastic class."""
from dataclasses import asdict, dataclass

from .corpus import Label
from .errors import EmptyDatasetError, LengthMismatchError


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float
    scenario: str = ""
    row: str = ""
    config: str = ""
    seed: int | None = None
    n_features: int | None = None
    base_features: int | None = None

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn

    def to_json(self):
        return asdict(self)


def prf(tp, fp, fn):
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def score(predictions, gold, **meta):
    """Confusion counts and P/R/F1 with Sarcastic as the positive class."""
    predictions, gold = list(predictions), list(gold)
    if len(predictions) != len(gold):
        raise LengthMismatchError(f"{len(predictions)} predictions for {len(gold)} gold labels")
    if not gold:
        raise EmptyDatasetError("nothing to score")
    tp = fp = fn = tn = 0
    for p, g in zip(predictions, gold):
        p_pos = Label(p) is Label.SARCASTIC
        g_pos = Label(g) is Label.SARCASTIC
        if p_pos and g_pos:
            tp += 1
        elif p_pos:
            fp += 1
        elif g_pos:
            fn += 1
        else:
            tn += 1
    return EvalReport(tp, fp, fn, tn, *prf(tp, fp, fn), **meta)
