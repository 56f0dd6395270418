"""Scoring of extracted models against gold annotations (recall/precision/F1)."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction


class EvalError(ValueError):
    """Raised on schema mismatches or negative counts."""


@dataclass
class GoldAnnotation:
    entities: set = field(default_factory=set)
    attributes: set = field(default_factory=set)       # (owner or None, name)
    relationships: set = field(default_factory=set)    # (subject, verb, object)
    cardinalities: set = field(default_factory=set)    # (entity, value)
    roles: set = field(default_factory=set)            # (attribute, role)
    operations: set = field(default_factory=set)       # (path, actor, verb)


def load_gold(path) -> GoldAnnotation:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    gold = GoldAnnotation()
    for e in doc.get("entities", []):
        gold.entities.add(e if isinstance(e, str) else e["name"])
    for a in doc.get("attributes", []):
        if isinstance(a, dict):
            gold.attributes.add((a.get("owner"), a["name"]))
        else:
            gold.attributes.add((None, a))
    for r in doc.get("relationships", []):
        if isinstance(r, dict):
            gold.relationships.add((r["subject"], r["verb"], r["object"]))
        else:
            gold.relationships.add(tuple(r))
    for c in doc.get("cardinalities", []):
        if isinstance(c, dict):
            gold.cardinalities.add((c["entity"], str(c["value"])))
        else:
            gold.cardinalities.add((c[0], str(c[1])))
    for r in doc.get("roles", []):
        if isinstance(r, dict):
            gold.roles.add((r["attribute"], r["role"]))
        else:
            gold.roles.add(tuple(r))
    for o in doc.get("operations", []):
        if isinstance(o, dict):
            gold.operations.add((o.get("path"), o.get("actor"), o["verb"]))
        else:
            gold.operations.add(tuple(o))
    return gold


# ---- normalization ----

def _tokens(name: str) -> tuple:
    return tuple(sorted(name.lower().split()))


def norm_name(name: str) -> tuple:
    """Lemma-level, case-insensitive, token-multiset identity for names."""
    return _tokens(name)


def _strip_owner(owner: str | None, name: str) -> str:
    """Drop a leading owner prefix from an attribute name ("witness address"
    owned by witness == "address")."""
    if not owner:
        return name.lower()
    toks = name.lower().split()
    otoks = owner.lower().split()
    while len(toks) > 1 and toks[0] in otoks:
        toks = toks[1:]
    return " ".join(toks)


def norm_attribute(owner: str | None, name: str) -> tuple:
    return (norm_name(owner) if owner else None, _tokens(_strip_owner(owner, name)))


_LEMMA_SUFFIXES = ("sses", "xes", "zes", "ches", "shes", "oes")


def _verb_lemma(verb: str) -> str:
    head = verb.lower().split()[0]
    for suf in _LEMMA_SUFFIXES:
        if head.endswith(suf):
            return head[:-2]
    if head.endswith("ies") and len(head) > 4:
        return head[:-3] + "y"
    if head.endswith("s") and not head.endswith("ss"):
        return head[:-1]
    if head.endswith("ed") and len(head) > 4:
        root = head[:-2]
        return root[:-1] if root.endswith(("v", "rr")) else root
    return head


def norm_relationship(subject: str, verb: str, object_: str) -> tuple:
    # the entity pair is unordered: the source tables print directions
    # inconsistently, so only pair membership plus the verb lemma matter
    pair = tuple(sorted((norm_name(subject), norm_name(object_))))
    return (pair, _verb_lemma(verb))


_NORMALIZERS = {
    "entities": lambda item: norm_name(item),
    "attributes": lambda item: norm_attribute(*item),
    "relationships": lambda item: norm_relationship(*item),
    "cardinalities": lambda item: (norm_name(item[0]), str(item[1])),
    "roles": lambda item: (_tokens(item[0]), item[1]),
    "operations": lambda item: tuple(item),
}


def match(extracted, gold, kind: str):
    """(tp, fp, fn) under the kind's normalization."""
    norm = _NORMALIZERS[kind]
    ex = Counter(norm(x) for x in extracted)
    gd = Counter(norm(x) for x in gold)
    tp = sum((ex & gd).values())
    fp = sum((ex - gd).values())
    fn = sum((gd - ex).values())
    return tp, fp, fn


# ---- metrics ----

@dataclass
class MetricRow:
    kind: str
    tp: float
    fp: float
    fn: float
    rcl: int
    prc: int
    f1: int
    rcl_exact: Fraction
    prc_exact: Fraction
    f1_exact: Fraction


@dataclass
class EvalReport:
    rows: list = field(default_factory=list)

    def row(self, kind: str) -> MetricRow:
        for r in self.rows:
            if r.kind == kind:
                return r
        raise KeyError(kind)

    def as_dict(self) -> dict:
        return {"rows": [
            {"kind": r.kind, "tp": r.tp, "fp": r.fp, "fn": r.fn,
             "rcl": r.rcl, "prc": r.prc, "f1": r.f1} for r in self.rows]}

    def table(self) -> str:
        head = f"{'kind':<15}{'TP':>8}{'FP':>8}{'FN':>8}{'RCL%':>7}{'PRC%':>7}{'F1%':>7}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.kind:<15}{r.tp:>8g}{r.fp:>8g}{r.fn:>8g}"
                         f"{r.rcl:>7}{r.prc:>7}{r.f1:>7}")
        return "\n".join(lines)


def _round_half_up(x: Fraction) -> int:
    return int(x + Fraction(1, 2)) if x >= 0 else -int(-x + Fraction(1, 2))


def metrics(tp, fp, fn, kind: str = "") -> MetricRow:
    """RCL/PRC/F1 percentages from counts; zero when a denominator is zero."""
    if tp < 0 or fp < 0 or fn < 0:
        raise EvalError("negative count")
    ftp, ffp, ffn = (Fraction(str(v)) for v in (tp, fp, fn))
    rcl = Fraction(0) if ftp + ffn == 0 else 100 * ftp / (ftp + ffn)
    prc = Fraction(0) if ftp + ffp == 0 else 100 * ftp / (ftp + ffp)
    f1 = Fraction(0) if 2 * ftp + ffp + ffn == 0 else 200 * ftp / (2 * ftp + ffp + ffn)
    return MetricRow(kind=kind, tp=float(tp), fp=float(fp), fn=float(fn),
                     rcl=_round_half_up(rcl), prc=_round_half_up(prc),
                     f1=_round_half_up(f1),
                     rcl_exact=rcl, prc_exact=prc, f1_exact=f1)


# ---- whole-model evaluation ----

def _model_sets(doc: dict) -> dict:
    return {
        "entities": [e["name"] for e in doc.get("entities", [])],
        "attributes": [(a.get("owner"), a["name"]) for a in doc.get("attributes", [])],
        "relationships": [(r["subject"], r["verb"], r["object"])
                          for r in doc.get("relationships", [])],
        "cardinalities": sorted({(c["entity"], str(c["value"]))
                                 for c in doc.get("cardinalities", [])}),
        "roles": sorted({(r.get("label") or r["attribute"], r["role"])
                         for r in doc.get("data_roles", [])}),
        "operations": sorted({(s["path"], s["actor"], s["verb"])
                              for s in doc.get("bp_steps", [])}),
    }


def evaluate(model_doc: dict, gold: GoldAnnotation) -> EvalReport:
    sets = _model_sets(model_doc)
    gold_sets = {
        "entities": gold.entities, "attributes": gold.attributes,
        "relationships": gold.relationships, "cardinalities": gold.cardinalities,
        "roles": gold.roles, "operations": gold.operations,
    }
    report = EvalReport()
    for kind in ("entities", "attributes", "relationships",
                 "cardinalities", "roles", "operations"):
        if not gold_sets[kind]:
            continue    # nothing annotated for this kind
        tp, fp, fn = match(sets[kind], gold_sets[kind], kind)
        report.rows.append(metrics(tp, fp, fn, kind=kind))
    return report
