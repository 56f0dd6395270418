"""Stable JSON serialization of models and DOT diagram source."""

from __future__ import annotations

import json
from collections import defaultdict

from .bp import BPModel, Control, FlowStep
from .extract import Cardinality, ERModel, Relationship

SCHEMA_VERSION = "1.0"


def model_document(er: ERModel, bp: BPModel | None, roles, source_id: str = "") -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "source_id": source_id,
        "entities": [
            {"name": e.name, "frequency": e.frequency,
             "provenance": [list(p) for p in e.provenance]}
            for e in sorted(er.entities.values(), key=lambda e: e.name)
        ],
        "attributes": [
            {"name": a.name, "owner": a.owner,
             "provenance": [list(p) for p in a.provenance]}
            for a in sorted(er.attributes.values(), key=lambda a: a.name)
        ],
        "relationships": [
            {"subject": r.subject, "verb": r.verb_phrase,
             "object": r.object, "origin": r.origin}
            for r in sorted(er.relationships,
                            key=lambda r: (r.subject, r.verb_phrase, r.object))
        ],
        "cardinalities": [
            {"entity": c.entity, "value": c.value, "end": c.end,
             "modality": c.modality,
             "relationship": ([c.relationship.subject, c.relationship.verb_phrase,
                               c.relationship.object] if c.relationship else None)}
            for c in sorted(er.cardinalities,
                            key=lambda c: (c.entity, c.value, c.end or "",
                                           str(c.relationship)))
        ],
        "data_roles": [
            {"attribute": r.attribute, "role": r.role, "operation": r.operation,
             "label": r.label, "provenance": list(r.provenance)}
            for r in sorted(roles, key=lambda r: (r.attribute, r.role, r.operation, r.label))
        ],
        "bp_steps": [],
        "bp_edges": [],
        "diagnostics": sorted(set(er.diagnostics) | set(bp.diagnostics if bp else [])),
    }
    if bp is not None:
        for s in bp.steps:
            rec = {"step_id": s.step_id, "path": s.path, "actor": s.actor,
                   "verb": s.verb, "data_in": s.data_in, "data_out": s.data_out,
                   "entity_refs": s.entity_refs, "provenance": s.provenance,
                   "unsourced": s.unsourced, "control": None}
            if s.control is not None:
                rec["control"] = {"condition": s.control.condition,
                                  "then_branch": s.control.then_branch,
                                  "else_branch": s.control.else_branch,
                                  "jump": s.control.jump}
            doc["bp_steps"].append(rec)
        doc["bp_edges"] = [list(e) for e in bp.edges]
    return doc


def write_model(er: ERModel, bp: BPModel | None, roles, path, source_id: str = "") -> None:
    doc = model_document(er, bp, roles, source_id)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def read_model(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if "schema_version" not in doc:
        raise ValueError(f"{path}: not a model document")
    return doc


def _ident(name: str, prefix: str) -> str:
    return prefix + "_" + "".join(ch if ch.isalnum() else "_" for ch in name)


def er_diagram(er: ERModel) -> str:
    """DOT source: entity boxes, attribute ellipses, one diamond per entity pair."""
    lines = ["graph er {", "  graph [layout=neato, overlap=false];",
             "  node [fontsize=10];"]
    for name in sorted(er.entities):
        lines.append(f'  {_ident(name, "e")} [shape=box, label="{name}"];')
    for att in sorted(er.attributes.values(), key=lambda a: a.name):
        lines.append(f'  {_ident(att.name, "a")} [shape=ellipse, label="{att.name}"];')
        if att.owner and att.owner in er.entities:
            lines.append(f'  {_ident(att.owner, "e")} -- {_ident(att.name, "a")};')
    pair_verbs = defaultdict(list)
    pair_cards = {}
    for c in er.cardinalities:
        if c.relationship is not None:
            r = c.relationship
            pair = tuple(sorted((r.subject, r.object)))
            pair_cards.setdefault((pair, c.entity), c.value)
    for r in sorted(er.relationships, key=lambda r: (r.subject, r.verb_phrase, r.object)):
        pair = tuple(sorted((r.subject, r.object)))
        if r.verb_phrase not in pair_verbs[pair]:
            pair_verbs[pair].append(r.verb_phrase)
    for pair, verbs in sorted(pair_verbs.items()):
        a, b = pair
        if a not in er.entities or b not in er.entities:
            continue
        diamond = _ident(a + "__" + b, "r")
        label = "/".join(verbs)
        lines.append(f'  {diamond} [shape=diamond, label="{label}"];')
        ca = pair_cards.get((pair, a), "")
        cb = pair_cards.get((pair, b), "")
        lines.append(f'  {_ident(a, "e")} -- {diamond} [label="{ca}"];')
        lines.append(f'  {diamond} -- {_ident(b, "e")} [label="{cb}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_STEREOTYPE = {
    "external": "<<External Action>>",
    "alternate_external": "<<Alternate External Action>>",
    "system": "<<System Action>>",
    "alternate_system": "<<Alternate System Actions>>",
    "exception": "<<Exception>>",
}


def bp_diagram(bp: BPModel) -> str:
    """DOT source: rounded step nodes, open data nodes, solid data / dashed control edges."""
    lines = ["digraph bp {", "  rankdir=TB;", "  node [fontsize=10];"]
    data_nodes = {}
    for s in bp.steps:
        stereo = _STEREOTYPE[s.path]
        label = f"{stereo}\\n{s.actor}: {s.verb}"
        lines.append(f'  step{s.step_id} [shape=box, style=rounded, label="{label}"];')
        for name in list(s.data_in) + list(s.data_out):
            if name not in data_nodes:
                data_nodes[name] = _ident(name, "d")
                lines.append(f'  {data_nodes[name]} [shape=note, label="{name}"];')
    for s in bp.steps:
        for name in s.data_out:
            lines.append(f"  step{s.step_id} -> {data_nodes[name]};")
        for name in s.data_in:
            lines.append(f"  {data_nodes[name]} -> step{s.step_id};")
    for a, b, kind in bp.edges:
        style = "solid" if kind == "data" else "dashed"
        lines.append(f"  step{a} -> step{b} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
