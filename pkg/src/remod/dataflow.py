"""Input/output categorization of attributes w.r.t. the triggering operation."""

from __future__ import annotations

from dataclasses import dataclass

from .depgraph import ParsedDocument
from .extract import ERModel, _DocExtraction
from .lexicon import Lexicon

TRIGGER_LABELS = ("nsubj", "nsubjpass", "dobj", "iobj", "pobj", "mark")
SCAN_LABELS = ("nsubj", "nsubjpass", "dobj", "iobj", "pobj", "mark")
AGENT_SUBTYPES = ("by", "agent", "with")


@dataclass(frozen=True)
class DataRole:
    attribute: str              # canonical name in the attribute set
    role: str                   # input | output
    operation: str              # verb lemma that decided the role
    provenance: tuple           # (sentence seq, TD ordinal)
    label: str = ""             # site-qualified name (compound completion)


def categorize_attributes(doc: ParsedDocument, er: ERModel, lex: Lexicon,
                          tdr29_mode: str = "prose") -> list[DataRole]:
    """Apply the verb-class rules and collect one role per reachable attribute."""
    ex: _DocExtraction = getattr(er, "_extraction", None) or _DocExtraction(doc, lex)
    merged = getattr(er, "_attr_merged", {})
    roles: list[DataRole] = []
    seen = set()

    def canonical(ev) -> str | None:
        if ev.container_mod is not None:
            name = ev.container_mod.lemma
        else:
            name = ev.name_with(ex.confirmed)
        name = merged.get(name, name)
        if name in er.attributes:
            return name
        for a in er.attributes:
            if set(name.split()) <= set(a.split()):
                return a
        return None

    def role_label(scan, ev, d_idx) -> str:
        # role names keep the compound completion; an adjective joins only
        # when its amod immediately precedes the scanned TD
        sent = scan.sent
        prev = sent.deps[d_idx - 1] if d_idx > 0 else None
        adjacent_adj = None
        if prev is not None and prev.label.base in ("amod", "advmod") \
                and prev.governor == ev.token:
            dep = sent.token(prev.dependent)
            if dep.is_adjective:
                adjacent_adj = dep.lemma
        comp = sorted((sent.token(d.dependent) for d in sent.deps
                       if d.label.base == "compound" and d.governor == ev.token),
                      key=lambda t: t.index)
        parts = ([adjacent_adj] if adjacent_adj else []) \
            + [t.lemma for t in comp if t.is_noun_like] + [ev.head_lemma]
        return " ".join(parts)

    def emit(scan_i, scan, token, role, verb, d):
        for ev in scan.attr_events:
            if ev.token != token or ev.dropped:
                continue
            name = canonical(ev)
            if name is None:
                continue
            if ev.container_mod is not None:
                label = name          # "tax information" categorizes "tax"
            else:
                d_idx = next((i for i, dd in enumerate(scan.sent.deps) if dd is d), 0)
                label = role_label(scan, ev, d_idx)
            key = (name, role, verb, label)
            if key in seen:
                continue
            seen.add(key)
            roles.append(DataRole(attribute=name, role=role, operation=verb,
                                  provenance=(scan.sent.seq, d.ordinal), label=label))
            break

    for scan_i, scan in enumerate(ex.scans):
        sent = scan.sent
        triggered = set()
        for i, d in enumerate(sent.deps):
            base, sub = d.label.base, d.label.subtype
            is_trigger = base in TRIGGER_LABELS or (base == "nmod" and sub == "to")
            if not is_trigger:
                continue
            verb_idx = d.governor
            if not verb_idx:
                continue
            verb = sent.token(verb_idx)
            if not verb.is_verb or verb_idx in triggered:
                continue
            role = None
            if verb.lemma in lex.input_verbs:
                role = "input"                                   # rule 27
            elif verb.lemma in lex.output_verbs:
                role = "output"                                  # rule 28
            elif verb.lemma in lex.ambiguous_verbs:              # rule 29
                subj = next((s for v, s, _ in scan.subjects if v == verb_idx), None)
                subj_tok = sent.token(subj) if subj else None
                system = subj_tok is not None and subj_tok.lemma in lex.system_nouns
                if tdr29_mode == "prose":
                    role = "input" if system else "output"
                else:
                    role = "output" if system else "input"
            if role is None:
                continue
            triggered.add(verb_idx)
            # scan forward from the trigger to the end of the sentence
            for j in range(i, len(sent.deps)):
                d2 = sent.deps[j]
                b2, s2 = d2.label.base, d2.label.subtype
                if b2 in SCAN_LABELS or (b2 == "nmod" and s2 == "to") \
                        or (b2 == "conj" and s2 in ("and", "or")):
                    emit(scan_i, scan, d2.dependent, role, verb.lemma, d2)

        # passive/agent phrases classify by the participle's class (rule 30/31)
        for i, d in enumerate(sent.deps):
            if d.label.base != "nmod" or d.label.subtype not in AGENT_SUBTYPES:
                continue
            verb_idx = d.governor
            if not verb_idx:
                continue
            verb = sent.token(verb_idx)
            if not verb.is_verb:
                continue
            role = None
            if verb.lemma in lex.input_verbs:
                role = "input"
            elif verb.lemma in lex.output_verbs:
                role = "output"
            if role is None:
                continue
            for j in range(0, i):
                d2 = sent.deps[j]
                if d2.label.base in SCAN_LABELS or (
                        d2.label.base == "conj" and d2.label.subtype in ("and", "or")):
                    emit(scan_i, scan, d2.dependent, role, verb.lemma, d2)
    return roles
