"""Pronoun replacement by referent nouns, applied before any rule runs."""

from __future__ import annotations

import copy
from dataclasses import replace

from .depgraph import ParsedDocument, ParsedSentence, Token
from .lexicon import Lexicon

# How far back rule (ii) searches for a subject noun, in sentences.
BACKWARD_WINDOW = 3

# Surface marker carried on tokens whose pronoun was replaced; extraction
# treats such tokens as referent mentions that do not count again.
RESOLVED_MARK = "resolved"


def _subject_noun(sentence: ParsedSentence) -> Token | None:
    for d in sentence.deps:
        if d.label.base in ("nsubj", "nsubjpass"):
            tok = sentence.token(d.dependent)
            if tok.is_noun_like:
                return tok
    return None


def _as_referent(sentence: ParsedSentence, pronoun: Token) -> Token | None:
    # Rule (i): same sentence has nmod:as(V, N) and the pronoun is a subject
    # of V (directly or through an xcomp chain): "As a visitor, I ..."
    subject_of = {d.dependent: d.governor for d in sentence.deps
                  if d.label.base in ("nsubj", "nsubjpass")}
    verb = subject_of.get(pronoun.index)
    if verb is None:
        return None
    verbs = {verb}
    changed = True
    while changed:
        changed = False
        for d in sentence.deps:
            if d.label.base in ("xcomp", "ccomp", "advcl", "acl") and \
                    d.dependent in verbs and d.governor not in verbs:
                verbs.add(d.governor)
                changed = True
            if d.label.base in ("xcomp", "ccomp", "advcl", "acl") and \
                    d.governor in verbs and d.dependent not in verbs:
                verbs.add(d.dependent)
                changed = True
    for d in sentence.deps:
        if d.label.base == "nmod" and d.label.subtype == "as" and d.governor in verbs:
            tok = sentence.token(d.dependent)
            if tok.is_noun_like:
                return tok
    return None


def resolve_pronouns(doc: ParsedDocument, lex: Lexicon,
                     warnings: list[str] | None = None) -> ParsedDocument:
    """Replace pronoun surfaces/lemmas with their referents; structure unchanged."""
    warnings = warnings if warnings is not None else []
    out = copy.deepcopy(doc)
    resolved_flags: dict[tuple[int, int], bool] = dict(getattr(doc, "resolved_pronouns", {}))
    backward_flags: set = set(getattr(doc, "backward_pronouns", set()))
    for si, sent in enumerate(out.sentences):
        for pos_in_list, tok in enumerate(list(sent.tokens)):
            if not (tok.is_pronoun and tok.surface.lower() in lex.pronouns):
                continue
            referent = _as_referent(sent, tok)
            backward = False
            if referent is None and tok.pos == "PRP$":
                # Earlier pronouns in the sentence resolve first, so a
                # possessive can pick up the just-resolved subject.
                same = _subject_noun(sent)
                if same is not None and same.index != tok.index:
                    referent = same
            if referent is None:
                referent = _backward_referent(out.sentences, si)
                backward = referent is not None
            if referent is None:
                warnings.append(f"sentence {sent.seq}: unresolved pronoun {tok.surface!r}")
                continue
            sent.tokens[pos_in_list] = replace(
                tok, surface=referent.surface, lemma=referent.lemma, pos=referent.pos)
            sent._reindex()
            resolved_flags[(sent.seq, tok.index)] = True
            if backward:
                backward_flags.add((sent.seq, tok.index))
    out.resolved_pronouns = resolved_flags
    out.backward_pronouns = backward_flags
    return out


def _backward_referent(sentences, current_index: int) -> Token | None:
    lo = max(0, current_index - BACKWARD_WINDOW)
    for j in range(current_index - 1, lo - 1, -1):
        tok = _subject_noun(sentences[j])
        if tok is not None:
            return tok
    return None


def is_resolved(doc: ParsedDocument, seq: int, index: int) -> bool:
    return getattr(doc, "resolved_pronouns", {}).get((seq, index), False)


def is_backward(doc: ParsedDocument, seq: int, index: int) -> bool:
    return (seq, index) in getattr(doc, "backward_pronouns", set())
