import pytest

from remod import anaphora, depgraph, extract, fixtures
from remod.depgraph import (DependencyLabel, ParsedDocument, ParsedSentence,
                            Token, TypedDependency)
from remod.lexicon import load_lexicon


@pytest.fixture(scope="session")
def lex():
    return load_lexicon()


def make_sentence(words, deps, seq=0, flow_tag="none", step_label=None, text=None):
    """words: (surface, lemma, pos) triples; deps: (label, governor, dependent)."""
    tokens = [Token(i + 1, s, l, p) for i, (s, l, p) in enumerate(words)]
    tds = [TypedDependency(DependencyLabel.parse(lab), g, d, i)
           for i, (lab, g, d) in enumerate(deps)]
    sent = ParsedSentence(seq=seq, text=text or " ".join(w[0] for w in words),
                          flow_tag=flow_tag, step_label=step_label,
                          tokens=tokens, deps=tds)
    sent.validate()
    return sent


def make_doc(*sentences, source_id="synthetic", format="general"):
    return ParsedDocument(source_id=source_id, format=format,
                          sentences=list(sentences))


def build(doc, lex, **kw):
    resolved = anaphora.resolve_pronouns(doc, lex)
    return extract.build_er_model(resolved, lex, **kw)


@pytest.fixture(scope="session")
def cs_models(lex):
    out = {}
    for name in ("cs1_online_order", "cs2_user_stories", "cs3_witness_ucs"):
        doc, gold = fixtures.fixture(name)
        resolved = anaphora.resolve_pronouns(doc, lex)
        out[name] = (resolved, extract.build_er_model(resolved, lex), gold)
    return out
