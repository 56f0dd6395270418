import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remod import depgraph, fixtures
from remod.depgraph import (DependencyLabel, LoadError, ParsedDocument,
                            ParsedSentence, StructuralError, Token,
                            TypedDependency, load_conllu, load_native,
                            save_native)

FIXTURES = ["cs1_online_order", "cs2_user_stories", "cs3_witness_ucs",
            "b1_ieee", "b1_general", "b1_descriptive", "b1_paragraph",
            "b2_ucs1", "b2_ucs2"]


def test_paper_listing_sentence(tmp_path):
    # the worked tape example: compound(tape-3, language-2) etc.
    doc, _ = fixtures.fixture("cs1_online_order")
    assert doc.format == "general"
    s0 = doc.sentences[0]
    assert [str(d) for d in s0.deps][0] == "root(0, 4)"
    assert s0.token(7).lemma == "cart"


def test_native_roundtrip_all_fixtures(tmp_path):
    for name in FIXTURES:
        doc, _ = fixtures.fixture(name)
        out = tmp_path / f"{name}.deps"
        save_native(doc, out)
        again = load_native(out)
        assert again.source_id == doc.source_id
        assert len(again.sentences) == len(doc.sentences)
        for a, b in zip(doc.sentences, again.sentences):
            assert a.tokens == b.tokens
            assert [(str(d.label), d.governor, d.dependent) for d in a.deps] == \
                   [(str(d.label), d.governor, d.dependent) for d in b.deps]
        # canonical files are byte-stable
        out2 = tmp_path / f"{name}2.deps"
        save_native(again, out2)
        assert out.read_bytes() == out2.read_bytes()


def test_empty_document_roundtrip(tmp_path):
    doc = ParsedDocument(source_id="empty", format="general")
    path = tmp_path / "empty.deps"
    save_native(doc, path)
    assert path.read_text() == "#doc empty general\n"
    assert load_native(path).sentences == []


def test_ordinals_follow_file_order(tmp_path):
    path = tmp_path / "f.deps"
    path.write_text("#doc x general\n#sent 0 none\nWord here.\n"
                    "T 1 Word word NN\nT 2 here here RB\nT 3 . . .\n"
                    "D 9 root 0 1\nD 3 advmod 1 2\nD 5 punct 1 3\n")
    doc = load_native(path)
    assert [d.ordinal for d in doc.sentences[0].deps] == [0, 1, 2]


def test_malformed_record_names_line(tmp_path):
    path = tmp_path / "bad.deps"
    path.write_text("#doc x general\n#sent 0 none\nHi.\nT one Hi hi NN\n")
    with pytest.raises(LoadError, match="line 4"):
        load_native(path)


def test_dangling_token_index_rejected(tmp_path):
    path = tmp_path / "dangle.deps"
    path.write_text("#doc x general\n#sent 0 none\nHi.\n"
                    "T 1 Hi hi NN\nD 0 root 0 1\nD 1 det 1 9\n")
    with pytest.raises(StructuralError, match="dangling"):
        load_native(path)


def test_exactly_one_root_enforced(tmp_path):
    path = tmp_path / "two.deps"
    path.write_text("#doc x general\n#sent 0 none\nHi there.\n"
                    "T 1 Hi hi NN\nT 2 there there RB\n"
                    "D 0 root 0 1\nD 1 root 0 2\n")
    with pytest.raises(StructuralError, match="roots"):
        load_native(path)


def test_unrecognized_label_preserved_and_flagged(tmp_path):
    path = tmp_path / "odd.deps"
    path.write_text("#doc x general\n#sent 0 none\nHi there.\n"
                    "T 1 Hi hi NN\nT 2 there there RB\n"
                    "D 0 root 0 1\nD 1 zzz:strange 1 2\n")
    warnings = []
    doc = load_native(path, warnings)
    lab = doc.sentences[0].deps[1].label
    assert not lab.recognized and str(lab) == "zzz:strange"
    assert any("unrecognized" in w for w in warnings)
    out = tmp_path / "odd2.deps"
    save_native(doc, out)
    assert "zzz:strange" in out.read_text()
    assert "// unrecognized" in out.read_text()


def test_hyphen_and_missing_period_warn_only(tmp_path):
    path = tmp_path / "warn.deps"
    path.write_text("#doc x general\n#sent 0 none\nweb-page text\n"
                    "T 1 web-page web-page NN\nT 2 text text NN\n"
                    "D 0 root 0 2\nD 1 compound 2 1\n")
    warnings = []
    load_native(path, warnings)
    assert any("hyphen" in w for w in warnings)
    assert any("period" in w for w in warnings)


def test_normalization_map():
    assert str(DependencyLabel.parse("nn")) == "compound"
    assert str(DependencyLabel.parse("prep_of")) == "nmod:of"
    assert str(DependencyLabel.parse("agent")) == "nmod:agent"
    assert str(DependencyLabel.parse("poss")) == "nmod:poss"
    assert str(DependencyLabel.parse("conj_and")) == "conj:and"
    assert str(DependencyLabel.parse("complm")) == "mark"
    assert str(DependencyLabel.parse("infmod")) == "vmod"
    assert str(DependencyLabel.parse("num")) == "nummod"
    assert DependencyLabel.parse("nmod:poss").subtype == "poss"


CONLLU = """\
# text = A language tape has a title language and level.
1\tA\ta\tDET\tDT\t_\t3\tdet\t_\t_
2\tlanguage\tlanguage\tNOUN\tNN\t_\t3\tcompound\t_\t_
3\ttape\ttape\tNOUN\tNN\t_\t4\tnsubj\t_\t_
4\thas\thave\tVERB\tVBZ\t_\t0\troot\t_\t_
5\ta\ta\tDET\tDT\t_\t7\tdet\t_\t_
6\ttitle\ttitle\tNOUN\tNN\t_\t7\tcompound\t_\t_
7\tlanguage\tlanguage\tNOUN\tNN\t_\t4\tdobj\t_\t_
8\tand\tand\tCCONJ\tCC\t_\t7\tcc\t_\t_
9\tlevel\tlevel\tNOUN\tNN\t_\t7\tconj:and\t_\t_
10\t.\t.\tPUNCT\t.\t_\t4\tpunct\t_\t_
"""


def test_conllu_matches_native_td_multiset(tmp_path):
    cpath = tmp_path / "tape.conllu"
    cpath.write_text(CONLLU)
    cdoc = load_conllu(cpath)
    npath = tmp_path / "tape.deps"
    npath.write_text(
        "#doc tape general\n#sent 0 none\n"
        "A language tape has a title language and level.\n"
        "T 1 A a DT\nT 2 language language NN\nT 3 tape tape NN\n"
        "T 4 has have VBZ\nT 5 a a DT\nT 6 title title NN\n"
        "T 7 language language NN\nT 8 and and CC\nT 9 level level NN\n"
        "T 10 . . .\n"
        "D 0 root 0 4\nD 1 det 3 1\nD 2 compound 3 2\nD 3 nsubj 4 3\n"
        "D 4 det 7 5\nD 5 compound 7 6\nD 6 dobj 4 7\nD 7 cc 7 8\n"
        "D 8 conj:and 7 9\nD 9 punct 4 10\n")
    ndoc = load_native(npath)

    def tdset(doc):
        return {(str(d.label), d.governor, d.dependent)
                for d in doc.sentences[0].deps}

    assert tdset(cdoc) == tdset(ndoc)
    assert ("compound", 3, 2) in tdset(cdoc)   # compound(tape-3, language-2)


def test_conllu_root_only(tmp_path):
    p = tmp_path / "mini.conllu"
    p.write_text("1\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n")
    doc = load_conllu(p)
    assert len(doc.sentences[0].deps) == 1
    assert doc.sentences[0].deps[0].label.base == "root"


def test_conllu_subtype_mapping(tmp_path):
    p = tmp_path / "poss.conllu"
    p.write_text("1\this\this\tPRON\tPRP$\t_\t2\tnmod:poss\t_\t_\n"
                 "2\tname\tname\tNOUN\tNN\t_\t0\troot\t_\t_\n")
    d = load_conllu(p).sentences[0].deps[0]
    assert (d.label.base, d.label.subtype) == ("nmod", "poss")


def test_conllu_bad_head(tmp_path):
    p = tmp_path / "bad.conllu"
    p.write_text("1\tGo\tgo\tVERB\tVB\t_\tX\troot\t_\t_\n")
    with pytest.raises(LoadError, match="HEAD"):
        load_conllu(p)


def test_conllu_missing_columns(tmp_path):
    p = tmp_path / "cols.conllu"
    p.write_text("1\tGo\tgo\tVERB\n")
    with pytest.raises(LoadError, match="columns"):
        load_conllu(p)


_word = st.text(alphabet="abcdefg", min_size=1, max_size=6)


@st.composite
def documents(draw):
    n_sents = draw(st.integers(1, 3))
    sentences = []
    for seq in range(n_sents):
        n = draw(st.integers(1, 5))
        tokens = [Token(i + 1, draw(_word), draw(_word), draw(st.sampled_from(
            ["NN", "NNS", "VB", "JJ", "DT"]))) for i in range(n)]
        root_i = draw(st.integers(1, n))
        deps = [TypedDependency(DependencyLabel.parse("root"), 0, root_i, 0)]
        for i in range(1, n + 1):
            if i == root_i:
                continue
            deps.append(TypedDependency(
                DependencyLabel.parse(draw(st.sampled_from(
                    ["det", "nsubj", "dobj", "compound", "amod", "nmod:of"]))),
                root_i, i, len(deps)))
        sentences.append(ParsedSentence(
            seq=seq, text=" ".join(t.surface for t in tokens) + ".",
            flow_tag=draw(st.sampled_from(depgraph.FLOW_TAGS)),
            tokens=tokens, deps=deps))
    return ParsedDocument(source_id=draw(_word), format="general",
                          sentences=sentences)


@given(documents())
@settings(max_examples=60, deadline=None)
def test_roundtrip_property(tmp_path_factory, doc):
    path = tmp_path_factory.mktemp("rt") / "doc.deps"
    save_native(doc, path)
    again = load_native(path)
    assert [s.tokens for s in again.sentences] == [s.tokens for s in doc.sentences]
    assert [[(str(d.label), d.governor, d.dependent) for d in s.deps]
            for s in again.sentences] == \
           [[(str(d.label), d.governor, d.dependent) for d in s.deps]
            for s in doc.sentences]
    for s in again.sentences:
        assert [d.ordinal for d in s.deps] == list(range(len(s.deps)))
