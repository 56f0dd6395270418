"""Parsed-sentence data model plus native and CoNLL-U file formats."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

FLOW_TAGS = ("main", "alternate", "extension", "exception", "none")
DOC_FORMATS = ("general", "ucs", "stories")

# Closed label inventory the rule engine understands.  Anything else is
# preserved verbatim but flagged unrecognized.
KNOWN_LABELS = {
    "root", "punct", "det", "aux", "auxpass", "cop", "expl", "cc", "case",
    "nsubj", "nsubjpass", "csubj", "csubjpass", "dobj", "iobj", "pobj",
    "compound", "amod", "advmod", "nummod", "nmod", "conj", "appos",
    "advcl", "acl", "mark", "xcomp", "ccomp", "neg", "dep", "vmod", "obl",
    "parataxis", "discourse",
}

# Legacy spellings folded to the canonical inventory at load time.  The
# paper-era parser drifted across versions (nn -> compound, prep_of ->
# nmod:of, complm -> mark, ...); rules only ever see canonical labels.
NORMALIZATION = {
    "nn": "compound",
    "num": "nummod",
    "poss": "nmod:poss",
    "agent": "nmod:agent",
    "complm": "mark",
    "infmod": "vmod",
    "partmod": "vmod",
    "prepc": "nmod",
    "obj": "dobj",
    "obl": "nmod",
}

NOUN_TAGS = {"NN", "NNS", "NNP", "NNPS"}
ADJ_TAGS = {"JJ", "JJR", "JJS"}
PRONOUN_TAGS = {"PRP", "PRP$", "WP"}


class LoadError(ValueError):
    """Raised when a dependency file is malformed."""


class StructuralError(ValueError):
    """Raised when a loaded document violates a structural invariant."""


@dataclass(frozen=True)
class Token:
    index: int          # 1-based position in the sentence
    surface: str
    lemma: str          # lower-cased basic form
    pos: str            # Penn tag

    @property
    def is_noun(self) -> bool:
        return self.pos in NOUN_TAGS

    @property
    def is_gerund(self) -> bool:
        return self.pos == "VBG"

    @property
    def is_noun_like(self) -> bool:
        # Gerunds behave as nouns for every extraction rule.
        return self.is_noun or self.is_gerund

    @property
    def is_verb(self) -> bool:
        return self.pos.startswith("VB")

    @property
    def is_adjective(self) -> bool:
        return self.pos in ADJ_TAGS

    @property
    def is_pronoun(self) -> bool:
        return self.pos in PRONOUN_TAGS


@dataclass(frozen=True)
class DependencyLabel:
    base: str
    subtype: str | None = None
    recognized: bool = True

    @classmethod
    def parse(cls, raw: str) -> "DependencyLabel":
        raw = raw.strip()
        if raw in NORMALIZATION:
            raw = NORMALIZATION[raw]
        elif "_" in raw and raw.split("_", 1)[0] in ("prep", "conj", "nmod"):
            head, sub = raw.split("_", 1)
            raw = ("nmod" if head == "prep" else head) + ":" + sub
        if ":" in raw:
            base, subtype = raw.split(":", 1)
        else:
            base, subtype = raw, None
        if base in NORMALIZATION and NORMALIZATION[base].startswith("nmod:"):
            base, subtype = NORMALIZATION[base].split(":", 1)
        return cls(base, subtype, recognized=base in KNOWN_LABELS)

    def __str__(self) -> str:
        return self.base if self.subtype is None else f"{self.base}:{self.subtype}"


@dataclass(frozen=True)
class TypedDependency:
    label: DependencyLabel
    governor: int       # token index of the "A" slot (0 only for root)
    dependent: int      # token index of the "B" slot
    ordinal: int        # position in the sentence's TD sequence

    def __str__(self) -> str:
        return f"{self.label}({self.governor}, {self.dependent})"


@dataclass
class ParsedSentence:
    seq: int
    text: str
    flow_tag: str = "none"
    step_label: str | None = None
    tokens: list[Token] = field(default_factory=list)
    deps: list[TypedDependency] = field(default_factory=list)
    origin: str | None = None   # source document id after merge

    def token(self, index: int) -> Token:
        return self._by_index[index]

    def __post_init__(self):
        self._reindex()

    def _reindex(self):
        self._by_index = {t.index: t for t in self.tokens}

    def validate(self):
        if self.flow_tag not in FLOW_TAGS:
            raise StructuralError(f"bad flow tag {self.flow_tag!r}")
        seen = set()
        for t in self.tokens:
            if t.index < 1 or t.index in seen:
                raise StructuralError(f"bad token index {t.index} in sentence {self.seq}")
            seen.add(t.index)
        roots = [d for d in self.deps if d.label.base == "root"]
        if len(roots) != 1:
            raise StructuralError(f"sentence {self.seq} has {len(roots)} roots")
        for i, d in enumerate(self.deps):
            if d.ordinal != i:
                raise StructuralError(f"sentence {self.seq}: ordinal {d.ordinal} at position {i}")
            if d.governor != 0 and d.governor not in self._by_index:
                raise StructuralError(f"sentence {self.seq}: dangling governor {d.governor}")
            if d.governor == 0 and d.label.base != "root":
                raise StructuralError(f"sentence {self.seq}: governor 0 on non-root {d}")
            if d.dependent not in self._by_index:
                raise StructuralError(f"sentence {self.seq}: dangling dependent {d.dependent}")


@dataclass
class ParsedDocument:
    source_id: str
    format: str = "general"
    sentences: list[ParsedSentence] = field(default_factory=list)

    def validate(self):
        if self.format not in DOC_FORMATS:
            raise StructuralError(f"bad document format {self.format!r}")
        prev = None
        for s in self.sentences:
            if prev is not None and s.seq <= prev:
                raise StructuralError(f"sentence seq not increasing at {s.seq}")
            prev = s.seq
            s.validate()


def _warn_text_assumptions(text: str, warnings: list[str], where: str):
    # upstream parser assumption: sentences end with a period and carry no
    # internal periods/hyphens.  Warn, never reject.
    if text and not text.rstrip().endswith((".", "?", "!")):
        warnings.append(f"{where}: sentence does not end with a period")
    if "-" in text:
        warnings.append(f"{where}: sentence contains a hyphen")


def load_native(path, warnings: list[str] | None = None) -> ParsedDocument:
    """Read the native dependency format; TD order in the file is the ordinal order."""
    warnings = warnings if warnings is not None else []
    doc: ParsedDocument | None = None
    sent: ParsedSentence | None = None
    expect_text = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if expect_text:
                sent.text = line.strip()
                _warn_text_assumptions(sent.text, warnings, f"line {lineno}")
                expect_text = False
                continue
            if not line.strip() or line.startswith("//"):
                continue
            parts = line.split()
            try:
                if parts[0] == "#doc":
                    if doc is not None:
                        raise LoadError(f"line {lineno}: duplicate #doc header")
                    if len(parts) < 3 or parts[2] not in DOC_FORMATS:
                        raise LoadError(f"line {lineno}: bad #doc header")
                    doc = ParsedDocument(source_id=parts[1], format=parts[2])
                elif parts[0] == "#sent":
                    if doc is None:
                        raise LoadError(f"line {lineno}: #sent before #doc")
                    if len(parts) < 3 or parts[2] not in FLOW_TAGS:
                        raise LoadError(f"line {lineno}: bad #sent header")
                    sent = ParsedSentence(
                        seq=int(parts[1]), text="", flow_tag=parts[2],
                        step_label=parts[3] if len(parts) > 3 else None)
                    doc.sentences.append(sent)
                    expect_text = True
                elif parts[0] == "T":
                    if sent is None:
                        raise LoadError(f"line {lineno}: token outside sentence")
                    if len(parts) != 5:
                        raise LoadError(f"line {lineno}: token record needs 4 fields")
                    sent.tokens.append(Token(int(parts[1]), parts[2], parts[3].lower(), parts[4]))
                elif parts[0] == "D":
                    if sent is None:
                        raise LoadError(f"line {lineno}: dependency outside sentence")
                    if len(parts) < 5:
                        raise LoadError(f"line {lineno}: dependency record needs 4 fields")
                    label = DependencyLabel.parse(parts[2])
                    if not label.recognized:
                        warnings.append(f"line {lineno}: unrecognized label {parts[2]!r}")
                    sent.deps.append(TypedDependency(
                        label, int(parts[3]), int(parts[4]), int(parts[1])))
                else:
                    raise LoadError(f"line {lineno}: unknown record {parts[0]!r}")
            except ValueError as exc:
                if isinstance(exc, (LoadError, StructuralError)):
                    raise
                raise LoadError(f"line {lineno}: {exc}") from exc
    if doc is None:
        raise LoadError(f"{path}: missing #doc header")
    for s in doc.sentences:
        s._reindex()
        # Ordinals follow file order regardless of what the D column said.
        s.deps = [replace(d, ordinal=i) for i, d in enumerate(s.deps)]
    doc.validate()
    return doc


def save_native(doc: ParsedDocument, path) -> None:
    """Emit the canonical native format (load_native inverts it)."""
    lines = [f"#doc {doc.source_id} {doc.format}"]
    for s in doc.sentences:
        head = f"#sent {s.seq} {s.flow_tag}"
        if s.step_label:
            head += f" {s.step_label}"
        lines.append(head)
        lines.append(s.text)
        for t in s.tokens:
            lines.append(f"T {t.index} {t.surface} {t.lemma} {t.pos}")
        for d in s.deps:
            rec = f"D {d.ordinal} {d.label} {d.governor} {d.dependent}"
            if not d.label.recognized:
                rec += "  // unrecognized"
            lines.append(rec)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


_XPOS_FROM_UPOS = {
    "NOUN": "NN", "PROPN": "NNP", "VERB": "VB", "ADJ": "JJ", "ADV": "RB",
    "DET": "DT", "ADP": "IN", "PRON": "PRP", "NUM": "CD", "CCONJ": "CC",
    "SCONJ": "IN", "AUX": "MD", "PART": "TO", "PUNCT": ".", "X": "FW",
}


def load_conllu(path, warnings: list[str] | None = None) -> ParsedDocument:
    """Read standard 10-column CoNLL-U into the same document model."""
    warnings = warnings if warnings is not None else []
    import os
    doc = ParsedDocument(source_id=os.path.splitext(os.path.basename(str(path)))[0])
    tokens: list[Token] = []
    deps: list[TypedDependency] = []
    text = ""
    seq = 0

    def flush():
        nonlocal tokens, deps, text, seq
        if not tokens:
            return
        words = text or " ".join(t.surface for t in tokens)
        doc.sentences.append(ParsedSentence(
            seq=seq, text=words, flow_tag="none", tokens=tokens, deps=deps))
        tokens, deps, text = [], [], ""
        seq += 1

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                flush()
                continue
            if line.startswith("#"):
                if line.startswith("# text ="):
                    text = line.split("=", 1)[1].strip()
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise LoadError(f"line {lineno}: expected 10 columns, got {len(cols)}")
            tok_id, form, lemma, upos, xpos, _, head, deprel, _, _ = cols
            if not re.fullmatch(r"\d+", tok_id):
                continue  # multiword ranges / empty nodes
            try:
                head_i = int(head)
            except ValueError:
                raise LoadError(f"line {lineno}: non-integer HEAD {head!r}") from None
            pos = xpos if xpos not in ("_", "") else _XPOS_FROM_UPOS.get(upos, upos)
            tokens.append(Token(int(tok_id), form, (lemma if lemma != "_" else form).lower(), pos))
            label = DependencyLabel.parse(deprel if head_i else "root")
            if not label.recognized:
                warnings.append(f"line {lineno}: unrecognized label {deprel!r}")
            deps.append(TypedDependency(label, head_i, int(tok_id), len(deps)))
    flush()
    doc.validate()
    return doc
