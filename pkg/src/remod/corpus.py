"""Requirement-format detection, UCS sentence sequencing, shuffle/merge utilities."""

from __future__ import annotations

import copy
import random
import re
from dataclasses import dataclass, field

from .depgraph import ParsedDocument

# Section-heading synonyms, configurable; defaults cover the published
# templates (Main Success Scenario / Basic Flow / Extensions / Alternate ...).
SECTION_SYNONYMS = {
    "main": ["main flow", "main success scenario", "basic flow",
             "success scenario", "normal flow", "flow of events"],
    "alternate": ["alternate", "alternate flow", "alternate flows",
                  "alternative flow", "alternative flows", "alternatives"],
    "extension": ["extensions", "extension", "extension points"],
    "exception": ["exceptions", "exception", "exception flow", "error flow"],
    "precondition": ["pre-condition", "pre-conditions", "precondition",
                     "preconditions"],
    "postcondition": ["post-condition", "post-conditions", "postcondition",
                      "postconditions"],
}

# Accepted trailing references inside main-flow sentences: "(see 2a)",
# "(2a)", "[2a]".  A guess recorded here, not hard-coded elsewhere.
TRAILING_REF = re.compile(r"\s*[\(\[](?:see\s+)?(\d+[a-z]?(?:\.[a-z])?(?:\.\d+)?)[\)\]]\s*$",
                          re.IGNORECASE)

# Step labels: N, Na, N.a, N.a.M (letters case-insensitive).
STEP_LABEL = re.compile(r"^\s*[-*•]?\s*(\d+(?:\.?[a-z])?(?:\.\d+)?)[.):]\s+(.*)$",
                        re.IGNORECASE)

STORY_OPENER = re.compile(r"^\s*[-*•]?\s*[\"“]?as an?\b", re.IGNORECASE)


class CorpusError(ValueError):
    """Raised on empty or unusable raw documents."""


@dataclass
class RawDocument:
    source_id: str
    lines: list[str]
    declared_format: str | None = None


@dataclass
class UcsSection:
    kind: str                               # main/alternate/extension/exception/...
    steps: list[tuple[str | None, str]] = field(default_factory=list)


def detect_format(doc: RawDocument) -> str:
    """Classify a raw document as stories, ucs or general requirements."""
    content = [ln for ln in doc.lines if ln.strip()]
    if not content:
        raise CorpusError(f"{doc.source_id}: empty document")
    if doc.declared_format:
        return doc.declared_format
    story_lines = sum(1 for ln in content if STORY_OPENER.match(ln))
    if story_lines * 2 >= len(content):
        return "stories"
    if any(_heading_kind(ln) in ("main", "alternate", "extension", "exception")
           for ln in content):
        return "ucs"
    return "general"


def _heading_kind(line: str) -> str | None:
    text = line.strip().rstrip(":.").lower()
    for kind, names in SECTION_SYNONYMS.items():
        if text in names:
            return kind
    # Headings may carry a trailing title ("Alternate Flow Data Validation").
    for kind, names in SECTION_SYNONYMS.items():
        for name in names:
            if text.startswith(name + " ") or text == name:
                return kind
    return None


def split_sections(doc: RawDocument) -> list[UcsSection]:
    """Split a UCS document into labelled sections with (step_label, text) steps."""
    sections = [UcsSection(kind="meta")]
    for line in doc.lines:
        if not line.strip():
            continue
        kind = _heading_kind(line)
        if kind:
            sections.append(UcsSection(kind=kind))
            continue
        m = STEP_LABEL.match(line)
        if m:
            sections[-1].steps.append((_canon_label(m.group(1)), m.group(2).strip()))
        else:
            sections[-1].steps.append((None, line.strip()))
    for sec in sections:
        labels = [l for l, _ in sec.steps if l]
        if len(labels) != len(set(labels)):
            raise CorpusError(f"{doc.source_id}: duplicate step labels in a section")
    return sections


def _canon_label(raw: str) -> str:
    return raw.replace(".", "").lower()


def _digits_len(label: str) -> int:
    i = 0
    while i < len(label) and label[i].isdigit():
        i += 1
    return i


def _letters_part(label: str) -> str:
    return label[_digits_len(label):]


def _anchor(label: str) -> int | None:
    n = _digits_len(label)
    return int(label[:n]) if n else None


def sequence_sentences(doc: RawDocument,
                       warnings: list[str] | None = None
                       ) -> list[tuple[str, str, str | None]]:
    """Merge alternate/extension/exception steps into the main flow (Step 1)."""
    warnings = warnings if warnings is not None else []
    if detect_format(doc) != "ucs":
        raise CorpusError(f"{doc.source_id}: not a use-case specification")
    sections = split_sections(doc)

    inserts: dict[int, list[tuple[str, str, str]]] = {}
    dangling: list[tuple[str, str, str]] = []
    for sec in sections:
        if sec.kind not in ("alternate", "extension", "exception"):
            continue
        tag = "exception" if sec.kind == "exception" else "alternate"
        for label, text in sec.steps:
            if label is None:
                dangling.append((text, tag, None))
                continue
            anchor = _anchor(label)
            if anchor is None:
                dangling.append((text, tag, label))
            else:
                inserts.setdefault(anchor, []).append((text, tag, label))

    out: list[tuple[str, str, str | None]] = []

    def emit(text: str, tag: str, label: str | None):
        for sentence in _split_sentences(text):
            out.append((sentence, tag, label))

    main = next((s for s in sections if s.kind == "main"), UcsSection("main"))
    used: set[int] = set()
    for label, text in main.steps:
        ref = TRAILING_REF.search(text)
        text_clean = TRAILING_REF.sub("", text).strip() if ref else text
        emit(text_clean, "main", label)
        anchors = []
        if label is not None and _anchor(label) is not None:
            anchors.append(_anchor(label))
        if ref is not None:
            ra = _anchor(_canon_label(ref.group(1)))
            if ra is not None and ra not in anchors:
                anchors.append(ra)
        for a in anchors:
            for text2, tag2, label2 in inserts.get(a, []):
                emit(text2, tag2, label2)
            used.add(a)

    for anchor, steps in sorted(inserts.items()):
        if anchor in used:
            continue
        for text2, tag2, label2 in steps:
            warnings.append(f"{doc.source_id}: step {label2} references missing main step {anchor}")
            emit(text2, tag2, label2)
    for text2, tag2, label2 in dangling:
        warnings.append(f"{doc.source_id}: unanchored step in {tag2} section")
        emit(text2, tag2, label2)

    for sec in sections:
        if sec.kind in ("main", "alternate", "extension", "exception"):
            continue
        for _, text in sec.steps:
            emit(text, "none", None)
    return out


def _split_sentences(text: str) -> list[str]:
    parts = re.split(r"(?<=[.!?])\s+", text.strip())
    return [p.strip() for p in parts if p.strip()]


def shuffle(doc: ParsedDocument, seed: int) -> ParsedDocument:
    """Deterministic sentence permutation under the given seed; seq renumbered."""
    out = copy.deepcopy(doc)
    rng = random.Random(seed)
    rng.shuffle(out.sentences)
    for i, s in enumerate(out.sentences):
        s.seq = i
    return out


def merge(docs: list[ParsedDocument]) -> ParsedDocument:
    """Concatenate documents in argument order, renumbering seq globally."""
    if not docs:
        raise CorpusError("merge needs at least one document")
    merged = ParsedDocument(
        source_id="+".join(d.source_id for d in docs),
        format=docs[0].format if len({d.format for d in docs}) == 1 else "general")
    i = 0
    for d in docs:
        for s in d.sentences:
            s2 = copy.deepcopy(s)
            s2.seq = i
            s2.origin = s.origin or d.source_id
            merged.sentences.append(s2)
            i += 1
    return merged
