"""Word lists consulted by the extraction rules, with paper-derived defaults."""

from __future__ import annotations

from dataclasses import dataclass, field, fields


DEFAULTS = {
    "basic_attribs": {
        "name", "number", "type", "address", "level", "date", "time", "id",
        "password", "price", "status", "duration", "charge", "amount",
        "method", "information", "detail", "location", "code",
    },
    "non_entity_nouns": {"database", "system", "company", "record"},
    "input_verbs": {
        "input", "enter", "fill", "click", "select", "add", "record",
        "insert", "choose", "submit", "save",
    },
    "output_verbs": {"display", "output", "retrieve", "show", "view", "print"},
    "processing_verbs": {
        "calculate", "process", "update", "delete", "search", "modify",
        "edit", "remove", "validate",
    },
    "receive_verbs": {"receive", "accept", "get", "obtain", "acquire", "redeem"},
    "ambiguous_verbs": {"get", "send", "prepare"},
    "jump_verbs": {"continue", "restart", "go", "repeat", "move", "jump"},
    "error_keywords": {"error", "fail", "wrong", "invalid", "incorrect", "not"},
    "many_adjectives": {"many", "some", "all", "more", "every", "first", "last"},
    "many_determiners": {"each", "all", "some", "any", "many", "every", "multiple"},
    "one_determiners": {"a", "an"},
    "min_markers": {"at least", "minimum"},
    "max_markers": {"at most", "limit", "maximum", "no more than"},
    "system_nouns": {"system"},
    "pronouns": {"i", "he", "she", "it", "they", "we", "you",
                 "my", "his", "her", "its", "their", "our", "your"},
}

_PHRASE_KEYS = {"min_markers", "max_markers"}


class LexiconError(ValueError):
    """Raised for unreadable or duplicated-key lexicon files."""


def _singular(word: str) -> str:
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ses", "xes", "zes", "ches", "shes")):
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss"):
        return word[:-1]
    return word


@dataclass(frozen=True)
class Lexicon:
    basic_attribs: frozenset = field(default_factory=frozenset)
    non_entity_nouns: frozenset = field(default_factory=frozenset)
    input_verbs: frozenset = field(default_factory=frozenset)
    output_verbs: frozenset = field(default_factory=frozenset)
    processing_verbs: frozenset = field(default_factory=frozenset)
    receive_verbs: frozenset = field(default_factory=frozenset)
    ambiguous_verbs: frozenset = field(default_factory=frozenset)
    jump_verbs: frozenset = field(default_factory=frozenset)
    error_keywords: frozenset = field(default_factory=frozenset)
    many_adjectives: frozenset = field(default_factory=frozenset)
    many_determiners: frozenset = field(default_factory=frozenset)
    one_determiners: frozenset = field(default_factory=frozenset)
    min_markers: frozenset = field(default_factory=frozenset)
    max_markers: frozenset = field(default_factory=frozenset)
    system_nouns: frozenset = field(default_factory=frozenset)
    pronouns: frozenset = field(default_factory=frozenset)

    def is_basic(self, lemma: str) -> bool:
        word = lemma.lower()
        if word in self.basic_attribs:
            return True
        # membership is lemma-based; tolerate a lemma column that kept a plural
        if _singular(word) in self.basic_attribs:
            return True
        # underscored identifiers classify by their last segment (branch_number,
        # product_no); "no" reads as the number abbreviation
        if "_" in word:
            seg = word.rsplit("_", 1)[-1]
            if seg == "no":
                seg = "number"
            return seg in self.basic_attribs or _singular(seg) in self.basic_attribs
        return False

    def validate(self):
        if self.input_verbs & self.output_verbs:
            raise LexiconError("input_verbs and output_verbs overlap: "
                               f"{sorted(self.input_verbs & self.output_verbs)}")
        for f in fields(self):
            for entry in getattr(self, f.name):
                if entry != entry.lower():
                    raise LexiconError(f"{f.name}: entry {entry!r} is not lower-cased")
                if " " in entry and f.name not in _PHRASE_KEYS:
                    raise LexiconError(f"{f.name}: phrases only allowed in min/max markers")


def load_lexicon(path=None) -> Lexicon:
    """Build the Lexicon from a flat key = values file; absent path means defaults."""
    data = {k: set(v) for k, v in DEFAULTS.items()}
    if path is not None:
        seen = set()
        valid = {f.name for f in fields(Lexicon)}
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise LexiconError(f"line {lineno}: expected 'key = values'")
                key, values = (part.strip() for part in line.split("=", 1))
                if key not in valid:
                    raise LexiconError(f"line {lineno}: unknown key {key!r}")
                if key in seen:
                    raise LexiconError(f"line {lineno}: duplicated key {key!r}")
                seen.add(key)
                if key in _PHRASE_KEYS:
                    entries = {v.strip().lower() for v in values.split(",") if v.strip()}
                else:
                    entries = {v.lower() for v in values.split()}
                data[key] = entries
    lex = Lexicon(**{k: frozenset(v) for k, v in data.items()})
    lex.validate()
    return lex


def save_default_lexicon(path) -> None:
    """Write the shipped defaults in the flat config format."""
    lines = []
    for key in DEFAULTS:
        values = sorted(DEFAULTS[key])
        joiner = ", " if key in _PHRASE_KEYS else " "
        lines.append(f"{key} = {joiner.join(values)}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
