"""Entity/attribute, relationship and cardinality extraction over typed dependencies.

The engine walks each sentence's TD sequence in order and applies the
dependency rules (subjects, objects, prepositional and possessive modifiers,
adjectives, compounds, conjunctions), then resolves names document-wide:
compound chains complete multiword names, plain-noun modifiers pair out as
owning entities when the document confirms them, gerund modifiers own their
attribute while staying in its name, and container heads (information,
detail) defer to their modifier.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .depgraph import ParsedDocument, ParsedSentence, Token
from .lexicon import Lexicon
from . import anaphora

# Inflected verb forms that force an object reading as inputted data
# (the rules list these surfaces verbatim, not lemmas).
INPUT_SENSE_SURFACES = frozenset({"entered", "inputted", "saved", "added", "has"})

# Basic-attribute heads that act as containers for their modifier.
CONTAINER_HEADS = frozenset({"information", "detail"})

_SHELL_VERBS = frozenset({"want", "wish", "need", "like", "able", "be", "can"})

SUBJ_LABELS = ("nsubj", "nsubjpass")
OBJ_LABELS = ("dobj", "iobj", "pobj")
PREP_ENTITY_SUBTYPES = ("to", "for", "from", "as")
PREP_AGENT_SUBTYPES = ("by", "agent", "with")

ONE = "1"
MANY = "N"


@dataclass
class Entity:
    name: str
    frequency: int = 0
    provenance: list = field(default_factory=list)


@dataclass
class Attribute:
    name: str
    owner: str | None = None
    provenance: list = field(default_factory=list)


@dataclass(frozen=True)
class Relationship:
    subject: str
    verb_phrase: str
    object: str
    origin: str = "direct"      # direct | preposition | dataflow

    @property
    def verb_lemma(self) -> str:
        return self.verb_phrase.split()[0]


@dataclass
class Cardinality:
    entity: str
    value: str                  # "1", "N", or an exact count
    relationship: Relationship | None = None
    end: str | None = None      # subject/object when tied to a relationship
    modality: int | None = None


@dataclass
class ERModel:
    entities: dict = field(default_factory=dict)        # name -> Entity
    attributes: dict = field(default_factory=dict)      # name -> Attribute
    relationships: list = field(default_factory=list)
    cardinalities: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def entity_names(self):
        return set(self.entities)

    def attributes_of(self, owner: str) -> set:
        return {a.name for a in self.attributes.values() if a.owner == owner}


# --------------------------------------------------------------------------
# raw events

@dataclass
class _Part:
    lemma: str
    pairout: Token | None = None    # plain-noun modifier that may own the attribute


@dataclass
class _EntityEvent:
    name: str
    seq: int
    ordinal: int
    token: int
    kind: str                       # direct | gerund | pairout | container


@dataclass
class _AttrEvent:
    parts: list                     # list of _Part, adjectives first
    seq: int
    ordinal: int
    token: int
    head_lemma: str
    gerund_owner: str | None = None
    rule_owner: str | None = None   # pairing from the of/in/poss/agent rules
    container_mod: Token | None = None
    verb: str | None = None         # governing verb lemma at the site
    trigger: str = ""               # TD base label that fired the rule
    dropped: bool = False

    def name_with(self, confirmed: set) -> str:
        out = []
        for p in self.parts:
            if p.pairout is not None and p.pairout.lemma in confirmed:
                continue
            out.append(p.lemma)
        return " ".join(out)

    def local_pair(self, confirmed: set) -> str | None:
        if self.gerund_owner:
            return self.gerund_owner
        for p in self.parts:
            if p.pairout is not None and p.pairout.lemma in confirmed:
                return p.pairout.lemma
        return self.rule_owner


@dataclass
class _SentenceScan:
    sent: ParsedSentence
    entity_events: list = field(default_factory=list)
    attr_events: list = field(default_factory=list)
    mentions: dict = field(default_factory=dict)       # token -> entity name (no freq)
    subjects: list = field(default_factory=list)       # (verb_idx, subj_idx, label)
    has_system_subject: bool = False


class _Scanner:
    """One sentence's rule pass; shared by all three extraction iterations."""

    def __init__(self, sent: ParsedSentence, lex: Lexicon, resolved):
        self.sent = sent
        self.lex = lex
        self.resolved = resolved
        self.scan = _SentenceScan(sent=sent)
        self.comp_mods = defaultdict(list)      # head idx -> [modifier Token]
        self.adj_mods = defaultdict(list)       # head idx -> [JJ Token]
        self.incoming = defaultdict(list)       # token idx -> [TD]
        for d in sent.deps:
            self.incoming[d.dependent].append(d)
            if d.label.base == "compound":
                self.comp_mods[d.governor].append(sent.token(d.dependent))
            if d.label.base in ("amod", "advmod"):
                dep = sent.token(d.dependent)
                if dep.is_adjective:
                    self.adj_mods[d.governor].append(dep)
        for mods in self.comp_mods.values():
            mods.sort(key=lambda t: t.index)
        for mods in self.adj_mods.values():
            mods.sort(key=lambda t: t.index)

    # ---- helpers ----

    def tok(self, idx: int) -> Token | None:
        try:
            return self.sent.token(idx)
        except KeyError:
            return None

    def is_resolved(self, tok: Token) -> bool:
        return self.resolved(self.sent.seq, tok.index)

    def basic(self, tok: Token) -> bool:
        return self.lex.is_basic(tok.lemma)

    def entity_name(self, head: Token) -> str:
        parts = [m.lemma for m in self.comp_mods[head.index] if m.is_noun_like]
        return " ".join(parts + [head.lemma])

    def emit_entity(self, head: Token, d, kind: str = "direct", bare: bool = False):
        if self.is_resolved(head):
            self.scan.mentions[head.index] = head.lemma
            return
        name = head.lemma if bare else self.entity_name(head)
        if head.lemma in self.lex.non_entity_nouns or name in self.lex.non_entity_nouns:
            self.scan.has_system_subject |= head.lemma in self.lex.system_nouns
            return
        self.scan.entity_events.append(_EntityEvent(
            name=name, seq=self.sent.seq, ordinal=d.ordinal, token=head.index, kind=kind))

    def emit_gerund(self, mod: Token, d):
        self.scan.entity_events.append(_EntityEvent(
            name=mod.lemma, seq=self.sent.seq, ordinal=d.ordinal,
            token=mod.index, kind="gerund"))

    def emit_attr(self, head: Token, d, adjs=(), rule_owner=None, literal_parts=None):
        verb = None
        gov = self.tok(d.governor)
        if gov is not None and gov.is_verb:
            verb = gov.lemma
        ev = _AttrEvent(parts=[], seq=self.sent.seq, ordinal=d.ordinal,
                        token=head.index, head_lemma=head.lemma,
                        rule_owner=rule_owner, verb=verb, trigger=d.label.base)
        if literal_parts is not None:
            ev.parts = [_Part(lemma=p) for p in literal_parts]
            self.scan.attr_events.append(ev)
            return
        if head.lemma in CONTAINER_HEADS:
            noun_mods = [m for m in self.comp_mods[head.index] if m.is_noun_like]
            if not noun_mods:
                ev.dropped = True
            else:
                ev.container_mod = noun_mods[-1]
            self.scan.attr_events.append(ev)
            return
        for adj in adjs:
            ev.parts.append(_Part(lemma=adj.lemma))
        for m in self.comp_mods[head.index]:
            if m.is_gerund:
                ev.parts.append(_Part(lemma=m.lemma))
                ev.gerund_owner = m.lemma
            elif m.is_noun and self.basic(m):
                ev.parts.append(_Part(lemma=m.lemma))
            elif m.is_noun:
                ev.parts.append(_Part(lemma=m.lemma, pairout=m))
            # verbs/adjectives mis-tagged into compounds stay out of names
        ev.parts.append(_Part(lemma=head.lemma))
        self.scan.attr_events.append(ev)

    # ---- the rule pass ----

    def run(self) -> _SentenceScan:
        deps = self.sent.deps
        for i, d in enumerate(deps):
            base, sub = d.label.base, d.label.subtype
            b = self.tok(d.dependent)
            a = self.tok(d.governor)
            if b is None:
                continue
            if base in SUBJ_LABELS:
                self._subject(d, a, b)
            elif base in OBJ_LABELS:
                self._object(d, a, b, base)
            elif base == "nmod":
                self._nmod(d, a, b, sub)
            elif base == "amod":
                self._amod(d, a, b)
            elif base == "compound":
                self._compound(d, i, a, b)
            elif base == "conj" and sub in ("and", "or"):
                self._conj(d, a, b)
        return self.scan

    def _subject(self, d, a, b):
        if a is not None:
            self.scan.subjects.append((d.governor, d.dependent, d.label.base))
            if b.lemma in self.lex.system_nouns:
                self.scan.has_system_subject = True
        if a is None or not a.is_verb or not b.is_noun_like:
            return
        if self.basic(b):
            self.emit_attr(b, d)                      # rule 2
        else:
            self.emit_entity(b, d)                    # rule 1

    def blocking_adjs(self, idx):
        # quantifier adjectives are cardinality signals, not modifiers
        return [t for t in self.adj_mods[idx]
                if t.lemma not in self.lex.many_adjectives]

    def _object(self, d, a, b, base):
        if not b.is_noun_like:
            return
        input_sense = (base != "pobj" and a is not None
                       and a.surface.lower() in INPUT_SENSE_SURFACES)
        blocked = bool(self.blocking_adjs(b.index))
        if self.basic(b) or input_sense:
            self.emit_attr(b, d, adjs=self.blocking_adjs(b.index))  # rule 4/rule 5
        elif not blocked:
            self.emit_entity(b, d)                                  # rule 3

    def _nmod(self, d, a, b, sub):
        if sub == "of":                                          # rule 6
            if a is None or not a.is_noun_like or not b.is_noun_like:
                return
            ab, bb = self.basic(a), self.basic(b)
            if ab and not bb:
                self.emit_entity(b, d)
                self.emit_attr(a, d, rule_owner=self.entity_name(b))
            elif not ab and not bb:
                self.emit_entity(a, d)
                self.emit_entity(b, d)
            elif ab and bb:
                self.emit_attr(a, d, literal_parts=[a.lemma, "of", b.lemma])
        elif sub == "in":                                        # rule 7
            if a is None or not a.is_noun_like or not b.is_noun_like:
                return
            self.emit_attr(a, d, rule_owner=self.entity_name(b))
            self.emit_entity(b, d)
        elif sub in PREP_ENTITY_SUBTYPES:                        # rule 8
            if b.is_noun_like:
                self.emit_entity(b, d)
        elif sub in PREP_AGENT_SUBTYPES:                         # rule 9
            if not b.is_noun_like:
                return
            if self.basic(b):
                self.emit_attr(b, d)
            else:
                self.emit_entity(b, d)
        elif sub == "poss":                                      # rule 10
            if a is None or not a.is_noun_like:
                return
            owner = None
            if b.is_noun_like:
                owner = b.lemma if self.is_resolved(b) else self.entity_name(b)
                self.emit_entity(b, d)
            self.emit_attr(a, d, rule_owner=owner)

    def _amod(self, d, a, b):
        if a is None or not a.is_noun_like or not b.is_adjective:
            return
        if self.basic(a):                                        # rule 11 attribute
            self.emit_attr(a, d, adjs=self.adj_mods[a.index])
            return
        # entity branch: only for heads with no other syntactic role
        if self.comp_mods[a.index]:
            return
        others = [t for t in self.incoming[a.index]
                  if t.label.base not in ("amod", "advmod", "det", "root", "punct")]
        if not others:
            self.emit_entity(a, d)

    def _compound(self, d, i, a, b):
        if b.is_gerund:
            self.emit_gerund(b, d)
            return
        # standalone only: a head consumed by a subject, object or conjunct
        # rule is completed there instead
        for other in self.incoming[d.governor]:
            if other.label.base in ("nsubj", "nsubjpass", "dobj", "iobj") or \
                    (other.label.base == "conj" and other.label.subtype in ("and", "or")):
                return
        if a is None or not a.is_noun or not b.is_noun:
            return
        ab, bb = self.basic(a), self.basic(b)                    # rule 12
        if ab and not bb:
            self.emit_attr(a, d)
            self.emit_entity(b, d)
        elif not ab and bb:
            self.emit_attr(a, d, literal_parts=[a.lemma, b.lemma])
            self.emit_entity(a, d, bare=True)
        elif ab and bb:
            self.emit_attr(a, d)
        else:
            self.emit_entity(a, d)

    def _conj(self, d, a, b):
        if a is None or not a.is_noun_like or not b.is_noun_like:
            return
        ab, bb = self.basic(a), self.basic(b)                    # rule 13
        if ab and bb:
            self.emit_attr(a, d, adjs=self.adj_mods[a.index])
            self.emit_attr(b, d, adjs=self.adj_mods[b.index])
        elif not ab and not bb:
            self.emit_entity(a, d)
            self.emit_entity(b, d)


# --------------------------------------------------------------------------
# document-level resolution

class _DocExtraction:
    def __init__(self, doc: ParsedDocument, lex: Lexicon):
        self.doc = doc
        self.lex = lex
        self.diagnostics: list[str] = []
        resolved = lambda seq, idx: anaphora.is_resolved(doc, seq, idx)
        self.backward = set(getattr(doc, "backward_pronouns", set()))
        self.scans = [_Scanner(s, lex, resolved).run() for s in doc.sentences]
        self._resolve()

    def _resolve(self):
        lex = self.lex
        direct_names = set()
        for scan in self.scans:
            for ev in scan.entity_events:
                direct_names.add(ev.name)

        # a pair-out modifier becomes an owning entity only when the document
        # backs it: the name also appears directly, or the attribute is
        # operated on by a classed data verb (data belongs to a data entity;
        # plain possession keeps the compound name intact)
        operation_verbs = (lex.input_verbs | lex.output_verbs |
                           lex.processing_verbs | lex.receive_verbs |
                           lex.ambiguous_verbs)
        operated_pairs = set()
        all_pairs = set()
        for scan in self.scans:
            for ev in scan.attr_events:
                if ev.dropped:
                    continue
                for p in ev.parts:
                    if p.pairout is not None:
                        all_pairs.add(p.pairout.lemma)
                        if ev.verb in operation_verbs:
                            operated_pairs.add(p.pairout.lemma)

        self.confirmed = {lemma for lemma in all_pairs
                          if lemma in direct_names or lemma in operated_pairs}
        self.confirmed -= lex.non_entity_nouns
        entity_pool = direct_names | self.confirmed

        # entity frequency events: direct + one pairout per modifier token
        # (unless that token already counted directly) + container modifiers
        self.entity_events: list[_EntityEvent] = []
        for scan in self.scans:
            direct_sites = {(e.seq, e.token) for e in scan.entity_events}
            seen_pair_sites = set()
            for ev in scan.entity_events:
                self.entity_events.append(ev)
            for ev in scan.attr_events:
                if ev.dropped:
                    continue
                if ev.container_mod is not None:
                    mod = ev.container_mod
                    if mod.lemma in entity_pool:
                        self.entity_events.append(_EntityEvent(
                            name=mod.lemma, seq=ev.seq, ordinal=ev.ordinal,
                            token=mod.index, kind="container"))
                    continue
                for p in ev.parts:
                    if p.pairout is not None and p.pairout.lemma in self.confirmed:
                        site = (ev.seq, p.pairout.index)
                        if site in direct_sites or site in seen_pair_sites:
                            continue
                        seen_pair_sites.add(site)
                        self.entity_events.append(_EntityEvent(
                            name=p.pairout.lemma, seq=ev.seq, ordinal=ev.ordinal,
                            token=p.pairout.index, kind="pairout"))

        # attribute records (container events become modifier attributes
        # unless the modifier is an entity)
        self.attr_records = []   # (name, event)
        for scan in self.scans:
            for ev in scan.attr_events:
                if ev.dropped:
                    self.diagnostics.append(
                        f"s{ev.seq}: bare container attribute dropped")
                    continue
                if ev.container_mod is not None:
                    if ev.container_mod.lemma in entity_pool:
                        continue
                    self.attr_records.append((ev.container_mod.lemma, ev))
                    continue
                self.attr_records.append((ev.name_with(self.confirmed), ev))

        # entity/attribute name collisions resolve by majority of events
        entity_votes = Counter(ev.name for ev in self.entity_events)
        attr_votes = Counter(name for name, _ in self.attr_records)
        self.demoted = set()     # entity names that are really attributes
        for name in set(entity_votes) & set(attr_votes):
            if entity_votes[name] > attr_votes[name]:
                # attribute evidence folds into the entity
                extra = [ev for name2, ev in self.attr_records if name2 == name]
                self.attr_records = [(n, e) for n, e in self.attr_records if n != name]
                for ev in extra:
                    self.entity_events.append(_EntityEvent(
                        name=name, seq=ev.seq, ordinal=ev.ordinal,
                        token=ev.token, kind="direct"))
                self.diagnostics.append(f"attribute {name!r} folded into entity")
            else:
                self.demoted.add(name)
                self.entity_events = [e for e in self.entity_events if e.name != name]
                self.diagnostics.append(f"entity {name!r} folded into attribute")

        self.entities: dict[str, Entity] = {}
        for ev in self.entity_events:
            ent = self.entities.setdefault(ev.name, Entity(name=ev.name))
            ent.frequency += 1
            ent.provenance.append((ev.seq, ev.ordinal))

        # per-sentence token -> entity name map (for relationships)
        self.site_maps = []
        for scan in self.scans:
            m = dict(scan.mentions)
            for ev in self.entity_events:
                if ev.seq == scan.sent.seq:
                    m[ev.token] = ev.name
            self.site_maps.append(m)


def extract_entities_attributes(doc: ParsedDocument, lex: Lexicon,
                                _ex: _DocExtraction | None = None):
    """Iteration 1: entity and attribute sets with TD-match frequencies."""
    ex = _ex or _DocExtraction(doc, lex)
    attributes: dict[str, Attribute] = {}
    pair_votes: dict[str, Counter] = defaultdict(Counter)
    for name, ev in ex.attr_records:
        att = attributes.setdefault(name, Attribute(name=name))
        att.provenance.append((ev.seq, ev.ordinal))
        pair = ev.local_pair(ex.confirmed)
        if pair:
            pair_votes[name][pair] += 1

    def _pair_owner(name):
        votes = pair_votes.get(name)
        if not votes:
            return None
        top = max(votes.values())
        return sorted(n for n, c in votes.items() if c == top)[0]

    # subsumption: a name whose tokens are contained in another attribute's
    # tokens merges into the longer name (the longer one wins the label),
    # but only when their pairing owners are compatible
    names = sorted(attributes, key=lambda n: len(n.split()))
    merged: dict[str, str] = {}
    for i, short in enumerate(names):
        stoks = set(short.split())
        so = _pair_owner(short)
        for longer in names[i + 1:]:
            lo = _pair_owner(longer)
            if stoks < set(longer.split()) and (so is None or lo is None or so == lo):
                merged[short] = longer
                break
    for short, longer in merged.items():
        attributes[longer].provenance.extend(attributes[short].provenance)
        del attributes[short]
    entities = {name: ent for name, ent in ex.entities.items()}
    return entities, attributes, merged


def attach_attributes(entities, attributes, doc, lex,
                      _ex: _DocExtraction | None = None, merged=None):
    """Fill attribute owners from rule pairings, then sentence proximity."""
    ex = _ex or _DocExtraction(doc, lex)
    merged = merged or {}
    by_name_events = defaultdict(list)
    for name, ev in ex.attr_records:
        by_name_events[merged.get(name, name)].append(ev)
    seq_to_scan = {scan.sent.seq: scan for scan in ex.scans}
    seq_order = [scan.sent.seq for scan in ex.scans]

    for name, att in attributes.items():
        votes = Counter()
        for ev in by_name_events[name]:
            pair = ev.local_pair(ex.confirmed)
            if pair and pair in entities:
                votes[pair] += 1
        if votes:
            top = max(votes.values())
            att.owner = sorted(n for n, c in votes.items() if c == top)[0]
            continue
        ev = by_name_events[name][0]
        owner = _nearest_entity(ex, ev)
        if owner is None:
            owner = _subject_entity(ex, ev.seq)
        if owner is None:
            owner = _previous_sentence_entity(ex, seq_order, ev.seq)
        att.owner = owner
    return attributes


def _nearest_entity(ex, ev):
    events = [e for e in ex.entity_events if e.seq == ev.seq]
    if not events:
        return None
    return min(events, key=lambda e: (abs(e.token - ev.token), e.token)).name


def _subject_entity(ex, seq):
    for scan in ex.scans:
        if scan.sent.seq != seq:
            continue
        m = ex.site_maps[ex.scans.index(scan)]
        for _, subj_idx, _ in scan.subjects:
            if subj_idx in m:
                return m[subj_idx]
    return None


def _previous_sentence_entity(ex, seq_order, seq):
    try:
        pos = seq_order.index(seq)
    except ValueError:
        return None
    for j in range(pos - 1, -1, -1):
        events = [e for e in ex.entity_events if e.seq == seq_order[j]]
        if events:
            return max(events, key=lambda e: e.token).name
    return None


# --------------------------------------------------------------------------
# relationships (iteration 2)

@dataclass
class _RelRecord:
    subject: str
    verb_phrase: str
    object: str
    origin: str
    seq: int | None = None
    subj_token: int | None = None
    obj_token: int | None = None

    def key(self):
        return (self.subject, self.verb_phrase, self.object)

    def public(self) -> Relationship:
        return Relationship(self.subject, self.verb_phrase, self.object, self.origin)


class _RelationshipPass:
    def __init__(self, ex: _DocExtraction, entities, attributes, lex: Lexicon):
        self.ex = ex
        self.entities = entities
        self.attributes = attributes
        self.lex = lex
        self.records: list[_RelRecord] = []
        self.diagnostics: list[str] = []

    # ---- slot resolution ----

    def _attr_events_at(self, scan_i, token):
        scan = self.ex.scans[scan_i]
        return [ev for ev in scan.attr_events if ev.token == token and not ev.dropped]

    def resolve_token(self, scan_i, token):
        """Entity name a token stands for: itself, its paired owner, its
        container modifier, or the entity down an acl chain; None otherwise."""
        m = self.ex.site_maps[scan_i]
        if token in m:
            return m[token], token
        for ev in self._attr_events_at(scan_i, token):
            if ev.container_mod is not None:
                if ev.container_mod.lemma in self.entities:
                    return ev.container_mod.lemma, token
                continue
            pair = ev.local_pair(self.ex.confirmed)
            if pair and pair in self.entities:
                return pair, token
        chained = self._acl_chain(scan_i, token)
        if chained:
            return chained, token
        # a token spelling out a known entity still counts as an entity slot
        scan = self.ex.scans[scan_i]
        try:
            tok = scan.sent.token(token)
        except KeyError:
            return None, None
        if tok.is_noun_like:
            for candidate in (scan.sent.token(token).lemma,):
                if candidate in self.entities:
                    return candidate, token
        return None, None

    def _global_owner(self, scan_i, token):
        """Entity a token stands for via the document-level attribute owner
        (not the sentence-local pairing): the of/in "has" rules read the slot
        as whatever entity owns the attribute overall."""
        m = self.ex.site_maps[scan_i]
        if token in m:
            return m[token]
        for ev in self._attr_events_at(scan_i, token):
            if ev.container_mod is not None:
                if ev.container_mod.lemma in self.entities:
                    return ev.container_mod.lemma
                continue
            label = ev.name_with(self.ex.confirmed)
            att = self.attributes.get(label)
            if att is None:
                for a in self.attributes.values():
                    if set(label.split()) <= set(a.name.split()):
                        att = a
                        break
            if att is not None and att.owner in self.entities:
                return att.owner
        return None

    def _acl_chain(self, scan_i, token):
        sent = self.ex.scans[scan_i].sent
        for d in sent.deps:
            if d.label.base in ("acl", "vmod") and d.governor == token:
                verb = d.dependent
                for d2 in sent.deps:
                    if d2.governor == verb and d2.label.base == "nmod":
                        name, _ = self.resolve_token(scan_i, d2.dependent)
                        if name:
                            return name
        return None

    # ---- per-sentence machinery ----

    def _verb_objects(self, sent, verb):
        """dobj/iobj dependents of the verb plus their conj chains."""
        heads = [d.dependent for d in sent.deps
                 if d.governor == verb and d.label.base in ("dobj", "iobj")]
        out = list(heads)
        for h in heads:
            for d in sent.deps:
                if d.label.base == "conj" and d.label.subtype in ("and", "or") \
                        and d.governor == h and d.dependent not in out:
                    out.append(d.dependent)
        return out

    def _subject_entity(self, scan_i, verb):
        scan = self.ex.scans[scan_i]
        for v, subj, _label in scan.subjects:
            if v != verb:
                continue
            name, tok = self.resolve_token(scan_i, subj)
            if name:
                return name, tok
        return None, None

    def _fallback_subject(self, scan_i):
        events = sorted((e for e in self.ex.entity_events
                         if e.seq == self.ex.scans[scan_i].sent.seq),
                        key=lambda e: (e.token, e.ordinal))
        if events:
            return events[0].name, events[0].token
        return None, None

    def _effective_subject(self, scan_i, verb):
        """(entity, token, fallback?, verb index naming the relationship).

        A verb without its own subject climbs the xcomp chain; a verb whose
        subject is the dropped system noun falls back to the sentence's first
        extracted entity, named by the verb where the subject was found."""
        scan = self.ex.scans[scan_i]
        sent = scan.sent
        current = verb
        seen = set()
        while current not in seen:
            seen.add(current)
            has_subject = any(v == current for v, _, _ in scan.subjects)
            if has_subject:
                name, tok = self._subject_entity(scan_i, current)
                if name:
                    return name, tok, False, verb if current == verb else current
                name, tok = self._fallback_subject(scan_i)
                if name:
                    return name, tok, True, current
                return None, None, False, verb
            lifted = None
            for d in sent.deps:
                if d.label.base == "xcomp" and d.dependent == current and d.governor:
                    gov = sent.token(d.governor)
                    if gov.is_verb or gov.is_adjective:
                        lifted = d.governor
                        break
            if lifted is None:
                return None, None, False, verb
            current = lifted
        return None, None, False, verb

    def add(self, rec: _RelRecord):
        if rec.subject == rec.object:
            return
        if rec.subject not in self.entities or rec.object not in self.entities:
            self.diagnostics.append(
                f"relationship {rec.key()} references a non-entity; discarded")
            return
        if rec.seq is not None and (
                (rec.seq, rec.subj_token) in self.ex.backward or
                (rec.seq, rec.obj_token) in self.ex.backward):
            # a backward-resolved pronoun carries reference across sentences,
            # so the relationship is order-sensitive like any data flow
            rec.origin = "dataflow"
        self.records.append(rec)

    def linked(self, seq, a, b):
        for r in self.records:
            if r.seq == seq and {r.subject, r.object} == {a, b}:
                return True
        return False

    # ---- the pass ----

    def run(self):
        for scan_i, scan in enumerate(self.ex.scans):
            self._sentence(scan_i, scan)
        self._dataflow()
        return self._dedupe()

    def _sentence(self, scan_i, scan):
        sent = scan.sent
        seq = sent.seq
        verbs = {d.governor for d in sent.deps
                 if d.governor and sent.token(d.governor).is_verb}

        subj_cache = {}
        for verb in sorted(verbs):
            subj_cache[verb] = self._effective_subject(scan_i, verb)

        # rule 14/15-style shared-verb relationships
        for verb in sorted(verbs):
            e1, t1, fallback, name_verb = subj_cache[verb]
            if e1 is None:
                continue
            vtok = sent.token(name_verb)
            resolved_any = False
            for obj in self._verb_objects(sent, verb):
                e2, t2 = self.resolve_token(scan_i, obj)
                if e2:
                    resolved_any = True
                    self.add(_RelRecord(e1, vtok.lemma, e2, "direct", seq, t1, t2))
            if not resolved_any:
                # fall through the of-phrase, then the xcomp chain
                for d in sent.deps:
                    if d.governor == verb and d.label.base == "nmod" and d.label.subtype == "of":
                        e2, t2 = self.resolve_token(scan_i, d.dependent)
                        if e2:
                            resolved_any = True
                            self.add(_RelRecord(e1, vtok.lemma, e2, "direct", seq, t1, t2))
                if not resolved_any and vtok.lemma not in _SHELL_VERBS:
                    for d in sent.deps:
                        if d.governor == verb and d.label.base in ("xcomp", "advcl"):
                            for obj in self._verb_objects(sent, d.dependent):
                                e2, t2 = self.resolve_token(scan_i, obj)
                                if e2:
                                    self.add(_RelRecord(
                                        e1, vtok.lemma, e2, "direct", seq, t1, t2))

        # agent phrases: passive subject or the sentence's active subject
        for d in sent.deps:
            if d.label.base != "nmod" or d.label.subtype not in ("by", "agent"):
                continue
            e2, t2 = self.resolve_token(scan_i, d.dependent)
            if not e2:
                continue
            verb = d.governor
            vtok = sent.token(verb) if verb else None
            if vtok is None or not vtok.is_verb:
                continue
            e1, t1 = self._subject_entity(scan_i, verb)
            if e1 is None:
                for v2 in sorted(verbs):
                    cand, tok, fb, _nv = subj_cache.get(v2, (None, None, False, v2))
                    if cand and not fb:
                        e1, t1 = cand, tok
                        break
            if e1:
                self.add(_RelRecord(e1, vtok.lemma, e2, "direct", seq, t1, t2))

        # passive chains: an active subject relates through the passive verb
        # to both the passive subject and its to-phrase (rule 20)
        passives = [(d.governor, d.dependent) for d in sent.deps
                    if d.label.base == "nsubjpass" and d.governor]
        for v2, e2_tok in passives:
            e2, t2 = self.resolve_token(scan_i, e2_tok)
            if not e2:
                continue
            to_phrase = [d for d in sent.deps
                         if d.governor == v2 and d.label.base == "nmod"
                         and d.label.subtype == "to"]
            for v1, subj_tok, label in scan.subjects:
                if label != "nsubj" or v1 == v2:
                    continue
                e1, t1 = self.resolve_token(scan_i, subj_tok)
                if not e1 or e1 == e2:
                    continue
                self.add(_RelRecord(e1, sent.token(v1).lemma, e2, "direct",
                                    seq, t1, t2))
                for d in to_phrase:
                    e3, t3 = self.resolve_token(scan_i, d.dependent)
                    if e3:
                        self.add(_RelRecord(
                            e1, f"{sent.token(v2).lemma} to", e3,
                            "preposition", seq, t1, t3))

        # of/in phrases between entity-resolvable nominals become "has"
        for d in sent.deps:
            if d.label.base != "nmod" or d.label.subtype not in ("of", "in"):
                continue
            gov = sent.token(d.governor) if d.governor else None
            if gov is None or not gov.is_noun_like:
                continue
            a = self._global_owner(scan_i, d.governor)
            b = self._global_owner(scan_i, d.dependent)
            if a and b and a != b:
                if d.label.subtype == "of":
                    self.add(_RelRecord(a, "has", b, "preposition", seq,
                                        d.governor, d.dependent))
                else:
                    self.add(_RelRecord(b, "has", a, "preposition", seq,
                                        d.dependent, d.governor))

        # prepositions folded into the verb (to/in/for/from)
        for d in sent.deps:
            if d.label.base != "nmod" or d.label.subtype not in ("to", "in", "for", "from"):
                continue
            verb = d.governor
            vtok = sent.token(verb) if verb else None
            if vtok is None or not vtok.is_verb:
                continue
            e3, t3 = self.resolve_token(scan_i, d.dependent)
            if not e3:
                continue
            e1, t1, fallback, name_verb = subj_cache.get(verb, (None, None, False, verb))
            phrase = f"{sent.token(name_verb).lemma} {d.label.subtype}"
            if e1:
                self.add(_RelRecord(e1, phrase, e3, "preposition", seq, t1, t3))
            for obj in self._verb_objects(sent, verb):
                e2, t2 = self.resolve_token(scan_i, obj)
                if e2:
                    self.add(_RelRecord(e2, phrase, e3, "preposition", seq, t2, t3))

        # comparative "as": verb alone joins the pair
        for d in sent.deps:
            if d.label.base != "nmod" or d.label.subtype != "as":
                continue
            verb = d.governor
            vtok = sent.token(verb) if verb else None
            if vtok is None or not vtok.is_verb:
                continue
            e1, t1 = self.resolve_token(scan_i, d.dependent)
            if not e1:
                continue
            for obj in self._verb_objects(sent, verb):
                e2, t2 = self.resolve_token(scan_i, obj)
                if e2:
                    self.add(_RelRecord(e1, vtok.lemma, e2, "direct", seq, t1, t2))

        # "provides E1 with E2" when the grammatical subject is the system
        for d in sent.deps:
            if d.label.base != "nmod" or d.label.subtype != "with":
                continue
            verb = d.governor
            vtok = sent.token(verb) if verb else None
            if vtok is None or not vtok.is_verb:
                continue
            e1, t1, fallback, _nv = subj_cache.get(verb, (None, None, False, verb))
            e2, t2 = self.resolve_token(scan_i, d.dependent)
            if not e2:
                continue
            if e1 is None or fallback:
                for obj in self._verb_objects(sent, verb):
                    cand, tok = self.resolve_token(scan_i, obj)
                    if cand:
                        self.add(_RelRecord(cand, vtok.lemma, e2, "direct", seq, tok, t2))

        # pairing-derived "has" between co-extracted, otherwise unlinked entities
        pair_events = [e for e in self.ex.entity_events
                       if e.seq == seq and e.kind in ("pairout", "gerund")]
        others = [e for e in self.ex.entity_events if e.seq == seq]
        seen_pairs = set()
        for p in sorted(pair_events, key=lambda e: e.token):
            for o in sorted(others, key=lambda e: e.token):
                if p.name == o.name:
                    continue
                key = frozenset((p.name, o.name))
                if key in seen_pairs or self.linked(seq, p.name, o.name):
                    continue
                seen_pairs.add(key)
                first, second = (p, o) if p.token < o.token else (o, p)
                self.add(_RelRecord(first.name, "has", second.name, "preposition",
                                    seq, first.token, second.token))

    def _dataflow(self):
        # entity pairs never sharing a sentence, joined by a token extracted
        # in the first sentence that reappears attached to the second entity
        sentences_of = defaultdict(set)
        for e in self.ex.entity_events:
            sentences_of[e.name].add(e.seq)
        linked_pairs = {frozenset((r.subject, r.object)) for r in self.records}

        carriers = []   # (seq, subject entity, verb lemma, extracted lemmas)
        for scan_i, scan in enumerate(self.ex.scans):
            subj = None
            for v, s, _ in scan.subjects:
                name, _tok = self.resolve_token(scan_i, s)
                if name:
                    subj = name
                    break
            if subj is None:
                continue
            root = next((d for d in scan.sent.deps if d.label.base == "root"), None)
            if root is None or not scan.sent.token(root.dependent).is_verb:
                continue
            verb = scan.sent.token(root.dependent).lemma
            lemmas = set()
            for ev in scan.attr_events:
                if ev.dropped:
                    continue
                if ev.container_mod is not None:
                    lemmas.add(ev.container_mod.lemma)
                    continue
                lemmas.update(p.lemma for p in ev.parts)
            if lemmas:
                carriers.append((scan.sent.seq, subj, verb, lemmas))

        for seq_a, subj_a, verb, lemmas in carriers:
            for scan_i, scan in enumerate(self.ex.scans):
                seq_b = scan.sent.seq
                if seq_b <= seq_a:
                    continue
                token_lemmas = {t.lemma for t in scan.sent.tokens}
                target = None
                if lemmas & token_lemmas:
                    for v, s, _ in scan.subjects:
                        name, _tok = self.resolve_token(scan_i, s)
                        if name:
                            target = name
                            break
                if target is None:
                    for ev in scan.attr_events:
                        if ev.dropped or ev.container_mod is not None:
                            continue
                        if ev.head_lemma in lemmas or any(p.lemma in lemmas for p in ev.parts):
                            pair = ev.local_pair(self.ex.confirmed)
                            if pair and pair in self.entities:
                                target = pair
                                break
                if target is None or target == subj_a:
                    continue
                if sentences_of[subj_a] & sentences_of[target]:
                    continue
                key = frozenset((subj_a, target))
                if key in linked_pairs:
                    continue
                linked_pairs.add(key)
                self.add(_RelRecord(subj_a, verb, target, "dataflow", seq_a))

    def _dedupe(self):
        seen = {}
        for r in self.records:
            seen.setdefault(r.key(), r)
        return list(seen.values())


def extract_relationships(doc: ParsedDocument, entities, lex: Lexicon,
                          _ex=None, attributes=None):
    """Iteration 2: verb, preposition and data-flow relationships."""
    ex = _ex or _DocExtraction(doc, lex)
    if attributes is None:
        ents, attributes, merged = extract_entities_attributes(doc, lex, _ex=ex)
        attach_attributes(ents, attributes, doc, lex, _ex=ex, merged=merged)
    rp = _RelationshipPass(ex, entities, attributes, lex)
    records = rp.run()
    return records, rp.diagnostics


# --------------------------------------------------------------------------
# cardinalities (iteration 3)

def _keyword_cardinalities(ex: _DocExtraction, lex: Lexicon, each_mode: str):
    """(seq, token) -> (value, modality, each_flag) from rule 24-26 indicators."""
    out = {}
    diagnostics = []

    def put(seq, token, value, modality=None, each=False):
        key = (seq, token)
        if key in out and out[key][0] != value:
            diagnostics.append(f"s{seq}: conflicting cardinality keywords on token {token}")
            return
        out[key] = (value, modality, each)

    for scan in ex.scans:
        sent = scan.sent
        for d in sent.deps:
            b = sent.token(d.dependent)
            if d.label.base == "amod" and b.lemma in lex.many_adjectives:
                put(sent.seq, d.governor, MANY)
            elif d.label.base == "det":
                if b.lemma == "each" and each_mode == "one":
                    put(sent.seq, d.governor, ONE, each=True)
                elif b.lemma in lex.many_determiners:
                    put(sent.seq, d.governor, MANY)
                elif b.lemma in lex.one_determiners:
                    put(sent.seq, d.governor, ONE)
            elif d.label.base == "nummod" and b.pos == "CD":
                prefix = " ".join(t.surface.lower() for t in sent.tokens
                                  if b.index - 3 <= t.index < b.index)
                if any(m in prefix for m in lex.min_markers):
                    put(sent.seq, d.governor, None, modality=_as_int(b))
                else:
                    put(sent.seq, d.governor, str(_as_int(b)))
    return out, diagnostics


def _as_int(tok: Token) -> int:
    words = {"one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
             "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10}
    try:
        return int(tok.surface)
    except ValueError:
        return words.get(tok.lemma, 1)


def extract_cardinalities(doc: ParsedDocument, entities, relationships,
                          lex: Lexicon, _ex=None, each_mode: str = "one"):
    """Iteration 3: keyword-driven cardinalities with the plural-POS fallback."""
    ex = _ex or _DocExtraction(doc, lex)
    keywords, diagnostics = _keyword_cardinalities(ex, lex, each_mode)
    token_map = {}
    for scan in ex.scans:
        for t in scan.sent.tokens:
            token_map[(scan.sent.seq, t.index)] = t

    cards: list[Cardinality] = []

    def end_value_full(seq, token):
        kw = keywords.get((seq, token)) if token is not None else None
        modality = kw[1] if kw else None
        if kw and kw[0] is not None:
            return kw[0], modality, kw[2]
        tok = token_map.get((seq, token))
        if tok is not None and tok.pos == "NNS":
            return MANY, modality, False
        return ONE, modality, False

    for rec in relationships:
        if rec.seq is None:
            continue
        sv, sm, s_each = end_value_full(rec.seq, rec.subj_token)
        ov, om, o_each = end_value_full(rec.seq, rec.obj_token)
        if s_each and ov == ONE and not o_each:
            ov = MANY
        if o_each and sv == ONE and not s_each:
            sv = MANY
        rel = rec.public()
        cards.append(Cardinality(rec.subject, sv, rel, "subject", sm))
        cards.append(Cardinality(rec.object, ov, rel, "object", om))

    # keyword indicators on attribute tokens still carry a cardinality
    # ("A store has many branches." makes branches an attribute of store)
    entity_sites = {(e.seq, e.token) for e in ex.entity_events}
    seen_attr_cards = set()
    for scan in ex.scans:
        for ev in scan.attr_events:
            if ev.dropped or ev.container_mod is not None:
                continue
            kw = keywords.get((ev.seq, ev.token))
            if not kw or kw[0] is None or (ev.seq, ev.token) in entity_sites:
                continue
            name = ev.name_with(ex.confirmed)
            if name in seen_attr_cards:
                continue
            seen_attr_cards.add(name)
            cards.append(Cardinality(name, kw[0], None, None, kw[1]))

    # standalone per-entity cardinality: keyword else plural-POS else one
    entity_tokens = defaultdict(list)
    for ev in ex.entity_events:
        entity_tokens[ev.name].append((ev.seq, ev.token))
    for name in sorted(entities):
        chosen = None
        modality = None
        for seq, token in sorted(entity_tokens.get(name, [])):
            kw = keywords.get((seq, token))
            if not kw:
                continue
            if kw[1] is not None and modality is None:
                modality = kw[1]
            if kw[0] is not None:
                if chosen is None:
                    chosen = kw[0]
                elif chosen != kw[0]:
                    diagnostics.append(f"entity {name}: conflicting keyword cardinalities")
        if chosen is None:
            plural = any(token_map.get(site) is not None and token_map[site].pos == "NNS"
                         for site in entity_tokens.get(name, []))
            chosen = MANY if plural else ONE
        cards.append(Cardinality(name, chosen, None, None, modality))
    return cards, diagnostics


# --------------------------------------------------------------------------
# composition

def build_er_model(doc: ParsedDocument, lex: Lexicon,
                   each_mode: str = "one") -> ERModel:
    """Iterations 1-3 composed over a pronoun-resolved document."""
    ex = _DocExtraction(doc, lex)
    entities, attributes, merged = extract_entities_attributes(doc, lex, _ex=ex)
    attach_attributes(entities, attributes, doc, lex, _ex=ex, merged=merged)
    records, rel_diags = extract_relationships(doc, entities, lex, _ex=ex,
                                               attributes=attributes)
    cards, card_diags = extract_cardinalities(doc, entities, records, lex,
                                              _ex=ex, each_mode=each_mode)
    model = ERModel()
    model.entities = entities
    model.attributes = attributes
    model.relationships = [r.public() for r in records]
    model.cardinalities = cards
    model.diagnostics = ex.diagnostics + rel_diags + card_diags
    model._extraction = ex
    model._rel_records = records
    return model
