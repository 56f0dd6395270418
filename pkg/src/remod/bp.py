"""Business-process model: ordered operations on five flow paths."""

from __future__ import annotations

from dataclasses import dataclass, field

from .depgraph import ParsedDocument, ParsedSentence
from .extract import ERModel, _DocExtraction
from .lexicon import Lexicon

PATHS = ("external", "alternate_external", "system", "alternate_system", "exception")


@dataclass
class Control:
    condition: str | None = None
    then_branch: str | None = None
    else_branch: str | None = None
    jump: int | None = None


@dataclass
class FlowStep:
    step_id: int
    path: str
    actor: str
    verb: str
    data_in: list = field(default_factory=list)
    data_out: list = field(default_factory=list)
    entity_refs: list = field(default_factory=list)
    control: Control | None = None
    provenance: int = -1
    unsourced: bool = False


@dataclass
class BPModel:
    steps: list = field(default_factory=list)
    edges: list = field(default_factory=list)    # (from, to, kind)
    diagnostics: list = field(default_factory=list)


def _root_verb(sent: ParsedSentence):
    for d in sent.deps:
        if d.label.base == "root":
            tok = sent.token(d.dependent)
            return tok
    return None


SHELL_VERBS = frozenset({"want", "wish", "need", "like", "able", "be",
                         "can", "allow", "enable", "shall", "try"})


def _chain_verb(sent: ParsedSentence, start):
    """Follow xcomp/ccomp through shell verbs to the verb naming the action."""
    current = start
    while current.lemma in SHELL_VERBS or not current.is_verb:
        nxt = None
        for d in sent.deps:
            if d.label.base in ("xcomp", "ccomp") and d.governor == current.index:
                cand = sent.token(d.dependent)
                if cand.is_verb:
                    nxt = cand
                    break
        if nxt is None:
            break
        current = nxt
    return current


def _has_error_keyword(sent: ParsedSentence, lex: Lexicon) -> bool:
    for d in sent.deps:
        if d.label.base not in ("xcomp", "amod", "neg", "dobj", "compound"):
            continue
        for idx in (d.governor, d.dependent):
            if not idx:
                continue
            if sent.token(idx).lemma in lex.error_keywords:
                return True
    return False


def _agentless_passive(sent: ParsedSentence) -> bool:
    has_pass = any(d.label.base in ("nsubjpass", "auxpass") for d in sent.deps)
    if not has_pass:
        # copular participle predicates ("is disconnected" parsed as JJ) count
        root = next((d for d in sent.deps if d.label.base == "root"), None)
        if root is not None:
            tok = sent.token(root.dependent)
            has_cop = any(d.label.base == "cop" for d in sent.deps)
            has_pass = has_cop and (tok.pos in ("JJ", "VBN"))
    has_agent = any(d.label.base == "nmod" and d.label.subtype in ("agent", "by")
                    for d in sent.deps)
    return has_pass and not has_agent


def _subject_info(sent, scan, ex, scan_i, lex):
    """(actor-name, is-system) from the sentence's grammatical subject; a
    passive sentence acts through its agent phrase, not its patient."""
    site_map = ex.site_maps[scan_i]
    passive_only = all(label == "nsubjpass" for _, _, label in scan.subjects) \
        and bool(scan.subjects)
    if passive_only:
        for d in sent.deps:
            if d.label.base == "nmod" and d.label.subtype in ("agent", "by"):
                tok = sent.token(d.dependent)
                if tok.lemma in lex.system_nouns:
                    return "system", True
                if d.dependent in site_map:
                    return site_map[d.dependent], False
                return tok.lemma, False
        return "system", True
    for verb, subj, label in scan.subjects:
        if label == "nsubjpass":
            continue
        tok = sent.token(subj)
        if tok.lemma in lex.system_nouns:
            return "system", True
        if subj in site_map:
            return site_map[subj], False
    for verb, subj, label in scan.subjects:
        if label == "nsubjpass":
            continue
        tok = sent.token(subj)
        if tok.lemma in lex.non_entity_nouns:
            return "system", True
        return tok.lemma, tok.lemma in lex.system_nouns
    return "system", True


def _condition(sent, lex):
    """rule 35/36 control info, or None."""
    if_verbs = set()
    for d in sent.deps:
        if d.label.base == "mark" and sent.token(d.dependent).lemma == "if":
            if_verbs.add(d.governor)
        if d.label.base == "advcl" and d.label.subtype == "if":
            if_verbs.add(d.dependent)
    main_verbs = {d.dependent for d in sent.deps if d.label.base == "root"}
    for d in sent.deps:
        if d.label.base == "advcl" and d.label.subtype == "if":
            main_verbs.add(d.governor)

    def verb_obj(verb_idx):
        verb = sent.token(verb_idx)
        for d in sent.deps:
            if d.governor == verb_idx and d.label.base == "dobj":
                return f"{verb.lemma} {sent.token(d.dependent).lemma}"
        return verb.lemma

    if if_verbs:
        cond_verb = sorted(if_verbs)[0]
        ctl = Control(condition=verb_obj(cond_verb))
        then_verb = next((v for v in sorted(main_verbs) if v not in if_verbs), None)
        if then_verb:
            ctl.then_branch = verb_obj(then_verb)
        for d in sent.deps:
            if d.label.base == "advmod" and sent.token(d.dependent).lemma == "else":
                ctl.else_branch = verb_obj(d.governor)
        return ctl
    # rule 36: a system validate is a conditional check
    for d in sent.deps:
        if d.governor and d.label.base == "nsubj":
            v = sent.token(d.governor)
            if v.lemma == "validate":
                return Control(condition=verb_obj(d.governor))
    return None


def _jump(sent, lex):
    jump_verb = None
    for t in sent.tokens:
        if t.is_verb and t.lemma in lex.jump_verbs:
            jump_verb = t
            break
    if jump_verb is None:
        # the "continue at step 1" parse hangs the verb off an nsubj
        for d in sent.deps:
            gov = sent.token(d.governor) if d.governor else None
            if gov is not None and gov.lemma in lex.jump_verbs:
                jump_verb = gov
                break
    if jump_verb is None:
        return None
    for d in sent.deps:
        if d.label.base in ("nummod", "dobj"):
            tok = sent.token(d.dependent)
            if tok.pos == "CD":
                try:
                    return int(tok.surface)
                except ValueError:
                    return None
    return None


def extract_bp(doc: ParsedDocument, er: ERModel, roles, lex: Lexicon) -> BPModel:
    """One step per sentence; paths from subject and flow tag; rule 32-37 annotations."""
    ex: _DocExtraction = getattr(er, "_extraction", None) or _DocExtraction(doc, lex)
    model = BPModel()
    roles_by_seq = {}
    for r in roles:
        roles_by_seq.setdefault(r.provenance[0], []).append(r)

    main_step_by_number = {}
    pending_inputs: list[str] = []

    for scan_i, scan in enumerate(ex.scans):
        sent = scan.sent
        verb_tok = _root_verb(sent)
        if verb_tok is None:
            continue
        action = _chain_verb(sent, verb_tok)
        actor, is_system = _subject_info(sent, scan, ex, scan_i, lex)

        is_exception = (sent.flow_tag == "exception"
                        or _has_error_keyword(sent, lex)
                        or (sent.flow_tag == "alternate" and _agentless_passive(sent)))
        if is_exception:
            path, actor = "exception", "system"
        elif not is_system:
            path = "alternate_external" if sent.flow_tag == "alternate" else "external"
        else:
            path = "alternate_system" if sent.flow_tag == "alternate" else "system"
            actor = "system"

        step = FlowStep(step_id=len(model.steps), path=path, actor=actor,
                        verb=action.lemma if not is_exception else _exception_label(sent, action),
                        provenance=sent.seq)
        if sent.flow_tag == "main" and sent.step_label:
            digits = "".join(ch for ch in sent.step_label if ch.isdigit())
            if digits:
                main_step_by_number.setdefault(int(digits), step.step_id)

        srl = roles_by_seq.get(sent.seq, [])
        inputs = sorted({r.label for r in srl if r.role == "input"})
        outputs = sorted({r.label for r in srl if r.role == "output"})
        receive = action.lemma in lex.receive_verbs
        is_passive = any(d.label.base in ("nsubjpass", "auxpass") for d in sent.deps)
        if path in ("external", "alternate_external"):
            step.data_out = inputs or outputs
            pending_inputs.extend(step.data_out)
        else:
            step.data_in = inputs
            step.data_out = outputs
            if receive and not is_passive:
                # rule 33: the system receiving marks input arriving from outside
                step.path = "external" if sent.flow_tag != "alternate" else "alternate_external"
                step.actor = actor
            if pending_inputs and not step.data_in:
                step.data_in = list(dict.fromkeys(pending_inputs))
                pending_inputs = []
        step.entity_refs = sorted({e.name for e in ex.entity_events if e.seq == sent.seq})

        ctl = _condition(sent, lex)
        target = _jump(sent, lex)
        if target is not None:
            ctl = ctl or Control()
            ctl.jump = target
        step.control = ctl
        model.steps.append(step)

    # resolve jump targets to step ids; connect control/data edges
    for step in model.steps:
        if step.control and step.control.jump is not None:
            target = main_step_by_number.get(step.control.jump)
            if target is None:
                model.diagnostics.append(
                    f"step {step.step_id}: dangling jump to {step.control.jump}")
                step.control.jump = None
            else:
                step.control.jump = target
                model.edges.append((step.step_id, target, "control"))
    for a, b in zip(model.steps, model.steps[1:]):
        model.edges.append((a.step_id, b.step_id, "control"))
    produced = {}
    for step in model.steps:
        for name in step.data_in:
            if name in produced:
                model.edges.append((produced[name], step.step_id, "data"))
            else:
                step.unsourced = True
                model.diagnostics.append(
                    f"step {step.step_id}: data {name!r} has no producer")
        for name in step.data_out:
            produced[name] = step.step_id
    # an external step whose data no later system step consumes gets flagged
    for step in model.steps:
        if step.path not in ("external", "alternate_external"):
            continue
        consumed = any(e[0] == step.step_id and e[2] == "data" for e in model.edges)
        if not consumed and not any(
                set(step.data_out) & set(later.data_in)
                for later in model.steps if later.step_id > step.step_id):
            step.unsourced = True
    return model


def _exception_label(sent, action):
    for d in sent.deps:
        if d.label.base == "xcomp" and d.governor:
            gov, dep = sent.token(d.governor), sent.token(d.dependent)
            if gov.lemma in ("fail", "error") or dep.lemma in ("fail", "error"):
                return f"{gov.lemma} {dep.lemma}"
    for d in sent.deps:
        if d.label.base == "neg":
            return f"not {sent.token(d.governor).lemma}" if d.governor else action.lemma
    return action.lemma


def stories_operations(doc: ParsedDocument, er: ERModel, lex: Lexicon) -> BPModel:
    """One external step per user story: role actor, main verb, object data."""
    ex: _DocExtraction = getattr(er, "_extraction", None) or _DocExtraction(doc, lex)
    model = BPModel()
    for scan_i, scan in enumerate(ex.scans):
        sent = scan.sent
        root = _root_verb(sent)
        action = None
        if root is not None:
            action = _chain_verb(sent, root) if root.is_verb else _chain_verb(sent, root)
            if not action.is_verb:
                action = next((t for t in sent.tokens if t.is_verb
                               and t.lemma not in ("can", "be", "want")), None)
        if action is None or not action.is_verb:
            model.diagnostics.append(f"s{sent.seq}: story has no resolvable verb")
            continue
        actor = "user"
        for d in sent.deps:
            if d.label.base == "nmod" and d.label.subtype == "as":
                actor = sent.token(d.dependent).lemma
                break
        else:
            actor, _system = _subject_info(sent, scan, ex, scan_i, lex)
        data = []
        for d in sent.deps:
            if d.governor == action.index and d.label.base in ("dobj", "iobj"):
                for ev in scan.attr_events:
                    if ev.token == d.dependent and not ev.dropped \
                            and ev.container_mod is None:
                        data.append(" ".join(p.lemma for p in ev.parts))
                        break
                else:
                    site = ex.site_maps[scan_i].get(d.dependent)
                    if site:
                        data.append(site)
        refs = sorted({e.name for e in ex.entity_events if e.seq == sent.seq})
        model.steps.append(FlowStep(
            step_id=len(model.steps), path="external", actor=actor,
            verb=action.lemma, data_out=data, entity_refs=refs,
            provenance=sent.seq))
    for a, b in zip(model.steps, model.steps[1:]):
        model.edges.append((a.step_id, b.step_id, "control"))
    return model
