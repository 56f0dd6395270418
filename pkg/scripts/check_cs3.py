"""Development harness: case study 3 vs its gold tables and BP structure."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from remod import anaphora, bp, dataflow, depgraph, extract
from remod.evaluate import norm_attribute, norm_relationship
from remod.lexicon import load_lexicon

TARGET_ENTITIES = {"coordinator": 5, "witness": 8, "crisis": 9, "phonecompany": 1,
                   "checklist": 1, "surveillance": 1, "emergency": 2}
TARGET_ATTRS = {
    ("witness", "first name"), ("witness", "last name"),
    ("witness", "phone number"), ("witness", "witness address"),
    ("crisis", "crisis location"), ("crisis", "type"), ("crisis", "time"),
    ("crisis", "crisis status"), ("emergency", "emergency level"),
}
TARGET_RELS = [
    ("coordinator", "reported", "witness"),
    ("coordinator", "provides", "witness"),
    ("coordinator", "informs", "crisis"),
    ("phonecompany", "match", "witness"),
    ("coordinator", "provides", "phonecompany"),
    ("surveillance", "starts", "coordinator"),
    ("coordinator", "provides", "checklist"),
    ("emergency", "sets", "crisis"),
]


def main():
    data = Path(__file__).resolve().parents[1] / "src" / "remod" / "data"
    doc = depgraph.load_native(data / "cs3_witness_ucs.deps")
    lex = load_lexicon()
    resolved = anaphora.resolve_pronouns(doc, lex)
    model = extract.build_er_model(resolved, lex)

    got = {n: e.frequency for n, e in model.entities.items()}
    names_ok = set(got) == set(TARGET_ENTITIES)
    freq_ok = names_ok and all(abs(got[k] - TARGET_ENTITIES[k]) <= 1 for k in got)
    print("entities:", dict(sorted(got.items())))
    print("  names", "OK" if names_ok else f"WANT {sorted(TARGET_ENTITIES)}",
          "| freqs +-1", "OK" if freq_ok else "MISMATCH")

    got_attrs = {(a.owner, a.name) for a in model.attributes.values()}
    norm_got = {norm_attribute(o, n) for o, n in got_attrs}
    norm_want = {norm_attribute(o, n) for o, n in TARGET_ATTRS}
    print("attributes:", sorted(got_attrs, key=str))
    print("  attributes", "OK" if norm_got == norm_want else
          f"extra={norm_got - norm_want} missing={norm_want - norm_got}")

    rels = {(r.subject, r.verb_phrase, r.object) for r in model.relationships}
    got_norm = {norm_relationship(*r) for r in rels}
    hits = [t for t in TARGET_RELS if norm_relationship(*t) in got_norm]
    print(f"relationships: matched {len(hits)}/8 (need >=7); misses:",
          [t for t in TARGET_RELS if t not in hits])
    for r in sorted(rels):
        print("   ", r)

    roles = dataflow.categorize_attributes(resolved, model, lex)
    bpm = bp.extract_bp(resolved, model, roles, lex)
    paths = {}
    for s in bpm.steps:
        paths.setdefault(s.path, []).append(s.step_id)
    print("bp paths:", {k: len(v) for k, v in sorted(paths.items())})
    n_exc = len(paths.get("exception", []))
    n_sys = len(paths.get("system", [])) + len(paths.get("alternate_system", []))
    print(f"  exceptions {n_exc} (>=4: {'OK' if n_exc >= 4 else 'FAIL'}); "
          f"system {n_sys} (>=7: {'OK' if n_sys >= 7 else 'FAIL'})")
    for s in bpm.steps:
        print(f"   step {s.step_id}: {s.path:<18} {s.actor:<14} {s.verb:<12} "
              f"in={s.data_in} out={s.data_out} unsourced={s.unsourced}")


if __name__ == "__main__":
    main()
