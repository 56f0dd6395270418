"""Development harness: run case study 1 and diff against its gold tables."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from remod import anaphora, dataflow, depgraph, extract
from remod.lexicon import load_lexicon

TARGET_ENTITIES = {"shopping cart": 7, "customer": 10, "product": 3, "payment": 3,
                   "shipping": 6, "order": 5, "tracking": 1}
TARGET_ATTRS = {
    "payment": {"method"},
    "shipping": {"shipping method", "shipping charges", "tentative duration"},
    "order": {"id", "tax"},
    "tracking": {"date", "time", "current status"},
}
TARGET_INPUTS = {"payment method", "shipping method", "order id"}
TARGET_OUTPUTS = {"shipping charges", "duration", "date", "time",
                  "current status", "tax"}
TARGET_RELS = [
    ("product", "add", "customer"),
    ("shopping cart", "add", "customer"),
    ("shopping cart", "has", "product"),
    ("shipping", "has", "order"),
    ("shipping", "select", "customer"),
    ("payment", "select", "customer"),
    ("payment", "has", "shipping"),
    ("tracking", "enter", "customer"),
    ("tracking", "has", "order"),
    ("order", "confirm", "customer"),
]


def main():
    data = Path(__file__).resolve().parents[1] / "src" / "remod" / "data"
    doc = depgraph.load_native(data / "cs1_online_order.deps")
    lex = load_lexicon()
    resolved = anaphora.resolve_pronouns(doc, lex)
    model = extract.build_er_model(resolved, lex)

    got_ents = {name: e.frequency for name, e in model.entities.items()}
    print("entities:", dict(sorted(got_ents.items())))
    if got_ents != TARGET_ENTITIES:
        for k in sorted(set(got_ents) | set(TARGET_ENTITIES)):
            g, t = got_ents.get(k), TARGET_ENTITIES.get(k)
            if g != t:
                print(f"  MISMATCH {k}: got {g} want {t}")
    else:
        print("  entities OK (sum", sum(got_ents.values()), ")")

    got_attrs = {}
    for a in model.attributes.values():
        got_attrs.setdefault(a.owner, set()).add(a.name)
    print("attributes:", {k: sorted(v) for k, v in sorted(got_attrs.items(), key=str)})
    if got_attrs == TARGET_ATTRS:
        print("  attributes OK")
    else:
        for k in sorted(set(map(str, got_attrs)) | set(map(str, TARGET_ATTRS))):
            g = got_attrs.get(k) or got_attrs.get(None if k == "None" else k)
            t = TARGET_ATTRS.get(k)
            if g != t:
                print(f"  MISMATCH owner {k}: got {sorted(g or [])} want {sorted(t or [])}")

    roles = dataflow.categorize_attributes(resolved, model, lex)
    inputs = {r.label for r in roles if r.role == "input"}
    outputs = {r.label for r in roles if r.role == "output"}
    print("inputs:", sorted(inputs), "OK" if inputs == TARGET_INPUTS else f"WANT {sorted(TARGET_INPUTS)}")
    print("outputs:", sorted(outputs), "OK" if outputs == TARGET_OUTPUTS else f"WANT {sorted(TARGET_OUTPUTS)}")

    rels = {(r.subject, r.verb_phrase, r.object) for r in model.relationships}
    print("relationships:")
    for r in sorted(rels):
        print("   ", r)
    from remod.evaluate import norm_relationship
    got_norm = {norm_relationship(*r) for r in rels}
    hits = [t for t in TARGET_RELS if norm_relationship(*t) in got_norm]
    print(f"  matched {len(hits)}/10 gold relationship rows; misses:",
          [t for t in TARGET_RELS if t not in hits])
    print("diagnostics:", model.diagnostics)


if __name__ == "__main__":
    main()
