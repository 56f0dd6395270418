"""Development harness: case study 2 vs its gold tables and story operations."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from remod import anaphora, bp, depgraph, extract
from remod.evaluate import norm_relationship
from remod.lexicon import load_lexicon

TARGET_ENTITIES = {"visitor": 12, "event": 7, "ticket": 8, "payment": 1}
TARGET_ATTRS = {"visitor": {"password"}, "event": {"type"},
                "ticket": {"price"}, "payment": {"method"}}
TARGET_RELS = [
    ("visitor", "search", "event"),
    ("visitor", "see", "event"),
    ("visitor", "has", "event"),
    ("visitor", "choose", "event"),
    ("ticket", "has", "event"),
    ("visitor", "see", "ticket"),
    ("visitor", "purchase", "ticket"),
    ("visitor", "provide", "ticket"),
    ("visitor", "choose", "payment"),
    ("visitor", "choose", "ticket"),
    ("ticket", "has", "payment"),
    ("visitor", "receive", "ticket"),
]


def main():
    data = Path(__file__).resolve().parents[1] / "src" / "remod" / "data"
    doc = depgraph.load_native(data / "cs2_user_stories.deps")
    lex = load_lexicon()
    resolved = anaphora.resolve_pronouns(doc, lex)
    model = extract.build_er_model(resolved, lex)

    got = {n: e.frequency for n, e in model.entities.items()}
    print("entities:", dict(sorted(got.items())),
          "OK" if got == TARGET_ENTITIES else f"WANT {TARGET_ENTITIES}")
    attrs = {}
    for a in model.attributes.values():
        attrs.setdefault(a.owner, set()).add(a.name)
    print("attributes:", {k: sorted(v) for k, v in sorted(attrs.items(), key=str)},
          "OK" if attrs == TARGET_ATTRS else f"WANT {TARGET_ATTRS}")

    rels = {(r.subject, r.verb_phrase, r.object) for r in model.relationships}
    got_norm = {norm_relationship(*r) for r in rels}
    hits = [t for t in TARGET_RELS if norm_relationship(*t) in got_norm]
    print(f"relationships: matched {len(hits)}/12; misses:",
          [t for t in TARGET_RELS if t not in hits])
    for r in sorted(rels):
        print("   ", r)

    bpm = bp.stories_operations(resolved, model, lex)
    kinds = [(s.path, s.actor, s.verb) for s in bpm.steps]
    print(f"story steps: {len(bpm.steps)} (want 12)")
    for k in kinds:
        print("   ", k)

    # cardinality spot-check: visitor (purchase) ticket with the ticket side N
    for c in model.cardinalities:
        if c.relationship and c.relationship.verb_phrase.startswith("purchase") \
                and c.entity == "ticket":
            print("purchase-ticket end:", c.value, "(want N)")


if __name__ == "__main__":
    main()
