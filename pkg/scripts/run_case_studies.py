"""Extract, evaluate and render all three case studies into ./out."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from remod import anaphora, bp, dataflow, emit, evaluate, extract, fixtures
from remod.lexicon import load_lexicon


def main():
    out_dir = Path(__file__).resolve().parents[1] / "out"
    out_dir.mkdir(exist_ok=True)
    lex = load_lexicon()
    for name in ("cs1_online_order", "cs2_user_stories", "cs3_witness_ucs"):
        doc, gold = fixtures.fixture(name)
        resolved = anaphora.resolve_pronouns(doc, lex)
        model = extract.build_er_model(resolved, lex)
        roles = dataflow.categorize_attributes(resolved, model, lex)
        if doc.format == "stories":
            bpm = bp.stories_operations(resolved, model, lex)
        else:
            bpm = bp.extract_bp(resolved, model, roles, lex)
        emit.write_model(model, bpm, roles, out_dir / f"{name}.model.json",
                         source_id=name)
        (out_dir / f"{name}.er.dot").write_text(emit.er_diagram(model))
        (out_dir / f"{name}.bp.dot").write_text(emit.bp_diagram(bpm))
        report = evaluate.evaluate(
            emit.read_model(out_dir / f"{name}.model.json"), gold)
        print(f"== {name}")
        print(report.table())
        print()


if __name__ == "__main__":
    main()
