"""Command-line front door: extract, eval, shuffle, merge, sequence."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import anaphora, bp, corpus, dataflow, depgraph, emit, evaluate, extract
from .lexicon import load_lexicon


def _load_deps(path, warnings):
    if str(path).endswith(".conllu"):
        return depgraph.load_conllu(path, warnings)
    return depgraph.load_native(path, warnings)


def _lexicon(args):
    path = getattr(args, "lexicon", None) or os.environ.get("REMOD_LEXICON")
    return load_lexicon(path)


def cmd_extract(args) -> int:
    warnings: list[str] = []
    try:
        doc = _load_deps(args.deps, warnings)
        lex = _lexicon(args)
    except (depgraph.LoadError, depgraph.StructuralError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fmt = doc.format if args.format == "auto" else args.format
    resolved = anaphora.resolve_pronouns(doc, lex, warnings)
    model = extract.build_er_model(resolved, lex, each_mode=args.each_mode)
    roles = dataflow.categorize_attributes(resolved, model, lex,
                                           tdr29_mode=args.tdr29_mode)
    if fmt == "stories":
        bpm = bp.stories_operations(resolved, model, lex)
    else:
        bpm = bp.extract_bp(resolved, model, roles, lex)
    emit.write_model(model, bpm, roles, args.out, source_id=doc.source_id)
    if args.er_dot:
        with open(args.er_dot, "w", encoding="utf-8") as fh:
            fh.write(emit.er_diagram(model))
    if args.bp_dot:
        with open(args.bp_dot, "w", encoding="utf-8") as fh:
            fh.write(emit.bp_diagram(bpm))
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"wrote {args.out}: {len(model.entities)} entities, "
          f"{len(model.attributes)} attributes, "
          f"{len(model.relationships)} relationships, {len(bpm.steps)} steps")
    return 0


def cmd_eval(args) -> int:
    try:
        model_doc = emit.read_model(args.model)
        gold = evaluate.load_gold(args.gold)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = evaluate.evaluate(model_doc, gold)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    else:
        print(report.table())
    return 0


def cmd_shuffle(args) -> int:
    warnings: list[str] = []
    try:
        doc = _load_deps(args.deps, warnings)
        out = corpus.shuffle(doc, args.seed)
        depgraph.save_native(out, args.out)
    except (depgraph.LoadError, depgraph.StructuralError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: {len(out.sentences)} sentences, seed {args.seed}")
    return 0


def cmd_merge(args) -> int:
    warnings: list[str] = []
    try:
        docs = [_load_deps(p, warnings) for p in args.deps]
        out = corpus.merge(docs)
        depgraph.save_native(out, args.out)
    except (depgraph.LoadError, depgraph.StructuralError, corpus.CorpusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: {len(out.sentences)} sentences from {len(docs)} documents")
    return 0


def cmd_sequence(args) -> int:
    try:
        with open(args.text, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        raw = corpus.RawDocument(source_id=os.path.basename(args.text), lines=lines)
        warnings: list[str] = []
        ordered = corpus.sequence_sentences(raw, warnings)
    except (corpus.CorpusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for text, tag, label in ordered:
        print(f"{tag:<10} {label or '-':<8} {text}")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="remod",
                                description="ER/BP model extraction from parsed requirements")
    sub = p.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("extract", help="run the extraction pipeline on a dependency file")
    ext.add_argument("--deps", required=True, help="native or .conllu dependency file")
    ext.add_argument("--format", choices=["auto", "general", "ucs", "stories"],
                     default="auto")
    ext.add_argument("--out", required=True, help="model JSON output path")
    ext.add_argument("--er-dot", dest="er_dot", help="write the ER diagram DOT source")
    ext.add_argument("--bp-dot", dest="bp_dot", help="write the BP diagram DOT source")
    ext.add_argument("--lexicon", help="lexicon config path (or REMOD_LEXICON)")
    ext.add_argument("--each-mode", choices=["n", "one"], default="one")
    ext.add_argument("--tdr29-mode", choices=["prose", "pseudocode"], default="prose")
    ext.set_defaults(func=cmd_extract)

    ev = sub.add_parser("eval", help="score a model file against a gold file")
    ev.add_argument("--model", required=True)
    ev.add_argument("--gold", required=True)
    ev.add_argument("--json", action="store_true")
    ev.set_defaults(func=cmd_eval)

    sh = sub.add_parser("shuffle", help="deterministically shuffle sentences")
    sh.add_argument("--deps", required=True)
    sh.add_argument("--seed", type=int, required=True)
    sh.add_argument("--out", required=True)
    sh.set_defaults(func=cmd_shuffle)

    mg = sub.add_parser("merge", help="concatenate dependency files")
    mg.add_argument("--deps", nargs="+", required=True)
    mg.add_argument("--out", required=True)
    mg.set_defaults(func=cmd_merge)

    sq = sub.add_parser("sequence", help="print the sequenced sentences of a UCS text")
    sq.add_argument("--text", required=True)
    sq.set_defaults(func=cmd_sequence)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
