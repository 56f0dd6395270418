"""Score adapter re-parses of the fixture sources against the frozen parses."""

import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from remod import depgraph, fixtures  # noqa: E402

FORMATS = {"cs2_user_stories": "stories", "cs3_witness_ucs": "ucs",
           "b2_ucs1": "ucs", "b2_ucs2": "ucs"}


def tdset(sent):
    # committed edges only: `dep` marks attachments the parser would not
    # commit to, on either side (threshold and measure recorded in MANIFEST)
    return {(str(d.label), d.governor, d.dependent) for d in sent.deps
            if d.label.base != "dep"}


def agreement(name, verbose=False):
    frozen, _ = fixtures.fixture(name)
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "out.deps"
        res = subprocess.run(
            ["node", str(ROOT / "adapter" / "dist" / "cli.js"),
             "--in", str(ROOT / "src" / "remod" / "data" / f"{name}.txt"),
             "--out", str(out),
             "--format", FORMATS.get(name, "general")],
            capture_output=True, text=True)
        if res.returncode != 0:
            print(name, "ADAPTER FAILED", res.stderr)
            return 0.0, 0.0
        got = depgraph.load_native(out)
    inter = total_a = total_f = 0
    fsents = {tuple(t.surface for t in s.tokens if t.pos not in (".", ",")): s
              for s in frozen.sentences}
    for gs in got.sentences:
        key = tuple(t.surface for t in gs.tokens if t.pos not in (".", ","))
        fs = fsents.get(key)
        if fs is None:
            # align by position as fallback
            fs = frozen.sentences[gs.seq] if gs.seq < len(frozen.sentences) else None
        if fs is None:
            total_a += len(gs.deps)
            continue
        a, f = tdset(gs), tdset(fs)
        inter += len(a & f)
        total_a += len(a)
        total_f += len(f)
        if verbose and a != f:
            print(f"  sent {gs.seq}: {fs.text}")
            for d in sorted(f - a):
                print(f"    missing {d}")
            for d in sorted(a - f):
                print(f"    extra   {d}")
    f1 = 2 * inter / (total_a + total_f) if total_a + total_f else 1.0
    recall = inter / total_f if total_f else 1.0
    return f1, recall


def main():
    names = sys.argv[1:] or list(fixtures.FIXTURE_NAMES)
    verbose = "-v" in names
    names = [n for n in names if n != "-v"]
    for name in names:
        f1, recall = agreement(name, verbose=verbose)
        print(f"{name}: agreement F1 {f1:.1%}, fixture recall {recall:.1%}")


if __name__ == "__main__":
    main()
