"""Acceptance suite: every primary criterion at its stated tolerance.

Each test prints one pass/fail line (run with `pytest tests/test_acceptance.py -s`
or `python scripts/acceptance_report.py` for the plain report).
"""

import time
from fractions import Fraction

import pytest

from remod import bp, corpus, dataflow, emit, evaluate, extract, fixtures
from remod.anaphora import resolve_pronouns
from remod.evaluate import metrics, norm_attribute, norm_relationship
from remod.lexicon import load_lexicon


def _line(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] {name}: {status}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def _pipeline(name, lex):
    doc, gold = fixtures.fixture(name)
    resolved = resolve_pronouns(doc, lex)
    model = extract.build_er_model(resolved, lex)
    roles = dataflow.categorize_attributes(resolved, model, lex)
    return resolved, model, roles, gold


# --- criterion 1: case study 1 entities -----------------------------------

def test_cs1_entities(lex):
    t0 = time.perf_counter()
    _, model, _, _ = _pipeline("cs1_online_order", lex)
    elapsed = time.perf_counter() - t0
    got = {n: e.frequency for n, e in model.entities.items()}
    want = fixtures.gold_tables("cs1_online_order")["frequencies"]
    _line("cs1 entities (gold set and frequencies, exact)",
          got == want and elapsed < 1.0,
          f"{got} in {elapsed * 1000:.0f} ms")


# --- criterion 2: case study 1 attributes and roles ------------------------

def test_cs1_attributes_and_roles(lex):
    _, model, roles, _ = _pipeline("cs1_online_order", lex)
    got_attrs = {(a.owner, a.name) for a in model.attributes.values()}
    want_attrs = {(a["owner"], a["name"])
                  for a in fixtures.gold_tables("cs1_online_order")["attributes"]}
    attrs_ok = {norm_attribute(*p) for p in got_attrs} == \
               {norm_attribute(*p) for p in want_attrs}
    got_roles = {(r.label, r.role) for r in roles}
    want_roles = {(r["attribute"], r["role"])
                  for r in fixtures.gold_tables("cs1_online_order")["roles"]}
    _line("cs1 attributes and input/output roles (exact)",
          attrs_ok and got_roles == want_roles,
          f"attrs={sorted(got_attrs)}")


# --- criterion 3: case study 1 relationships and cardinality ends ----------

def test_cs1_relationships(lex):
    _, model, _, _ = _pipeline("cs1_online_order", lex)
    gold_doc = fixtures.gold_tables("cs1_online_order")
    got = {norm_relationship(r.subject, r.verb_phrase, r.object)
           for r in model.relationships}
    rows = gold_doc["relationships"]
    matched = [row for row in rows
               if norm_relationship(row["subject"], row["verb"], row["object"]) in got]
    rel_ok = len(matched) >= 9

    # cardinality ends on matched rows
    by_rel = {}
    for c in model.cardinalities:
        if c.relationship is not None:
            key = norm_relationship(c.relationship.subject,
                                    c.relationship.verb_phrase,
                                    c.relationship.object)
            by_rel.setdefault(key, {})[evaluate.norm_name(c.entity)] = c.value
    end_rows = 0
    for row in matched:
        key = norm_relationship(row["subject"], row["verb"], row["object"])
        ends = by_rel.get(key, {})
        if ends.get(evaluate.norm_name(row["subject"])) == row["subject_card"] and \
           ends.get(evaluate.norm_name(row["object"])) == row["object_card"]:
            end_rows += 1
    _line("cs1 relationships (>=9 of 10 gold rows; ends on >=9 rows)",
          rel_ok and end_rows >= 9,
          f"matched {len(matched)}/10, ends {end_rows}")


# --- criterion 4: case study 2 ---------------------------------------------

def test_cs2(lex):
    doc, model, roles, gold = _pipeline("cs2_user_stories", lex)
    gold_doc = fixtures.gold_tables("cs2_user_stories")
    freq_ok = {n: e.frequency for n, e in model.entities.items()} == \
        gold_doc["frequencies"]
    got_attrs = {norm_attribute(a.owner, a.name) for a in model.attributes.values()}
    want_attrs = {norm_attribute(a["owner"], a["name"])
                  for a in gold_doc["attributes"]}
    got_rels = {norm_relationship(r.subject, r.verb_phrase, r.object)
                for r in model.relationships}
    matched = [row for row in gold_doc["relationships"]
               if norm_relationship(row["subject"], row["verb"], row["object"])
               in got_rels]
    steps = bp.stories_operations(doc, model, lex).steps
    ops_ok = len(steps) == 12 and all(s.path == "external" for s in steps)
    _line("cs2 (entities and attributes exact, >=11 of 12 relationships, 12 steps)",
          freq_ok and got_attrs == want_attrs and len(matched) >= 11 and ops_ok,
          f"rels {len(matched)}/12, steps {len(steps)}")


# --- criterion 5: case study 3 ---------------------------------------------

def test_cs3_sequencing(lex):
    ordered = corpus.sequence_sentences(fixtures.raw_text("cs3_witness_ucs"))
    ok = True
    for label in ("1a", "2a", "5a", "8a"):
        anchor = label[:-1]
        idx_main = max(i for i, (_, tag, l) in enumerate(ordered)
                       if tag == "main" and l == anchor)
        idx_alt = min(i for i, (_, tag, l) in enumerate(ordered) if l == label)
        ok = ok and idx_alt == idx_main + 1
    _line("cs3 sequencing (alternates 1a/2a/5a/8a follow their anchors)", ok)


def test_cs3_model(lex):
    _, model, _, _ = _pipeline("cs3_witness_ucs", lex)
    gold_doc = fixtures.gold_tables("cs3_witness_ucs")
    got = {n: e.frequency for n, e in model.entities.items()}
    want = gold_doc["frequencies"]
    names_ok = set(got) == set(want)
    freq_ok = names_ok and all(abs(got[k] - want[k]) <= 1 for k in want)
    got_attrs = {norm_attribute(a.owner, a.name) for a in model.attributes.values()}
    want_attrs = {norm_attribute(a["owner"], a["name"])
                  for a in gold_doc["attributes"]}
    got_rels = {norm_relationship(r.subject, r.verb_phrase, r.object)
                for r in model.relationships}
    matched = [row for row in gold_doc["relationships"]
               if norm_relationship(row["subject"], row["verb"], row["object"])
               in got_rels]
    _line("cs3 (entity names exact and freq +-1, attributes exact, >=7 of 8 relationships)",
          freq_ok and got_attrs == want_attrs and len(matched) >= 7,
          f"freqs {got}, rels {len(matched)}/8")


# --- criterion 6: metrics arithmetic on the published accuracy rows --------

# published accuracy rows: (TP%, FP%, FN%, RCL%, PRC%, F1%), keyed by the
# source table number they were transcribed from
METRIC_TABLES = {
    13: [(87.8, 4.9, 7.3, 92, 95, 94), (88.7, 4.8, 6.5, 93, 95, 94),
         (84.4, 9.4, 6.2, 93, 90, 92), (89.3, 3.6, 7.1, 93, 96, 94)],
    14: [(87.5, 3.1, 9.4, 90, 97, 93), (84.9, 9.4, 5.7, 94, 90, 92),
         (86.4, 9.1, 4.5, 95, 90, 93), (84.2, 10.5, 5.3, 94, 89, 91)],
    15: [(89.3, 3.6, 7.1, 93, 96, 94), (87.2, 5.1, 7.7, 92, 94, 93),
         (83.3, 5.6, 11.1, 88, 94, 91), (81.3, 12.5, 6.2, 93, 87, 90)],
    16: [(87.0, 8.7, 4.3, 95, 91, 93), (88.1, 6.8, 5.1, 95, 93, 94),
         (83.3, 4.2, 12.5, 87, 95, 91), (84.2, 5.3, 10.5, 89, 94, 91)],
    17: [(85.0, 10.0, 5.0, 94, 89, 92), (89.3, 7.1, 3.6, 96, 93, 94),
         (85.0, 5.0, 10.0, 89, 94, 92), (85.7, 4.8, 9.5, 90, 95, 92)],
    18: [(89.3, 7.1, 3.6, 96, 93, 94), (86.0, 9.3, 4.7, 95, 90, 93),
         (85.3, 5.9, 8.8, 91, 94, 92), (84.4, 6.3, 9.3, 90, 93, 92)],
    19: [(87.2, 5.1, 7.7, 92, 94, 93), (84.0, 10.0, 6.0, 93, 89, 91),
         (87.7, 5.3, 7.0, 93, 94, 93), (94.0, 2.0, 4.0, 96, 98, 97)],
    20: [(83.9, 9.7, 6.4, 93, 90, 91), (88.3, 7.0, 4.7, 95, 93, 94),
         (81.4, 11.6, 7.0, 92, 88, 90), (83.8, 10.8, 5.4, 94, 89, 91)],
    21: [(88.0, 8.0, 4.0, 96, 92, 94), (86.1, 8.3, 5.6, 94, 91, 93),
         (83.3, 9.5, 7.2, 92, 90, 91), (79.5, 11.4, 9.1, 90, 88, 89)],
    22: [(85.3, 8.8, 5.9, 94, 91, 92), (83.3, 9.5, 7.2, 92, 90, 91),
         (84.8, 9.1, 6.1, 93, 90, 92), (89.7, 6.9, 3.4, 96, 93, 95)],
    23: [(83.3, 10.0, 6.7, 93, 89, 91), (80.8, 11.5, 7.7, 91, 88, 89),
         (87.2, 7.7, 5.1, 94, 92, 93), (89.5, 7.9, 2.6, 97, 92, 94)],
    24: [(86.8, 7.9, 5.3, 94, 92, 93), (88.5, 7.7, 3.8, 96, 92, 94),
         (86.7, 8.9, 4.4, 95, 91, 93), (88.1, 7.1, 4.8, 95, 93, 94)],
    25: [(88.6, 6.8, 4.6, 95, 93, 94), (86.1, 8.3, 5.6, 94, 91, 93)],
    26: [(90.9, 5.5, 3.6, 96, 94, 95), (85.3, 8.8, 5.9, 94, 91, 92)],
    27: [(82.4, 9.8, 7.8, 91, 89, 90), (79.5, 12.8, 7.7, 91, 86, 89)],
    28: [(85.7, 8.6, 5.7, 92, 88, 90), (81.5, 11.1, 7.4, 92, 88, 90)],
    29: [(81.6, 10.2, 8.2, 91, 89, 90), (83.8, 7.4, 8.8, 90, 92, 91),
         (80.0, 8.9, 11.1, 88, 90, 89), (82.9, 9.8, 7.3, 92, 89, 91)],
    30: [(83.6, 9.1, 7.3, 92, 90, 91), (84.5, 8.5, 7.0, 92, 91, 92),
         (79.4, 11.8, 8.8, 90, 87, 89), (77.4, 12.9, 9.7, 89, 86, 87)],
    31: [(84.8, 9.1, 6.1, 93, 90, 92), (81.3, 10.4, 8.3, 91, 89, 90),
         (80.0, 11.4, 8.6, 90, 89, 92), (85.0, 10.0, 5.0, 94, 89, 92)],
    32: [(82.7, 7.7, 9.6, 90, 91, 91), (79.7, 10.9, 9.4, 89, 88, 89),
         (81.5, 9.9, 8.6, 90, 89, 90), (78.5, 11.4, 10.1, 89, 87, 88)],
    33: [(77.3, 13.6, 9.1, 89, 85, 87), (78.0, 12.0, 10.0, 89, 87, 88),
         (80.0, 11.4, 8.6, 90, 88, 89), (81.0, 8.6, 10.3, 89, 90, 90)],
    34: [(83.9, 7.2, 8.9, 90, 92, 91), (83.3, 10.0, 6.7, 93, 89, 91),
         (83.8, 8.8, 7.4, 92, 91, 91), (84.7, 8.3, 6.9, 92, 91, 92)],
    35: [(80.2, 11.5, 8.3, 91, 88, 89), (80.9, 8.8, 10.3, 89, 90, 89)],
    36: [(78.7, 12.0, 9.3, 89, 87, 88), (79.5, 11.4, 9.1, 90, 88, 89)],
}

# the comparative-study rows print masses only; expected percentages are
# frozen from the exact-fraction oracle (e.g. 92.3/(92.3+4.3) = 95.55 -> 96)
TABLE_37 = [
    (89.5, 3.9, 6.5, 93, 96, 95),
    (92.3, 3.4, 4.3, 96, 96, 96),
    (74.4, 10.9, 14.7, 84, 87, 85),
    (79.0, 5.5, 15.5, 84, 93, 88),
]

# the tool-comparison rows print RCL/PRC without masses; masses are
# reconstructed from the percentages (scale-invariance makes the check exact)
TABLE_38 = [(62, 70), (73, 66), (72, 65), (56, 65), (89, 92.3), (52, 75), (95, 93)]

# rows whose printed percentages are self-inconsistent in the source (print
# errors): one operations row repeats its neighbour's percentages, and one
# relationships row prints an F1 that cannot be the harmonic mean of its own
# printed RCL/PRC
PRINT_ERRORS = {(28, 0), (31, 2)}


def test_metrics_tables_13_to_38(lex):
    checked = 0
    failures = []
    for table, rows in list(METRIC_TABLES.items()) + [(37, TABLE_37)]:
        for i, (tp, fp, fn, rcl, prc, f1) in enumerate(rows):
            row = metrics(tp, fp, fn)
            if (table, i) in PRINT_ERRORS:
                # prove the printed row is self-inconsistent, then skip it
                assert max(abs(row.rcl - rcl), abs(row.prc - prc),
                           abs(row.f1 - f1)) > 1
                continue
            for got, want in ((row.rcl, rcl), (row.prc, prc), (row.f1, f1)):
                checked += 1
                if abs(got - want) > 1:
                    failures.append((table, i, got, want))
    for i, (rcl, prc) in enumerate(TABLE_38):
        # reconstruct masses from the printed percentages with tp = 1
        tp = Fraction(1)
        fp = tp * (100 - Fraction(str(prc))) / Fraction(str(prc))
        fn = tp * (100 - Fraction(str(rcl))) / Fraction(str(rcl))
        row = metrics(tp, fp, fn)
        checked += 2
        if abs(row.rcl - round(rcl)) > 1 or abs(row.prc - round(prc)) > 1:
            failures.append((38, i, (row.rcl, row.prc), (rcl, prc)))
    _line("metrics arithmetic (published rows, +-1; two print-error rows excluded)",
          not failures, f"{checked} comparisons, {len(failures)} failures")


def test_metrics_speed():
    t0 = time.perf_counter()
    for _ in range(200):
        for rows in METRIC_TABLES.values():
            for tp, fp, fn, *_ in rows:
                metrics(tp, fp, fn)
    elapsed = time.perf_counter() - t0
    _line("metrics suite runtime (< 1 s)", elapsed < 1.0, f"{elapsed:.2f} s")


# --- criterion 7: shuffle invariance ---------------------------------------

def test_shuffle_invariance(lex):
    ok = True
    for name in ("cs1_online_order", "cs2_user_stories", "cs3_witness_ucs",
                 "b1_ieee", "b1_general", "b1_descriptive", "b1_paragraph",
                 "b2_ucs1", "b2_ucs2"):
        doc, _ = fixtures.fixture(name)
        base = extract.build_er_model(resolve_pronouns(doc, lex), lex)
        key = _stable_key(base)
        for seed in range(20):
            m = extract.build_er_model(
                resolve_pronouns(corpus.shuffle(doc, seed), lex), lex)
            if _stable_key(m) != key:
                ok = False
    _line("shuffle invariance (20 seeds x 9 fixtures)", ok)


def _stable_key(model):
    return (
        frozenset((n, e.frequency) for n, e in model.entities.items()),
        frozenset(model.attributes),
        frozenset((c.entity, c.value) for c in model.cardinalities),
        frozenset((r.subject, r.verb_phrase, r.object)
                  for r in model.relationships if r.origin != "dataflow"),
    )


# --- criterion 8: merge property --------------------------------------------

def test_merge_property(lex):
    # fixture pairs sharing a domain: the e-store cluster and the two UCSs
    pairs = [("cs1_online_order", "b1_ieee"), ("cs1_online_order", "b1_general"),
             ("b1_ieee", "b1_general"), ("b2_ucs1", "b2_ucs2"),
             ("cs2_user_stories", "cs1_online_order")]
    ok = True
    for a_name, b_name in pairs:
        a, _ = fixtures.fixture(a_name)
        b, _ = fixtures.fixture(b_name)
        ma = extract.build_er_model(resolve_pronouns(a, lex), lex)
        mb = extract.build_er_model(resolve_pronouns(b, lex), lex)
        mm = extract.build_er_model(resolve_pronouns(corpus.merge([a, b]), lex), lex)
        if set(mm.entities) != set(ma.entities) | set(mb.entities):
            ok = False
        for name, ent in mm.entities.items():
            want = (ma.entities[name].frequency if name in ma.entities else 0) \
                 + (mb.entities[name].frequency if name in mb.entities else 0)
            if ent.frequency != want:
                ok = False
    _line("merge property (entity union with summed frequencies)", ok)


# --- criterion 9: per-rule coverage -----------------------------------------

def test_per_rule_coverage():
    import subprocess
    import sys
    from pathlib import Path
    result = subprocess.run(
        [sys.executable, "-m", "pytest", "tests/test_rule_catalog.py",
         "-q", "--no-header", "-p", "no:cacheprovider"],
        capture_output=True, text=True, cwd=Path(__file__).resolve().parents[1])
    ok = result.returncode == 0
    tail = result.stdout.strip().splitlines()[-1] if result.stdout else ""
    _line("per-rule unit coverage (37 catalogued rules, targeted tests)", ok, tail)


# --- criterion 10: BP structure ---------------------------------------------

def test_cs3_bp_structure(lex):
    doc, model, roles, _ = _pipeline("cs3_witness_ucs", lex)
    bpm = bp.extract_bp(doc, model, roles, lex)
    paths = [s.path for s in bpm.steps]
    n_exc = paths.count("exception")
    n_sys = paths.count("system") + paths.count("alternate_system")
    ext_ok = True
    for step in bpm.steps:
        if step.path not in ("external", "alternate_external"):
            continue
        consumed = any(set(step.data_out) & set(later.data_in)
                       for later in bpm.steps if later.step_id > step.step_id
                       and later.path in ("system", "alternate_system"))
        if not (consumed or step.unsourced):
            ext_ok = False
    _line("cs3 BP structure (>=4 exception, >=7 system, externals consumed/flagged)",
          n_exc >= 4 and n_sys >= 7 and ext_ok,
          f"exception={n_exc}, system={n_sys}")
