"""Checked-in dependency parses and gold annotations for the case studies."""

from __future__ import annotations

import json
from importlib import resources

from . import depgraph
from .corpus import RawDocument
from .evaluate import GoldAnnotation, load_gold

FIXTURE_NAMES = (
    "cs1_online_order", "cs2_user_stories", "cs3_witness_ucs",
    "b1_ieee", "b1_general", "b1_descriptive", "b1_paragraph",
    "b2_ucs1", "b2_ucs2",
)

_GOLDEN = {"cs1_online_order", "cs2_user_stories", "cs3_witness_ucs"}


class UnknownFixture(KeyError):
    pass


def _data_path(filename: str):
    return resources.files("remod").joinpath("data", filename)


def fixture(name: str):
    """(ParsedDocument, GoldAnnotation) for a fixture; gold is empty for the
    appendix samples that have no published reference tables."""
    if name not in FIXTURE_NAMES:
        raise UnknownFixture(name)
    with resources.as_file(_data_path(f"{name}.deps")) as path:
        doc = depgraph.load_native(path)
    if name in _GOLDEN:
        with resources.as_file(_data_path(f"{name}.gold.json")) as path:
            gold = load_gold(path)
    else:
        gold = GoldAnnotation()
    return doc, gold


def gold_tables(name: str) -> dict:
    """The raw gold document (with frequencies, cardinality ends, strict list)."""
    if name not in _GOLDEN:
        raise UnknownFixture(name)
    with resources.as_file(_data_path(f"{name}.gold.json")) as path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)


def raw_text(name: str) -> RawDocument:
    if name not in FIXTURE_NAMES:
        raise UnknownFixture(name)
    with resources.as_file(_data_path(f"{name}.txt")) as path:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    return RawDocument(source_id=name, lines=lines)


def deps_path(name: str):
    """Filesystem path of a fixture's dependency file (for CLI tests)."""
    if name not in FIXTURE_NAMES:
        raise UnknownFixture(name)
    return _data_path(f"{name}.deps")
