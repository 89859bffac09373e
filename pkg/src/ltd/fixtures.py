"""Bundled case-study data: a diagnosis table, a drug table and a small
human-body ontology connecting the two."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .ontology import Ontology, load_ontology
from .tabular import Table, load_table

DIAGNOSIS = "diagnosis.csv"
DRUG = "drug.csv"
BODY_ONTOLOGY = "body.onto"


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("ltd") / "data" / name))


def diagnosis() -> Table:
    return load_table(fixture_path(DIAGNOSIS).read_bytes(), "Diagnosis")


def drug() -> Table:
    return load_table(fixture_path(DRUG).read_bytes(), "Drug")


def body_ontology() -> Ontology:
    return load_ontology(fixture_path(BODY_ONTOLOGY).read_bytes())
