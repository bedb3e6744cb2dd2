"""Access to the bundled example corpus (automata and error models)."""
from __future__ import annotations

import json
from importlib import resources

from .automata import validate_bia
from .errormodel import validate_error_model

_ROOT = resources.files(__name__.rsplit(".", 1)[0]) / "corpus"


def names() -> list:
    """Sorted stems of every bundled corpus file."""
    return sorted(p.name[:-5] for p in _ROOT.iterdir() if p.name.endswith(".json"))


def raw(name: str) -> dict:
    with (_ROOT / f"{name}.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def load(name: str):
    """A validated corpus object: a BIA, or an ErrorModel for names
    starting with ``model_``."""
    doc = raw(name)
    if name.startswith("model_"):
        return validate_error_model(doc)
    return validate_bia(doc)


def path(name: str) -> str:
    """Filesystem path of a corpus file, for feeding the CLI."""
    return str(_ROOT / f"{name}.json")
