"""Bundled example algebras, shipped as canonical JSON files."""

from __future__ import annotations

import os
from typing import List

from . import fileio

_DIR = os.path.join(os.path.dirname(__file__), "corpus")


def corpus_dir() -> str:
    return _DIR


def corpus_names() -> List[str]:
    return sorted(f[:-5] for f in os.listdir(_DIR) if f.endswith(".json"))


def corpus_path(name: str) -> str:
    path = os.path.join(_DIR, name + ".json")
    if not os.path.exists(path):
        raise KeyError(f"no bundled algebra named {name!r}")
    return path


def load(name: str):
    return fileio.load(corpus_path(name))
