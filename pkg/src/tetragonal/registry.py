"""Built-in registry of worked examples (``data/examples.json``)."""

from __future__ import annotations

import json
from importlib import resources

from .equivalence import ProjectiveMatrix, RationalMap
from .laurent import parse_laurent


def load_registry(path=None) -> dict:
    if path is None:
        text = resources.files("tetragonal").joinpath("data/examples.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    entries = data["examples"] if isinstance(data, dict) and "examples" in data else data
    if isinstance(entries, dict):
        entries = [entries]
    return {e["name"]: e for e in entries}


def get_example(name: str, path=None) -> dict:
    reg = load_registry(path)
    if name not in reg:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(sorted(reg))}")
    return reg[name]


def build_maps(entry):
    maps = entry["maps"]
    return RationalMap.parse(*maps["phi"]), RationalMap.parse(*maps["psi"])


def build_matrix(entry) -> ProjectiveMatrix:
    m = entry["matrix"]
    return ProjectiveMatrix(m["entries"], m["rows"], m["cols"])


def polynomials(entry):
    f = parse_laurent(entry["f"])
    fp = parse_laurent(entry["f_prime"]) if entry.get("f_prime") else None
    return f, fp
