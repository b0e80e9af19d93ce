"""Shipped data: the finite spaces, the λ-term corpus, conversion proofs and
the lattice step paths."""
from __future__ import annotations

import json
import random
from importlib import resources
from pathlib import Path

from .order import Poset, alexandrov_space, certify_cpo, load_poset, scott_opens

SPACES = ("nplus2", "lattice_L", "chain2", "point", "pseudo_circle", "pseudo_circle_bot")
CPOS = ("nplus2", "lattice_L", "chain2", "point", "pseudo_circle_bot")


def data_path(name):
    if not name.endswith(".json"):
        name += ".json"
    return resources.files("dinfty") / "data" / name


def load_json(name):
    with data_path(name).open() as fh:
        return json.load(fh)


def as_space(obj):
    """Poset or Cpo → ScottSpace (up-set topology when there is no ⊥)."""
    if hasattr(obj, "opens"):
        return obj
    if hasattr(obj, "bottom"):
        return scott_opens(obj)
    return alexandrov_space(obj)


def load_space(name_or_path):
    """A shipped space by name, or any poset JSON file by path."""
    path = Path(name_or_path)
    if not path.is_file():
        path = data_path(str(name_or_path))
    return as_space(load_poset(path))


def lambda_corpus():
    return load_json("lambda_corpus")


def proof_corpus():
    """(tower config, environment labels, {name: ConversionProof})."""
    from .lam import proof_from_json

    data = load_json("proofs")
    proofs = {name: proof_from_json(p) for name, p in data["proofs"].items()}
    return data["tower"], data["environment"], proofs


def lattice_paths(space=None):
    from .steppath import path_from_json

    data = load_json("lattice_paths")
    space = space or load_space(data["space"].removesuffix(".json"))
    return {name: path_from_json(p, space) for name, p in data["paths"].items()}


def random_poset_with_bottom(rng, max_size=7):
    """A random order on ⊥ plus up to max_size-1 points, ⊥ below everything.

    The order is the transitive closure of random edges i → j with i < j.
    """
    n = rng.randint(1, max_size - 1)
    labels = ["bot"] + [f"x{i}" for i in range(n)]
    reach = [{i} for i in range(n)]
    for j in range(n):
        for i in range(j):
            if rng.random() < 0.35:
                reach[i].add(j)
    for i in range(n - 1, -1, -1):
        for j in sorted(reach[i]):
            reach[i] |= reach[j]
    pairs = [("bot", x) for x in labels] + [(labels[i + 1], labels[j + 1]) for i in range(n) for j in reach[i]]
    return certify_cpo(Poset(labels, pairs), "bot")


def random_posets_with_bottom(count=5, max_size=7, seed=0):
    rng = random.Random(seed)
    return [random_poset_with_bottom(rng, max_size) for _ in range(count)]
