"""JSON exchange formats for lattices, partitions, and algebras.

Lattices travel as Hasse diagrams: {"size": n, "covers": [[lo, hi], ...],
"labels": [...]}.  The order and the operation tables are always
recomputed from the covers, never trusted from the file.  Partitions are
{"base_size": n, "blocks": [[...], ...]} and algebras are
{"size": n, "ops": [{"name", "arity", "table"}]} with flat row-major
operation tables.
"""

from __future__ import annotations

import json

from .algebras import FiniteAlgebra, make_operation
from .lattice import from_cover_relation
from .partitions import Partition


def lattice_to_dict(lat):
    out = {"size": lat.size, "covers": [list(c) for c in lat.covers()]}
    if lat.labels is not None:
        out["labels"] = list(lat.labels)
    return out


def lattice_to_json(lat):
    return json.dumps(lattice_to_dict(lat), indent=2, sort_keys=True)


def lattice_from_dict(data):
    if not isinstance(data, dict) or "size" not in data or "covers" not in data:
        raise ValueError("lattice JSON needs 'size' and 'covers'")
    size = int(data["size"])
    covers = [(int(lo), int(hi)) for lo, hi in data["covers"]]
    labels = data.get("labels")
    if labels is not None:
        labels = [str(x) for x in labels]
    return from_cover_relation(size, covers, labels=labels)


def lattice_from_json(text):
    return lattice_from_dict(json.loads(text))


def partition_to_dict(part):
    return {"base_size": part.base_size, "blocks": part.blocks()}


def partition_from_dict(data):
    if not isinstance(data, dict) or "base_size" not in data or "blocks" not in data:
        raise ValueError("partition JSON needs 'base_size' and 'blocks'")
    return Partition.from_blocks(int(data["base_size"]), data["blocks"])


def algebra_to_dict(alg):
    ops = []
    for op in alg.operations:
        arr = alg.by_name[op.name]
        ops.append(
            {
                "name": op.name,
                "arity": int(arr.ndim),
                "table": [int(x) for x in arr.ravel()],
            }
        )
    return {"size": alg.size, "ops": ops}


def algebra_from_dict(data):
    if not isinstance(data, dict) or "size" not in data or "ops" not in data:
        raise ValueError("algebra JSON needs 'size' and 'ops'")
    size = int(data["size"])
    ops = [
        make_operation(str(o["name"]), int(o["arity"]), o["table"], size)
        for o in data["ops"]
    ]
    return FiniteAlgebra(size, ops)


def algebra_from_json(text):
    return algebra_from_dict(json.loads(text))


def load_lattice(path):
    with open(path) as fh:
        return lattice_from_json(fh.read())


def load_algebra(path):
    with open(path) as fh:
        return algebra_from_json(fh.read())
