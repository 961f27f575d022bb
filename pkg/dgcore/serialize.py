"""
Plain-text structure constants for dg algebras and dg modules.

    kind module
    name k
    p 3
    side left
    labels 1
    degree 0
    weight 0
    act 0 0 0 1
    d 1 0 2

Header lines come first; ``mult a b c v`` (algebras), ``act a i j v`` and
``right a i j v`` (modules) and ``d i j v`` list the nonzero entries with
``d i j v`` meaning d(e_j) has coefficient v at e_i. Labels are separated by
``|``. Lines starting with ``#`` are ignored.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from dgcore.dg import DgAlgebra, DgModule
from yoneda.graded import GradedAlgebra
from utils.errors import ConfigError
from utils.helpers import parse_int_row

DgObject = Union[DgAlgebra, DgModule]


def _row(values) -> str:
    return " ".join(str(int(v)) for v in values)


def _entries(tag: str, array: np.ndarray) -> List[str]:
    return [f"{tag} {_row(idx)} {int(array[tuple(idx)])}" for idx in np.argwhere(array)]


def serialize(obj: DgObject) -> str:
    """Deterministic text form; ``deserialize(serialize(x))`` rebuilds x."""
    if isinstance(obj, DgAlgebra):
        lines = [
            "kind algebra",
            f"name {obj.name}",
            f"p {obj.p}",
            f"labels {'|'.join(obj.algebra.labels)}",
            f"degree {_row(obj.degrees)}",
            f"weight {_row(obj.weights)}",
            f"unit {_row(obj.unit)}",
        ]
        lines += _entries("mult", obj.mult % obj.p)
    elif isinstance(obj, DgModule):
        lines = [
            "kind module",
            f"name {obj.name}",
            f"p {obj.p}",
            f"side {obj.side}",
            f"labels {'|'.join(obj.labels)}",
            f"degree {_row(obj.degrees)}",
            f"weight {_row(obj.weights)}",
        ]
        lines += _entries("act", obj.action)
        if obj.right_action is not None:
            lines += _entries("right", obj.right_action)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lines += _entries("d", obj.differential)
    return "\n".join(lines) + "\n"


def _parse(text: str) -> Tuple[Dict[str, Tuple[int, str]], Dict[str, List[Tuple[int, List[int]]]]]:
    header: Dict[str, Tuple[int, str]] = {}
    entries: Dict[str, List[Tuple[int, List[int]]]] = {"mult": [], "act": [], "right": [], "d": []}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key in entries:
            entries[key].append((number, parse_int_row(rest, line=number, key=key)))
        elif key in header:
            raise ConfigError("duplicate header", line=number, key=key)
        else:
            header[key] = (number, rest.strip())
    return header, entries


def _fill(shape: Tuple[int, ...], rows: List[Tuple[int, List[int]]], key: str) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    for number, values in rows:
        if len(values) != len(shape) + 1:
            raise ConfigError(f"expected {len(shape) + 1} integers", line=number, key=key)
        index = tuple(values[:-1])
        if any(i < 0 or i >= n for i, n in zip(index, shape)):
            raise ConfigError(f"index {index} outside {shape}", line=number, key=key)
        out[index] = values[-1]
    return out


def deserialize(text: str, algebra: Optional[DgAlgebra] = None) -> DgObject:
    """Rebuild a dg algebra, or a dg module over ``algebra``.

    Raises:
        ConfigError: malformed text, with the offending line or key.
    """
    header, entries = _parse(text)

    def field(key: str) -> str:
        if key not in header:
            raise ConfigError("missing header", key=key)
        return header[key][1]

    def ints(key: str) -> np.ndarray:
        return np.array(parse_int_row(field(key), line=header[key][0], key=key), dtype=np.int64)

    kind = field("kind")
    p = int(ints("p")[0])
    degrees, weights = ints("degree"), ints("weight")
    n = len(degrees)
    if len(weights) != n:
        raise ConfigError(f"expected {n} weights", line=header["weight"][0], key="weight")
    labels = tuple(field("labels").split("|")) if "labels" in header and field("labels") else ()
    name = header.get("name", (0, ""))[1] or None
    differential = _fill((n, n), entries["d"], "d")
    if kind == "algebra":
        mult = _fill((n, n, n), entries["mult"], "mult")
        A = GradedAlgebra(degrees, mult % p, ints("unit") % p, p, labels, name or "A")
        return DgAlgebra(A, weights, differential % p, name or "A")
    if kind != "module":
        raise ConfigError(f"unknown kind '{kind}'", line=header["kind"][0], key="kind")
    if algebra is None:
        raise ConfigError("a module needs the algebra it is defined over", key="kind")
    if algebra.p != p:
        raise ConfigError(f"module is over F_{p}, algebra over F_{algebra.p}", line=header["p"][0], key="p")
    shape = (algebra.dim, n, n)
    action = _fill(shape, entries["act"], "act")
    right = _fill(shape, entries["right"], "right") if entries["right"] else None
    return DgModule(algebra, field("side"), degrees, weights, action, differential, labels, name or "M", right)
