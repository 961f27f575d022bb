"""
Helper functions for the workbench: text-format parsers and result dicts.
"""
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from utils.errors import ConfigError


def check_result(
    success: bool,
    checked: int,
    witness: Optional[Dict[str, Any]] = None,
    details: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Uniform result of a verification routine."""
    result: Dict[str, Any] = {"success": bool(success), "checked": int(checked)}
    if witness is not None:
        result["witness"] = witness
    if details:
        result["details"] = details
    return result


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value


def mismatch(at: Any, lhs, rhs) -> Dict[str, Any]:
    """Witness for a failed equality: where, and both sides' values."""
    return {"at": _plain(at), "lhs": _plain(np.asarray(lhs)), "rhs": _plain(np.asarray(rhs))}


def parse_int_row(text: str, line: Optional[int] = None, key: Optional[str] = None) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"expected integers, got '{text.strip()}'", line=line, key=key)


def parse_matrix(text: str, key: Optional[str] = None) -> List[List[int]]:
    """Rows separated by ';' or newlines, entries by spaces or commas."""
    rows = [r for r in re.split(r"[;\n]", text) if r.strip()]
    matrix = [parse_int_row(r, key=key) for r in rows]
    if matrix and len({len(r) for r in matrix}) != 1:
        raise ConfigError("rows of unequal length", key=key)
    return matrix


def parse_window(text: str) -> Optional[Tuple[int, int]]:
    """Parse 'lo:hi' into a pair with lo <= hi."""
    match = re.match(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*$", text or "")
    if not match:
        return None
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        return None
    return lo, hi


def parse_group_table(source: Union[str, Path]) -> Dict[str, Any]:
    """Parse the plain-text group format.

    Line 1 ``order n``, then n rows of the multiplication table, one row of
    inverses, then ``U:`` followed by the sorted subgroup members.

    Returns:
        dict with keys ``mul``, ``inv``, ``subgroup``
    """
    text = Path(source).read_text() if isinstance(source, Path) else source
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ConfigError("empty group table", line=1)
    first_no, first = lines[0]
    match = re.match(r"^order\s+(\d+)$", first)
    if not match:
        raise ConfigError(f"expected 'order n', got '{first}'", line=first_no)
    n = int(match.group(1))
    if n < 1:
        raise ConfigError("order must be positive", line=first_no)
    if len(lines) < n + 3:
        raise ConfigError(f"expected {n} table rows, an inverse row and a 'U:' row", line=lines[-1][0])

    mul = []
    for line_no, row in lines[1:n + 1]:
        values = parse_int_row(row, line=line_no)
        if len(values) != n or any(v < 0 or v >= n for v in values):
            raise ConfigError(f"table row must hold {n} indices in [0, {n})", line=line_no)
        mul.append(values)

    inv_no, inv_row = lines[n + 1]
    inv = parse_int_row(inv_row, line=inv_no)
    if len(inv) != n:
        raise ConfigError(f"inverse row must hold {n} indices", line=inv_no)

    u_no, u_row = lines[n + 2]
    if not u_row.startswith("U:"):
        raise ConfigError(f"expected 'U:' row, got '{u_row}'", line=u_no)
    subgroup = parse_int_row(u_row[2:], line=u_no)
    if subgroup != sorted(set(subgroup)) or any(u < 0 or u >= n for u in subgroup):
        raise ConfigError("subgroup members must be sorted distinct indices", line=u_no)
    return {"mul": mul, "inv": inv, "subgroup": subgroup}


def format_group_table(mul: Sequence[Sequence[int]], inv: Sequence[int], subgroup: Sequence[int]) -> str:
    lines = [f"order {len(mul)}"]
    lines += [" ".join(str(int(x)) for x in row) for row in mul]
    lines.append(" ".join(str(int(x)) for x in inv))
    lines.append("U: " + " ".join(str(int(u)) for u in subgroup))
    return "\n".join(lines) + "\n"


def parse_model_config(entries: Dict[str, str]) -> Dict[str, Any]:
    """Parse crossed-model keys ``p``, ``d``, ``C.order``, ``C.mul``, ``C.action.<e>``."""
    try:
        p = int(entries["p"])
        d = int(entries["d"])
        order = int(entries.get("C.order", "1"))
    except KeyError as exc:
        raise ConfigError("missing required key", key=str(exc.args[0]))
    except ValueError as exc:
        raise ConfigError(f"not an integer: {exc}", key="p/d/C.order")
    mul = parse_matrix(entries["C.mul"], key="C.mul") if "C.mul" in entries else [[0]]
    if len(mul) != order or any(len(r) != order for r in mul):
        raise ConfigError(f"C.mul must be {order}x{order}", key="C.mul")
    actions: Dict[int, List[List[int]]] = {}
    for key, value in entries.items():
        if key.startswith("C.action."):
            try:
                element = int(key[len("C.action."):])
            except ValueError:
                raise ConfigError("element index must be an integer", key=key)
            matrix = parse_matrix(value, key=key)
            if len(matrix) != d or any(len(r) != d for r in matrix):
                raise ConfigError(f"action matrix must be {d}x{d}", key=key)
            actions[element] = matrix
    missing = [c for c in range(order) if c not in actions]
    if missing and order > 1:
        raise ConfigError(f"no action given for C elements {missing}", key="C.action")
    for c in missing:
        actions[c] = np.eye(d, dtype=int).tolist()
    return {"p": p, "d": d, "order": order, "mul": mul, "actions": actions}
