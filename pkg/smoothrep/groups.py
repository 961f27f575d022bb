"""
Finite groups with a designated subgroup, given by multiplication tables.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import ModelError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FinGroupDatum:
    """A finite group G (elements 0..n-1) together with a subgroup U.

    Left cosets gU are ordered with U first, then by least element; the
    representative of U is the identity, every other coset is represented by
    its least element.
    """

    mul: np.ndarray
    inv: np.ndarray
    identity: int
    subgroup: Tuple[int, ...]
    name: str = "G"
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "mul", np.asarray(self.mul, dtype=np.int64))
        object.__setattr__(self, "inv", np.asarray(self.inv, dtype=np.int64))
        object.__setattr__(self, "subgroup", tuple(sorted(int(u) for u in self.subgroup)))

    @classmethod
    def from_table(
        cls,
        mul: Sequence[Sequence[int]],
        subgroup: Sequence[int],
        name: str = "G",
        labels: Optional[Sequence[str]] = None,
    ) -> FinGroupDatum:
        """Derive identity and inverses from a multiplication table."""
        table = np.asarray(mul, dtype=np.int64)
        n = table.shape[0]
        rng = np.arange(n)
        identities = [e for e in range(n) if np.array_equal(table[e], rng)]
        if len(identities) != 1:
            raise ModelError(f"{name}: table has no unique left identity")
        e = identities[0]
        inv = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            hits = np.nonzero(table[g] == e)[0]
            if hits.size != 1:
                raise ModelError(f"{name}: element {g} has no unique inverse", witness=g)
            inv[g] = hits[0]
        return cls(table, inv, e, tuple(subgroup), name, tuple(labels) if labels else None)

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def m(self, *elements: int) -> int:
        """Product of the given elements, left to right."""
        out = self.identity
        for g in elements:
            out = int(self.mul[out, g])
        return out

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def with_subgroup(self, subgroup: Sequence[int], name: Optional[str] = None) -> FinGroupDatum:
        return FinGroupDatum(self.mul, self.inv, self.identity, tuple(subgroup), name or self.name, self.labels)

    def validate(self) -> None:
        """Check group axioms and that U is a subgroup; raise ModelError with a witness."""
        n = self.order
        if self.mul.shape != (n, n) or self.inv.shape != (n,):
            raise ModelError(f"{self.name}: table shapes {self.mul.shape}, {self.inv.shape} are inconsistent")
        if self.mul.min() < 0 or self.mul.max() >= n:
            raise ModelError(f"{self.name}: table entries out of range")
        rng = np.arange(n)
        if not (np.array_equal(self.mul[self.identity], rng) and np.array_equal(self.mul[:, self.identity], rng)):
            raise ModelError(f"{self.name}: {self.identity} is not a two-sided identity")
        if not (np.all(self.mul[rng, self.inv] == self.identity) and np.all(self.mul[self.inv, rng] == self.identity)):
            bad = int(np.nonzero(self.mul[rng, self.inv] != self.identity)[0][0]) if np.any(self.mul[rng, self.inv] != self.identity) else None
            raise ModelError(f"{self.name}: inverse table is wrong", witness=bad)
        # (ab)c against a(bc) on all triples
        left = self.mul[self.mul, :]
        right = self.mul[:, self.mul]
        if not np.array_equal(left, right):
            a, b, c = (int(x) for x in np.argwhere(left != right)[0])
            raise ModelError(f"{self.name}: multiplication is not associative", witness=(a, b, c))
        sub = set(self.subgroup)
        if self.identity not in sub:
            raise ModelError(f"{self.name}: subgroup misses the identity")
        for u, v in itertools.product(self.subgroup, repeat=2):
            if int(self.mul[u, v]) not in sub:
                raise ModelError(f"{self.name}: subgroup not closed", witness=(u, v))
        logger.debug("✅ %s validated (order %d, |U| = %d)", self.name, n, len(sub))

    # Cosets

    @cached_property
    def left_cosets(self) -> List[Tuple[int, ...]]:
        seen: set = set()
        cosets = []
        for g in [self.identity] + [x for x in range(self.order) if x != self.identity]:
            if g in seen:
                continue
            coset = tuple(sorted(int(self.mul[g, u]) for u in self.subgroup))
            seen.update(coset)
            cosets.append(coset)
        head, rest = cosets[0], sorted(cosets[1:])
        return [head] + rest

    @cached_property
    def coset_reps(self) -> List[int]:
        return [self.identity] + [c[0] for c in self.left_cosets[1:]]

    @cached_property
    def coset_index(self) -> np.ndarray:
        """coset_index[g] = i with gU = r_i U."""
        index = np.zeros(self.order, dtype=np.int64)
        for i, coset in enumerate(self.left_cosets):
            index[list(coset)] = i
        return index

    def decompose(self, g: int) -> Tuple[int, int]:
        """Write g = r_i u and return (i, u)."""
        i = int(self.coset_index[g])
        return i, int(self.mul[self.inv[self.coset_reps[i]], g])

    @property
    def index(self) -> int:
        return len(self.left_cosets)

    @cached_property
    def double_cosets(self) -> List[Tuple[int, ...]]:
        seen: set = set()
        out = []
        for g in [self.identity] + [x for x in range(self.order) if x != self.identity]:
            if g in seen:
                continue
            dc = tuple(sorted({self.m(u, g, v) for u in self.subgroup for v in self.subgroup}))
            seen.update(dc)
            out.append(dc)
        return [out[0]] + sorted(out[1:])

    @cached_property
    def double_coset_index(self) -> np.ndarray:
        index = np.zeros(self.order, dtype=np.int64)
        for k, dc in enumerate(self.double_cosets):
            index[list(dc)] = k
        return index

    def double_coset_rep(self, k: int) -> int:
        return self.identity if k == 0 else self.double_cosets[k][0]

    def inverse_double_coset(self, k: int) -> int:
        return int(self.double_coset_index[self.inv[self.double_coset_rep(k)]])

    def conjugate_subgroup(self, h: int) -> Tuple[int, ...]:
        """U_h = U ∩ hUh^{-1}."""
        conj = {self.m(h, u, int(self.inv[h])) for u in self.subgroup}
        return tuple(u for u in self.subgroup if u in conj)

    def quotient_reps(self, big: Sequence[int], small: Sequence[int]) -> List[int]:
        """Representatives of big/small (left cosets), least element first."""
        small_set = list(small)
        seen: set = set()
        reps = []
        for g in sorted(big):
            if g in seen:
                continue
            seen.update(int(self.mul[g, s]) for s in small_set)
            reps.append(g)
        return reps


# Builtin groups


def _from_elements(elements: Sequence, op, subgroup_pred, name: str, labels=None) -> FinGroupDatum:
    index: Dict = {e: i for i, e in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    sub = [i for i, e in enumerate(elements) if subgroup_pred(e)]
    return FinGroupDatum.from_table(table, sub, name, labels)


def symmetric_group_3(subgroup: str = "transposition") -> FinGroupDatum:
    """S_3 in itertools.permutations order with (στ)(x) = σ(τ(x)); U = ⟨(12)⟩ by default."""
    perms = list(itertools.permutations(range(3)))

    def compose(s, t):
        return tuple(s[t[x]] for x in range(3))

    allowed = {
        "transposition": {(0, 1, 2), (1, 0, 2)},
        "alternating": {(0, 1, 2), (1, 2, 0), (2, 0, 1)},
        "trivial": {(0, 1, 2)},
        "whole": set(perms),
    }[subgroup]
    labels = ["".join(str(x + 1) for x in perm) for perm in perms]
    return _from_elements(perms, compose, lambda e: e in allowed, f"S3/{subgroup}", labels)


def cyclic_group(n: int, subgroup_order: Optional[int] = None) -> FinGroupDatum:
    """Z/n with the subgroup of the given order (default: the whole group)."""
    k = n if subgroup_order is None else subgroup_order
    if n % k:
        raise ModelError(f"no subgroup of order {k} in Z/{n}")
    step = n // k
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n, lambda e: e % step == 0, f"C{n}/C{k}")


def dihedral_group(n: int) -> FinGroupDatum:
    """Symmetries of the n-gon, pairs (r, s) meaning rot^r ref^s; U = ⟨reflection⟩."""
    elements = [(r, s) for s in range(2) for r in range(n)]

    def op(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (-r2 if s1 else r2)) % n, (s1 + s2) % 2)

    return _from_elements(elements, op, lambda e: e[0] == 0, f"D{n}/ref")


def semidirect_group(p: int, d: int, quotient: FinGroupDatum, actions: Dict[int, np.ndarray]) -> FinGroupDatum:
    """(Z/p)^d ⋊ C with (u, c)(u', c') = (u + c·u', cc'); U = (Z/p)^d.

    ``actions[c]`` is the d x d matrix of c on (Z/p)^d.
    """
    vectors = list(itertools.product(range(p), repeat=d))
    elements = [(u, c) for c in range(quotient.order) for u in vectors]
    mats = {c: np.asarray(a, dtype=np.int64) % p for c, a in actions.items()}

    def op(a, b):
        u, c = a
        v, c2 = b
        moved = (mats[c] @ np.asarray(v, dtype=np.int64)) % p
        return (tuple(int((x + y) % p) for x, y in zip(u, moved)), int(quotient.mul[c, c2]))

    return _from_elements(
        elements, op, lambda e: e[1] == quotient.identity, f"(Z/{p})^{d}x{quotient.name}",
        [f"{''.join(map(str, u))}|{c}" for u, c in elements],
    )


def builtin_pairs() -> Dict[str, FinGroupDatum]:
    """Group pairs shipped with the workbench, keyed by scenario name."""
    c2 = cyclic_group(2)
    return {
        "s3": symmetric_group_3(),
        "c4c2": cyclic_group(4, 2),
        "d4": dihedral_group(4),
        "z3c2": semidirect_group(3, 1, c2, {0: np.array([[1]]), 1: np.array([[2]])}),
        "trivial-quotient": symmetric_group_3("whole"),
    }
