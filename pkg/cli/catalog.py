"""
Registry of verification checks, keyed by check id.

Each entry carries the labels of the statements it verifies; data/anchors.txt
lists every label the catalog is expected to cover.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

from config.settings import ANCHORS_FILE
from dgcore import checks as dg_checks
from emss import checks as em_checks
from smoothrep import checks as sr_checks
from yoneda import checks as yo_checks


@dataclass(frozen=True)
class CheckEntry:
    id: str
    suite: str
    func: Callable[[Any], Dict[str, Any]]
    anchors: Tuple[str, ...]

    @property
    def description(self) -> str:
        doc = (self.func.__doc__ or "").strip()
        return doc.splitlines()[0] if doc else ""


# suite -> scenario kinds that can build its context
SUITE_KINDS: Dict[str, tuple] = {
    "degree0": ("finite-group",),
    "model": ("crossed-model",),
    "dg": ("dg-engine",),
    "monoidal": ("monoidal",),
    "emss": ("crossed-model", "emss"),
}

_SUITES = {
    "degree0": (sr_checks, {
        "induce": ("sec:duality-functor",),
        "char_action": ("f:g-char",),
        "J_involution": ("prop:anti-inv",),
        "J_support": ("rem:anti-inv-support", "rem:J'-fin"),
        "component_split": ("f:decomp1",),
        "shapiro": ("prop:coho-anti",),
        "rec": ("f:g-char",),
        "Jprime": ("rem:J'-fin",),
        "pairing_well_defined": ("f:refinedpairing",),
        "refined_trace": ("prop:refined-trace",),
        "J_prime_J": ("prop:J'-J",),
        "pairing_trace_composite": ("prop:J'-J-Ext",),
        "fin_image": ("lem:fin",),
        "swap_lemma": ("lem:anti'-swap",),
        "factor_fr": ("lem:factorFR",),
        "tr_cores": ("lem:Tr-cores",),
        "frobenius_bijection": ("lem:factorFR",),
        "hecke": ("prop:anti-inv",),
    }),
    "model": (yo_checks, {
        "E_structure": ("subsec:coho-anti",),
        "anti_involutions": ("prop:coho-anti", "rem:Jchi-anti"),
        "duality_character": ("diag:cores-chi",),
        "degree0_hecke": ("subsec:coho-anti",),
        "pairing": ("f:Y-pairing", "linear"),
        "bimodule_B": ("f:equiv2", "secondfact"),
        "swap_sigma": ("cor:swap-Jchi", "prop:J'-Jchi-d"),
        "delta_modules": ("subsec:Delta",),
        "delta_exact": ("subsec:Delta",),
        "delta_injective": ("subsec:Delta",),
        "delta_E": ("deltaE",),
        "main_duality": ("maindual",),
        "ext_n": ("dgbi", "operad"),
        "factor_swap": ("operad",),
    }),
    "dg": (dg_checks, {
        "dg_axioms": ("sec:product",),
        "cohomology_examples": ("sec:product",),
        "resolution_oracle": ("lem:quasi-iso",),
        "tor_oracle": ("tensor",),
        "ext_oracle": ("internal",),
        "invariance": ("lem:quasi-iso",),
        "identity_class": ("internal",),
    }),
    "monoidal": (dg_checks, {
        "box_free_collapse": ("tensor", "dgbi"),
        "box_ground": ("tensor",),
        "koszul_swap": ("operad",),
        "swap_descent": ("operad",),
        "box_symmetry": ("tensor",),
        "unit_law": ("tensor",),
        "associativity": ("tensor",),
        "adjunction": ("adjoint", "internal"),
        "adjunction_free": ("adjoint",),
    }),
    "emss": (em_checks, {
        "em_convergence": ("EMSS",),
        "tor_vanishing": ("EMSS",),
        "e2_degeneration": ("EMSS",),
        "second_ext_instance": ("EMSS", "dgbi"),
        "graded_oracles": ("EMSS",),
        "cohdelta_collapse": ("cohdelta",),
    }),
}


def _build() -> Dict[str, CheckEntry]:
    catalog: Dict[str, CheckEntry] = {}
    for suite, (module, names) in _SUITES.items():
        for name, anchors in names.items():
            check_id = f"{suite}.{name}"
            catalog[check_id] = CheckEntry(check_id, suite, getattr(module, f"check_{name}"), anchors)
    return catalog


CATALOG: Dict[str, CheckEntry] = _build()


def list_checks() -> List[Dict[str, Any]]:
    return [
        {"id": e.id, "suite": e.suite, "anchors": list(e.anchors), "description": e.description}
        for e in CATALOG.values()
    ]


def checks_for_kind(kind: str) -> List[str]:
    return [e.id for e in CATALOG.values() if kind in SUITE_KINDS[e.suite]]


def anchor_manifest(path: Path = ANCHORS_FILE) -> List[str]:
    """Labels listed in the manifest, in file order; blank lines and # comments are skipped."""
    lines = (line.strip() for line in path.read_text(encoding="utf-8").splitlines())
    return [line for line in lines if line and not line.startswith("#")]
