"""Degree-0 induced representations, involutions, pairings and Hecke algebras of finite group pairs."""
from smoothrep.groups import FinGroupDatum, builtin_pairs, cyclic_group, dihedral_group, semidirect_group, symmetric_group_3
from smoothrep.hecke import HeckeAlgebra, anti_automorphism_J0, endomorphism, hecke
from smoothrep.involutions import (
    component_split,
    involution_J,
    involution_Jprime,
    rec_inv,
    rec_map,
    shapiro,
    shapiro_inverse,
)
from smoothrep.pairing import frobenius_Fr, refined_pairing, trace_Tr
from smoothrep.reps import EquivariantMap, InducedRep, Rep, char_fn, induce, trivial_rep

__all__ = [
    "FinGroupDatum", "builtin_pairs", "cyclic_group", "dihedral_group", "semidirect_group", "symmetric_group_3",
    "HeckeAlgebra", "hecke", "anti_automorphism_J0", "endomorphism",
    "component_split", "involution_J", "involution_Jprime", "rec_map", "rec_inv", "shapiro", "shapiro_inverse",
    "frobenius_Fr", "refined_pairing", "trace_Tr",
    "EquivariantMap", "InducedRep", "Rep", "char_fn", "induce", "trivial_rep",
]
