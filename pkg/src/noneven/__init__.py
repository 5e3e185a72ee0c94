"""Orientations of regular matroids: Farkas certificates, directed circuit
bases, non-evenness and odd dijoins."""

from __future__ import annotations

from .digraph import Digraph, Edge, bond_matroid, graphic_matroid, odd_dijoin, parse_digraph
from .evenness import (
    decide_noneven_via_even_oracle,
    detect_even_circuit_via_noneven_oracle,
    directed_basis_and_cover,
    find_odd_directed_circuit,
    non_even_bruteforce,
)
from .exact_linalg import TUMatrix, check_tu, parse_tu_matrix
from .farkas_engine import FarkasCertificate, farkas_dichotomy, totally_cyclic_part
from .oriented_matroid import OrientedMatroid, SignedSet, contract, delete, dual, gb_minors, reorient
from .r10_verifier import has_forbidden_cographic_gbminor, verify_conjecture_on_r10

__all__ = [
    "Digraph", "Edge", "FarkasCertificate", "OrientedMatroid", "SignedSet", "TUMatrix",
    "bond_matroid", "check_tu", "contract", "decide_noneven_via_even_oracle", "delete",
    "detect_even_circuit_via_noneven_oracle", "directed_basis_and_cover", "dual",
    "farkas_dichotomy", "find_odd_directed_circuit", "gb_minors", "graphic_matroid",
    "has_forbidden_cographic_gbminor", "non_even_bruteforce", "odd_dijoin", "parse_digraph",
    "parse_tu_matrix", "reorient", "totally_cyclic_part", "verify_conjecture_on_r10",
]
