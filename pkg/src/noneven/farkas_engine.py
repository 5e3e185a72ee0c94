"""Directed circuit / directed cocircuit certificates without enumeration.

An element ``e`` lies in a directed circuit iff ``-x_e`` is a nonnegative
combination of the other columns.  Circuits are extracted by greedily
discarding elements while that stays true; cocircuits are circuits of the
dual representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .exact_linalg import conical_feasibility, rank
from .oriented_matroid import OrientedMatroid, delete


class PreconditionError(ValueError):
    pass


class CertificateError(AssertionError):
    """A computed certificate failed re-verification."""


@dataclass(frozen=True)
class FarkasCertificate:
    element: Hashable
    kind: str  # "circuit" | "cocircuit"
    elements: frozenset

    def __post_init__(self):
        if self.kind not in ("circuit", "cocircuit"):
            raise ValueError(self.kind)
        if self.element not in self.elements:
            raise ValueError("certificate does not contain the queried element")

    @property
    def is_circuit(self) -> bool:
        return self.kind == "circuit"


def _feasible_within(m: OrientedMatroid, e_idx: int, allowed: list[int]) -> bool:
    x_e = m.rep.column(e_idx)
    if not any(x_e):
        return True
    cols = [m.rep.column(j) for j in allowed]
    return conical_feasibility(cols, [-v for v in x_e]) is not None


def in_directed_circuit(m: OrientedMatroid, e) -> bool:
    j = m.index(e)
    return _feasible_within(m, j, [k for k in range(len(m)) if k != j])


def is_directed_circuit(m: OrientedMatroid, z) -> bool:
    """Is ``z`` minimally dependent with an all-positive dependency?"""
    idx = sorted(m.index(e) for e in z)
    if not idx:
        return False
    sub = m.rep.select_columns(idx)
    if rank(sub) != len(idx) - 1:
        return False
    ones = [1] * len(idx)
    if any(sub.times_vector(ones)):
        return False
    # with rank |Z|-1 the kernel is the line through the all-ones vector,
    # which has full support, so Z is minimally dependent
    return True


def directed_circuit_through(m: OrientedMatroid, e) -> frozenset:
    """Greedy removal: drop each ``f`` (increasing order) if ``e`` survives in a directed circuit.

    A single forward scan is enough: once ``f`` cannot be dropped from ``Z``
    it cannot be dropped from any subset of ``Z`` either.
    """
    j = m.index(e)
    if not in_directed_circuit(m, e):
        raise PreconditionError(f"{e!r} is not in a directed circuit")
    z = [k for k in range(len(m)) if k != j]
    for f in list(z):
        trial = [k for k in z if k != f]
        if _feasible_within(m, j, trial):
            z = trial
    out = frozenset(m.elements[k] for k in [j] + z)
    if not is_directed_circuit(m, out):
        raise CertificateError(f"greedy output {sorted(map(str, out))} is not a directed circuit")
    return out


def farkas_dichotomy(m: OrientedMatroid, e) -> FarkasCertificate:
    if in_directed_circuit(m, e):
        return FarkasCertificate(e, "circuit", directed_circuit_through(m, e))
    return FarkasCertificate(e, "cocircuit", directed_circuit_through(m.dual(), e))


def totally_cyclic_part(m: OrientedMatroid) -> tuple[OrientedMatroid, dict]:
    """Delete every element not on a directed circuit.

    Returns the minor and a map from its elements to host labels (identity,
    since labels survive deletion).
    """
    drop = [e for e in m.elements if not in_directed_circuit(m, e)]
    tc = delete(m, drop)
    return tc, {e: e for e in tc.elements}


def is_totally_cyclic(m: OrientedMatroid) -> bool:
    return all(in_directed_circuit(m, e) for e in m.elements)


def verify_certificate(m: OrientedMatroid, cert: FarkasCertificate) -> bool:
    host = m if cert.is_circuit else m.dual()
    return cert.element in cert.elements and is_directed_circuit(host, cert.elements)
