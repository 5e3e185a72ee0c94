"""Directed circuit bases, parity covers and (non-)evenness.

A totally cyclic regular oriented matroid has a circuit basis made of
directed circuits, and a set ``J`` meeting each basis circuit oddly.  The
matroid is non-even exactly when that ``J`` meets *every* directed circuit
oddly, which is what the two oracle reductions below exploit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .exact_linalg import TUMatrix, check_tu, gf2_in_span_bits, gf2_solve_bits
from .farkas_engine import (
    PreconditionError,
    directed_circuit_through,
    is_totally_cyclic,
    totally_cyclic_part,
)
from .oriented_matroid import OrientedMatroid, contract, delete

Oracle = Callable[[OrientedMatroid], bool]


@dataclass(frozen=True)
class DirectedCircuitBasis:
    circuits: tuple[frozenset, ...]
    host: OrientedMatroid = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.circuits)

    def __iter__(self):
        return iter(self.circuits)


@dataclass(frozen=True)
class ParityCover:
    elements: frozenset

    def is_odd_on(self, sets: Iterable[frozenset]) -> bool:
        return all(len(self.elements & s) % 2 == 1 for s in sets)


def _lift_is_circuit(m: OrientedMatroid, c: frozenset) -> bool:
    """``A 1_C = 0``: ``C`` itself is a directed circuit of ``m``."""
    ones = [1 if e in c else 0 for e in m.elements]
    return not any(m.rep.times_vector(ones))


def _basis_and_cover(m: OrientedMatroid) -> tuple[list[frozenset], frozenset]:
    n = len(m)
    if n == 0:
        return [], frozenset()
    e = m.elements[0]
    if n == 1:
        if not m.is_loop(e):
            raise PreconditionError("matroid is not totally cyclic")
        return [frozenset([e])], frozenset([e])
    rest = delete(m, [e])
    if is_totally_cyclic(rest):
        c_e = directed_circuit_through(m, e)
        basis, j = _basis_and_cover(rest)
        basis.append(c_e)
        if len(j & c_e) % 2 == 0:
            j = j | {e}
        return basis, j
    basis, j = _basis_and_cover(contract(m, [e]))
    lifted = [c if _lift_is_circuit(m, c) else c | {e} for c in basis]
    return lifted, j


def directed_basis_and_cover(m: OrientedMatroid) -> tuple[DirectedCircuitBasis, ParityCover]:
    """Directed circuit basis of a totally cyclic ``m`` plus a parity cover.

    Recurses on the least element ``e``: when ``m - e`` is still totally
    cyclic, a directed circuit through ``e`` joins the basis of ``m - e``;
    otherwise the basis of ``m / e`` is lifted by adding ``e`` back where
    needed.
    """
    if not is_totally_cyclic(m):
        raise PreconditionError("matroid is not totally cyclic")
    basis, j = _basis_and_cover(m)
    return DirectedCircuitBasis(tuple(basis), m), ParityCover(frozenset(j))


def is_coindependent(m: OrientedMatroid, a: Iterable) -> bool:
    a = set(a)
    return m.rank_of([e for e in m.elements if e not in a]) == m.rank


def basis_with_marked_set(m: OrientedMatroid, a: Iterable) -> DirectedCircuitBasis:
    """Directed basis in which each element of ``a`` lies in exactly one member."""
    a = [e for e in m.elements if e in set(a)]
    if not is_coindependent(m, a):
        raise PreconditionError("marked set is not coindependent")
    rest = delete(m, a)
    if not is_totally_cyclic(rest):
        raise PreconditionError("deleting the marked set leaves a matroid that is not totally cyclic")
    marked = []
    for x in a:
        sub = delete(m, [y for y in a if y != x])
        marked.append(directed_circuit_through(sub, x))
    base, _ = _basis_and_cover(rest)
    return DirectedCircuitBasis(tuple(marked + base), m)


# ---------------------------------------------------------------------------
# brute force


def directed_circuit_masks(m: OrientedMatroid) -> list[int]:
    return [p | q for p, q in m.circuit_bits() if not p or not q]


def non_even_bruteforce(m: OrientedMatroid) -> Optional[ParityCover]:
    """A set meeting every directed circuit oddly, found by solving over GF(2)."""
    dirs = directed_circuit_masks(m)
    x = gf2_solve_bits(dirs, [1] * len(dirs))
    if x is None:
        return None
    return ParityCover(frozenset(m.labels(x)))


def has_even_directed_circuit_bruteforce(m: OrientedMatroid) -> bool:
    return any(bin(s).count("1") % 2 == 0 for s in directed_circuit_masks(m))


def has_odd_directed_circuit_bruteforce(m: OrientedMatroid) -> bool:
    return any(bin(s).count("1") % 2 == 1 for s in directed_circuit_masks(m))


def noneven_oracle(m: OrientedMatroid) -> bool:
    return non_even_bruteforce(m) is not None


def even_circuit_oracle(m: OrientedMatroid) -> bool:
    return has_even_directed_circuit_bruteforce(m)


@dataclass(frozen=True)
class EquivalenceReport:
    non_even: bool
    no_odd_empty_sum: bool
    odd_expansions: bool
    cover_odd_on_all: bool

    @property
    def agree(self) -> bool:
        return len({self.non_even, self.no_odd_empty_sum, self.odd_expansions, self.cover_odd_on_all}) == 1


def equivalence_suite(m: OrientedMatroid) -> EquivalenceReport:
    """Evaluate the four equivalent forms of non-evenness independently."""
    if not is_totally_cyclic(m):
        raise PreconditionError("matroid is not totally cyclic")
    n = len(m)
    dirs = directed_circuit_masks(m)

    non_even = non_even_bruteforce(m) is not None

    # an odd number of directed circuits summing to zero exists iff
    # (0 | 1) lies in the span of the rows (1_C | 1)
    tag = 1 << n
    no_odd_empty_sum = not gf2_in_span_bits([c | tag for c in dirs], tag)

    basis, cover = directed_basis_and_cover(m)
    bmasks = [m.mask(c) for c in basis]
    odd_expansions = all(_expansion_weight(bmasks, c, n) % 2 == 1 for c in dirs)

    jmask = m.mask(cover.elements)
    cover_odd = all(bin(c & jmask).count("1") % 2 == 1 for c in dirs)
    return EquivalenceReport(non_even, no_odd_empty_sum, odd_expansions, cover_odd)


def _expansion_weight(basis: list[int], target: int, n: int) -> int:
    """Number of basis members in the (unique) GF(2) expansion of ``target``."""
    # solve sum_i x_i basis_i = target coordinate-wise: one equation per element
    k = len(basis)
    rows = []
    rhs = []
    for e in range(n):
        rows.append(sum(1 << i for i in range(k) if basis[i] >> e & 1))
        rhs.append(target >> e & 1)
    x = gf2_solve_bits(rows, rhs)
    if x is None:
        raise AssertionError("circuit outside the span of the basis")
    return bin(x).count("1")


def find_odd_directed_circuit(m: OrientedMatroid) -> Optional[frozenset]:
    """An odd directed circuit, or ``None`` when every circuit of TC(m) is even."""
    tc, _ = totally_cyclic_part(m)
    if len(tc) == 0:
        return None
    basis, _ = directed_basis_and_cover(tc)
    for c in basis:
        if len(c) % 2 == 1:
            return c
    return None


# ---------------------------------------------------------------------------
# reductions between the two decision problems


def detect_even_circuit_via_noneven_oracle(m: OrientedMatroid, oracle: Oracle) -> bool:
    """Does ``m`` have an even directed circuit, given a non-evenness oracle?"""
    tc, _ = totally_cyclic_part(m)
    if len(tc) == 0:
        return False
    basis, _ = directed_basis_and_cover(tc)
    if any(len(c) % 2 == 0 for c in basis):
        return True
    # all basis circuits odd, so J = E(TC) covers the basis; TC has no even
    # directed circuit iff it is non-even
    return not oracle(tc)


def series_duplicate(m: OrientedMatroid, z: Iterable) -> tuple[OrientedMatroid, dict]:
    """Put a series copy next to every element of ``z``.

    Each copy gets a new column and a new row ``x_e - x_copy = 0``, so every
    circuit through ``e`` also runs through its copy with the same sign.
    Returns the new matroid and a map from copy label to original label.
    """
    z = [e for e in m.elements if e in set(z)]
    rows = [list(r) for r in m.rep.data]
    ncols = len(m)
    labels = list(m.elements)
    copies = {}
    for e in z:
        j = m.index(e)
        for r in rows:
            r.append(0)
        new = [0] * (ncols + 1)
        new[j] = 1
        new[ncols] = -1
        rows.append(new)
        copy = _copy_label(e, labels)
        labels.append(copy)
        copies[copy] = e
        ncols += 1
    rep = TUMatrix.from_rows(rows, ncols)
    if ncols <= 10 and check_tu(rep, 4).refuted:
        raise AssertionError("series extension broke total unimodularity")
    return OrientedMatroid(labels, rep, bound=m.bound), copies


def _copy_label(e, taken) -> str:
    base = f"{e}'"
    label = base
    while label in taken:
        label += "'"
    return label


def decide_noneven_via_even_oracle(m: OrientedMatroid, oracle: Oracle) -> bool:
    """Is ``m`` non-even, given an even-directed-circuit oracle?"""
    tc, _ = totally_cyclic_part(m)
    if len(tc) == 0:
        return True
    _, cover = directed_basis_and_cover(tc)
    outside = [e for e in tc.elements if e not in cover.elements]
    doubled, _ = series_duplicate(tc, outside)
    return not oracle(doubled)
