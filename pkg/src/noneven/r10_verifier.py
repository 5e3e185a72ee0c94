"""Sweep every orientation of R10 for the forbidden-minor / non-evenness claim.

For each of the 2^10 column sign patterns of the reference matrix we ask
two questions by brute force: does the orientation have a GB-minor
isomorphic to M*(K_{m,n}) with m, n >= 2 and m + n odd, and is it
non-even.  Every orientation free of such minors must be non-even.
"""

from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .digraph import bond_matroid, build_one_direction
from .exact_linalg import TUMatrix, gf2_solve_bits
from .oriented_matroid import (
    Bits,
    MinorExplorer,
    OrientedMatroid,
    canonical_bits,
    family_isomorphic,
    reorient,
)

R10_ROWS = (
    (1, 0, 0, 0, 0, -1, 1, 0, 0, 1),
    (0, 1, 0, 0, 0, 1, -1, 1, 0, 0),
    (0, 0, 1, 0, 0, 0, 1, -1, 1, 0),
    (0, 0, 0, 1, 0, 0, 0, 1, -1, 1),
    (0, 0, 0, 0, 1, 1, 0, 0, 1, -1),
)


def r10_reference() -> OrientedMatroid:
    return OrientedMatroid([str(i) for i in range(1, 11)], TUMatrix.from_rows(R10_ROWS))


@dataclass(frozen=True)
class _Target:
    m: int
    n: int
    size: int
    rank: int
    circuits: tuple[Bits, ...]


@functools.lru_cache(maxsize=None)
def forbidden_targets(max_size: int) -> tuple[_Target, ...]:
    """M*(K_{m,n}) for 2 <= m <= n, m + n odd, with at most ``max_size`` elements.

    K_{n,m} is K_{m,n} reversed, which negates every signed circuit, so
    only ``m <= n`` is needed up to isomorphism.
    """
    out = []
    for m in range(2, max_size + 1):
        for n in range(m + 1, max_size + 1, 2):
            if m * n > max_size:
                break
            b = bond_matroid(build_one_direction(m, n), bound=max(16, m * n))
            out.append(_Target(m, n, m * n, b.rank, tuple(b.circuit_bits())))
    return tuple(out)


def find_forbidden_cographic_gbminor(
    n: int, circuit_bits, cocircuit_bits, rank: int
) -> Optional[tuple[int, int, int, int]]:
    """First forbidden GB-minor found, as (deleted mask, contracted mask, m, n).

    Every deletion or contraction lowers exactly one of rank and nullity by
    one, so a branch is cut as soon as no target fits below it.
    """
    targets = forbidden_targets(n)
    if not targets:
        return None
    ex = MinorExplorer(n, circuit_bits, cocircuit_bits, rank)
    min_size = min(t.size for t in targets)
    found: list = []

    def accept(d, c, r, size):
        null = size - r
        fits = False
        for t in targets:
            if t.rank <= r and t.size - t.rank <= null:
                fits = True
                if t.size == size and t.rank == r:
                    fam = ex.minor_circuits(d, c)
                    if _isomorphic_on_support(n, d | c, fam, t):
                        found.append((d, c, t.m, t.n))
                        return "stop"
        return fits

    ex.explore(accept, min_size=min_size)
    return found[0] if found else None


def _isomorphic_on_support(n: int, removed: int, fam, t: _Target) -> bool:
    # compress the surviving positions to 0..size-1
    alive = [i for i in range(n) if not removed >> i & 1]
    pos = {i: k for k, i in enumerate(alive)}

    def squeeze(mask):
        out = 0
        for i, k in pos.items():
            if mask >> i & 1:
                out |= 1 << k
        return out

    small = [canonical_bits(squeeze(p), squeeze(q)) for p, q in fam]
    return family_isomorphic(len(alive), small, t.size, t.circuits)


def has_forbidden_cographic_gbminor(m: OrientedMatroid) -> bool:
    """Does ``m`` have a GB-minor isomorphic to M*(K_{a,b}), a, b >= 2, a + b odd?"""
    if len(m) > 12:
        raise ValueError("forbidden-minor search is limited to 12 elements")
    hit = find_forbidden_cographic_gbminor(len(m), m.circuit_bits(), m.cocircuit_bits(), m.rank)
    return hit is not None


def forbidden_witness(m: OrientedMatroid) -> Optional[dict]:
    hit = find_forbidden_cographic_gbminor(len(m), m.circuit_bits(), m.cocircuit_bits(), m.rank)
    if hit is None:
        return None
    d, c, a, b = hit
    return {"deleted": m.labels(d), "contracted": m.labels(c), "target": [a, b]}


# ---------------------------------------------------------------------------


@dataclass
class R10Report:
    orientations_checked: int = 0
    noneven_count: int = 0
    forbidden_free_count: int = 0
    counterexamples: list = field(default_factory=list)
    # non-even yet containing a forbidden minor; must stay empty as well
    converse_violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def _flip(bits, s: int):
    return [canonical_bits((p & ~s) | (q & s), (q & ~s) | (p & s)) for p, q in bits]


def _check_orientation(s: int, circ, cocirc, rank: int, n: int) -> tuple[int, bool, bool]:
    c = _flip(circ, s)
    cc = _flip(cocirc, s)
    forbidden = find_forbidden_cographic_gbminor(n, c, cc, rank) is not None
    dirs = [p | q for p, q in c if not p or not q]
    non_even = gf2_solve_bits(dirs, [1] * len(dirs)) is not None
    return s, forbidden, non_even


def _check_chunk(args):
    signs, circ, cocirc, rank, n = args
    return [_check_orientation(s, circ, cocirc, rank, n) for s in signs]


def verify_conjecture_on_r10(workers: int = 1) -> R10Report:
    """Check all 1024 orientations: forbidden-minor-free implies non-even.

    Orientations are column sign flips of the reference; the reference's
    signed circuits and cocircuits are enumerated once and flipped per
    orientation.
    """
    ref = r10_reference()
    n = len(ref)
    circ = ref.circuit_bits()
    cocirc = ref.cocircuit_bits()
    signs = list(range(1 << n))
    if workers > 1:
        chunks = [signs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = [r for part in pool.map(_check_chunk, [(ch, circ, cocirc, ref.rank, n) for ch in chunks]) for r in part]
    else:
        results = _check_chunk((signs, circ, cocirc, ref.rank, n))
    report = R10Report()
    for s, forbidden, non_even in sorted(results):
        report.orientations_checked += 1
        report.noneven_count += non_even
        report.forbidden_free_count += not forbidden
        flipped = ref.labels(s)
        if not forbidden and not non_even:
            report.counterexamples.append(flipped)
        if forbidden and non_even:
            report.converse_violations.append(flipped)
    return report


def r10_orientation(s) -> OrientedMatroid:
    """The reference with the columns labelled in ``s`` negated."""
    return reorient(r10_reference(), s)
