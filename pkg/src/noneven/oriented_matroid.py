"""Regular oriented matroids given by a TU representation.

Signed circuits are enumerated by depth-first search over independent
column sets: a circuit is found exactly when an independent set ``I`` plus
a larger-index column ``x`` is dependent and the dependency has full
support.  Internally signed sets are pairs of bitmasks ``(pos, neg)`` over
element positions; the public API speaks :class:`SignedSet` over labels.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Optional, Sequence

from .exact_linalg import TUMatrix, check_tu, kernel_basis, pivot_unit_column, rank

DEFAULT_ENUMERATION_BOUND = 16

Bits = tuple[int, int]  # (positive mask, negative mask)


class EnumerationBoundExceeded(RuntimeError):
    """The ground set is too large for brute-force enumeration."""


@dataclass(frozen=True)
class SignedSet:
    positive: frozenset
    negative: frozenset

    def __post_init__(self):
        if self.positive & self.negative:
            raise ValueError("positive and negative parts overlap")

    @property
    def support(self) -> frozenset:
        return self.positive | self.negative

    def __neg__(self) -> "SignedSet":
        return SignedSet(self.negative, self.positive)

    def __len__(self) -> int:
        return len(self.positive) + len(self.negative)


def is_directed(s: SignedSet) -> bool:
    return not s.positive or not s.negative


# ---------------------------------------------------------------------------
# bitmask helpers


def canonical_bits(pos: int, neg: int) -> Bits:
    """Sign-normalise so that the least element is positive."""
    supp = pos | neg
    low = supp & -supp
    return (pos, neg) if pos & low else (neg, pos)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_circuit_bits(rep: TUMatrix) -> list[Bits]:
    """All signed circuits of M[rep], one sign-canonical representative each."""
    n = rep.ncols
    cols = [[Fraction(x) for x in rep.column(j)] for j in range(n)]
    out: list[Bits] = []

    # echelon: list of (pivot row index, reduced vector, combination dict)
    def reduce(x: int, echelon):
        v = cols[x][:]
        comb = {x: Fraction(1)}
        for p, row, rcomb in echelon:
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
                for k, c in rcomb.items():
                    comb[k] = comb.get(k, 0) - f * c
        return v, comb

    def dfs(start: int, members: list[int], echelon):
        for x in range(start, n):
            v, comb = reduce(x, echelon)
            p = next((i for i, a in enumerate(v) if a != 0), None)
            if p is None:
                # I + x dependent; circuit iff every member carries weight
                if all(comb.get(k, 0) != 0 for k in members):
                    pos = neg = 0
                    for k, c in comb.items():
                        if c > 0:
                            pos |= 1 << k
                        elif c < 0:
                            neg |= 1 << k
                    out.append(canonical_bits(pos, neg))
                continue
            piv = v[p]
            row = [a / piv for a in v]
            rcomb = {k: c / piv for k, c in comb.items()}
            # keep the echelon reduced in column p
            new_echelon = []
            for q, qrow, qcomb in echelon:
                f = qrow[p]
                if f:
                    qrow = [a - f * b for a, b in zip(qrow, row)]
                    qcomb = dict(qcomb)
                    for k, c in rcomb.items():
                        qcomb[k] = qcomb.get(k, 0) - f * c
                new_echelon.append((q, qrow, qcomb))
            new_echelon.append((p, row, rcomb))
            members.append(x)
            dfs(x + 1, members, new_echelon)
            members.pop()

    dfs(0, [], [])
    out.sort(key=lambda b: (bin(b[0] | b[1]).count("1"), b[0] | b[1], b[0]))
    return out


def family_key(family: Iterable[Bits]) -> frozenset:
    return frozenset(canonical_bits(p, q) for p, q in family)


# ---------------------------------------------------------------------------


class OrientedMatroid:
    """Oriented matroid ``M[rep]`` on labelled elements, one column each.

    Instances are immutable.  Derived data (circuits, cocircuits, dual) is
    computed on first use under a lock and then reused.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        rep: TUMatrix,
        *,
        bound: int = DEFAULT_ENUMERATION_BOUND,
        tu_order: Optional[int] = None,
    ):
        elements = tuple(elements)
        if len(elements) != rep.ncols:
            raise ValueError(f"{len(elements)} labels for {rep.ncols} columns")
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element labels")
        if tu_order is not None:
            verdict = check_tu(rep, tu_order)
            if verdict.refuted:
                raise ValueError(
                    f"representation is not totally unimodular: rows {verdict.witness_rows} "
                    f"cols {verdict.witness_cols} det {verdict.determinant}"
                )
        self._elements = elements
        self._rep = rep
        self._index = {e: i for i, e in enumerate(elements)}
        self.bound = bound
        self._lock = threading.RLock()
        self._cache: dict = {}

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], labels=None, **kw) -> "OrientedMatroid":
        """Build from row lists; labels default to ``e1, e2, ...``."""
        ncols = len(rows[0]) if rows else len(labels or ())
        rep = TUMatrix.from_rows(rows, ncols)
        if labels is None:
            labels = [f"e{j + 1}" for j in range(ncols)]
        return cls(labels, rep, **kw)

    @property
    def elements(self) -> tuple:
        return self._elements

    @property
    def rep(self) -> TUMatrix:
        return self._rep

    def __len__(self) -> int:
        return len(self._elements)

    def __repr__(self) -> str:
        return f"OrientedMatroid({list(self._elements)!r}, rank={self.rank})"

    def index(self, e) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError(f"unknown element {e!r}") from None

    def _cached(self, key, compute):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    @property
    def rank(self) -> int:
        return self._cached("rank", lambda: rank(self._rep))

    def rank_of(self, subset: Iterable) -> int:
        idx = sorted(self.index(e) for e in subset)
        return rank(self._rep.select_columns(idx)) if idx else 0

    def mask(self, subset: Iterable) -> int:
        return sum(1 << self.index(e) for e in subset)

    def labels(self, mask: int) -> list:
        return [self._elements[i] for i in iter_bits(mask)]

    def to_signed(self, b: Bits) -> SignedSet:
        return SignedSet(frozenset(self.labels(b[0])), frozenset(self.labels(b[1])))

    def is_loop(self, e) -> bool:
        return not any(self._rep.column(self.index(e)))

    def _check_bound(self):
        if len(self) > self.bound:
            raise EnumerationBoundExceeded(
                f"{len(self)} elements exceeds the enumeration bound {self.bound}"
            )

    def circuit_bits(self) -> list[Bits]:
        self._check_bound()
        return self._cached("circuits", lambda: enumerate_circuit_bits(self._rep))

    def cocircuit_bits(self) -> list[Bits]:
        self._check_bound()
        return self._cached("cocircuits", lambda: enumerate_circuit_bits(self.dual().rep))

    def dual(self) -> "OrientedMatroid":
        return self._cached(
            "dual", lambda: OrientedMatroid(self._elements, kernel_basis(self._rep), bound=self.bound)
        )

    def family_key(self) -> frozenset:
        """Labelled canonical form of the signed-circuit family."""
        return frozenset(
            (frozenset(self.labels(p)), frozenset(self.labels(q))) for p, q in self.circuit_bits()
        )


def circuits(m: OrientedMatroid) -> list[SignedSet]:
    """Every signed circuit up to sign; the least element is positive."""
    return [m.to_signed(b) for b in m.circuit_bits()]


def cocircuits(m: OrientedMatroid) -> list[SignedSet]:
    return [m.to_signed(b) for b in m.cocircuit_bits()]


def directed_circuit_sets(m: OrientedMatroid) -> list[frozenset]:
    return [frozenset(m.labels(p | q)) for p, q in m.circuit_bits() if not p or not q]


def dual(m: OrientedMatroid) -> OrientedMatroid:
    return m.dual()


def delete(m: OrientedMatroid, z: Iterable) -> OrientedMatroid:
    drop = {m.index(e) for e in z}
    keep = [j for j in range(len(m)) if j not in drop]
    return OrientedMatroid(
        [m.elements[j] for j in keep], m.rep.select_columns(keep), bound=m.bound
    )


def contract(m: OrientedMatroid, z: Iterable) -> OrientedMatroid:
    """Contract ``z`` one element at a time; loops are contracted by deletion."""
    for e in sorted(set(z), key=m.index):
        j = m.index(e)
        if m.is_loop(e):
            m = delete(m, [e])
            continue
        piv = pivot_unit_column(m.rep, j)
        keep = [k for k in range(len(m)) if k != j]
        rep = piv.delete_rows([0]).select_columns(keep)
        m = OrientedMatroid([m.elements[k] for k in keep], rep, bound=m.bound)
    return m


def minor(m: OrientedMatroid, deleted: Iterable = (), contracted: Iterable = ()) -> OrientedMatroid:
    return contract(delete(m, deleted), contracted)


def reorient(m: OrientedMatroid, s: Iterable) -> OrientedMatroid:
    """Negate the columns of ``s``; the underlying matroid is unchanged."""
    idx = [m.index(e) for e in s]
    return OrientedMatroid(m.elements, m.rep.negate_columns(idx), bound=m.bound)


def is_butterfly_contractible(m: OrientedMatroid, e) -> Optional[SignedSet]:
    """A signed cocircuit ``(S - e, {e})`` if one exists.

    Cocircuits are stored up to sign, so both sign classes are tested.
    """
    bit = 1 << m.index(e)
    for p, q in m.cocircuit_bits():
        if q == bit:
            return m.to_signed((p, q))
        if p == bit:
            return m.to_signed((q, p))
    return None


# ---------------------------------------------------------------------------
# GB-minors


class MinorExplorer:
    """Exhaustive GB-minor search driven by the host's signed (co)circuits.

    A minor is identified by the pair (deleted mask, contracted mask).  Its
    covectors include the restrictions to ``E - D`` of host cocircuits that
    avoid ``C``, and each of its cocircuits is such a restriction, so an
    element ``e`` is butterfly-contractible in the minor iff some host
    cocircuit avoiding ``C`` has one sign class equal to ``{e}`` after
    removing ``D``.  Loops/coloops of the minor are detected the same way,
    which lets rank and nullity be tracked without any linear algebra.
    """

    def __init__(self, n: int, circuit_bits: Sequence[Bits], cocircuit_bits: Sequence[Bits], rank_: int):
        self.n = n
        self.full = (1 << n) - 1
        self.circuits = list(circuit_bits)
        self.cocircuits = list(cocircuit_bits)
        self.rank = rank_

    @classmethod
    def of(cls, m: OrientedMatroid) -> "MinorExplorer":
        return cls(len(m), m.circuit_bits(), m.cocircuit_bits(), m.rank)

    def contractible(self, d: int, c: int) -> int:
        """Mask of butterfly-contractible elements of M - d / c."""
        out = 0
        nd = ~d
        for p, q in self.cocircuits:
            if (p | q) & c:
                continue
            p &= nd
            q &= nd
            if p and not p & (p - 1):
                out |= p
            if q and not q & (q - 1):
                out |= q
        return out

    def loops(self, d: int, c: int) -> int:
        out = 0
        for p, q in self.circuits:
            s = p | q
            if s & d:
                continue
            s &= ~c
            if s and not s & (s - 1):
                out |= s
        return out

    def coloops(self, d: int, c: int) -> int:
        out = 0
        for p, q in self.cocircuits:
            s = p | q
            if s & c:
                continue
            s &= ~d
            if s and not s & (s - 1):
                out |= s
        return out

    def minor_circuits(self, d: int, c: int) -> list[Bits]:
        """Signed circuits of M - d / c: minimal nonzero restrictions to E - d - c."""
        keep = self.full & ~(d | c)
        cand = {}
        for p, q in self.circuits:
            if (p | q) & d:
                continue
            p &= keep
            q &= keep
            if p | q:
                cand[canonical_bits(p, q)] = None
        items = sorted(cand, key=lambda b: bin(b[0] | b[1]).count("1"))
        out: list[Bits] = []
        supports: list[int] = []
        for p, q in items:
            s = p | q
            if any(t & s == t for t in supports):
                continue
            out.append((p, q))
            supports.append(s)
        return out

    def explore(self, accept, *, min_size: int = 0):
        """Visit every GB-minor state with at least ``min_size`` elements.

        ``accept(d, c, rank, size)`` may return ``False`` to prune the
        subtree below a state, or the string ``"stop"`` to abort.
        Returns True when aborted.
        """
        start = (0, 0)
        seen = {start}
        stack = [(0, 0, self.rank)]
        while stack:
            d, c, r = stack.pop()
            size = self.n - bin(d | c).count("1")
            verdict = accept(d, c, r, size)
            if verdict == "stop":
                return True
            if verdict is False or size <= min_size:
                continue
            alive = self.full & ~(d | c)
            bc = self.contractible(d, c) & alive
            lp = self.loops(d, c)
            cl = self.coloops(d, c)
            for i in iter_bits(alive):
                bit = 1 << i
                key = (d | bit, c)
                if key not in seen:
                    seen.add(key)
                    stack.append((d | bit, c, r - 1 if cl & bit else r))
                if bc & bit:
                    if lp & bit:
                        # contracting a loop is deleting it
                        continue
                    key = (d, c | bit)
                    if key not in seen:
                        seen.add(key)
                        stack.append((d, c | bit, r - 1))
        return False


def gb_minors(m: OrientedMatroid, min_size: int = 0) -> Iterator[OrientedMatroid]:
    """All GB-minors with at least ``min_size`` elements, deduplicated.

    Butterfly-contractibility is evaluated in the current minor at each
    step.  Two minors are the same when their labelled signed-circuit
    families coincide.
    """
    ex = MinorExplorer.of(m)
    states: list[tuple[int, int]] = []

    def accept(d, c, r, size):
        if size >= min_size:
            states.append((d, c))
        return size > min_size

    ex.explore(accept, min_size=min_size)
    seen = set()
    for d, c in sorted(states, key=lambda s: (bin(s[0] | s[1]).count("1"), s)):
        key = (d | c, frozenset(ex.minor_circuits(d, c)))
        if key in seen:
            continue
        seen.add(key)
        yield minor(m, m.labels(d), m.labels(c))


# ---------------------------------------------------------------------------
# isomorphism


def _popcount(x: int) -> int:
    return bin(x).count("1")


def family_isomorphic(n1: int, fam1: Sequence[Bits], n2: int, fam2: Sequence[Bits]) -> bool:
    """Is there a bijection carrying one signed family onto the other (up to sign)?"""
    if n1 != n2 or len(fam1) != len(fam2):
        return False
    if sorted(_popcount(p | q) for p, q in fam1) != sorted(_popcount(p | q) for p, q in fam2):
        return False
    n = n1
    target = family_key(fam2)

    def profile(fam, i):
        bit = 1 << i
        return tuple(sorted(_popcount(p | q) for p, q in fam if (p | q) & bit))

    prof1 = [profile(fam1, i) for i in range(n)]
    prof2 = [profile(fam2, i) for i in range(n)]
    if sorted(prof1) != sorted(prof2):
        return False

    order = sorted(range(n), key=lambda i: (len(prof1[i]) == 0, -len(prof1[i]), i))
    target_supports = {p | q for p, q in fam2}
    images = [0] * n
    used = 0

    def image_mask(x):
        out = 0
        for i in iter_bits(x):
            out |= images[i]
        return out

    def consistent(assigned: int) -> bool:
        for p, q in fam1:
            s = p | q
            if s & assigned == s:
                if image_mask(s) not in target_supports:
                    return False
        return True

    def full_check() -> bool:
        for p, q in fam1:
            if canonical_bits(image_mask(p), image_mask(q)) not in target:
                return False
        return True

    def bt(k: int, assigned: int) -> bool:
        nonlocal used
        if k == n:
            return full_check()
        i = order[k]
        for j in range(n):
            bit = 1 << j
            if used & bit or prof2[j] != prof1[i]:
                continue
            images[i] = bit
            used |= bit
            if consistent(assigned | (1 << i)) and bt(k + 1, assigned | (1 << i)):
                return True
            used &= ~bit
            images[i] = 0
        return False

    return bt(0, 0)


def is_isomorphic(m1: OrientedMatroid, m2: OrientedMatroid) -> bool:
    if len(m1) != len(m2) or m1.rank != m2.rank:
        return False
    return family_isomorphic(len(m1), m1.circuit_bits(), len(m2), m2.circuit_bits())
