from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from noneven.digraph import Digraph, graphic_matroid
from noneven.exact_linalg import TUMatrix, check_tu
from noneven.oriented_matroid import OrientedMatroid


# ---------------------------------------------------------------------------
# independent oracles: floating-point numpy, subset enumeration


def np_rank(cols: np.ndarray) -> int:
    if cols.size == 0:
        return 0
    return int(np.linalg.matrix_rank(cols.astype(float)))


def oracle_circuits(rep: TUMatrix) -> set[tuple[frozenset, frozenset]]:
    """Signed circuits (both signs) as (positive indices, negative indices)."""
    a = np.array(rep.data, dtype=float).reshape(rep.nrows, rep.ncols)
    n = rep.ncols
    out = set()
    for k in range(1, n + 1):
        for sub in itertools.combinations(range(n), k):
            cols = a[:, sub]
            if np_rank(cols) != k - 1:
                continue
            if any(np_rank(np.delete(cols, i, axis=1)) != k - 1 for i in range(k)):
                continue
            # one-dimensional kernel; read the signs off the last right singular vector
            if a.shape[0] == 0:
                v = np.ones(1)
            else:
                v = np.linalg.svd(cols)[2][-1]
            pos = frozenset(sub[i] for i in range(k) if v[i] > 1e-9)
            neg = frozenset(sub[i] for i in range(k) if v[i] < -1e-9)
            assert pos | neg == frozenset(sub)
            out.add((pos, neg))
            out.add((neg, pos))
    return out


def bits_to_pairs(bits) -> set[tuple[frozenset, frozenset]]:
    out = set()
    for p, q in bits:
        pp = frozenset(i for i in range(p.bit_length()) if p >> i & 1)
        qq = frozenset(i for i in range(q.bit_length()) if q >> i & 1)
        out.add((pp, qq))
        out.add((qq, pp))
    return out


def oracle_directed_supports(m: OrientedMatroid) -> set[frozenset]:
    return {p | q for p, q in oracle_circuits(m.rep) if not p or not q}


def oracle_non_even(m: OrientedMatroid) -> bool:
    """Exhaustive search over all 2^n subsets J."""
    dirs = [sorted(s) for s in oracle_directed_supports(m)]
    n = len(m)
    for j in range(1 << n):
        if all(sum(j >> i & 1 for i in c) % 2 == 1 for c in dirs):
            return True
    return False


# ---------------------------------------------------------------------------
# host generators


def random_digraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> Digraph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(1, max_edges)
    vs = [f"v{i}" for i in range(nv)]
    edges = [(rng.choice(vs), rng.choice(vs)) for _ in range(ne)]
    return Digraph.from_edges(edges, vs)


def random_tu_matrix(rng: random.Random, max_cols: int = 8, max_rows: int = 4) -> TUMatrix:
    while True:
        r = rng.randint(1, max_rows)
        n = rng.randint(1, max_cols)
        rows = [[rng.choice((-1, 0, 0, 1)) for _ in range(n)] for _ in range(r)]
        rep = TUMatrix.from_rows(rows, n)
        if check_tu(rep, min(r, n)).verified:
            return rep


def random_host(rng: random.Random, max_elements: int = 8) -> OrientedMatroid:
    if rng.random() < 0.5:
        d = random_digraph(rng, max_vertices=5, max_edges=max_elements)
        return graphic_matroid(d)
    rep = random_tu_matrix(rng, max_cols=max_elements)
    return OrientedMatroid([f"e{j + 1}" for j in range(rep.ncols)], rep)


def random_hosts(seed: int, count: int, max_elements: int = 8, min_elements: int = 0) -> list[OrientedMatroid]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = random_host(rng, max_elements)
        if len(m) >= min_elements:
            out.append(m)
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


# ---------------------------------------------------------------------------
# acceptance summary

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
