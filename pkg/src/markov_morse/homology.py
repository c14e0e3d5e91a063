"""GF(2) cellular homology of cell sets, absolute and relative to the mouth.

Over a 1-complex everything reduces to one boundary matrix per set: rows are
vertices, columns are edges, and an entry is 1 when the vertex is an endpoint
kept by the chosen chain group. For a closed set A this computes H0/H1 of A;
for a locally closed set the relative variant drops endpoints lying in the
mouth and computes H(cl A, mo A), whose dimensions form the Conley-style
index. Each Betti computation is cross-checked against the component-count
formulas for graphs, which need no linear algebra at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, NamedTuple

import numpy as np

from .cells import Cell, StateComplex, closure, is_closed, is_locally_closed, mouth
from .unionfind import DisjointSet

if TYPE_CHECKING:
    from .dynamics import MorseSet
    from .mvf import Multivector


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense bit matrix over GF(2); rows are uint8 vectors of 0/1."""

    rows: int
    cols: int
    bits: np.ndarray

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]], cols: int) -> "Gf2Matrix":
        data = np.array([list(r) for r in rows], dtype=np.uint8).reshape(-1, cols)
        return Gf2Matrix(data.shape[0], cols, data)


def rank_gf2(M: Gf2Matrix) -> int:
    """Rank via Gaussian elimination with XOR row updates."""
    if M.rows == 0 or M.cols == 0:
        return 0
    work = M.bits.copy()
    rank = 0
    for col in range(M.cols):
        pivot = None
        for r in range(rank, M.rows):
            if work[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[[rank, pivot]] = work[[pivot, rank]]
        for r in range(M.rows):
            if r != rank and work[r, col]:
                work[r] ^= work[rank]
        rank += 1
        if rank == M.rows:
            break
    return rank


class TopologicalIndex(NamedTuple):
    """(dim H1 of the closure, dim H1 of the closure rel its mouth)."""

    h1: int
    c1: int


def _split(A: Iterable[Cell]) -> tuple[list[Cell], list[Cell]]:
    cells = sorted(A)
    verts = [c for c in cells if c.is_vertex]
    edges = [c for c in cells if c.is_edge]
    return verts, edges


def boundary_matrix(A: Iterable[Cell]) -> Gf2Matrix:
    """Vertex-by-edge incidence of the cells of A (endpoints inside A only)."""
    verts, edges = _split(A)
    row_of = {v: k for k, v in enumerate(verts)}
    bits = np.zeros((len(verts), len(edges)), dtype=np.uint8)
    for col, e in enumerate(edges):
        for v in e.endpoints():
            if v in row_of:
                bits[row_of[v], col] ^= 1
    return Gf2Matrix(len(verts), len(edges), bits)


def component_count(A: Iterable[Cell]) -> int:
    """Connected components of A's vertex set under A's edges.

    Rank-free oracle: for a closed set this yields h0 directly and h1 by the
    Euler formula |E| - |V| + components.
    """
    verts, edges = _split(A)
    pos = {v: k for k, v in enumerate(verts)}
    dsu = DisjointSet(len(verts))
    for e in edges:
        a, b = e.endpoints()
        if a in pos and b in pos:
            dsu.union(pos[a], pos[b])
    return len(dsu.groups())


def homology_dims_by_components(X: StateComplex, A: Iterable[Cell]) -> tuple[int, int]:
    """(h0, h1) of a closed set via component counting only."""
    cells = frozenset(A)
    if not is_closed(X, cells):
        raise ValueError("homology of a non-closed set is undefined here")
    verts, edges = _split(cells)
    comps = component_count(cells)
    return comps, len(edges) - len(verts) + comps


def homology_dims(X: StateComplex, A: Iterable[Cell]) -> tuple[int, int]:
    """(dim H0, dim H1) over GF(2) of a closed set A."""
    cells = frozenset(A)
    if not is_closed(X, cells):
        raise ValueError("homology of a non-closed set is undefined here")
    verts, edges = _split(cells)
    r = rank_gf2(boundary_matrix(cells))
    dims = (len(verts) - r, len(edges) - r)
    assert dims == homology_dims_by_components(X, cells), "rank/component mismatch"
    return dims


def relative_boundary_matrix(A: Iterable[Cell]) -> Gf2Matrix:
    """Boundary of (cl A, mo A): chains are A's own cells, endpoints outside A drop out."""
    return boundary_matrix(A)


def conley_index_dims(X: StateComplex, A: Iterable[Cell]) -> tuple[int, int]:
    """(c0, c1) = dims of H(cl A, mo A) over GF(2), for locally closed A.

    Relative chain groups are generated by the cells of A itself; the
    boundary keeps only endpoints lying in A, since mouth vertices are
    quotiented away.
    """
    cells = frozenset(A)
    if not is_locally_closed(X, cells):
        raise ValueError("relative homology needs a locally closed set")
    verts, edges = _split(cells)
    r = rank_gf2(relative_boundary_matrix(cells))
    return len(verts) - r, len(edges) - r


def topological_index(X: StateComplex, M: "MorseSet") -> TopologicalIndex:
    """The decoration attached to a Morse set: (h1 of cl M, c1 of (cl M, mo M))."""
    cl = closure(X, M.cells)
    _, h1 = homology_dims(X, cl)
    _, c1 = conley_index_dims(X, M.cells)
    return TopologicalIndex(h1, c1)


def is_critical(X: StateComplex, V: "Multivector") -> bool:
    """A multivector is critical iff its relative homology is non-trivial."""
    c0, c1 = conley_index_dims(X, V.cells)
    return c0 + c1 > 0
