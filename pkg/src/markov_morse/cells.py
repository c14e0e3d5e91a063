"""The state complex: a finite T0 space of vertices and edges.

States become vertices; an unordered pair {i, j} becomes an edge cell as soon
as either transition direction has positive probability. The Alexandroff
closure of a cell set adds the endpoint vertices of its edges; the mouth is
closure minus the set. Cells carry a canonical total order — vertices by
index, then edges lexicographically — which is the tie-break authority for
every label downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .markov import TransitionMatrix

CellSet = frozenset["Cell"]


@dataclass(frozen=True, order=True)
class Cell:
    """A vertex (dim 0) or edge (dim 1); 1-based indices, edge has i < j.

    The dataclass field order makes sorting canonical: all vertices before
    all edges, vertices by index, edges lexicographically by endpoints.
    """

    dim: int
    i: int
    j: int = 0

    @staticmethod
    def vertex(i: int) -> "Cell":
        if i < 1:
            raise ValueError("vertex index must be >= 1")
        return Cell(0, i)

    @staticmethod
    def edge(i: int, j: int) -> "Cell":
        if i == j:
            raise ValueError("edge endpoints must differ")
        if i < 1 or j < 1:
            raise ValueError("edge indices must be >= 1")
        if i > j:
            i, j = j, i
        return Cell(1, i, j)

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0

    @property
    def is_edge(self) -> bool:
        return self.dim == 1

    def endpoints(self) -> tuple["Cell", "Cell"]:
        """The two vertex faces of an edge."""
        if self.dim != 1:
            raise ValueError(f"{self} is not an edge")
        return Cell.vertex(self.i), Cell.vertex(self.j)

    def __repr__(self) -> str:
        return f"V{self.i}" if self.dim == 0 else f"E{self.i}-{self.j}"


def format_cell(cell: Cell, states: tuple[str, ...]) -> str:
    """Serialize a cell using state labels: "Ni" or "Ni-Nj"."""
    if cell.is_vertex:
        return states[cell.i - 1]
    return f"{states[cell.i - 1]}-{states[cell.j - 1]}"


@dataclass(frozen=True)
class StateComplex:
    """All cells of a chain: n vertices plus the positive-transition edges."""

    n: int
    edges: frozenset[Cell]

    def __post_init__(self):
        for e in self.edges:
            if not e.is_edge or not 1 <= e.i < e.j <= self.n:
                raise ValueError(f"invalid edge cell {e} for n={self.n}")

    def vertices(self) -> list[Cell]:
        return [Cell.vertex(i) for i in range(1, self.n + 1)]

    def cells(self) -> list[Cell]:
        """All cells in canonical order."""
        return self.vertices() + sorted(self.edges)

    def __contains__(self, cell: Cell) -> bool:
        if cell.is_vertex:
            return 1 <= cell.i <= self.n
        return cell in self.edges

    @property
    def cell_count(self) -> int:
        return self.n + len(self.edges)


def build_complex(P: "TransitionMatrix") -> StateComplex:
    """Vertices N1..Nn; edge {i,j} iff p_ij > 0 or p_ji > 0 (i != j)."""
    n = P.n
    edges = set()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if P.prob(i, j) > 0.0 or P.prob(j, i) > 0.0:
                edges.add(Cell.edge(i, j))
    return StateComplex(n, frozenset(edges))


def _check_subset(X: StateComplex, A: Iterable[Cell]) -> frozenset[Cell]:
    cells = frozenset(A)
    for c in cells:
        if c not in X:
            raise ValueError(f"cell {c} is not in the complex")
    return cells


def closure(X: StateComplex, A: Iterable[Cell]) -> CellSet:
    """A plus the endpoint vertices of every edge in A."""
    cells = _check_subset(X, A)
    extra = [v for c in cells if c.is_edge for v in c.endpoints()]
    return cells | frozenset(extra)


def mouth(X: StateComplex, A: Iterable[Cell]) -> CellSet:
    """closure(A) minus A."""
    cells = _check_subset(X, A)
    return closure(X, cells) - cells


def is_closed(X: StateComplex, A: Iterable[Cell]) -> bool:
    """True iff every edge of A has both endpoints in A."""
    cells = _check_subset(X, A)
    return all(v in cells for c in cells if c.is_edge for v in c.endpoints())


def is_locally_closed(X: StateComplex, A: Iterable[Cell]) -> bool:
    """True iff mouth(A) is closed.

    In a 1-dimensional complex the mouth consists of vertices only, so this
    always holds; the check stays honest rather than assumed.
    """
    return is_closed(X, mouth(X, A))
