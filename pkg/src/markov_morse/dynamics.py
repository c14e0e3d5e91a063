"""Coarse dynamics of a multivector field: the M-graph and its Morse sets.

The field induces a multivalued map sending a cell x to its multivector
together with the closure of x. On the level of multivectors this collapses
to a finite digraph (the M-graph): an arc V -> W between distinct
multivectors exists exactly when W meets the mouth of V, and every node
carries a self-loop. Strongly connected components are the Morse sets;
reachability between components gives the partial order used to read the
global structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cells import Cell, CellSet, StateComplex, closure, mouth
from .mvf import MultivectorField


def pi_map(V: MultivectorField, x: Cell) -> CellSet:
    """The multivalued map value at x: [x] union cl{x}."""
    vec = V.vector_of(x)
    if x.is_edge:
        return vec.cells | frozenset(x.endpoints()) | {x}
    return vec.cells | {x}


@dataclass(frozen=True)
class MGraph:
    """Digraph on multivector labels; arcs include all self-loops."""

    nodes: tuple[Cell, ...]
    arcs: frozenset[tuple[Cell, Cell]]

    def successors(self) -> dict[Cell, list[Cell]]:
        adj: dict[Cell, list[Cell]] = {u: [] for u in self.nodes}
        for u, w in sorted(self.arcs):
            adj[u].append(w)
        return adj


def build_mgraph(V: MultivectorField, X: StateComplex) -> MGraph:
    """Arc V -> W (V != W) iff W intersects mouth(V); self-loops everywhere."""
    nodes = tuple(v.label for v in V.multivectors)
    arcs = {(u, u) for u in nodes}
    for vec in V.multivectors:
        for c in mouth(X, vec.cells):
            arcs.add((vec.label, V.vector_of(c).label))
    return MGraph(nodes, frozenset(arcs))


@dataclass(frozen=True)
class MorseSet:
    """Union of the multivectors in one SCC of the M-graph."""

    label: Cell
    cells: CellSet
    members: tuple[Cell, ...]  # labels of the member multivectors, sorted


def _tarjan_scc(nodes: tuple[Cell, ...], adj: dict[Cell, list[Cell]]) -> list[list[Cell]]:
    """Iterative Tarjan; returns SCCs as lists of nodes."""
    index: dict[Cell, int] = {}
    low: dict[Cell, int] = {}
    on_stack: set[Cell] = set()
    stack: list[Cell] = []
    sccs: list[list[Cell]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adj[succ])))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(comp)
    return sccs


def morse_sets(G: MGraph, V: MultivectorField) -> tuple[MorseSet, ...]:
    """Every SCC of the M-graph as a Morse set, sorted by label.

    Self-loops make each node trivially recurrent, so singleton SCCs count:
    the Morse sets partition all cells of the complex.
    """
    adj = G.successors()
    by_label = {v.label: v for v in V.multivectors}
    sets = []
    for comp in _tarjan_scc(G.nodes, adj):
        members = tuple(sorted(comp))
        cells = frozenset().union(*(by_label[m].cells for m in members))
        sets.append(MorseSet(label=min(cells), cells=cells, members=members))
    return tuple(sorted(sets, key=lambda m: m.label))


@dataclass(frozen=True)
class MorseOrder:
    """Reachability order on Morse sets: above >= below.

    relations holds the strict pairs (above, below); ge() adds reflexivity.
    """

    labels: tuple[Cell, ...]
    relations: frozenset[tuple[Cell, Cell]]

    def ge(self, above: Cell, below: Cell) -> bool:
        return above == below or (above, below) in self.relations

    def pairs(self) -> list[tuple[Cell, Cell]]:
        return sorted(self.relations)


def morse_order(G: MGraph, sets: tuple[MorseSet, ...]) -> MorseOrder:
    """Condense the M-graph and take transitive reachability between SCCs."""
    set_of: dict[Cell, Cell] = {}
    for m in sets:
        for member in m.members:
            set_of[member] = m.label
    dag: dict[Cell, set[Cell]] = {m.label: set() for m in sets}
    for u, w in G.arcs:
        su, sw = set_of[u], set_of[w]
        if su != sw:
            dag[su].add(sw)

    # Kahn order, then accumulate reachability bottom-up (sinks first).
    indegree = {lbl: 0 for lbl in dag}
    for succs in dag.values():
        for w in succs:
            indegree[w] += 1
    queue = [lbl for lbl, d in indegree.items() if d == 0]
    topo = []
    while queue:
        u = queue.pop()
        topo.append(u)
        for w in dag[u]:
            indegree[w] -= 1
            if indegree[w] == 0:
                queue.append(w)
    reach: dict[Cell, set[Cell]] = {}
    for u in reversed(topo):
        acc: set[Cell] = set()
        for w in dag[u]:
            acc.add(w)
            acc |= reach[w]
        reach[u] = acc

    relations = {(u, below) for u, acc in reach.items() for below in acc}
    return MorseOrder(tuple(m.label for m in sets), frozenset(relations))
