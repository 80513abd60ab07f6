"""Per-unit inheritance DAG with C3 linearization and depth/children queries.

Nodes are contract names (unique within a unit; the parser rejects
duplicates). Base names that are not declared in the unit become synthetic
external root nodes: they stay in the graph so diagrams and depth counts see
them, but they never have outgoing edges. Graphs are immutable once built,
so every query here is safe to run concurrently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import DuplicateBase, InheritanceCycle, LinearizationFailure, UnknownNode, UnresolvedBaseWarning
from .frontend import ContractKind, SourceUnit

NodeId = str


@dataclass(frozen=True)
class InheritanceGraph:
    unit_path: str
    nodes: tuple[NodeId, ...]
    edges: tuple[tuple[NodeId, NodeId], ...]  # (child, parent), base order kept
    kinds: dict[NodeId, ContractKind] = field(repr=False)  # declared nodes only
    bases: dict[NodeId, tuple[NodeId, ...]] = field(repr=False)
    children: dict[NodeId, frozenset[NodeId]] = field(repr=False)

    def __contains__(self, node: NodeId) -> bool:
        return node in self.bases

    def is_external(self, node: NodeId) -> bool:
        return node in self.bases and node not in self.kinds

    def declared(self) -> tuple[NodeId, ...]:
        return tuple(n for n in self.nodes if n in self.kinds)


@dataclass(frozen=True)
class Linearization:
    order: tuple[NodeId, ...]


def build_graph(unit: SourceUnit) -> InheritanceGraph:
    """One node per declaration plus one per unresolved base name.

    Raises DuplicateBase when a declaration repeats a base, and
    InheritanceCycle (naming the cycle) when the base relation loops back;
    each unresolved base emits an UnresolvedBaseWarning.
    """
    declared_kinds = {d.name: d.kind for d in unit.contracts}
    order: list[NodeId] = [d.name for d in unit.contracts]
    bases: dict[NodeId, tuple[NodeId, ...]] = {}
    edges: list[tuple[NodeId, NodeId]] = []
    externals: list[NodeId] = []

    for decl in unit.contracts:
        seen: set[NodeId] = set()
        parent_list: list[NodeId] = []
        for base in decl.bases:
            if base.name in seen:
                raise DuplicateBase(
                    f"{unit.path}: {decl.name!r} lists base {base.name!r} twice"
                )
            seen.add(base.name)
            parent_list.append(base.name)
            edges.append((decl.name, base.name))
            if base.name not in declared_kinds and base.name not in externals:
                externals.append(base.name)
                warnings.warn(
                    f"{unit.path}: base {base.name!r} of {decl.name!r} is not declared "
                    "in this unit; treating it as an external root",
                    UnresolvedBaseWarning,
                    stacklevel=2,
                )
        bases[decl.name] = tuple(parent_list)
    for name in externals:
        bases[name] = ()

    _check_acyclic(bases, unit.path)

    children: dict[NodeId, set[NodeId]] = {n: set() for n in bases}
    for child, parent in edges:
        children[parent].add(child)

    return InheritanceGraph(
        unit_path=unit.path,
        nodes=tuple(order + externals),
        edges=tuple(edges),
        kinds=declared_kinds,
        bases=bases,
        children={n: frozenset(c) for n, c in children.items()},
    )


def _check_acyclic(bases: dict[NodeId, tuple[NodeId, ...]], path: str) -> None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {n: WHITE for n in bases}
    stack: list[NodeId] = []

    def visit(node: NodeId) -> None:
        color[node] = GREY
        stack.append(node)
        for parent in bases[node]:
            if color[parent] == GREY:
                start = stack.index(parent)
                cycle = " -> ".join(stack[start:] + [parent])
                raise InheritanceCycle(f"{path}: inheritance cycle {cycle}")
            if color[parent] == WHITE:
                visit(parent)
        stack.pop()
        color[node] = BLACK

    for node in bases:
        if color[node] == WHITE:
            visit(node)


def _merge(sequences: list[list[NodeId]], node: NodeId) -> list[NodeId]:
    """C3 merge: repeatedly take the first head that sits in no tail."""
    seqs = [list(s) for s in sequences if s]
    result: list[NodeId] = []
    while seqs:
        candidate = None
        for seq in seqs:
            head = seq[0]
            if not any(head in other[1:] for other in seqs):
                candidate = head
                break
        if candidate is None:
            heads = ", ".join(sorted({s[0] for s in seqs}))
            raise LinearizationFailure(
                f"no consistent base order for {node!r}; blocked heads: {heads}"
            )
        result.append(candidate)
        for seq in seqs:
            if seq[0] == candidate:
                del seq[0]
        seqs = [s for s in seqs if s]
    return result


def c3_linearize(graph: InheritanceGraph, node: NodeId) -> Linearization:
    """C3 order of ``node`` and its ancestors.

    Solidity writes bases most-base-like first, so the merge runs over the
    REVERSED declared base list; the result honours each declaration's local
    precedence and is monotone with the parents' linearizations. Raises
    LinearizationFailure when no such order exists (a compile error in real
    Solidity).
    """
    if node not in graph:
        raise UnknownNode(f"{graph.unit_path}: no contract named {node!r}")
    memo: dict[NodeId, list[NodeId]] = {}

    def linearize(name: NodeId) -> list[NodeId]:
        cached = memo.get(name)
        if cached is None:
            reversed_bases = list(reversed(graph.bases[name]))
            sequences = [linearize(b) for b in reversed_bases]
            if reversed_bases:
                sequences = sequences + [reversed_bases]
            cached = [name] + _merge(sequences, name)
            memo[name] = cached
        return cached

    return Linearization(order=tuple(linearize(node)))


def depth_of(graph: InheritanceGraph, node: NodeId) -> int:
    """Edges on the longest path from ``node`` to any parentless ancestor.

    A node with no bases has depth 0; external roots count one edge like any
    other parent. Diamonds take the maximum path.
    """
    if node not in graph:
        raise UnknownNode(f"{graph.unit_path}: no contract named {node!r}")
    memo: dict[NodeId, int] = {}

    def depth(name: NodeId) -> int:
        cached = memo.get(name)
        if cached is None:
            parents = graph.bases[name]
            cached = 1 + max(depth(p) for p in parents) if parents else 0
            memo[name] = cached
        return cached

    return depth(node)


def children_of(graph: InheritanceGraph, node: NodeId) -> set[NodeId]:
    """Nodes with a direct edge into ``node``; the size is the node's NOC."""
    if node not in graph:
        raise UnknownNode(f"{graph.unit_path}: no contract named {node!r}")
    return set(graph.children[node])
