"""
Loop-free simple digraphs on the dense labels 0..n-1, plus the constructors
and surgeries the path-cover proofs are built from.

Digraph values are immutable; every surgery returns a new digraph together
with the old -> new label map needed to lift paths back.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

import networkx as nx

from app.errors import DigraphError

Arc = Tuple[int, int]
Relabel = Dict[int, int]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: FrozenSet[Arc]
    out_neighbors: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)
    in_neighbors: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)
    out_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise DigraphError(f"vertex count must be a non-negative integer, got {self.n!r}")

        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out_sets: List[set] = [set() for _ in range(self.n)]
        in_sets: List[set] = [set() for _ in range(self.n)]
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DigraphError(f"arc ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise DigraphError(f"loop at vertex {u}")
            out_sets[u].add(v)
            in_sets[v].add(u)

        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_neighbors", tuple(frozenset(s) for s in out_sets))
        object.__setattr__(self, "in_neighbors", tuple(frozenset(s) for s in in_sets))
        object.__setattr__(self, "out_masks", tuple(_mask(s) for s in out_sets))
        object.__setattr__(self, "in_masks", tuple(_mask(s) for s in in_sets))

    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors[v])

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise DigraphError(f"vertex {v!r} is outside 0..{self.n - 1}")

    def with_arcs(self, extra: Iterable[Arc]) -> "Digraph":
        return Digraph(self.n, self.arcs | frozenset(extra))

    def without_arcs(self, removed: Iterable[Arc]) -> "Digraph":
        return Digraph(self.n, self.arcs - frozenset(removed))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_arcs())
        return graph

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "arcs": [list(arc) for arc in self.sorted_arcs()]
        }


@dataclass(frozen=True)
class DegreeSummary:
    out_degrees: Tuple[int, ...]
    in_degrees: Tuple[int, ...]
    delta0: int
    ore_min: Union[int, float]

    @property
    def is_complete(self) -> bool:
        return math.isinf(self.ore_min)

    def to_dict(self) -> Dict:
        return {
            "out_degrees": list(self.out_degrees),
            "in_degrees": list(self.in_degrees),
            "delta0": self.delta0,
            "ore_min": "inf" if self.is_complete else self.ore_min
        }


def _mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_count(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 0:
        raise DigraphError(f"{name} must be a non-negative integer, got {value!r}")


def _clique_arcs(vertices: Iterable[int]) -> List[Arc]:
    members = list(vertices)
    return [(u, v) for u in members for v in members if u != v]


def complete_digraph(n: int) -> Digraph:
    _check_count("n", n)
    return Digraph(n, frozenset(_clique_arcs(range(n))))


def complete_bipartite_digraph(a: int, b: int) -> Digraph:
    """Parts X = 0..a-1 and Y = a..a+b-1, every X-Y pair joined both ways."""
    _check_count("a", a)
    _check_count("b", b)
    arcs = set()
    for x in range(a):
        for y in range(a, a + b):
            arcs.add((x, y))
            arcs.add((y, x))
    return Digraph(a + b, frozenset(arcs))


def empty_digraph(n: int) -> Digraph:
    _check_count("n", n)
    return Digraph(n, frozenset())


def glued_cliques(a: int, b: int, c: int) -> Digraph:
    """
    Complete digraphs on A = 0..a-1 and B = a-c..a+b-c-1 sharing the c
    vertices a-c..a-1. Layout: A-private block, overlap, B-private block.
    """
    _check_count("a", a)
    _check_count("b", b)
    _check_count("c", c)
    if c > min(a, b):
        raise DigraphError(f"overlap {c} exceeds the smaller clique size {min(a, b)}")

    arcs = set(_clique_arcs(range(a)))
    arcs.update(_clique_arcs(range(a - c, a + b - c)))
    return Digraph(a + b - c, frozenset(arcs))


def full_join(first: Digraph, second: Digraph) -> Digraph:
    """Disjoint union (second shifted by first.n) plus every cross arc in both directions."""
    offset = first.n
    arcs = set(first.arcs)
    arcs.update((u + offset, v + offset) for u, v in second.arcs)
    for x in range(first.n):
        for y in range(offset, offset + second.n):
            arcs.add((x, y))
            arcs.add((y, x))
    return Digraph(first.n + second.n, frozenset(arcs))


def delete_vertex(digraph: Digraph, v: int) -> Tuple[Digraph, Relabel]:
    digraph.check_vertex(v)
    relabel = {old: (old if old < v else old - 1) for old in digraph.vertices() if old != v}
    arcs = frozenset(
        (relabel[x], relabel[y]) for x, y in digraph.arcs if x != v and y != v
    )
    return Digraph(digraph.n - 1, arcs), relabel


def contract_pair(digraph: Digraph, s: int, t: int) -> Tuple[Digraph, int, Relabel]:
    """
    Replace s and t by one fresh vertex r with N+(r) = N+(s) - {s,t} and
    N-(r) = N-(t) - {s,t}. Survivors keep their relative order and r gets
    the last label n-2.
    """
    digraph.check_vertex(s)
    digraph.check_vertex(t)
    if s == t:
        raise DigraphError(f"cannot contract vertex {s} with itself")

    survivors = [x for x in digraph.vertices() if x not in (s, t)]
    relabel = {old: new for new, old in enumerate(survivors)}
    r = len(survivors)

    arcs = {
        (relabel[x], relabel[y])
        for x, y in digraph.arcs
        if x in relabel and y in relabel
    }
    arcs.update((r, relabel[y]) for y in digraph.out_neighbors[s] if y in relabel)
    arcs.update((relabel[x], r) for x in digraph.in_neighbors[t] if x in relabel)
    return Digraph(digraph.n - 1, frozenset(arcs)), r, relabel


def invert_relabel(relabel: Relabel, size: int) -> List[int]:
    """new -> old as a list; labels without a preimage (a contracted vertex) map to -1."""
    lifted = [-1] * size
    for old, new in relabel.items():
        lifted[new] = old
    return lifted


def min_semi_degree(digraph: Digraph) -> int:
    if digraph.n == 0:
        return 0
    return min(
        min(len(digraph.out_neighbors[v]), len(digraph.in_neighbors[v]))
        for v in digraph.vertices()
    )


def ore_minimum(digraph: Digraph) -> Union[int, float]:
    """min d+(x) + d-(y) over ordered non-arcs x -> y with x != y; inf when there are none."""
    best: Union[int, float] = math.inf
    for x in digraph.vertices():
        out_x = len(digraph.out_neighbors[x])
        for y in digraph.vertices():
            if x == y or y in digraph.out_neighbors[x]:
                continue
            total = out_x + len(digraph.in_neighbors[y])
            if total < best:
                best = total
    return best


def degree_summary(digraph: Digraph) -> DegreeSummary:
    return DegreeSummary(
        out_degrees=tuple(len(s) for s in digraph.out_neighbors),
        in_degrees=tuple(len(s) for s in digraph.in_neighbors),
        delta0=min_semi_degree(digraph),
        ore_min=ore_minimum(digraph)
    )
