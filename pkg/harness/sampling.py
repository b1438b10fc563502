"""
Digraph sources for the verification campaigns.

all_digraphs enumerates every digraph of a small order whose minimum
semi-degree meets a floor, choosing out-neighbourhoods per vertex so that
digraphs below the floor are never built. The dense samplers start from the
complete digraph and delete arcs in random order while the degree
hypothesis still holds.
"""

import logging
import random
from itertools import combinations, product
from typing import Iterator, List, Union

from tqdm import tqdm

from app.digraph import Digraph, complete_digraph, min_semi_degree, ore_minimum
from app.errors import DigraphError

logger = logging.getLogger(__name__)


def _out_choices(n: int, v: int, floor: int) -> List[frozenset]:
    others = [u for u in range(n) if u != v]
    choices = []
    for size in range(max(floor, 0), n):
        choices.extend(frozenset(c) for c in combinations(others, size))
    return choices


def all_digraphs(n: int, min_delta: int = 0, progress: bool = False) -> Iterator[Digraph]:
    """Every labelled digraph on n vertices with min semi-degree >= min_delta."""
    if n < 0:
        raise DigraphError(f"n must be non-negative, got {n}")

    per_vertex = [_out_choices(n, v, min_delta) for v in range(n)]
    total = 1
    for choices in per_vertex:
        total *= len(choices)

    for outs in tqdm(product(*per_vertex), total=total, disable=not progress, desc=f"n={n}"):
        in_degree = [0] * n
        for neighbours in outs:
            for u in neighbours:
                in_degree[u] += 1
        if n and min(in_degree) < min_delta:
            continue
        yield Digraph(n, frozenset((v, u) for v, neighbours in enumerate(outs) for u in neighbours))


def random_digraph(n: int, rng: random.Random, density: float = 0.5) -> Digraph:
    arcs = frozenset((u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density)
    return Digraph(n, arcs)


def _deletion_order(n: int, rng: random.Random) -> List[tuple]:
    arcs = sorted(complete_digraph(n).arcs)
    rng.shuffle(arcs)
    return arcs


def sample_min_degree_digraph(n: int, min_delta: int, rng: random.Random) -> Digraph:
    """
    Random digraph with min semi-degree >= min_delta. A random number of
    deletions is attempted from K<->n; each one is kept only when both
    endpoints stay at or above the floor.
    """
    if min_delta > n - 1:
        raise DigraphError(f"no digraph of order {n} has min semi-degree {min_delta}")

    out_degree = [n - 1] * n
    in_degree = [n - 1] * n
    arcs = set(complete_digraph(n).arcs)
    attempts = rng.randint(0, n * (n - 1))

    for u, v in _deletion_order(n, rng)[:attempts]:
        if out_degree[u] > min_delta and in_degree[v] > min_delta:
            arcs.discard((u, v))
            out_degree[u] -= 1
            in_degree[v] -= 1

    return Digraph(n, frozenset(arcs))


def sample_ore_digraph(n: int, ore_floor: int, rng: random.Random) -> Digraph:
    """Random digraph with d+(x) + d-(y) >= ore_floor for every non-arc xy."""
    digraph = complete_digraph(n)
    attempts = rng.randint(0, n * (n - 1))

    for arc in _deletion_order(n, rng)[:attempts]:
        candidate = digraph.without_arcs([arc])
        if ore_minimum(candidate) >= ore_floor:
            digraph = candidate

    return digraph


def raise_min_semi_degree(digraph: Digraph, target: int) -> Digraph:
    """Add arcs greedily, lowest labels first, until min semi-degree reaches target."""
    n = digraph.n
    if target > n - 1:
        raise DigraphError(f"min semi-degree {target} is impossible at order {n}")

    arcs = set(digraph.arcs)
    out_degree = [digraph.out_degree(v) for v in range(n)]
    in_degree = [digraph.in_degree(v) for v in range(n)]

    def add(u: int, v: int) -> None:
        arcs.add((u, v))
        out_degree[u] += 1
        in_degree[v] += 1

    for v in range(n):
        while out_degree[v] < target:
            candidates = [w for w in range(n) if w != v and (v, w) not in arcs]
            # prefer heads that are themselves short of in-arcs
            w = min(candidates, key=lambda u: (in_degree[u] >= target, u))
            add(v, w)
        while in_degree[v] < target:
            candidates = [w for w in range(n) if w != v and (w, v) not in arcs]
            w = min(candidates, key=lambda u: (out_degree[u] >= target, u))
            add(w, v)

    raised = Digraph(n, frozenset(arcs))
    logger.debug("raised min semi-degree %d -> %d with %d arcs", min_semi_degree(digraph), min_semi_degree(raised),
                 len(arcs) - len(digraph.arcs))
    return raised


def raise_ore_min(digraph: Digraph, target: Union[int, float]) -> Digraph:
    """Add the lexicographically least offending non-arc until the Ore minimum reaches target."""
    while ore_minimum(digraph) < target:
        offending = next(
            (x, y)
            for x in digraph.vertices()
            for y in digraph.vertices()
            if x != y and not digraph.has_arc(x, y)
            and digraph.out_degree(x) + digraph.in_degree(y) < target
        )
        digraph = digraph.with_arcs([offending])
    return digraph
