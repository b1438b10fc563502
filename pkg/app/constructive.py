"""
Proof-following cover constructions.

Each public solver checks its theorem's hypothesis, raising PreconditionError
when it fails, and otherwise builds a cover using only the moves of the
corresponding proof. Where a proof calls on Hamiltonian-connectedness as a
black box, find_hamiltonian_path stands in; under the hypothesis it cannot
come back empty, so an empty answer is reported as a ConstructionDefect.
Every returned cover has passed verify_cover.
"""

import logging
from typing import List, Sequence

import networkx as nx

from app.digraph import (
    Digraph,
    complete_bipartite_digraph,
    contract_pair,
    delete_vertex,
    invert_relabel,
    min_semi_degree,
    ore_minimum,
)
from app.errors import ConstructionDefect, CoverSpecError, PreconditionError
from app.exact import find_hamiltonian_path
from app.schemas import (
    CoverSpec,
    CoverTag,
    PathCover,
    one_to_many_spec,
    one_to_one_spec,
    paired_spec,
    unpaired_spec,
)
from app.verification import validate_spec, verify_cover

logger = logging.getLogger(__name__)


def ceil_half(value: int) -> int:
    return -(-value // 2)


def unpaired_threshold(n: int, k: int) -> int:
    return ceil_half(n + k)


def tight_threshold(k: int) -> int:
    return ceil_half(3 * k) - 1


def one_to_many_threshold(n: int, k: int) -> int:
    return ceil_half(n + k)


def one_to_one_threshold(n: int, k: int) -> int:
    return ceil_half(n + k - 1)


def paired_two_ore_threshold(n: int) -> int:
    return n + 2


def _validated(digraph: Digraph, spec: CoverSpec) -> CoverSpec:
    violations = validate_spec(digraph, spec)
    if violations:
        raise CoverSpecError(violations)
    return spec


def _require(holds: bool, condition: str, detail: str) -> None:
    if not holds:
        raise PreconditionError(condition, detail)


def _accepted(digraph: Digraph, spec: CoverSpec, paths: Sequence[Sequence[int]]) -> PathCover:
    cover = PathCover(list(paths))
    check = verify_cover(digraph, spec, cover)
    if not check:
        raise ConstructionDefect(f"constructed {spec.tag.value} cover rejected: {check.reason.value} ({check.detail})")
    return cover


def _hamiltonian(digraph: Digraph, s: int, t: int) -> List[int]:
    path = find_hamiltonian_path(digraph, s, t)
    if path is None:
        raise ConstructionDefect(f"no Hamiltonian {s}-{t} path although the Ore bound holds")
    return list(path)


def _split_at(path: List[int], vertex: int) -> int:
    position = path.index(vertex)
    if position == 0 or position == len(path) - 1:
        raise ConstructionDefect(f"contracted vertex {vertex} is an endpoint of {path}")
    return position


def unpaired_mtm_cover(digraph: Digraph, sources: Sequence[int], sinks: Sequence[int]) -> PathCover:
    spec = _validated(digraph, unpaired_spec(sources, sinks))
    n, k = digraph.n, spec.k
    _require(n >= 3 * k, "order n >= 3k", f"n = {n}, k = {k}")
    delta0 = min_semi_degree(digraph)
    threshold = unpaired_threshold(n, k)
    _require(delta0 >= threshold, "min semi-degree >= ceil((n+k)/2)", f"{delta0} < {threshold}")

    paths = _contract_and_splice(digraph, list(spec.sources), list(spec.sinks))
    return _accepted(digraph, spec, paths)


def _contract_and_splice(digraph: Digraph, sources: List[int], sinks: List[int]) -> List[List[int]]:
    if len(sources) == 1:
        return [_hamiltonian(digraph, sources[0], sinks[0])]

    s_last, t_last = sources[-1], sinks[-1]
    contracted, r, relabel = contract_pair(digraph, s_last, t_last)
    lift = invert_relabel(relabel, contracted.n)
    logger.debug("contracted (%d, %d) into %d, order %d", s_last, t_last, r, contracted.n)

    sub_paths = _contract_and_splice(
        contracted,
        [relabel[s] for s in sources[:-1]],
        [relabel[t] for t in sinks[:-1]]
    )

    host = next(index for index, path in enumerate(sub_paths) if r in path)
    position = _split_at(sub_paths[host], r)

    lifted = [[lift[v] for v in path] for path in sub_paths]
    host_path = lifted[host]
    lifted[host] = host_path[:position] + [t_last]
    lifted.append([s_last] + host_path[position + 1:])
    return lifted


def unpaired_mtm_cover_tight(digraph: Digraph, sources: Sequence[int], sinks: Sequence[int]) -> PathCover:
    """Order 2k: every path is a single S->T arc taken from a perfect matching."""
    spec = _validated(digraph, unpaired_spec(sources, sinks))
    n, k = digraph.n, spec.k
    _require(n == 2 * k, "order n = 2k", f"n = {n}, k = {k}")
    delta0 = min_semi_degree(digraph)
    threshold = tight_threshold(k)
    _require(delta0 >= threshold, "min semi-degree >= ceil(3k/2) - 1", f"{delta0} < {threshold}")

    top = sorted(spec.sources)
    sink_set = set(spec.sinks)
    bipartite = nx.Graph()
    bipartite.add_nodes_from(top, bipartite=0)
    bipartite.add_nodes_from(sorted(sink_set), bipartite=1)
    bipartite.add_edges_from(
        (s, t) for s in top for t in sorted(digraph.out_neighbors[s]) if t in sink_set
    )
    matching = nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=top)

    unmatched = [s for s in top if s not in matching]
    if unmatched:
        raise ConstructionDefect(f"matching leaves sources {unmatched} unmatched")

    return _accepted(digraph, spec, [(s, matching[s]) for s in spec.sources])


def balanced_bipartite_cover(m: int, sources: Sequence[int], sinks: Sequence[int]) -> PathCover:
    """Cover of the complete bipartite digraph on X = 0..m-1, Y = m..2m-1 by two matchings."""
    _require(m >= 2, "m >= 2", f"m = {m}")
    digraph = complete_bipartite_digraph(m, m)
    spec = _validated(digraph, unpaired_spec(sources, sinks))
    _require(spec.k == m, "|S| = |T| = m", f"|S| = {spec.k}, m = {m}")

    sources_x = sorted(s for s in spec.sources if s < m)
    sources_y = sorted(s for s in spec.sources if s >= m)
    sinks_x = sorted(t for t in spec.sinks if t < m)
    sinks_y = sorted(t for t in spec.sinks if t >= m)
    if len(sources_x) != len(sinks_y) or len(sources_y) != len(sinks_x):
        raise ConstructionDefect("side counts of S and T do not balance")

    partner = dict(zip(sources_x, sinks_y))
    partner.update(zip(sources_y, sinks_x))
    return _accepted(digraph, spec, [(s, partner[s]) for s in spec.sources])


def paired_two_cover(digraph: Digraph, s1: int, s2: int, t1: int, t2: int) -> PathCover:
    spec = _validated(digraph, paired_spec((s1, s2), (t1, t2)))
    n = digraph.n
    ore = ore_minimum(digraph)
    _require(ore >= paired_two_ore_threshold(n), "d+(x) + d-(y) >= n + 2 for every non-arc xy", f"ore minimum {ore}, n = {n}")

    contracted, w, relabel = contract_pair(digraph, s2, t1)
    lift = invert_relabel(relabel, contracted.n)
    path = _hamiltonian(contracted, relabel[s1], relabel[t2])
    position = _split_at(path, w)

    first = [lift[v] for v in path[:position]] + [t1]
    second = [s2] + [lift[v] for v in path[position + 1:]]
    return _accepted(digraph, spec, [first, second])


def one_to_many_cover(digraph: Digraph, s: int, sinks: Sequence[int]) -> PathCover:
    spec = _validated(digraph, one_to_many_spec(s, sinks))
    n, k = digraph.n, spec.k
    _require(k >= 2, "k >= 2", f"k = {k}")
    _require(n >= 3 * k, "order n >= 3k", f"n = {n}, k = {k}")
    delta0 = min_semi_degree(digraph)
    threshold = one_to_many_threshold(n, k)
    _require(delta0 >= threshold, "min semi-degree >= ceil((n+k)/2)", f"{delta0} < {threshold}")

    sink_set = set(spec.sinks)
    helpers = sorted(v for v in digraph.out_neighbors[s] if v not in sink_set)
    if len(helpers) < k - 1:
        raise ConstructionDefect(f"only {len(helpers)} out-neighbours of {s} outside T")

    fan = unpaired_mtm_cover(digraph, [s] + helpers[:k - 1], list(spec.sinks))
    paths = [list(fan.paths[0])] + [[s] + list(path) for path in fan.paths[1:]]

    order = {t: index for index, t in enumerate(spec.sinks)}
    paths.sort(key=lambda path: order[path[-1]])
    return _accepted(digraph, spec, paths)


def one_to_one_cover(digraph: Digraph, s: int, t: int, k: int) -> PathCover:
    spec = _validated(digraph, one_to_one_spec(s, t, k))
    n = digraph.n
    _require(k >= 2, "k >= 2", f"k = {k}")
    _require(n >= k + 1, "order n >= k + 1", f"n = {n}, k = {k}")
    delta0 = min_semi_degree(digraph)
    threshold = one_to_one_threshold(n, k)
    _require(delta0 >= threshold, "min semi-degree >= ceil((n+k-1)/2)", f"{delta0} < {threshold}")

    return _accepted(digraph, spec, _peel_common_neighbours(digraph, s, t, k))


def _peel_common_neighbours(digraph: Digraph, s: int, t: int, k: int) -> List[List[int]]:
    if k == 2:
        return _two_internally_disjoint_paths(digraph, s, t)

    common = sorted(digraph.out_neighbors[s] & digraph.in_neighbors[t])
    if not common:
        raise ConstructionDefect(f"{s} and {t} have no common out/in neighbour")
    h = common[0]

    reduced, relabel = delete_vertex(digraph, h)
    lift = invert_relabel(relabel, reduced.n)
    sub_paths = _peel_common_neighbours(reduced, relabel[s], relabel[t], k - 1)
    return [[lift[v] for v in path] for path in sub_paths] + [[s, h, t]]


def _two_internally_disjoint_paths(digraph: Digraph, s: int, t: int) -> List[List[int]]:
    path = _hamiltonian(digraph, s, t)
    position = {v: index for index, v in enumerate(path)}

    predecessors_of_out = {path[position[v] - 1] for v in digraph.out_neighbors[s]}
    crossing = sorted(predecessors_of_out & digraph.in_neighbors[t])
    if len(crossing) < 2:
        raise ConstructionDefect(f"only {len(crossing)} crossing vertices on the Hamiltonian path, expected >= 2")

    w = crossing[0]
    index = position[w]
    # s w+ P t and s P w t; w = s yields the pair {P, [s, t]}
    return [[s] + path[index + 1:], path[:index + 1] + [t]]


def solve_constructive(digraph: Digraph, spec: CoverSpec) -> PathCover:
    """Route a spec to the solver whose theorem covers it."""
    _validated(digraph, spec)
    tag, k = spec.tag, spec.k

    if tag == CoverTag.UNPAIRED_MTM or (tag == CoverTag.PAIRED_MTM and k == 1):
        if digraph.n == 2 * k:
            cover = unpaired_mtm_cover_tight(digraph, spec.sources, spec.sinks)
        else:
            cover = unpaired_mtm_cover(digraph, spec.sources, spec.sinks)
        return _accepted(digraph, spec, cover.paths)

    if tag == CoverTag.PAIRED_MTM:
        _require(k == 2, "paired covers are constructed for k = 2 only", f"k = {k}")
        (s1, s2), (t1, t2) = spec.sources, spec.sinks
        return paired_two_cover(digraph, s1, s2, t1, t2)

    if tag == CoverTag.ONE_TO_MANY:
        return one_to_many_cover(digraph, spec.sources[0], spec.sinks)

    return one_to_one_cover(digraph, spec.sources[0], spec.sinks[0], k)
