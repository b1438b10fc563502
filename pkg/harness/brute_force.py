"""
Independent cover oracle for tiny digraphs: enumerate every ordering of the
vertices not shared between paths, cut it into k blocks, and hand each
candidate to verify_cover. Shares nothing with app.exact except the
acceptance test, so the two can be checked against each other.
"""

from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterator, List, Optional, Sequence

from app.digraph import Digraph
from app.errors import CoverSpecError
from app.schemas import CoverSpec, CoverTag, PathCover
from app.verification import validate_spec, verify_cover


def _blocks(sequence: Sequence[int], cuts: Sequence[int]) -> List[List[int]]:
    bounds = [0, *cuts, len(sequence)]
    return [list(sequence[a:b]) for a, b in zip(bounds, bounds[1:])]


def _candidates(digraph: Digraph, spec: CoverSpec) -> Iterator[List[List[int]]]:
    k = spec.k
    tag = spec.tag

    if tag.is_many_to_many:
        for order in permutations(range(digraph.n)):
            for cuts in combinations(range(1, digraph.n), k - 1):
                yield _blocks(order, cuts)

    elif tag == CoverTag.ONE_TO_MANY:
        s = spec.sources[0]
        rest = [v for v in digraph.vertices() if v != s]
        for order in permutations(rest):
            for cuts in combinations(range(1, len(rest)), k - 1):
                yield [[s] + block for block in _blocks(order, cuts)]

    else:
        s, t = spec.sources[0], spec.sinks[0]
        rest = [v for v in digraph.vertices() if v not in (s, t)]
        # blocks may be empty here: an empty block is the arc path s -> t
        for order in permutations(rest):
            for cuts in combinations_with_replacement(range(len(rest) + 1), k - 1):
                yield [[s] + block + [t] for block in _blocks(order, cuts)]


def brute_force_cover(digraph: Digraph, spec: CoverSpec) -> Optional[PathCover]:
    violations = validate_spec(digraph, spec)
    if violations:
        raise CoverSpecError(violations)

    for paths in _candidates(digraph, spec):
        cover = PathCover(paths)
        if verify_cover(digraph, spec, cover):
            return cover
    return None
