"""
Exact existence oracle for all four cover kinds.

Depth-first extension of partial path systems over bitmask adjacency. At each
node the open path with the fewest continuations is extended, candidates in
ascending label order. Two admissible prunings keep the search exact:

- every open path must still reach its target through free vertices, and every
  free vertex must be reachable from some open head (and have a usable successor);
- for unpaired covers every unclaimed sink must be reachable by some open path.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, perm
from typing import Iterator, List, Optional, Tuple

from app.config import DEFAULT_SAMPLE_COUNT, DEFAULT_SEED, ORACLE_CAP
from app.digraph import Digraph
from app.errors import ConstructionDefect, CoverSpecError, PreconditionError
from app.schemas import (
    CoverabilityVerdict,
    CoverKind,
    CoverSpec,
    CoverTag,
    DiPath,
    PathCover,
    VerdictStatus,
    one_to_one_spec,
)
from app.verification import validate_spec, verify_cover

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleBudget:
    cap: int = ORACLE_CAP
    samples: int = DEFAULT_SAMPLE_COUNT
    seed: int = DEFAULT_SEED


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class _PathSystemSearch:
    def __init__(self, digraph: Digraph, spec: CoverSpec, heads: List[int], paths: List[List[int]],
                 open_paths: List[bool], used: int):
        self.out = digraph.out_masks
        self.full = (1 << digraph.n) - 1
        self.tag = spec.tag
        self.k = spec.k
        self.heads = heads
        self.paths = paths
        self.open = open_paths
        self.used = used

        if self.tag == CoverTag.ONE_TO_ONE:
            self.fixed_targets = [1 << spec.sinks[0]] * self.k
        elif self.tag == CoverTag.UNPAIRED_MTM:
            self.fixed_targets = None
        else:
            self.fixed_targets = [1 << t for t in spec.sinks]

        self.unclaimed = 0
        for t in spec.sinks:
            self.unclaimed |= 1 << t

    def _target(self, i: int) -> int:
        if self.fixed_targets is None:
            return self.unclaimed
        return self.fixed_targets[i]

    def _reach(self, head: int, free: int) -> Tuple[int, int]:
        out = self.out
        seen = 0
        ext = out[head]
        frontier = ext & free
        while frontier:
            seen |= frontier
            step = 0
            for v in _bits(frontier):
                step |= out[v]
            ext |= step
            frontier = step & free & ~seen
        return seen, ext

    def run(self) -> bool:
        out = self.out
        free = self.full & ~self.used
        open_indices = [i for i in range(self.k) if self.open[i]]
        if not open_indices:
            return free == 0

        reach_union = 0
        ext_union = 0
        open_targets = 0
        best, best_count = -1, None
        for i in open_indices:
            head = self.heads[i]
            target = self._target(i)
            seen, ext = self._reach(head, free)
            if not ext & target:
                return False
            reach_union |= seen
            ext_union |= ext
            open_targets |= target
            count = _popcount(out[head] & (free | target))
            if best_count is None or count < best_count:
                best, best_count = i, count

        if reach_union & free != free:
            return False
        if self.tag == CoverTag.UNPAIRED_MTM and ext_union & self.unclaimed != self.unclaimed:
            return False
        successors = free | open_targets
        for v in _bits(free):
            if not out[v] & successors:
                return False

        i = best
        head = self.heads[i]
        target = self._target(i)
        for v in _bits(out[head] & (free | target)):
            bit = 1 << v
            self.paths[i].append(v)
            if bit & target:
                self.open[i] = False
                if self.tag == CoverTag.UNPAIRED_MTM:
                    self.unclaimed &= ~bit
                if self.run():
                    return True
                if self.tag == CoverTag.UNPAIRED_MTM:
                    self.unclaimed |= bit
                self.open[i] = True
            else:
                self.used |= bit
                self.heads[i] = v
                if self.run():
                    return True
                self.heads[i] = head
                self.used &= ~bit
            self.paths[i].pop()
        return False


def _mask_of(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _search_cover(digraph: Digraph, spec: CoverSpec) -> Optional[PathCover]:
    k = spec.k
    tag = spec.tag

    if tag.is_many_to_many:
        search = _PathSystemSearch(
            digraph, spec,
            heads=list(spec.sources),
            paths=[[s] for s in spec.sources],
            open_paths=[True] * k,
            used=_mask_of(spec.sources) | _mask_of(spec.sinks)
        )
        return PathCover(search.paths) if search.run() else None

    s = spec.sources[0]
    if tag == CoverTag.ONE_TO_MANY:
        search = _PathSystemSearch(
            digraph, spec,
            heads=[s] * k,
            paths=[[s] for _ in range(k)],
            open_paths=[True] * k,
            used=_mask_of(spec.sources) | _mask_of(spec.sinks)
        )
        return PathCover(search.paths) if search.run() else None

    # One-to-one paths are interchangeable: fix their first steps as a sorted combination
    t = spec.sinks[0]
    first_steps = sorted(digraph.out_neighbors[s])
    for combo in combinations(first_steps, k):
        heads = list(combo)
        paths = [[s, v] for v in combo]
        open_paths = [v != t for v in combo]
        search = _PathSystemSearch(
            digraph, spec,
            heads=heads,
            paths=paths,
            open_paths=open_paths,
            used=_mask_of((s, t)) | _mask_of(combo)
        )
        if search.run():
            return PathCover(search.paths)
    return None


def find_cover_exact(digraph: Digraph, spec: CoverSpec) -> Optional[PathCover]:
    violations = validate_spec(digraph, spec)
    if violations:
        raise CoverSpecError(violations)

    cover = _search_cover(digraph, spec)
    if cover is not None:
        check = verify_cover(digraph, spec, cover)
        if not check:
            raise ConstructionDefect(f"exact search returned a rejected cover: {check.detail}")
    return cover


def exists_cover(digraph: Digraph, spec: CoverSpec) -> bool:
    return find_cover_exact(digraph, spec) is not None


def find_hamiltonian_path(digraph: Digraph, s: int, t: int) -> Optional[DiPath]:
    cover = find_cover_exact(digraph, one_to_one_spec(s, t, 1))
    return None if cover is None else cover.paths[0]


def count_admissible_specs(n: int, kind: CoverKind) -> int:
    k = kind.k
    if kind.tag == CoverTag.UNPAIRED_MTM:
        return comb(n, k) * comb(n - k, k)
    if kind.tag == CoverTag.PAIRED_MTM:
        return comb(n, k) * perm(n - k, k)
    if kind.tag == CoverTag.ONE_TO_MANY:
        return n * comb(n - 1, k)
    return n * (n - 1)


def admissible_specs(n: int, kind: CoverKind) -> Iterator[CoverSpec]:
    """Every admissible (S,T) for the kind, in lexicographic order."""
    k = kind.k
    vertices = range(n)
    if kind.tag.is_many_to_many:
        for sources in combinations(vertices, k):
            rest = [v for v in vertices if v not in sources]
            sink_choices = combinations(rest, k) if kind.tag == CoverTag.UNPAIRED_MTM else permutations(rest, k)
            for sinks in sink_choices:
                yield CoverSpec(kind, sources, sinks)
    elif kind.tag == CoverTag.ONE_TO_MANY:
        for s in vertices:
            rest = [v for v in vertices if v != s]
            for sinks in combinations(rest, k):
                yield CoverSpec(kind, (s,), sinks)
    else:
        for s, t in permutations(vertices, 2):
            yield CoverSpec(kind, (s,), (t,))


def sample_spec(n: int, kind: CoverKind, rng: random.Random) -> CoverSpec:
    k = kind.k
    if kind.tag == CoverTag.UNPAIRED_MTM:
        picked = rng.sample(range(n), 2 * k)
        return CoverSpec(kind, tuple(sorted(picked[:k])), tuple(sorted(picked[k:])))
    if kind.tag == CoverTag.PAIRED_MTM:
        picked = rng.sample(range(n), 2 * k)
        return CoverSpec(kind, tuple(picked[:k]), tuple(picked[k:]))
    if kind.tag == CoverTag.ONE_TO_MANY:
        picked = rng.sample(range(n), k + 1)
        return CoverSpec(kind, (picked[0],), tuple(sorted(picked[1:])))
    s, t = rng.sample(range(n), 2)
    return CoverSpec(kind, (s,), (t,))


def is_k_coverable(digraph: Digraph, kind: CoverKind, budget: OracleBudget = OracleBudget()) -> CoverabilityVerdict:
    n, k = digraph.n, kind.k
    if kind.tag.is_many_to_many and n < 2 * k:
        raise PreconditionError("order too small", f"{kind.tag.value} needs n >= 2k = {2 * k}, got n = {n}")
    if not kind.tag.is_many_to_many and n < k + 1:
        raise PreconditionError("order too small", f"{kind.tag.value} needs n >= k + 1 = {k + 1}, got n = {n}")

    total = count_admissible_specs(n, kind)
    exhaustive = total <= budget.cap
    if exhaustive:
        specs = admissible_specs(n, kind)
    else:
        rng = random.Random(budget.seed)
        specs = (sample_spec(n, kind, rng) for _ in range(budget.samples))

    checked = 0
    for spec in specs:
        checked += 1
        if not exists_cover(digraph, spec):
            logger.debug("%s not %d-coverable: witness S=%s T=%s", kind.tag.value, k, spec.sources, spec.sinks)
            return CoverabilityVerdict(VerdictStatus.PROVEN_FALSE, checked, total, witness=spec)

    status = VerdictStatus.PROVEN_TRUE if exhaustive else VerdictStatus.SAMPLED_TRUE
    return CoverabilityVerdict(status, checked, total)
