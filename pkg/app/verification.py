from collections import Counter
from typing import List

from app.digraph import Digraph
from app.errors import CoverSpecError
from app.schemas import CoverCheck, CoverSpec, CoverTag, PathCover, RejectReason


def validate_spec(digraph: Digraph, spec: CoverSpec) -> List[str]:
    """Return every violation of the spec's shape rules; an empty list means the spec is valid."""
    violations = []
    k = spec.k
    sources, sinks = list(spec.sources), list(spec.sinks)

    for v in sources + sinks:
        if not (isinstance(v, int) and 0 <= v < digraph.n):
            violations.append(f"vertex {v!r} is not in the digraph (order {digraph.n})")

    if len(set(sources)) != len(sources):
        violations.append("source list contains a repeated vertex")
    if len(set(sinks)) != len(sinks):
        violations.append("sink list contains a repeated vertex")

    if spec.tag.is_many_to_many:
        if len(sources) != k or len(sinks) != k:
            violations.append(f"{spec.tag.value} needs |S| = |T| = k = {k}, got |S| = {len(sources)}, |T| = {len(sinks)}")
        shared = set(sources) & set(sinks)
        if shared:
            violations.append(f"source and sink sets intersect in {sorted(shared)}")

    elif spec.tag == CoverTag.ONE_TO_MANY:
        if len(sources) != 1:
            violations.append(f"one-to-many needs exactly one source, got {len(sources)}")
        if len(sinks) != k:
            violations.append(f"one-to-many needs |T| = k = {k}, got {len(sinks)}")
        if sources and sources[0] in sinks:
            violations.append(f"source {sources[0]} is also a sink")

    else:
        if len(sources) != 1 or len(sinks) != 1:
            violations.append("one-to-one needs exactly one source and one sink")
        elif sources[0] == sinks[0]:
            violations.append(f"source and sink coincide (s = t = {sources[0]})")

    return violations


def _reject(reason: RejectReason, detail: str) -> CoverCheck:
    return CoverCheck(accepted=False, reason=reason, detail=detail)


def verify_cover(digraph: Digraph, spec: CoverSpec, cover: PathCover) -> CoverCheck:
    """
    Ground-truth acceptance test for all four cover kinds. Checks, in order:
    path count, arcs, endpoint discipline, disjointness, coverage.
    Raises CoverSpecError when the spec itself is invalid.
    """
    violations = validate_spec(digraph, spec)
    if violations:
        raise CoverSpecError(violations)

    paths = cover.paths
    k = spec.k

    if len(paths) != k:
        return _reject(RejectReason.WRONG_COUNT, f"expected {k} paths, got {len(paths)}")

    for index, path in enumerate(paths):
        if not path:
            return _reject(RejectReason.WRONG_COUNT, f"path {index} is empty")
        for v in path:
            if not (isinstance(v, int) and 0 <= v < digraph.n):
                return _reject(RejectReason.BAD_ARC, f"path {index} visits {v!r}, not a vertex")
        for u, v in zip(path, path[1:]):
            if not digraph.has_arc(u, v):
                return _reject(RejectReason.BAD_ARC, f"path {index} uses {u}->{v}, not an arc")
        if len(set(path)) != len(path):
            return _reject(RejectReason.OVERLAP, f"path {index} repeats a vertex")

    starts = [path[0] for path in paths]
    ends = [path[-1] for path in paths]
    tag = spec.tag

    if tag == CoverTag.PAIRED_MTM:
        for index, (s, t) in enumerate(zip(spec.sources, spec.sinks)):
            if starts[index] != s or ends[index] != t:
                return _reject(
                    RejectReason.BAD_ENDPOINT,
                    f"path {index} runs {starts[index]}->{ends[index]}, expected {s}->{t}"
                )
    elif tag == CoverTag.UNPAIRED_MTM:
        for index, s in enumerate(spec.sources):
            if starts[index] != s:
                return _reject(RejectReason.BAD_ENDPOINT, f"path {index} starts at {starts[index]}, expected {s}")
        # T has distinct vertices, so a bijection onto T is multiset equality
        if Counter(ends) != Counter(spec.sinks):
            return _reject(RejectReason.BAD_ENDPOINT, f"path ends {sorted(ends)} are not a permutation of T")
    elif tag == CoverTag.ONE_TO_MANY:
        s = spec.sources[0]
        if any(start != s for start in starts):
            return _reject(RejectReason.BAD_ENDPOINT, f"every path must start at {s}")
        if Counter(ends) != Counter(spec.sinks):
            return _reject(RejectReason.BAD_ENDPOINT, f"path ends {sorted(ends)} do not use each sink exactly once")
    else:
        s, t = spec.sources[0], spec.sinks[0]
        for index in range(k):
            if starts[index] != s or ends[index] != t:
                return _reject(
                    RejectReason.BAD_ENDPOINT,
                    f"path {index} runs {starts[index]}->{ends[index]}, expected {s}->{t}"
                )

    if tag.is_many_to_many:
        shared_ok = set()
    elif tag == CoverTag.ONE_TO_MANY:
        shared_ok = {spec.sources[0]}
    else:
        shared_ok = {spec.sources[0], spec.sinks[0]}

    seen = Counter(v for path in paths for v in path if v not in shared_ok)
    repeated = sorted(v for v, count in seen.items() if count > 1)
    if repeated:
        return _reject(RejectReason.OVERLAP, f"vertices {repeated} lie on more than one path")

    if tag == CoverTag.ONE_TO_ONE and sum(1 for path in paths if len(path) == 2) > 1:
        return _reject(RejectReason.OVERLAP, "the arc path s->t appears more than once")

    covered = set(seen) | (shared_ok if paths else set())
    missing = sorted(set(digraph.vertices()) - covered)
    if missing:
        return _reject(RejectReason.UNCOVERED, f"vertices {missing} are not covered")

    return CoverCheck(accepted=True)
