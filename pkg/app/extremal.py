"""
Sharpness families: digraphs one step below a cover theorem's degree bound,
each paired with a source/sink choice that admits no cover.

Vertex layout is fixed per family. Glued cliques list the A-private block,
then the overlap, then the B-private block; full joins list the clique part
first; the paired Ore-sharp digraph lists A-private, z, B-private, then s1, s2, t1, t2.
Where the construction only fixes S and T up to symmetry the lexicographically
least choice is taken.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from app.constructive import ceil_half
from app.digraph import Digraph, complete_digraph, empty_digraph, full_join, glued_cliques
from app.errors import DigraphError
from app.schemas import CoverSpec, one_to_many_spec, one_to_one_spec, paired_spec, unpaired_spec

logger = logging.getLogger(__name__)


class Family(str, enum.Enum):
    UNPAIRED_SHARP_EVEN = "unpaired-sharp-even"
    UNPAIRED_SHARP_ODD = "unpaired-sharp-odd"
    TIGHT_SHARP_ODD_K = "tight-sharp-odd-k"
    TIGHT_SHARP_EVEN_K = "tight-sharp-even-k"
    PAIRED2_FIGURE1 = "paired2-figure1"
    ONE_TO_MANY_SHARP_ODD = "one-to-many-sharp-odd"
    ONE_TO_MANY_SHARP_EVEN = "one-to-many-sharp-even"
    ONE_TO_ONE_SHARP_ODD = "one-to-one-sharp-odd"
    ONE_TO_ONE_SHARP_EVEN = "one-to-one-sharp-even"


@dataclass
class ExtremalWitness:
    digraph: Digraph
    claimed_delta0: int
    spec: CoverSpec
    family: Family
    claimed_ore_min: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        result = {
            "family": self.family.value,
            "graph": self.digraph.to_dict(),
            "spec": self.spec.to_dict(),
            "claimed_delta0": self.claimed_delta0
        }

        if self.claimed_ore_min is not None:
            result["claimed_ore_min"] = self.claimed_ore_min

        if self.notes:
            result["notes"] = list(self.notes)

        return result


def _refuse(message: str) -> None:
    raise DigraphError(message)


def gen_unpaired_sharp(n: int, k: int) -> ExtremalWitness:
    if k < 1:
        _refuse(f"k must be >= 1, got {k}")
    notes = []

    if (n + k) % 2 == 0:
        if n < 3 * k:
            _refuse(f"n + k even needs n >= 3k = {3 * k}, got n = {n}")
        if n == 3 * k:
            notes.append("n = 3k lies below the stated range n >= 3k + 1; the construction still applies")
        size = (n + k) // 2
        digraph = glued_cliques(size, size, k)
        sources = list(range(k))
        sinks = list(range(size - k, size))
        family = Family.UNPAIRED_SHARP_EVEN
    else:
        if n < 3 * k + 1:
            _refuse(f"n + k odd needs n >= 3k + 1 = {3 * k + 1}, got n = {n}")
        clique = (n + k - 1) // 2
        digraph = full_join(complete_digraph(clique), empty_digraph((n - k + 1) // 2))
        sources = list(range(k))
        sinks = list(range(k, 2 * k))
        family = Family.UNPAIRED_SHARP_ODD

    return ExtremalWitness(
        digraph=digraph,
        claimed_delta0=ceil_half(n + k) - 1,
        spec=unpaired_spec(sources, sinks),
        family=family,
        notes=notes
    )


def gen_tight_sharp(k: int) -> ExtremalWitness:
    if k < 2:
        _refuse(f"k must be >= 2, got {k}")
    notes = []

    if k % 2 == 1:
        size, overlap = (3 * k - 1) // 2, k - 1
        family = Family.TIGHT_SHARP_ODD_K
    else:
        size, overlap = 3 * k // 2 - 1, k - 2
        family = Family.TIGHT_SHARP_EVEN_K
        if overlap == 0:
            notes.append("overlap is empty: the two cliques are disjoint")

    digraph = glued_cliques(size, size, overlap)
    private = size - overlap
    a_private = list(range(private))
    shared = list(range(private, size))
    b_private = list(range(size, 2 * k))
    half = overlap // 2

    return ExtremalWitness(
        digraph=digraph,
        claimed_delta0=ceil_half(3 * k) - 2,
        spec=unpaired_spec(a_private + shared[:half], sorted(b_private + shared[half:])),
        family=family,
        notes=notes
    )


def ore_sharp_digraph(n: int, m: int) -> Digraph:
    if n < 9:
        _refuse(f"n must be >= 9, got {n}")
    if not 3 <= m <= n - 6:
        _refuse(f"m must lie in 3..{n - 6}, got {m}")

    b_size = n - m - 3
    a_rest = list(range(m - 1))
    z = m - 1
    b_rest = list(range(m, m + b_size - 1))
    s1, s2, t1, t2 = range(n - 4, n)
    side = [s1, s2, t1, t2]

    arcs = set()

    def both(u: int, v: int) -> None:
        arcs.add((u, v))
        arcs.add((v, u))

    for group in (a_rest + [z], b_rest + [z]):
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                both(u, v)
    for i, u in enumerate(side):
        for v in side[i + 1:]:
            both(u, v)
    arcs -= {(s1, t1), (s2, t2)}
    for u in side:
        both(z, u)
    for u in a_rest:
        both(s1, u)
        both(t2, u)
        arcs.add((t1, u))
        arcs.add((u, s2))
    for u in b_rest:
        both(t1, u)
        both(s2, u)
        arcs.add((t2, u))
        arcs.add((u, s1))

    return Digraph(n, frozenset(arcs))


def gen_paired2_figure1(n: int, m: int) -> ExtremalWitness:
    digraph = ore_sharp_digraph(n, m)
    s1, s2, t1, t2 = range(n - 4, n)
    return ExtremalWitness(
        digraph=digraph,
        claimed_delta0=min(m + 2, n - m - 1),
        spec=paired_spec((s1, s2), (t1, t2)),
        family=Family.PAIRED2_FIGURE1,
        claimed_ore_min=n + 1
    )


def gen_one_to_many_sharp(n: int, k: int) -> ExtremalWitness:
    if k < 2:
        _refuse(f"k must be >= 2, got {k}")
    if n < k + 2:
        _refuse(f"n must be >= k + 2 = {k + 2}, got n = {n}")

    if (n + k) % 2 == 1:
        size, overlap = (n + k - 1) // 2, k - 1
        digraph = glued_cliques(size, size, overlap)
        source = 0
        sinks = list(range(size - overlap, size - overlap + k))
        family = Family.ONE_TO_MANY_SHARP_ODD
    else:
        clique = (n + k) // 2 - 1
        digraph = full_join(complete_digraph(clique), empty_digraph((n - k) // 2 + 1))
        source = clique
        sinks = list(range(k))
        family = Family.ONE_TO_MANY_SHARP_EVEN

    return ExtremalWitness(
        digraph=digraph,
        claimed_delta0=ceil_half(n + k - 1) - 1,
        spec=one_to_many_spec(source, sinks),
        family=family
    )


def gen_one_to_one_sharp(n: int, k: int) -> ExtremalWitness:
    if k < 2:
        _refuse(f"k must be >= 2, got {k}")
    if n < k + 1:
        _refuse(f"n must be >= k + 1 = {k + 1}, got n = {n}")

    if (n + k) % 2 == 1:
        size, overlap = (n + k - 1) // 2, k - 1
        family = Family.ONE_TO_ONE_SHARP_ODD
    else:
        size, overlap = (n + k) // 2 - 1, k - 2
        family = Family.ONE_TO_ONE_SHARP_EVEN

    digraph = glued_cliques(size, size, overlap)
    return ExtremalWitness(
        digraph=digraph,
        claimed_delta0=ceil_half(n + k) - 2,
        spec=one_to_one_spec(0, size, k),
        family=family
    )


# Smallest parameters each family is exercised at by default
DEFAULT_PARAMS: Dict[Family, Dict[str, int]] = {
    Family.UNPAIRED_SHARP_EVEN: {"n": 10, "k": 2},
    Family.UNPAIRED_SHARP_ODD: {"n": 11, "k": 2},
    Family.TIGHT_SHARP_ODD_K: {"k": 3},
    Family.TIGHT_SHARP_EVEN_K: {"k": 2},
    Family.PAIRED2_FIGURE1: {"n": 9, "m": 3},
    Family.ONE_TO_MANY_SHARP_ODD: {"n": 7, "k": 2},
    Family.ONE_TO_MANY_SHARP_EVEN: {"n": 6, "k": 2},
    Family.ONE_TO_ONE_SHARP_ODD: {"n": 5, "k": 2},
    Family.ONE_TO_ONE_SHARP_EVEN: {"n": 6, "k": 2},
}


def generate(family: Family, n: Optional[int] = None, k: Optional[int] = None, m: Optional[int] = None) -> ExtremalWitness:
    """Build a family member, checking that the requested parity matches the family."""
    family = Family(family)
    defaults = DEFAULT_PARAMS[family]
    n = defaults.get("n") if n is None else n
    k = defaults.get("k") if k is None else k
    m = defaults.get("m") if m is None else m

    if family == Family.PAIRED2_FIGURE1:
        witness = gen_paired2_figure1(n, m)
    elif family in (Family.TIGHT_SHARP_ODD_K, Family.TIGHT_SHARP_EVEN_K):
        witness = gen_tight_sharp(k)
    elif family in (Family.UNPAIRED_SHARP_EVEN, Family.UNPAIRED_SHARP_ODD):
        witness = gen_unpaired_sharp(n, k)
    elif family in (Family.ONE_TO_MANY_SHARP_ODD, Family.ONE_TO_MANY_SHARP_EVEN):
        witness = gen_one_to_many_sharp(n, k)
    else:
        witness = gen_one_to_one_sharp(n, k)

    if witness.family != family:
        _refuse(f"parameters n = {n}, k = {k} build {witness.family.value}, not {family.value}")
    logger.debug("generated %s of order %d", family.value, witness.digraph.n)
    return witness
