import sys
from itertools import permutations
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import pytest

from app.digraph import Digraph, complete_bipartite_digraph, complete_digraph, ore_minimum
from app.errors import CoverSpecError, PreconditionError
from app.exact import (
    OracleBudget,
    admissible_specs,
    count_admissible_specs,
    exists_cover,
    find_cover_exact,
    find_hamiltonian_path,
    is_k_coverable,
)
from app.schemas import (
    CoverKind,
    CoverTag,
    PathCover,
    VerdictStatus,
    one_to_many_spec,
    one_to_one_spec,
    paired_spec,
    unpaired_spec,
)
from app.verification import verify_cover
from harness.sampling import all_digraphs


class TestFindCover:

    def test_unpaired_cover_on_complete_digraph(self):
        digraph = complete_digraph(6)
        spec = unpaired_spec((0, 1), (2, 3))
        cover = find_cover_exact(digraph, spec)
        assert cover is not None
        assert verify_cover(digraph, spec, cover)

    def test_every_kind_on_complete_digraph(self):
        digraph = complete_digraph(5)
        for spec in (
            paired_spec((0, 1), (3, 2)),
            one_to_many_spec(4, (0, 1)),
            one_to_one_spec(0, 4, 3),
        ):
            cover = find_cover_exact(digraph, spec)
            assert cover is not None, spec
            assert verify_cover(digraph, spec, cover)

    def test_one_to_one_on_triangle(self):
        cover = find_cover_exact(complete_digraph(3), one_to_one_spec(0, 2, 2))
        assert sorted(cover.paths) == [(0, 1, 2), (0, 2)]

    def test_no_cover_when_parity_blocks_it(self):
        """In K<->3,3 an X->X path and an X->Y path cannot split 3 + 3 vertices."""
        digraph = complete_bipartite_digraph(3, 3)
        assert find_cover_exact(digraph, unpaired_spec((0, 1), (2, 3))) is None

    def test_invalid_spec_raises(self):
        with pytest.raises(CoverSpecError):
            find_cover_exact(complete_digraph(4), unpaired_spec((0, 1), (1, 2)))


class TestHamiltonianPath:

    def test_directed_path(self):
        digraph = Digraph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
        assert find_hamiltonian_path(digraph, 0, 3) == (0, 1, 2, 3)
        assert find_hamiltonian_path(digraph, 3, 0) is None

    def test_lowest_labels_first(self):
        assert find_hamiltonian_path(complete_digraph(4), 0, 3) == (0, 1, 2, 3)

    @pytest.mark.parametrize("n", [3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_ore_n_plus_one_is_hamiltonian_connected(self, n):
        """Every digraph with Ore minimum >= n + 1 has an s-t Hamiltonian path for all s != t."""
        # Ore >= n + 1 forces both semi-degrees >= 2 once n >= 3.
        qualifying = [d for d in all_digraphs(n, min_delta=2) if ore_minimum(d) >= n + 1]
        assert qualifying
        for digraph in qualifying:
            for s, t in permutations(range(n), 2):
                path = find_hamiltonian_path(digraph, s, t)
                assert path is not None, (digraph.to_dict(), s, t)
                assert verify_cover(digraph, paired_spec((s,), (t,)), PathCover([list(path)]))


class TestAdmissibleSpecs:

    def test_count_matches_enumeration(self):
        for kind in (
            CoverKind(CoverTag.UNPAIRED_MTM, 2),
            CoverKind(CoverTag.PAIRED_MTM, 2),
            CoverKind(CoverTag.ONE_TO_MANY, 2),
            CoverKind(CoverTag.ONE_TO_ONE, 2),
        ):
            assert count_admissible_specs(6, kind) == len(list(admissible_specs(6, kind)))

    def test_unpaired_count(self):
        assert count_admissible_specs(6, CoverKind(CoverTag.UNPAIRED_MTM, 2)) == 90

    def test_lexicographic_order(self):
        specs = list(admissible_specs(4, CoverKind(CoverTag.UNPAIRED_MTM, 1)))
        assert (specs[0].sources, specs[0].sinks) == ((0,), (1,))
        assert (specs[-1].sources, specs[-1].sinks) == ((3,), (2,))


class TestCoverability:

    def test_balanced_bipartite_is_not_2_coverable(self):
        """The first failing choice in lexicographic order is the witness."""
        verdict = is_k_coverable(complete_bipartite_digraph(3, 3), CoverKind(CoverTag.UNPAIRED_MTM, 2))
        assert verdict.status == VerdictStatus.PROVEN_FALSE
        assert verdict.witness.sources == (0, 1)
        assert verdict.witness.sinks == (2, 3)
        assert verdict.checked == 1

    def test_balanced_bipartite_refutes_mixed_sources(self):
        """A source on each side with both sinks in Y needs one more vertex of Y than of X."""
        digraph = complete_bipartite_digraph(3, 3)
        assert not exists_cover(digraph, unpaired_spec((0, 3), (4, 5)))
        assert find_cover_exact(digraph, unpaired_spec((0, 3), (1, 4))) is not None

    def test_complete_digraph_is_one_to_one_2_coverable(self):
        verdict = is_k_coverable(complete_digraph(4), CoverKind(CoverTag.ONE_TO_ONE, 2))
        assert verdict.status == VerdictStatus.PROVEN_TRUE
        assert verdict.checked == verdict.total == 12
        assert "witness" not in verdict.to_dict()

    def test_sampling_beyond_cap(self):
        budget = OracleBudget(cap=1, samples=5, seed=3)
        verdict = is_k_coverable(complete_digraph(5), CoverKind(CoverTag.UNPAIRED_MTM, 1), budget)
        assert verdict.status == VerdictStatus.SAMPLED_TRUE
        assert verdict.checked == 5

    def test_order_too_small(self):
        with pytest.raises(PreconditionError, match="order too small"):
            is_k_coverable(complete_digraph(3), CoverKind(CoverTag.UNPAIRED_MTM, 2))
