import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import pytest

import app.constructive as constructive
from app.constructive import (
    balanced_bipartite_cover,
    one_to_many_cover,
    one_to_one_cover,
    paired_two_cover,
    solve_constructive,
    unpaired_mtm_cover,
    unpaired_mtm_cover_tight,
)
from app.digraph import complete_digraph, glued_cliques
from app.errors import CoverSpecError, PreconditionError
from app.extremal import gen_paired2_figure1, gen_tight_sharp, gen_unpaired_sharp
from app.schemas import paired_spec, unpaired_spec
from app.verification import verify_cover


class TestUnpairedManyToMany:

    def test_two_paths_on_complete_digraph(self):
        digraph = complete_digraph(6)
        cover = unpaired_mtm_cover(digraph, (0, 1), (2, 3))
        assert verify_cover(digraph, unpaired_spec((0, 1), (2, 3)), cover)
        assert [path[0] for path in cover.paths] == [0, 1]

    def test_recursion_contracts_once_per_extra_path(self, mocker):
        """k paths are built from k - 1 contractions and one Hamiltonian path."""
        spy = mocker.spy(constructive, "contract_pair")
        unpaired_mtm_cover(complete_digraph(9), (0, 1, 2), (6, 7, 8))
        assert spy.call_count == 2

    def test_degree_below_bound(self):
        witness = gen_unpaired_sharp(10, 2)
        with pytest.raises(PreconditionError, match="min semi-degree"):
            unpaired_mtm_cover(witness.digraph, witness.spec.sources, witness.spec.sinks)

    def test_order_below_3k(self):
        with pytest.raises(PreconditionError, match="n >= 3k"):
            unpaired_mtm_cover(complete_digraph(5), (0, 1), (2, 3))

    def test_invalid_spec(self):
        with pytest.raises(CoverSpecError):
            unpaired_mtm_cover(complete_digraph(6), (0, 1), (1, 2))


class TestTightCase:

    def test_single_arc_paths(self):
        digraph = complete_digraph(4)
        cover = unpaired_mtm_cover_tight(digraph, (0, 1), (2, 3))
        assert all(len(path) == 2 for path in cover.paths)
        assert verify_cover(digraph, unpaired_spec((0, 1), (2, 3)), cover)

    def test_sharp_witness_fails_hypothesis(self):
        witness = gen_tight_sharp(3)
        with pytest.raises(PreconditionError):
            unpaired_mtm_cover_tight(witness.digraph, witness.spec.sources, witness.spec.sinks)

    def test_requires_order_2k(self):
        with pytest.raises(PreconditionError, match="n = 2k"):
            unpaired_mtm_cover_tight(complete_digraph(5), (0, 1), (2, 3))


class TestBalancedBipartite:

    def test_matchings_pair_sides(self):
        cover = balanced_bipartite_cover(3, (0, 1, 3), (2, 4, 5))
        assert [list(path) for path in cover.paths] == [[0, 4], [1, 5], [3, 2]]

    def test_all_sources_on_one_side(self):
        cover = balanced_bipartite_cover(2, (0, 1), (2, 3))
        assert [list(path) for path in cover.paths] == [[0, 2], [1, 3]]

    def test_requires_m_paths(self):
        with pytest.raises(PreconditionError):
            balanced_bipartite_cover(3, (0, 1), (3, 4))


class TestPairedTwo:

    def test_complete_digraph(self):
        digraph = complete_digraph(6)
        cover = paired_two_cover(digraph, 0, 1, 4, 5)
        assert verify_cover(digraph, paired_spec((0, 1), (4, 5)), cover)
        assert (cover.paths[0][0], cover.paths[0][-1]) == (0, 4)

    def test_ore_witness_is_below_the_ore_bound(self):
        witness = gen_paired2_figure1(9, 3)
        (s1, s2), (t1, t2) = witness.spec.sources, witness.spec.sinks
        with pytest.raises(PreconditionError, match="n \\+ 2"):
            paired_two_cover(witness.digraph, s1, s2, t1, t2)


class TestOneToMany:

    def test_paths_follow_sink_order(self):
        digraph = complete_digraph(6)
        cover = one_to_many_cover(digraph, 0, (5, 4))
        assert [path[-1] for path in cover.paths] == [5, 4]
        assert all(path[0] == 0 for path in cover.paths)

    def test_single_sink_is_rejected(self):
        with pytest.raises(PreconditionError, match="k >= 2"):
            one_to_many_cover(complete_digraph(6), 0, (5,))


class TestOneToOne:

    def test_triangle(self):
        cover = one_to_one_cover(complete_digraph(3), 0, 2, 2)
        assert [list(path) for path in cover.paths] == [[0, 1, 2], [0, 2]]

    def test_three_paths_on_k4(self):
        """h = 1 is peeled off as [0, 1, 3]; the rest comes from K<->3."""
        cover = one_to_one_cover(complete_digraph(4), 0, 3, 3)
        assert [list(path) for path in cover.paths] == [[0, 2, 3], [0, 3], [0, 1, 3]]

    def test_recursion_deletes_k_minus_2_vertices(self, mocker):
        spy = mocker.spy(constructive, "delete_vertex")
        one_to_one_cover(complete_digraph(6), 0, 5, 4)
        assert spy.call_count == 2

    def test_degree_below_bound(self):
        with pytest.raises(PreconditionError):
            one_to_one_cover(glued_cliques(3, 3, 1), 0, 3, 2)


class TestDispatch:

    def test_routes_tight_order(self, mocker):
        spy = mocker.spy(constructive, "unpaired_mtm_cover_tight")
        solve_constructive(complete_digraph(4), unpaired_spec((0, 1), (2, 3)))
        assert spy.call_count == 1

    def test_paired_beyond_two_paths(self):
        with pytest.raises(PreconditionError):
            solve_constructive(complete_digraph(9), paired_spec((0, 1, 2), (3, 4, 5)))
