"""Tate cohomology of lattices over subgroup towers, and the level diagrams."""

import pytest

from cyclat import diagrams, intmat
from cyclat.cohomology import (
    down_map,
    fixed_rank,
    is_cohomologically_trivial,
    tate_h0,
    tate_h1,
    up_map,
    yakovlev_diagram,
)
from cyclat.finmod import GammaMap, recognize_standard_sum, snf_invariants
from cyclat.groupring import GroupParams
from cyclat.lattices import (
    direct_sum,
    mab_lattice,
    permutation_lattice,
    random_unimodular_change,
)


def all_labels(n):
    return [(a, b) for a in range(1, n + 1) for b in range(0, n + 1 - a)]


class TestFirstCohomology:
    def test_permutation_lattices_are_invisible(self):
        for p, n in ((3, 1), (3, 2), (3, 3), (5, 2)):
            pr = GroupParams(p, n)
            for i in range(n + 1):
                lat = permutation_lattice(pr, i)
                for j in range(n + 1):
                    assert tate_h1(lat, j).is_zero()

    def test_full_rank_ideal_levels(self):
        pr = GroupParams(3, 2)
        lat = mab_lattice(pr, 1, 1)
        h1 = tate_h1(lat, 1)
        h2 = tate_h1(lat, 2)
        assert snf_invariants(h1) == (3,)
        assert snf_invariants(h2) == (3,)
        assert recognize_standard_sum(h1.minimized()[0]) == {(1, 2): 1}
        assert recognize_standard_sum(h2.minimized()[0]) == {(1, 2): 1}

    def test_augmentation_type_ideal_levels(self):
        pr = GroupParams(3, 2)
        lat = mab_lattice(pr, 1, 0)
        h1 = tate_h1(lat, 1)
        h2 = tate_h1(lat, 2)
        assert h1.order_log() == 3
        assert recognize_standard_sum(h1.minimized()[0]) == {(1, 1): 1}
        assert h2.order_log() == 1
        assert recognize_standard_sum(h2.minimized()[0]) == {(1, 2): 1}

    def test_trivial_level_is_zero(self):
        pr = GroupParams(3, 2)
        assert tate_h1(mab_lattice(pr, 1, 1), 0).is_zero()

    def test_annihilated_by_level_order(self):
        pr = GroupParams(3, 3)
        for a, b in all_labels(3):
            lat = mab_lattice(pr, a, b)
            for j in range(4):
                assert tate_h1(lat, j).exponent_log() <= j


class TestZerothCohomology:
    def test_regular_lattice_has_none(self):
        pr = GroupParams(3, 2)
        lat = permutation_lattice(pr, 0)
        for j in range(3):
            assert tate_h0(lat, j).is_zero()

    def test_trivial_lattice_gives_full_cyclic_group(self):
        for p, n in ((3, 2), (5, 2)):
            pr = GroupParams(p, n)
            lat = permutation_lattice(pr, n)
            for j in range(1, n + 1):
                assert snf_invariants(tate_h0(lat, j)) == (p**j,)
            assert tate_h0(lat, 0).is_zero()

    def test_balanced_orders_for_full_rank_ideals(self):
        # rationally free lattices have equal-size cohomology on each level
        pr = GroupParams(3, 2)
        for a, b in all_labels(2):
            if b == 0:
                continue
            lat = mab_lattice(pr, a, b)
            for j in range(3):
                assert tate_h0(lat, j).order_log() == tate_h1(lat, j).order_log()


class TestFixedRank:
    def test_matches_orbit_counts(self):
        pr = GroupParams(3, 2)
        for i in range(3):
            lat = permutation_lattice(pr, i)
            for j in range(3):
                assert fixed_rank(lat, j) == 3 ** (2 - max(i, j))

    def test_augmentation_kernel_profile(self):
        pr = GroupParams(3, 2)
        lat = mab_lattice(pr, 2, 0)
        assert [fixed_rank(lat, j) for j in range(3)] == [8, 2, 0]


class TestLevelMaps:
    def test_index_bounds(self):
        pr = GroupParams(3, 2)
        lat = mab_lattice(pr, 1, 1)
        for bad in (0, 3, -1):
            with pytest.raises(ValueError):
                down_map(lat, bad)
            with pytest.raises(ValueError):
                up_map(lat, bad)

    def test_bottom_rung_touches_zero_level(self):
        pr = GroupParams(3, 2)
        lat = mab_lattice(pr, 1, 1)
        d = down_map(lat, 1)
        u = up_map(lat, 1)
        assert d.target.is_zero()
        assert u.source.is_zero()
        assert d.is_zero_map() and u.is_zero_map()

    def test_down_map_is_iso_inside_window(self):
        # level 2 of the (1, 1) ideal maps isomorphically one step down
        pr = GroupParams(3, 2)
        lat = mab_lattice(pr, 1, 1)
        d = down_map(lat, 2)
        assert d.source.order_log() == d.target.order_log() == 1
        assert d.is_surjective()

    def test_up_then_down_is_multiplication_by_p(self):
        pr = GroupParams(3, 2)
        for a, b in all_labels(2):
            lat = mab_lattice(pr, a, b)
            for i in range(2, 3):
                d = down_map(lat, i)
                u = up_map(lat, i)
                comp = u.compose(d)
                scal = GammaMap(
                    comp.source,
                    comp.target,
                    intmat.mat_scale(3, intmat.identity(comp.source.gens)),
                )
                assert comp.equals_mod(scal)

    def test_down_then_up_is_relative_norm(self):
        pr = GroupParams(3, 2)
        for a, b in all_labels(2):
            lat = mab_lattice(pr, a, b)
            for i in range(2, 3):
                d = down_map(lat, i)
                u = up_map(lat, i)
                comp = d.compose(u)
                low = comp.source
                step = 3 ** (2 - i)
                norm = intmat.zeros(low.gens, low.gens)
                for k in range(3):
                    norm = intmat.mat_add(norm, low.action_power(k * step))
                assert comp.equals_mod(GammaMap(low, low, norm))


class TestDiagram:
    def test_validates_and_matches_library(self):
        pr = GroupParams(3, 2)
        for a, b in all_labels(2):
            lat = mab_lattice(pr, a, b)
            diag = yakovlev_diagram(lat)
            assert diagrams.validate_diagram(diag)
            assert (
                diagrams.diagram_isomorphic(
                    diag, diagrams.library_diagram(pr, {(a, b): 1})
                )
                is diagrams.IsoResult.YES
            )

    def test_respects_direct_sums(self):
        pr = GroupParams(3, 2)
        m = mab_lattice(pr, 1, 0)
        nlat = mab_lattice(pr, 1, 1)
        combined = yakovlev_diagram(direct_sum([m, nlat]))
        stacked = diagrams.diagram_direct_sum(
            [yakovlev_diagram(m), yakovlev_diagram(nlat)]
        )
        assert diagrams.diagram_isomorphic(combined, stacked) is diagrams.IsoResult.YES

    def test_ignores_base_change_and_permutation_padding(self):
        pr = GroupParams(3, 2)
        base = mab_lattice(pr, 2, 0)
        target = yakovlev_diagram(base)
        padded = direct_sum([base, permutation_lattice(pr, 1)])
        twisted = random_unimodular_change(padded, 77)
        assert (
            diagrams.diagram_isomorphic(yakovlev_diagram(twisted), target)
            is diagrams.IsoResult.YES
        )


class TestCohomologicalTriviality:
    def test_free_lattices_are_trivial(self):
        pr = GroupParams(3, 2)
        free = permutation_lattice(pr, 0)
        assert is_cohomologically_trivial(free)
        assert is_cohomologically_trivial(direct_sum([free, free]))

    def test_trivial_action_lattice_is_not(self):
        # the rank-one lattice has vanishing degree -1 groups but a full
        # cyclic degree 0 group on every level
        pr = GroupParams(3, 2)
        assert not is_cohomologically_trivial(permutation_lattice(pr, 2))

    def test_library_lattices_are_not(self):
        pr = GroupParams(3, 2)
        for a, b in all_labels(2):
            assert not is_cohomologically_trivial(mab_lattice(pr, a, b))
