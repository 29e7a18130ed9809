"""Level towers of cohomology modules: validation, isomorphism, subtraction."""

import pytest

from cyclat import intmat
from cyclat.cohomology import yakovlev_diagram
from cyclat.diagrams import (
    DiagramError,
    IsoResult,
    SubtractResult,
    Unresolved,
    YakovlevDiagram,
    diagram_direct_sum,
    diagram_isomorphic,
    indecomposability_certificate,
    library_diagram,
    library_level_type,
    subtract_library,
    validate_diagram,
    zero_diagram,
)
from cyclat.finmod import GammaMap
from cyclat.groupring import GroupParams
from cyclat.lattices import direct_sum, mab_lattice, permutation_lattice


def all_labels(n):
    return [(a, b) for a in range(1, n + 1) for b in range(0, n + 1 - a)]


class TestLevelTypes:
    def test_window_formula(self):
        # below the torsion window the level keeps the coefficient size i,
        # inside and above it saturates at a
        assert library_level_type(1, 1, 1) == (1, 2)
        assert library_level_type(1, 1, 2) == (1, 2)
        assert library_level_type(2, 0, 1) == (1, 2)
        assert library_level_type(2, 0, 2) == (2, 2)
        assert library_level_type(1, 0, 1) == (1, 1)

    def test_matches_constructed_diagrams(self):
        for p, n in ((3, 1), (3, 2), (3, 3)):
            pr = GroupParams(p, n)
            for a, b in all_labels(n):
                diag = yakovlev_diagram(mab_lattice(pr, a, b))
                lib = library_diagram(pr, {(a, b): 1})
                for i in range(1, n + 1):
                    assert (
                        diag.level(i).invariants() == lib.level(i).invariants()
                    )


class TestValidation:
    def test_constructed_diagrams_validate(self):
        pr = GroupParams(3, 2)
        for a, b in all_labels(2):
            assert validate_diagram(yakovlev_diagram(mab_lattice(pr, a, b)))
        assert validate_diagram(zero_diagram(pr))

    def test_broken_composite_fails_quietly(self):
        # zeroing an up map breaks "up then down = multiplication by p"
        # on a level of exponent 9, without touching structural shape
        pr = GroupParams(3, 2)
        good = library_diagram(pr, {(2, 0): 1})
        bad_ups = [GammaMap.zero(good.level(1), good.level(2))]
        tampered = YakovlevDiagram(pr, good.levels, bad_ups, good.downs)
        assert not validate_diagram(tampered)
        assert validate_diagram(good)

    def test_structural_mismatch_raises_on_construction(self):
        pr = GroupParams(3, 2)
        good = library_diagram(pr, {(1, 1): 1})
        with pytest.raises(ValueError):
            YakovlevDiagram(pr, good.levels, [], good.downs)
        with pytest.raises(ValueError):
            YakovlevDiagram(pr, good.levels[:1], good.ups, good.downs)


class TestDirectSum:
    def test_orders_add_and_validation_holds(self):
        pr = GroupParams(3, 2)
        d1 = library_diagram(pr, {(1, 0): 1})
        d2 = library_diagram(pr, {(1, 1): 1})
        total = diagram_direct_sum([d1, d2])
        assert (
            total.total_order_log()
            == d1.total_order_log() + d2.total_order_log()
        )
        assert validate_diagram(total)

    def test_zero_summand_is_neutral(self):
        pr = GroupParams(3, 2)
        d = library_diagram(pr, {(2, 0): 1})
        padded = diagram_direct_sum([d, zero_diagram(pr)])
        assert diagram_isomorphic(padded, d) is IsoResult.YES

    def test_equals_multiset_library_diagram(self):
        pr = GroupParams(3, 2)
        stacked = diagram_direct_sum(
            [library_diagram(pr, {(1, 1): 1}), library_diagram(pr, {(1, 1): 1})]
        )
        assert (
            diagram_isomorphic(stacked, library_diagram(pr, {(1, 1): 2}))
            is IsoResult.YES
        )


class TestIsomorphism:
    def test_reflexive_on_library(self):
        for p, n in ((3, 1), (3, 2), (3, 3)):
            pr = GroupParams(p, n)
            for a, b in all_labels(n):
                d = library_diagram(pr, {(a, b): 1})
                assert diagram_isomorphic(d, d) is IsoResult.YES

    def test_symmetric(self):
        pr = GroupParams(3, 2)
        d1 = yakovlev_diagram(mab_lattice(pr, 1, 1))
        d2 = library_diagram(pr, {(1, 1): 1})
        assert diagram_isomorphic(d1, d2) is IsoResult.YES
        assert diagram_isomorphic(d2, d1) is IsoResult.YES

    def test_distinguishes_library_labels(self):
        pr = GroupParams(3, 2)
        seen = {}
        for a, b in all_labels(2):
            seen[(a, b)] = library_diagram(pr, {(a, b): 1})
        labels = list(seen)
        for i, la in enumerate(labels):
            for lb in labels[i + 1 :]:
                assert diagram_isomorphic(seen[la], seen[lb]) is IsoResult.NO

    def test_never_yes_on_different_orders(self):
        pr = GroupParams(3, 2)
        d1 = library_diagram(pr, {(1, 0): 1})
        d2 = library_diagram(pr, {(1, 0): 2})
        assert d1.total_order_log() != d2.total_order_log()
        assert diagram_isomorphic(d1, d2) is IsoResult.NO

    def test_mismatched_group_parameters_rejected(self):
        d1 = zero_diagram(GroupParams(3, 1))
        d2 = zero_diagram(GroupParams(3, 2))
        with pytest.raises(ValueError):
            diagram_isomorphic(d1, d2)


class TestIndecomposability:
    def test_library_diagrams_are_certified(self):
        for p, n in ((3, 1), (3, 2), (3, 3), (5, 2)):
            pr = GroupParams(p, n)
            for a, b in all_labels(n):
                assert indecomposability_certificate(
                    library_diagram(pr, {(a, b): 1})
                )

    def test_doubled_label_is_not(self):
        pr = GroupParams(3, 2)
        assert not indecomposability_certificate(
            library_diagram(pr, {(1, 0): 2})
        )

    def test_zero_diagram_is_vacuously_certified(self):
        assert indecomposability_certificate(zero_diagram(GroupParams(3, 2)))


class TestSubtraction:
    def test_pure_power_multiset(self):
        pr = GroupParams(3, 2)
        result = subtract_library(library_diagram(pr, {(1, 1): 3}))
        assert result.fully_resolved
        assert result.extracted == {(1, 1): 3}
        assert result.remainder.is_zero()

    def test_mixed_multiset(self):
        pr = GroupParams(3, 2)
        diag = diagram_direct_sum(
            [
                yakovlev_diagram(mab_lattice(pr, 1, 0)),
                yakovlev_diagram(mab_lattice(pr, 1, 1)),
            ]
        )
        result = subtract_library(diag)
        assert result.fully_resolved
        assert result.extracted == {(1, 0): 1, (1, 1): 1}
        assert result.remainder.is_zero()

    def test_invisible_lattice_leaves_nothing(self):
        pr = GroupParams(3, 2)
        result = subtract_library(yakovlev_diagram(permutation_lattice(pr, 0)))
        assert result.fully_resolved
        assert result.extracted == {}
        assert result.remainder.is_zero()

    def test_round_trip_random_multisets(self):
        import random

        rng = random.Random(20260822)
        for p, n in ((3, 1), (3, 2), (3, 3)):
            pr = GroupParams(p, n)
            labels = all_labels(n)
            for _ in range(4):
                ms = {}
                for lab in rng.sample(labels, min(2, len(labels))):
                    ms[lab] = rng.randrange(1, 3)
                result = subtract_library(library_diagram(pr, ms))
                assert result.fully_resolved
                assert result.extracted == ms

    def test_unresolved_sentinel_contract(self):
        stuck = SubtractResult({}, Unresolved)
        assert not stuck.fully_resolved
        assert not Unresolved
        assert repr(Unresolved) == "Unresolved"
        # singleton: re-instantiation returns the same object
        assert type(Unresolved)() is Unresolved
