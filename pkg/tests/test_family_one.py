from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from family_one import (
    DIFFERENT_COMPONENTS,
    SAME_COMPONENT,
    BirthDeath,
    CerfGraphic1,
    ElementaryInterval,
    FamilyError,
    HeightSwitch,
    IntervalType,
    apply_interval,
    assemble_circle_family,
    assemble_interval_family,
    classify_interval,
    classify_neighborhood,
    enumerate_switch_neighborhoods,
    handlebody_sequence,
    interpolate_cut_systems,
    reverse_interval,
    standard_family_from_trisection,
    standard_heegaard_diagram,
    standard_interval_family,
    subdivide_segment,
    switch_neighborhood,
    validate_graphic,
)
from invariants import standard_trisections, trisection_invariants
from morse_slice import Birth, Death, Merge, SlicedMorseFunction, Split, stacked_torus_function
from ribbon_graphs import RibbonNeighborhood
from surface_core import (
    CutSystem,
    HomologyClass,
    SymplecticLattice,
    lagrangian_span,
    same_up_to_sign,
    slide,
)

GENUS1_PAIR = RibbonNeighborhood((5, 6, 7, 4, 3, 0, 1, 2), (0, 0))
GENUS0_PAIR = RibbonNeighborhood((5, 4, 7, 6, 1, 0, 3, 2), (0, 0))
TORUS = stacked_torus_function(1)
# same surface, different critical values
OTHER_TORUS = SlicedMorseFunction(
    (
        Birth("c0", Fraction(0)),
        Split("c0", ("c1", "c2"), Fraction(1, 2)),
        Merge(("c1", "c2"), "c3", Fraction(1)),
        Death("c3", Fraction(2)),
    )
)
G1 = SymplecticLattice(1)
G2 = SymplecticLattice(2)


def cls(*coeffs):
    return HomologyClass(coeffs)


def collar(f=TORUS):
    return ElementaryInterval(f, None, f)


def surgery(before, after, f=TORUS):
    event = HeightSwitch(("x", "y"), (1, 1), SAME_COMPONENT, GENUS1_PAIR, before=before, after=after)
    return ElementaryInterval(f, event, f)


def slide_switch(move, f):
    return ElementaryInterval(f, HeightSwitch(("p", "q"), (1, 1), SAME_COMPONENT, GENUS0_PAIR, slide=move), f)


def test_switch_census_profiles():
    census = enumerate_switch_neighborhoods(threads=1)
    assert len(census) == 4
    assert sorted(classify_neighborhood(N) for N in census) == [(0, 4), (0, 4), (0, 4), (1, 2)]
    assert switch_neighborhood(1).genus == 1
    assert switch_neighborhood(0).genus == 0
    with pytest.raises(FamilyError):
        switch_neighborhood(2)


def test_classify_interval():
    assert classify_interval(collar()) is IntervalType.TYPE0
    assert classify_interval(ElementaryInterval(TORUS, BirthDeath("birth"), TORUS)) is IntervalType.TYPE0
    apart = HeightSwitch(("x", "y"), (0, 1), DIFFERENT_COMPONENTS)
    assert classify_interval(ElementaryInterval(TORUS, apart, TORUS)) is IntervalType.TYPE0
    assert classify_interval(slide_switch((0, 0, 1), TORUS)) is IntervalType.TYPE0
    assert classify_interval(surgery(cls(1, 0), cls(0, 1))) is IntervalType.TYPE1


@pytest.mark.parametrize(
    "event",
    [
        HeightSwitch(("x", "y"), (0, 1), SAME_COMPONENT, GENUS1_PAIR, before=cls(1, 0), after=cls(0, 1)),
        HeightSwitch(("x", "y"), (1, 1), SAME_COMPONENT, None),
        HeightSwitch(("x", "y"), (1, 1), SAME_COMPONENT, GENUS1_PAIR),
        HeightSwitch(("x", "y"), (1, 1), "elsewhere", GENUS0_PAIR),
        HeightSwitch(("x", "y"), (1, 1), DIFFERENT_COMPONENTS, GENUS0_PAIR),
        HeightSwitch(("x", "y"), (1, 1), SAME_COMPONENT, GENUS0_PAIR, before=cls(1, 0), after=cls(0, 1)),
        HeightSwitch(("x", "y"), (1, 3), SAME_COMPONENT, GENUS0_PAIR),
    ],
)
def test_malformed_switches(event):
    with pytest.raises(FamilyError):
        classify_interval(ElementaryInterval(TORUS, event, TORUS))


def test_switch_with_an_invalid_neighborhood():
    broken = RibbonNeighborhood((5, 6, 7, 4, 3, 0, 1, 1), (0, 0))
    event = HeightSwitch(("x", "y"), (1, 1), SAME_COMPONENT, broken, before=cls(1, 0), after=cls(0, 1))
    with pytest.raises(FamilyError, match="edge_involution"):
        classify_interval(ElementaryInterval(TORUS, event, TORUS))



def test_birth_death_direction():
    with pytest.raises(FamilyError):
        BirthDeath("sideways")


def test_apply_type0():
    cs = CutSystem.from_rows([[1, 0]])
    assert apply_interval(cs, collar(), G1) == cs
    f2 = stacked_torus_function(2)
    moved = apply_interval(G2.standard_cut_system(), slide_switch((0, 1, 1), f2), G2)
    assert moved.rows() == [[1, 0, 1, 0], [0, 0, 1, 0]]


def test_apply_type1_genus1():
    out = apply_interval(CutSystem.from_rows([[1, 0]]), surgery(cls(1, 0), cls(0, 1)), G1)
    assert out.rows() == [[0, 1]]


def test_apply_type1_keeps_the_other_handles():
    f2 = stacked_torus_function(2)
    out = apply_interval(G2.standard_cut_system(), surgery(cls(1, 0, 0, 0), cls(0, 1, 0, 0), f2), G2)
    assert out.rows() == [[0, 1, 0, 0], [0, 0, 1, 0]]


def test_apply_type1_slides_until_the_class_is_a_basis_curve():
    f2 = stacked_torus_function(2)
    # 2a1 + 3a2 has no unit coordinate in (a1, a2); one slide gives it one
    out = apply_interval(G2.standard_cut_system(), surgery(cls(2, 0, 3, 0), cls(0, -1, 0, 1), f2), G2)
    assert out.rows() == [[1, 0, 1, 0], [0, -1, 0, 1]]


def test_apply_type1_projects_the_other_curves():
    f2 = stacked_torus_function(2)
    out = apply_interval(G2.standard_cut_system(), surgery(cls(1, 0, 1, 0), cls(0, 1, 0, 0), f2), G2)
    assert out.rows() == [[0, 1, 0, 0], [0, 0, 1, 0]]


def test_apply_type1_errors():
    with pytest.raises(FamilyError):
        apply_interval(CutSystem.from_rows([[1, 0]]), surgery(cls(0, 1), cls(1, 0)), G1)
    with pytest.raises(FamilyError):
        apply_interval(CutSystem.from_rows([[1, 0]]), surgery(cls(1, 0), cls(1, 0)), G1)


def test_reverse_interval():
    seg = surgery(cls(1, 0), cls(0, 1))
    back = reverse_interval(seg)
    assert back.event.before == cls(0, 1)
    assert back.event.after == cls(1, 0)
    assert reverse_interval(ElementaryInterval(TORUS, BirthDeath("birth"), TORUS)).event.direction == "death"
    f2 = stacked_torus_function(2)
    assert reverse_interval(slide_switch((0, 1, 1), f2)).event.slide == (0, 1, -1)
    assert reverse_interval(back) == seg


def test_validate_graphic_failures(load):
    sphere = load("sphere")
    wrong_genus = CerfGraphic1(1, (collar(sphere),))
    assert "endpoint_functions" in [c.name for c in validate_graphic(wrong_genus).failures]
    broken = CerfGraphic1(1, (collar(), collar(OTHER_TORUS)))
    assert "chained" in [c.name for c in validate_graphic(broken).failures]
    open_loop = CerfGraphic1(1, (ElementaryInterval(TORUS, None, OTHER_TORUS),), cyclic=True)
    assert "closed" in [c.name for c in validate_graphic(open_loop).failures]
    bad_start = CerfGraphic1(1, (collar(),), start_cut_system=CutSystem.from_rows([[2, 0]]))
    assert "start_cut_system" in [c.name for c in validate_graphic(bad_start).failures]


def test_interval_fixture(load):
    record = assemble_interval_family(load("interval_g1"))
    assert record.k == 0
    assert len(record.surgeries) == 1
    assert record.final.rows() == [[0, 1]]
    assert record.boundary_h1.is_trivial()
    assert record.trisection is None


def test_standard_interval_family_g5_k2():
    lattice = SymplecticLattice(5)
    alpha, beta = standard_heegaard_diagram(5, 2)
    gr = standard_interval_family(alpha, beta, lattice)
    assert sum(1 for t in gr.types() if t is IntervalType.TYPE1) == 3
    record = assemble_interval_family(gr)
    assert len(record.surgeries) == 3
    assert record.k == 2
    assert record.boundary_h1.is_free(2)


def test_family_without_surgeries_is_all_type0():
    alpha, beta = standard_heegaard_diagram(1, 1)
    gr = standard_interval_family(alpha, beta, G1)
    assert all(t is IntervalType.TYPE0 for t in gr.types())
    record = assemble_interval_family(gr)
    assert record.k == 1
    assert record.boundary_h1.is_free(1)


def test_standard_heegaard_diagram_bounds():
    with pytest.raises(FamilyError):
        standard_heegaard_diagram(2, 3)


def test_compiled_cp2_family():
    gr = standard_family_from_trisection(standard_trisections()["CP2"])
    assert gr.cyclic
    assert len(gr.segments) == 6
    assert [t.value for t in gr.types()] == ["type0", "type1"] * 3
    record = assemble_circle_family(gr)
    assert (record.k, record.chi, record.sigma) == (0, 3, 1)


@pytest.mark.parametrize("name", ["S4", "CP2", "CP2bar", "S1xS3", "CP2#CP2bar"])
def test_compiled_catalog_round_trip(name):
    T = standard_trisections()[name]
    record = assemble_circle_family(standard_family_from_trisection(T))
    expected = trisection_invariants(T)
    assert record.trisection is not None
    assert (record.k, record.chi, record.sigma) == (T.k, expected["chi"], expected["sigma"])


def test_genus_zero_family_is_empty():
    gr = standard_family_from_trisection(standard_trisections()["S4"])
    assert gr.segments == ()
    record = assemble_circle_family(gr)
    assert (record.k, record.chi, record.sigma) == (0, 2, 0)


def test_cp2_fixture(load):
    gr = load("cp2_family")
    states = handlebody_sequence(gr)
    assert [s.rows() for s in states] == [[[1, 0]], [[1, 0]], [[0, 1]], [[0, 1]], [[-1, -1]], [[-1, -1]], [[1, 0]]]
    record = assemble_circle_family(gr)
    assert record.trisection.gamma.rows() == [[-1, -1]]
    assert (record.k, record.chi, record.sigma) == (0, 3, 1)


def test_subdivision_does_not_change_the_result():
    gr = standard_family_from_trisection(standard_trisections()["CP2bar"])
    before = assemble_circle_family(gr)
    finer = subdivide_segment(gr, 0)
    assert len(finer.segments) == len(gr.segments) + 1
    after = assemble_circle_family(finer)
    assert (after.k, after.chi, after.sigma) == (before.k, before.chi, before.sigma) == (0, 3, -1)
    with pytest.raises(FamilyError):
        subdivide_segment(gr, 1)
    with pytest.raises(FamilyError):
        subdivide_segment(gr, 6)


@pytest.mark.parametrize("name", sorted(n for n, T in standard_trisections().items() if T.g > 0))
def test_subdividing_any_type0_segment_keeps_the_record(name):
    gr = standard_family_from_trisection(standard_trisections()[name])
    expected = assemble_circle_family(gr).as_dict()
    type0 = [n for n, t in enumerate(gr.types()) if t is IntervalType.TYPE0]
    assert type0
    for index in type0:
        assert assemble_circle_family(subdivide_segment(gr, index)).as_dict() == expected


def test_subdividing_an_interval_family_keeps_the_record():
    alpha, beta = standard_heegaard_diagram(5, 2)
    gr = standard_interval_family(alpha, beta, SymplecticLattice(5))
    expected = assemble_interval_family(gr).as_dict()
    for index, kind in enumerate(gr.types()):
        if kind is IntervalType.TYPE0:
            assert assemble_interval_family(subdivide_segment(gr, index)).as_dict() == expected
        else:
            with pytest.raises(FamilyError):
                subdivide_segment(gr, index)



def test_family_kind_mismatch(load):
    with pytest.raises(FamilyError):
        assemble_interval_family(load("cp2_family"))
    with pytest.raises(FamilyError):
        assemble_circle_family(load("interval_g1"))


def test_open_handlebody_loop_is_rejected():
    gr = CerfGraphic1(1, (surgery(cls(1, 0), cls(0, 1)),), cyclic=True, start_cut_system=CutSystem.from_rows([[1, 0]]))
    with pytest.raises(FamilyError):
        assemble_circle_family(gr)


def test_four_type1_runs_give_no_trisection():
    steps = [cls(1, 0), cls(0, 1), cls(-1, 0), cls(0, -1), cls(1, 0)]
    segments = []
    for before, after in zip(steps, steps[1:]):
        segments += [collar(), surgery(before, after)]
    record = assemble_circle_family(CerfGraphic1(1, tuple(segments), cyclic=True))
    assert record.trisection is None
    assert record.k is None and record.chi is None and record.sigma is None
    assert len(record.surgeries) == 4


def test_interpolate_small_example():
    source = G2.standard_cut_system()
    target = CutSystem.from_rows([[1, 0, 1, 0], [0, 0, 1, 0]])
    seq = interpolate_cut_systems(source, target, G2)
    assert seq.moves == ((0, 1, 1),)
    assert seq.bound == 32
    assert seq.within_bound
    assert seq.as_dict()["result"] == target.rows()


def test_interpolate_needs_equal_spans():
    with pytest.raises(FamilyError):
        interpolate_cut_systems(
            G2.standard_cut_system(), CutSystem.from_rows([[0, 1, 0, 0], [0, 0, 1, 0]]), G2
        )


@settings(max_examples=200, deadline=None)
@given(genus=st.integers(1, 4), count=st.integers(0, 10), seed=st.integers(0, 2**32 - 1))
def test_interpolate_random_slide_products(genus, count, seed):
    rng = np.random.default_rng(seed)
    lattice = SymplecticLattice(genus)
    source = lattice.standard_cut_system()
    target = source
    # genus 1 has nothing to slide over
    for _ in range(count if genus > 1 else 0):
        i, j = rng.choice(genus, size=2, replace=False)
        target = slide(target, int(i), int(j), int(rng.choice([1, -1])), lattice)
    seq = interpolate_cut_systems(source, target, lattice)
    assert seq.within_bound
    assert same_up_to_sign(seq.result, target)
    replay = source
    for i, j, s in seq.moves:
        replay = slide(replay, i, j, s, lattice)
    assert replay == seq.result

