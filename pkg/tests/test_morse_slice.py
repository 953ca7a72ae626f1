from fractions import Fraction

import numpy as np
import pytest

from morse_slice import (
    Birth,
    Death,
    Merge,
    MorseError,
    SlicedMorseFunction,
    Split,
    critical_neighborhood,
    cut_system_from_morse,
    heegaard_from_morse_pair,
    random_sliced_function,
    reeb_cycles,
    reeb_graph,
    require_valid_sliced,
    stacked_torus_function,
    validate_sliced,
)
from surface_core import CutSystem, SymplecticLattice, validate_cut_system

H = Fraction


def failed(result):
    return [c.name for c in result.report.failures]


@pytest.mark.parametrize("stem, genus", [("sphere", 0), ("torus", 1), ("genus2", 2)])
def test_fixture_genus_and_betti(load, stem, genus):
    f = load(stem)
    result = validate_sliced(f)
    assert result.ok
    assert result.genus == genus
    assert reeb_graph(f).betti == genus


def test_bad_fixture_reports_every_failure(load):
    result = validate_sliced(load("bad"))
    assert result.genus is None
    assert set(failed(result)) == {"closed_at_top", "euler_characteristic"}


def test_empty_function():
    result = validate_sliced(SlicedMorseFunction(()))
    assert "non_empty" in failed(result)


def test_heights_must_increase():
    f = SlicedMorseFunction((Birth("c0", H(1)), Death("c0", H(1))))
    assert failed(validate_sliced(f)) == ["heights_increasing"]


def test_consuming_an_unknown_circle():
    f = SlicedMorseFunction((Birth("c0", H(0)), Death("c9", H(1)), Death("c0", H(2))))
    assert "circle_ids" in failed(validate_sliced(f))


def test_two_spheres_are_not_connected():
    f = SlicedMorseFunction(
        (Birth("c0", H(0)), Death("c0", H(1)), Birth("c1", H(2)), Death("c1", H(3)))
    )
    result = validate_sliced(f)
    assert "connected" in failed(result)
    with pytest.raises(MorseError):
        require_valid_sliced(f)


def test_reeb_graph_of_the_torus(load):
    graph = reeb_graph(load("torus"))
    assert graph.vertices == ("birth", "split", "merge", "death")
    assert [e.circle for e in graph.edges] == ["c0", "c1", "c2", "c3"]
    assert graph.degrees() == [1, 3, 3, 1]
    assert graph.edge("c2").created_at == H(1)
    with pytest.raises(MorseError):
        graph.edge("c7")


def test_reeb_cycle_of_the_torus(load):
    (cycle,) = reeb_cycles(load("torus"))
    assert cycle.circle == "c2"
    assert cycle.sign_of("c2") == 1
    assert cycle.sign_of("c1") == -1
    assert cycle.sign_of("c0") == 0


@pytest.mark.parametrize(
    "index, kind, genus, boundary",
    [(0, "birth", 0, 1), (1, "split", 0, 3), (2, "merge", 0, 3), (3, "death", 0, 1)],
)
def test_critical_neighborhoods(load, index, kind, genus, boundary):
    cn = critical_neighborhood(load("torus"), index)
    assert (cn.kind, cn.genus, cn.boundary_circles) == (kind, genus, boundary)
    assert cn.euler_characteristic == 2 - 2 * genus - boundary


def test_critical_neighborhood_by_event_and_bad_index(load):
    f = load("torus")
    assert critical_neighborhood(f, f.events[1]).event == 1
    with pytest.raises(MorseError):
        critical_neighborhood(f, 4)
    with pytest.raises(MorseError):
        critical_neighborhood(f, Birth("zz", H(9)))


def test_torus_cut_system(load):
    cs = cut_system_from_morse(load("torus"), SymplecticLattice(1))
    assert cs.rows() == [[1, 0]]
    assert cs.provenance == ("c2",)


def test_genus2_cut_system(load):
    lattice = SymplecticLattice(2)
    cs = cut_system_from_morse(load("genus2"), lattice)
    assert cs.rows() == [[1, 0, 0, 0], [0, 0, 1, 0]]
    swapped = cut_system_from_morse(load("genus2"), lattice, basis_map=[2, 1])
    assert swapped.rows() == [[0, 0, 1, 0], [1, 0, 0, 0]]


def test_sphere_cut_system_is_empty(load):
    assert len(cut_system_from_morse(load("sphere"), SymplecticLattice(0))) == 0


def test_circle_choice_moves_along_the_cycle(load):
    cs = cut_system_from_morse(load("torus"), SymplecticLattice(1), circle_choice={0: "c1"})
    assert cs.rows() == [[-1, 0]]
    with pytest.raises(MorseError):
        cut_system_from_morse(load("torus"), SymplecticLattice(1), circle_choice={0: "c0"})


def test_cut_system_argument_errors(load):
    with pytest.raises(MorseError):
        cut_system_from_morse(load("torus"), SymplecticLattice(2))
    with pytest.raises(MorseError):
        cut_system_from_morse(load("genus2"), SymplecticLattice(2), basis_map=[1, 1])


def test_heegaard_pair_with_frames(load):
    lattice = SymplecticLattice(1)
    diagram = heegaard_from_morse_pair(
        load("torus"), load("torus"), lattice, upper_frame=CutSystem.from_rows([[0, 1]])
    )
    assert diagram.alpha.rows() == [[1, 0]]
    assert diagram.beta.rows() == [[0, 1]]
    assert diagram.h1().is_trivial()


def test_stacked_torus_function():
    for g in range(4):
        f = stacked_torus_function(g)
        assert validate_sliced(f).genus == g
        assert len(f) == 2 + 2 * g
    with pytest.raises(MorseError):
        stacked_torus_function(-1)


def test_explicit_events_build_a_torus():
    f = SlicedMorseFunction(
        (
            Birth("c0", H(0)),
            Split("c0", ("c1", "c2"), H(1, 2)),
            Merge(("c1", "c2"), "c3", H(1)),
            Death("c3", H(2)),
        )
    )
    assert f.counts() == {"birth": 1, "death": 1, "merge": 1, "split": 1}
    assert f.euler_characteristic() == 0
    assert f.circles() == ["c0", "c1", "c2", "c3"]


def test_random_functions_are_valid():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        f = random_sliced_function(rng, max_events=30)
        assert len(f) <= 30
        result = validate_sliced(f)
        assert result.ok, result.report.as_dict()
        assert reeb_graph(f).betti == result.genus
        lattice = SymplecticLattice(result.genus)
        assert validate_cut_system(cut_system_from_morse(f, lattice), lattice).ok


def test_random_function_needs_room():
    with pytest.raises(MorseError):
        random_sliced_function(np.random.default_rng(0), max_events=1)
