import pytest

from family_one import (
    SAME_COMPONENT,
    BirthDeath,
    ElementaryInterval,
    HeightSwitch,
    IntervalType,
    standard_family_from_trisection,
)
from family_two import (
    BirthMorseCross,
    ElementaryPolygon,
    PolygonDecomposition,
    PolygonError,
    PolygonType,
    Swallowtail,
    TripleSwitch,
    assemble_disk_family,
    boundary_signature,
    cap_trisection_family,
    classify_polygon,
    enumerate_triple_graphs,
    glue_decompositions,
    permutahedron_edge_types,
    triple_sign,
    validate_decomposition,
)
from invariants import standard_trisections
from morse_slice import stacked_torus_function
from ribbon_graphs import RibbonNeighborhood, isomorphic, validate_neighborhood
from surface_core import HomologyClass

GENUS1_PAIR = RibbonNeighborhood((5, 6, 7, 4, 3, 0, 1, 2), (0, 0))
GENUS1_TRIPLE = RibbonNeighborhood((5, 8, 7, 10, 9, 0, 11, 2, 1, 4, 3, 6), (0, 0, 0))
GENUS0_TRIPLE = RibbonNeighborhood((5, 4, 11, 10, 1, 0, 9, 8, 7, 6, 3, 2), (0, 0, 0))
TORUS = stacked_torus_function(1)


def cls(*coeffs):
    return HomologyClass(coeffs)


def collar():
    return ElementaryInterval(TORUS, None, TORUS)


def surgery(before, after):
    event = HeightSwitch(("x", "y"), (1, 1), SAME_COMPONENT, GENUS1_PAIR, before=cls(*before), after=cls(*after))
    return ElementaryInterval(TORUS, event, TORUS)


def compiled(name):
    return standard_family_from_trisection(standard_trisections()[name])


@pytest.fixture(scope="module")
def triple_census():
    return enumerate_triple_graphs(threads=1)


def test_hand_built_triples():
    assert validate_neighborhood(GENUS1_TRIPLE).ok
    assert GENUS1_TRIPLE.profile == (1, 3)
    assert GENUS1_TRIPLE.sides == (2, 1)
    assert validate_neighborhood(GENUS0_TRIPLE).ok
    assert GENUS0_TRIPLE.profile == (0, 5)
    assert GENUS0_TRIPLE.sides == (3, 2)


def test_genus1_triple_hexagon():
    edges = permutahedron_edge_types(TripleSwitch(GENUS1_TRIPLE))
    assert [e.interval_type for e in edges] == [IntervalType.TYPE1, IntervalType.TYPE0] * 3
    assert [e.genus for e in edges] == [1, 0] * 3
    assert [e.pair for e in edges[:3]] == [("p", "q"), ("p", "r"), ("q", "r")]
    assert edges[0].as_dict() == {"pair": ["p", "q"], "third": "r", "direction": 1, "type": "type1", "genus": 1}


def test_genus0_triple_hexagon_is_all_type0():
    edges = permutahedron_edge_types(TripleSwitch(GENUS0_TRIPLE))
    assert all(e.interval_type is IntervalType.TYPE0 for e in edges)


@pytest.mark.slow
def test_triple_census(triple_census):
    assert triple_census
    assert {N.profile for N in triple_census} == {(0, 5), (1, 3)}
    assert all(N.euler_characteristic == -3 for N in triple_census)
    counts = {}
    for N in triple_census:
        edges = permutahedron_edge_types(TripleSwitch(N))
        count = sum(1 for e in edges if e.interval_type is IntervalType.TYPE1)
        assert count <= 3
        if N.genus == 0:
            assert count == 0
        counts[N.pairing] = count
    assert max(counts.values()) == 3
    assert any(isomorphic(N, GENUS1_TRIPLE) for N in triple_census)
    assert any(isomorphic(N, GENUS0_TRIPLE) for N in triple_census)


@pytest.mark.parametrize(
    "neighborhood, points",
    [
        (GENUS1_PAIR, ("p", "q", "r")),
        (GENUS1_TRIPLE, ("p", "p", "r")),
        (RibbonNeighborhood((1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10), (0, 0, 0)), ("p", "q", "r")),
    ],
)
def test_bad_triple_switches(neighborhood, points):
    with pytest.raises(PolygonError):
        permutahedron_edge_types(TripleSwitch(neighborhood, points))


def test_triple_sign():
    assert triple_sign([cls(1, 0), cls(0, 1), cls(1, 1)]) == 1
    assert triple_sign([cls(1, 1), cls(0, 1), cls(1, 0)]) == -1
    assert triple_sign([cls(1, -1), cls(0, 1), cls(1, 0)]) == 1
    with pytest.raises(PolygonError):
        triple_sign([cls(1, 0), cls(1, 0), cls(0, 1)])
    with pytest.raises(PolygonError):
        triple_sign([cls(1, 0, 0, 0), cls(0, 1, 0, 0), cls(1, 1, 0, 0)])


def test_polygon_type_values():
    assert PolygonType("type2", -1).label() == "type2-"
    assert PolygonType("type0").as_dict() == {"kind": "type0", "sign": None}
    for kind, sign in [("type2", None), ("type1", 1), ("type3", None), ("type2", 2)]:
        with pytest.raises(PolygonError):
            PolygonType(kind, sign)


def test_classify_centerless_polygons():
    assert classify_polygon(ElementaryPolygon((collar(), collar()))).kind == "type0"
    doubled = ElementaryPolygon((surgery((1, 0), (0, 1)), surgery((0, 1), (1, 0))))
    assert classify_polygon(doubled).kind == "type1"
    with pytest.raises(PolygonError):
        classify_polygon(ElementaryPolygon((surgery((1, 0), (0, 1)), collar())))


def test_classify_cusp_centers():
    birth = ElementaryInterval(TORUS, BirthDeath("birth"), TORUS)
    assert classify_polygon(ElementaryPolygon((birth, collar(), collar()), Swallowtail())).kind == "type0"
    assert classify_polygon(ElementaryPolygon((birth, collar()), BirthMorseCross())).kind == "type0"
    with pytest.raises(PolygonError):
        classify_polygon(ElementaryPolygon((surgery((1, 0), (0, 1)), collar()), Swallowtail()))


def test_classify_triple_centers():
    cycle = [surgery((1, 0), (0, 1)), collar(), surgery((0, 1), (-1, -1)), collar(), surgery((-1, -1), (1, 0)), collar()]
    local = (cls(1, 1), cls(0, 1), cls(1, 0))
    assert classify_polygon(ElementaryPolygon(tuple(cycle), TripleSwitch(GENUS1_TRIPLE, local_classes=local))) == (
        PolygonType("type2", -1)
    )
    plain = tuple(collar() for _ in range(6))
    assert classify_polygon(ElementaryPolygon(plain, TripleSwitch(GENUS1_TRIPLE))).kind == "type0"
    assert classify_polygon(ElementaryPolygon(plain, TripleSwitch(GENUS0_TRIPLE))).kind == "type0"
    two = (surgery((1, 0), (0, 1)), surgery((0, 1), (1, 0))) + tuple(collar() for _ in range(4))
    assert classify_polygon(ElementaryPolygon(two, TripleSwitch(GENUS1_TRIPLE))).kind == "type1"
    with pytest.raises(PolygonError):
        classify_polygon(ElementaryPolygon(two, TripleSwitch(GENUS0_TRIPLE)))
    # three Type1 edges but no local data to sign the cap
    with pytest.raises(PolygonError):
        classify_polygon(ElementaryPolygon(tuple(cycle), TripleSwitch(GENUS1_TRIPLE)))
    # a triple switch is a hexagon
    with pytest.raises(PolygonError):
        classify_polygon(ElementaryPolygon(plain[:5], TripleSwitch(GENUS1_TRIPLE)))


@pytest.mark.parametrize(
    "stem, p, q, sigma, k, chi",
    [
        ("hexagon_cp2", 0, 1, 1, 0, 3),
        ("hexagon_cp2bar", 1, 0, -1, 0, 3),
        ("glued_caps", 1, 1, 0, None, None),
        ("disk_swallowtail", 0, 0, 0, 0, 2),
    ],
)
def test_decomposition_fixtures(load, stem, p, q, sigma, k, chi):
    report = assemble_disk_family(load(stem))
    assert (report.p, report.q, report.sigma) == (p, q, sigma)
    assert (report.boundary_k, report.chi) == (k, chi)
    assert report.sigma_identity_holds


def test_polygon_log(load):
    report = assemble_disk_family(load("disk_swallowtail"))
    assert [entry["center"] for entry in report.polygon_log] == ["swallowtail", None]
    assert [entry["type"] for entry in report.polygon_log] == ["type0", "type0"]
    assert report.as_dict()["boundary"] == {"genus": 0, "k": 0, "chi": 2, "sigma": 0}


@pytest.mark.parametrize("name, p, q, sigma", [("CP2", 0, 1, 1), ("CP2bar", 1, 0, -1)])
def test_capping_compiled_families(name, p, q, sigma):
    D = cap_trisection_family(compiled(name))
    assert validate_decomposition(D).ok
    report = assemble_disk_family(D)
    assert (report.p, report.q, report.sigma) == (p, q, sigma)
    assert report.sigma + report.p - report.q == 0
    assert report.sigma_identity_holds
    assert (report.boundary_k, report.chi) == (0, 3)


def test_cap_needs_a_genus1_hexagon_boundary(load):
    with pytest.raises(PolygonError):
        cap_trisection_family(compiled("S1xS3"))
    with pytest.raises(PolygonError):
        cap_trisection_family(load("interval_g1"))


def test_glued_caps_cancel():
    first = cap_trisection_family(compiled("CP2"))
    second = cap_trisection_family(compiled("CP2bar"))
    glued = glue_decompositions(first, second, 0, 0)
    assert validate_decomposition(glued).ok
    assert len(glued.boundary) == 10
    assert glued.gluings == (((0, 0), (1, 0)),)
    report = assemble_disk_family(glued)
    assert (report.p, report.q, report.sigma) == (1, 1, 0)
    assert report.boundary_k is None
    assert report.sigma_identity_holds


def test_glue_errors(load):
    first = cap_trisection_family(compiled("CP2"))
    second = cap_trisection_family(compiled("CP2bar"))
    with pytest.raises(PolygonError):
        glue_decompositions(first, second, 1, 0)
    with pytest.raises(PolygonError):
        glue_decompositions(first, second, 6, 0)
    with pytest.raises(PolygonError):
        glue_decompositions(first, load("disk_swallowtail"), 0, 0)


def test_boundary_signature_of_compiled_families():
    assert boundary_signature(compiled("CP2")) == 1
    assert boundary_signature(compiled("CP2bar")) == -1
    assert boundary_signature(compiled("S1xS3")) == 0


def test_decomposition_validation_failures():
    hexagon = cap_trisection_family(compiled("CP2"))
    unused = PolygonDecomposition(1, hexagon.polygons, (), ((0, 0), (0, 1)), hexagon.start_cut_system)
    assert "edges_used_once" in [c.name for c in validate_decomposition(unused).failures]
    dangling = PolygonDecomposition(1, hexagon.polygons, (), ((0, 7),))
    assert [c.name for c in validate_decomposition(dangling).failures] == ["edge_refs"]
    assert "has_polygons" in [c.name for c in validate_decomposition(PolygonDecomposition(1, (), (), ())).failures]
