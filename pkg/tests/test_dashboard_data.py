import logging

import pytest

from dashboard_data import (
    CATALOG_COLUMNS,
    CENSUS_COLUMNS,
    CHECK_COLUMNS,
    CUT_SYSTEM_COLUMNS,
    NEIGHBORHOOD_COLUMNS,
    POLYGON_COLUMNS,
    REEB_COLUMNS,
    SEGMENT_COLUMNS,
    capping_summary,
    census_table,
    check_table,
    cut_system_table,
    fixture_documents,
    neighborhood_table,
    polygon_log_table,
    profile_counts,
    reeb_edge_table,
    segment_table,
    trisection_catalog_table,
)
from family_two import assemble_disk_family
from morse_slice import cut_system_from_morse, validate_sliced
from surface_core import SymplecticLattice


def test_figure1_census_table():
    table = census_table("figure1", threads=1)
    assert list(table.columns) == CENSUS_COLUMNS
    assert list(table["entry"]) == [0, 1, 2, 3]
    assert sorted(table["genus"]) == [0, 0, 0, 1]


def test_unknown_census():
    with pytest.raises(ValueError):
        census_table("quadruple")


def test_profile_counts():
    counts = profile_counts(census_table("figure1", threads=1))
    assert list(counts["profile"]) == ["g=0, b=4", "g=1, b=2"]
    assert list(counts["entries"]) == [3, 1]
    empty = profile_counts(census_table("figure1", threads=1).iloc[0:0])
    assert empty.empty
    assert "profile" in empty.columns


def test_check_table(load):
    table = check_table(validate_sliced(load("bad")).report)
    assert list(table.columns) == CHECK_COLUMNS
    failed = set(table.loc[~table["passed"], "check"])
    assert failed == {"closed_at_top", "euler_characteristic"}
    assert "connected" not in set(table["check"])


def test_morse_tables(load):
    torus = load("torus")
    edges = reeb_edge_table(torus)
    assert list(edges.columns) == REEB_COLUMNS
    assert len(edges) == 4
    assert set(edges["circle"]) == {"c0", "c1", "c2", "c3"}
    hoods = neighborhood_table(torus)
    assert list(hoods.columns) == NEIGHBORHOOD_COLUMNS
    assert list(hoods["kind"]) == ["birth", "split", "merge", "death"]
    assert list(hoods["euler_characteristic"]) == [1, -1, -1, 1]


def test_cut_system_table(load):
    cs = cut_system_from_morse(load("genus2"), SymplecticLattice(2))
    table = cut_system_table(cs)
    assert list(table.columns) == CUT_SYSTEM_COLUMNS
    assert list(table["class"]) == ["a1", "a2"]
    assert all(table["circle"] != "")


def test_catalog_table():
    table = trisection_catalog_table()
    assert list(table.columns) == CATALOG_COLUMNS
    assert list(table["manifold"]) == ["S4", "CP2", "CP2bar", "S1xS3", "CP2#CP2bar"]
    assert list(table["chi"]) == [2, 3, 3, 0, 4]
    assert list(table["sigma"]) == [0, 1, -1, 0, 0]
    assert table.set_index("manifold").loc["S1xS3", "h1"] == "Z"


def test_segment_table(load):
    table = segment_table(load("cp2_family"))
    assert list(table.columns) == SEGMENT_COLUMNS
    assert len(table) == 6
    assert list(table["event"]) == ["collar", "switch (same_component)"] * 3
    assert list(table["type"]) == ["type0", "type1"] * 3
    assert (table.loc[1, "before"], table.loc[1, "after"]) == ("a1", "b1")


def test_capping_tables(load):
    report = assemble_disk_family(load("glued_caps"))
    log = polygon_log_table(report)
    assert list(log.columns) == POLYGON_COLUMNS
    assert list(log["center"]) == ["triple_switch", "triple_switch"]
    summary = capping_summary(report)
    assert (summary["p"], summary["q"], summary["sigma"]) == (1, 1, 0)
    assert (summary["k"], summary["chi"], summary["identity"]) == ("n/a", "n/a", "holds")

    swallowtail = capping_summary(assemble_disk_family(load("disk_swallowtail")))
    assert (swallowtail["k"], swallowtail["chi"]) == (0, 2)
    assert list(polygon_log_table(assemble_disk_family(load("disk_swallowtail")))["center"]) == ["swallowtail"]


def test_fixture_documents_skips_broken_files(fixtures_dir, caplog):
    with caplog.at_level(logging.WARNING, logger="cerf_forge.dashboard_data"):
        morse = fixture_documents("morse", fixtures_dir)
    assert {"sphere", "torus", "genus2", "bad"} <= set(morse)
    assert not {"duplicate_height", "dangling_id"} & set(morse)
    assert "skipping fixture duplicate_height.json: DUPLICATE_HEIGHT" in caplog.text
    assert set(fixture_documents("trisection", fixtures_dir)) == {"cp2", "cp2bar", "cp2_cp2bar", "s1xs3", "s4"}


def test_fixture_documents_on_an_empty_directory(tmp_path):
    assert fixture_documents("morse", tmp_path) == {}
