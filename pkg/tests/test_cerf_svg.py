import pytest

from cerf_svg import RenderError, render_svg
from family_one import CerfGraphic1, ElementaryInterval, standard_family_from_trisection
from invariants import standard_trisections
from morse_slice import stacked_torus_function


def compiled(name):
    return standard_family_from_trisection(standard_trisections()[name])


def test_empty_graphic():
    svg = render_svg(compiled("S4"))
    assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert svg.endswith("</svg>\n")
    assert 'class="strand"' not in svg
    assert "0 segments" in svg


def test_compiled_cp2_has_three_crossings():
    svg = render_svg(compiled("CP2"))
    assert svg.count('<g class="crossing"') == 3
    assert svg.count('data-type="type1"') == 3
    assert 'class="cyclic"' in svg


def test_hexagon_sectors(load):
    svg = render_svg(load("hexagon_cp2"))
    assert svg.count('class="sector"') == 6
    assert svg.count('data-type="type1"') == 3
    assert "triple_switch: type2-" in svg


def test_glued_decomposition(load):
    svg = render_svg(load("glued_caps"))
    assert svg.count('class="sector"') == 12
    assert svg.count('class="center"') == 2


def test_rendering_is_deterministic(load):
    assert render_svg(load("cp2_family")) == render_svg(load("cp2_family"))
    assert render_svg(load("disk_swallowtail")) == render_svg(load("disk_swallowtail"))


def test_refuses_invalid_input(load):
    torus = stacked_torus_function(1)
    broken = CerfGraphic1(1, (ElementaryInterval(torus, None, torus), ElementaryInterval(load("genus2"), None, torus)))
    with pytest.raises(RenderError) as exc:
        render_svg(broken)
    assert exc.value.code == "RENDER_ERROR"
    with pytest.raises(RenderError):
        render_svg(standard_trisections()["CP2"])
