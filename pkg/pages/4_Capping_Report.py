"""
Capping Report
Fill a polygon decomposition of the disk and count its signed caps. A
trisection can be capped directly by a single hexagon.
"""

from __future__ import annotations

import streamlit as st

from cerf_svg import render_svg
from cerf_ui import (
    check_rows,
    inject_style,
    metric_html,
    render_card,
    render_footer,
    render_page_header,
    render_svg_card,
    show_check_banner,
    status_chip,
)
from checks import CerfError
from dashboard_data import capping_summary, fixture_documents, polygon_log_table
from family_one import standard_family_from_trisection
from family_two import assemble_disk_family, cap_trisection_family, validate_decomposition
from invariants import standard_trisections
from settings import configure_logging

st.set_page_config(
    page_title="Capping Report",
    page_icon="⬡",
    layout="wide",
    initial_sidebar_state="collapsed",
)

inject_style()
configure_logging()


def _decompositions() -> dict:
    found = {f"fixture: {name}": env.payload for name, env in fixture_documents("decomposition").items()}
    for name, T in standard_trisections().items():
        if T.g != 1 or T.k != 0:
            continue
        try:
            found[f"hexagon cap: {name}"] = cap_trisection_family(standard_family_from_trisection(T))
        except CerfError:
            continue
    return found


def main():
    render_page_header(
        "Capping Report",
        "σ of the boundary family plus the signed cap count must vanish.",
    )

    decompositions = _decompositions()
    if not decompositions:
        st.info("No decompositions available.")
        return
    name = st.selectbox("Decomposition", list(decompositions))
    D = decompositions[name]

    report = validate_decomposition(D)
    render_card("Validation", check_rows(report), material_icon="verified", eyebrow=name)
    if not show_check_banner(report, name):
        render_footer("Only valid decompositions are filled")
        return

    try:
        capping = assemble_disk_family(D)
    except CerfError as exc:
        st.error(f"**{exc.code}**: {exc}")
        return

    summary = capping_summary(capping)
    col1, col2, col3, col4 = st.columns(4)
    with col1:
        render_card("p", metric_html(summary["p"], "+1 caps"), material_icon="add_circle", icon_color="green")
    with col2:
        render_card("q", metric_html(summary["q"], "-1 caps"), material_icon="remove_circle", icon_color="pink")
    with col3:
        render_card("σ", metric_html(summary["sigma"], "boundary family"), material_icon="balance")
    with col4:
        kind = "pass" if capping.sigma_identity_holds else "fail"
        render_card("Identity", status_chip(summary["identity"], kind), material_icon="rule", icon_color="cream")

    st.caption(f"Boundary genus {summary['genus']}, k = {summary['k']}, χ = {summary['chi']}")
    render_svg_card("Polygons", render_svg(D), eyebrow=f"{len(D.polygons)} polygons")
    st.subheader("Polygon log")
    st.dataframe(polygon_log_table(capping), hide_index=True, use_container_width=True)

    render_footer("Type2 polygons carry the sign of the local torus triple")


main()
