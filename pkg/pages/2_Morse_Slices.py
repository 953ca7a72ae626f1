"""
Morse Slices
Pick a morse fixture or upload a document. The page validates it, then
shows the Reeb graph, the neighborhood of every critical level and the
cut system read off the level circles.
"""

from __future__ import annotations

import streamlit as st

from cerf_io import DocumentError, decode_document
from cerf_ui import (
    check_rows,
    inject_style,
    metric_html,
    render_card,
    render_empty_row,
    render_footer,
    render_page_header,
    show_check_banner,
)
from checks import CerfError
from dashboard_data import (
    check_table,
    cut_system_table,
    fixture_documents,
    neighborhood_table,
    reeb_edge_table,
)
from morse_slice import cut_system_from_morse, validate_sliced
from settings import FORMAT_VERSION, configure_logging, get_logger
from surface_core import SymplecticLattice, lagrangian_span

st.set_page_config(
    page_title="Morse Slices",
    page_icon="🏔️",
    layout="wide",
    initial_sidebar_state="collapsed",
)

inject_style()
configure_logging()
logger = get_logger("pages.morse_slices")


def _pick_function():
    fixtures = fixture_documents("morse")
    source = st.radio("Source", ["Fixture", "Upload"], horizontal=True, label_visibility="collapsed")
    if source == "Fixture":
        if not fixtures:
            st.info("No morse fixtures found.")
            return None, None
        name = st.selectbox("Fixture", sorted(fixtures))
        return name, fixtures[name].payload
    upload = st.file_uploader("Morse document (JSON)", type=["json"])
    if upload is None:
        return None, None
    try:
        env = decode_document(upload.getvalue())
    except DocumentError as exc:
        logger.warning("upload rejected: %s %s", exc.code, exc)
        st.error(f"**{exc.code}**: {exc}")
        return None, None
    if env.kind != "morse":
        st.error(f"Expected a morse document, got kind {env.kind!r}.")
        return None, None
    return upload.name, env.payload


def main():
    render_page_header(
        "Morse Slices",
        "Sliced Morse functions on a closed surface: one critical event per height.",
        stamp_label="Document format",
        stamp_value=FORMAT_VERSION,
    )

    name, f = _pick_function()
    if f is None:
        render_footer("Choose a function to begin")
        return

    result = validate_sliced(f)
    col1, col2, col3 = st.columns(3)
    with col1:
        render_card("Events", metric_html(len(f.events), "critical points"), material_icon="stacked_line_chart")
    with col2:
        render_card("Euler characteristic", metric_html(f.euler_characteristic(), "of the surface"), material_icon="functions", icon_color="green")
    with col3:
        genus = "n/a" if result.genus is None else result.genus
        render_card("Genus", metric_html(genus, "closed surface"), material_icon="donut_large", icon_color="cream")

    render_card("Validation", check_rows(result.report), material_icon="verified", eyebrow=name)
    if not show_check_banner(result.report, f"Morse function {name}"):
        st.dataframe(check_table(result.report), hide_index=True, use_container_width=True)
        render_footer("Fix the document and reload")
        return

    left, right = st.columns(2)
    with left:
        st.subheader("Reeb graph edges")
        st.dataframe(reeb_edge_table(f), hide_index=True, use_container_width=True)
    with right:
        st.subheader("Critical neighborhoods")
        st.dataframe(neighborhood_table(f), hide_index=True, use_container_width=True)

    lattice = SymplecticLattice(result.genus)
    try:
        cs = cut_system_from_morse(f, lattice)
    except CerfError as exc:
        st.error(f"**{exc.code}**: {exc}")
        return
    if not cs.curves:
        render_card("Cut system", render_empty_row("A sphere bounds a ball: the cut system is empty."), material_icon="content_cut")
    else:
        st.subheader("Cut system")
        st.dataframe(cut_system_table(cs), hide_index=True, use_container_width=True)
        span = lagrangian_span(cs, lattice)
        st.caption("Span basis: " + ", ".join(c.label() for c in span.classes()))

    render_footer("Level circles are tagged by the identifiers in the document")


main()
