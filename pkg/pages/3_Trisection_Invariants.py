"""
Trisection Invariants
Catalog of standard trisection diagrams with χ, σ and H₁, and the
circle family each one compiles to.
"""

from __future__ import annotations

import streamlit as st

from cerf_svg import render_svg
from cerf_ui import (
    inject_style,
    metric_html,
    render_card,
    render_footer,
    render_page_header,
    render_svg_card,
    show_check_banner,
)
from checks import CerfError
from dashboard_data import fixture_documents, segment_table, trisection_catalog_table
from family_one import assemble_circle_family, standard_family_from_trisection
from invariants import standard_trisections, trisection_invariants, validate_trisection
from settings import configure_logging

st.set_page_config(
    page_title="Trisection Invariants",
    page_icon="🔺",
    layout="wide",
    initial_sidebar_state="collapsed",
)

inject_style()
configure_logging()


@st.cache_data(show_spinner=False)
def load_catalog():
    return trisection_catalog_table()


def _diagrams() -> dict:
    diagrams = dict(standard_trisections())
    for name, env in fixture_documents("trisection").items():
        diagrams.setdefault(f"fixture: {name}", env.payload)
    return diagrams


def main():
    render_page_header(
        "Trisection Invariants",
        "Euler characteristic, signature and first homology from three cut systems.",
    )

    st.subheader("Catalog")
    st.dataframe(load_catalog(), hide_index=True, use_container_width=True)

    diagrams = _diagrams()
    name = st.selectbox("Diagram", list(diagrams))
    T = diagrams[name]
    if not show_check_banner(validate_trisection(T), name):
        render_footer("Only valid diagrams compile")
        return

    values = trisection_invariants(T)
    col1, col2, col3 = st.columns(3)
    with col1:
        render_card("χ", metric_html(values["chi"], f"g={T.g}, k={T.k}"), material_icon="functions")
    with col2:
        render_card("σ", metric_html(values["sigma"], "wall signature"), material_icon="balance", icon_color="pink")
    with col3:
        render_card("H₁", metric_html(values["h1_rank"], "rank"), material_icon="hub", icon_color="green")

    try:
        family = standard_family_from_trisection(T)
        record = assemble_circle_family(family)
    except CerfError as exc:
        st.error(f"**{exc.code}**: {exc}")
        return

    render_svg_card("Compiled circle family", render_svg(family), eyebrow=f"{len(family.segments)} segments")
    st.subheader("Segments")
    st.dataframe(segment_table(family), hide_index=True, use_container_width=True)
    with st.expander("Recovered record"):
        st.json(record.as_dict())

    render_footer("Families start at the adapted basis of the first cut system")


main()
