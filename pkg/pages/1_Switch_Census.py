"""
Switch Census
Ribbon neighborhoods of the critical level when two (or three) critical
points share a height. The two-vertex census is the list every height
switch is classified against; the three-vertex census feeds the triple
switch polygons.
"""

from __future__ import annotations

import pandas as pd
import plotly.express as px
import streamlit as st

from cerf_ui import (
    cerf_plotly,
    inject_style,
    metric_html,
    render_card,
    render_footer,
    render_page_header,
)
from dashboard_data import census_table, profile_counts
from settings import configure_logging, thread_count

st.set_page_config(
    page_title="Switch Census",
    page_icon="🕸️",
    layout="wide",
    initial_sidebar_state="collapsed",
)

inject_style()
configure_logging()


@st.cache_data(show_spinner="Enumerating ribbon neighborhoods…")
def load_census(census: str) -> pd.DataFrame:
    return census_table(census, threads=thread_count())


def _profile_chart(counts: pd.DataFrame, title: str):
    fig = px.bar(counts, x="profile", y="entries", color="genus", text="entries")
    fig.update_traces(textposition="outside")
    return cerf_plotly(fig, height=300, title=title, showlegend=False, xaxis={"title": "genus / boundary"})


def main():
    render_page_header(
        "Switch Census",
        "Connected orientable ribbon neighborhoods, up to relabeling, rotation and side exchange.",
        stamp_label="Threads",
        stamp_value=str(thread_count()),
    )

    pairs = load_census("figure1")
    triples = load_census("triple")

    col1, col2, col3 = st.columns(3)
    with col1:
        render_card("Two vertices", metric_html(len(pairs), "neighborhoods"), material_icon="hub")
    with col2:
        genus_one = int((pairs["genus"] == 1).sum()) if not pairs.empty else 0
        render_card("Type1 switches", metric_html(genus_one, "genus-one entries"), material_icon="swap_vert", icon_color="pink")
    with col3:
        render_card("Three vertices", metric_html(len(triples), "neighborhoods"), material_icon="change_history", icon_color="green")

    tab_pairs, tab_triples = st.tabs(["Two critical points", "Three critical points"])
    with tab_pairs:
        st.plotly_chart(_profile_chart(profile_counts(pairs), "Profiles"), use_container_width=True)
        st.dataframe(pairs, hide_index=True, use_container_width=True)
    with tab_triples:
        st.plotly_chart(_profile_chart(profile_counts(triples), "Profiles"), use_container_width=True)
        if not triples.empty:
            st.caption("Type1 switches counted around the six edges of each permutahedron.")
        st.dataframe(triples, hide_index=True, use_container_width=True)

    render_footer("Census order: genus, boundary circles, canonical encoding")


main()
