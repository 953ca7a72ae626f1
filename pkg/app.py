"""
cerf-forge dashboard launcher.

Home page of the multi-page Streamlit app. Each view lives in
pages/N_Name.py and uses the shared look from `cerf_ui.py` per
`STYLE_GUIDE.md`. The command-line tool `cerf_cli.py` covers the same
operations for scripting.
"""

import streamlit as st

from cerf_ui import inject_style, render_footer, render_page_header
from settings import FORMAT_VERSION

# ---------------------------------------------------------------------------
# Page config
# ---------------------------------------------------------------------------

st.set_page_config(
    page_title="cerf-forge",
    page_icon="🔺",
    layout="wide",
    initial_sidebar_state="auto",
)

inject_style()


# ---------------------------------------------------------------------------
# Launcher tile CSS
# ---------------------------------------------------------------------------

st.markdown(
    """
<style>
.cf-launcher-grid {
  display: grid;
  gap: 28px;
}
.cf-launcher-grid.cols-2 { grid-template-columns: repeat(2, minmax(0, 1fr)); }
.cf-launcher-section { margin-top: 36px; }
.cf-launcher-section:first-of-type { margin-top: 12px; }
.cf-launcher-section-head {
  display: flex;
  align-items: baseline;
  gap: 14px;
  margin-bottom: 18px;
  padding-bottom: 10px;
  border-bottom: 1px solid var(--cf-surface-variant);
}
.cf-launcher-section-title {
  font-size: 1.35rem !important;
  font-weight: 700 !important;
  color: var(--cf-char) !important;
  margin: 0 !important;
}
.cf-launcher-section-count {
  font-size: 0.65rem;
  font-weight: 700;
  text-transform: uppercase;
  letter-spacing: 0.16em;
  color: var(--cf-outline);
}
.cf-launcher-card {
  background: #ffffff;
  border-radius: 24px;
  padding: 32px;
  box-shadow: var(--cf-shadow);
  display: flex;
  flex-direction: column;
  text-decoration: none !important;
  color: inherit !important;
  min-height: 220px;
  transition: transform 0.2s ease;
}
.cf-launcher-card:hover { transform: translateY(-3px); }
.cf-launcher-icon {
  width: 52px;
  height: 52px;
  border-radius: 16px;
  display: inline-flex;
  align-items: center;
  justify-content: center;
  margin-bottom: 22px;
}
.cf-launcher-icon.cream { background: rgba(231, 183, 138, 0.25); color: #8b5a2b; }
.cf-launcher-icon.green { background: rgba(133, 199, 157, 0.25); color: #3F634E; }
.cf-launcher-icon.pink { background: rgba(254, 153, 169, 0.25); color: #b04d5e; }
.cf-launcher-icon.navy { background: rgba(7, 74, 122, 0.15); color: var(--cf-navy); }
.cf-launcher-title {
  font-size: 1.4rem !important;
  font-weight: 700 !important;
  color: var(--cf-char) !important;
  margin: 0 0 8px 0 !important;
}
.cf-launcher-desc {
  font-size: 0.9rem;
  color: var(--cf-on-surface-variant);
  line-height: 1.5;
  flex-grow: 1;
}
.cf-launcher-cta {
  margin-top: 22px;
  color: var(--cf-navy) !important;
  font-size: 0.65rem;
  font-weight: 700;
  text-transform: uppercase;
  letter-spacing: 0.14em;
}
@media (max-width: 1100px) {
  .cf-launcher-grid { grid-template-columns: minmax(0, 1fr); }
}
</style>
""",
    unsafe_allow_html=True,
)


# ---------------------------------------------------------------------------
# Page registry
# ---------------------------------------------------------------------------

# (slug, icon, icon_color, title, description, section)
PAGES = [
    ("Switch_Census", "hub", "navy",
     "Switch Census",
     "Ribbon neighborhoods of two and three critical points at one level: genus, boundary circles and hexagon types.",
     "Combinatorics"),

    ("Morse_Slices", "stacked_line_chart", "green",
     "Morse Slices",
     "Validate a sliced Morse function, read its Reeb graph and critical neighborhoods, extract the handlebody cut system.",
     "Combinatorics"),

    ("Trisection_Invariants", "change_history", "cream",
     "Trisection Invariants",
     "Euler characteristic, signature and first homology for the trisection catalog, plus the compiled circle family.",
     "Four-manifolds"),

    ("Capping_Report", "hexagon", "pink",
     "Capping Report",
     "Fill a polygon decomposition, count the signed projective-plane caps and check the signature identity.",
     "Four-manifolds"),
]

SECTION_ORDER = ["Combinatorics", "Four-manifolds"]


def _render_launcher_card(slug: str, icon: str, icon_color: str, title: str, desc: str, section: str) -> str:
    _ = section  # carried by the section header
    return (
        f"<a class='cf-launcher-card' href='./{slug}' target='_self'>"
        f"<div class='cf-launcher-icon {icon_color}'>"
        f"<span class='material-symbols-outlined' style='font-size:28px;'>{icon}</span>"
        "</div>"
        f"<h3 class='cf-launcher-title'>{title}</h3>"
        f"<p class='cf-launcher-desc'>{desc}</p>"
        "<div class='cf-launcher-cta'>Open view</div>"
        "</a>"
    )


def _grouped_pages() -> dict[str, list[tuple]]:
    buckets: dict[str, list[tuple]] = {key: [] for key in SECTION_ORDER}
    for entry in PAGES:
        buckets[entry[5]].append(entry)
    return buckets


def main():
    render_page_header(
        title="🔺 cerf-forge",
        subtitle="Combinatorial Cerf theory: from sliced Morse functions to four-manifold invariants.",
        stamp_label="Document format",
        stamp_value=FORMAT_VERSION,
    )

    blocks: list[str] = []
    for section, items in _grouped_pages().items():
        if not items:
            continue
        cards = "".join(_render_launcher_card(*p) for p in items)
        count = "1 view" if len(items) == 1 else f"{len(items)} views"
        blocks.append(
            "<div class='cf-launcher-section'>"
            "<div class='cf-launcher-section-head'>"
            f"<h3 class='cf-launcher-section-title'>{section}</h3>"
            f"<span class='cf-launcher-section-count'>{count}</span>"
            "</div>"
            f"<div class='cf-launcher-grid cols-2'>{cards}</div>"
            "</div>"
        )
    st.markdown("".join(blocks), unsafe_allow_html=True)

    render_footer("cerf-forge · exact integer arithmetic · same input, same bytes")


if __name__ == "__main__":
    main()
