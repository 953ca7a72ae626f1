"""
cerf_ui: shared look for the cerf-forge dashboard pages.

Every page calls `inject_style()` right after `st.set_page_config(...)`
and then composes its layout from the helpers below. Helpers whose name
starts with `render_` write to the page; the rest return HTML strings so
the caller can compose them inside a card body.

    from cerf_ui import inject_style, render_page_header, render_card, type_badge

    inject_style()
    render_page_header("Switch Census", "Two-vertex ribbon neighborhoods")
    render_card("Profiles", type_badge("genus 1"), material_icon="hub")

Colors come from `settings.COLORS` so the SVG renderer and the dashboard
never drift apart.
"""

from __future__ import annotations

import streamlit as st

from checks import CheckReport
from settings import COLORS

FONT = "Jost, Helvetica, sans-serif"


# ---------------------------------------------------------------------------
# CSS
# ---------------------------------------------------------------------------

CERF_CSS = f"""
<style>
@import url('https://fonts.googleapis.com/css2?family=Jost:wght@300;400;500;600;700&family=Material+Symbols+Outlined:opsz,wght,FILL,GRAD@24,400,0,0&display=swap');

:root {{
  --cf-char:    {COLORS["char"]};
  --cf-navy:    {COLORS["navy"]};
  --cf-green:   {COLORS["green"]};
  --cf-pink:    {COLORS["pink"]};
  --cf-yellow:  {COLORS["yellow"]};
  --cf-sky:     {COLORS["sky"]};
  --cf-cream:   {COLORS["cream"]};
  --cf-mist:    {COLORS["mist"]};
  --cf-surface: {COLORS["surface"]};
  --cf-outline: {COLORS["outline"]};
  --cf-surface-variant: #e8e2d6;
  --cf-on-surface-variant: #625f56;
  --cf-shadow: 0 6px 24px rgba(45, 41, 38, 0.08);
}}

.material-symbols-outlined {{
  font-family: 'Material Symbols Outlined' !important;
  font-weight: normal;
  font-size: 24px;
  line-height: 1;
  display: inline-block;
  white-space: nowrap;
  font-feature-settings: 'liga';
  vertical-align: middle;
}}

/* :where() keeps the font override at zero specificity so class rules win. */
:where([data-testid="stApp"]),
:where([data-testid="stApp"] *):not(.material-symbols-outlined) {{
  font-family: 'Jost', 'Helvetica', sans-serif !important;
}}

[data-testid="stApp"] {{
  background: linear-gradient(135deg, var(--cf-mist) 0%, var(--cf-surface) 50%, var(--cf-cream) 100%) !important;
  background-attachment: fixed !important;
}}

[data-testid="stMainBlockContainer"] {{
  max-width: 1440px !important;
  padding: 2.5rem 3rem 5rem 3rem !important;
}}

[data-testid="stMain"] [data-testid="stVerticalBlock"] {{
  gap: 1.75rem !important;
}}

[data-testid="stHeader"] {{ background: transparent !important; }}
[data-testid="stDecoration"] {{ display: none !important; }}
.stDeployButton {{ display: none !important; }}

[data-testid="stSidebar"] {{
  background: var(--cf-surface) !important;
  border-right: 1px solid var(--cf-surface-variant) !important;
}}
[data-testid="stSidebar"] *:not(.material-symbols-outlined) {{
  color: var(--cf-char) !important;
}}

.cf-page-title {{
  font-size: 3rem !important;
  font-weight: 700 !important;
  letter-spacing: -0.035em !important;
  line-height: 1 !important;
  color: var(--cf-char) !important;
  margin: 0 !important;
}}
.cf-page-subtitle {{
  color: var(--cf-on-surface-variant) !important;
  font-weight: 500;
  margin-top: 0.4rem;
}}
.cf-stamp-eyebrow {{
  font-size: 0.7rem;
  text-transform: uppercase;
  letter-spacing: 0.18em;
  color: var(--cf-outline);
  font-weight: 600;
}}
.cf-stamp {{
  font-weight: 600;
  color: var(--cf-char);
  margin-top: 2px;
}}

.cf-card {{
  background: #ffffff;
  border-radius: 24px;
  padding: 32px 36px;
  box-shadow: var(--cf-shadow);
  border: 1px solid rgba(45, 41, 38, 0.04);
}}
.cf-card-header {{
  display: flex;
  justify-content: space-between;
  align-items: center;
  margin-bottom: 24px;
}}
.cf-card-title {{
  font-size: 1.4rem !important;
  font-weight: 700 !important;
  color: var(--cf-char) !important;
  display: flex;
  align-items: center;
  gap: 12px;
}}
.cf-card-eyebrow {{
  font-size: 0.65rem;
  font-weight: 600;
  text-transform: uppercase;
  letter-spacing: 0.16em;
  color: var(--cf-outline);
}}
.cf-icon-green {{ color: #3F634E; }}
.cf-icon-pink {{ color: #b04d5e; }}
.cf-icon-navy {{ color: var(--cf-navy); }}
.cf-icon-cream {{ color: var(--cf-cream); }}

.cf-metric {{
  font-size: 2.6rem;
  font-weight: 700;
  letter-spacing: -0.03em;
  color: var(--cf-char);
}}

.cf-row {{
  display: grid;
  grid-template-columns: 36px 1fr auto auto;
  gap: 18px;
  align-items: center;
  padding: 14px 12px;
  margin: 0 -12px;
}}
.cf-row + .cf-row {{ border-top: 1px solid rgba(45, 41, 38, 0.05); }}
.cf-rank {{ font-weight: 700; font-size: 0.85rem; color: var(--cf-outline); }}
.cf-entity {{ font-weight: 600; color: var(--cf-char); }}
.cf-empty-row {{
  padding: 18px 8px;
  color: var(--cf-on-surface-variant);
  font-style: italic;
}}

.cf-type-badge {{
  font-size: 0.62rem;
  padding: 3px 9px;
  border-radius: 999px;
  background: var(--cf-surface-variant);
  color: var(--cf-on-surface-variant);
  text-transform: uppercase;
  letter-spacing: 0.06em;
  font-weight: 700;
}}
.cf-chip {{
  font-weight: 700;
  font-size: 0.78rem;
  padding: 5px 12px;
  border-radius: 999px;
}}
.cf-chip-pass {{ background: var(--cf-green); color: #3F634E; }}
.cf-chip-fail {{ background: var(--cf-pink); color: var(--cf-char); }}
.cf-chip-type1 {{ background: var(--cf-yellow); color: var(--cf-char); }}
.cf-chip-type0 {{ background: var(--cf-navy); color: #ffffff; }}

.cf-svg-frame {{
  background: var(--cf-surface);
  border-radius: 16px;
  padding: 12px;
  overflow-x: auto;
}}

.cf-footer {{
  text-align: center;
  margin-top: 48px;
  padding: 24px;
  color: var(--cf-outline);
  font-size: 0.7rem;
  text-transform: uppercase;
  letter-spacing: 0.14em;
  font-weight: 600;
  border-top: 1px solid var(--cf-surface-variant);
}}
</style>
"""


def inject_style() -> None:
    st.markdown(CERF_CSS, unsafe_allow_html=True)


# ---------------------------------------------------------------------------
# Layout helpers
# ---------------------------------------------------------------------------


def render_page_header(
    title: str,
    subtitle: str | None = None,
    stamp_label: str = "Format",
    stamp_value: str | None = None,
) -> None:
    """Title and subtitle on the left, an optional stamp on the right."""
    col_head, col_stamp = st.columns([5, 2])
    with col_head:
        sub_html = f"<p class='cf-page-subtitle'>{subtitle}</p>" if subtitle else ""
        st.markdown(f"<h1 class='cf-page-title'>{title}</h1>{sub_html}", unsafe_allow_html=True)
    with col_stamp:
        if stamp_value:
            st.markdown(
                "<div style='text-align:right; padding-top:14px;'>"
                f"<div class='cf-stamp-eyebrow'>{stamp_label}</div>"
                f"<div class='cf-stamp'>{stamp_value}</div>"
                "</div>",
                unsafe_allow_html=True,
            )


def render_card(
    title: str,
    body_html: str,
    material_icon: str | None = None,
    icon_color: str = "navy",
    eyebrow: str | None = None,
) -> None:
    """Render a generic card.

    Args:
        title: Card title.
        body_html: The card body as a single HTML string.
        material_icon: Optional Material Symbols ligature name
            (e.g. "hub", "change_history", "hexagon").
        icon_color: One of "green", "pink", "navy", "cream".
        eyebrow: Optional small uppercase label on the right of the header.
    """
    icon_html = (
        f"<span class='material-symbols-outlined cf-icon-{icon_color}'>{material_icon}</span>"
        if material_icon
        else ""
    )
    eyebrow_html = f"<div class='cf-card-eyebrow'>{eyebrow}</div>" if eyebrow else ""
    st.markdown(
        "<div class='cf-card'>"
        "<div class='cf-card-header'>"
        f"<div class='cf-card-title'>{icon_html}{title}</div>"
        f"{eyebrow_html}"
        "</div>"
        f"{body_html}"
        "</div>",
        unsafe_allow_html=True,
    )


def render_svg_card(title: str, svg: str, eyebrow: str | None = None) -> None:
    render_card(title, f"<div class='cf-svg-frame'>{svg}</div>", material_icon="show_chart", eyebrow=eyebrow)


def render_footer(text: str) -> None:
    st.markdown(f"<div class='cf-footer'>{text}</div>", unsafe_allow_html=True)


# ---------------------------------------------------------------------------
# Component formatters
# ---------------------------------------------------------------------------


def type_badge(label: str) -> str:
    return f"<span class='cf-type-badge'>{label}</span>"


def status_chip(text: str, kind: str = "pass") -> str:
    """Colored chip. `kind` is one of "pass", "fail", "type0", "type1"."""
    cls = {
        "pass": "cf-chip-pass",
        "fail": "cf-chip-fail",
        "type0": "cf-chip-type0",
        "type1": "cf-chip-type1",
    }.get(kind, "cf-chip-pass")
    return f"<span class='cf-chip {cls}'>{text}</span>"


def metric_html(value, caption: str) -> str:
    return f"<div class='cf-metric'>{value}</div>{type_badge(caption)}"


def render_row(rank: int, entity: str, badge: str | None = None, chip_html: str | None = None) -> str:
    """One ranked row: rank, entity, badge, chip."""
    badge_html = type_badge(badge) if badge else ""
    return (
        "<div class='cf-row'>"
        f"<div class='cf-rank'>{rank:02d}</div>"
        f"<div class='cf-entity'>{entity}</div>"
        f"<div>{badge_html}</div>"
        f"<div>{chip_html or ''}</div>"
        "</div>"
    )


def render_empty_row(message: str = "Nothing to show for this document.") -> str:
    return f"<div class='cf-empty-row'>{message}</div>"


def check_rows(report: CheckReport) -> str:
    if not report.checks:
        return render_empty_row("No checks ran.")
    return "".join(
        render_row(
            n + 1,
            c.name,
            badge=c.detail or None,
            chip_html=status_chip("pass", "pass") if c.passed else status_chip("fail", "fail"),
        )
        for n, c in enumerate(report.checks)
    )


def show_check_banner(report: CheckReport, subject: str) -> bool:
    """Red banner naming every failed check. Returns True when the report is clean."""
    broken = report.failures
    if not broken:
        return True
    lines = "\n".join(
        f"- **{c.name}**" + (f": {c.detail}" if c.detail else "") for c in broken
    )
    st.error(f"**{subject} failed validation.** Later sections are skipped.\n\n{lines}")
    return False


# ---------------------------------------------------------------------------
# Plotly theme
# ---------------------------------------------------------------------------

PLOTLY_COLORS = [
    COLORS["navy"],
    COLORS["green"],
    COLORS["yellow"],
    COLORS["pink"],
    COLORS["sky"],
    COLORS["cream"],
    COLORS["char"],
]


def cerf_plotly(fig, height: int = 350, **kwargs):
    """Light theme for a plotly figure. Returns the same fig (mutated).

    Extra kwargs go to fig.update_layout(); `xaxis` / `yaxis` dicts are
    merged into the defaults instead of replacing them.
    """
    axis = {
        "gridcolor": "rgba(45, 41, 38, 0.08)",
        "linecolor": "rgba(45, 41, 38, 0.12)",
        "tickfont": {"color": "#625f56", "family": FONT},
        "title_font": {"color": COLORS["char"], "family": FONT},
    }
    xaxis = {**axis, **kwargs.pop("xaxis", {})}
    yaxis = {**axis, **kwargs.pop("yaxis", {})}
    margin = kwargs.pop("margin", dict(l=8, r=8, t=24, b=8))
    colorway = kwargs.pop("colorway", PLOTLY_COLORS)
    for key in ("paper_bgcolor", "plot_bgcolor", "height", "font"):
        kwargs.pop(key, None)

    fig.update_layout(
        paper_bgcolor="rgba(0,0,0,0)",
        plot_bgcolor="rgba(0,0,0,0)",
        font={"color": COLORS["char"], "family": FONT},
        height=height,
        margin=margin,
        xaxis=xaxis,
        yaxis=yaxis,
        colorway=colorway,
        **kwargs,
    )
    return fig
