"""Machine-readable result export and self-contained HTML reports.

Reports use a three-column layout per paragraph: the text with each
sentence highlighted by stance, the per-topic reasoning traces, and the
synthesis plus auxiliary information (topic ranking, document metadata,
degradation warnings). Everything is inline: no external stylesheet,
script, font, or image, so a report file travels on its own.

Document text is always HTML-entity escaped; report generation never
interprets document content as markup. The drill-down script is embedded
verbatim inside the single ``<script>`` element marked by
``DRILLDOWN SCRIPT`` (empty when no script asset is supplied, leaving a
fully readable static report with traces expanded).
"""

from __future__ import annotations

import html
import json
import re
from dataclasses import dataclass
from typing import IO, Union

from .reasoner import DocumentResult

# Five-step diverging stance palette (dovish .. hawkish).
STANCE_COLORS = {
    "dovish": "#2166ac",
    "leaning dovish": "#92c5de",
    "neutral": "#c8c8c8",
    "leaning hawkish": "#f4a582",
    "hawkish": "#b2182b",
}

SCRIPT_MARKER = "DRILLDOWN SCRIPT"


@dataclass(frozen=True)
class ReportBundle:
    result: DocumentResult
    html: str
    warnings: tuple[str, ...]


def export_result_json(result: DocumentResult) -> bytes:
    """Stable, pretty UTF-8 JSON; byte-idempotent through load_result_json."""
    return (json.dumps(result.to_dict(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def load_result_json(source: Union[bytes, str, IO[bytes]]) -> DocumentResult:
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        data = source.encode("utf-8")
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    return DocumentResult.from_dict(json.loads(data.decode("utf-8")))


_CSS = """
body { font-family: Georgia, 'Times New Roman', serif; margin: 0; background: #fafafa; color: #1a1a1a; }
header { padding: 16px 24px; border-bottom: 2px solid #333; background: #fff; }
header h1 { margin: 0 0 4px 0; font-size: 20px; }
header .meta { color: #555; font-size: 13px; }
section.paragraph { display: flex; gap: 16px; padding: 16px 24px; border-bottom: 1px solid #ddd; background: #fff; margin: 12px 0; }
.col { flex: 1 1 0; min-width: 0; }
.col h2 { font-size: 13px; text-transform: uppercase; letter-spacing: 0.08em; color: #666; margin: 0 0 8px 0; }
span.sentence { padding: 1px 2px; border-radius: 2px; cursor: pointer; }
div.trace { border: 1px solid #ddd; border-radius: 4px; padding: 8px 10px; margin-bottom: 8px; background: #fdfdfd; }
div.trace h3 { margin: 0 0 6px 0; font-size: 13px; font-family: monospace; }
div.trace ol { margin: 0 0 6px 0; padding-left: 18px; font-size: 13px; }
div.trace .q { display: block; }
div.trace .a { display: block; font-style: italic; color: #333; }
div.trace.collapsed ol, div.trace.collapsed p.assessment { display: none; }
p.assessment { margin: 0; font-size: 13px; }
.stance-chip { display: inline-block; padding: 0 6px; border-radius: 8px; color: #fff; font-size: 12px; }
table.topics { border-collapse: collapse; font-size: 12px; margin-top: 8px; }
table.topics td, table.topics th { border: 1px solid #ddd; padding: 2px 6px; text-align: left; }
ul.warnings { font-size: 12px; color: #8a5b00; }
footer { padding: 12px 24px; color: #777; font-size: 12px; }
#tooltip { position: absolute; display: none; background: #222; color: #fff; padding: 2px 8px; border-radius: 3px; font-size: 12px; pointer-events: none; }
"""


def _stance_css() -> str:
    rules = []
    for stance, color in STANCE_COLORS.items():
        cls = stance.replace(" ", "-")
        fg = "#fff" if stance in ("dovish", "hawkish") else "#1a1a1a"
        rules.append(f'span.sentence[data-stance="{stance}"] {{ background: {color}; color: {fg}; }}')
        rules.append(f".chip-{cls} {{ background: {color}; color: {fg}; }}")
    return "\n".join(rules)


def _chip(stance_value: str) -> str:
    cls = stance_value.replace(" ", "-")
    return f'<span class="stance-chip chip-{cls}">{html.escape(stance_value)}</span>'


def render_document_report(result: DocumentResult, script_asset: str = "") -> ReportBundle:
    """Render the three-column HTML report; pure function of its inputs."""
    e = html.escape
    parts: list[str] = []
    parts.append("<!DOCTYPE html>")
    parts.append('<html lang="en"><head><meta charset="utf-8">')
    parts.append(f"<title>{e(result.doc_id)}</title>")
    parts.append(f"<style>{_CSS}\n{_stance_css()}</style>")
    parts.append("</head><body>")
    parts.append("<header>")
    parts.append(f"<h1>{e(result.doc_id)}</h1>")
    parts.append(
        f'<div class="meta">{e(result.date.isoformat())} &middot; {e(result.doc_type)}</div>'
    )
    parts.append("</header>")
    parts.append("<main>")

    for para in result.paragraphs:
        pid = f"p{para.paragraph_index}"
        trace_ids = [f"{pid}-t{j}" for j in range(len(para.traces))]
        parts.append(f'<section class="paragraph" id="{pid}">')

        # Left: paragraph text, one span per sentence.
        parts.append('<div class="col col-text"><h2>Paragraph</h2><p>')
        spans = []
        for si, (sentence, stance) in enumerate(para.sentence_classes):
            spans.append(
                f'<span class="sentence" id="{pid}-s{si}" data-stance="{e(stance.value)}" '
                f'data-trace-ids="{e(" ".join(trace_ids))}">{e(sentence)}</span>'
            )
        parts.append(" ".join(spans))
        parts.append("</p></div>")

        # Centre: one reasoning block per topic trace.
        parts.append('<div class="col col-reasoning"><h2>Reasoning</h2>')
        for j, trace in enumerate(para.traces):
            parts.append(f'<div class="trace" id="{pid}-t{j}">')
            parts.append(f"<h3>{e(trace.mnemonic)}</h3>")
            if trace.path.steps:
                parts.append("<ol>")
                for step in trace.path.steps:
                    parts.append(
                        f'<li><span class="q">{e(step.question)}</span>'
                        f'<span class="a">{e(step.answer)}</span></li>'
                    )
                parts.append("</ol>")
            parts.append(
                f'<p class="assessment">{_chip(trace.assessment.stance.value)} '
                f"{e(trace.assessment.rationale)}</p>"
            )
            parts.append("</div>")
        if not para.traces:
            parts.append('<p class="assessment">No topic traces.</p>')
        parts.append("</div>")

        # Right: synthesis and auxiliary information.
        parts.append('<div class="col col-synthesis"><h2>Synthesis</h2>')
        parts.append(
            f'<p class="paragraph-class">Paragraph: {_chip(para.paragraph_class.value)}</p>'
        )
        if para.topics.entries:
            parts.append('<table class="topics"><tr><th>rank</th><th>topic</th><th>score</th></tr>')
            for entry in para.topics.entries:
                parts.append(
                    f"<tr><td>{entry.rank}</td><td>{e(entry.mnemonic)}</td>"
                    f"<td>{entry.score:.6g}</td></tr>"
                )
            parts.append("</table>")
        parts.append("</div>")
        parts.append("</section>")

    parts.append("</main>")
    parts.append("<footer>")
    if result.warnings:
        parts.append('<ul class="warnings">')
        for w in result.warnings:
            parts.append(f"<li>{e(w)}</li>")
        parts.append("</ul>")
    parts.append(f"{len(result.paragraphs)} paragraph(s).")
    parts.append("</footer>")
    parts.append(f"<!-- {SCRIPT_MARKER} -->")
    parts.append(f'<script id="drilldown">{script_asset}</script>')
    parts.append("</body></html>")

    html_text = "\n".join(parts) + "\n"
    _check_self_contained(html_text)
    return ReportBundle(result=result, html=html_text, warnings=result.warnings)


_EXTERNAL_REF = re.compile(r'(?:src|href)\s*=\s*["\']?\s*https?://', re.IGNORECASE)


def _check_self_contained(html_text: str) -> None:
    if _EXTERNAL_REF.search(html_text):
        raise ValueError("report references an external network resource")
