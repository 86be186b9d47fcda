/**
 * Drill-down behaviour for generated stance reports.
 *
 * The report HTML emits one span.sentence per sentence carrying
 * data-stance (the class label) and data-trace-ids (space-separated ids
 * of the reasoning blocks that informed it). This script makes sentences
 * clickable, toggling the visibility of their linked reasoning blocks,
 * and shows a stance tooltip on hover.
 *
 * The report must stay fully readable without this script, so binding
 * never hides anything on load, and it never touches the network.
 */

(() => {
  const TRACE_ATTR = "data-trace-ids";
  const STANCE_ATTR = "data-stance";
  const COLLAPSED = "collapsed";

  function linkedBlocks(doc: Document, span: Element): HTMLElement[] {
    const raw = span.getAttribute(TRACE_ATTR) || "";
    const blocks: HTMLElement[] = [];
    for (const id of raw.split(/\s+/)) {
      if (!id) continue;
      const block = doc.getElementById(id);
      if (block) {
        blocks.push(block);
      } else {
        console.warn("drilldown: missing trace block #" + id);
      }
    }
    return blocks;
  }

  function ensureTooltip(doc: Document): HTMLElement {
    let tip = doc.getElementById("tooltip");
    if (!tip) {
      tip = doc.createElement("div");
      tip.id = "tooltip";
      tip.style.display = "none";
      doc.body.appendChild(tip);
    }
    return tip;
  }

  function bindInteractions(doc: Document): void {
    const sentences = doc.querySelectorAll("span.sentence[" + TRACE_ATTR + "]");
    if (sentences.length === 0) {
      return;
    }
    const tooltip = ensureTooltip(doc);
    sentences.forEach((span) => {
      const blocks = linkedBlocks(doc, span);
      span.addEventListener("click", () => {
        for (const block of blocks) {
          block.classList.toggle(COLLAPSED);
        }
      });
      span.addEventListener("mouseenter", (event) => {
        tooltip.textContent = span.getAttribute(STANCE_ATTR) || "";
        tooltip.style.display = "block";
        const mouse = event as MouseEvent;
        tooltip.style.left = (mouse.pageX || 0) + 12 + "px";
        tooltip.style.top = (mouse.pageY || 0) + 12 + "px";
      });
      span.addEventListener("mouseleave", () => {
        tooltip.style.display = "none";
      });
    });
  }

  if (typeof document !== "undefined") {
    bindInteractions(document);
  }
})();
