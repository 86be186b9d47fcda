// @vitest-environment jsdom
//
// Exercises the compiled asset (dist/drilldown.js) exactly as a report
// would: real DOM from jsdom, script evaluated at end of body, events
// dispatched on sentence spans. Network access is instrumented and must
// stay at zero.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

const here = dirname(fileURLToPath(import.meta.url));
const scriptSource = readFileSync(join(here, "..", "dist", "drilldown.js"), "utf-8");

// Mirrors the structure emitted by the report generator: sentence spans
// carry data-stance and data-trace-ids; reasoning blocks carry the ids.
const REPORT_BODY = `
  <section class="paragraph" id="p0">
    <div class="col col-text"><p>
      <span class="sentence" id="p0-s0" data-stance="hawkish" data-trace-ids="p0-t0 p0-t1">Inflation is sticky.</span>
      <span class="sentence" id="p0-s1" data-stance="neutral" data-trace-ids="p0-t0 p0-t1">Something neutral.</span>
    </p></div>
    <div class="col col-reasoning">
      <div class="trace" id="p0-t0"><h3>CORE-INFLATION</h3><ol><li>step</li></ol></div>
      <div class="trace" id="p0-t1"><h3>CORE-TARGET</h3><ol><li>step</li></ol></div>
    </div>
  </section>
`;

let fetchSpy: ReturnType<typeof vi.fn>;
let xhrOpens: number;

function installNetworkProbes(): void {
  fetchSpy = vi.fn(() => Promise.reject(new Error("network use is forbidden")));
  (globalThis as Record<string, unknown>).fetch = fetchSpy;
  xhrOpens = 0;
  class CountingXHR {
    open() {
      xhrOpens += 1;
    }
    send() {
      xhrOpens += 1;
    }
  }
  (globalThis as Record<string, unknown>).XMLHttpRequest = CountingXHR;
}

function loadReport(body: string): void {
  document.body.innerHTML = body;
  // evaluate the shipped asset in global scope, like a <script> at </body>
  new Function(scriptSource)();
}

function sentence(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing ${id}`);
  return el;
}

beforeEach(() => {
  installNetworkProbes();
});

afterEach(() => {
  document.body.innerHTML = "";
  vi.restoreAllMocks();
});

describe("drill-down binding", () => {
  it("click toggles the linked reasoning blocks", () => {
    loadReport(REPORT_BODY);
    const span = sentence("p0-s0");
    const t0 = sentence("p0-t0");
    const t1 = sentence("p0-t1");
    expect(t0.classList.contains("collapsed")).toBe(false);
    span.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(t0.classList.contains("collapsed")).toBe(true);
    expect(t1.classList.contains("collapsed")).toBe(true);
  });

  it("double toggle restores the initial state", () => {
    loadReport(REPORT_BODY);
    const span = sentence("p0-s1");
    const t0 = sentence("p0-t0");
    const before = t0.className;
    span.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    span.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(t0.className).toBe(before);
  });

  it("hover shows a tooltip carrying the stance label", () => {
    loadReport(REPORT_BODY);
    const span = sentence("p0-s0");
    span.dispatchEvent(new MouseEvent("mouseenter"));
    const tip = document.getElementById("tooltip");
    expect(tip).not.toBeNull();
    expect(tip!.textContent).toBe("hawkish");
    expect(tip!.style.display).toBe("block");
    span.dispatchEvent(new MouseEvent("mouseleave"));
    expect(tip!.style.display).toBe("none");
  });

  it("missing trace ids log a warning and are skipped", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    loadReport(`
      <span class="sentence" id="s" data-stance="neutral" data-trace-ids="gone p0-t0"></span>
      <div class="trace" id="p0-t0"></div>
    `);
    expect(warn).toHaveBeenCalledWith(expect.stringContaining("gone"));
    const span = sentence("s");
    span.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(sentence("p0-t0").classList.contains("collapsed")).toBe(true);
  });

  it("a report with no sentences binds as a no-op", () => {
    expect(() => loadReport("<p>empty report</p>")).not.toThrow();
    expect(document.getElementById("tooltip")).toBeNull();
  });

  it("never issues network requests", () => {
    loadReport(REPORT_BODY);
    const span = sentence("p0-s0");
    span.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    span.dispatchEvent(new MouseEvent("mouseenter"));
    span.dispatchEvent(new MouseEvent("mouseleave"));
    expect(fetchSpy).not.toHaveBeenCalled();
    expect(xhrOpens).toBe(0);
  });

  it("content is fully visible when the script is stripped", () => {
    document.body.innerHTML = REPORT_BODY; // no script evaluation
    for (const trace of Array.from(document.querySelectorAll("div.trace"))) {
      expect(trace.classList.contains("collapsed")).toBe(false);
    }
    expect(document.getElementById("tooltip")).toBeNull();
  });
});
