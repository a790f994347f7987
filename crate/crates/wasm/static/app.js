// Demo wiring: three operations exposed by the wasm module, no framework.
// Build the module first (see the README):
//   wasm-pack build crates/wasm --target web --out-dir static/pkg

import init, {
  validate_lens,
  category_of_elements,
  decalage_of,
  preset,
} from "./pkg/lenscat_wasm.js";

const TABS = {
  lens: {
    presets: ["non-split-lens", "projection-lens", "elements-lens"],
    run: validate_lens,
    hint:
      "A lens file: a functor with a lift table. The checks report L1–L3 " +
      "witnesses, then whether the lens is a discrete/split opfibration and " +
      "whether (lifts, verticals) factorises strictly.",
    verdicts: (r) => [
      ["laws (L1–L3)", r.valid],
      ["discrete opfibration", r.is_discrete_opfibration],
      ["split opfibration", r.is_split_opfibration],
      ["strict factorisation", r.strict_factorisation],
    ],
  },
  elements: {
    presets: ["sample-copresheaf"],
    run: category_of_elements,
    hint:
      "A copresheaf file: sets indexed by the objects of a base category, " +
      "acted on by its morphisms. The diagram shows el(F); colours follow " +
      "the base object each element sits over.",
    verdicts: (r) => [
      ["copresheaf laws", r.valid],
      ["projection is a discrete opfibration", r.is_discrete_opfibration],
    ],
  },
  decalage: {
    presets: [
      "interval",
      "commutative-square",
      "cyclic3",
      "walking-idempotent",
      "parallel-pair",
    ],
    run: decalage_of,
    hint:
      "A category file. Dec(B) has the morphisms of B as objects; the " +
      "comonad laws are verified on three levels of the construction, and " +
      "the counit is checked to be a discrete opfibration.",
    verdicts: (r) => [
      ["category axioms", r.valid],
      ["comonad laws", r.comonad_laws_hold],
      ["counit is a discrete opfibration", r.counit_is_discrete_opfibration],
    ],
  },
};

let current = "lens";

const el = (id) => document.getElementById(id);

function switchTab(name) {
  current = name;
  for (const b of el("tabs").querySelectorAll("button")) {
    b.classList.toggle("active", b.dataset.tab === name);
  }
  const tab = TABS[name];
  const select = el("preset");
  select.innerHTML = "";
  for (const p of tab.presets) {
    const opt = document.createElement("option");
    opt.value = p;
    opt.textContent = p;
    select.appendChild(opt);
  }
  el("hint").textContent = tab.hint;
  loadPreset();
  run();
}

function loadPreset() {
  el("input").value = preset(el("preset").value);
}

function badge(label, ok) {
  return `<span class="${ok ? "ok" : "bad"}">${label}: ${ok ? "yes" : "no"}</span>`;
}

function run() {
  const tab = TABS[current];
  let report;
  try {
    report = JSON.parse(tab.run(el("input").value));
  } catch (err) {
    el("verdict").innerHTML = badge("internal error", false);
    el("witnesses").textContent = String(err);
    el("diagram").innerHTML = "";
    return;
  }
  if (report.error) {
    el("verdict").innerHTML = badge("parse", false);
    el("witnesses").textContent = report.error;
    el("diagram").innerHTML = "";
    return;
  }
  el("verdict").innerHTML =
    tab.verdicts(report).map(([l, v]) => badge(l, v)).join(" ") +
    (report.summary ? `<div class="hint">${report.summary}</div>` : "");
  el("witnesses").textContent = (report.witnesses || []).join("\n");
  el("diagram").innerHTML = report.svg || "";
}

async function main() {
  await init();
  el("tabs").addEventListener("click", (e) => {
    if (e.target.dataset.tab) switchTab(e.target.dataset.tab);
  });
  el("preset").addEventListener("change", () => {
    loadPreset();
    run();
  });
  el("run").addEventListener("click", run);
  switchTab("lens");
}

main();
