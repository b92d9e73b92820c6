import init, { analyze, check, enumerate } from "./pkg/izlab_wasm.js";

const $ = (id) => document.getElementById(id);

function el(tag, attrs = {}, children = []) {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const c of children) node.append(c);
  return node;
}

function cayley(caption, rows, symbol) {
  const head = el("tr", {}, [el("th", {}, [symbol]), ...rows.map((_, j) => el("th", {}, [String(j)]))]);
  const body = rows.map((row, i) =>
    el("tr", {}, [el("th", {}, [String(i)]), ...row.map((v) => el("td", {}, [String(v)]))]),
  );
  return el("table", { class: "cayley" }, [el("caption", {}, [caption]), head, ...body]);
}

function showError(target, err) {
  target.replaceChildren(el("p", { class: "err" }, [String(err.message ?? err)]));
}

function yesNo(flag) {
  return el("span", { class: flag ? "yes" : "no" }, [flag ? "yes" : "no"]);
}

const FLAGS = [
  ["in_I", "implication zroupoid (I)"],
  ["in_I20", "involutive, x'' = x (I20)"],
  ["in_MC", "meet-commutative (MC)"],
  ["in_S", "I20 and MC (S)"],
  ["in_IS", "associative (IS)"],
  ["derived_is_bisemigroup", "derived algebra is a bisemigroup"],
  ["derived_is_bisemilattice", "derived algebra is a bisemilattice"],
  ["derived_satisfies_BR", "Birkhoff identity holds"],
  ["derived_is_birkhoff_system", "Birkhoff system"],
  ["derived_is_birkhoff_bisemigroup", "Birkhoff bisemigroup"],
  ["derived_essentially_semigroup", "meet = join, associative"],
];

function runAnalyze() {
  const out = $("analysis");
  try {
    const r = JSON.parse(analyze($("table").value));
    const n = r.algebra.size;
    const tables = el("div", {}, [
      cayley("x -> y", r.algebra.table, "->"),
      cayley("x ^ y", r.derived.meet, "^"),
      cayley("x v y", r.derived.join, "v"),
      cayley("x'", r.prime.map((p) => [p]), "'"),
    ]);
    const defining = r.defining.map((d) =>
      el("li", {}, [
        el("code", {}, [d.identity]), ": ", yesNo(d.witness === null),
        d.witness ? ` (${JSON.stringify(d.witness)})` : "",
      ]),
    );
    const flags = FLAGS.map(([key, label]) => {
      const w = r.report.witnesses[key];
      const li = el("li", {}, [yesNo(r.report[key]), " ", label]);
      if (w) li.title = JSON.stringify(w);
      return li;
    });
    out.replaceChildren(
      el("p", {}, [`${n} element${n === 1 ? "" : "s"}`]),
      tables,
      el("ul", {}, defining),
      el("ul", { class: "flags" }, flags),
    );
  } catch (e) {
    showError(out, e);
  }
}

function runCheck() {
  const out = $("verdict");
  try {
    const r = JSON.parse(check($("table").value, $("identity").value));
    const parts = [el("code", {}, [r.identity]), ": ", yesNo(r.holds)];
    if (!r.holds) {
      const bind = Object.entries(r.witness.assignment).map(([k, v]) => `${k} = ${v}`).join(", ");
      parts.push(` at ${bind || "no variables"}: left side ${r.witness.lhs}, right side ${r.witness.rhs}`);
    }
    out.replaceChildren(el("p", {}, parts));
  } catch (e) {
    showError(out, e);
  }
}

function runEnumerate() {
  const out = $("models");
  try {
    const r = JSON.parse(enumerate(Number($("size").value), $("variety").value));
    const models = r.algebras.map((a, i) => {
      const box = el("div", { class: "model" }, [cayley(`#${i + 1}`, a.table, "->")]);
      box.addEventListener("click", () => {
        $("table").value = JSON.stringify(a.table);
        runAnalyze();
        $("table").scrollIntoView({ behavior: "smooth" });
      });
      return box;
    });
    out.replaceChildren(
      el("p", {}, [`${r.algebras.length} models of size ${r.size} in ${r.variety}, up to isomorphism`]),
      ...models,
    );
  } catch (e) {
    showError(out, e);
  }
}

await init();
$("analyze").addEventListener("click", runAnalyze);
$("check").addEventListener("click", runCheck);
$("enumerate").addEventListener("click", runEnumerate);
runAnalyze();
