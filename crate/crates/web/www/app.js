import init, { explore, swap, graph_step, chain, alpha, solve } from "./pkg/cds_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function call(f, ...args) {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (e) {
    return { err: String(e) };
  }
}

function show(el, text, isError) {
  el.textContent = text;
  el.classList.toggle("error", !!isError);
}

function node(tag, attrs) {
  const n = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) n.setAttribute(k, v);
  return n;
}

// Vertices on a circle, in the order given.
function drawGraph(svg, graph, { favorable = [], onEdge = null, hot = null } = {}) {
  svg.replaceChildren();
  const w = +svg.getAttribute("width"), h = +svg.getAttribute("height");
  const r = Math.min(w, h) / 2 - 28;
  const pos = {};
  graph.vertices.forEach((v, i) => {
    const a = (2 * Math.PI * i) / Math.max(graph.vertices.length, 1) - Math.PI / 2;
    pos[v] = [w / 2 + r * Math.cos(a), h / 2 + r * Math.sin(a)];
  });
  for (const [x, y] of graph.edges) {
    const [x1, y1] = pos[x], [x2, y2] = pos[y];
    if (onEdge) {
      const hit = node("line", { x1, y1, x2, y2, class: "hit" });
      hit.addEventListener("click", () => onEdge(x, y));
      hit.appendChild(node("title", {})).textContent = `${x},${y}`;
      svg.appendChild(hit);
    }
    const isHot = hot && ((hot[0] === x && hot[1] === y) || (hot[0] === y && hot[1] === x));
    svg.appendChild(node("line", { x1, y1, x2, y2, class: isHot ? "hot" : "" }));
  }
  for (const v of graph.vertices) {
    const [cx, cy] = pos[v];
    svg.appendChild(node("circle", { cx, cy, r: 13, class: favorable.includes(v) ? "fav" : "" }));
    svg.appendChild(node("text", { x: cx, y: cy })).textContent = v;
  }
}

// ---- permutation explorer ----

let currentPerm = null;

function loadPerm(text) {
  const res = call(explore, text);
  if (res.err) return show($("perm-info"), res.err, true);
  renderPerm(res.ok);
}

function renderPerm(view, note = "") {
  currentPerm = view.perm;
  $("perm").value = view.perm.join(" ");
  const lines = [
    `permutation  [${view.perm.join(", ")}]`,
    `pile         {${view.pile.join(", ")}}  (${view.pile.length} of ${view.perm.length - 1})`,
    `sortable     ${view.sortable}`,
  ];
  if (view.fixed_point) lines.push(view.fixed_code ? `fixed point with code ${view.fixed_code}` : "identity");
  if (note) lines.push(note);
  show($("perm-info"), lines.join("\n"));
  const box = $("perm-moves");
  box.replaceChildren();
  for (const [p, q] of view.moves) {
    const b = document.createElement("button");
    b.className = "move";
    b.textContent = `${p},${q}`;
    b.addEventListener("click", () => {
      const res = call(swap, currentPerm.join(" "), p, q);
      if (res.err) return show($("perm-info"), res.err, true);
      renderPerm(res.ok.after, `last swap ${p},${q}: ${res.ok.case}, overlap graph matches gcds: ${res.ok.matches_gcds}`);
    });
    box.appendChild(b);
  }
  drawGraph($("perm-graph"), view.overlap, { favorable: view.pile.map(String) });
}

$("perm-load").addEventListener("click", () => loadPerm($("perm").value));
$("perm-alpha").addEventListener("click", () => {
  const res = call(alpha, 8);
  if (res.ok) loadPerm(res.ok.perm.join(" "));
});

// ---- graph stepper ----

let graphHistory = [];

function currentGraph() {
  return graphHistory[graphHistory.length - 1];
}

function favList() {
  return $("graph-fav").value.split(",").map((s) => s.trim()).filter(Boolean);
}

function renderGraph(info) {
  const g = currentGraph();
  $("graph-json").value = JSON.stringify(g);
  const fav = favList();
  drawGraph($("graph-svg"), g, { favorable: fav, onEdge: stepAt });
  if (info !== undefined) show($("graph-info"), info);
  if (g.edges.length === 0) {
    const won = g.vertices.length > 0 && g.vertices.every((v) => fav.includes(v));
    show($("graph-info"), `${$("graph-info").textContent}\nedgeless: ${won ? "ONE" : "TWO"} wins`);
  }
}

function stepAt(x, y) {
  const res = call(graph_step, JSON.stringify(currentGraph()), x, y, $("delete").checked);
  if (res.err) return show($("graph-info"), res.err, true);
  graphHistory.push(res.ok.graph);
  renderGraph(`gcds${$("delete").checked ? "₂" : ""} at ${x},${y}; masterlist {${res.ok.masterlist.join(", ")}}`);
}

function loadChain(m) {
  const res = call(chain, m);
  if (res.err) return show($("graph-info"), res.err, true);
  graphHistory = [res.ok.graph];
  $("graph-fav").value = res.ok.favorable.join(",");
  renderGraph(`triangle chain with ${m} triangles`);
}

for (let m = 1; m <= 6; m++) $("chain-m").add(new Option(String(m), String(m)));
$("chain-m").value = "2";
$("chain-load").addEventListener("click", () => loadChain(+$("chain-m").value));
$("graph-undo").addEventListener("click", () => {
  if (graphHistory.length > 1) graphHistory.pop();
  renderGraph("");
});
$("graph-load").addEventListener("click", () => {
  try {
    graphHistory = [JSON.parse($("graph-json").value)];
    renderGraph("");
  } catch (e) {
    show($("graph-info"), String(e), true);
  }
});

// ---- solver ----

let solved = null;
let solvedStep = 0;

function renderSolveStep() {
  if (!solved) return;
  const { res, kind } = solved;
  $("solve-step").textContent = `${solvedStep} / ${res.states.length - 1}`;
  const box = $("solve-state");
  box.replaceChildren();
  const next = res.principal_variation[solvedStep];
  if (kind === "graph") {
    const svg = node("svg", { width: 360, height: 360 });
    box.appendChild(svg);
    drawGraph(svg, res.states[solvedStep], { favorable: solved.favorable, hot: next });
  } else {
    const p = document.createElement("div");
    p.className = "out";
    p.textContent = `[${res.states[solvedStep].join(", ")}]` + (next ? `\nnext: ${next.join(",")}` : "");
    box.appendChild(p);
  }
}

$("solve-go").addEventListener("click", () => {
  const kind = $("solve-what").value;
  const first = $("solve-first").value;
  let request, favorable;
  if (kind === "graph") {
    favorable = favList();
    request = { graph: currentGraph(), favorable, first };
  } else {
    favorable = $("solve-fav").value.split(",").map((s) => s.trim()).filter(Boolean);
    request = { perm: currentPerm, favorable, first };
  }
  const res = call(solve, JSON.stringify(request));
  if (res.err) {
    solved = null;
    return show($("solve-info"), res.err, true);
  }
  const r = res.ok;
  const lines = [
    `winner       ${r.winner}`,
    `perfect play ${r.principal_variation.map((m) => m.join(",")).join("  ") || "(no moves)"}`,
    `positions    ${r.nodes_expanded}`,
  ];
  if (kind === "graph") lines.push(`class        ${r.np ?? "none"}`, `survivors    {${r.survivors.join(", ")}}`);
  else lines.push(`fixed code   ${r.fixed_code ?? "identity"}`);
  show($("solve-info"), lines.join("\n"));
  solved = { res: r, kind, favorable };
  solvedStep = 0;
  renderSolveStep();
});
$("solve-prev").addEventListener("click", () => {
  if (solved && solvedStep > 0) solvedStep--;
  renderSolveStep();
});
$("solve-next").addEventListener("click", () => {
  if (solved && solvedStep < solved.res.states.length - 1) solvedStep++;
  renderSolveStep();
});

await init();
loadPerm($("perm").value);
loadChain(2);
