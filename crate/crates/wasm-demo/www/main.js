import init, { h2Landscape, dissociationCurve, noiseSweep } from "./pkg/remsim_wasm_demo.js";

const H2_BONDS = [0.45, 0.55, 0.65, 0.7, 0.7414, 0.8, 0.85, 1.0, 1.15, 1.35, 1.5, 1.65];
const BAND = 1.6e-3;
const COLORS = { exact: "#000", vqe: "#d62728", readout: "#ff7f0e", rem: "#1f77b4", both: "#2ca02c" };

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");

for (const r of H2_BONDS) {
  const o = document.createElement("option");
  o.value = r;
  o.textContent = r;
  if (r === 0.7414) o.selected = true;
  $("r").appendChild(o);
}

const p2 = () => 10 ** Number($("p2").value);
const showP2 = () => ($("p2v").textContent = p2().toExponential(2));
$("p2").addEventListener("input", showP2);
showP2();

function settings() {
  return {
    p2: p2(),
    shots: Math.max(0, Number($("shots").value) | 0),
    seed: Math.max(0, Number($("seed").value) | 0),
    readout: $("readout").checked,
  };
}

// series: [{ name, color, points: [[x, y]], dots }]
function plot({ title, xlabel, ylabel, series, logX = false, logY = false, band = null, markers = [] }) {
  const W = canvas.width, H = canvas.height;
  const L = 80, R = 170, T = 30, B = 46;
  const pw = W - L - R, ph = H - T - B;
  const tx = (v) => (logX ? Math.log10(v) : v);
  const ty = (v) => (logY ? Math.log10(v) : v);
  const ok = (x, y) => Number.isFinite(x) && Number.isFinite(y) && (!logX || x > 0) && (!logY || y > 0);
  const pts = series.flatMap((s) => s.points.filter(([x, y]) => ok(x, y)));
  let xs = pts.map(([x]) => tx(x)), ys = pts.map(([, y]) => ty(y));
  if (band) ys.push(ty(band));
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (logY) { y0 = Math.floor(y0); y1 = Math.ceil(y1); } else { const p = 0.05 * (y1 - y0 || 1); y0 -= p; y1 += p; }
  if (logX) { x0 = Math.floor(x0); x1 = Math.ceil(x1); }
  const px = (x) => L + ((tx(x) - x0) / (x1 - x0)) * pw;
  const py = (y) => T + (1 - (ty(y) - y0) / (y1 - y0)) * ph;

  ctx.clearRect(0, 0, W, H);
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, W, H);
  if (band) {
    const top = py(band), bottom = logY ? T + ph : py(Math.max(0, y0));
    ctx.fillStyle = "rgba(160,160,160,0.35)";
    ctx.fillRect(L, top, pw, Math.min(bottom, T + ph) - top);
  }
  ctx.font = "11px sans-serif";
  ctx.fillStyle = "#333";
  ctx.strokeStyle = "#eee";
  const ticks = (lo, hi, log) => {
    if (log) { const t = []; for (let k = lo; k <= hi; k++) t.push([10 ** k, `1e${k}`]); return t; }
    const raw = (hi - lo) / 5, mag = 10 ** Math.floor(Math.log10(raw));
    const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw);
    const digits = Math.max(0, -Math.floor(Math.log10(step)));
    const t = [];
    for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push([v, v.toFixed(digits)]);
    return t;
  };
  ctx.textAlign = "center";
  for (const [v, s] of ticks(x0, x1, logX)) {
    ctx.beginPath(); ctx.moveTo(px(v), T); ctx.lineTo(px(v), T + ph); ctx.stroke();
    ctx.fillText(s, px(v), T + ph + 15);
  }
  ctx.textAlign = "right";
  for (const [v, s] of ticks(y0, y1, logY)) {
    ctx.beginPath(); ctx.moveTo(L, py(v)); ctx.lineTo(L + pw, py(v)); ctx.stroke();
    ctx.fillText(s, L - 6, py(v) + 4);
  }
  ctx.setLineDash([4, 3]);
  ctx.strokeStyle = "#888";
  for (const m of markers) { ctx.beginPath(); ctx.moveTo(px(m), T); ctx.lineTo(px(m), T + ph); ctx.stroke(); }
  ctx.setLineDash([]);
  ctx.strokeStyle = "#000";
  ctx.strokeRect(L, T, pw, ph);
  ctx.textAlign = "center";
  ctx.font = "13px sans-serif";
  ctx.fillText(title, L + pw / 2, 18);
  ctx.fillText(xlabel, L + pw / 2, H - 8);
  ctx.save(); ctx.translate(16, T + ph / 2); ctx.rotate(-Math.PI / 2); ctx.fillText(ylabel, 0, 0); ctx.restore();

  series.forEach((s, k) => {
    const p = s.points.filter(([x, y]) => ok(x, y));
    ctx.strokeStyle = ctx.fillStyle = s.color;
    ctx.lineWidth = 1.8;
    if (!s.dotsOnly) {
      ctx.beginPath();
      p.forEach(([x, y], i) => (i ? ctx.lineTo(px(x), py(y)) : ctx.moveTo(px(x), py(y))));
      ctx.stroke();
    }
    if (s.dots) for (const [x, y] of p) { ctx.beginPath(); ctx.arc(px(x), py(y), 2.6, 0, 2 * Math.PI); ctx.fill(); }
    const ly = T + 12 + 18 * k;
    ctx.beginPath(); ctx.moveTo(L + pw + 12, ly); ctx.lineTo(L + pw + 30, ly); ctx.stroke();
    ctx.textAlign = "left"; ctx.font = "11px sans-serif"; ctx.fillText(s.name, L + pw + 36, ly + 4);
  });
  ctx.lineWidth = 1;
}

const fmt = (v) => (v === null || v === undefined ? "-" : v.toFixed(6));
const sci = (v) => (v === null || v === undefined ? "-" : Math.abs(v).toExponential(2));

function run(label, f) {
  $("status").textContent = `${label}…`;
  // let the status paint before the synchronous wasm call
  setTimeout(() => {
    const t0 = performance.now();
    try {
      f();
      $("status").textContent = `${label}: ${(performance.now() - t0).toFixed(0)} ms`;
    } catch (e) {
      $("status").textContent = `error: ${e}`;
    }
  }, 10);
}

function landscape() {
  const s = settings();
  const r = Number($("r").value);
  const d = JSON.parse(h2Landscape(r, s.p2, s.shots, s.seed, s.readout));
  const curve = (f) => d.exact_theta.map((t) => [t, f.c + f.a * Math.cos(t - f.alpha)]);
  const series = [
    { name: "exact", color: COLORS.exact, points: d.exact_theta.map((t, i) => [t, d.exact[i]]) },
    { name: "measured", color: COLORS.vqe, points: d.grid.map((t, i) => [t, d.raw[i]]), dots: true, dotsOnly: true },
    { name: "fit", color: COLORS.vqe, points: curve(d.fit_raw) },
  ];
  if (s.readout) {
    series.push({ name: "unfolded", color: COLORS.readout, points: d.grid.map((t, i) => [t, d.mitigated[i]]), dots: true, dotsOnly: true });
    series.push({ name: "unfolded fit", color: COLORS.readout, points: curve(d.fit_mitigated) });
  }
  plot({ title: `H₂ at r = ${r} Å, p2 = ${s.p2.toExponential(2)}`, xlabel: "θ", ylabel: "energy (Ha)", series });
  $("summary").textContent = [
    `exact minimum      ${fmt(d.e_exact_min)}`,
    `exact at HF        ${fmt(d.e_exact_ref)}`,
    `VQE minimum        ${fmt(d.fit_raw.e_min)}   error ${sci(d.fit_raw.e_min - d.e_exact_min)}`,
    s.readout ? `unfolded minimum   ${fmt(d.fit_mitigated.e_min)}   error ${sci(d.fit_mitigated.e_min - d.e_exact_min)}` : "",
    `REM                ${fmt(d.e_rem)}   error ${sci(d.e_rem - d.e_exact_min)}`,
    s.readout ? `unfolded + REM     ${fmt(d.e_readout_rem)}   error ${sci(d.e_readout_rem - d.e_exact_min)}` : "",
  ].filter(Boolean).join("\n");
}

function dissociation() {
  const s = settings();
  const mol = $("mol").value;
  const rows = JSON.parse(dissociationCurve(mol, s.p2, s.shots, s.seed, s.readout));
  const pick = (f) => rows.map((p) => [p.r, f(p)]);
  const series = [
    { name: "exact", color: COLORS.exact, points: pick((p) => p.e_exact) },
    { name: "VQE", color: COLORS.vqe, points: pick((p) => p.e_vqe), dots: true },
    { name: "REM", color: COLORS.rem, points: pick((p) => p.e_rem), dots: true },
  ];
  if (s.readout) {
    series.splice(2, 0, { name: "unfolded", color: COLORS.readout, points: pick((p) => p.e_vqe_readout), dots: true });
    series.push({ name: "unfolded + REM", color: COLORS.both, points: pick((p) => p.e_readout_rem), dots: true });
  }
  plot({ title: `${mol} dissociation, p2 = ${s.p2.toExponential(2)}`, xlabel: "bond length (Å)", ylabel: "energy (Ha)", series });
  const best = (p) => (s.readout ? p.e_readout_rem : p.e_rem) - p.e_exact;
  $("summary").textContent = "r        |err VQE|   |err mitigated|\n" +
    rows.map((p) => `${p.r.toFixed(4)}   ${sci(p.e_vqe - p.e_exact)}    ${sci(best(p))}`).join("\n");
}

function sweep() {
  const s = settings();
  const mol = $("mol").value;
  const rows = JSON.parse(noiseSweep(mol, s.shots, s.seed, s.readout));
  const pick = (f) => rows.map((r) => [r.p2, Math.abs(f(r.point))]);
  const series = [
    { name: "VQE", color: COLORS.vqe, points: pick((p) => p.e_vqe - p.e_exact), dots: true },
    { name: "REM", color: COLORS.rem, points: pick((p) => p.e_rem - p.e_exact), dots: true },
  ];
  if (s.readout) {
    series.splice(1, 0, { name: "unfolded", color: COLORS.readout, points: pick((p) => p.e_vqe_readout - p.e_exact), dots: true });
    series.push({ name: "unfolded + REM", color: COLORS.both, points: pick((p) => p.e_readout_rem - p.e_exact), dots: true });
  }
  plot({
    title: `${mol} at equilibrium: error vs p2 (p1 = 0.1·p2)`,
    xlabel: "p2", ylabel: "|E − E_exact| (Ha)", series, logX: true, logY: true, band: BAND, markers: [1.8e-2],
  });
  $("summary").textContent = "gray band: 1.6 mHa; dashed line: device CZ error 1.8e-2";
}

await init();
$("run-landscape").addEventListener("click", () => run("landscape", landscape));
$("run-dissociation").addEventListener("click", () => run("dissociation", dissociation));
$("run-sweep").addEventListener("click", () => run("noise sweep", sweep));
run("landscape", landscape);
