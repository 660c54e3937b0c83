import init, { simulate_series, estimate_curve, true_theta } from "./pkg/eix_wasm.js";

const $ = (id) => document.getElementById(id);
const PAD = { left: 56, right: 16, top: 14, bottom: 34 };

function plotArea(canvas) {
  return {
    x: PAD.left,
    y: PAD.top,
    w: canvas.width - PAD.left - PAD.right,
    h: canvas.height - PAD.top - PAD.bottom,
  };
}

function clear(ctx, canvas) {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.font = "20px system-ui, sans-serif";
  ctx.fillStyle = "#444";
  ctx.strokeStyle = "#999";
}

function drawSeries(canvas, values) {
  const ctx = canvas.getContext("2d");
  clear(ctx, canvas);
  const a = plotArea(canvas);
  const shown = values.slice(0, 2048);
  let lo = Infinity, hi = -Infinity;
  for (const v of shown) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
  if (hi === lo) hi = lo + 1;
  const sx = (i) => a.x + (a.w * i) / (shown.length - 1);
  const sy = (v) => a.y + a.h - (a.h * (v - lo)) / (hi - lo);

  ctx.strokeRect(a.x, a.y, a.w, a.h);
  ctx.beginPath();
  ctx.strokeStyle = "#2a6";
  shown.forEach((v, i) => (i === 0 ? ctx.moveTo(sx(i), sy(v)) : ctx.lineTo(sx(i), sy(v))));
  ctx.stroke();
  ctx.fillText(`series preview (first ${shown.length} of ${values.length})`, a.x + 8, a.y + 24);
}

function drawCurve(canvas, points, theta) {
  const ctx = canvas.getContext("2d");
  clear(ctx, canvas);
  const a = plotArea(canvas);
  const bLo = points[0].b;
  const bHi = points[points.length - 1].b;
  const sx = (b) => a.x + (a.w * (b - bLo)) / Math.max(1, bHi - bLo);
  const sy = (t) => a.y + a.h - a.h * t;

  // frame and y ticks at 0, 0.25, ..., 1
  ctx.strokeRect(a.x, a.y, a.w, a.h);
  for (let t = 0; t <= 1.001; t += 0.25) {
    const y = sy(t);
    ctx.strokeStyle = "#eee";
    ctx.beginPath(); ctx.moveTo(a.x, y); ctx.lineTo(a.x + a.w, y); ctx.stroke();
    ctx.fillText(t.toFixed(2), 8, y + 6);
  }
  for (const b of [bLo, Math.round((bLo + bHi) / 2), bHi]) {
    ctx.fillText(`b=${b}`, sx(b) - 18, a.y + a.h + 26);
  }

  // confidence band
  ctx.beginPath();
  points.forEach((p, i) => (i === 0 ? ctx.moveTo(sx(p.b), sy(p.lo)) : ctx.lineTo(sx(p.b), sy(p.lo))));
  for (let i = points.length - 1; i >= 0; i--) ctx.lineTo(sx(points[i].b), sy(points[i].hi));
  ctx.closePath();
  ctx.fillStyle = "rgba(60, 120, 220, 0.18)";
  ctx.fill();

  // bias-corrected estimate
  ctx.beginPath();
  ctx.strokeStyle = "#36c";
  ctx.lineWidth = 2.5;
  points.forEach((p, i) => (i === 0 ? ctx.moveTo(sx(p.b), sy(p.theta_bc)) : ctx.lineTo(sx(p.b), sy(p.theta_bc))));
  ctx.stroke();
  ctx.lineWidth = 1;

  // true theta, when the model exposes it
  if (theta !== null) {
    ctx.beginPath();
    ctx.setLineDash([10, 8]);
    ctx.strokeStyle = "#c33";
    ctx.moveTo(a.x, sy(theta));
    ctx.lineTo(a.x + a.w, sy(theta));
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#c33";
    ctx.fillText(`true θ = ${theta.toFixed(3)}`, a.x + a.w - 200, sy(theta) - 8);
  }
}

function run() {
  const status = $("status");
  status.textContent = "";
  try {
    const model = $("model").value;
    const param = parseFloat($("param").value);
    const n = parseInt($("n").value, 10);
    const seed = BigInt($("seed").value || "0");
    const values = simulate_series(model, param, n, seed);
    drawSeries($("series"), values);

    const bMin = parseInt($("bmin").value, 10);
    const bMax = parseInt($("bmax").value, 10);
    const bStep = parseInt($("bstep").value, 10);
    const level = parseFloat($("level").value);
    const points = JSON.parse(estimate_curve(values, bMin, bMax, bStep, level));

    let theta = null;
    try {
      theta = true_theta(model, param);
    } catch {
      // no closed form or table entry for this parameter; skip the line
    }
    drawCurve($("curve"), points, theta);
  } catch (err) {
    status.textContent = String(err);
  }
}

await init();
$("run").addEventListener("click", run);
run();
