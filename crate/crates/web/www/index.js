import init, { wigner_heatmap, gaussian_sweep, transition } from "./pkg/etaphase_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);
const fmt = (v) => (Math.abs(v) < 1e-3 && v !== 0 ? v.toExponential(3) : v.toFixed(4));

// blue below zero, white at zero, red above
function diverging(t) {
  const a = Math.min(1, Math.abs(t));
  const fade = Math.round(255 * (1 - a));
  return t >= 0 ? [255, fade, fade] : [fade, fade, 255];
}

function drawWigner() {
  const canvas = $("w-canvas");
  const stats = $("w-stats");
  const eta = num("w-eta");
  $("w-eta-val").textContent = eta.toFixed(2);
  let h;
  try {
    h = wigner_heatmap($("w-state").value, num("w-width"), eta, 24, 128);
  } catch (e) {
    stats.innerHTML = `<span class="err">${e}</span>`;
    return;
  }
  const [nx, np] = [h.nx(), h.np()];
  const values = h.values();
  const scale = Math.max(Math.abs(h.min()), Math.abs(h.max())) || 1;
  // crop to the central half of both axes, where the state lives
  const [x0, p0] = [nx / 4, np / 4];
  const [w, hgt] = [nx / 2, np / 2];
  const img = new ImageData(w, hgt);
  for (let j = 0; j < w; j++) {
    for (let k = 0; k < hgt; k++) {
      const [r, g, b] = diverging(values[(x0 + j) * np + (p0 + k)] / scale);
      const o = 4 * ((hgt - 1 - k) * w + j);
      img.data.set([r, g, b, 255], o);
    }
  }
  const ctx = canvas.getContext("2d");
  createImageBitmap(img).then((bmp) => {
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(bmp, 0, 0, canvas.width, canvas.height);
  });
  const dx = (h.x_max() - h.x_min()) / (nx - 1);
  const dp = (h.p_max() - h.p_min()) / (np - 1);
  stats.textContent =
    `x ∈ [${fmt(h.x_min() + x0 * dx)}, ${fmt(h.x_min() + (x0 + w) * dx)}]\n` +
    `p ∈ [${fmt(h.p_min() + p0 * dp)}, ${fmt(h.p_min() + (p0 + hgt) * dp)}]\n` +
    `min W  ${fmt(h.min())}\nmax W  ${fmt(h.max())}\n` +
    `self-purity  ${fmt(h.self_purity())}`;
  h.free();
}

const VERDICT = ["Classical", "MixedQuantum", "PureQuantum", "Boundary"];
const VERDICT_COLOR = ["#999", "#2a6fdb", "#1a9c3a", "#e08a00"];

function drawSweep() {
  const canvas = $("s-canvas");
  const stats = $("s-stats");
  let s;
  try {
    s = gaussian_sweep(num("s-sx"), num("s-sp"), num("s-r"), num("s-max"), 300);
  } catch (e) {
    stats.innerHTML = `<span class="err">${e}</span>`;
    return;
  }
  const etas = s.etas(), purity = s.purities(), verdicts = s.verdicts();
  const threshold = s.threshold();
  const ctx = canvas.getContext("2d");
  const [W, H, pad] = [canvas.width, canvas.height, 30];
  const etaMax = etas[etas.length - 1];
  const X = (e) => pad + ((W - 2 * pad) * e) / etaMax;
  const Y = (p) => H - pad - (H - 2 * pad) * p;
  ctx.clearRect(0, 0, W, H);
  ctx.strokeStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(pad, pad); ctx.lineTo(pad, H - pad); ctx.lineTo(W - pad, H - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.fillText("1", pad - 12, Y(1) + 4);
  ctx.fillText("purity", 4, pad - 10);
  ctx.fillText("η", W - pad + 6, H - pad + 4);
  ctx.fillText(fmt(etaMax), X(etaMax) - 12, H - pad + 16);
  for (let i = 0; i < etas.length; i++) {
    ctx.fillStyle = VERDICT_COLOR[verdicts[i]];
    const p = Number.isNaN(purity[i]) ? 0 : purity[i];
    ctx.fillRect(X(etas[i]) - 1, Y(p) - 1, 3, 3);
  }
  if (threshold <= etaMax) {
    ctx.strokeStyle = "#e08a00";
    ctx.setLineDash([4, 4]);
    ctx.beginPath(); ctx.moveTo(X(threshold), pad); ctx.lineTo(X(threshold), H - pad); ctx.stroke();
    ctx.setLineDash([]);
  }
  stats.innerHTML =
    `threshold 2λ = ${fmt(threshold)}\n` +
    VERDICT.map((v, i) => `<span style="color:${VERDICT_COLOR[i]}">■</span> ${v}`).join("\n");
  s.free();
}

function updateTransition() {
  try {
    $("t-out").textContent = transition(num("t-purity"), num("t-hbar"), num("t-eta"), parseInt($("t-n").value, 10));
    $("t-out").className = "stats";
  } catch (e) {
    $("t-out").textContent = String(e);
    $("t-out").className = "stats err";
  }
}

await init();
for (const id of ["w-state", "w-width", "w-eta"]) $(id).addEventListener("input", drawWigner);
for (const id of ["s-sx", "s-sp", "s-r", "s-max"]) $(id).addEventListener("input", drawSweep);
for (const id of ["t-purity", "t-hbar", "t-eta", "t-n"]) $(id).addEventListener("input", updateTransition);
drawWigner();
drawSweep();
updateTransition();
