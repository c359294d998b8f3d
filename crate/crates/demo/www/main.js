import init, { analyze_table, line_arrangement, poly_arrangement } from "./pkg/dtab_demo.js";

const $ = (id) => document.getElementById(id);

function show(el, res, fields) {
  if (res.error) {
    el.className = "error";
    el.textContent = res.error;
    return false;
  }
  el.className = "";
  const head = fields.map((k) => `${k}=${res[k]}`).join(" ");
  el.textContent = `${head}\nreduct: {${res.reduct.join(", ")}}\n` +
    `witness: ${res.witness_columns.join(", ")} -> ${res.witness}\n\n${res.dtab}`;
  return true;
}

const summary = ["rows", "classes", "dim", "reduct_cardinality", "shattering_dimension"];

function hue(decision, classes) {
  return `hsl(${(decision * 137.5) % 360}, 55%, ${classes > 1 ? 78 : 90}%)`;
}

function drawLines(res) {
  const cv = $("lines-canvas");
  const g = cv.getContext("2d");
  const span = 6;
  const toWorld = (px, py) => [(px / cv.width - 0.5) * 2 * span, (0.5 - py / cv.height) * 2 * span];
  const toPixel = (x, y) => [(x / (2 * span) + 0.5) * cv.width, (0.5 - y / (2 * span)) * cv.height];
  const decisions = new Map(res.cells.map((c) => [c.pattern, c.decision]));
  const step = 3;
  for (let py = 0; py < cv.height; py += step) {
    for (let px = 0; px < cv.width; px += step) {
      const [x, y] = toWorld(px + step / 2, py + step / 2);
      const key = res.lines.map((l) => (l.a * x + l.b * y + l.c >= 0 ? "1" : "0")).join("");
      g.fillStyle = decisions.has(key) ? hue(decisions.get(key), res.classes) : "#fff";
      g.fillRect(px, py, step, step);
    }
  }
  g.strokeStyle = "#333";
  g.fillStyle = "#333";
  g.font = "12px sans-serif";
  for (const l of res.lines) {
    // Two far points on a x + b y + c = 0.
    const d = Math.hypot(l.a, l.b);
    const [x0, y0] = [(-l.a * l.c) / (d * d), (-l.b * l.c) / (d * d)];
    const [dx, dy] = [-l.b / d, l.a / d];
    const p = toPixel(x0 - 3 * span * dx, y0 - 3 * span * dy);
    const q = toPixel(x0 + 3 * span * dx, y0 + 3 * span * dy);
    g.beginPath();
    g.moveTo(...p);
    g.lineTo(...q);
    g.stroke();
    const [lx, ly] = toPixel(x0 + 0.8 * span * dx, y0 + 0.8 * span * dy);
    g.fillText(l.name, lx + 3, ly - 3);
  }
}

function drawPolys(res) {
  const cv = $("poly-canvas");
  const g = cv.getContext("2d");
  g.clearRect(0, 0, cv.width, cv.height);
  const roots = res.polys.flatMap((p) => p.roots);
  const lo = Math.min(-1, ...roots) - 1;
  const hi = Math.max(1, ...roots) + 1;
  const px = (x) => ((x - lo) / (hi - lo)) * (cv.width - 20) + 10;
  g.strokeStyle = "#333";
  g.beginPath();
  g.moveTo(5, 30);
  g.lineTo(cv.width - 5, 30);
  g.stroke();
  g.font = "11px sans-serif";
  res.polys.forEach((p, i) => {
    g.fillStyle = `hsl(${(i * 137.5) % 360}, 60%, 40%)`;
    for (const r of p.roots) {
      g.beginPath();
      g.arc(px(r), 30, 4, 0, 2 * Math.PI);
      g.fill();
      g.fillText(`${p.name} ${r.toFixed(3)}`, px(r) - 12, 50 + 14 * i);
    }
  });
}

$("lines-run").onclick = () => {
  const res = JSON.parse(line_arrangement($("lines-text").value, $("lines-decisions").value,
    Number($("lines-seed").value) >>> 0));
  if (show($("lines-out"), res, summary)) drawLines(res);
};

$("poly-run").onclick = () => {
  const res = JSON.parse(poly_arrangement($("poly-text").value));
  if (show($("poly-out"), res, summary)) {
    $("poly-out").textContent += "\n" + res.polys.map((p) => `${p.name} = ${p.poly}`).join("\n");
    drawPolys(res);
  }
};

$("table-run").onclick = () => {
  show($("table-out"), JSON.parse(analyze_table($("table-text").value)), summary);
};

await init();
$("lines-run").click();
$("poly-run").click();
$("table-run").click();
