/** DOM rendering of the view models. Pure string/element assembly; any
 * payload that fails to build views surfaces as a visible error banner,
 * never a silent blank panel. */

import { AppSnapshot } from "./app";
import { GRID_COLUMNS, GridRow } from "./types";
import { BarChartVM, BoxVM, DendrogramVM, HeatmapVM, instanceCard } from "./viewmodels";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, String(value));
  return el;
}

export function renderBars(vm: BarChartVM, width = 420, height = 200): SVGSVGElement {
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const slot = width / Math.max(vm.bars.length, 1);
  vm.bars.forEach((bar, i) => {
    const rect = svgEl("rect", {
      x: i * slot + 8,
      y: height - 30 - bar.height,
      width: slot - 16,
      height: bar.height,
      fill: "#4472a8",
    });
    svg.appendChild(rect);
    const label = svgEl("text", {
      x: i * slot + slot / 2,
      y: height - 34 - bar.height,
      "text-anchor": "middle",
      "font-size": 11,
    });
    label.textContent = bar.score.toFixed(3); // the payload value, rounded for display only
    svg.appendChild(label);
    const name = svgEl("text", {
      x: i * slot + slot / 2,
      y: height - 14,
      "text-anchor": "middle",
      "font-size": 10,
    });
    name.textContent = bar.name;
    svg.appendChild(name);
  });
  return svg;
}

export function renderBoxes(boxes: BoxVM[], width = 560, height = 220): SVGSVGElement {
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const slot = width / Math.max(boxes.length, 1);
  const y = (v: number) => height - 30 - v * (height - 50);
  boxes.forEach((box, i) => {
    const cx = i * slot + slot / 2;
    const half = Math.min(18, slot / 3);
    svg.appendChild(svgEl("line", { x1: cx, y1: y(box.whisker_low), x2: cx, y2: y(box.whisker_high), stroke: "#444" }));
    svg.appendChild(
      svgEl("rect", {
        x: cx - half,
        y: y(box.q3),
        width: half * 2,
        height: Math.max(y(box.q1) - y(box.q3), 1),
        fill: "#cfe0f1",
        stroke: "#444",
      }),
    );
    svg.appendChild(svgEl("line", { x1: cx - half, y1: y(box.median), x2: cx + half, y2: y(box.median), stroke: "#444" }));
    svg.appendChild(
      svgEl("line", { x1: cx - half, y1: y(box.meanLine), x2: cx + half, y2: y(box.meanLine), stroke: "#e08214", "stroke-width": 2 }),
    );
    for (const outlier of box.outliers) {
      svg.appendChild(svgEl("circle", { cx, cy: y(outlier.value), r: 4, fill: "none", stroke: "#c33" }));
    }
    const label = svgEl("text", { x: cx, y: height - 12, "text-anchor": "middle", "font-size": 10 });
    label.textContent = box.level;
    svg.appendChild(label);
  });
  return svg;
}

export function renderHeatmap(vm: HeatmapVM, cell = 46): SVGSVGElement {
  const n = vm.labels.length;
  const margin = 120;
  const size = margin + n * cell;
  const svg = svgEl("svg", { width: size, height: size, viewBox: `0 0 ${size} ${size}` });
  for (const c of vm.cells) {
    const shade = Math.round(255 * (1 - c.shade));
    svg.appendChild(
      svgEl("rect", {
        x: margin + c.col * cell,
        y: margin + c.row * cell,
        width: cell,
        height: cell,
        fill: `rgb(${shade}, ${Math.round(shade * 0.85)}, 120)`,
        stroke: "#fff",
      }),
    );
    const text = svgEl("text", {
      x: margin + c.col * cell + cell / 2,
      y: margin + c.row * cell + cell / 2 + 4,
      "text-anchor": "middle",
      "font-size": 10,
    });
    text.textContent = c.value.toFixed(2);
    svg.appendChild(text);
  }
  vm.labels.forEach((name, i) => {
    const rowLabel = svgEl("text", {
      x: margin - 6,
      y: margin + i * cell + cell / 2 + 4,
      "text-anchor": "end",
      "font-size": 10,
    });
    rowLabel.textContent = name;
    svg.appendChild(rowLabel);
    const colLabel = svgEl("text", {
      x: margin + i * cell + cell / 2,
      y: margin - 8,
      "text-anchor": "middle",
      "font-size": 10,
      transform: `rotate(-35 ${margin + i * cell + cell / 2} ${margin - 8})`,
    });
    colLabel.textContent = name;
    svg.appendChild(colLabel);
  });
  return svg;
}

export function renderDendrogram(vm: DendrogramVM, width = 420, height = 240): SVGSVGElement {
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const n = vm.leafLabels.length;
  const maxH = Math.max(...vm.heights, 1e-9);
  const xScale = (x: number) => 40 + (x * (width - 80)) / Math.max(n - 1, 1);
  const yScale = (h: number) => height - 30 - (h / maxH) * (height - 60);
  for (const seg of vm.segments) {
    svg.appendChild(
      svgEl("line", {
        x1: xScale(seg.x1),
        y1: yScale(seg.y1),
        x2: xScale(seg.x2),
        y2: yScale(seg.y2),
        stroke: "#444",
      }),
    );
  }
  vm.leafLabels.forEach((name, i) => {
    const label = svgEl("text", { x: xScale(i), y: height - 12, "text-anchor": "middle", "font-size": 10 });
    label.textContent = name;
    svg.appendChild(label);
  });
  return svg;
}

export function renderGrid(
  rows: GridRow[],
  flagged: Set<string>,
  onEdit: (row: number, column: keyof GridRow, value: string) => void,
  onInspect?: (row: number) => void,
): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "grid";
  const head = table.createTHead().insertRow();
  for (const column of GRID_COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  head.appendChild(document.createElement("th"));
  const body = table.createTBody();
  rows.forEach((row, r) => {
    const tr = body.insertRow();
    for (const column of GRID_COLUMNS) {
      const td = tr.insertCell();
      const input = document.createElement("input");
      input.value = row[column];
      if (flagged.has(`${r}:${column}`)) td.className = "invalid";
      input.addEventListener("change", () => onEdit(r, column, input.value));
      td.appendChild(input);
    }
    const inspectCell = tr.insertCell();
    const inspect = document.createElement("button");
    inspect.textContent = "card";
    inspect.title = "show this instance as a printable card";
    inspect.addEventListener("click", () => onInspect?.(r));
    inspectCell.appendChild(inspect);
  });
  return table;
}

export function renderInstanceCard(row: GridRow): HTMLElement {
  const vm = instanceCard(row);
  const card = document.createElement("aside");
  card.className = "instance-card";
  const heading = document.createElement("h3");
  heading.textContent = vm.title;
  card.appendChild(heading);
  const list = document.createElement("dl");
  for (const entry of vm.rows) {
    const dt = document.createElement("dt");
    dt.textContent = entry.level;
    const dd = document.createElement("dd");
    dd.textContent = entry.text;
    list.appendChild(dt);
    list.appendChild(dd);
  }
  card.appendChild(list);
  const print = document.createElement("button");
  print.textContent = "print";
  print.addEventListener("click", () => window.print());
  card.appendChild(print);
  return card;
}

export function renderApp(root: HTMLElement, app: import("./app").App): void {
  const draw = (snap: AppSnapshot) => {
    root.textContent = "";

    const banner = document.createElement("div");
    banner.className = "banner";
    if (snap.error) {
      banner.classList.add("error");
      banner.textContent = snap.error;
    } else if (snap.busy) {
      banner.textContent = "assessing…";
    } else if (!snap.canAssess && snap.blockedReason) {
      banner.textContent = snap.blockedReason;
    }
    root.appendChild(banner);

    const flags = new Set(app.grid.validate().map((f) => `${f.row}:${f.column}`));
    root.appendChild(
      renderGrid(
        app.grid.rows,
        flags,
        (r, c, v) => {
          app.grid.editCell(r, c, v);
          draw(app.snapshot());
        },
        (r) => {
          const row = app.grid.rows[r];
          if (row) {
            card.textContent = "";
            card.appendChild(renderInstanceCard(row));
          }
        },
      ),
    );

    const card = document.createElement("div");
    root.appendChild(card);

    const controls = document.createElement("div");
    controls.className = "controls";

    const addRow = document.createElement("button");
    addRow.textContent = "add row";
    addRow.addEventListener("click", () => {
      app.grid.addRow();
      draw(app.snapshot());
    });
    controls.appendChild(addRow);

    const upload = document.createElement("input");
    upload.type = "file";
    upload.accept = ".csv";
    upload.addEventListener("change", async () => {
      const file = upload.files?.[0];
      if (file) app.loadCsv(await file.text());
    });
    controls.appendChild(upload);

    const weights = document.createElement("select");
    for (const preset of ["paper-default", "uniform"]) {
      const option = document.createElement("option");
      option.value = preset;
      option.textContent = preset;
      weights.appendChild(option);
    }
    weights.value = typeof app.config.weights === "string" ? app.config.weights : "paper-default";
    weights.addEventListener("change", () => {
      app.config.weights = weights.value;
    });
    controls.appendChild(weights);

    const kInput = document.createElement("input");
    kInput.type = "range";
    kInput.min = "1";
    kInput.max = String(Math.max(app.grid.conceptCount(), 1));
    kInput.value = String(snap.k);
    kInput.addEventListener("change", () => void app.setK(Number(kInput.value)));
    controls.appendChild(kInput);

    const assess = document.createElement("button");
    assess.textContent = "calculate variety";
    assess.disabled = !snap.canAssess;
    assess.addEventListener("click", () => void app.assess());
    controls.appendChild(assess);

    root.appendChild(controls);

    if (snap.views) {
      const overall = document.createElement("h2");
      overall.textContent = `overall variety: ${snap.views.overall.toFixed(3)}`;
      root.appendChild(overall);

      const panels = document.createElement("div");
      panels.className = "panels";
      const titled = (title: string, el: Element) => {
        const panel = document.createElement("section");
        const h = document.createElement("h3");
        h.textContent = title;
        panel.appendChild(h);
        panel.appendChild(el);
        panels.appendChild(panel);
      };
      titled("individual variety scores", renderBars(snap.views.bars));
      titled("scores per abstraction level", renderBoxes(snap.views.boxes));
      titled("weighted pairwise distances", renderHeatmap(snap.views.heat));
      titled("concept dendrogram", renderDendrogram(snap.views.dendro));
      root.appendChild(panels);
    }
  };

  app.subscribe(draw);
  draw(app.snapshot());
}
