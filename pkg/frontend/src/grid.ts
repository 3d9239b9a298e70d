/**
 * Grid rendering: one HTML table, one cell per span origin, role
 * classes for coloring, gazetteer annotations as tooltips, and the
 * current selection report overlaid.
 *
 * Selection entries are attached verbatim (JSON) as data attributes so
 * tests can assert the displayed report is byte-identical to the API
 * response.
 */

import type { AnnotationData, SelectionEntry, TableDetail } from "./api.js";

const ROLE_CLASSES: Record<string, string> = {
  header: "role-header",
  stub: "role-stub",
  super_row: "role-super-row",
  data: "role-data",
  empty: "role-empty",
};

function tooltipFor(annotations: AnnotationData[], content: string): string {
  return annotations
    .map((a) => `${a.concept_id} ${a.semantic_type} '${content.slice(a.start, a.end)}'`)
    .join("\n");
}

export function renderGrid(
  detail: TableDetail,
  selections: SelectionEntry[] | null,
): HTMLTableElement {
  const grid = detail.grid;
  const annotationsByCell = new Map<string, AnnotationData[]>();
  for (const annotation of detail.annotations) {
    const key = annotation.cell.join(",");
    const bucket = annotationsByCell.get(key);
    if (bucket) bucket.push(annotation);
    else annotationsByCell.set(key, [annotation]);
  }
  const selectionByCell = new Map<string, SelectionEntry>();
  for (const entry of selections ?? []) {
    selectionByCell.set(entry.cell.join(","), entry);
  }

  const table = document.createElement("table");
  table.className = "grid";
  table.dataset["tableId"] = grid.table_id;
  if (grid.caption) {
    const caption = document.createElement("caption");
    caption.textContent = grid.caption;
    table.appendChild(caption);
  }
  const byRow = new Map<number, HTMLTableRowElement>();
  for (const cell of grid.cells) {
    if (cell.origin[0] !== cell.row || cell.origin[1] !== cell.col) {
      continue; // covered by a span; the origin cell renders it
    }
    let tr = byRow.get(cell.row);
    if (!tr) {
      tr = table.insertRow();
      byRow.set(cell.row, tr);
    }
    const td = document.createElement("td");
    td.textContent = cell.content;
    td.className = cell.role !== null ? (ROLE_CLASSES[cell.role] ?? "role-unknown") : "role-unknown";
    td.dataset["row"] = String(cell.row);
    td.dataset["col"] = String(cell.col);
    if (cell.span_rows > 1) td.rowSpan = cell.span_rows;
    if (cell.span_cols > 1) td.colSpan = cell.span_cols;
    const key = `${cell.row},${cell.col}`;
    const annotations = annotationsByCell.get(key);
    if (annotations) {
      td.title = tooltipFor(annotations, cell.content);
      td.classList.add("annotated");
    }
    const selection = selectionByCell.get(key);
    if (selection) {
      td.setAttribute("data-selection", JSON.stringify(selection));
      if (selection.selected) {
        td.classList.add("cell-selected");
      } else if (selection.blocked.length > 0) {
        td.classList.add("cell-blocked");
        const badge = document.createElement("span");
        badge.className = "blocked-cues";
        badge.textContent = selection.blocked.join(" ");
        td.appendChild(badge);
      }
    }
    tr.appendChild(td);
  }
  if (grid.footer) {
    const footer = table.createTFoot().insertRow().insertCell();
    footer.colSpan = grid.cols;
    footer.className = "grid-footer";
    footer.textContent = grid.footer;
  }
  return table;
}

/**
 * The selection report as displayed, reassembled from the DOM. Equal,
 * byte for byte, to the API's `selections[table_id]` array when the
 * rendering added nothing and lost nothing.
 */
export function displayedSelectionsJson(root: ParentNode): string {
  const parts: string[] = [];
  for (const td of root.querySelectorAll("td[data-selection]")) {
    parts.push(td.getAttribute("data-selection") ?? "");
  }
  return "[" + parts.join(",") + "]";
}
