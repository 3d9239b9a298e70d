/**
 * Extraction preview rendering: the record table and the per-cell
 * diagnostics list. Records carry their response JSON verbatim in a
 * data attribute for byte-identity assertions.
 */

import type { DiagnosticData, RecordData } from "./api.js";

export const RECORD_COLUMNS: (keyof RecordData)[] = [
  "variable_name",
  "variable_subcategory",
  "value_component",
  "context",
  "value",
  "unit",
  "doc_id",
  "table_id",
  "row",
  "col",
  "rule",
];

function cellText(value: string | number | null): string {
  return value === null ? "" : String(value);
}

export function renderRecords(records: RecordData[]): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "records";
  const head = table.createTHead().insertRow();
  for (const column of RECORD_COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const record of records) {
    const tr = body.insertRow();
    tr.setAttribute("data-record", JSON.stringify(record));
    for (const column of RECORD_COLUMNS) {
      tr.insertCell().textContent = cellText(record[column]);
    }
  }
  return table;
}

export function renderDiagnostics(diagnostics: DiagnosticData[]): HTMLUListElement {
  const list = document.createElement("ul");
  list.className = "diagnostics";
  for (const diagnostic of diagnostics) {
    const item = document.createElement("li");
    item.dataset["kind"] = diagnostic.kind;
    if (diagnostic.cell !== null) {
      item.dataset["cell"] = diagnostic.cell.join(",");
    }
    const where =
      diagnostic.cell !== null
        ? `${diagnostic.table_id} (${diagnostic.cell[0]}, ${diagnostic.cell[1]})`
        : diagnostic.table_id;
    item.textContent = `${diagnostic.kind} at ${where}: ${diagnostic.message}`;
    list.appendChild(item);
  }
  return list;
}

/** Displayed records, reassembled from the DOM, as one JSON array. */
export function displayedRecordsJson(root: ParentNode): string {
  const parts: string[] = [];
  for (const tr of root.querySelectorAll("tr[data-record]")) {
    parts.push(tr.getAttribute("data-record") ?? "");
  }
  return "[" + parts.join(",") + "]";
}
