/**
 * Eval diff: compare two scoring responses for the same gold set.
 *
 * The churn lists are pure response arithmetic. A gold record matched
 * now but not before stopped being a false negative, so the gained true
 * positives are the previous false negatives that disappeared; the new
 * false positives are plain multiset difference on the FP lists. No
 * extraction or matching logic runs client-side.
 */

import type { EvalPayload, RecordData } from "./api.js";

export interface EvalDiff {
  gainedTruePositives: RecordData[];
  newFalsePositives: RecordData[];
}

function multisetSubtract(from: RecordData[], remove: RecordData[]): RecordData[] {
  const counts = new Map<string, number>();
  for (const record of remove) {
    const key = JSON.stringify(record);
    counts.set(key, (counts.get(key) ?? 0) + 1);
  }
  const out: RecordData[] = [];
  for (const record of from) {
    const key = JSON.stringify(record);
    const left = counts.get(key) ?? 0;
    if (left > 0) {
      counts.set(key, left - 1);
    } else {
      out.push(record);
    }
  }
  return out;
}

export function diffEvals(previous: EvalPayload, current: EvalPayload): EvalDiff {
  return {
    gainedTruePositives: multisetSubtract(previous.false_negatives, current.false_negatives),
    newFalsePositives: multisetSubtract(current.false_positives, previous.false_positives),
  };
}

const METRICS: (keyof EvalPayload)[] = ["tp", "fp", "fn", "precision", "recall", "f1"];

function churnList(title: string, records: RecordData[], className: string): HTMLElement {
  const section = document.createElement("div");
  section.className = className;
  const heading = document.createElement("h4");
  heading.textContent = `${title} (${records.length})`;
  section.appendChild(heading);
  const list = document.createElement("ul");
  for (const record of records) {
    const item = document.createElement("li");
    item.setAttribute("data-record", JSON.stringify(record));
    item.textContent = `${record.variable_name} ${record.value_component} ${record.value} @ ${record.context}`;
    list.appendChild(item);
  }
  section.appendChild(list);
  return section;
}

export function renderEvalDiff(
  previous: EvalPayload,
  current: EvalPayload,
  diff: EvalDiff,
): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "eval-diff";

  const table = document.createElement("table");
  table.className = "metrics";
  const head = table.createTHead().insertRow();
  for (const label of ["metric", "previous", "current"]) {
    const th = document.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const metric of METRICS) {
    const tr = body.insertRow();
    tr.dataset["metric"] = metric;
    tr.insertCell().textContent = metric;
    tr.insertCell().textContent = String(previous[metric]);
    tr.insertCell().textContent = String(current[metric]);
  }
  panel.appendChild(table);

  if (diff.gainedTruePositives.length === 0 && diff.newFalsePositives.length === 0) {
    const note = document.createElement("p");
    note.className = "no-churn";
    note.textContent = "no churn between versions";
    panel.appendChild(note);
  } else {
    panel.appendChild(churnList("gained true positives", diff.gainedTruePositives, "gained-tps"));
    panel.appendChild(churnList("new false positives", diff.newFalsePositives, "new-fps"));
  }
  return panel;
}
