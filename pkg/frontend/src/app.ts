/**
 * Workbench wiring: table browser on the left, the open table with the
 * current selection overlay in the middle, spec/rules editors with live
 * preview below, and the eval diff panel at the end.
 *
 * The browser holds no extraction logic. Edits post the raw editor text
 * to the preview endpoints and the DOM shows the responses verbatim;
 * every displayed selection and record carries its response JSON in a
 * data attribute. Preview runs are debounced and numbered so a slow
 * response from an old edit is discarded instead of overwriting a
 * newer one.
 */

import {
  ApiError,
  Client,
  type EvalPayload,
  type ExtractPayload,
  type SelectionEntry,
  type TableDetail,
  type TableSummary,
} from "./api.js";
import { diffEvals, renderEvalDiff, type EvalDiff } from "./evaldiff.js";
import { renderGrid } from "./grid.js";
import { renderDiagnostics, renderRecords } from "./records.js";
import { debounce, SequenceGate, type Debounced } from "./sequencing.js";

interface RuleVersion {
  spec: string;
  rules: string;
}

export interface ComparisonResult {
  previous: EvalPayload;
  current: EvalPayload;
  previousRaw: string;
  currentRaw: string;
  diff: EvalDiff;
}

function element<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  id: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.id = id;
  if (className) node.className = className;
  return node;
}

export class Workbench {
  private readonly classFilter = element("select", "class-filter");
  private readonly tableList = element("ul", "table-list");
  private readonly tableView = element("div", "table-view");
  private readonly specEditor = element("textarea", "spec-editor");
  private readonly rulesEditor = element("textarea", "rules-editor");
  private readonly specError = element("div", "spec-error", "editor-error");
  private readonly rulesError = element("div", "rules-error", "editor-error");
  private readonly recordsView = element("div", "records-view");
  private readonly diagnosticsView = element("div", "diagnostics-view");
  private readonly goldInput = element("input", "gold-input");
  private readonly snapshotButton = element("button", "snapshot-version");
  private readonly compareButton = element("button", "run-compare");
  private readonly evalView = element("div", "eval-view");
  private readonly appError = element("div", "app-error");

  private detail: TableDetail | null = null;
  private currentTableId: string | null = null;
  private selections: SelectionEntry[] | null = null;
  private extract: ExtractPayload | null = null;
  private previousVersion: RuleVersion | null = null;
  private lastComparison: ComparisonResult | null = null;

  private readonly gate = new SequenceGate();
  private readonly schedule: Debounced<[]>;
  private inflight: Promise<void>[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
    debounceMs = 300,
  ) {
    this.schedule = debounce(() => this.track(this.runPreview()), debounceMs);
    this.buildDom();
  }

  private buildDom(): void {
    this.root.replaceChildren();
    this.root.appendChild(this.appError);

    const browser = document.createElement("section");
    browser.className = "browser";
    const filterLabel = document.createElement("label");
    filterLabel.textContent = "pragmatic class ";
    filterLabel.appendChild(this.classFilter);
    browser.appendChild(filterLabel);
    browser.appendChild(this.tableList);
    this.root.appendChild(browser);

    this.root.appendChild(this.tableView);

    const editors = document.createElement("section");
    editors.className = "editors";
    const specLabel = document.createElement("label");
    specLabel.textContent = "variable spec";
    editors.appendChild(specLabel);
    editors.appendChild(this.specEditor);
    editors.appendChild(this.specError);
    const rulesLabel = document.createElement("label");
    rulesLabel.textContent = "syntactic rules";
    editors.appendChild(rulesLabel);
    editors.appendChild(this.rulesEditor);
    editors.appendChild(this.rulesError);
    this.root.appendChild(editors);

    const previewSection = document.createElement("section");
    previewSection.className = "preview";
    previewSection.appendChild(this.recordsView);
    previewSection.appendChild(this.diagnosticsView);
    this.root.appendChild(previewSection);

    const evalSection = document.createElement("section");
    evalSection.className = "eval-panel";
    const goldLabel = document.createElement("label");
    goldLabel.textContent = "gold set ";
    goldLabel.appendChild(this.goldInput);
    evalSection.appendChild(goldLabel);
    this.snapshotButton.textContent = "keep as previous version";
    this.compareButton.textContent = "compare versions";
    evalSection.appendChild(this.snapshotButton);
    evalSection.appendChild(this.compareButton);
    evalSection.appendChild(this.evalView);
    this.root.appendChild(evalSection);

    this.classFilter.addEventListener("change", () => {
      this.track(this.setFilter(this.classFilter.value || undefined));
    });
    const onEdit = () => this.schedule.call();
    this.specEditor.addEventListener("input", onEdit);
    this.rulesEditor.addEventListener("input", onEdit);
    this.snapshotButton.addEventListener("click", () => this.snapshotVersion());
    this.compareButton.addEventListener("click", () => {
      this.track(this.compare(this.goldInput.value).then(() => undefined));
    });
  }

  private track(promise: Promise<void>): void {
    const tracked = promise.catch((error) => {
      this.appError.textContent = error instanceof Error ? error.message : String(error);
    });
    this.inflight.push(tracked);
  }

  /** Wait for every started request to finish; tests await this. */
  async settled(): Promise<void> {
    while (this.inflight.length > 0) {
      const batch = this.inflight;
      this.inflight = [];
      await Promise.all(batch);
    }
  }

  async init(): Promise<void> {
    await this.setFilter(undefined);
  }

  async setFilter(pragmaticClass: string | undefined): Promise<void> {
    const { data } = await this.client.listTables(pragmaticClass);
    this.renderTableList(data.tables);
    if (pragmaticClass === undefined) {
      this.fillFilterOptions(data.tables);
    }
  }

  private fillFilterOptions(tables: TableSummary[]): void {
    const classes = [
      ...new Set(tables.map((t) => t.pragmatic_class).filter((c): c is string => c !== null)),
    ];
    classes.sort();
    this.classFilter.replaceChildren();
    const all = document.createElement("option");
    all.value = "";
    all.textContent = "all classes";
    this.classFilter.appendChild(all);
    for (const cls of classes) {
      const option = document.createElement("option");
      option.value = cls;
      option.textContent = cls;
      this.classFilter.appendChild(option);
    }
  }

  private renderTableList(tables: TableSummary[]): void {
    this.tableList.replaceChildren();
    for (const table of tables) {
      const item = document.createElement("li");
      item.dataset["tableId"] = table.table_id;
      const name = document.createElement("strong");
      name.textContent = table.table_id;
      item.appendChild(name);
      const caption = document.createElement("span");
      caption.textContent = ` ${table.caption} [${table.pragmatic_class ?? "unclassified"}]`;
      item.appendChild(caption);
      item.addEventListener("click", () => this.track(this.openTable(table.table_id)));
      this.tableList.appendChild(item);
    }
  }

  async openTable(tableId: string): Promise<void> {
    try {
      const { data } = await this.client.getTable(tableId);
      this.detail = data;
      this.currentTableId = tableId;
      this.selections = null;
      this.extract = null;
      this.renderTable();
      this.renderPreview();
      await this.runPreview();
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        this.detail = null;
        this.currentTableId = null;
        this.renderNotFound(error.detail.error);
        return;
      }
      throw error;
    }
  }

  private renderNotFound(message: string): void {
    const view = document.createElement("div");
    view.className = "not-found";
    view.textContent = message;
    this.tableView.replaceChildren(view);
  }

  private renderTable(): void {
    if (!this.detail) return;
    const meta = document.createElement("p");
    meta.className = "table-meta";
    meta.textContent = `${this.detail.grid.table_id} [${this.detail.pragmatic_class ?? "unclassified"}]`;
    this.tableView.replaceChildren(meta, renderGrid(this.detail, this.selections));
  }

  private renderPreview(): void {
    if (this.extract) {
      this.recordsView.replaceChildren(renderRecords(this.extract.records));
      this.diagnosticsView.replaceChildren(renderDiagnostics(this.extract.diagnostics));
    } else {
      this.recordsView.replaceChildren();
      this.diagnosticsView.replaceChildren();
    }
  }

  setSpecText(text: string): void {
    this.specEditor.value = text;
    this.schedule.call();
  }

  setRulesText(text: string): void {
    this.rulesEditor.value = text;
    this.schedule.call();
  }

  /** Run a pending debounced preview immediately. */
  flushPreview(): void {
    this.schedule.flush();
  }

  private setEditorError(target: HTMLElement, error: ApiError): void {
    target.textContent = error.detail.error;
    if (error.detail.line !== undefined) target.dataset["line"] = String(error.detail.line);
    else delete target.dataset["line"];
    if (error.detail.column !== undefined) target.dataset["column"] = String(error.detail.column);
    else delete target.dataset["column"];
  }

  private clearEditorErrors(): void {
    for (const target of [this.specError, this.rulesError]) {
      target.textContent = "";
      delete target.dataset["line"];
      delete target.dataset["column"];
    }
  }

  private async runPreview(): Promise<void> {
    const tableId = this.currentTableId;
    if (tableId === null) return;
    const ticket = this.gate.issue();
    const spec = this.specEditor.value;
    const rules = this.rulesEditor.value;
    if (spec.trim() === "") {
      this.clearEditorErrors();
      this.selections = null;
      this.extract = null;
      this.renderTable();
      this.renderPreview();
      return;
    }

    let select;
    try {
      select = await this.client.previewSelect(spec, tableId);
    } catch (error) {
      if (error instanceof ApiError && error.status === 400) {
        if (this.gate.isCurrent(ticket)) {
          this.clearEditorErrors();
          this.setEditorError(this.specError, error);
        }
        return;
      }
      throw error;
    }

    let extract;
    try {
      extract = await this.client.previewExtract(spec, rules, tableId);
    } catch (error) {
      if (error instanceof ApiError && error.status === 400) {
        if (this.gate.isCurrent(ticket)) {
          // the spec parsed for /preview/select, so the rules text is at fault
          this.clearEditorErrors();
          this.setEditorError(this.rulesError, error);
          this.selections = select.data.selections[tableId] ?? [];
          this.extract = null;
          this.renderTable();
          this.renderPreview();
        }
        return;
      }
      throw error;
    }

    if (!this.gate.isCurrent(ticket)) return; // stale response, a newer edit is in flight
    this.clearEditorErrors();
    this.selections = select.data.selections[tableId] ?? [];
    this.extract = extract.data;
    this.renderTable();
    this.renderPreview();
  }

  snapshotVersion(): void {
    this.previousVersion = {
      spec: this.specEditor.value,
      rules: this.rulesEditor.value,
    };
  }

  private async scoreVersion(
    version: RuleVersion,
    tableId: string,
    goldId: string,
  ): Promise<{ raw: string; data: EvalPayload }> {
    const extract = await this.client.previewExtract(version.spec, version.rules, tableId);
    return this.client.evalRecords(extract.data.records, goldId);
  }

  async compare(goldId: string): Promise<ComparisonResult | null> {
    const tableId = this.currentTableId;
    if (tableId === null) return null;
    const current: RuleVersion = {
      spec: this.specEditor.value,
      rules: this.rulesEditor.value,
    };
    const previous = this.previousVersion ?? current;
    try {
      const previousEval = await this.scoreVersion(previous, tableId, goldId);
      const currentEval = await this.scoreVersion(current, tableId, goldId);
      const diff = diffEvals(previousEval.data, currentEval.data);
      this.evalView.replaceChildren(renderEvalDiff(previousEval.data, currentEval.data, diff));
      this.lastComparison = {
        previous: previousEval.data,
        current: currentEval.data,
        previousRaw: previousEval.raw,
        currentRaw: currentEval.raw,
        diff,
      };
      return this.lastComparison;
    } catch (error) {
      if (error instanceof ApiError) {
        const note = document.createElement("p");
        note.className = "eval-error";
        note.textContent = error.detail.error;
        this.evalView.replaceChildren(note);
        return null;
      }
      throw error;
    }
  }

  comparison(): ComparisonResult | null {
    return this.lastComparison;
  }
}
