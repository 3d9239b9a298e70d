/**
 * Typed client over the tablemine HTTP API.
 *
 * Every call returns both the parsed payload and the raw response text.
 * The raw text is what byte-identity assertions compare against: the
 * workbench must display exactly what the API said, never a client-side
 * re-derivation.
 */

export interface TableSummary {
  table_id: string;
  doc_id: string;
  caption: string;
  rows: number;
  cols: number;
  pragmatic_class: string | null;
}

export interface CellData {
  row: number;
  col: number;
  content: string;
  is_spanning_origin: boolean;
  span_rows: number;
  span_cols: number;
  emphasis: string[];
  role: string | null;
  origin: [number, number];
}

export interface GridData {
  table_id: string;
  doc_id: string;
  caption: string;
  footer: string;
  rows: number;
  cols: number;
  cells: CellData[];
}

export interface AnnotationData {
  cell: [number, number];
  start: number;
  end: number;
  concept_id: string;
  semantic_type: string;
  source: string;
}

export interface LinkData {
  cell: [number, number];
  headers: [number, number][];
  stub: [number, number] | null;
  super_rows: [number, number][];
}

export interface TableDetail {
  grid: GridData;
  links: LinkData[];
  annotations: AnnotationData[];
  pragmatic_class: string | null;
}

export interface SelectionEntry {
  cell: [number, number];
  matched: string[];
  blocked: string[];
  selected: boolean;
}

export interface RecordData {
  variable_name: string;
  variable_subcategory: string;
  value_component: string;
  context: string;
  value: string;
  unit: string;
  doc_id: string;
  table_id: string;
  row: number | null;
  col: number | null;
  rule: string;
}

export interface DiagnosticData {
  table_id: string;
  cell: [number, number] | null;
  kind: string;
  message: string;
}

export interface ExtractPayload {
  records: RecordData[];
  diagnostics: DiagnosticData[];
}

export interface EvalPayload {
  tp: number;
  fp: number;
  fn: number;
  precision: number;
  recall: number;
  f1: number;
  false_positives: RecordData[];
  false_negatives: RecordData[];
}

export interface ErrorDetail {
  error: string;
  line?: number;
  column?: number;
}

/** A non-2xx response; `detail` keeps the line/column for editor errors. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: ErrorDetail,
  ) {
    super(detail.error);
  }
}

export interface ApiResponse<T> {
  raw: string;
  data: T;
}

function extractDetail(status: number, text: string): ErrorDetail {
  try {
    const body = JSON.parse(text) as Record<string, unknown>;
    const detail = (body["detail"] ?? body) as Record<string, unknown>;
    if (typeof detail["error"] === "string") {
      return {
        error: detail["error"],
        line: typeof detail["line"] === "number" ? detail["line"] : undefined,
        column: typeof detail["column"] === "number" ? detail["column"] : undefined,
      };
    }
  } catch {
    // fall through to the generic message
  }
  return { error: `request failed with status ${status}` };
}

export class Client {
  constructor(
    private readonly base = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(
    method: "GET" | "POST",
    path: string,
    query?: Record<string, string>,
    body?: unknown,
  ): Promise<ApiResponse<T>> {
    let url = this.base + path;
    if (query && Object.keys(query).length > 0) {
      url += "?" + new URLSearchParams(query).toString();
    }
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "content-type": "application/json" };
    }
    const response = await this.fetchFn(url, init);
    const raw = await response.text();
    if (!response.ok) {
      throw new ApiError(response.status, extractDetail(response.status, raw));
    }
    return { raw, data: JSON.parse(raw) as T };
  }

  listTables(pragmaticClass?: string): Promise<ApiResponse<{ tables: TableSummary[] }>> {
    const query = pragmaticClass === undefined ? undefined : { pragmatic_class: pragmaticClass };
    return this.request("GET", "/tables", query);
  }

  getTable(tableId: string): Promise<ApiResponse<TableDetail>> {
    return this.request("GET", `/tables/${encodeURIComponent(tableId)}`);
  }

  previewSelect(
    spec: string,
    tableId: string,
  ): Promise<ApiResponse<{ selections: Record<string, SelectionEntry[]> }>> {
    return this.request("POST", "/preview/select", undefined, {
      spec,
      table_id: tableId,
    });
  }

  previewExtract(
    spec: string,
    rules: string,
    tableId: string,
  ): Promise<ApiResponse<ExtractPayload>> {
    return this.request("POST", "/preview/extract", undefined, {
      spec,
      rules,
      table_id: tableId,
    });
  }

  evalRecords(records: RecordData[], goldId: string): Promise<ApiResponse<EvalPayload>> {
    return this.request("POST", "/eval", undefined, {
      records,
      gold_id: goldId,
    });
  }
}
