import { describe, expect, it, vi } from "vitest";

import type { EvalPayload, RecordData } from "../src/api.js";
import { diffEvals } from "../src/evaldiff.js";
import { debounce, SequenceGate } from "../src/sequencing.js";

function record(value: string): RecordData {
  return {
    variable_name: "bmi",
    variable_subcategory: "",
    value_component: "Mean",
    context: "Group A (n = 40)",
    value,
    unit: "",
    doc_id: "bmi_arms",
    table_id: "bmi_arms_t0",
    row: 2,
    col: 1,
    rule: "GetMeanSD",
  };
}

function payload(overrides: Partial<EvalPayload>): EvalPayload {
  return {
    tp: 0,
    fp: 0,
    fn: 0,
    precision: 0,
    recall: 0,
    f1: 0,
    false_positives: [],
    false_negatives: [],
    ...overrides,
  };
}

describe("sequence gate", () => {
  it("accepts only the newest ticket", () => {
    const gate = new SequenceGate();
    const first = gate.issue();
    const second = gate.issue();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(second)).toBe(true);
  });
});

describe("debounce", () => {
  it("collapses a burst into the last call", () => {
    vi.useFakeTimers();
    const seen: string[] = [];
    const d = debounce((arg: string) => seen.push(arg), 100);
    d.call("a");
    d.call("b");
    d.call("c");
    vi.advanceTimersByTime(99);
    expect(seen).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(seen).toEqual(["c"]);
    vi.useRealTimers();
  });

  it("flush fires the pending call immediately, once", () => {
    vi.useFakeTimers();
    const seen: string[] = [];
    const d = debounce((arg: string) => seen.push(arg), 100);
    d.call("a");
    d.flush();
    expect(seen).toEqual(["a"]);
    vi.advanceTimersByTime(200);
    expect(seen).toEqual(["a"]);
    d.flush(); // nothing pending
    expect(seen).toEqual(["a"]);
    vi.useRealTimers();
  });

  it("cancel drops the pending call", () => {
    vi.useFakeTimers();
    const seen: string[] = [];
    const d = debounce((arg: string) => seen.push(arg), 100);
    d.call("a");
    d.cancel();
    vi.advanceTimersByTime(200);
    expect(seen).toEqual([]);
    vi.useRealTimers();
  });
});

describe("eval diff arithmetic", () => {
  it("derives gained true positives from disappeared false negatives", () => {
    const previous = payload({ false_negatives: [record("1"), record("2")] });
    const current = payload({ false_negatives: [record("2")] });
    const diff = diffEvals(previous, current);
    expect(diff.gainedTruePositives).toEqual([record("1")]);
    expect(diff.newFalsePositives).toEqual([]);
  });

  it("treats repeated identical records as a multiset", () => {
    const previous = payload({ false_positives: [record("1")] });
    const current = payload({ false_positives: [record("1"), record("1")] });
    const diff = diffEvals(previous, current);
    expect(diff.newFalsePositives).toEqual([record("1")]);
  });

  it("reports no churn for identical payloads", () => {
    const same = payload({
      false_positives: [record("9")],
      false_negatives: [record("3")],
    });
    const diff = diffEvals(same, same);
    expect(diff.gainedTruePositives).toEqual([]);
    expect(diff.newFalsePositives).toEqual([]);
  });
});
