import { describe, expect, it } from "vitest";

import { loadInputs, loadRecorded, makeApp, type TestApp } from "./helpers.js";

const inputs = loadInputs();

async function openWithSpec(spec: string): Promise<TestApp> {
  const t = makeApp();
  await t.app.openTable(inputs.table_id);
  t.app.setRulesText(inputs.rules);
  t.app.setSpecText(spec);
  t.app.flushPreview();
  await t.app.settled();
  return t;
}

describe("eval diff panel", () => {
  it("reports zero churn for identical versions", async () => {
    const t = await openWithSpec(inputs.spec_bmi_v2);
    t.app.snapshotVersion();
    const result = await t.app.compare(inputs.gold_id);
    expect(result).not.toBeNull();
    expect(result!.diff.gainedTruePositives).toEqual([]);
    expect(result!.diff.newFalsePositives).toEqual([]);
    expect(result!.previousRaw).toBe(result!.currentRaw);
    expect(t.root.querySelector(".no-churn")).not.toBeNull();
  });

  it("shows precision, recall, and F1 side by side, verbatim from the responses", async () => {
    const t = await openWithSpec(inputs.spec_bmi_v2);
    t.app.snapshotVersion();
    t.app.setSpecText(inputs.spec_bmi_broad);
    t.app.flushPreview();
    await t.app.settled();
    const result = await t.app.compare(inputs.gold_id);
    expect(result!.previousRaw).toBe(loadRecorded("eval_v2").body_text);
    expect(result!.currentRaw).toBe(loadRecorded("eval_broad").body_text);
    const recallRow = t.root.querySelector('tr[data-metric="recall"]')!;
    const cells = [...recallRow.querySelectorAll("td")].map((td) => td.textContent);
    expect(cells).toEqual(["recall", String(result!.previous.recall), String(result!.current.recall)]);
  });

  it("keeps recall non-decreasing when the whitelist broadens", async () => {
    const t = await openWithSpec(inputs.spec_bmi_v2);
    t.app.snapshotVersion();
    t.app.setSpecText(inputs.spec_bmi_broad);
    t.app.flushPreview();
    await t.app.settled();
    const result = await t.app.compare(inputs.gold_id);
    expect(result!.current.recall).toBeGreaterThanOrEqual(result!.previous.recall);
    expect(result!.previous.recall).toBe(0.5);
    expect(result!.current.recall).toBe(1);
    expect(result!.diff.gainedTruePositives).toHaveLength(4);
    expect(result!.diff.newFalsePositives).toHaveLength(0);
    expect(t.root.querySelectorAll(".gained-tps li")).toHaveLength(4);
  });

  it("lists the new false positives when a blacklist is removed", async () => {
    const t = await openWithSpec(inputs.spec_bmi_v2);
    t.app.snapshotVersion();
    t.app.setSpecText(inputs.spec_bmi_v1);
    t.app.flushPreview();
    await t.app.settled();
    const result = await t.app.compare(inputs.gold_id);
    expect(result!.diff.gainedTruePositives).toHaveLength(0);
    expect(result!.diff.newFalsePositives).toHaveLength(4);
    const items = [...t.root.querySelectorAll(".new-fps li")];
    expect(items).toHaveLength(4);
    const contexts = items
      .map((li) => JSON.parse(li.getAttribute("data-record")!) as { row: number })
      .map((record) => record.row);
    expect(new Set(contexts)).toEqual(new Set([3]));
  });

  it("scores an extraction that selects nothing as zero recall", async () => {
    const t = await openWithSpec(inputs.spec_nothing);
    const result = await t.app.compare(inputs.gold_id);
    expect(result!.current.tp).toBe(0);
    expect(result!.current.recall).toBe(0);
    expect(result!.current.precision).toBe(0);
    expect(result!.currentRaw).toBe(loadRecorded("eval_nothing").body_text);
    const recallRow = t.root.querySelector('tr[data-metric="recall"]')!;
    expect([...recallRow.querySelectorAll("td")].map((td) => td.textContent)).toEqual([
      "recall",
      "0",
      "0",
    ]);
  });

  it("shows the unknown-gold error from the 404 payload", async () => {
    const t = await openWithSpec(inputs.spec_nothing);
    const result = await t.app.compare("nope");
    expect(result).toBeNull();
    const error = t.root.querySelector(".eval-error");
    expect(error).not.toBeNull();
    expect(error!.textContent).toBe("unknown gold set 'nope'");
  });
});
