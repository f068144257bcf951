import { describe, expect, it } from "vitest";

import {
  completeGaps,
  countGaps,
  gapSegments,
  gapsReady,
} from "../src/gaps.js";
import { GAP_COMPLETED_LATEX, GAP_HINT } from "./helpers.js";

describe("gap slots", () => {
  it("counts blanks", () => {
    expect(countGaps(GAP_HINT.text)).toBe(1);
    expect(countGaps("a + b")).toBe(0);
    expect(countGaps("\\boxed{?} + \\boxed{?}")).toBe(2);
  });

  it("splits into one more segment than blanks", () => {
    expect(gapSegments(GAP_HINT.text)).toEqual(["y = m \\cdot ", " + b"]);
  });

  it("completes with the same parenthesized substitution the server uses", () => {
    expect(completeGaps(GAP_HINT.text, ["x"])).toBe(GAP_COMPLETED_LATEX);
    expect(completeGaps("\\boxed{?} + \\boxed{?}", ["a", "b + c"])).toBe(
      "(a) + (b + c)",
    );
  });

  it("rejects a fill count that does not match the blanks", () => {
    expect(() => completeGaps(GAP_HINT.text, [])).toThrow(/expected 1/);
    expect(() => completeGaps(GAP_HINT.text, ["x", "y"])).toThrow(
      /expected 1/,
    );
  });

  it("is ready only when every blank is non-empty", () => {
    expect(gapsReady(["x"])).toBe(true);
    expect(gapsReady([""])).toBe(false);
    expect(gapsReady(["x", "  "])).toBe(false);
    expect(gapsReady([])).toBe(false);
  });
});
