import { describe, expect, it } from "vitest";

import {
  applyConflict,
  applyNetworkError,
  applyOutcome,
  applySession,
  initialState,
  setDraft,
  type AppState,
} from "../src/state.js";
import {
  incorrectOutcome,
  sessionResponse,
  solvedOutcome,
  TEXT_EXERCISE,
  TEXT_HINT,
} from "./helpers.js";

function deepFreeze<T>(value: T): T {
  if (value && typeof value === "object") {
    for (const key of Object.keys(value)) {
      deepFreeze((value as Record<string, unknown>)[key]);
    }
    Object.freeze(value);
  }
  return value;
}

function opened(): AppState {
  return applySession(
    { ...initialState(), studentId: "alice" },
    sessionResponse("alice-s1", TEXT_EXERCISE),
  );
}

describe("state transitions are pure functions of the last response", () => {
  it("never mutates its inputs", () => {
    const state = deepFreeze(opened());
    const response = deepFreeze(incorrectOutcome("alice-s1", 2, TEXT_HINT));
    const next = applyOutcome(state, response);
    expect(next).not.toBe(state);
    expect(state.intervention).toBeNull();
    expect(next.intervention?.payload.text).toBe(TEXT_HINT.text);
  });

  it("is deterministic: same response, same state", () => {
    const state = opened();
    const response = incorrectOutcome("alice-s1", 2, TEXT_HINT);
    expect(applyOutcome(state, response)).toEqual(
      applyOutcome(state, response),
    );
  });

  it("mirrors the server's phase, attempt index, and grade verbatim", () => {
    const next = applyOutcome(
      opened(),
      incorrectOutcome("alice-s1", 2, TEXT_HINT),
    );
    expect(next.phase).toBe("InterventionShown");
    expect(next.attemptIndex).toBe(2);
    expect(next.lastGrade).toEqual({ grade: "Incorrect", score: 0.0 });
  });

  it("a solved outcome clears the draft but keeps the card ratable", () => {
    const shown = applyOutcome(
      setDraft(opened(), "my guess"),
      incorrectOutcome("alice-s1", 2, TEXT_HINT),
    );
    const solved = applyOutcome(shown, solvedOutcome("alice-s1", 3));
    expect(solved.draft).toBe("");
    expect(solved.intervention?.payload.id).toBe(TEXT_HINT.id);
    expect(solved.intervention?.rating).toBe("unrated");
  });

  it("a conflict resynchronizes the phase from the server's body", () => {
    const state = opened();
    const next = applyConflict(state, "Solved", "attempt not legal");
    expect(next.phase).toBe("Solved");
    expect(next.notice).toContain("attempt not legal");
  });

  it("a network error preserves the typed attempt", () => {
    const typed = setDraft(opened(), "half-finished thought");
    const next = applyNetworkError(typed);
    expect(next.draft).toBe("half-finished thought");
    expect(next.offerRetry).toBe(true);
  });

  it("a new session clears the previous card and draft", () => {
    const shown = applyOutcome(
      setDraft(opened(), "scratch"),
      incorrectOutcome("alice-s1", 2, TEXT_HINT),
    );
    const next = applySession(
      shown,
      sessionResponse("alice-s2", TEXT_EXERCISE),
    );
    expect(next.intervention).toBeNull();
    expect(next.draft).toBe("");
    expect(next.sessionId).toBe("alice-s2");
  });
});
