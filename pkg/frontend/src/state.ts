/** View state and its pure transitions.
 *
 * Everything the screens show about the session is derived from the
 * last server response — the reducers below never invent grades,
 * hints, or state names. The only client-owned fields are the typed
 * drafts (preserved across failed requests), the in-flight flag, and
 * the dismissable notice.
 */

import type {
  ExercisePayload,
  InterventionPayload,
  OutcomeResponse,
  ReportPayload,
  SessionPhase,
  SessionResponse,
} from "./types.js";
import { countGaps } from "./gaps.js";

export type RatingState = "unrated" | "posting" | "rated";

export interface InterventionView {
  payload: InterventionPayload;
  rating: RatingState;
  gapFills: string[]; // one entry per \boxed{?} slot
}

export type Screen = "start" | "exercise" | "summary";

export interface AppState {
  screen: Screen;
  studentId: string;
  sessionId: string | null;
  phase: SessionPhase | null;
  exercise: ExercisePayload | null;
  attemptIndex: number;
  lastGrade: { grade: string; score: number } | null;
  intervention: InterventionView | null;
  draft: string; // attempt box contents, survives failures
  pending: boolean; // one in-flight request per session
  notice: string | null;
  offerRetry: boolean;
  summary: ReportPayload | null;
}

export function initialState(): AppState {
  return {
    screen: "start",
    studentId: "",
    sessionId: null,
    phase: null,
    exercise: null,
    attemptIndex: 1,
    lastGrade: null,
    intervention: null,
    draft: "",
    pending: false,
    notice: null,
    offerRetry: false,
    summary: null,
  };
}

function freshIntervention(
  payload: InterventionPayload,
): InterventionView {
  return {
    payload,
    rating: "unrated",
    gapFills: new Array(countGaps(payload.text)).fill(""),
  };
}

/** A new session opened: the server told us the exercise and state. */
export function applySession(
  state: AppState,
  response: SessionResponse,
): AppState {
  return {
    ...state,
    screen: "exercise",
    sessionId: response.session_id,
    phase: response.state,
    exercise: response.exercise,
    attemptIndex: 1,
    lastGrade: null,
    intervention: null,
    draft: "",
    notice: null,
    offerRetry: false,
  };
}

/** An attempt/help/skip response: mirror it verbatim. */
export function applyOutcome(
  state: AppState,
  response: OutcomeResponse,
): AppState {
  return {
    ...state,
    phase: response.state,
    attemptIndex: response.attempt_index,
    lastGrade:
      response.grade !== undefined
        ? { grade: response.grade, score: response.score ?? 0 }
        : state.lastGrade,
    // A new intervention replaces the card; otherwise the last one
    // stays up (still ratable after the exercise resolves). Only a new
    // session clears it.
    intervention: response.intervention
      ? freshIntervention(response.intervention)
      : state.intervention,
    draft: response.state === "Solved" ? "" : state.draft,
    notice: null,
    offerRetry: false,
  };
}

/** The server accepted exactly one rating for this intervention. */
export function applyRated(state: AppState): AppState {
  if (!state.intervention) return state;
  return {
    ...state,
    intervention: { ...state.intervention, rating: "rated" },
  };
}

export function markRatingPosting(state: AppState): AppState {
  if (!state.intervention) return state;
  return {
    ...state,
    intervention: { ...state.intervention, rating: "posting" },
  };
}

/** The rating POST never reached the server, so it is safe to offer
 * the control again. */
export function revertRating(state: AppState): AppState {
  if (!state.intervention) return state;
  return {
    ...state,
    intervention: { ...state.intervention, rating: "unrated" },
  };
}

/** 409: the action was not available. Non-blocking — but the body
 * carries the server's authoritative state, so resynchronize it. */
export function applyConflict(
  state: AppState,
  serverState: SessionPhase,
  detail: string,
): AppState {
  return {
    ...state,
    phase: serverState,
    notice: `Action not available: ${detail}`,
    offerRetry: false,
  };
}

/** The request never reached the server: keep everything the student
 * typed and offer a retry. */
export function applyNetworkError(state: AppState): AppState {
  return {
    ...state,
    notice: "Network error — your attempt is preserved.",
    offerRetry: true,
  };
}

export function applyApiError(state: AppState, detail: string): AppState {
  return { ...state, notice: detail, offerRetry: false };
}

export function applySummary(
  state: AppState,
  payload: ReportPayload,
): AppState {
  return { ...state, screen: "summary", summary: payload, notice: null };
}

export function setDraft(state: AppState, draft: string): AppState {
  return { ...state, draft };
}

export function setGapFill(
  state: AppState,
  index: number,
  value: string,
): AppState {
  if (!state.intervention) return state;
  const gapFills = [...state.intervention.gapFills];
  gapFills[index] = value;
  return {
    ...state,
    intervention: { ...state.intervention, gapFills },
  };
}

export function setPending(state: AppState, pending: boolean): AppState {
  return { ...state, pending };
}

export function dismissNotice(state: AppState): AppState {
  return { ...state, notice: null };
}

export function backToExercise(state: AppState): AppState {
  return {
    ...state,
    screen: state.sessionId ? "exercise" : "start",
    summary: null,
  };
}
