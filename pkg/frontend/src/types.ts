/** Wire types for the tutoring service. Field names mirror the JSON
 * exactly; the UI adds nothing and never interprets beyond display. */

export type SessionPhase =
  | "AwaitingAttempt"
  | "InterventionShown"
  | "Solved"
  | "Skipped";

export type GradeValue = "Correct" | "Incorrect";

/** Intervention kinds this client knows how to display. Anything else
 * must never be rendered (it is hidden behind a generic notice). */
export const RENDERABLE_TYPES = [
  "TextHint",
  "WikiExplanation",
  "MathGapHint",
  "MathDiffHint",
] as const;

export type RenderableType = (typeof RENDERABLE_TYPES)[number];

export function isRenderable(type: string): type is RenderableType {
  return (RENDERABLE_TYPES as readonly string[]).includes(type);
}

export interface ExercisePayload {
  id: string;
  question: string;
  math_entry: boolean;
  tags: string[];
  difficulty: number;
}

export interface InterventionPayload {
  id: string;
  type: string;
  tier: string | null;
  content_id: string;
  text: string;
  score: number;
  extra: Record<string, unknown>;
}

export interface SessionResponse {
  session_id: string;
  state: SessionPhase;
  exercise: ExercisePayload;
}

export interface OutcomeResponse {
  session_id: string;
  state: SessionPhase;
  attempt_index: number;
  grade?: GradeValue;
  score?: number;
  intervention?: InterventionPayload;
}

export interface GainCellPayload {
  tier: string;
  filter: string;
  successes: number;
  trials: number;
  proportion: number;
  ci_lower: number;
  ci_upper: number;
}

export interface ComparisonPayload {
  tier_a: string;
  tier_b: string;
  filter: string;
  z: number;
  one_tailed_p: number;
  two_tailed_p: number;
  pooled: number;
}

export interface ReportPayload {
  level: number;
  cells: GainCellPayload[];
  comparisons: ComparisonPayload[];
}

export interface ConflictBody {
  detail: string;
  state: SessionPhase;
  event: string;
}
