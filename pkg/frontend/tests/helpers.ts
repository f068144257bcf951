/** Test doubles for the tutoring service. The fixture payloads below
 * were captured verbatim from a running server so the mocked contract
 * matches the real wire format. */

import type { FetchLike } from "../src/api.js";
import type {
  ExercisePayload,
  InterventionPayload,
  OutcomeResponse,
  ReportPayload,
  SessionResponse,
} from "../src/types.js";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface Reply {
  status: number;
  body: unknown;
}

interface Route {
  method: string;
  pattern: RegExp;
  handler: (call: RecordedCall) => Reply | Promise<Reply>;
}

export class Deferred<T> {
  readonly promise: Promise<T>;
  resolve!: (value: T) => void;
  reject!: (reason?: unknown) => void;

  constructor() {
    this.promise = new Promise((resolve, reject) => {
      this.resolve = resolve;
      this.reject = reject;
    });
  }
}

export class MockServer {
  readonly calls: RecordedCall[] = [];
  private routes: Route[] = [];
  private failNextCount = 0;

  route(
    method: string,
    pattern: RegExp,
    handler: (call: RecordedCall) => Reply | Promise<Reply>,
  ): void {
    // Later registrations shadow earlier ones so a test can rescript a
    // route mid-flow.
    this.routes.unshift({ method, pattern, handler });
  }

  /** Make the next n requests fail before reaching the server. */
  failNext(n = 1): void {
    this.failNextCount += n;
  }

  callsTo(pattern: RegExp): RecordedCall[] {
    return this.calls.filter((call) => pattern.test(call.path));
  }

  readonly fetch: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const body =
      typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
    const call: RecordedCall = { method, path: input, body };
    this.calls.push(call); // recorded even when the network "drops" it
    if (this.failNextCount > 0) {
      this.failNextCount -= 1;
      throw new TypeError("failed to fetch");
    }
    for (const route of this.routes) {
      if (route.method === method && route.pattern.test(input)) {
        const reply = await route.handler(call);
        return asResponse(reply);
      }
    }
    return asResponse({ status: 404, body: { detail: `no route ${input}` } });
  };
}

function asResponse(reply: Reply): Response {
  return {
    ok: reply.status >= 200 && reply.status < 300,
    status: reply.status,
    json: async () => reply.body,
  } as unknown as Response;
}

/** Drain the microtask/timer queue so promise chains settle. */
export async function flush(): Promise<void> {
  for (let i = 0; i < 4; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

// ---------------------------------------------------------------------------
// Fixtures captured from the real service.

export const TEXT_EXERCISE: ExercisePayload = {
  id: "ml-001",
  question: "What is the difference between overfitting and underfitting?",
  math_entry: false,
  tags: ["model-fit", "core-concepts"],
  difficulty: 0.4,
};

export const MATH_EXERCISE: ExercisePayload = {
  id: "alg-001",
  question:
    "Write the slope-intercept form of a straight line through intercept b with slope m.",
  math_entry: true,
  tags: ["algebra"],
  difficulty: 0.3,
};

export const TEXT_HINT: InterventionPayload = {
  id: "alice-s1-t1",
  type: "TextHint",
  tier: "deep",
  content_id: "hint:ml-001:deep:case-when",
  text: "Think about the case when it has a high bias.",
  score: 0.7,
  extra: {},
};

export const GAP_HINT: InterventionPayload = {
  id: "alice-s2-t1",
  type: "MathGapHint",
  tier: null,
  content_id: "gap:alg-001:1",
  text: "y = m \\cdot \\boxed{?} + b",
  score: 0.6,
  extra: { answers: ["x"], policy: "BlankOneLeaf" },
};

/** What the server itself produces when the gap above is completed
 * with its recorded answer. */
export const GAP_COMPLETED_LATEX = "y = m \\cdot (x) + b";

export function sessionResponse(
  sessionId: string,
  exercise: ExercisePayload,
): SessionResponse {
  return { session_id: sessionId, state: "AwaitingAttempt", exercise };
}

export function incorrectOutcome(
  sessionId: string,
  attemptIndex: number,
  intervention: InterventionPayload,
): OutcomeResponse {
  return {
    session_id: sessionId,
    state: "InterventionShown",
    attempt_index: attemptIndex,
    grade: "Incorrect",
    score: 0.0,
    intervention,
  };
}

export function solvedOutcome(
  sessionId: string,
  attemptIndex: number,
): OutcomeResponse {
  return {
    session_id: sessionId,
    state: "Solved",
    attempt_index: attemptIndex,
    grade: "Correct",
    score: 1.0,
  };
}

export const REPORT: ReportPayload = {
  level: 0.95,
  cells: [
    {
      tier: "baseline",
      filter: "AllAttempts",
      successes: 15,
      trials: 38,
      proportion: 0.39473684210526316,
      ci_lower: 0.24038789366022684,
      ci_upper: 0.5661384613777045,
    },
    {
      tier: "baseline",
      filter: "BeforeSecondAttempt",
      successes: 11,
      trials: 29,
      proportion: 0.3793103448275862,
      ci_lower: 0.20686869948985986,
      ci_upper: 0.5773953593161423,
    },
    {
      tier: "shallow",
      filter: "AllAttempts",
      successes: 20,
      trials: 43,
      proportion: 0.46511627906976744,
      ci_lower: 0.3117618790420238,
      ci_upper: 0.6234527398773935,
    },
    {
      tier: "shallow",
      filter: "BeforeSecondAttempt",
      successes: 18,
      trials: 35,
      proportion: 0.5142857142857142,
      ci_lower: 0.33989141540951096,
      ci_upper: 0.6861714907863643,
    },
    {
      tier: "deep",
      filter: "AllAttempts",
      successes: 33,
      trials: 68,
      proportion: 0.4852941176470588,
      ci_lower: 0.36220809232327156,
      ci_upper: 0.609701812005369,
    },
    {
      tier: "deep",
      filter: "BeforeSecondAttempt",
      successes: 26,
      trials: 43,
      proportion: 0.6046511627906976,
      ci_lower: 0.4440995244367514,
      ci_upper: 0.7502322113432456,
    },
  ],
  comparisons: [],
};
