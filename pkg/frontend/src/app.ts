/** Controller: wires user actions to the API and the pure reducers.
 *
 * Invariants enforced here:
 *  - every user action issues exactly one HTTP request;
 *  - at most one request is in flight per session (actions while
 *    pending are ignored and the buttons are rendered disabled);
 *  - a rating posts exactly once per intervention;
 *  - failed requests keep the typed attempt and offer a retry.
 */

import {
  ApiError,
  ConflictError,
  NetworkError,
  TutorApi,
} from "./api.js";
import { completeGaps, gapsReady } from "./gaps.js";
import type { Actions } from "./render.js";
import { render } from "./render.js";
import {
  applyApiError,
  applyConflict,
  applyNetworkError,
  applyOutcome,
  applyRated,
  applySession,
  applySummary,
  backToExercise,
  dismissNotice,
  initialState,
  markRatingPosting,
  revertRating,
  setDraft,
  setGapFill,
  setPending,
  type AppState,
} from "./state.js";

export class App {
  state: AppState = initialState();
  private lastRequest: (() => void) | null = null;

  constructor(
    private readonly api: TutorApi,
    private readonly root: HTMLElement,
  ) {}

  readonly actions: Actions = {
    setStudentId: (value) => {
      this.state = { ...this.state, studentId: value };
      this.paint();
    },
    setDraft: (value) => {
      this.state = setDraft(this.state, value);
      this.paint();
    },
    setGapFill: (index, value) => {
      this.state = setGapFill(this.state, index, value);
      this.paint();
    },
    start: () => this.openSession(),
    nextExercise: () => this.openSession(),
    submitAttempt: () => this.submitAttempt(),
    submitGaps: () => this.submitGaps(),
    requestHelp: () =>
      this.session((sessionId) => this.api.requestHelp(sessionId)),
    skip: () => this.session((sessionId) => this.api.skip(sessionId)),
    rate: (helpful) => this.rate(helpful),
    showSummary: () => this.showSummary(),
    backToExercise: () => {
      this.state = backToExercise(this.state);
      this.paint();
    },
    dismissNotice: () => {
      this.state = dismissNotice(this.state);
      this.paint();
    },
    retry: () => {
      const request = this.lastRequest;
      if (request && !this.state.pending) request();
    },
  };

  paint(): void {
    render(this.root, this.state, this.actions);
  }

  /** Run one request with the in-flight gate and shared error policy. */
  private run(
    requestFactory: () => Promise<void>,
    { retryable = true }: { retryable?: boolean } = {},
  ): void {
    if (this.state.pending) return;
    const request = () => {
      this.state = setPending(this.state, true);
      this.paint();
      requestFactory()
        .catch((error: unknown) => {
          if (error instanceof ConflictError) {
            this.state = applyConflict(
              this.state,
              error.body.state,
              error.body.detail,
            );
          } else if (error instanceof NetworkError) {
            this.state = retryable
              ? applyNetworkError(this.state)
              : applyApiError(this.state, "Network error — please try again.");
          } else if (error instanceof ApiError) {
            this.state = applyApiError(this.state, error.detail);
          } else {
            this.state = applyApiError(this.state, String(error));
          }
        })
        .finally(() => {
          this.state = setPending(this.state, false);
          this.paint();
        });
    };
    this.lastRequest = retryable ? request : null;
    request();
  }

  private openSession(): void {
    const studentId = this.state.studentId.trim();
    if (!studentId) return;
    this.run(async () => {
      const response = await this.api.openSession(studentId);
      this.state = applySession(this.state, response);
    });
  }

  private session(
    call: (sessionId: string) => Promise<
      Parameters<typeof applyOutcome>[1]
    >,
  ): void {
    const sessionId = this.state.sessionId;
    if (!sessionId) return;
    this.run(async () => {
      const response = await call(sessionId);
      this.state = applyOutcome(this.state, response);
    });
  }

  private submitAttempt(): void {
    const attempt = this.state.draft;
    if (attempt.trim() === "") return;
    const mathEntry = this.state.exercise?.math_entry ?? false;
    this.session((sessionId) =>
      mathEntry
        ? this.api.submitLatex(sessionId, attempt)
        : this.api.submitText(sessionId, attempt),
    );
  }

  private submitGaps(): void {
    const view = this.state.intervention;
    if (!view || view.payload.type !== "MathGapHint") return;
    if (!gapsReady(view.gapFills)) return;
    const latex = completeGaps(view.payload.text, view.gapFills);
    this.session((sessionId) => this.api.submitLatex(sessionId, latex));
  }

  private rate(helpful: boolean): void {
    const view = this.state.intervention;
    if (!view || view.rating !== "unrated") return;
    const interventionId = view.payload.id;
    this.state = markRatingPosting(this.state);
    this.run(
      async () => {
        try {
          await this.api.rate(interventionId, helpful);
          this.state = applyRated(this.state);
        } catch (error) {
          if (error instanceof NetworkError) {
            // Nothing reached the server — the control may reappear.
            this.state = revertRating(this.state);
          } else {
            // The server answered (e.g. already rated): never repost.
            this.state = applyRated(this.state);
          }
          throw error;
        }
      },
      { retryable: false },
    );
  }

  private showSummary(): void {
    this.run(async () => {
      const payload = await this.api.learningGains();
      this.state = applySummary(this.state, payload);
    });
  }
}

export function mount(root: HTMLElement, api: TutorApi): App {
  const app = new App(api, root);
  app.paint();
  return app;
}
