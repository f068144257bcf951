/** DOM rendering: one pure pass from AppState to the document. The
 * render owns no state — every control dispatches through the actions
 * object and the whole tree is rebuilt from the next state. */

import type { AppState, InterventionView } from "./state.js";
import { gapSegments } from "./gaps.js";
import { latexPreview } from "./latex.js";
import { isRenderable } from "./types.js";

export interface Actions {
  setStudentId(value: string): void;
  start(): void;
  setDraft(value: string): void;
  submitAttempt(): void;
  requestHelp(): void;
  skip(): void;
  nextExercise(): void;
  rate(helpful: boolean): void;
  setGapFill(index: number, value: string): void;
  submitGaps(): void;
  showSummary(): void;
  backToExercise(): void;
  dismissNotice(): void;
  retry(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function button(
  testId: string,
  label: string,
  disabled: boolean,
  onClick: () => void,
): HTMLButtonElement {
  const node = el("button", { "data-testid": testId }, label);
  node.disabled = disabled;
  node.addEventListener("click", onClick);
  return node;
}

function noticeBar(state: AppState, actions: Actions): HTMLElement | null {
  if (!state.notice) return null;
  const bar = el(
    "div",
    { "data-testid": "notice", class: "notice", role: "status" },
    el("span", {}, state.notice),
  );
  if (state.offerRetry) {
    bar.appendChild(button("retry", "Retry", state.pending, actions.retry));
  }
  bar.appendChild(
    button("dismiss-notice", "Dismiss", false, actions.dismissNotice),
  );
  return bar;
}

function startScreen(state: AppState, actions: Actions): HTMLElement {
  const input = el("input", {
    "data-testid": "student-id",
    placeholder: "student id",
  });
  input.value = state.studentId;
  input.addEventListener("input", () =>
    actions.setStudentId(input.value),
  );
  return el(
    "section",
    { "data-testid": "start-screen" },
    el("h1", {}, "Tutoring"),
    input,
    button(
      "start",
      "Start",
      state.pending || state.studentId.trim() === "",
      actions.start,
    ),
  );
}

function interventionCard(
  state: AppState,
  view: InterventionView,
  actions: Actions,
): HTMLElement {
  const payload = view.payload;
  const card = el("aside", {
    "data-testid": "intervention-card",
    class: "intervention",
  });
  const label =
    payload.type === "WikiExplanation"
      ? "Explanation"
      : payload.type === "MathDiffHint"
        ? "What to check"
        : "Hint";
  card.appendChild(el("h3", {}, label));

  if (payload.type === "MathGapHint") {
    const equation = el("div", {
      "data-testid": "gap-equation",
      class: "gap-equation",
    });
    const segments = gapSegments(payload.text);
    segments.forEach((segment, i) => {
      equation.appendChild(latexPreview(segment));
      if (i < segments.length - 1) {
        const slot = el("input", {
          "data-testid": `gap-slot-${i}`,
          class: "gap-slot",
          placeholder: "?",
        });
        slot.value = view.gapFills[i] ?? "";
        slot.addEventListener("input", () =>
          actions.setGapFill(i, slot.value),
        );
        equation.appendChild(slot);
      }
    });
    card.appendChild(equation);
    card.appendChild(
      button(
        "submit-gaps",
        "Submit completed equation",
        state.pending,
        actions.submitGaps,
      ),
    );
  } else {
    card.appendChild(
      el("p", { "data-testid": "intervention-text" }, payload.text),
    );
  }

  if (view.rating === "unrated" || view.rating === "posting") {
    const disabled = state.pending || view.rating === "posting";
    card.appendChild(
      el(
        "div",
        { "data-testid": "rating-control", class: "rating" },
        el("span", {}, "Was this helpful?"),
        button("rate-yes", "Yes", disabled, () => actions.rate(true)),
        button("rate-no", "No", disabled, () => actions.rate(false)),
      ),
    );
  } else {
    card.appendChild(
      el("p", { "data-testid": "rating-done" }, "Thanks for the feedback."),
    );
  }
  return card;
}

function attemptBox(state: AppState, actions: Actions): HTMLElement {
  const mathEntry = state.exercise?.math_entry ?? false;
  const wrap = el("div", { class: "attempt" });
  const input = el("textarea", {
    "data-testid": "attempt-input",
    placeholder: mathEntry ? "LaTeX answer" : "your answer",
  });
  input.value = state.draft;
  input.addEventListener("input", () => actions.setDraft(input.value));
  wrap.appendChild(input);
  if (mathEntry) {
    const preview = el("div", {
      "data-testid": "latex-live-preview",
      class: "preview",
    });
    preview.appendChild(latexPreview(state.draft));
    wrap.appendChild(preview);
  }
  wrap.appendChild(
    button(
      "submit-attempt",
      "Submit",
      state.pending || state.draft.trim() === "",
      actions.submitAttempt,
    ),
  );
  wrap.appendChild(
    button("help", "Help", state.pending, actions.requestHelp),
  );
  wrap.appendChild(button("skip", "Skip", state.pending, actions.skip));
  return wrap;
}

function exerciseScreen(state: AppState, actions: Actions): HTMLElement {
  const screen = el("section", { "data-testid": "exercise-screen" });
  if (state.exercise) {
    screen.appendChild(
      el("h2", { "data-testid": "question" }, state.exercise.question),
    );
  }

  if (state.phase === "Solved") {
    screen.appendChild(
      el(
        "div",
        { "data-testid": "solved-banner", class: "banner" },
        "Correct — well done!",
      ),
    );
  } else if (state.phase === "Skipped") {
    screen.appendChild(
      el(
        "div",
        { "data-testid": "skipped-banner", class: "banner" },
        "Exercise skipped.",
      ),
    );
  } else {
    if (state.lastGrade?.grade === "Incorrect") {
      screen.appendChild(
        el(
          "p",
          { "data-testid": "grade-line" },
          `Not quite (attempt ${state.attemptIndex - 1}).`,
        ),
      );
    }
    screen.appendChild(attemptBox(state, actions));
  }

  if (state.intervention) {
    if (isRenderable(state.intervention.payload.type)) {
      screen.appendChild(
        interventionCard(state, state.intervention, actions),
      );
    } else {
      screen.appendChild(
        el(
          "p",
          { "data-testid": "unsupported-intervention" },
          "The tutor suggested something this client cannot display yet.",
        ),
      );
    }
  }

  if (state.phase === "Solved" || state.phase === "Skipped") {
    screen.appendChild(
      button(
        "next-exercise",
        "Next exercise",
        state.pending,
        actions.nextExercise,
      ),
    );
  }
  screen.appendChild(
    button("show-summary", "Progress", state.pending, actions.showSummary),
  );
  return screen;
}

const TIER_ORDER = ["baseline", "shallow", "deep"];
const FILTER_COLUMNS: [string, string][] = [
  ["AllAttempts", "All Attempts"],
  ["BeforeSecondAttempt", "Before Second Attempt"],
];

function pct(x: number): string {
  return `${(100 * x).toFixed(2)}%`;
}

function summaryScreen(state: AppState, actions: Actions): HTMLElement {
  const screen = el("section", { "data-testid": "summary-screen" });
  screen.appendChild(el("h2", {}, "Learning gains by hint tier"));
  const report = state.summary;
  if (report) {
    const table = el("table", { "data-testid": "summary-table" });
    const head = el("tr", {}, el("th", {}, "Model"));
    for (const [, label] of FILTER_COLUMNS) {
      head.append(el("th", {}, label), el("th", {}, "95% C.I."));
    }
    table.appendChild(head);
    const tiers = TIER_ORDER.filter((tier) =>
      report.cells.some((cell) => cell.tier === tier),
    );
    for (const tier of tiers) {
      const row = el("tr", { "data-testid": `summary-row-${tier}` });
      row.appendChild(el("td", {}, tier));
      for (const [filterName] of FILTER_COLUMNS) {
        const cell = report.cells.find(
          (c) => c.tier === tier && c.filter === filterName,
        );
        if (cell) {
          row.append(
            el("td", {}, pct(cell.proportion)),
            el(
              "td",
              {},
              `[${pct(cell.ci_lower)}, ${pct(cell.ci_upper)}]`,
            ),
          );
        } else {
          row.append(el("td", {}, "—"), el("td", {}, "—"));
        }
      }
      table.appendChild(row);
    }
    screen.appendChild(table);
  } else {
    screen.appendChild(el("p", {}, "No analytics yet."));
  }
  screen.appendChild(
    button("back", "Back", state.pending, actions.backToExercise),
  );
  return screen;
}

export function render(
  root: HTMLElement,
  state: AppState,
  actions: Actions,
): void {
  root.textContent = "";
  const bar = noticeBar(state, actions);
  if (bar) root.appendChild(bar);
  if (state.screen === "start") {
    root.appendChild(startScreen(state, actions));
  } else if (state.screen === "summary") {
    root.appendChild(summaryScreen(state, actions));
  } else {
    root.appendChild(exerciseScreen(state, actions));
  }
}
