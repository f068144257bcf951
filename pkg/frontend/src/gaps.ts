/** Gapped-equation helpers. The server renders blanks as the literal
 * token `\boxed{?}`; completing a hint substitutes each blank, in
 * order, with the student's entry wrapped in parentheses — the same
 * substitution the server applies when checking its own recorded
 * answers, so a correctly filled slot round-trips to an equivalent
 * expression regardless of operator precedence around the blank. */

export const GAP_TOKEN = "\\boxed{?}";

/** Number of blanks in a rendered gap hint. */
export function countGaps(rendered: string): number {
  return rendered.split(GAP_TOKEN).length - 1;
}

/** The static LaTeX fragments around the blanks: always one more
 * segment than there are blanks. */
export function gapSegments(rendered: string): string[] {
  return rendered.split(GAP_TOKEN);
}

/** Rebuild the full LaTeX with every blank replaced by its fill. */
export function completeGaps(rendered: string, fills: string[]): string {
  const segments = gapSegments(rendered);
  const gaps = segments.length - 1;
  if (fills.length !== gaps) {
    throw new Error(`expected ${gaps} fills, got ${fills.length}`);
  }
  let out = segments[0] ?? "";
  for (let i = 0; i < gaps; i += 1) {
    out += `(${fills[i]})` + (segments[i + 1] ?? "");
  }
  return out;
}

/** A hint is submittable once every blank has a non-blank entry. */
export function gapsReady(fills: string[]): boolean {
  return fills.length > 0 && fills.every((fill) => fill.trim().length > 0);
}
