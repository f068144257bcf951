/** Live preview for raw-LaTeX entry. Display only — nothing here
 * grades, normalizes, or otherwise interprets the math; the string the
 * student typed is what gets posted. Built with DOM nodes (never
 * innerHTML) so arbitrary input cannot inject markup. */

const SYMBOLS: Record<string, string> = {
  cdot: "·",
  times: "×",
  pm: "±",
  le: "≤",
  leq: "≤",
  ge: "≥",
  geq: "≥",
  ne: "≠",
  neq: "≠",
  alpha: "α",
  beta: "β",
  pi: "π",
  theta: "θ",
};

const GAP_PLACEHOLDER = "▢"; // ▢ marks an unfilled blank

class Cursor {
  pos = 0;
  constructor(readonly text: string) {}

  get done(): boolean {
    return this.pos >= this.text.length;
  }

  peek(): string {
    return this.text[this.pos] ?? "";
  }

  take(): string {
    const ch = this.peek();
    this.pos += 1;
    return ch;
  }

  /** Consume a `{...}` group (balanced) or a single character. */
  takeArgument(): string {
    if (this.peek() !== "{") return this.take();
    this.take(); // "{"
    let depth = 1;
    let out = "";
    while (!this.done && depth > 0) {
      const ch = this.take();
      if (ch === "{") depth += 1;
      if (ch === "}") depth -= 1;
      if (depth > 0) out += ch;
    }
    return out;
  }

  takeCommand(): string {
    let name = "";
    while (!this.done && /[a-zA-Z]/.test(this.peek())) {
      name += this.take();
    }
    return name;
  }
}

function span(className: string, child: Node | string): HTMLElement {
  const el = document.createElement("span");
  el.className = className;
  el.append(child);
  return el;
}

function renderInto(parent: Node, source: string): void {
  const cursor = new Cursor(source);
  let textRun = "";
  const flush = () => {
    if (textRun) {
      parent.appendChild(document.createTextNode(textRun));
      textRun = "";
    }
  };

  while (!cursor.done) {
    const ch = cursor.take();
    if (ch === "\\") {
      const name = cursor.takeCommand();
      if (name === "frac") {
        flush();
        const numerator = cursor.takeArgument();
        const denominator = cursor.takeArgument();
        const frac = span("latex-frac", span("latex-num", ""));
        renderInto(frac.firstChild as Node, numerator);
        const den = span("latex-den", "");
        renderInto(den, denominator);
        frac.appendChild(den);
        parent.appendChild(frac);
      } else if (name === "boxed") {
        flush();
        const body = cursor.takeArgument();
        parent.appendChild(
          span("latex-box", body === "?" ? GAP_PLACEHOLDER : body),
        );
      } else if (name in SYMBOLS) {
        textRun += SYMBOLS[name];
      } else if (name === "") {
        textRun += cursor.take(); // escaped punctuation like \{
      } else {
        textRun += name; // unknown command: show its name verbatim
      }
    } else if (ch === "^" || ch === "_") {
      flush();
      const el = document.createElement(ch === "^" ? "sup" : "sub");
      renderInto(el, cursor.takeArgument());
      parent.appendChild(el);
    } else if (ch === "{" || ch === "}") {
      // bare grouping braces are invisible in the preview
    } else {
      textRun += ch;
    }
  }
  flush();
}

/** Render a preview element for a LaTeX string. */
export function latexPreview(source: string): HTMLElement {
  const root = span("latex-preview", "");
  renderInto(root, source);
  return root;
}
