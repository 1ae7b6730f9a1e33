// Math runs arrive from the server as LaTeX between dollar signs. The
// explorer only displays them: KaTeX typesets each run when it is loaded
// on the page, and otherwise the raw LaTeX is shown in a code span.

export interface RichSegment {
  kind: "text" | "math";
  value: string;
}

export function splitMathRuns(text: string): RichSegment[] {
  const segments: RichSegment[] = [];
  let buffer = "";
  let inMath = false;
  for (let i = 0; i < text.length; i += 1) {
    const ch = text[i];
    if (ch === "$") {
      if (buffer.length > 0) {
        segments.push({ kind: inMath ? "math" : "text", value: buffer });
      }
      buffer = "";
      inMath = !inMath;
    } else {
      buffer += ch;
    }
  }
  if (buffer.length > 0) {
    // a trailing unbalanced math run degrades to plain text
    segments.push({ kind: "text", value: buffer });
  }
  return segments;
}

interface KatexLike {
  render(tex: string, element: HTMLElement, options?: object): void;
}

declare global {
  interface Window {
    katex?: KatexLike;
  }
}

export function renderRich(element: HTMLElement, text: string): void {
  element.textContent = "";
  for (const segment of splitMathRuns(text)) {
    if (segment.kind === "math" && typeof window !== "undefined" && window.katex) {
      const span = document.createElement("span");
      try {
        window.katex.render(segment.value, span, { throwOnError: false });
        element.appendChild(span);
        continue;
      } catch {
        // fall through to the plain rendering
      }
    }
    if (segment.kind === "math") {
      const code = document.createElement("code");
      code.textContent = segment.value;
      element.appendChild(code);
    } else {
      element.appendChild(document.createTextNode(segment.value));
    }
  }
}
