/** Sentence splitting and tokenization for requirement prose. */

export function splitSentences(text: string): string[] {
  const out: string[] = [];
  for (const rawLine of text.split(/\r?\n/)) {
    const line = rawLine.trim();
    if (!line) continue;
    // split on terminators followed by space+capital or end of line
    const parts = line.split(/(?<=[.!?])\s+(?=[A-Z0-9"(])/);
    for (const part of parts) {
      const s = part.trim();
      if (s) out.push(s);
    }
  }
  return out;
}

/** Words keep internal hyphens/underscores; punctuation becomes tokens. */
export function tokenize(sentence: string): string[] {
  const matches = sentence.match(/[A-Za-z0-9][\w'-]*|[.,()?!;:"]/g);
  return matches ? matches.filter((t) => t !== "'") : [];
}
