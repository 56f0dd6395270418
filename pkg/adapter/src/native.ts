/** Emitter for the native dependency format the extraction library loads. */

import { Dep } from './parse';
import { Token } from './tag';

export interface ParsedSentence {
  seq: number;
  text: string;
  flowTag: string;
  stepLabel?: string;
  tokens: Token[];
  deps: Dep[];
}

// legacy spellings folded to the canonical inventory (mirrors the loader)
const NORMALIZATION: Record<string, string> = {
  nn: 'compound', num: 'nummod', poss: 'nmod:poss', agent: 'nmod:agent',
  complm: 'mark', infmod: 'vmod', partmod: 'vmod', obj: 'dobj',
};

export function normalizeLabel(label: string): string {
  if (NORMALIZATION[label]) return NORMALIZATION[label];
  const m = label.match(/^(prep|conj|nmod)_(.+)$/);
  if (m) return `${m[1] === 'prep' ? 'nmod' : m[1]}:${m[2]}`;
  return label;
}

export function emitNative(sourceId: string, format: string,
                           sentences: ParsedSentence[]): string {
  const lines: string[] = [`#doc ${sourceId} ${format}`];
  for (const s of sentences) {
    let head = `#sent ${s.seq} ${s.flowTag}`;
    if (s.stepLabel) head += ` ${s.stepLabel}`;
    lines.push(head);
    lines.push(s.text);
    for (const t of s.tokens) {
      lines.push(`T ${t.index} ${t.surface} ${t.lemma} ${t.pos}`);
    }
    s.deps.forEach((d, i) => {
      lines.push(`D ${i} ${normalizeLabel(d.label)} ${d.governor} ${d.dependent}`);
    });
  }
  return lines.join('\n') + '\n';
}
