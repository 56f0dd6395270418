/** UCS sentence sequencing: the same grammar the extraction library applies. */

const SECTION_SYNONYMS: Record<string, string[]> = {
  main: ['main flow', 'main success scenario', 'basic flow',
         'success scenario', 'normal flow', 'flow of events'],
  alternate: ['alternate', 'alternate flow', 'alternate flows',
              'alternative flow', 'alternative flows', 'alternatives'],
  extension: ['extensions', 'extension', 'extension points'],
  exception: ['exceptions', 'exception', 'exception flow', 'error flow'],
  precondition: ['pre-condition', 'pre-conditions', 'precondition', 'preconditions'],
  postcondition: ['post-condition', 'post-conditions', 'postcondition', 'postconditions'],
};

const STEP_LABEL = /^\s*[-*•]?\s*(\d+(?:\.?[a-z])?(?:\.\d+)?)[.):]\s+(.*)$/i;
const TRAILING_REF = /\s*[([](?:see\s+)?(\d+[a-z]?(?:\.[a-z])?(?:\.\d+)?)[)\]]\s*$/i;
const STORY_OPENER = /^\s*[-*•]?\s*["“]?as an?\b/i;

export interface SequencedSentence {
  text: string;
  flowTag: string;
  stepLabel?: string;
}

function headingKind(line: string): string | null {
  const text = line.trim().replace(/[:.]+$/, '').toLowerCase();
  for (const [kind, names] of Object.entries(SECTION_SYNONYMS)) {
    if (names.includes(text)) return kind;
    if (names.some((n) => text.startsWith(n + ' '))) return kind;
  }
  return null;
}

export function detectFormat(lines: string[]): string {
  const content = lines.filter((l) => l.trim());
  if (!content.length) throw new Error('empty document');
  const stories = content.filter((l) => STORY_OPENER.test(l)).length;
  if (stories * 2 >= content.length) return 'stories';
  if (content.some((l) => ['main', 'alternate', 'extension', 'exception']
      .includes(headingKind(l) ?? ''))) return 'ucs';
  return 'general';
}

function canonLabel(raw: string): string {
  return raw.replace(/\./g, '').toLowerCase();
}

function anchorOf(label: string): number | null {
  const m = label.match(/^\d+/);
  return m ? parseInt(m[0], 10) : null;
}

function splitIntoSentences(text: string): string[] {
  return text.split(/(?<=[.!?])\s+/).map((s) => s.trim()).filter(Boolean);
}

export function sequence(lines: string[]): SequencedSentence[] {
  const sections: { kind: string; steps: [string | null, string][] }[] =
    [{ kind: 'meta', steps: [] }];
  for (const line of lines) {
    if (!line.trim()) continue;
    const kind = headingKind(line);
    if (kind) {
      sections.push({ kind, steps: [] });
      continue;
    }
    const m = line.match(STEP_LABEL);
    if (m) sections[sections.length - 1].steps.push([canonLabel(m[1]), m[2].trim()]);
    else sections[sections.length - 1].steps.push([null, line.trim()]);
  }

  const inserts = new Map<number, [string, string, string][]>();
  const dangling: [string, string, string | null][] = [];
  for (const sec of sections) {
    if (!['alternate', 'extension', 'exception'].includes(sec.kind)) continue;
    const tag = sec.kind === 'exception' ? 'exception' : 'alternate';
    for (const [label, text] of sec.steps) {
      const anchor = label !== null ? anchorOf(label) : null;
      if (label === null || anchor === null) {
        dangling.push([text, tag, label]);
      } else {
        const list = inserts.get(anchor) ?? [];
        list.push([text, tag, label]);
        inserts.set(anchor, list);
      }
    }
  }

  const out: SequencedSentence[] = [];
  const emit = (text: string, flowTag: string, stepLabel?: string | null) => {
    for (const sentence of splitIntoSentences(text)) {
      out.push({ text: sentence, flowTag, stepLabel: stepLabel ?? undefined });
    }
  };

  const main = sections.find((s) => s.kind === 'main') ?? { kind: 'main', steps: [] };
  const used = new Set<number>();
  for (const [label, text] of main.steps) {
    const ref = text.match(TRAILING_REF);
    const clean = ref ? text.replace(TRAILING_REF, '').trim() : text;
    emit(clean, 'main', label);
    const anchors: number[] = [];
    if (label !== null && anchorOf(label) !== null) anchors.push(anchorOf(label)!);
    if (ref) {
      const ra = anchorOf(canonLabel(ref[1]));
      if (ra !== null && !anchors.includes(ra)) anchors.push(ra);
    }
    for (const a of anchors) {
      for (const [t2, tag2, l2] of inserts.get(a) ?? []) emit(t2, tag2, l2);
      used.add(a);
    }
  }
  for (const [anchor, steps] of [...inserts.entries()].sort((a, b) => a[0] - b[0])) {
    if (used.has(anchor)) continue;
    for (const [t2, tag2, l2] of steps) emit(t2, tag2, l2);
  }
  for (const [t2, tag2, l2] of dangling) emit(t2, tag2, l2);
  for (const sec of sections) {
    if (['main', 'alternate', 'extension', 'exception'].includes(sec.kind)) continue;
    for (const [, text] of sec.steps) {
      if (!/[.!?]/.test(text)) continue;      // heading/meta line, not a sentence
      emit(text, 'none');
    }
  }
  return out;
}
