/** Deterministic dependency builder for requirements-style sentences. */

import { Token } from './tag';

export interface Dep {
  label: string;
  governor: number;   // 0 only for root
  dependent: number;
}

const NOMINAL = new Set(['NN', 'NNS', 'NNP', 'NNPS', 'PRP', 'CD']);
const NOUN_ONLY = new Set(['NN', 'NNS', 'NNP', 'NNPS']);

// prepositions that modify an adjacent noun rather than the clause verb
const NOUN_ATTACHING = new Set(['of', 'in', 'from', 'on', 'at']);

// verbs whose of-phrase is an argument of the verb itself
const INFORM_OF_VERBS = new Set(['inform', 'notify', 'advise']);

function isVerbTag(pos: string): boolean {
  return pos.startsWith('VB');
}

interface Chunk {
  start: number;      // 0-based token offsets
  end: number;        // inclusive
  head: number;       // 1-based token index of the head
}

export function parse(tokens: Token[]): Dep[] {
  const deps: Dep[] = [];
  const headOf = new Map<number, number>();   // dependent -> governor (bookkeeping)

  const add = (label: string, governor: number, dependent: number) => {
    if (dependent === governor) return;
    if (headOf.has(dependent)) return;
    headOf.set(dependent, governor);
    deps.push({ label, governor, dependent });
  };

  const remove = (dep: Dep) => {
    const at = deps.indexOf(dep);
    if (at >= 0) deps.splice(at, 1);
    if (headOf.get(dep.dependent) === dep.governor) headOf.delete(dep.dependent);
  };

  const n = tokens.length;
  const tok = (i: number) => tokens[i - 1];

  // ---- verb groups: auxiliaries attach to the nearest following verb or
  // predicate adjective (copular sentences root on the predicate)
  const mainVerbs: number[] = [];
  const auxFor = new Map<number, number[]>();
  const copFor = new Map<number, number>();
  const passive = new Set<number>();

  for (let i = 1; i <= n; i++) {
    const t = tok(i);
    if (!(isVerbTag(t.pos) || t.pos === 'MD')) continue;
    if (t.pos === 'VBG') {
      // a gerund heads a clause as a verbal complement or a reduced
      // relative with its own complement, never inside a noun phrase
      const prev = i > 1 ? tok(i - 1) : null;
      const nextNominal = i < n &&
        (NOMINAL.has(tok(i + 1).pos) || tok(i + 1).pos === 'DT');
      const clausal = prev !== null &&
        (isVerbTag(prev.pos) || prev.pos === 'TO' ||
         (prev.pos === 'IN' && i < n && !NOMINAL.has(tok(i + 1)?.pos ?? '')) ||
         (NOUN_ONLY.has(prev.pos) && nextNominal));
      if (!clausal) continue;
    }
    if (t.pos === 'VBN' && i > 1 && NOUN_ONLY.has(tok(i - 1).pos)) {
      continue;   // reduced relative ("information received from ...")
    }
    // find what this verb-ish token serves
    if (t.pos === 'MD' || ((t.lemma === 'be' || t.lemma === 'have' || t.lemma === 'do')
        && i < n && hasVerbAhead(tokens, i))) {
      const target = verbAhead(tokens, i);
      if (target) {
        if (t.lemma === 'be' && tok(target).pos === 'JJ') {
          copFor.set(target, i);      // copula, not auxiliary
        } else {
          const list = auxFor.get(target) ?? [];
          list.push(i);
          auxFor.set(target, list);
          if (t.lemma === 'be' && tok(target).pos === 'VBN') passive.add(target);
        }
        continue;
      }
    }
    if (t.lemma === 'be' && i < n) {
      const pred = predicateAhead(tokens, i);
      if (pred) {
        copFor.set(pred, i);
        continue;
      }
    }
    mainVerbs.push(i);
  }
  // copular predicates count as clause heads
  const predicates = [...copFor.keys()];
  const clauseHeads = [...new Set([...mainVerbs, ...predicates])].sort((a, b) => a - b);

  // ---- root: first clause head that is not a marked subordinate clause
  let root = 0;
  for (const v of clauseHeads) {
    if (root === 0 && !subordinated(tokens, v)) root = v;
  }
  if (root === 0 && clauseHeads.length) root = clauseHeads[0];
  if (root === 0) {
    // verbless fragment: root on the last nominal
    for (let i = n; i >= 1; i--) {
      if (NOUN_ONLY.has(tok(i).pos)) { root = i; break; }
    }
    if (root === 0) root = 1;
  }
  deps.push({ label: 'root', governor: 0, dependent: root });
  headOf.set(root, 0);

  // ---- noun-phrase chunks with internal structure
  const chunks = chunkNouns(tokens);
  const chunkOfToken = new Map<number, Chunk>();
  for (const c of chunks) {
    for (let i = c.start; i <= c.end; i++) chunkOfToken.set(i + 1, c);
    for (let i = c.start; i <= c.end; i++) {
      const idx = i + 1;
      const t = tok(idx);
      if (idx === c.head) continue;
      if (t.pos === 'DT') add('det', c.head, idx);
      else if (t.pos === 'PRP$') add('nmod:poss', c.head, idx);
      else if (t.pos === 'JJ') add('amod', c.head, idx);
      else if (t.pos === 'CD' && idx > c.head) add('nummod', c.head, idx);
      else if (t.pos === 'CD') add('nummod', c.head, idx);
      else if (t.pos === 'VBG' || NOUN_ONLY.has(t.pos)) add('compound', c.head, idx);
    }
  }

  // ---- clause-level edges
  linkAuxiliaries(tokens, deps, add, auxFor, copFor, passive);
  linkAppositions(tokens, deps, add, chunks);
  linkMarkersAndClauses(tokens, deps, add, clauseHeads, root);
  linkSubjects(tokens, deps, add, chunks, clauseHeads, passive);
  linkObjectsAndPPs(tokens, deps, add, chunks, clauseHeads, root, passive);
  linkControlledSubjects(deps);
  linkGoalAdjectives(tokens, deps, add, clauseHeads);
  linkCoordination(tokens, deps, add, remove, chunks, clauseHeads);
  linkPunct(tokens, deps, add, chunks, root);

  // strays hang off the root with the parser's fallback label
  for (let i = 1; i <= n; i++) {
    if (!headOf.has(i)) add('dep', root, i);
  }

  // root first, then dependent order (parser listing convention)
  const rest = deps.filter((d) => d.label !== 'root');
  rest.sort((a, b) => a.dependent - b.dependent);
  return [deps.find((d) => d.label === 'root')!, ...rest];
}

function hasVerbAhead(tokens: Token[], from: number): boolean {
  return verbAhead(tokens, from) !== 0;
}

/** Nearest verb or predicate adjective after an auxiliary. */
function verbAhead(tokens: Token[], from: number): number {
  for (let i = from + 1; i <= Math.min(tokens.length, from + 4); i++) {
    const t = tokens[i - 1];
    if (t.pos === 'RB' || t.pos === 'MD' || t.pos === 'TO') continue;
    if ((t.lemma === 'be' || t.lemma === 'have') && i < tokens.length) {
      continue;            // stacked auxiliaries ("will be displayed")
    }
    if (isVerbTag(t.pos)) return i;
    if (t.pos === 'JJ') return i;     // predicate: "shall be able"
    return 0;
  }
  return 0;
}

/** Adjective (or participle-adjective) predicate after a copula. */
function predicateAhead(tokens: Token[], from: number): number {
  for (let i = from + 1; i <= Math.min(tokens.length, from + 3); i++) {
    const t = tokens[i - 1];
    if (t.pos === 'RB' || t.pos === 'DT') continue;
    if (t.pos === 'JJ') return i;
    return 0;
  }
  return 0;
}

function subordinated(tokens: Token[], verb: number): boolean {
  // a marker or relative position before the verb within its clause
  for (let i = verb - 1; i >= Math.max(1, verb - 6); i--) {
    const t = tokens[i - 1];
    if (t.pos === '.' || t.pos === ',') return false;
    if (t.pos === 'IN' && (t.lemma === 'if' || t.lemma === 'while' ||
        t.lemma === 'when' || t.lemma === 'because')) return true;
    if (t.pos === 'WRB') return true;
    if (t.pos === 'TO') return true;
  }
  return false;
}

function chunkNouns(tokens: Token[]): Chunk[] {
  const chunks: Chunk[] = [];
  let i = 0;
  const n = tokens.length;
  while (i < n) {
    const t = tokens[i];
    const prevPos = i > 0 ? tokens[i - 1].pos : '';
    const startable = t.pos === 'DT' || t.pos === 'PRP$' || t.pos === 'JJ' ||
      NOUN_ONLY.has(t.pos) || t.pos === 'PRP' ||
      (t.pos === 'VBG' && i + 1 < n && NOUN_ONLY.has(tokens[i + 1].pos)
       && !prevPos.startsWith('VB'));
    if (!startable) { i++; continue; }
    if (t.pos === 'PRP') {
      chunks.push({ start: i, end: i, head: i + 1 });
      i++; continue;
    }
    let j = i;
    let lastNoun = -1;
    while (j < n) {
      const u = tokens[j];
      if (j > i && u.pos === 'JJ' && tokens[j - 1].pos === 'NNP') break;
      const dtOk = u.pos !== 'DT' || j === i || tokens[j - 1].pos === 'DT';
      const continues = dtOk && (u.pos === 'DT' || u.pos === 'PRP$' || u.pos === 'JJ' ||
        NOUN_ONLY.has(u.pos) || u.pos === 'CD' ||
        (u.pos === 'VBG' && j + 1 < n && NOUN_ONLY.has(tokens[j + 1].pos)));
      if (!continues) break;
      if (NOUN_ONLY.has(u.pos)) lastNoun = j;
      if (u.pos === 'CD' && lastNoun >= 0) { j++; break; }   // "step 1"
      j++;
    }
    if (lastNoun < 0) { i = j > i ? j : i + 1; continue; }
    chunks.push({ start: i, end: j - 1, head: lastNoun + 1 });
    i = j;
  }
  return chunks;
}

type Add = (label: string, governor: number, dependent: number) => void;

function linkAppositions(tokens: Token[], deps: Dep[], add: Add, chunks: Chunk[]) {
  for (let i = 1; i <= tokens.length; i++) {
    if (tokens[i - 1].pos !== '-LRB-') continue;
    const outer = chunks.filter((c) => c.head < i).pop();
    const inner = chunks.find((c) => c.start + 1 > i);
    if (outer && inner) add('appos', outer.head, inner.head);
  }
}

function linkAuxiliaries(
  tokens: Token[], deps: Dep[], add: Add,
  auxFor: Map<number, number[]>, copFor: Map<number, number>,
  passive: Set<number>,
) {
  for (const [verb, auxes] of auxFor) {
    for (const a of auxes) {
      const t = tokens[a - 1];
      if (t.lemma === 'be' && tokens[verb - 1].pos === 'VBN') add('auxpass', verb, a);
      else add('aux', verb, a);
    }
  }
  for (const [pred, cop] of copFor) add('cop', pred, cop);
  for (let i = 1; i <= tokens.length; i++) {
    const t = tokens[i - 1];
    if (t.pos !== 'RB') continue;
    const site = nearestClauseHead(tokens, i);
    if (site) add(t.lemma === 'not' ? 'neg' : 'advmod', site, i);
  }
}

function nearestClauseHead(tokens: Token[], i: number): number {
  if (i > 1 && isVerbTag(tokens[i - 2].pos)) return i - 1;   // "has also"
  for (let j = i + 1; j <= tokens.length; j++) {
    if (isVerbTag(tokens[j - 1].pos)) return j;
  }
  for (let j = i - 1; j >= 1; j--) {
    if (isVerbTag(tokens[j - 1].pos) || tokens[j - 1].pos === 'JJ') return j;
  }
  return 0;
}

function linkMarkersAndClauses(
  tokens: Token[], deps: Dep[], add: Add, clauseHeads: number[], root: number,
) {
  const n = tokens.length;
  for (let i = 1; i <= n; i++) {
    const t = tokens[i - 1];
    if (t.pos === 'TO' && i < n && isVerbTag(tokens[i].pos)) {
      const v = clauseHeads.find((c) => c > i && c <= i + 3 && isVerbTag(tokens[c - 1].pos));
      if (v) {
        add('mark', v, i);
        const gov = [...clauseHeads].reverse().find((c) => c < i);
        if (gov) add('xcomp', gov, v);
        continue;
      }
      // bare "to VB" not registered as clause head (infinitival complement)
      if (i < n && tokens[i].pos === 'VB') {
        add('mark', i + 1, i);
        const gov = [...clauseHeads].reverse().find((c) => c < i);
        if (gov) add('xcomp', gov, i + 1);
      }
    }
    if (t.pos === 'IN' && t.lemma === 'if') {
      const v = clauseHeads.find((c) => c > i);
      if (v) {
        add('mark', v, i);
        const main = clauseHeads.find((c) => c > v) ?? root;
        add('advcl:if', main, v);
      }
    }
    if (t.pos === 'IN' && (t.lemma === 'so' || t.lemma === 'that' || t.lemma === 'while')
        && i < n) {
      const v = clauseHeads.find((c) => c > i && c - i <= 6);
      if (v && v !== root) {
        add('mark', v, i);
        // a comma before the subordinator lifts the clause to the root
        const afterComma = i > 1 && tokens[i - 2].pos === ',';
        const gov = afterComma ? root
          : ([...clauseHeads].reverse().find((c) => c < i) ?? root);
        add('advcl', gov, v);
      }
    }
    // "as reported ..." participial adjunct
    if (t.pos === 'IN' && t.lemma === 'as' && i < n && tokens[i].pos === 'VBN') {
      add('mark', i + 1, i);
      add('advcl', root, i + 1);
    }
    // "starts displaying": gerund complement of the preceding verb
    if (t.pos === 'VBG' && i > 1 && isVerbTag(tokens[i - 2].pos)
        && tokens[i - 2].pos !== 'VBG') {
      add('xcomp', i - 1, i);
    }
    // verb particles
    if (t.pos === 'RP' && i > 1 && isVerbTag(tokens[i - 2].pos)) {
      add('compound:prt', i - 1, i);
    }
    // relative clauses: "the type I want"
    if (t.pos === 'PRP' && i > 1 && NOUN_ONLY.has(tokens[i - 2].pos)
        && i < n && isVerbTag(tokens[i].pos)) {
      add('acl:relcl', i - 1, i + 1);
    }
    // reduced relatives: participle directly after a noun
    if (t.pos === 'VBN' && i > 1 && NOUN_ONLY.has(tokens[i - 2].pos)
        && !deps.some((d) => d.dependent === i)) {
      add('acl', i - 1, i);
    }
    // "a message saying X": participial modifier with its own complement
    if (t.pos === 'VBG' && i > 1 && NOUN_ONLY.has(tokens[i - 2].pos)
        && i < n && (NOMINAL.has(tokens[i].pos) || tokens[i].pos === 'DT')) {
      add('acl', i - 1, i);
    }
    // "of/for searching X" after a noun (needs a complement of its own)
    if (t.pos === 'VBG' && i > 2 && tokens[i - 2].pos === 'IN'
        && NOUN_ONLY.has(tokens[i - 3].pos)
        && i < n && (tokens[i].pos === 'DT' || tokens[i].pos === 'IN'
                     || NOMINAL.has(tokens[i].pos) || tokens[i].pos === 'JJ')) {
      add('mark', i, i - 1);
      add('acl', i - 2, i);
    }
  }
}

function linkSubjects(
  tokens: Token[], deps: Dep[], add: Add, chunks: Chunk[],
  clauseHeads: number[], passive: Set<number>,
) {
  for (const v of clauseHeads) {
    // nearest chunk head strictly before the verb group (skip aux/adverbs;
    // an infinitival marker means this clause has no local subject)
    let i = v - 1;
    let infinitival = false;
    while (i >= 1) {
      const t = tokens[i - 1];
      if (t.pos === 'TO') {
        infinitival = true;
        break;
      }
      if (t.pos === 'MD' || t.pos === 'RB' ||
          ((t.lemma === 'be' || t.lemma === 'have' || t.lemma === 'do') && isVerbTag(t.pos))) {
        i--;
        continue;
      }
      break;
    }
    if (infinitival || i < 1) continue;
    const chunk = chunks.find((c) => c.start <= i - 1 && i - 1 <= c.end);
    if (!chunk) continue;
    const label = passive.has(v) ? 'nsubjpass' : 'nsubj';
    if (!deps.some((d) => d.dependent === chunk.head &&
        (d.label === 'nsubj' || d.label === 'nsubjpass') && d.governor === v)) {
      add(label, v, chunk.head);
    }
  }
}

/** xcomp verbs inherit the controller's object, else its subject. */
function linkControlledSubjects(deps: Dep[]) {
  for (const d of [...deps]) {
    if (d.label !== 'xcomp') continue;
    const gov = d.governor;
    const controlled = d.dependent;
    const obj = deps.find((e) => e.label === 'dobj' && e.governor === gov);
    const subj = deps.find((e) => (e.label === 'nsubj' || e.label === 'nsubjpass'
      || e.label === 'nsubj:xsubj') && e.governor === gov);
    const source = obj ?? subj;
    if (source && !deps.some((e) => e.governor === controlled
        && (e.label === 'nsubj' || e.label === 'nsubj:xsubj'))) {
      deps.push({ label: 'nsubj:xsubj', governor: controlled, dependent: source.dependent });
    }
  }
}

function linkObjectsAndPPs(
  tokens: Token[], deps: Dep[], add: Add, chunks: Chunk[],
  clauseHeads: number[], root: number, passive: Set<number>,
) {
  const n = tokens.length;
  const verbs = [...clauseHeads].sort((a, b) => a - b);

  for (const c of chunks) {
    const first = c.start + 1;
    if (deps.some((d) => d.dependent === c.head)) continue;
    const before = first - 1;
    if (before >= 1 && tokens[before - 1].pos === 'IN') {
      // prepositional phrase; complex prepositions stack their case marks
      const prep = before;
      const plemma = tokens[prep - 1].lemma;
      add('case', c.head, prep);
      for (let k = prep - 1; k >= 1; k--) {
        const u = tokens[k - 1];
        if (u.pos === 'IN' || (u.pos === 'VBN' && u.lemma === 'base')) {
          add('case', c.head, k);
        } else {
          break;
        }
      }
      let site = 0;
      const prevTok = prep - 1;
      const verbBefore = [...verbs].reverse().find((v) => v < prep);
      const informFrame = plemma === 'of' && verbBefore !== undefined &&
        INFORM_OF_VERBS.has(tokens[verbBefore - 1].lemma);
      if (NOUN_ATTACHING.has(plemma) && prevTok >= 1
          && NOUN_ONLY.has(tokens[prevTok - 1].pos) && !informFrame) {
        site = prevTok;
      } else {
        site = findNearestVerbish(tokens, prep) || root;
      }
      add(`nmod:${plemma === 'such' ? 'such_as' : plemma}`, site, c.head);
      continue;
    }
    if (before >= 1 && tokens[before - 1].pos === 'TO') {
      add('case', c.head, before);
      const site = [...verbs].reverse().find((v) => v < before) ?? root;
      add('nmod:to', site, c.head);
      continue;
    }
    // plain object: nearest preceding verb-ish token
    const site = findNearestVerbish(tokens, first);
    if (site && site !== c.head) {
      add('dobj', site, c.head);
    }
  }
}

function findNearestVerbish(tokens: Token[], before: number): number {
  for (let j = before - 1; j >= 1; j--) {
    const t = tokens[j - 1];
    if (t.pos === 'VBG' && j < tokens.length && NOMINAL.has(tokens[j].pos)
        && !(j > 1 && isVerbTag(tokens[j - 2].pos))) {
      continue;    // nominal modifier ("the shopping cart"), not a complement
    }
    if (isVerbTag(t.pos)) return j;
    if (t.pos === ',' || t.pos === '.') continue;
  }
  return 0;
}

function linkCoordination(
  tokens: Token[], deps: Dep[], add: Add, remove: (d: Dep) => void,
  chunks: Chunk[], clauseHeads: number[],
) {
  const n = tokens.length;
  // noun coordination: chunk , chunk and chunk
  for (let ci = 0; ci < chunks.length; ci++) {
    const first = chunks[ci];
    let last = first;
    let cj = ci + 1;
    const members: Chunk[] = [];
    while (cj < chunks.length) {
      const gapStart = last.end + 2;    // 1-based token after the chunk
      const next = chunks[cj];
      const gap = tokens.slice(gapStart - 1, next.start).map((t) => t);
      const joiner = gap.length >= 1 && gap.length <= 2 &&
        gap.every((g) => g.pos === ',' || g.pos === 'CC');
      if (!joiner) break;
      members.push(next);
      for (const g of gap) {
        if (g.pos === 'CC') add('cc', first.head, g.index);
      }
      last = next;
      cj++;
    }
    if (!members.length) continue;
    const governor = deps.find((d) => d.dependent === first.head
      && (d.label === 'dobj' || d.label.startsWith('nmod')));
    for (const m of members) {
      // the conjunction claims the member; its provisional object edge
      // becomes the enhanced-style propagated copy
      const prior = deps.find((d) => d.dependent === m.head
        && (d.label === 'dobj' || d.label.startsWith('nmod')));
      if (prior) remove(prior);
      add('conj:and', first.head, m.head);
      if (governor && governor.label === 'dobj') {
        deps.push({ label: 'dobj', governor: governor.governor, dependent: m.head });
      }
    }
    ci = cj - 1;
  }
  // verb coordination: "accesses ... and enters ..."
  const verbs = [...clauseHeads].sort((a, b) => a - b);
  for (let i = 0; i + 1 < verbs.length; i++) {
    const a = verbs[i];
    for (let j = i + 1; j < verbs.length; j++) {
      const b = verbs[j];
      const between = tokens.slice(a, b - 1);
      const cc = between.find((t) => t.pos === 'CC');
      if (cc && !deps.some((d) => d.dependent === b)) {
        add('cc', a, cc.index);
        add('conj:and', a, b);
        const subj = deps.find((d) => d.governor === a
          && (d.label === 'nsubj' || d.label === 'nsubjpass'));
        if (subj) deps.push({ label: 'nsubj', governor: b, dependent: subj.dependent });
      }
    }
  }
}

function linkGoalAdjectives(tokens: Token[], deps: Dep[], add: Add, clauseHeads: number[]) {
  // "sets the status to active": TO followed by a bare adjective
  for (let i = 1; i < tokens.length; i++) {
    if (tokens[i - 1].pos !== 'TO') continue;
    if (tokens[i].pos !== 'JJ') continue;
    if (deps.some((d) => d.dependent === i + 1)) continue;
    add('case', i + 1, i);
    const site = [...clauseHeads].reverse().find((v) => v < i);
    if (site) add('nmod:to', site, i + 1);
  }
}

function linkPunct(tokens: Token[], deps: Dep[], add: Add, chunks: Chunk[], root: number) {
  const n = tokens.length;
  for (let i = 1; i <= n; i++) {
    const t = tokens[i - 1];
    if (!(t.pos === '.' || t.pos === ',' || t.pos === '-LRB-' || t.pos === '-RRB-'
          || t.pos === ':' || t.pos === "''")) continue;
    if (t.pos === '-LRB-' || t.pos === '-RRB-') {
      let anchor = i;
      if (t.pos === '-RRB-') {
        for (let j = i - 1; j >= 1; j--) {
          if (tokens[j - 1].pos === '-LRB-') { anchor = j; break; }
        }
      }
      const before = chunks.filter((c) => c.head < anchor).pop();
      add('punct', before ? before.head : root, i);
      continue;
    }
    if (t.pos === ',') {
      // a comma inside a coordination hangs off the first conjunct
      const conj = deps.find((d) => d.label === 'conj:and' && d.dependent > i
        && d.governor < i);
      add('punct', conj ? conj.governor : root, i);
      continue;
    }
    add('punct', root, i);
  }
}
