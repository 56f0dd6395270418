/** Rule-based POS tagging and lemmatization tuned for requirements prose. */

import {
  ADVERBS, CONJUNCTIONS, DETERMINERS, GERUND_NOUNS, IRREGULAR_LEMMAS,
  MODALS, NOUN_PREFERENCE, POSS_PRONOUNS, PREPOSITIONS, PRONOUNS,
  PUNCT_TAGS, SUBORDINATORS, VERBS, WH_ADVERBS,
} from './lexicon';

export interface Token {
  index: number;     // 1-based
  surface: string;
  lemma: string;
  pos: string;
}

function isVerbBase(base: string): boolean {
  return VERBS.has(base);
}

/** Strip one inflection layer and return the base verb, or null. */
export function verbBase(word: string): string | null {
  const w = word.toLowerCase();
  if (IRREGULAR_LEMMAS[w] && isVerbBase(IRREGULAR_LEMMAS[w])) return IRREGULAR_LEMMAS[w];
  if (isVerbBase(w)) return w;
  const tries: string[] = [];
  if (w.endsWith('ies')) tries.push(w.slice(0, -3) + 'y');
  if (w.endsWith('es')) tries.push(w.slice(0, -2));
  if (w.endsWith('s')) tries.push(w.slice(0, -1));
  if (w.endsWith('ing')) {
    tries.push(w.slice(0, -3));
    tries.push(w.slice(0, -3) + 'e');
    if (w.length > 5 && w[w.length - 4] === w[w.length - 5]) tries.push(w.slice(0, -4));
  }
  if (w.endsWith('ed')) {
    tries.push(w.slice(0, -2));
    tries.push(w.slice(0, -1));        // -e verbs: "received" -> receive
    if (w.length > 4 && w[w.length - 3] === w[w.length - 4]) tries.push(w.slice(0, -3));
  }
  for (const t of tries) if (isVerbBase(t)) return t;
  return null;
}

export function nounLemma(word: string): string {
  const w = word.toLowerCase();
  if (w.endsWith('ies') && w.length > 4) return w.slice(0, -3) + 'y';
  if (/(sses|xes|ches|shes|zes|oes)$/.test(w)) return w.slice(0, -2);
  if (w.endsWith('s') && !w.endsWith('ss') && !w.endsWith('us') && w.length > 3) {
    return w.slice(0, -1);
  }
  return w;
}

const BE_FORMS = new Set(['is', 'are', 'am', 'was', 'were', 'be', 'been', 'being']);
const HAVE_FORMS = new Set(['has', 'have', 'had']);
const DO_FORMS = new Set(['does', 'do', 'did']);

export function tagSentence(words: string[]): Token[] {
  const tokens: Token[] = [];
  for (let i = 0; i < words.length; i++) {
    const surface = words[i];
    const w = surface.toLowerCase();
    const prev = tokens.length ? tokens[tokens.length - 1] : null;
    const next = i + 1 < words.length ? words[i + 1].toLowerCase() : '';
    let pos: string;
    let lemma = w;

    const inNounContext = prev !== null &&
      (prev.pos === 'DT' || prev.pos === 'PRP$' || prev.pos === 'JJ' ||
       prev.pos === 'NN' || prev.pos === 'NNS' || prev.pos === 'NNP' ||
       prev.pos === 'CD');

    if (PUNCT_TAGS[surface] !== undefined) {
      pos = PUNCT_TAGS[surface];
    } else if (/-(ed|ing|based|focused|driven)$/.test(w) && w.includes('-')) {
      pos = 'JJ';
    } else if (/^\d+(\.\d+)?$/.test(w)) {
      pos = 'CD';
    } else if (DETERMINERS.has(w)
               && (w !== 'that' || (next !== '' && !PRONOUNS.has(next)
                                    && !MODALS.has(next) && !DETERMINERS.has(next)))) {
      pos = 'DT';
    } else if (MODALS.has(w)) {
      pos = 'MD';
    } else if (w === 'to') {
      pos = 'TO';
    } else if (PRONOUNS.has(w)) {
      pos = 'PRP';
    } else if (POSS_PRONOUNS.has(w)) {
      pos = 'PRP$';
    } else if (CONJUNCTIONS.has(w)) {
      pos = 'CC';
    } else if (BE_FORMS.has(w)) {
      pos = w === 'be' ? 'VB' : (w === 'was' || w === 'were' ? 'VBD' : 'VBZ');
      if (w === 'are' || w === 'am') pos = 'VBP';
      lemma = 'be';
    } else if (HAVE_FORMS.has(w)) {
      pos = w === 'has' ? 'VBZ' : (w === 'had' ? 'VBD' : 'VBP');
      lemma = 'have';
    } else if (DO_FORMS.has(w)) {
      pos = w === 'does' ? 'VBZ' : (w === 'did' ? 'VBD' : 'VBP');
      lemma = 'do';
    } else if (WH_ADVERBS.has(w)) {
      pos = 'WRB';
    } else if (SUBORDINATORS.has(w)) {
      pos = 'IN';
    } else if (PREPOSITIONS.has(w)) {
      // verb particles: "log in", "logged in" at clause end
      const prevIsVerb = prev !== null && prev.pos.startsWith('VB');
      const nextStartsNP = next !== '' && !PUNCT_TAGS[next];
      pos = prevIsVerb && !nextStartsNP && (w === 'in' || w === 'out' || w === 'up'
            || w === 'off' || w === 'on') ? 'RP' : 'IN';
    } else if (ADVERBS.has(w)) {
      pos = 'RB';
    } else {
      [pos, lemma] = openClass(surface, w, inNounContext, prev, i === 0, words, i);
    }
    tokens.push({ index: i + 1, surface, lemma, pos });
  }
  return tokens;
}

function openClass(
  surface: string, w: string, inNounContext: boolean,
  prev: Token | null, first: boolean, words: string[], at: number,
): [string, string] {
  const base = verbBase(w);
  const capitalized = /^[A-Z]/.test(surface) && !first;
  const thirdSg = base !== null && base !== w &&
    (w === base + 's' || w === base + 'es' || w === base.replace(/y$/, 'ies'));

  if (w.endsWith('ing')) {
    if (GERUND_NOUNS.has(w)) return ['VBG', w];
    if (base) return ['VBG', base];
    return ['NN', w];
  }
  if (base && (w.endsWith('ed') || IRREGULAR_LEMMAS[w]) && base !== w && !thirdSg) {
    if (prev && (prev.lemma === 'be' || prev.lemma === 'have')) {
      // agentless copular participles read as predicate adjectives
      const ahead = words.slice(at + 1, at + 4).map((x) => x.toLowerCase());
      const agentive = ahead.some((x) =>
        x === 'by' || x === 'in' || x === 'out' || x === 'up' || x === 'from'
        || x === 'to' || x === 'as' || x === 'with');
      if (prev.lemma === 'be' && !agentive && KNOWN_ADJECTIVES.has(w)) {
        return ['JJ', w];
      }
      return ['VBN', base];
    }
    if (prev && (prev.pos === 'NN' || prev.pos === 'NNS' || prev.pos === 'NNP')) {
      // reduced relative when a finite verb already carries the clause
      const finiteBefore = words.slice(0, at).some((x) => {
        const lb = verbBase(x.toLowerCase());
        return lb !== null && lb !== x.toLowerCase() && !x.toLowerCase().endsWith('ed')
          && !x.toLowerCase().endsWith('ing');
      });
      return [finiteBefore ? 'VBN' : 'VBD', base];
    }
    if (prev && prev.pos === 'IN') return ['VBN', base];   // "as reported"
    return [prev === null || prev.pos === 'DT' ? 'VBN' : 'VBD', base];
  }
  // a third-person verb form directly after a subject-position nominal is
  // the clause verb regardless of noun preferences
  if (thirdSg && prev &&
      (prev.pos === 'NN' || prev.pos === 'NNS' || prev.pos === 'NNP' ||
       prev.pos === 'PRP')) {
    return ['VBZ', base!];
  }
  const nounish = inNounContext ||
    (NOUN_PREFERENCE.has(nounLemma(w)) && (inNounContext || prev === null));
  if (base && !nounish) {
    if (thirdSg) return ['VBZ', base];
    if (w === base) {
      if (prev && (prev.pos === 'MD' || prev.pos === 'TO')) return ['VB', base];
      if (first) return ['VB', base];         // imperative style
      if (prev && (prev.pos === 'PRP' || prev.pos === 'NNS' || prev.pos === 'VBP')) {
        return ['VBP', base];
      }
      if (prev && prev.pos === 'RB') return ['VB', base];   // "does not match"
      // no verb-licensing context: fall through to the nominal readings
    }
  }
  if (base && !inNounContext && thirdSg) {
    return ['VBZ', base];
  }
  if (capitalized) return ['NNP', nounLemma(w)];
  if (isAdjective(w)) return ['JJ', w];
  if (w.endsWith('s') && !w.endsWith('ss') && nounLemma(w) !== w) {
    return ['NNS', nounLemma(w)];
  }
  return ['NN', w];
}

const ADJ_SUFFIXES = ['ive', 'ous', 'ful', 'able', 'ible', 'ic'];
const KNOWN_ADJECTIVES = new Set([
  'new', 'online', 'different', 'tentative', 'current', 'first', 'last',
  'many', 'more', 'available', 'valid', 'invalid', 'wrong', 'incorrect',
  'correct', 'basic', 'unique', 'main', 'personal', 'initial', 'fake',
  'enough', 'other', 'such', 'same', 'own', 'several', 'video', 'active',
  'disconnected', 'matching', 'purchased', 'base',
]);

function isAdjective(w: string): boolean {
  if (KNOWN_ADJECTIVES.has(w)) return true;
  return ADJ_SUFFIXES.some((s) => w.endsWith(s)) && !VERBS.has(w);
}
