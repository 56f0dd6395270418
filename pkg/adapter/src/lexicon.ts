/** Closed-class words, the domain verb/noun lexicon and irregular lemmas. */

export const DETERMINERS = new Set([
  'the', 'a', 'an', 'each', 'all', 'some', 'any', 'every', 'multiple',
  'this', 'these', 'those', 'another', 'no',
]);

export const MODALS = new Set(['can', 'shall', 'will', 'must', 'may', 'would', 'should', 'could']);

export const PREPOSITIONS = new Set([
  'of', 'in', 'on', 'at', 'by', 'with', 'from', 'for', 'to', 'during',
  'about', 'as', 'into', 'onto', 'after', 'before', 'without', 'per',
]);

export const CONJUNCTIONS = new Set(['and', 'or', 'but']);

export const PRONOUNS = new Set(['i', 'he', 'she', 'it', 'they', 'we', 'you']);
export const POSS_PRONOUNS = new Set(['my', 'his', 'her', 'its', 'their', 'our', 'your']);

export const ADVERBS = new Set([
  'not', 'also', 'only', 'then', 'else', 'similarly', 'quickly', 'again',
  'already', 'too', 'never', 'always', 'no',
]);

export const WH_ADVERBS = new Set(['when', 'where', 'how', 'why']);

export const SUBORDINATORS = new Set(['if', 'that', 'while', 'because', 'so', 'such', 'whether']);

/** Base verb forms the tagger recognizes (inflections derive from these). */
export const VERBS = new Set([
  'display', 'allow', 'add', 'enable', 'select', 'enter', 'confirm',
  'calculate', 'update', 'provide', 'inform', 'contact', 'verify',
  'validate', 'match', 'start', 'assign', 'set', 'end', 'terminate',
  'create', 'log', 'change', 'search', 'filter', 'see', 'book', 'choose',
  'purchase', 'buy', 'receive', 'want', 'use', 'register', 'access',
  'click', 'sign', 'work', 'cancel', 'wish', 'issue', 'know', 'show',
  'keep', 'find', 'complete', 'pay', 'send', 'manage', 'borrow', 'exist',
  'open', 'say', 'input', 'fill', 'record', 'insert', 'submit', 'save',
  'output', 'retrieve', 'view', 'print', 'process', 'delete', 'modify',
  'edit', 'remove', 'accept', 'get', 'obtain', 'acquire', 'redeem',
  'continue', 'restart', 'go', 'repeat', 'move', 'jump', 'fail', 'make',
  'disconnect', 'report', 'need', 'like', 'be', 'have', 'do',
  'track', 'ship', 'shop', 'bill', 'call', 'order', 'take', 'give',
  'require', 'check', 'store', 'help', 'seem', 'become', 'read', 'write',
  'run', 'stop', 'finish', 'apply', 'expire', 'dispatch', 'operate',
  'handle', 'perform', 'hold', 'deliver', 'reserve',
]);

/**
 * Words that read as nouns even though a verb homograph exists, whenever
 * they sit inside a noun phrase.
 */
export const NOUN_PREFERENCE = new Set([
  'order', 'search', 'use', 'call', 'case', 'level', 'type', 'record',
  'name', 'charge', 'report', 'book', 'view', 'purchase', 'process',
  'store', 'need', 'set', 'issue', 'change', 'access', 'filter', 'match',
  'start', 'end', 'input', 'output', 'display', 'phone', 'seat', 'value',
  'number', 'date', 'time', 'option', 'button', 'reservation', 'payment',
  'shipment', 'dispatch',
]);

/** Gerund-preferring -ing forms (appear as nominal modifiers or heads). */
export const GERUND_NOUNS = new Set([
  'shipping', 'tracking', 'booking', 'shopping', 'billing', 'searching',
  'displaying', 'processing', 'surveillance',
]);

export const IRREGULAR_LEMMAS: Record<string, string> = {
  is: 'be', are: 'be', am: 'be', was: 'be', were: 'be', been: 'be', being: 'be',
  has: 'have', have: 'have', had: 'have', having: 'have',
  does: 'do', did: 'do', done: 'do',
  sent: 'send', kept: 'keep', found: 'find', known: 'know', said: 'say',
  paid: 'pay', left: 'leave', got: 'get', gotten: 'get', made: 'make',
  took: 'take', taken: 'take', gave: 'give', given: 'give', went: 'go',
  gone: 'go', held: 'hold', read: 'read', ran: 'run', run: 'run',
  wrote: 'write', written: 'write',
};

/** Penn tags for punctuation surfaces. */
export const PUNCT_TAGS: Record<string, string> = {
  '.': '.', ',': ',', '(': '-LRB-', ')': '-RRB-', ':': ':', ';': ':',
  '?': '.', '!': '.', '"': "''",
};
