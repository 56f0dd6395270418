#!/usr/bin/env node
/** Convert plain requirement text into the native dependency format. */

import * as fs from 'fs';
import * as path from 'path';

import { emitNative, ParsedSentence } from './native';
import { parse } from './parse';
import { detectFormat, sequence, SequencedSentence } from './sequence';
import { tagSentence } from './tag';
import { splitSentences, tokenize } from './tokenize';

function usage(): void {
  process.stderr.write(
    'usage: adapter --in <text file> --out <deps file> [--format auto|general|ucs|stories]\n');
}

export function parseText(inPath: string, outPath: string, formatHint: string): number {
  let raw: string;
  try {
    raw = fs.readFileSync(inPath, 'utf-8');
  } catch (err) {
    process.stderr.write(`error: cannot read ${inPath}: ${err}\n`);
    return 2;
  }
  const lines = raw.split(/\r?\n/);
  let format = formatHint;
  if (format === 'auto') {
    try {
      format = detectFormat(lines);
    } catch {
      format = 'general';
    }
  }

  let units: SequencedSentence[];
  if (format === 'ucs') {
    units = sequence(lines);
  } else {
    // general/stories: drop requirement-id and list prefixes, skip headings
    const cleaned: string[] = [];
    for (const line of lines) {
      let text = line.trim();
      if (!text) continue;
      text = text.replace(/^(FR|NFR|REQ|UC)?\d+(\.\d+)*\s*[:.)]\s+/i, '');
      text = text.replace(/^[A-Z]{1,5}\d+\s*[:.]\s*/, '');
      if (!/[.!?]/.test(text)) continue;       // heading line
      cleaned.push(text);
    }
    units = splitSentences(cleaned.join('\n')).map((text) => ({ text, flowTag: 'none' }));
  }

  const sentences: ParsedSentence[] = [];
  for (const unit of units) {
    const words = tokenize(unit.text);
    if (!words.length) continue;
    const tokens = tagSentence(words);
    let deps;
    try {
      deps = parse(tokens);
    } catch (err) {
      process.stderr.write(`error: cannot parse ${JSON.stringify(unit.text)}: ${err}\n`);
      return 2;
    }
    sentences.push({
      seq: sentences.length,
      text: words.join(' '),
      flowTag: unit.flowTag,
      stepLabel: unit.stepLabel,
      tokens,
      deps,
    });
  }

  const sourceId = path.basename(inPath).replace(/\.[^.]+$/, '') || 'document';
  try {
    fs.writeFileSync(outPath, emitNative(sourceId, format, sentences), 'utf-8');
  } catch (err) {
    process.stderr.write(`error: cannot write ${outPath}: ${err}\n`);
    return 1;
  }
  process.stdout.write(`wrote ${outPath}: ${sentences.length} sentences (${format})\n`);
  return 0;
}

function main(argv: string[]): number {
  const args: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith('--') || i + 1 >= argv.length) {
      usage();
      return 2;
    }
    args[key.slice(2)] = argv[i + 1];
  }
  if (!args['in'] || !args['out']) {
    usage();
    return 2;
  }
  return parseText(args['in'], args['out'], args['format'] ?? 'auto');
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
