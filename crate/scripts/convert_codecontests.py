#!/usr/bin/env python3
"""Convert a CodeContests+ style export into the cssg JSONL corpus format.

Expected input: JSONL where each line is one problem with fields
  name                         problem identifier
  solutions.language[]         language codes (1 = Python 2, 2 = C++, 3 = Python 3, 4 = Java)
  solutions.solution[]         source texts
  incorrect_solutions.*        same shape, failed submissions

Records in other shapes should be adapted in `problems()`. Python 2 sources
are skipped because the frontend parses Python 3 only.
"""
import argparse
import json
import sys

LANGUAGES = {2: "cpp", 3: "python", 4: "java"}


def problems(fh):
    for line in fh:
        line = line.strip()
        if line:
            yield json.loads(line)


def rows(problem, per_verdict):
    pid = problem["name"]
    for verdict, key in (("correct", "solutions"), ("incorrect", "incorrect_solutions")):
        block = problem.get(key) or {}
        kept = {}
        for k, (code, src) in enumerate(zip(block.get("language", []), block.get("solution", []))):
            lang = LANGUAGES.get(code)
            if lang is None or not src.strip():
                continue
            if kept.get(lang, 0) >= per_verdict:
                continue
            kept[lang] = kept.get(lang, 0) + 1
            yield {
                "problem_id": pid,
                "language": lang,
                "verdict": verdict,
                "source": src,
                "submission_id": f"{pid}/{verdict}/{k}",
            }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("input", type=argparse.FileType("r", encoding="utf-8"))
    ap.add_argument("--per-verdict", type=int, default=10, help="cap per (problem, language, verdict)")
    args = ap.parse_args()
    n = 0
    for p in problems(args.input):
        for r in rows(p, args.per_verdict):
            sys.stdout.write(json.dumps(r, ensure_ascii=False) + "\n")
            n += 1
    print(f"{n} submissions", file=sys.stderr)


if __name__ == "__main__":
    main()
