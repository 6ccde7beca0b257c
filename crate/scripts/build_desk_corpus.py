#!/usr/bin/env python3
"""Pack the desk corpus directory into JSONL.

Layout: <root>/<problem>/<verdict>_<k>.<ext>, verdict in {correct, incorrect}.
Output lines are sorted by submission id so the file is reproducible.
"""
import argparse
import json
from pathlib import Path

EXTENSIONS = {".py": "python", ".java": "java", ".cpp": "cpp", ".cc": "cpp"}


def submissions(root):
    for path in sorted(root.glob("*/*")):
        lang = EXTENSIONS.get(path.suffix)
        if lang is None:
            continue
        verdict = path.stem.split("_")[0]
        if verdict not in ("correct", "incorrect"):
            raise SystemExit(f"unexpected file name: {path}")
        yield {
            "problem_id": path.parent.name,
            "language": lang,
            "verdict": verdict,
            "source": path.read_text(encoding="utf-8"),
            "submission_id": f"{path.parent.name}/{path.name}",
        }


def main():
    here = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "data"
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--root", type=Path, default=here / "desk")
    ap.add_argument("--out", type=Path, default=here / "desk.jsonl")
    args = ap.parse_args()
    rows = sorted(submissions(args.root), key=lambda r: r["submission_id"])
    with args.out.open("w", encoding="utf-8", newline="\n") as fh:
        for r in rows:
            fh.write(json.dumps(r, ensure_ascii=False) + "\n")
    print(f"{len(rows)} submissions -> {args.out}")


if __name__ == "__main__":
    main()
