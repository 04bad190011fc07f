#!/usr/bin/env python3
"""Converts a CSV export of the UHAT dataset into RawDocument JSONL.

Column names differ between exports, so every column is configurable. Labels
are matched case-insensitively against --human-values / --ai-values.

    python3 tools/uhat_to_jsonl.py UHAT.csv data/uhat/uhat.jsonl \
        --text-col text --label-col label
"""

import argparse
import csv
import json
import sys
from pathlib import Path

GENERATORS = {"gpt": "gpt-4o-mini", "gemini": "gemini", "kimi": "kimi"}


def generator_name(raw):
    raw = (raw or "").strip().lower()
    for key, name in GENERATORS.items():
        if key in raw:
            return name
    return "unknown"


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("input", type=Path)
    ap.add_argument("output", type=Path)
    ap.add_argument("--text-col", default="text")
    ap.add_argument("--label-col", default="label")
    ap.add_argument("--id-col")
    ap.add_argument("--generator-col")
    ap.add_argument("--source-col")
    ap.add_argument("--domain-col")
    ap.add_argument("--human-values", default="human,0", help="comma-separated label values meaning human")
    ap.add_argument("--ai-values", default="ai,1,machine,generated", help="comma-separated label values meaning ai")
    ap.add_argument("--encoding", default="utf-8-sig")
    args = ap.parse_args()

    human = {v.strip().lower() for v in args.human_values.split(",")}
    ai = {v.strip().lower() for v in args.ai_values.split(",")}
    csv.field_size_limit(sys.maxsize)

    counts = {"human": 0, "ai": 0}
    args.output.parent.mkdir(parents=True, exist_ok=True)
    with args.input.open(encoding=args.encoding, newline="") as f, args.output.open("w", encoding="utf-8") as out:
        reader = csv.DictReader(f)
        for missing in {args.text_col, args.label_col} - set(reader.fieldnames or []):
            sys.exit(f"column {missing!r} not found; available: {reader.fieldnames}")
        for n, row in enumerate(reader, start=1):
            raw_label = (row[args.label_col] or "").strip().lower()
            if raw_label in human:
                label = "human"
            elif raw_label in ai:
                label = "ai"
            else:
                sys.exit(f"row {n}: unrecognized label {row[args.label_col]!r}")
            text = row[args.text_col] or ""
            if not text.strip():
                print(f"row {n}: empty text, skipped", file=sys.stderr)
                continue
            doc = {
                "id": row[args.id_col] if args.id_col else f"uhat-{n:05d}",
                "text": text,
                "label": label,
                "generator": generator_name(row.get(args.generator_col)) if label == "ai" and args.generator_col else None,
                "source": row.get(args.source_col, "") if args.source_col else "",
                "domain": row.get(args.domain_col, "") if args.domain_col else "",
            }
            out.write(json.dumps(doc, ensure_ascii=False) + "\n")
            counts[label] += 1
    print(f"wrote {counts['human']} human and {counts['ai']} ai documents to {args.output}", file=sys.stderr)


if __name__ == "__main__":
    main()
