"""Regenerate src/heightlab/data/corpus.jsonl from the curated curve list."""

from __future__ import annotations

import argparse
from pathlib import Path

from heightlab.corpus import write_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    default = Path(__file__).resolve().parent.parent / "src" / "heightlab" / "data" / "corpus.jsonl"
    ap.add_argument("--out", default=str(default))
    args = ap.parse_args()
    n = write_corpus(args.out)
    print(f"wrote {n} curve/prime pairs to {args.out}")


if __name__ == "__main__":
    main()
