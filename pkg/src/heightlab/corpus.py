"""The bundled curve corpus: curves, their bad primes, and reduction data from point counts."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .curves.tate import (ADDITIVE, GOOD, MULT_NONSPLIT, MULT_SPLIT, classify_by_count,
                          count_nonsingular_points, minimal_model_at)
from .curves.torsion import twist
from .curves.weierstrass import WeierstrassCurve
from .numeric.arith import ord_p

CORPUS_FILE = "corpus.jsonl"

# (label or None, a-invariants, tags)
CURATED = [
    ("11a1", "0,-1,1,-10,-20", ["rank0"]),
    ("14a1", "1,0,1,4,-6", ["rank0"]),
    ("15a1", "1,1,1,-10,-10", ["rank0"]),
    ("37a1", "0,0,1,-1,0", ["rank_positive"]),
    ("389a1", "0,1,1,-2,0", ["rank_positive", "split_witness"]),
    ("5077a1", "0,0,1,-7,6", ["rank_positive"]),
    (None, "0,1,1,-7,5", ["rank_positive", "split_witness"]),
    (None, "0,-1,1,-2,2", ["rank_positive"]),
    (None, "1,-1,0,-1,1", ["rank_positive"]),
    (None, "1,0,0,-1,0", ["rank_positive"]),
    (None, "0,0,1,2,0", ["rank_positive"]),
    (None, "1,0,1,-2,0", ["rank_positive"]),
    (None, "0,0,1,1,0", ["rank_positive"]),
    (None, "1,1,1,-2,0", ["rank_positive"]),
    (None, "1,1,1,-1,0", ["rank_positive"]),
    (None, "1,1,0,-2,0", ["rank_positive"]),
    (None, "1,0,1,-7,-4", ["rank_positive"]),
    (None, "0,0,0,-2,0", ["rank_positive", "short"]),
    (None, "0,0,0,-16,16", ["rank_positive", "short"]),
    (None, "0,0,0,0,-2", ["rank_positive", "short"]),
    (None, "0,0,0,0,17", ["rank_positive", "short"]),
    (None, "0,0,0,0,1", ["rank0", "short"]),
    (None, "0,0,0,-1,0", ["rank0", "short"]),
    (None, "0,0,0,0,2", ["short"]),
    (None, "0,0,0,1,0", ["rank0", "short"]),
    (None, "0,0,0,0,7", ["short"]),
    (None, "0,0,0,-43,166", ["rank0", "short"]),
    (None, "0,0,0,9,0", ["short"]),
    (None, "0,0,0,25,0", ["short"]),
    (None, "0,0,0,49,0", ["short"]),
    (None, "0,0,0,25,5", ["short"]),
    (None, "0,0,0,1,5", ["short"]),
    (None, "0,0,0,2,7", ["short"]),
]

# quadratic twists of 11a1: additive potentially multiplicative reduction at 11, and more
TWISTS_OF_11A1 = [-1, 3, 11, -11, 22]


def _curated_curves() -> list[tuple[str | None, WeierstrassCurve, list[str]]]:
    out = [(lab, WeierstrassCurve.parse(a, label=lab), tags) for lab, a, tags in CURATED]
    base = WeierstrassCurve.parse("0,-1,1,-10,-20").short_integral_model()[0]
    for g in TWISTS_OF_11A1:
        out.append((None, twist(base, Fraction(g)), ["twist_of_11a1", "short"]))
    return out


def expected_reduction(E: WeierstrassCurve, p: int) -> dict:
    """Reduction data at p from nonsingular point counts on a p-minimal model."""
    loc = minimal_model_at(E, p)
    Em = loc.minimal_curve
    t = classify_by_count(Em, p)
    rec = {"p": p, "type": t, "ord_min_disc": loc.ord_min_disc,
           "potential_type": "PotMult" if ord_p(E.j, p) < 0 else "PotGood"}
    if t != GOOD:
        rec["ns_count"] = count_nonsingular_points(Em, p)
    if t in (MULT_SPLIT, MULT_NONSPLIT):
        rec["N"] = -ord_p(E.j, p)
    return rec


def build_records() -> list[dict]:
    recs = []
    for lab, E, tags in _curated_curves():
        rec = {"label": lab, "a": [str(a) for a in E.ainvs], "tags": tags,
               "source": "point-count oracle at build time",
               "expected": [expected_reduction(E, p) for p in E.bad_primes()]}
        recs.append(rec)
    return recs


def write_corpus(path) -> int:
    recs = build_records()
    with open(path, "w") as fh:
        for r in recs:
            fh.write(json.dumps(r) + "\n")
    return sum(len(r["expected"]) for r in recs)


def corpus_path() -> Path:
    return Path(str(resources.files("heightlab") / "data" / CORPUS_FILE))


def load_corpus(path=None) -> list[dict]:
    path = Path(path) if path is not None else corpus_path()
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def corpus_curves(tag: str | None = None, path=None) -> list[WeierstrassCurve]:
    out = []
    for rec in load_corpus(path):
        if tag is None or tag in rec.get("tags", []):
            out.append(WeierstrassCurve.from_record(rec))
    return out


def corpus_pairs(path=None) -> list[tuple[WeierstrassCurve, dict]]:
    """All (curve, expected reduction record) pairs."""
    out = []
    for rec in load_corpus(path):
        E = WeierstrassCurve.from_record(rec)
        for exp in rec["expected"]:
            out.append((E, exp))
    return out


__all__ = ["ADDITIVE", "build_records", "write_corpus", "load_corpus", "corpus_curves",
           "corpus_pairs", "expected_reduction", "corpus_path"]
