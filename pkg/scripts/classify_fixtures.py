#!/usr/bin/env python3
"""Classify every bundled fixture measure against a battery of directions
and print a verdict table (ergodic / weak mixing / strong mixing)."""
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from dirspec.classify import classify_direction, nonergodic_concise, nonwm_concise
from dirspec.errors import DirspecError
from dirspec.linalg import Subspace
from dirspec.measure import SymbolicMeasure, promote_field
from dirspec.scalar import FieldSpec, QQ

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"
MEASURES = ["product_bernoulli.json", "bw8.json", "chair.json",
            "lonely_atom.json", "ergodic_not_wm.json"]

F2 = FieldSpec((2,))
BATTERY = [
    ("e1", Subspace.from_vectors(QQ, 2, [[1, 0]])),
    ("e2", Subspace.from_vectors(QQ, 2, [[0, 1]])),
    ("diag", Subspace.from_vectors(QQ, 2, [[1, 1]])),
    ("(1,2)", Subspace.from_vectors(QQ, 2, [[1, 2]])),
    ("(3,-1)", Subspace.from_vectors(QQ, 2, [[3, -1]])),
    ("slope sqrt2-1",
     Subspace.from_vectors(F2, 2, [[F2.one(), F2.sqrt_root(2) - 1]])),
]


def flag(b: bool) -> str:
    return "yes" if b else "no"


def main() -> None:
    for name in MEASURES:
        doc = json.loads((FIXTURES / name).read_text())
        m = SymbolicMeasure.decode(doc)
        print(f"\n=== {name} (space={m.space}, {len(m.components)} components)")
        print(f"{'direction':<16} {'ergodic':<8} {'weak mix':<9} strong mix")
        for label, sub in BATTERY:
            try:
                v = classify_direction(promote_field(m, sub.field), sub)
            except DirspecError as exc:
                print(f"{label:<16} ({type(exc).__name__}: {exc})")
                continue
            print(f"{label:<16} {flag(v.ergodic):<8} {flag(v.weak_mixing):<9} "
                  f"{flag(v.strong_mixing)}")
        ne = nonergodic_concise(m)
        nw = nonwm_concise(m)
        print(f"non-ergodic concise set: {len(ne.subspaces)} subspaces, "
              f"{len(ne.parametric_families)} parametric families, "
              f"{len(ne.group_families)} group families")
        print(f"non-weak-mixing concise set: {len(nw.subspaces)} subspaces")


if __name__ == "__main__":
    main()
