#!/usr/bin/env python3
"""Print Fourier decay tables (radius, sup |transform|) contrasting wall
measures with full-dimensional ones along several directions."""
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from dirspec.fourier import EstimatorConfig, rajchman_probe
from dirspec.linalg import AffineCarrier, Subspace
from dirspec.measure import EUCLID, BoxLebesgue, SymbolicMeasure
from dirspec.scalar import QQ

RADII = [5.3, 10.7, 49.3, 101.7, 499.1, 997.3]
CFG = EstimatorConfig(seed=7)


def box_measure(sub):
    return SymbolicMeasure.make(
        EUCLID, 2, QQ, [BoxLebesgue(AffineCarrier.make(sub), sub.basis)])


def main() -> None:
    e1 = Subspace.from_vectors(QQ, 2, [[1, 0]])
    e2 = Subspace.from_vectors(QQ, 2, [[0, 1]])
    generic = Subspace.from_vectors(QQ, 2, [[1, Fraction(2, 7)]])
    full = Subspace.full(QQ, 2)
    cases = [
        ("vertical wall, probed along its carrier (decays)", box_measure(e2), e2),
        ("vertical wall, probed perpendicular (no decay)", box_measure(e2), e1),
        ("full box, generic ray (decays fast)", box_measure(full), generic),
    ]
    for label, m, direction in cases:
        prof = rajchman_probe(m, direction, RADII, CFG)
        print(f"\n{label}")
        print(f"{'radius':>10}  {'sup|ft|':>12}  {'envelope':>12}")
        for r, s, e in zip(prof.radii, prof.sup_values, prof.envelope):
            print(f"{r:>10.1f}  {s:>12.3e}  {e:>12.3e}")


if __name__ == "__main__":
    main()
