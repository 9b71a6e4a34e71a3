"""Audit of the small worked examples against the exact engine.

Each line states the expected value, the computed value and whether they agree.
For the idempotent algebra the expected value is the one the definitions give,
not the commonly stated H^1 = 1.
"""

from fractions import Fraction

from rbder import corpus
from rbder.ass_cohomology import cohomology_ass
from rbder.linalg import Matrix
from rbder.lie_cohomology import cohomology
from rbder.structures import LieAlgebra, check_jacobi, check_rota_baxter

ROWS = []


def row(label, expected, got):
    ROWS.append((label, expected, got))


def main():
    b2 = LieAlgebra(2, [(0, 1, 1, Fraction(1))])
    for b in (-2, -1, 0, 1):
        R = Matrix([[0, 0], [0, b]])
        ok = bool(check_rota_baxter(b2, R, Fraction(1)))
        row(f"b2: R = diag(0,{b}) is Rota-Baxter of weight 1", b * (b + 1) == 0, ok)

    broken = LieAlgebra(3, [(0, 1, 2, Fraction(1)), (1, 2, 0, Fraction(1)), (0, 2, 0, Fraction(1))])
    row("perturbed 3-dim bracket satisfies Jacobi", False, bool(check_jacobi(broken)))

    doc = corpus.load("lie_b2_zero")
    pair = doc.pair()
    row("b2, delta = diag(0,1), R = 0: dim H^1", 2, cohomology(pair, doc.representation_for(pair), 1).dim_H)

    doc = corpus.load("assoc_idempotent1")
    pair = doc.pair()
    got = cohomology_ass(pair, doc.representation_for(pair), 1).dim_H
    row("idempotent algebra: dim H^1", 0, got)

    for label, expected, got in ROWS:
        mark = "ok " if expected == got else "DIFF"
        print(f"[{mark}] {label}: expected {expected}, computed {got}")


if __name__ == "__main__":
    main()
