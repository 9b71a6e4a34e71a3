"""Order-by-order checks, equivalence and the rigidity probe on the bundled deformations."""

from rbder import corpus
from rbder.deformation import (
    apply_equivalence,
    check_order,
    cohomologous_test,
    infinitesimal,
    rigidity_probe,
)


def show(name):
    doc = corpus.load(name)
    pair = doc.pair()
    dfm = doc.formal_deformation(pair)
    print(f"== {name}: order {dfm.order}")
    for n in range(dfm.order + 1):
        rep = check_order(dfm, n)
        print(f"  order {n}: {'clean' if rep.clean else 'residual'}")
    probe = rigidity_probe(pair, dfm)
    if probe.success:
        print(f"  probe cleared orders {[k for k, _ in probe.steps]}; final deformation trivial")
    elif probe.obstruction_order is not None:
        print(f"  probe stopped: order-{probe.obstruction_order} term is a cocycle but not a coboundary")
    if doc.equivalence is not None:
        conj = apply_equivalence(dfm, doc.equivalence_data())
        print(f"  bundled equivalence gives a trivial deformation: {conj.is_trivial()}")
    return pair, dfm


def main():
    for name in corpus.DEFORM_ENTRIES:
        show(name)
    # Two deformations over b2: the coboundary one and the trivial one differ
    # infinitesimally by D(phi1).
    a = corpus.load("deform_b2_coboundary")
    b = corpus.load("deform_b2_trivial")
    pa = a.pair()
    da, db = a.formal_deformation(pa), b.formal_deformation(b.pair())
    print("== compare b2 coboundary vs trivial")
    print(f"  infinitesimal of coboundary deformation: f = {infinitesimal(da).f}")
    print(f"  phi1 with inf(A) - inf(B) = D(phi1): {cohomologous_test(da, db)}")


if __name__ == "__main__":
    main()
