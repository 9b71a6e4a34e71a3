"""Print the combined cohomology table of every bundled Lie and associative entry."""

from rbder import corpus
from rbder.ass_cohomology import cohomology_ass_table
from rbder.lie_cohomology import cohomology_table


def main():
    for name in corpus.LIE_ENTRIES + corpus.ASSOC_ENTRIES:
        doc = corpus.load(name)
        pair = doc.pair()
        rep = doc.representation_for(pair)
        table = cohomology_table if doc.is_lie else cohomology_ass_table
        max_degree = 3 if doc.is_lie else 2
        print(f"{name} (dim {doc.dim}, weight {doc.weight})")
        print("   n  cochains  cocycles  coboundaries  H")
        for r in table(pair, rep, max_degree):
            print(f"  {r.degree:2d}  {r.dim_cochains:8d}  {r.dim_cocycles:8d}  {r.dim_coboundaries:12d}  {r.dim_H}")
        print()


if __name__ == "__main__":
    main()
