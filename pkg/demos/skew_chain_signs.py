"""Compare the combined differentials across skew-symmetrization.

For each associative entry the script reports, per input degree, the sign
picked up on each output slot when the commutator Lie complex differential is
compared with the skew-symmetrized associative one.  A uniform scalar exists
only if all slot signs agree; ``chain_skew_slot_signs`` lists the per-slot
rescaling that turns the skew maps into an exact chain map.
"""

from rbder import corpus
from rbder.ass_cohomology import chain_skew_slot_signs, skew_chain_signs


def main():
    for name in corpus.ASSOC_ENTRIES:
        doc = corpus.load(name)
        pair = doc.pair()
        rep = doc.representation_for(pair)
        print(f"{name} (dim {doc.dim})")
        for n in (1, 2):
            signs = skew_chain_signs(pair, rep, n)
            uniform = signs is not None and len(set(signs)) == 1
            print(f"  degree {n} -> {n + 1}: slot signs {signs}  uniform scalar: {'yes' if uniform else 'no'}")
    print()
    print("rescaling that makes (a S, b S, c S) a chain map:")
    for n in range(1, 5):
        print(f"  degree {n}: {chain_skew_slot_signs(n)}")


if __name__ == "__main__":
    main()
