"""Normalize one Hamiltonian three independent ways and compare exactly.

The three pipelines share no intermediate code: the first runs the
degree-by-degree generator recursion, the second sums weighted nested
brackets over full binary trees, and the third builds the normal form
from the invariant series S of the Hamiltonian. All arithmetic is exact,
so agreement is literal equality of coefficient tables.
"""

from birkhoff import (
    GAUSSIAN_RING,
    FreqVector,
    GaussianRational,
    PolySeries,
    compute_S,
    lie_normalize,
    make_pair,
    nf_from_S,
    nf_via_trees,
)


def build_input(order: int) -> tuple[PolySeries, FreqVector]:
    freq = FreqVector.of(1)
    one = GaussianRational.of(1)
    terms = {
        make_pair([1], [1]): one,
        make_pair([3], [0]): one,
        make_pair([2], [1]): GaussianRational.of(-2),
        make_pair([0], [4]): GaussianRational.of(1, 1),
    }
    return PolySeries(1, order, GAUSSIAN_RING, terms), freq


def main() -> None:
    order = 8
    hamiltonian, freq = build_input(order)
    lam = freq.entries[0]
    print("input:", hamiltonian.render())
    print()

    lie_form = lie_normalize(hamiltonian, freq).normal_form
    tree_form = nf_via_trees(hamiltonian, freq).normal_form
    s_series = compute_S(hamiltonian, lam, order // 2)
    s_form = nf_from_S(s_series, lam).diagonal_series(order)

    print("generator recursion:", lie_form.render())
    print("tree formula:       ", tree_form.render())
    print("S functional:       ", s_form.render())
    print()
    print("S itself:", s_series.render())
    print()
    agree = lie_form == tree_form and lie_form == s_form
    print("exact three way agreement:", agree)
    if not agree:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
