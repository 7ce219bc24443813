"""Why the recursion feeds kernel-free remainders into its brackets.

The nested-bracket recursion behind both the direct pipeline and the
tree formula substitutes, at each stage, a bracket with the quadratic
part by the stage's right-hand side. That substitution is only valid up
to resonant (kernel) terms: the exact identity replaces the right-hand
side by its non-resonant part. The two variants first differ at degree
6, three bracket nestings deep.

This demo runs both on H = xy + x^3 + y^3 and shows that only the
corrected variant produces a normal form that the generator flow
actually reaches: conjugating H by exp({F, .}) lands exactly on the
corrected output and not on the plain one.
"""

from birkhoff import (
    GAUSSIAN_RING,
    FreqVector,
    GaussianRational,
    PolySeries,
    exp_lie,
    lie_normalize,
    make_pair,
    nf_via_trees,
)


def main() -> None:
    order = 8
    freq = FreqVector.of(1)
    one = GaussianRational.of(1)
    hamiltonian = PolySeries(
        1,
        order,
        GAUSSIAN_RING,
        {
            make_pair([1], [1]): one,
            make_pair([3], [0]): one,
            make_pair([0], [3]): one,
        },
    )
    print("H =", hamiltonian.render())
    print()

    corrected = lie_normalize(hamiltonian, freq)
    plain = lie_normalize(hamiltonian, freq, kernel_corrected=False)
    print("corrected recursion:", corrected.normal_form.render())
    print("plain recursion:    ", plain.normal_form.render())
    print()

    tree_corrected = nf_via_trees(hamiltonian, freq)
    tree_plain = nf_via_trees(hamiltonian, freq, kernel_corrected=False)
    print("tree formula reproduces each variant:")
    print("  corrected:", tree_corrected.normal_form == corrected.normal_form)
    print("  plain:    ", tree_plain.normal_form == plain.normal_form)
    print()

    # the decisive check: push H through the generator flow
    flowed = exp_lie(corrected.generator, hamiltonian)
    print("exp({F, .}) H == corrected output:", flowed == corrected.normal_form)
    print("exp({F, .}) H == plain output:    ", flowed == plain.normal_form)
    print()
    print("generator F =", corrected.generator.render())


if __name__ == "__main__":
    main()
