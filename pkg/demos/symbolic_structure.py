"""Normal-form coefficients as polynomials in the input coefficients.

Running the normalization over a ring of indeterminates, one per input
monomial, shows the shape of every normal-form coefficient: each of its
monomials uses s input coefficients whose degrees and exponents satisfy
tight bookkeeping constraints (degree bounds, a balanced exponent
budget, and a fixed budget size 2s - 2). The structure report verifies
all of them for every monomial.
"""

import json

from birkhoff import (
    GAUSSIAN_RING,
    FreqVector,
    GaussianRational,
    PolySeries,
    check_structure,
    lie_normalize,
    make_pair,
    specialize,
    symbolic_normalize,
)


def main() -> None:
    support = [
        make_pair([3], [0]),
        make_pair([0], [3]),
        make_pair([2], [1]),
        make_pair([1], [2]),
        make_pair([2], [2]),
    ]
    freq = FreqVector.of(1)
    order = 4

    symbolic = symbolic_normalize(support, freq, order)
    print("support:", ", ".join(f"({list(p.alpha)},{list(p.beta)})" for p in support))
    print()
    print("symbolic normal-form tail at order", order)
    for pair, value in sorted(
        symbolic.resonant.items(), key=lambda kv: (kv[0].degree, kv[0])
    ):
        print(f"  ({list(pair.alpha)},{list(pair.beta)}): {symbolic.ring.render(value)}")
    print()

    report = check_structure(symbolic)
    print("structure verdict:", "pass" if report.verdict else "fail")
    print("rows checked:", len(report.rows))
    print("first row:")
    print(json.dumps(report.rows[0], indent=2))
    print()

    # substituting numeric values must reproduce the numeric pipeline
    values = {
        support[0]: GaussianRational.of(1),
        support[1]: GaussianRational.of(1),
        support[2]: GaussianRational.of(0),
        support[3]: GaussianRational.of(0),
        support[4]: GaussianRational.of(0),
    }
    specialized = specialize(symbolic, values)
    numeric_input = freq.quadratic_part(order) + PolySeries(
        1,
        order,
        GAUSSIAN_RING,
        {pair: value for pair, value in values.items() if not value.is_zero},
    )
    numeric = lie_normalize(numeric_input, freq).normal_form
    print("specialized at x^3 + y^3:", specialized.render())
    print("matches the numeric pipeline:", specialized == numeric)


if __name__ == "__main__":
    main()
