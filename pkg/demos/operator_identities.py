"""The three operators behind normalization and their exact algebra.

D takes the bracket with the quadratic part and acts diagonally on
monomials; A projects onto its kernel (the resonant terms); B inverts D
on the complement. The identities A + DB = I, AB = BA = 0, A^2 = A hold
exactly, term by term, and they are what splits every right-hand side
into a resonant normal-form piece and a generator piece.
"""

from birkhoff import (
    GAUSSIAN_RING,
    FreqVector,
    GaussianRational,
    PolySeries,
    homological_operator,
    make_pair,
    partial_inverse,
    resonant_projection,
    resonant_pairs,
)


def sample(freq: FreqVector, order: int) -> PolySeries:
    one = GaussianRational.of(1)
    terms = {
        make_pair([2, 0], [0, 1]): one,
        make_pair([0, 1], [2, 0]): one,
        make_pair([2, 2], [0, 0]): GaussianRational.of(3),
        make_pair([1, 0], [0, 2]): GaussianRational.of(-2),
    }
    return PolySeries(2, order, GAUSSIAN_RING, terms)


def main() -> None:
    freq = FreqVector.of(1, -1)
    f = sample(freq, 4)
    print("lambda = (1, -1), f =", f.render())
    print()

    d = homological_operator(f, freq)
    a = resonant_projection(f, freq)
    b = partial_inverse(f, freq)
    print("D f =", d.render())
    print("A f =", a.render())
    print("B f =", b.render())
    print()

    checks = {
        "A f + D(B f) = f": a + homological_operator(b, freq) == f,
        "B(D f) = f - A f": partial_inverse(d, freq) == f - a,
        "A(A f) = A f": resonant_projection(a, freq) == a,
        "B(A f) = 0": partial_inverse(a, freq).is_zero,
        "A(B f) = 0": resonant_projection(b, freq).is_zero,
        "A(D f) = 0": resonant_projection(d, freq).is_zero,
    }
    for label, ok in checks.items():
        print(f"  {label}: {ok}")
    if not all(checks.values()):
        raise SystemExit(1)
    print()

    print("nontrivial resonant classes through degree 4:")
    for pair in resonant_pairs(freq, 4):
        print(f"  alpha={list(pair.alpha)} beta={list(pair.beta)}")


if __name__ == "__main__":
    main()
