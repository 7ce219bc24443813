"""Linearizability detection through the invariant series S.

A 1-DOF Hamiltonian is formally linearizable exactly when S vanishes.
The cubic perturbation below is linearizable to every computed order,
while the quartic shear term x^2 y^2 is already a normal-form
obstruction: it survives as S = w^2 - 2 w^3 + 5 w^4 - 14 w^5 + ...
"""

from birkhoff import (
    GAUSSIAN_RING,
    FreqVector,
    GaussianRational,
    PolySeries,
    compute_S,
    is_linearizable,
    lie_normalize,
    make_pair,
)


def onedof(order: int, entries: dict) -> PolySeries:
    terms = {
        make_pair([a], [b]): GaussianRational.of(c) for (a, b), c in entries.items()
    }
    return PolySeries(1, order, GAUSSIAN_RING, terms)


def main() -> None:
    lam = GaussianRational.of(1)
    freq = FreqVector.of(lam)
    wmax = 5

    cubic = onedof(10, {(1, 1): 1, (3, 0): 1})
    print("H =", cubic.render())
    s_cubic = compute_S(cubic, lam, wmax)
    print("  S:", "0" if s_cubic.is_zero else s_cubic.render())
    print("  linearizable through w^5:", is_linearizable(cubic, lam, wmax))
    print("  normal form:", lie_normalize(cubic, freq).normal_form.render())
    print()

    shear = onedof(10, {(1, 1): 1, (2, 2): 1})
    print("H =", shear.render())
    s_shear = compute_S(shear, lam, wmax)
    print("  S:", s_shear.render())
    print("  linearizable through w^5:", is_linearizable(shear, lam, wmax))
    print("  normal form:", lie_normalize(shear, freq).normal_form.render())
    print()

    # the obstruction is invariant: no polynomial change of variables
    # preserving the symplectic form can remove it
    mixed = onedof(10, {(1, 1): 1, (2, 2): 1, (3, 0): 4, (0, 3): -4})
    print("H =", mixed.render())
    print("  S:", compute_S(mixed, lam, wmax).render())
    print("  linearizable through w^5:", is_linearizable(mixed, lam, wmax))


if __name__ == "__main__":
    main()
