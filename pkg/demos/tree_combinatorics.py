"""Full binary trees, their backslash codes, and the rational weights.

Each tree carries a weight: the product of chain weights J_k over the
entries of its backslash code. The weights of all s-leaf trees always
sum to 1/s, which is what makes the tree formula for the normal form
match the generator recursion degree by degree.
"""

from fractions import Fraction

from birkhoff import (
    all_trees,
    catalan_count,
    chain_weights,
    format_code,
    from_code,
    to_code,
    total_tree_weight,
    tree_weight,
)


def main() -> None:
    weights = chain_weights(6)
    print("chain weights J_1..J_6:", ", ".join(str(w) for w in weights[1:]))
    print()

    print("all trees with 4 leaves:")
    for t in all_trees(4):
        code = to_code(t)
        print(
            f"  {t.render():<16} code {format_code(code):<12} "
            f"weight {tree_weight(t)}"
        )
        assert from_code(code) == t
    print()

    print("leaf count, tree count, weight sum:")
    for s in range(1, 11):
        count = catalan_count(s)
        total = total_tree_weight(s)
        assert total == Fraction(1, s)
        print(f"  s={s:<3} count={count:<6} sum={total}")


if __name__ == "__main__":
    main()
