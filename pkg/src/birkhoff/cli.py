"""Command-line interface: parsing, report emission, cross-validation.

Commands:

* ``compute``   -- normal form by one pipeline (``--method lie|trees|onedof``)
* ``check``     -- run every applicable cross-check on one input
* ``s-series``  -- the invariant series S and the linearizability bound (n=1)
* ``structure`` -- symbolic normalization and the per-monomial constraints
* ``trees enumerate`` / ``trees mu-sum`` -- tree combinatorics utilities

All reports are JSON with stable key order; exit codes are 0 (pass),
1 (check failure or structure violation), 2 (usage or parse error).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import ParseError, UsageError
from .lie import exp_lie, lie_normalize, random_symplectic_conjugate
from .onedof import CONVENTIONS, compute_S, onedof_normal_form
from .operators import (
    FreqVector,
    homological_operator,
    partial_inverse,
    resonant_pairs,
    resonant_projection,
)
from .scalars import GaussianRational
from .series import ExponentPair, PolySeries, make_pair
from .structure import (
    DEFAULT_ORDER_CAP,
    DEFAULT_SUPPORT_CAP,
    check_structure,
    symbolic_normalize,
)
from .treeforms import nf_via_trees, total_tree_weight, tree_weight
from .trees import MAX_LEAVES, all_trees, catalan_count, format_code, to_code

DEFAULT_SEED = 2026


@dataclass(frozen=True)
class ProblemSpec:
    """Validated problem input: dimension, frequencies, order, terms."""

    n: int
    freq: FreqVector
    order: int
    entries: tuple[tuple[ExponentPair, GaussianRational], ...]

    def summed_terms(self) -> dict[ExponentPair, GaussianRational]:
        acc: dict[ExponentPair, GaussianRational] = {}
        for pair, value in self.entries:
            acc[pair] = acc[pair] + value if pair in acc else value
        return {pair: v for pair, v in acc.items() if not v.is_zero}

    def max_term_degree(self) -> int:
        return max((pair.degree for pair, _ in self.entries), default=2)

    def hamiltonian(self, order: int | None = None) -> PolySeries:
        target = self.order if order is None else order
        quad = self.freq.quadratic_part(target)
        return quad + PolySeries(self.n, target, quad.ring, self.summed_terms())

    def support(self) -> list[ExponentPair]:
        unique = {pair for pair, _ in self.entries}
        return sorted(unique, key=lambda p: (p.degree, p.alpha, p.beta))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProblemSpec):
            return NotImplemented
        return (
            other.n == self.n
            and other.freq == self.freq
            and other.order == self.order
            and other.summed_terms() == self.summed_terms()
        )

    def to_json(self) -> dict:
        terms = []
        ordered = sorted(
            self.summed_terms().items(), key=lambda kv: (kv[0].degree, kv[0])
        )
        for pair, value in ordered:
            terms.append(
                {
                    "alpha": list(pair.alpha),
                    "beta": list(pair.beta),
                    "coeff": value.to_json(),
                }
            )
        return {
            "n": self.n,
            "lambda": self.freq.to_json(),
            "order": self.order,
            "terms": terms,
        }


_SPEC_KEYS = {"n", "lambda", "order", "terms"}


def parse_problem(data: object, default_coeff: bool = False) -> ProblemSpec:
    """Validate a problem object; errors name the offending field or term."""
    if not isinstance(data, dict):
        raise ParseError("input must be a JSON object")
    unknown = set(data) - _SPEC_KEYS
    if unknown:
        raise ParseError(f"unknown top-level keys: {sorted(unknown)}")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"\"n\" must be a positive integer, got {n!r}")
    lam_rows = data.get("lambda")
    if not isinstance(lam_rows, list) or len(lam_rows) != n:
        raise ParseError(f"\"lambda\" must be a list of {n} entries")
    lam_entries = []
    for j, row in enumerate(lam_rows, start=1):
        try:
            value = GaussianRational.from_json(row)
        except ParseError as exc:
            raise ParseError(f"lambda entry {j}: {exc}") from None
        if value.is_zero:
            raise ParseError(f"lambda entry {j} is zero; frequencies must be nonzero")
        lam_entries.append(value)
    order = data.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 3:
        raise ParseError(f"\"order\" must be an integer >= 3, got {order!r}")
    rows = data.get("terms", [])
    if not isinstance(rows, list):
        raise ParseError("\"terms\" must be a list")
    entries = []
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, dict):
            raise ParseError(f"term {i}: must be an object")
        extra = set(row) - {"alpha", "beta", "coeff"}
        if extra:
            raise ParseError(f"term {i}: unknown keys {sorted(extra)}")
        for key in ("alpha", "beta"):
            seq = row.get(key)
            if (
                not isinstance(seq, list)
                or len(seq) != n
                or any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in seq)
            ):
                raise ParseError(
                    f"term {i}: \"{key}\" must be a list of {n} non-negative integers"
                )
        pair = make_pair(row["alpha"], row["beta"])
        if pair.degree < 3:
            raise ParseError(
                f"term {i}: total degree {pair.degree} is below 3; the quadratic "
                "part comes only from lambda"
            )
        if "coeff" not in row:
            if not default_coeff:
                raise ParseError(f"term {i}: missing \"coeff\"")
            coeff = GaussianRational.of(1)
        else:
            try:
                coeff = GaussianRational.from_json(row["coeff"])
            except ParseError as exc:
                raise ParseError(f"term {i}: {exc}") from None
        entries.append((pair, coeff))
    return ProblemSpec(
        n=n, freq=FreqVector(lam_entries), order=order, entries=tuple(entries)
    )


def _load_json(path: str) -> object:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_json(obj: object, path: str) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", path)


def _pairs_json(pairs) -> list[dict]:
    # rows carry the pairing value; it is identically "0" for resonant pairs
    return [
        {"alpha": list(p.alpha), "beta": list(p.beta), "value": "0"} for p in pairs
    ]


def _load_spec(args, default_coeff: bool = False) -> tuple[ProblemSpec, int]:
    spec = parse_problem(_load_json(args.input), default_coeff=default_coeff)
    order = spec.order if args.order is None else args.order
    if order < 3:
        raise UsageError(f"--order must be at least 3, got {order}")
    return spec, order


def cmd_compute(args) -> int:
    spec, order = _load_spec(args)
    hamiltonian = spec.hamiltonian(order)
    kernel_corrected = not args.no_kernel_correction
    pairs = _pairs_json(resonant_pairs(spec.freq, order))
    if args.method == "lie":
        result = lie_normalize(hamiltonian, spec.freq, kernel_corrected)
        out = {
            "method": "lie",
            "order": order,
            "kernel_corrected": kernel_corrected,
            "normal_form": result.normal_form.to_json_terms(),
            "generator": result.generator.to_json_terms(),
            "resonant_pairs": pairs,
        }
    elif args.method == "trees":
        result = nf_via_trees(
            hamiltonian,
            spec.freq,
            kernel_corrected,
            audit=True,
            max_leaves=args.max_leaves,
        )
        out = {
            "method": "trees",
            "order": order,
            "kernel_corrected": kernel_corrected,
            "normal_form": result.normal_form.to_json_terms(),
            "breakdown": result.rows,
            "resonant_pairs": pairs,
        }
    else:
        if spec.n != 1:
            raise UsageError(
                f"method onedof requires one degree of freedom, got n={spec.n}"
            )
        result = onedof_normal_form(
            hamiltonian, spec.freq.entries[0], args.convention
        )
        out = {
            "method": "onedof",
            "order": order,
            "convention": args.convention,
            "normal_form": result.normal_form.to_json_terms(),
            "s_series": result.s_series.to_rows(),
            "nu": result.nu.to_rows(),
            "resonant_pairs": pairs,
        }
    _emit_json(out, args.output)
    return 0


def _check_row(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "pass": ok, "detail": detail}


def _skip_row(name: str, reason: str) -> dict:
    return {"name": name, "pass": True, "detail": f"skipped: {reason}"}


def cmd_check(args) -> int:
    spec, order = _load_spec(args)
    hamiltonian = spec.hamiltonian(order)
    freq = spec.freq
    checks: list[dict] = []

    lie_result = lie_normalize(hamiltonian, freq)
    trees_result = nf_via_trees(
        hamiltonian, freq, kernel_corrected=True, max_leaves=args.max_leaves
    )
    same = lie_result.normal_form == trees_result.normal_form
    checks.append(
        _check_row(
            "lie_trees_agreement",
            same,
            f"identical through order {order}"
            if same
            else (
                f"lie: {lie_result.normal_form.render()}; "
                f"trees: {trees_result.normal_form.render()}"
            ),
        )
    )
    agreement = same

    if spec.n == 1:
        onedof_result = onedof_normal_form(hamiltonian, freq.entries[0])
        same = onedof_result.normal_form == lie_result.normal_form
        agreement = agreement and same
        checks.append(
            _check_row(
                "onedof_agreement",
                same,
                f"identical through order {order}"
                if same
                else (
                    f"onedof: {onedof_result.normal_form.render()}; "
                    f"lie: {lie_result.normal_form.render()}"
                ),
            )
        )
    else:
        checks.append(_skip_row("onedof_agreement", "requires n=1"))

    closure = exp_lie(lie_result.generator, hamiltonian) == lie_result.normal_form
    checks.append(
        _check_row(
            "exp_lie_closure",
            closure,
            "generator transforms the input onto the normal form"
            if closure
            else "conjugated input differs from the normal form",
        )
    )

    tail = lie_result.normal_form - freq.quadratic_part(order)
    resonant_only = resonant_projection(tail, freq) == tail
    checks.append(
        _check_row(
            "normal_form_resonant",
            resonant_only,
            "normal-form tail is fixed by the resonant projection"
            if resonant_only
            else "normal-form tail contains non-resonant terms",
        )
    )

    perturbation = hamiltonian.filter_terms(lambda p: p.degree >= 3)
    if perturbation.is_zero:
        checks.append(_skip_row("operator_identities", "empty perturbation"))
    else:
        a_part = resonant_projection(perturbation, freq)
        b_part = partial_inverse(perturbation, freq)
        identities = (
            a_part + homological_operator(b_part, freq) == perturbation
            and resonant_projection(a_part, freq) == a_part
            and partial_inverse(a_part, freq).is_zero
            and resonant_projection(b_part, freq).is_zero
            and resonant_projection(homological_operator(perturbation, freq), freq).is_zero
        )
        checks.append(
            _check_row(
                "operator_identities",
                identities,
                "projection and partial-inverse identities hold on the input tail"
                if identities
                else "an operator identity failed on the input tail",
            )
        )

    if spec.n == 1:
        lam = freq.entries[0]
        wmax = max(1, order // 2)
        base = compute_S(hamiltonian, lam, wmax)
        bad_seed = None
        for seed in (args.seed, args.seed + 1):
            conjugated = random_symplectic_conjugate(hamiltonian, seed)
            if compute_S(conjugated, lam, wmax) != base:
                bad_seed = seed
                break
        checks.append(
            _check_row(
                "s_invariance",
                bad_seed is None,
                f"S preserved under conjugation, seeds {args.seed} and {args.seed + 1}"
                if bad_seed is None
                else f"S changed under conjugation with seed {bad_seed}",
            )
        )
    else:
        checks.append(_skip_row("s_invariance", "requires n=1"))

    support = spec.support()
    if not freq.is_real:
        checks.append(
            _skip_row("structure_constraints", "requires real rational frequencies")
        )
    elif spec.n > 2:
        checks.append(_skip_row("structure_constraints", "capped at n<=2"))
    elif order > DEFAULT_ORDER_CAP:
        checks.append(
            _skip_row("structure_constraints", f"capped at order {DEFAULT_ORDER_CAP}")
        )
    elif len(support) > DEFAULT_SUPPORT_CAP:
        checks.append(
            _skip_row(
                "structure_constraints",
                f"capped at {DEFAULT_SUPPORT_CAP} support pairs",
            )
        )
    else:
        report = check_structure(symbolic_normalize(support, freq, order))
        checks.append(
            _check_row(
                "structure_constraints",
                report.verdict,
                f"{len(report.rows)} monomials satisfy all constraints"
                if report.verdict
                else f"violation: {json.dumps(report.first_violation)}",
            )
        )

    out = {
        "checks": checks,
        "agreement": agreement,
        "normal_form": lie_result.normal_form.to_json_terms(),
    }
    _emit_json(out, args.output)
    return 0 if all(row["pass"] for row in checks) else 1


def cmd_s_series(args) -> int:
    spec, wmax = _load_spec(args)
    if spec.n != 1:
        raise UsageError(
            f"the invariant series needs one degree of freedom, got n={spec.n}"
        )
    hamiltonian = spec.hamiltonian(max(2, spec.max_term_degree()))
    s_series = compute_S(hamiltonian, spec.freq.entries[0], wmax)
    if s_series.is_zero:
        linearizable_up_to = wmax
    else:
        linearizable_up_to = s_series.min_degree() - 1
    out = {"S": s_series.to_rows(), "linearizable_up_to": linearizable_up_to}
    _emit_json(out, args.output)
    return 0


def cmd_structure(args) -> int:
    spec, order = _load_spec(args, default_coeff=True)
    if order > args.cap_order:
        raise UsageError(
            f"order {order} exceeds the symbolic cap {args.cap_order}; "
            "raise --cap-order if this size is intended"
        )
    support = spec.support()
    if len(support) > args.cap_support:
        raise UsageError(
            f"support size {len(support)} exceeds the cap {args.cap_support}; "
            "raise --cap-support if this size is intended"
        )
    report = check_structure(symbolic_normalize(support, spec.freq, order))
    _emit_json(report.to_json(), args.output)
    return 0 if report.verdict else 1


def cmd_trees_enumerate(args) -> int:
    lines = []
    for t in all_trees(args.leaves, args.max_leaves):
        line = t.render()
        if args.codes:
            line += "  " + format_code(to_code(t))
        if args.mu:
            line += "  " + str(tree_weight(t))
        lines.append(line)
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_trees_mu_sum(args) -> int:
    total = total_tree_weight(args.leaves, args.max_leaves)
    out = {
        "leaves": args.leaves,
        "count": catalan_count(args.leaves),
        "mu_sum": str(total),
    }
    _emit_json(out, args.output)
    return 0


def _add_io(parser: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        parser.add_argument(
            "--input",
            default="-",
            help="problem JSON file, or - for stdin (default)",
        )
    parser.add_argument(
        "--output", default="-", help="report destination, or - for stdout (default)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birkhoff",
        description=(
            "Exact Birkhoff normal forms of polynomial Hamiltonians by three "
            "cross-validated pipelines."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="normal form by one pipeline")
    _add_io(compute)
    compute.add_argument("--order", type=int, default=None, help="override the order")
    compute.add_argument(
        "--method", choices=("lie", "trees", "onedof"), default="lie"
    )
    compute.add_argument("--max-leaves", type=int, default=MAX_LEAVES)
    compute.add_argument(
        "--no-kernel-correction",
        action="store_true",
        help=(
            "use the plain recursion that feeds whole right-hand sides back "
            "into the nested brackets (differs once intermediate resonant "
            "parts appear)"
        ),
    )
    compute.add_argument(
        "--convention",
        choices=CONVENTIONS,
        default="proof",
        help="assembly of the inverse series from S (onedof method)",
    )
    compute.set_defaults(handler=cmd_compute)

    check = sub.add_parser("check", help="run all applicable cross-checks")
    _add_io(check)
    check.add_argument("--order", type=int, default=None)
    check.add_argument("--max-leaves", type=int, default=MAX_LEAVES)
    check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    check.set_defaults(handler=cmd_check)

    s_series = sub.add_parser(
        "s-series", help="invariant series S and linearizability bound (n=1)"
    )
    _add_io(s_series)
    s_series.add_argument(
        "--order", type=int, default=None, help="w-order to compute S through"
    )
    s_series.set_defaults(handler=cmd_s_series)

    structure = sub.add_parser(
        "structure", help="symbolic normalization and structure constraints"
    )
    _add_io(structure)
    structure.add_argument("--order", type=int, default=None)
    structure.add_argument("--cap-order", type=int, default=DEFAULT_ORDER_CAP)
    structure.add_argument("--cap-support", type=int, default=DEFAULT_SUPPORT_CAP)
    structure.set_defaults(handler=cmd_structure)

    trees = sub.add_parser("trees", help="tree combinatorics utilities")
    trees_sub = trees.add_subparsers(dest="trees_command", required=True)
    enumerate_cmd = trees_sub.add_parser(
        "enumerate", help="list all full binary trees with the given leaf count"
    )
    _add_io(enumerate_cmd, with_input=False)
    enumerate_cmd.add_argument("--leaves", type=int, required=True)
    enumerate_cmd.add_argument("--codes", action="store_true")
    enumerate_cmd.add_argument("--mu", action="store_true")
    enumerate_cmd.add_argument("--max-leaves", type=int, default=MAX_LEAVES)
    enumerate_cmd.set_defaults(handler=cmd_trees_enumerate)
    mu_sum_cmd = trees_sub.add_parser(
        "mu-sum", help="sum of tree weights over all trees with given leaf count"
    )
    _add_io(mu_sum_cmd, with_input=False)
    mu_sum_cmd.add_argument("--leaves", type=int, required=True)
    mu_sum_cmd.add_argument("--max-leaves", type=int, default=MAX_LEAVES)
    mu_sum_cmd.set_defaults(handler=cmd_trees_mu_sum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
