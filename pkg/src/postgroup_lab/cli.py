"""Command line front end.

One verb per task, batch style: read JSON tables or word arguments,
print the result or a verification summary.  Exit codes: 0 when the
requested computation or check succeeds, 1 when a mathematical law
fails (the witness is printed), 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import AxiomError, NotPrimitiveError, SchemaError
from .jsonio import dump_json
from .magma import load_magma, save_magma
from .words import word_str
from .free_postgroup import act, gl_inverse, gl_product, jmap, kmap, parse_over
from .finite_postgroup import (
    braiding,
    check_braid_equation,
    check_ybe,
    conjugation_postgroup,
    load_group,
    load_postgroup,
    load_skew_brace,
    opposite,
    save_postgroup,
    save_skew_brace,
    skew_brace_to_postgroup,
    to_skew_brace,
    trivial_postgroup,
)
from .action_postgroup import build_gauge_postgroup, load_action
from .tensor_postlie import (
    Leaf,
    TensorPoly,
    format_poly,
    format_word,
    kmap_tensor,
    kmap_tensor_inverse,
    words_of_degree,
)
from .magnus import (
    check_alpha_ode,
    check_primitivity_of_log,
    flow_matches_twisted_exp,
    magnus_gl,
    solve_right_flow,
)
from .selftest import operator_axiom_sweep, run_acceptance


def _resolve_seed(args: argparse.Namespace) -> int:
    env = os.environ.get("POSTGROUP_LAB_SEED")
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise SchemaError(f"POSTGROUP_LAB_SEED must be an integer, got {env!r}")


def _emit_table(text: str, out: str | None) -> None:
    """Print the serialized table, or stay quiet when writing a file."""
    if out is None:
        sys.stdout.write(text)


def cmd_validate_magma(args: argparse.Namespace) -> int:
    magma = load_magma(args.file)
    print("diagonal left-regular: OK")
    if args.out is not None:
        save_magma(magma, args.out)
    return 0


def cmd_act(args: argparse.Namespace) -> int:
    magma = load_magma(args.magma)
    u = parse_over(magma, args.words[0])
    v = parse_over(magma, args.words[1])
    print(word_str(act(magma, u, v)))
    return 0


def cmd_star(args: argparse.Namespace) -> int:
    magma = load_magma(args.magma)
    u = parse_over(magma, args.words[0])
    v = parse_over(magma, args.words[1])
    print(word_str(gl_product(magma, u, v)))
    return 0


def cmd_star_inv(args: argparse.Namespace) -> int:
    magma = load_magma(args.magma)
    print(word_str(gl_inverse(magma, parse_over(magma, args.word))))
    return 0


def cmd_jmap(args: argparse.Namespace) -> int:
    magma = load_magma(args.magma)
    print(word_str(jmap(magma, parse_over(magma, args.word))))
    return 0


def cmd_kmap(args: argparse.Namespace) -> int:
    magma = load_magma(args.magma)
    print(word_str(kmap(magma, parse_over(magma, args.word))))
    return 0


def cmd_check_postgroup(args: argparse.Namespace) -> int:
    pg = load_postgroup(args.file)
    print("post-group laws: OK")
    braid = braiding(pg)
    for label, result in (
        ("braid equation", check_braid_equation(braid)),
        ("Yang-Baxter", check_ybe(braid)),
    ):
        if not result.ok:
            print(f"{label}: FAIL at {result.witness}")
            return 1
        print(f"{label}: OK")
    to_skew_brace(pg)
    print("skew brace: OK")
    return 0


def cmd_braiding(args: argparse.Namespace) -> int:
    pg = load_postgroup(args.file)
    braid = braiding(pg)
    names = braid.elements
    for g, name_g in enumerate(names):
        for h, name_h in enumerate(names):
            a, b = braid.left[g][h], braid.right[g][h]
            print(f"sigma({name_g}, {name_h}) = ({names[a]}, {names[b]})")
    if args.out is not None:
        dump_json(
            {
                "elements": list(names),
                "left": [[names[v] for v in row] for row in braid.left],
                "right": [[names[v] for v in row] for row in braid.right],
            },
            args.out,
        )
    return 0


def cmd_ybe(args: argparse.Namespace) -> int:
    braid = braiding(load_postgroup(args.file))
    result = check_ybe(braid)
    if not result.ok:
        print(f"Yang-Baxter: FAIL at {result.witness}")
        return 1
    print("Yang-Baxter: OK")
    return 0


def cmd_to_brace(args: argparse.Namespace) -> int:
    brace = to_skew_brace(load_postgroup(args.file))
    _emit_table(save_skew_brace(brace, args.out), args.out)
    return 0


def cmd_from_brace(args: argparse.Namespace) -> int:
    pg = skew_brace_to_postgroup(load_skew_brace(args.file))
    _emit_table(save_postgroup(pg, args.out), args.out)
    return 0


def cmd_opposite(args: argparse.Namespace) -> int:
    pg = opposite(load_postgroup(args.file))
    _emit_table(save_postgroup(pg, args.out), args.out)
    return 0


def cmd_make_trivial(args: argparse.Namespace) -> int:
    pg = trivial_postgroup(load_group(args.group))
    _emit_table(save_postgroup(pg, args.out), args.out)
    return 0


def cmd_make_conjugation(args: argparse.Namespace) -> int:
    pg = conjugation_postgroup(load_group(args.group))
    _emit_table(save_postgroup(pg, args.out), args.out)
    return 0


def cmd_from_action(args: argparse.Namespace) -> int:
    pg = build_gauge_postgroup(load_action(args.file))
    _emit_table(save_postgroup(pg, args.out), args.out)
    return 0


def cmd_kmap_tensor(args: argparse.Namespace) -> int:
    image = kmap_tensor_inverse if args.inverse else kmap_tensor
    label = "K^-1" if args.inverse else "K"
    for word in words_of_degree(args.degree, args.generators):
        value = image(TensorPoly.from_word(word))
        print(f"{label}({format_word(word)}) = {format_poly(value)}")
    return 0


def cmd_check_posthopf(args: argparse.Namespace) -> int:
    ok, detail = operator_axiom_sweep(args.degree)
    print(f"operator and bracket axioms: {'OK' if ok else 'FAIL'}; {detail}")
    return 0 if ok else 1


def cmd_magnus(args: argparse.Namespace) -> int:
    if args.generators != 1:
        raise SchemaError("the series solver supports exactly one generator")
    x = Leaf(0)
    omega = magnus_gl(x, args.order)
    for k, coeff in enumerate(omega.coeffs):
        print(f"Omega[{k}] = {format_poly(coeff)}")
    failures = 0
    for label, report in (
        ("deformation ODE", check_alpha_ode(x, args.order)),
        ("flow equals the twist of exp", flow_matches_twisted_exp(x, args.order)),
        (
            "log of the flow is primitive",
            check_primitivity_of_log(solve_right_flow(x, args.order)),
        ),
    ):
        if report.ok:
            print(f"{label}: OK")
        else:
            print(f"{label}: FAIL ({report.witness})")
            failures += 1
    return 1 if failures else 0


def cmd_selftest(args: argparse.Namespace) -> int:
    results = run_acceptance(seed=_resolve_seed(args), level=args.level)
    for result in results:
        verdict = "PASS" if result.ok else "FAIL"
        print(f"{verdict} {result.name}: {result.detail} ({result.seconds:.2f}s)")
    passed = sum(1 for r in results if r.ok)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must not be negative")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="postgroup-lab",
        description="Exact arithmetic for post-groups, braidings, and the twist map.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, handler, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=handler)
        return p

    p = verb("validate-magma", cmd_validate_magma, "check a magma file")
    p.add_argument("file")
    p.add_argument("--out", help="rewrite the validated table")

    for name, handler, help in (
        ("act", cmd_act, "apply a word to a word"),
        ("star", cmd_star, "second group product of two words"),
    ):
        p = verb(name, handler, help)
        p.add_argument("--magma", required=True)
        p.add_argument("words", nargs=2, metavar="word")

    for name, handler, help in (
        ("star-inv", cmd_star_inv, "inverse for the second group product"),
        ("jmap", cmd_jmap, "isomorphism onto the second group"),
        ("kmap", cmd_kmap, "inverse of jmap"),
    ):
        p = verb(name, handler, help)
        p.add_argument("--magma", required=True)
        p.add_argument("word")

    p = verb("check-postgroup", cmd_check_postgroup, "full law suite for a table")
    p.add_argument("file")

    p = verb("braiding", cmd_braiding, "print the derived braiding")
    p.add_argument("file")
    p.add_argument("--out", help="also write the braiding as JSON")

    p = verb("ybe", cmd_ybe, "check the Yang-Baxter equation")
    p.add_argument("file")

    for name, handler, help in (
        ("to-brace", cmd_to_brace, "post-group file to skew brace file"),
        ("from-brace", cmd_from_brace, "skew brace file to post-group file"),
        ("opposite", cmd_opposite, "opposite post-group of a table"),
    ):
        p = verb(name, handler, help)
        p.add_argument("file")
        p.add_argument("--out", help="write here instead of stdout")

    for name, handler, help in (
        ("make-trivial", cmd_make_trivial, "trivial post-group on a group"),
        ("make-conjugation", cmd_make_conjugation, "conjugation post-group"),
    ):
        p = verb(name, handler, help)
        p.add_argument("--group", required=True)
        p.add_argument("--out", help="write here instead of stdout")

    p = verb("from-action", cmd_from_action, "gauge post-group of a right action")
    p.add_argument("file")
    p.add_argument("--out", help="write here instead of stdout")

    p = verb("kmap-tensor", cmd_kmap_tensor, "twist map on a homogeneous basis")
    p.add_argument("--generators", type=_positive, required=True)
    p.add_argument("--degree", type=_nonnegative, required=True)
    p.add_argument("--inverse", action="store_true")

    p = verb("check-posthopf", cmd_check_posthopf, "operator axiom sweep")
    p.add_argument("--degree", type=_nonnegative, required=True)

    p = verb("magnus", cmd_magnus, "series solver with identity checks")
    p.add_argument("--order", type=_nonnegative, required=True)
    p.add_argument("--generators", type=_positive, default=1)

    p = verb("selftest", cmd_selftest, "run the acceptance criteria")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", choices=("quick", "full"), default="quick")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AxiomError, NotPrimitiveError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
