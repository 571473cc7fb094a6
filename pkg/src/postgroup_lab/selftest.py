"""Acceptance suite: nine exact criteria over the whole library.

Each criterion is a function returning (ok, detail); the runner times
them, enforces the per-criterion budgets, and never converts an
exception into silence: a crash is reported as a failure with the
exception text.  The quick level is the contract; the full level
widens the sweeps (extra magma, degree 5 sweeps, order 6 series) and
scales the budgets accordingly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from time import perf_counter

from .errors import DiagonalityError, ShapeError
from .words import dot
from .perms import compose_perm
from .magma import (
    cyclic_shift_magma,
    shift_family_magma,
    trivial_magma,
    validate_magma,
)
from .free_postgroup import (
    act,
    act_perm,
    gl_product,
    jmap,
    kmap,
    random_word,
)
from .finite_postgroup import (
    BraidMap,
    braiding,
    check_braid_equation,
    check_involutive,
    check_ybe,
    conjugation_postgroup,
    cyclic_group,
    gl_group,
    invert_braiding,
    is_pregroup,
    opposite,
    postgroup_from_braided,
    skew_brace_to_postgroup,
    symmetric_group,
    to_skew_brace,
    trivial_postgroup,
    validate_postgroup,
)
from .action_postgroup import build_gauge_postgroup, validate_action
from .tensor_postlie import (
    Leaf,
    Node,
    TensorPoly,
    TensorPolyPair,
    antipode_star,
    check_postlie_axioms,
    concat,
    gl_lie_bracket,
    gl_star,
    kmap_tensor,
    pair_tensor,
    triangle,
    trees_of_degree,
    unshuffle,
    words_of_degree,
)
from .magnus import (
    TruncatedSeries,
    alpha_series,
    bernoulli_modified,
    check_alpha_ode,
    check_primitivity_of_log,
    exp_dot_series,
    exp_star_series,
    magnus_gl,
    solve_right_flow,
)
from fractions import Fraction


@dataclass(frozen=True)
class CriterionResult:
    name: str
    ok: bool
    detail: str
    seconds: float

    def __bool__(self) -> bool:
        return self.ok


def acceptance_corpus():
    """The finite tables every exhaustive criterion runs over."""
    groups = (
        ("Z/2", cyclic_group(2)),
        ("Z/3", cyclic_group(3)),
        ("Z/4", cyclic_group(4)),
        ("S3", symmetric_group(3)),
    )
    entries = []
    for label, group in groups:
        entries.append((f"trivial {label}", trivial_postgroup(group)))
        entries.append((f"conjugation {label}", conjugation_postgroup(group)))
    fixing = validate_action(cyclic_group(2), ("p", "q"), ((0, 0), (1, 1)))
    entries.append(("gauge Z/2 on 2 points", build_gauge_postgroup(fixing)))
    return entries


def _criterion_free_laws(seed: int, level: str):
    magmas = [cyclic_shift_magma(3), trivial_magma(("x0", "x1", "x2"))]
    if level == "full":
        magmas.append(shift_family_magma((0, 2, 1)))
    rng = random.Random(seed)
    rounds = 2000
    for magma in magmas:
        for _ in range(rounds):
            u = random_word(magma.alphabet, rng, 10)
            v = random_word(magma.alphabet, rng, 10)
            w = random_word(magma.alphabet, rng, 10)
            if act(magma, gl_product(magma, u, v), w) != act(magma, u, act(magma, v, w)):
                return False, f"star action law fails on {u} {v} {w}"
            if act(magma, u, dot(v, w)) != dot(act(magma, u, v), act(magma, u, w)):
                return False, f"automorphism law fails on {u} {v} {w}"
            if act_perm(magma, gl_product(magma, u, v)) != compose_perm(
                act_perm(magma, u), act_perm(magma, v)
            ):
                return False, f"permutation homomorphism fails on {u} {v}"
    return True, f"{rounds} random triples on each of {len(magmas)} magmas"


def _criterion_jk_roundtrips(seed: int, level: str):
    magmas = [cyclic_shift_magma(3)]
    if level == "full":
        magmas.append(shift_family_magma((0, 2, 1)))
    rng = random.Random(seed)
    rounds = 1000
    for magma in magmas:
        previous = None
        for _ in range(rounds):
            u = random_word(magma.alphabet, rng, 12)
            if kmap(magma, jmap(magma, u)) != u:
                return False, f"kmap does not undo jmap on {u}"
            if jmap(magma, kmap(magma, u)) != u:
                return False, f"jmap does not undo kmap on {u}"
            if previous is not None:
                left = jmap(magma, dot(previous, u))
                right = gl_product(magma, jmap(magma, previous), jmap(magma, u))
                if left != right:
                    return False, f"jmap is not multiplicative on {previous}, {u}"
            previous = u
    return True, f"{rounds} random words per magma, both roundtrips and products"


def _criterion_finite_corpus(seed: int, level: str):
    entries = acceptance_corpus()
    for label, pg in entries:
        validate_postgroup(pg.elements, pg.dot, pg.triangle)
        braid = braiding(pg)
        result = check_braid_equation(braid)
        if not result.ok:
            return False, f"{label}: braid equation fails at {result.witness}"
        result = check_ybe(braid)
        if not result.ok:
            return False, f"{label}: Yang-Baxter fails at {result.witness}"
        brace = to_skew_brace(pg)
        if skew_brace_to_postgroup(brace) != pg:
            return False, f"{label}: brace roundtrip is not the identity"
        rebuilt = postgroup_from_braided(gl_group(pg), braid)
        if rebuilt != pg:
            return False, f"{label}: braided roundtrip is not the identity"
        flipped = opposite(pg)
        if braiding(flipped) != invert_braiding(braid):
            return False, f"{label}: opposite braiding is not the inverse"
        if gl_group(flipped) != gl_group(pg):
            return False, f"{label}: opposite has a different star group"
    return True, f"{len(entries)} tables, exhaustive law suite"


def _criterion_pregroup_involutive(seed: int, level: str):
    entries = acceptance_corpus()
    checked = 0
    for label, pg in entries:
        if not is_pregroup(pg):
            continue
        checked += 1
        result = check_involutive(braiding(pg))
        if not result.ok:
            return False, f"{label}: braiding squared is not the identity"
    return True, f"{checked} pre-groups, sigma is an involution on each"


def _criterion_twist_golden_values(seed: int, level: str):
    x1, x2, x3 = Leaf(0), Leaf(1), Leaf(2)
    two = kmap_tensor(TensorPoly.from_word((x1, x2)))
    expected_two = TensorPoly({(x1, x2): 1, (Node(x1, x2),): -1})
    if two != expected_two:
        return False, "two letter expansion is wrong"
    three = kmap_tensor(TensorPoly.from_word((x1, x2, x3)))
    expected_three = TensorPoly({
        (x1, x2, x3): 1,
        (x1, Node(x2, x3)): -1,
        (Node(x1, x2), x3): -1,
        (x2, Node(x1, x3)): -1,
        (Node(x2, Node(x1, x3)),): 1,
        (Node(Node(x1, x2), x3),): 1,
    })
    if three != expected_three:
        return False, "three letter expansion is wrong"
    if not all(abs(c) == 1 for c in three.terms.values()):
        return False, "three letter expansion has a coefficient off unit size"
    return True, "two and six term expansions match with unit coefficients"


def _criterion_twist_isomorphism(seed: int, level: str):
    limit = 5 if level == "full" else 4
    by_degree = {d: words_of_degree(d, 2) for d in range(limit + 1)}
    images = {}
    pairs = 0
    for da in range(limit + 1):
        for a in by_degree[da]:
            pa = TensorPoly.from_word(a)
            ka = images.setdefault(a, kmap_tensor(pa))
            got = unshuffle(kmap_tensor(pa))
            expected = TensorPolyPair()
            for (u, v), c in unshuffle(pa).terms.items():
                expected = expected + c * pair_tensor(
                    kmap_tensor(TensorPoly.from_word(u)),
                    kmap_tensor(TensorPoly.from_word(v)),
                )
            if got != expected:
                return False, f"coproduct does not commute with the twist on {a}"
            for db in range(limit - da + 1):
                for b in by_degree[db]:
                    pb = TensorPoly.from_word(b)
                    kb = images.setdefault(b, kmap_tensor(pb))
                    pairs += 1
                    if kmap_tensor(gl_star(pa, pb)) != concat(ka, kb):
                        return False, f"product law fails on {a}, {b}"
    return True, f"{pairs} basis pairs through total degree {limit}"


def _criterion_operator_axioms(seed: int, level: str):
    return operator_axiom_sweep(5 if level == "full" else 4)


def operator_axiom_sweep(limit: int):
    """Exhaustive operator and bracket axiom suite through a total degree.

    Checks, over 2 generators: the product splitting of the triangle,
    the star action law, both axioms of the induced bracket action in
    the original and opposite form, the twisted bracket as the star
    commutator on primitives, and the recovery of the plain product
    from the twisted one.
    """
    by_degree = {d: words_of_degree(d, 2) for d in range(limit + 1)}
    word_triples = 0
    for da in range(limit + 1):
        for a in by_degree[da]:
            pa = TensorPoly.from_word(a)
            legs = unshuffle(pa).terms
            for db in range(limit - da + 1):
                for b in by_degree[db]:
                    pb = TensorPoly.from_word(b)
                    star_ab = gl_star(pa, pb)
                    for dc in range(limit - da - db + 1):
                        for c in by_degree[dc]:
                            pc = TensorPoly.from_word(c)
                            word_triples += 1
                            split = TensorPoly.zero()
                            for (a1, a2), coeff in legs.items():
                                split = split + coeff * concat(
                                    triangle(TensorPoly.from_word(a1), pb),
                                    triangle(TensorPoly.from_word(a2), pc),
                                )
                            if triangle(pa, concat(pb, pc)) != split:
                                return False, f"product split fails on {a}, {b}, {c}"
                            if triangle(star_ab, pc) != triangle(pa, triangle(pb, pc)):
                                return False, f"action law fails on {a}, {b}, {c}"
    trees = [t for d in range(1, limit) for t in trees_of_degree(d, 2)]
    tree_degrees = {t: d for d in range(1, limit) for t in trees_of_degree(d, 2)}
    lie_triples = 0
    for x, y, z in itertools.product(trees, repeat=3):
        if tree_degrees[x] + tree_degrees[y] + tree_degrees[z] > limit:
            continue
        lie_triples += 1
        report = check_postlie_axioms(
            TensorPoly.from_word((x,)),
            TensorPoly.from_word((y,)),
            TensorPoly.from_word((z,)),
        )
        if not report.ok:
            return False, f"{report.witness} on trees {x}, {y}, {z}"
    for x, y in itertools.product(trees, repeat=2):
        if tree_degrees[x] + tree_degrees[y] > limit:
            continue
        px, py = TensorPoly.from_word((x,)), TensorPoly.from_word((y,))
        if gl_lie_bracket(px, py) != gl_star(px, py) - gl_star(py, px):
            return False, f"twisted bracket is not the star commutator on {x}, {y}"
    remark_pairs = 0
    for da in range(limit + 1):
        for a in by_degree[da]:
            pa = TensorPoly.from_word(a)
            legs = unshuffle(pa).terms
            for db in range(limit - da + 1):
                for b in by_degree[db]:
                    pb = TensorPoly.from_word(b)
                    remark_pairs += 1
                    total = TensorPoly.zero()
                    for (a1, a2), coeff in legs.items():
                        total = total + coeff * gl_star(
                            TensorPoly.from_word(a1),
                            triangle(antipode_star(TensorPoly.from_word(a2)), pb),
                        )
                    if total != concat(pa, pb):
                        return False, f"twisted recovery of a.b fails on {a}, {b}"
    return True, (
        f"{word_triples} word triples, {lie_triples} tree triples, "
        f"{remark_pairs} recovery pairs through total degree {limit}"
    )


def _criterion_magnus_flow(seed: int, level: str):
    order = 6 if level == "full" else 5
    x = Leaf(0)
    report = check_alpha_ode(x, order)
    if not report.ok:
        return False, report.witness
    flow = solve_right_flow(x, order)
    exp = exp_dot_series(x, order)
    for k in range(order + 1):
        if flow.coeff(k) != kmap_tensor(exp.coeff(k)):
            return False, f"flow deviates from the twist of exp at order {k}"
    report = check_primitivity_of_log(flow)
    if not report.ok:
        return False, report.witness
    if exp_star_series(magnus_gl(x, order)) != exp:
        return False, "twisted exp of the Magnus series misses exp"
    listed = (
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 6),
        Fraction(0),
        Fraction(-1, 30),
        Fraction(0),
        Fraction(1, 42),
    )
    got = tuple(bernoulli_modified(n) for n in range(7))
    if got != listed:
        return False, f"modified Bernoulli prefix is {got}"
    return True, f"all flow and Magnus identities through order {order}"


def _criterion_negative_controls(seed: int, level: str):
    try:
        validate_magma(("0", "1"), ((0, 1), (1, 0)))
        return False, "the additive two element magma was not rejected"
    except DiagonalityError:
        pass
    braid = braiding(trivial_postgroup(cyclic_group(3)))
    left = [list(row) for row in braid.left]
    right = [list(row) for row in braid.right]
    left[0][0], left[0][1] = left[0][1], left[0][0]
    right[0][0], right[0][1] = right[0][1], right[0][0]
    corrupted = BraidMap(
        braid.elements,
        tuple(tuple(row) for row in left),
        tuple(tuple(row) for row in right),
    )
    result = check_braid_equation(corrupted)
    if result.ok:
        return False, "the corrupted braiding still satisfies the braid equation"
    if result.witness is None:
        return False, "the corrupted braiding failed without a witness"
    x = Leaf(0)
    alpha = alpha_series(x, 4)
    broken = list(alpha.coeffs)
    broken[2] = broken[2] + TensorPoly.from_word((Node(x, Node(x, x)),))
    report = check_alpha_ode(x, 4, series=TruncatedSeries(tuple(broken)))
    if report.ok:
        return False, "the perturbed deformation series passed the flow check"
    if "order 1" not in (report.witness or ""):
        return False, f"perturbation was caught at the wrong place: {report.witness}"
    return True, f"all three controls rejected; braid witness {result.witness}"


CRITERIA = (
    ("free-postgroup-laws", _criterion_free_laws, 5.0),
    ("jmap-kmap-isomorphism", _criterion_jk_roundtrips, 5.0),
    ("finite-corpus-suite", _criterion_finite_corpus, 10.0),
    ("pregroup-involutivity", _criterion_pregroup_involutive, 10.0),
    ("twist-golden-values", _criterion_twist_golden_values, 5.0),
    ("twist-hopf-isomorphism", _criterion_twist_isomorphism, 60.0),
    ("posthopf-postlie-axioms", _criterion_operator_axioms, 60.0),
    ("magnus-flow-identities", _criterion_magnus_flow, 120.0),
    ("negative-controls", _criterion_negative_controls, 10.0),
)


def run_acceptance(seed: int = 0, level: str = "quick"):
    """Run all nine criteria; returns a tuple of CriterionResult."""
    if level not in ("quick", "full"):
        raise ShapeError(f"unknown level {level!r}, expected quick or full")
    scale = 4.0 if level == "full" else 1.0
    results = []
    for name, fn, budget in CRITERIA:
        start = perf_counter()
        try:
            ok, detail = fn(seed, level)
        except Exception as exc:
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        seconds = perf_counter() - start
        if ok and seconds >= budget * scale:
            ok = False
            detail = f"{detail}; took {seconds:.1f}s against {budget * scale:.0f}s"
        results.append(CriterionResult(name, ok, detail, seconds))
    return tuple(results)
