"""Finite post-groups as pairs of tables, with braided-group,
Yang-Baxter, and skew-brace conversions.

A post-group here is a group table (the dot product) together with a
triangle table whose rows are dot automorphisms satisfying the
weighted associativity law (a * b) |> c = a |> (b |> c), where
a * b := a . (a |> b).  The derived * table is again a group on the
same elements, the Grossman-Larson group of the structure.

Every check in this module is exhaustive and reports a witness in
element names.  Checks refuse tables larger than max_size elements
(default 64); pass max_size=None to lift the cap.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

from .errors import (
    AutomorphismError,
    BraidedGroupError,
    GroupAxiomError,
    PostGroupLawError,
    ShapeError,
    SizeCapError,
    SkewBraceLawError,
)
from .jsonio import dump_json, load_json_object, name_list, require_keys
from .perms import compose_perm, invert_perm

DEFAULT_MAX_SIZE = 64


def _check_size(n: int, max_size: int | None, what: str) -> None:
    if max_size is not None and n > max_size:
        raise SizeCapError(
            f"{what} on {n} elements exceeds the exhaustive-check cap "
            f"of {max_size}; pass max_size=None to force"
        )


def _check_table_shape(
    n: int, table: Sequence[Sequence[int]], what: str
) -> tuple[tuple[int, ...], ...]:
    if len(table) != n:
        raise ShapeError(f"{what} has {len(table)} rows for {n} elements")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise ShapeError(f"{what} row {i} has length {len(row)}, expected {n}")
        for value in row:
            if not isinstance(value, int) or not 0 <= value < n:
                raise ShapeError(f"{what} row {i} has out-of-range entry {value!r}")
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class GroupTable:
    """A finite group: multiplication table plus unit and inverses."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    unit: int
    inv: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def name(self, i: int) -> str:
        return self.elements[i]


def validate_group(
    elements: Sequence[str],
    table: Sequence[Sequence[int]],
    *,
    max_size: int | None = DEFAULT_MAX_SIZE,
    what: str = "group",
) -> GroupTable:
    """Exhaustive group axioms: unit, associativity, inverses."""
    names = tuple(elements)
    n = len(names)
    if n == 0:
        raise ShapeError(f"{what} needs at least one element")
    _check_size(n, max_size, f"{what} validation")
    rows = _check_table_shape(n, table, what)

    unit = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            unit = e
            break
    if unit is None:
        raise GroupAxiomError(f"{what} has no two-sided unit")

    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            row_ab = rows[ab]
            row_a = rows[a]
            for c in range(n):
                if row_ab[c] != row_a[rows[b][c]]:
                    raise GroupAxiomError(
                        f"{what} is not associative at "
                        f"({names[a]}, {names[b]}, {names[c]}): "
                        f"({names[a]}.{names[b]}).{names[c]} = "
                        f"{names[row_ab[c]]} but "
                        f"{names[a]}.({names[b]}.{names[c]}) = "
                        f"{names[row_a[rows[b][c]]]}",
                        witness=(a, b, c),
                    )

    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if rows[a][b] == unit and rows[b][a] == unit:
                inv[a] = b
                break
        if inv[a] is None:
            raise GroupAxiomError(
                f"{what} element {names[a]} has no inverse", witness=(a,)
            )

    return GroupTable(names, rows, unit, tuple(inv))


@dataclass(frozen=True)
class PostGroupTable:
    """A validated finite post-group: dot group plus triangle action."""

    elements: tuple[str, ...]
    dot: tuple[tuple[int, ...], ...]
    triangle: tuple[tuple[int, ...], ...]
    unit: int
    inv: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def name(self, i: int) -> str:
        return self.elements[i]

    def dot_mul(self, a: int, b: int) -> int:
        return self.dot[a][b]

    def tri(self, a: int, b: int) -> int:
        return self.triangle[a][b]

    def star(self, a: int, b: int) -> int:
        return self.dot[a][self.triangle[a][b]]

    def dot_group(self) -> GroupTable:
        return GroupTable(self.elements, self.dot, self.unit, self.inv)


def validate_postgroup(
    elements: Sequence[str],
    dot: Sequence[Sequence[int]],
    triangle: Sequence[Sequence[int]],
    *,
    max_size: int | None = DEFAULT_MAX_SIZE,
) -> PostGroupTable:
    """Check the dot group, the automorphism property of every row of
    the triangle table, and the weighted associativity law."""
    group = validate_group(elements, dot, max_size=max_size, what="dot product")
    names = group.elements
    n = len(names)
    rows = _check_table_shape(n, triangle, "triangle")

    for a in range(n):
        row = rows[a]
        seen = set(row)
        if len(seen) != n:
            raise AutomorphismError(
                f"triangle row {names[a]} is not a bijection", witness=(a,)
            )
        for b in range(n):
            for c in range(n):
                if row[group.table[b][c]] != group.table[row[b]][row[c]]:
                    raise AutomorphismError(
                        f"{names[a]} |> - does not respect the dot product at "
                        f"({names[b]}, {names[c]}): "
                        f"{names[a]} |> ({names[b]}.{names[c]}) = "
                        f"{names[row[group.table[b][c]]]} but "
                        f"({names[a]} |> {names[b]}).({names[a]} |> {names[c]}) = "
                        f"{names[group.table[row[b]][row[c]]]}",
                        witness=(a, b, c),
                    )

    for a in range(n):
        for b in range(n):
            star_ab = group.table[a][rows[a][b]]
            for c in range(n):
                if rows[star_ab][c] != rows[a][rows[b][c]]:
                    raise PostGroupLawError(
                        f"weighted associativity fails at "
                        f"({names[a]}, {names[b]}, {names[c]}): "
                        f"({names[a]}*{names[b]}) |> {names[c]} = "
                        f"{names[rows[star_ab][c]]} but "
                        f"{names[a]} |> ({names[b]} |> {names[c]}) = "
                        f"{names[rows[a][rows[b][c]]]}",
                        witness=(a, b, c),
                    )

    return PostGroupTable(names, group.table, rows, group.unit, group.inv)


def gl_star_table(pg: PostGroupTable) -> tuple[tuple[int, ...], ...]:
    n = len(pg)
    return tuple(
        tuple(pg.dot[a][pg.triangle[a][b]] for b in range(n)) for a in range(n)
    )


def gl_star_inverse(pg: PostGroupTable) -> tuple[int, ...]:
    """The *-inverse column: a^{*-1} = L_a^{-1}(a^{.-1})."""
    out = []
    for a in range(len(pg)):
        row_inv = invert_perm(pg.triangle[a])
        out.append(row_inv[pg.inv[a]])
    return tuple(out)


def gl_group(
    pg: PostGroupTable, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> GroupTable:
    """The * product as a validated group with the same unit."""
    star = gl_star_table(pg)
    group = validate_group(pg.elements, star, max_size=max_size, what="star product")
    if group.unit != pg.unit:
        raise PostGroupLawError("star product changed the unit")
    if group.inv != gl_star_inverse(pg):
        raise PostGroupLawError("star inverses disagree with L_a^{-1}(a^{.-1})")
    return group


def opposite(
    pg: PostGroupTable, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> PostGroupTable:
    """The opposite post-group on the reversed dot product.

    The companion action a |>' b = a . (a |> b) . a^{.-1} keeps the
    same * product while the dot product reverses.
    """
    n = len(pg)
    dot_op = tuple(tuple(pg.dot[b][a] for b in range(n)) for a in range(n))
    tri_op = tuple(
        tuple(
            pg.dot[pg.dot[a][pg.triangle[a][b]]][pg.inv[a]] for b in range(n)
        )
        for a in range(n)
    )
    return validate_postgroup(pg.elements, dot_op, tri_op, max_size=max_size)


def is_pregroup(pg: PostGroupTable) -> bool:
    """A pre-group is a post-group whose dot product is abelian."""
    n = len(pg)
    return all(pg.dot[a][b] == pg.dot[b][a] for a in range(n) for b in range(n))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one exhaustive check, with a witness when it fails."""

    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class BraidMap:
    """A candidate braiding sigma(g, h) = (left[g][h], right[g][h])."""

    elements: tuple[str, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.elements)

    def sigma(self, g: int, h: int) -> tuple[int, int]:
        return (self.left[g][h], self.right[g][h])


def braiding(
    pg: PostGroupTable, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> BraidMap:
    """The braiding sigma(g, h) = (g |> h, (g |> h)^{*-1} * g * h).

    The result is verified to satisfy the braided-group axioms over
    the * group before being returned.
    """
    n = len(pg)
    star = gl_star_table(pg)
    star_inv = gl_star_inverse(pg)
    left = pg.triangle
    right = tuple(
        tuple(star[star_inv[left[g][h]]][star[g][h]] for h in range(n))
        for g in range(n)
    )
    braid = BraidMap(pg.elements, left, right)
    verify_braided_group(gl_group(pg, max_size=max_size), braid, max_size=max_size)
    return braid


def verify_braided_group(
    group: GroupTable,
    braid: BraidMap,
    *,
    max_size: int | None = DEFAULT_MAX_SIZE,
) -> None:
    """Braided-group axioms for sigma over the group product.

    Checks that sigma is a bijection of pairs, that the two components
    are a left and a right action of the group on itself, and that
    multiplying the components recovers the product.  Together these
    force the braid equation to hold, which check_braid_equation
    confirms independently.
    """
    names = group.elements
    n = len(names)
    if braid.elements != names:
        raise BraidedGroupError("braiding and group use different element names")
    _check_size(n, max_size, "braided-group verification")
    mul = group.table
    e = group.unit

    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for g in range(n):
        for h in range(n):
            image = (braid.left[g][h], braid.right[g][h])
            if image in seen:
                g0, h0 = seen[image]
                raise BraidedGroupError(
                    f"sigma is not injective: sigma({names[g0]}, {names[h0]}) "
                    f"== sigma({names[g]}, {names[h]})",
                    witness=(g0, h0, g, h),
                )
            seen[image] = (g, h)

    for h in range(n):
        if braid.left[e][h] != h:
            raise BraidedGroupError(
                f"unit fails to act trivially on the left: "
                f"e -> {names[h]} gives {names[braid.left[e][h]]}",
                witness=(e, h),
            )
    for g in range(n):
        if braid.right[g][e] != g:
            raise BraidedGroupError(
                f"unit fails to act trivially on the right: "
                f"{names[g]} <- e gives {names[braid.right[g][e]]}",
                witness=(g, e),
            )

    for g in range(n):
        for h in range(n):
            gh = mul[g][h]
            for k in range(n):
                if braid.left[gh][k] != braid.left[g][braid.left[h][k]]:
                    raise BraidedGroupError(
                        f"left component is not an action at "
                        f"({names[g]}, {names[h]}, {names[k]})",
                        witness=(g, h, k),
                    )
                if braid.right[k][gh] != braid.right[braid.right[k][g]][h]:
                    raise BraidedGroupError(
                        f"right component is not an action at "
                        f"({names[k]}, {names[g]}, {names[h]})",
                        witness=(k, g, h),
                    )

    for g in range(n):
        for h in range(n):
            if mul[braid.left[g][h]][braid.right[g][h]] != mul[g][h]:
                raise BraidedGroupError(
                    f"compatibility fails at ({names[g]}, {names[h]}): "
                    f"(g -> h) * (g <- h) is not g * h",
                    witness=(g, h),
                )


def invert_braiding(braid: BraidMap) -> BraidMap:
    """The inverse bijection of pairs, as another BraidMap."""
    n = len(braid)
    left = [[0] * n for _ in range(n)]
    right = [[0] * n for _ in range(n)]
    for g in range(n):
        for h in range(n):
            a, b = braid.left[g][h], braid.right[g][h]
            left[a][b] = g
            right[a][b] = h
    return BraidMap(
        braid.elements,
        tuple(tuple(row) for row in left),
        tuple(tuple(row) for row in right),
    )


def check_braid_equation(
    braid: BraidMap, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> CheckResult:
    """(sigma x 1)(1 x sigma)(sigma x 1) == (1 x sigma)(sigma x 1)(1 x sigma)
    on all triples."""
    names = braid.elements
    n = len(names)
    _check_size(n, max_size, "braid equation check")

    def s12(t):
        a, b = braid.sigma(t[0], t[1])
        return (a, b, t[2])

    def s23(t):
        a, b = braid.sigma(t[1], t[2])
        return (t[0], a, b)

    for g in range(n):
        for h in range(n):
            for k in range(n):
                t = (g, h, k)
                lhs = s12(s23(s12(t)))
                rhs = s23(s12(s23(t)))
                if lhs != rhs:
                    return CheckResult(
                        False,
                        f"braid equation fails at ({names[g]}, {names[h]}, "
                        f"{names[k]}): lhs {_triple(names, lhs)} != rhs "
                        f"{_triple(names, rhs)}",
                    )
    return CheckResult(True)


def check_ybe(
    braid: BraidMap, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> CheckResult:
    """R12 R13 R23 == R23 R13 R12 for R = flip after sigma."""
    names = braid.elements
    n = len(names)
    _check_size(n, max_size, "Yang-Baxter check")

    def rmap(g, h):
        a, b = braid.sigma(g, h)
        return (b, a)

    def r12(t):
        a, b = rmap(t[0], t[1])
        return (a, b, t[2])

    def r23(t):
        a, b = rmap(t[1], t[2])
        return (t[0], a, b)

    def r13(t):
        a, b = rmap(t[0], t[2])
        return (a, t[1], b)

    for g in range(n):
        for h in range(n):
            for k in range(n):
                t = (g, h, k)
                lhs = r12(r13(r23(t)))
                rhs = r23(r13(r12(t)))
                if lhs != rhs:
                    return CheckResult(
                        False,
                        f"Yang-Baxter fails at ({names[g]}, {names[h]}, "
                        f"{names[k]}): lhs {_triple(names, lhs)} != rhs "
                        f"{_triple(names, rhs)}",
                    )
    return CheckResult(True)


def check_involutive(braid: BraidMap) -> CheckResult:
    """sigma after sigma is the identity on pairs."""
    names = braid.elements
    n = len(names)
    for g in range(n):
        for h in range(n):
            if braid.sigma(*braid.sigma(g, h)) != (g, h):
                return CheckResult(
                    False,
                    f"sigma^2 moves the pair ({names[g]}, {names[h]})",
                )
    return CheckResult(True)


def _triple(names: tuple[str, ...], t: tuple[int, int, int]) -> str:
    return "(" + ", ".join(names[i] for i in t) + ")"


def postgroup_from_braided(
    group: GroupTable,
    braid: BraidMap,
    *,
    max_size: int | None = DEFAULT_MAX_SIZE,
) -> PostGroupTable:
    """Rebuild the post-group from a braided group over (G, *).

    The action is the left component of sigma and the dot product is
    g . h := g * (g^{*-1} -> h).
    """
    verify_braided_group(group, braid, max_size=max_size)
    n = len(group)
    dot = tuple(
        tuple(group.table[g][braid.left[group.inv[g]][h]] for h in range(n))
        for g in range(n)
    )
    return validate_postgroup(group.elements, dot, braid.left, max_size=max_size)


@dataclass(frozen=True)
class SkewBrace:
    """One set with two group structures tied by the brace law."""

    elements: tuple[str, ...]
    dot: tuple[tuple[int, ...], ...]
    star: tuple[tuple[int, ...], ...]
    unit: int

    def __len__(self) -> int:
        return len(self.elements)


def validate_skew_brace(
    elements: Sequence[str],
    dot: Sequence[Sequence[int]],
    star: Sequence[Sequence[int]],
    *,
    max_size: int | None = DEFAULT_MAX_SIZE,
) -> SkewBrace:
    """Both tables must be groups with one unit, and the law
    g * (h . k) = (g * h) . g^{.-1} . (g * k) must hold on all triples."""
    dot_group = validate_group(elements, dot, max_size=max_size, what="dot product")
    star_group = validate_group(elements, star, max_size=max_size, what="star product")
    names = dot_group.elements
    n = len(names)
    if dot_group.unit != star_group.unit:
        raise SkewBraceLawError(
            f"the two products have different units: "
            f"{names[dot_group.unit]} and {names[star_group.unit]}"
        )
    d, s, inv = dot_group.table, star_group.table, dot_group.inv
    for g in range(n):
        for h in range(n):
            for k in range(n):
                lhs = s[g][d[h][k]]
                rhs = d[d[s[g][h]][inv[g]]][s[g][k]]
                if lhs != rhs:
                    raise SkewBraceLawError(
                        f"skew brace law fails at ({names[g]}, {names[h]}, "
                        f"{names[k]}): g*(h.k) = {names[lhs]} but "
                        f"(g*h).g^(-1).(g*k) = {names[rhs]}",
                        witness=(g, h, k),
                    )
    return SkewBrace(names, dot_group.table, star_group.table, dot_group.unit)


def to_skew_brace(
    pg: PostGroupTable, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> SkewBrace:
    """Forget the action, keep the two products."""
    return validate_skew_brace(
        pg.elements, pg.dot, gl_star_table(pg), max_size=max_size
    )


def skew_brace_to_postgroup(
    brace: SkewBrace, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> PostGroupTable:
    """Recover the action as g |> h := g^{.-1} . (g * h)."""
    dot_group = validate_group(
        brace.elements, brace.dot, max_size=max_size, what="dot product"
    )
    n = len(brace)
    triangle = tuple(
        tuple(brace.dot[dot_group.inv[g]][brace.star[g][h]] for h in range(n))
        for g in range(n)
    )
    return validate_postgroup(brace.elements, brace.dot, triangle, max_size=max_size)


def trivial_postgroup(group: GroupTable) -> PostGroupTable:
    """g |> h = h.  The * product is the group itself."""
    n = len(group)
    identity_rows = tuple(tuple(range(n)) for _ in range(n))
    return validate_postgroup(group.elements, group.table, identity_rows)


def conjugation_postgroup(group: GroupTable) -> PostGroupTable:
    """The opposite product with the conjugation action g h g^{.-1}.

    Its * product is the original group product.
    """
    n = len(group)
    dot_op = tuple(tuple(group.table[h][g] for h in range(n)) for g in range(n))
    triangle = tuple(
        tuple(group.table[group.table[g][h]][group.inv[g]] for h in range(n))
        for g in range(n)
    )
    return validate_postgroup(group.elements, dot_op, triangle)


def cyclic_group(n: int) -> GroupTable:
    """Z/n with elements named 0 .. n-1."""
    elements = tuple(str(i) for i in range(n))
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_group(elements, table)


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + "".join(str(i) for i in cycle) + ")")
    return "".join(parts) if parts else "id"


def symmetric_group(n: int) -> GroupTable:
    """S_n with cycle-notation names; products compose right to left."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    elements = tuple(_cycle_name(p) for p in perms)
    table = [
        [index[compose_perm(p, q)] for q in perms] for p in perms
    ]
    return validate_group(elements, table)


def postgroup_to_json(pg: PostGroupTable) -> dict:
    names = pg.elements
    return {
        "elements": list(names),
        "dot": [[names[v] for v in row] for row in pg.dot],
        "triangle": [[names[v] for v in row] for row in pg.triangle],
    }


def skew_brace_to_json(brace: SkewBrace) -> dict:
    names = brace.elements
    return {
        "elements": list(names),
        "dot": [[names[v] for v in row] for row in brace.dot],
        "star": [[names[v] for v in row] for row in brace.star],
    }


def group_to_json(group: GroupTable) -> dict:
    names = group.elements
    return {
        "elements": list(names),
        "dot": [[names[v] for v in row] for row in group.table],
    }


def _rows_from_names(
    elements: tuple[str, ...], value: object, context: str
) -> list[list[int]]:
    index = {name: i for i, name in enumerate(elements)}
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ShapeError(f"{context}: expected an array of arrays")
    rows = []
    for row in value:
        out = []
        for entry in row:
            if not isinstance(entry, str) or entry not in index:
                raise ShapeError(f"{context}: unknown element {entry!r}")
            out.append(index[entry])
        rows.append(out)
    return rows


def load_postgroup(
    path: str | Path, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> PostGroupTable:
    obj = load_json_object(path)
    require_keys(obj, ("elements", "dot", "triangle"), context=str(path))
    elements = name_list(obj["elements"], context=f"{path}: elements")
    dot = _rows_from_names(elements, obj["dot"], f"{path}: dot")
    triangle = _rows_from_names(elements, obj["triangle"], f"{path}: triangle")
    return validate_postgroup(elements, dot, triangle, max_size=max_size)


def load_skew_brace(
    path: str | Path, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> SkewBrace:
    obj = load_json_object(path)
    require_keys(obj, ("elements", "dot", "star"), context=str(path))
    elements = name_list(obj["elements"], context=f"{path}: elements")
    dot = _rows_from_names(elements, obj["dot"], f"{path}: dot")
    star = _rows_from_names(elements, obj["star"], f"{path}: star")
    return validate_skew_brace(elements, dot, star, max_size=max_size)


def load_group(
    path: str | Path, *, max_size: int | None = DEFAULT_MAX_SIZE
) -> GroupTable:
    obj = load_json_object(path)
    require_keys(obj, ("elements", "dot"), context=str(path))
    elements = name_list(obj["elements"], context=f"{path}: elements")
    dot = _rows_from_names(elements, obj["dot"], f"{path}: dot")
    return validate_group(elements, dot, max_size=max_size)


def save_postgroup(pg: PostGroupTable, path: str | Path | None) -> str:
    return dump_json(postgroup_to_json(pg), path)


def save_skew_brace(brace: SkewBrace, path: str | Path | None) -> str:
    return dump_json(skew_brace_to_json(brace), path)


def save_group(group: GroupTable, path: str | Path | None) -> str:
    return dump_json(group_to_json(group), path)
