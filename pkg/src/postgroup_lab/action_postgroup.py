"""Gauge post-groups from a right action of a group on a finite set.

Given a right action of G on M, the maps f: M -> G form a post-group:
the dot product is pointwise, and the action twists the argument by
the point's translate, (f |> g)(m) = g(m . f(m)).  The derived *
product f * g evaluates f at the point and g at the translate.  This
models gauge transformations over a base of points.

Enumerating all |G|^|M| maps materializes honest tables, so the
builder refuses blowups beyond a configurable cap and then hands the
tables to the exhaustive post-group validator.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .errors import ActionLawError, ShapeError, SizeCapError
from .finite_postgroup import (
    DEFAULT_MAX_SIZE,
    GroupTable,
    PostGroupTable,
    validate_group,
    validate_postgroup,
)
from .jsonio import load_json_object, name_list, require_keys

DEFAULT_ENUMERATION_CAP = 4096


@dataclass(frozen=True)
class RightAction:
    """A validated right action: table[m][g] = m . g."""

    group: GroupTable
    points: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def move(self, m: int, g: int) -> int:
        return self.table[m][g]


def validate_action(
    group: GroupTable, points: Sequence[str], table: Sequence[Sequence[int]]
) -> RightAction:
    """Unit and composition laws, checked over all points and pairs."""
    point_names = tuple(points)
    if not point_names:
        raise ShapeError("action needs at least one point")
    if len(set(point_names)) != len(point_names):
        raise ShapeError("point names must be distinct")
    n_points = len(point_names)
    n_group = len(group)
    if len(table) != n_points:
        raise ShapeError(f"action table has {len(table)} rows for {n_points} points")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n_group:
            raise ShapeError(
                f"action row {point_names[i]!r} has length {len(row)}, "
                f"expected {n_group}"
            )
        for value in row:
            if not isinstance(value, int) or not 0 <= value < n_points:
                raise ShapeError(
                    f"action row {point_names[i]!r} has out-of-range entry {value!r}"
                )
        rows.append(tuple(row))

    e = group.unit
    for m in range(n_points):
        if rows[m][e] != m:
            raise ActionLawError(
                f"unit law fails: {point_names[m]} . e = "
                f"{point_names[rows[m][e]]}",
                witness=(m,),
            )
    for m in range(n_points):
        for g in range(n_group):
            mg = rows[m][g]
            for h in range(n_group):
                if rows[mg][h] != rows[m][group.table[g][h]]:
                    raise ActionLawError(
                        f"composition fails at ({point_names[m]}, "
                        f"{group.elements[g]}, {group.elements[h]}): "
                        f"(m.g).h = {point_names[rows[mg][h]]} but "
                        f"m.(g.h) = {point_names[rows[m][group.table[g][h]]]}",
                        witness=(m, g, h),
                    )
    return RightAction(group, point_names, tuple(rows))


@dataclass(frozen=True)
class GaugeMap:
    """A map from points to group elements, one gauge transformation."""

    action: RightAction
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.action.points):
            raise ShapeError("gauge map must assign one group element per point")


def gauge_dot(f: GaugeMap, g: GaugeMap) -> GaugeMap:
    """(f . g)(m) = f(m) . g(m), the pointwise group product."""
    _same_action(f, g)
    mul = f.action.group.table
    return GaugeMap(
        f.action, tuple(mul[a][b] for a, b in zip(f.values, g.values))
    )


def gauge_act(f: GaugeMap, g: GaugeMap) -> GaugeMap:
    """(f |> g)(m) = g(m . f(m)), evaluation at the translated point."""
    _same_action(f, g)
    action = f.action
    return GaugeMap(
        action,
        tuple(
            g.values[action.table[m][f.values[m]]] for m in range(len(f.values))
        ),
    )


def gauge_gl(f: GaugeMap, g: GaugeMap) -> GaugeMap:
    """(f * g)(m) = f(m) . g(m . f(m)), the derived group product."""
    return gauge_dot(f, gauge_act(f, g))


def _same_action(f: GaugeMap, g: GaugeMap) -> None:
    if f.action != g.action:
        raise ShapeError("gauge maps live over different actions")


def gauge_name(action: RightAction, values: tuple[int, ...]) -> str:
    """Tuple-style name listing group elements in point order."""
    return "(" + ",".join(action.group.elements[v] for v in values) + ")"


def enumerate_gauge_maps(
    action: RightAction, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[GaugeMap]:
    """All maps from points to the group, in lexicographic point order."""
    n_group = len(action.group)
    n_points = len(action.points)
    total = n_group**n_points
    if total > cap:
        raise SizeCapError(
            f"enumerating {total} gauge maps exceeds the cap of {cap}"
        )
    return [
        GaugeMap(action, values)
        for values in product(range(n_group), repeat=n_points)
    ]


def build_gauge_postgroup(
    action: RightAction,
    cap: int = DEFAULT_ENUMERATION_CAP,
    *,
    max_size: int | None = DEFAULT_MAX_SIZE,
) -> PostGroupTable:
    """Materialize the post-group of all gauge maps and validate it.

    The validation itself is exhaustive, so its max_size cap (default
    64) binds sooner than the enumeration cap unless lifted.
    """
    maps = enumerate_gauge_maps(action, cap)
    index = {f.values: i for i, f in enumerate(maps)}
    elements = tuple(gauge_name(action, f.values) for f in maps)
    dot_rows = []
    tri_rows = []
    for f in maps:
        dot_rows.append([index[gauge_dot(f, g).values] for g in maps])
        tri_rows.append([index[gauge_act(f, g).values] for g in maps])
    return validate_postgroup(elements, dot_rows, tri_rows, max_size=max_size)


def load_action(path: str | Path) -> RightAction:
    """Read an action file:

    {"group": {"elements": [...], "table": [[names]]},
     "set": [...point names...],
     "action": {point: {group element: point}}}
    """
    obj = load_json_object(path)
    require_keys(obj, ("group", "set", "action"), context=str(path))

    group_obj = obj["group"]
    if not isinstance(group_obj, dict):
        raise ShapeError(f"{path}: group must be an object")
    require_keys(group_obj, ("elements", "table"), context=f"{path}: group")
    g_elements = name_list(group_obj["elements"], context=f"{path}: group elements")
    g_index = {name: i for i, name in enumerate(g_elements)}
    raw_table = group_obj["table"]
    if not isinstance(raw_table, list) or not all(
        isinstance(r, list) for r in raw_table
    ):
        raise ShapeError(f"{path}: group table must be an array of arrays")
    table = []
    for row in raw_table:
        out = []
        for entry in row:
            if not isinstance(entry, str) or entry not in g_index:
                raise ShapeError(f"{path}: unknown group element {entry!r}")
            out.append(g_index[entry])
        table.append(out)
    group = validate_group(g_elements, table)

    points = name_list(obj["set"], context=f"{path}: set")
    p_index = {name: i for i, name in enumerate(points)}

    mapping = obj["action"]
    if not isinstance(mapping, dict):
        raise ShapeError(f"{path}: action must be an object")
    unknown = [p for p in mapping if p not in p_index]
    if unknown:
        raise ShapeError(f"{path}: action mentions unknown point(s) {unknown}")
    missing = [p for p in points if p not in mapping]
    if missing:
        raise ShapeError(f"{path}: action missing point(s) {missing}")
    rows = []
    for point in points:
        row_obj = mapping[point]
        if not isinstance(row_obj, dict):
            raise ShapeError(f"{path}: action[{point!r}] must be an object")
        unknown_g = [g for g in row_obj if g not in g_index]
        if unknown_g:
            raise ShapeError(
                f"{path}: action[{point!r}] mentions unknown element(s) {unknown_g}"
            )
        missing_g = [g for g in g_elements if g not in row_obj]
        if missing_g:
            raise ShapeError(
                f"{path}: action[{point!r}] missing element(s) {missing_g}"
            )
        row = []
        for g in g_elements:
            target = row_obj[g]
            if not isinstance(target, str) or target not in p_index:
                raise ShapeError(
                    f"{path}: action[{point!r}][{g!r}] is not a point name"
                )
            row.append(p_index[target])
        rows.append(row)
    return validate_action(group, points, rows)


def action_to_json(action: RightAction) -> dict:
    g_names = action.group.elements
    return {
        "group": {
            "elements": list(g_names),
            "table": [[g_names[v] for v in row] for row in action.group.table],
        },
        "set": list(action.points),
        "action": {
            point: {
                g_names[g]: action.points[action.table[m][g]]
                for g in range(len(g_names))
            }
            for m, point in enumerate(action.points)
        },
    }
