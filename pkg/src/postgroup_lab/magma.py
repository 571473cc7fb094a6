"""Finite diagonal left-regular magmas given by their triangle table.

A table row ``triangle[m]`` is the left translation L_m, sending b to
m |> b.  Left regularity asks every row to be a permutation.  The
diagonal condition asks the solution map lam, where lam(m) is the
unique b with m |> b = m, to be a bijection as well.  Both checks are
exhaustive and produce concrete witnesses on failure.

Validation precomputes everything the free post-group needs per
letter: lam, its inverse, and the inverse of each row, so that the
letter permutation of a negative generator is a plain table lookup.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DiagonalityError, LeftRegularityError, ShapeError, UnknownNameError
from .jsonio import dump_json, load_json_object, name_list, require_keys
from .perms import invert_perm
from .words import Alphabet, Letter


@dataclass(frozen=True)
class MagmaTable:
    """A validated diagonal left-regular magma.

    Build through validate_magma or load_magma; the constructor trusts
    its inputs.
    """

    alphabet: Alphabet
    triangle: tuple[tuple[int, ...], ...]
    lam: tuple[int, ...]
    lam_inv: tuple[int, ...]
    row_inv: tuple[tuple[int, ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.alphabet)

    def op(self, a: int, b: int) -> int:
        return self.triangle[a][b]


def validate_magma(
    elements: Sequence[str], triangle: Sequence[Sequence[int]]
) -> MagmaTable:
    """Check shape, left regularity, and diagonality, in that order."""
    alphabet = Alphabet(tuple(elements))
    n = len(alphabet)
    if len(triangle) != n:
        raise ShapeError(f"triangle has {len(triangle)} rows for {n} elements")
    rows: list[tuple[int, ...]] = []
    for i, row in enumerate(triangle):
        if len(row) != n:
            raise ShapeError(
                f"row {alphabet.names[i]!r} has length {len(row)}, expected {n}"
            )
        for value in row:
            if not isinstance(value, int) or not 0 <= value < n:
                raise ShapeError(
                    f"row {alphabet.names[i]!r} contains out-of-range entry {value!r}"
                )
        rows.append(tuple(row))

    for i, row in enumerate(rows):
        seen: dict[int, int] = {}
        for j, value in enumerate(row):
            if value in seen:
                a, b1, b2 = alphabet.names[i], alphabet.names[seen[value]], alphabet.names[j]
                raise LeftRegularityError(
                    f"row {a!r} is not a permutation: "
                    f"{a} |> {b1} == {a} |> {b2} == {alphabet.names[value]}",
                    witness=(i, seen[value], j),
                )
            seen[value] = j

    row_inv = tuple(invert_perm(row) for row in rows)
    lam = tuple(row_inv[m][m] for m in range(n))
    seen_lam: dict[int, int] = {}
    for m, value in enumerate(lam):
        if value in seen_lam:
            m1, m2 = alphabet.names[seen_lam[value]], alphabet.names[m]
            raise DiagonalityError(
                f"diagonal map is not injective: "
                f"lam({m1}) == lam({m2}) == {alphabet.names[value]}",
                witness=(seen_lam[value], m),
            )
        seen_lam[value] = m

    return MagmaTable(
        alphabet=alphabet,
        triangle=tuple(rows),
        lam=lam,
        lam_inv=invert_perm(lam),
        row_inv=row_inv,
    )


def psi(magma: MagmaTable, letter: Letter) -> Letter:
    """The sign-swapping involution pairing m with lam(m) inverse.

    psi(m) = lam(m)^{-1} and psi(m^{-1}) = lam^{-1}(m), which encodes
    that the formal inverse of the letter m acts like the inverse of
    the row of lam^{-1}(m).
    """
    if letter.sign == 1:
        return Letter(magma.lam[letter.gen], -1)
    return Letter(magma.lam_inv[letter.gen], 1)


def generator_perm(magma: MagmaTable, letter: Letter) -> tuple[int, ...]:
    """The permutation of the generator set attached to one letter.

    A positive letter m acts by its row L_m.  A negative letter m^{-1}
    acts by the inverse of the row of lam^{-1}(m), the unique choice
    that makes the extended action multiplicative on inverse pairs.
    """
    if letter.sign == 1:
        return magma.triangle[letter.gen]
    return magma.row_inv[magma.lam_inv[letter.gen]]


def magma_from_names(
    elements: Sequence[str], rows: Sequence[Sequence[str]]
) -> MagmaTable:
    """Validate a table whose entries are element names."""
    alphabet = Alphabet(tuple(elements))
    index_rows = []
    for row in rows:
        index_rows.append([_lookup(alphabet, value) for value in row])
    return validate_magma(elements, index_rows)


def _lookup(alphabet: Alphabet, name: object) -> int:
    if not isinstance(name, str):
        raise ShapeError(f"table entry {name!r} is not a string")
    return alphabet.index(name)


def load_magma(path: str | Path) -> MagmaTable:
    """Read a magma file: {"elements": [...], "triangle": [[names]]}."""
    obj = load_json_object(path)
    require_keys(obj, ("elements", "triangle"), context=str(path))
    elements = name_list(obj["elements"], context=f"{path}: elements")
    triangle = obj["triangle"]
    if not isinstance(triangle, list) or not all(
        isinstance(row, list) for row in triangle
    ):
        raise ShapeError(f"{path}: triangle must be an array of arrays")
    try:
        return magma_from_names(elements, triangle)
    except UnknownNameError as exc:
        raise ShapeError(f"{path}: {exc}") from exc


def magma_to_json(magma: MagmaTable) -> dict:
    names = magma.alphabet.names
    return {
        "elements": list(names),
        "triangle": [[names[v] for v in row] for row in magma.triangle],
    }


def save_magma(magma: MagmaTable, path: str | Path | None) -> str:
    return dump_json(magma_to_json(magma), path)


def trivial_magma(elements: Sequence[str]) -> MagmaTable:
    """a |> b = b.  Every diagonal left-regular axiom holds trivially."""
    n = len(elements)
    return validate_magma(elements, [list(range(n)) for _ in range(n)])


def cyclic_shift_magma(n: int, prefix: str = "x") -> MagmaTable:
    """a |> b = b + 1 mod n on elements named prefix0 .. prefix{n-1}."""
    elements = [f"{prefix}{i}" for i in range(n)]
    row = [(j + 1) % n for j in range(n)]
    return validate_magma(elements, [list(row) for _ in range(n)])


def shift_family_magma(shifts: Sequence[int], prefix: str = "x") -> MagmaTable:
    """a |> b = b + shifts[a] mod n, diagonal when a - shifts[a] is bijective."""
    n = len(shifts)
    elements = [f"{prefix}{i}" for i in range(n)]
    rows = [[(j + s) % n for j in range(n)] for s in shifts]
    return validate_magma(elements, rows)
