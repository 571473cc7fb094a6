"""Exact tensor algebra over the free magma, with the twisting map K.

Letters are binary trees over a set of generators, a tree node standing
for the triangle product of its children.  Words are tuples of trees,
the empty word is the unit, and polynomials carry Fraction
coefficients.  The module extends the triangle product to all of the
tensor algebra, builds the twisted (Grossman-Larson style) product and
its antipode, and implements the length-lowering map K together with
its inverse.  Everything is exact; there is no floating point here.

The unshuffle coproduct of a word of length k has 2^k terms, so the
expensive entry points refuse inputs above DEGREE_CAP leaves unless the
caller passes max_degree=None.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotPrimitiveError, SizeCapError

DEGREE_CAP = 8

_ONE = Fraction(1)


@dataclass(frozen=True)
class Leaf:
    index: int


@dataclass(frozen=True)
class Node:
    left: "MagmaTree"
    right: "MagmaTree"


MagmaTree = Union[Leaf, Node]

TensorWord = tuple  # tuple[MagmaTree, ...]; () is the unit word


def magma_product(s: MagmaTree, t: MagmaTree) -> MagmaTree:
    return Node(s, t)


def tree_degree(tree: MagmaTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return tree_degree(tree.left) + tree_degree(tree.right)


def word_degree(word: TensorWord) -> int:
    return sum(tree_degree(t) for t in word)


def _tree_struct(tree: MagmaTree) -> tuple:
    # flat self-delimiting encoding; lexicographic comparison of two
    # encodings agrees with "leaf < node, recurse left then right"
    if isinstance(tree, Leaf):
        return (0, tree.index)
    return (1,) + _tree_struct(tree.left) + _tree_struct(tree.right)


def tree_key(tree: MagmaTree) -> tuple:
    return (tree_degree(tree), _tree_struct(tree))


def word_key(word: TensorWord) -> tuple:
    return (word_degree(word), len(word), tuple(tree_key(t) for t in word))


class TensorPoly:
    """Finite rational combination of tensor words.

    terms maps words to nonzero Fractions; treat it as read-only.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for word, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[word] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorPoly is immutable")

    @classmethod
    def zero(cls) -> "TensorPoly":
        return cls()

    @classmethod
    def unit(cls) -> "TensorPoly":
        return cls({(): _ONE})

    @classmethod
    def letter(cls, index: int) -> "TensorPoly":
        return cls({(Leaf(index),): _ONE})

    @classmethod
    def from_word(cls, word: TensorWord, coeff=_ONE) -> "TensorPoly":
        return cls({word: coeff})

    def coeff(self, word: TensorWord) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        acc = dict(self.terms)
        for word, coeff in other.terms.items():
            _add_into(acc, word, coeff)
        return TensorPoly(acc)

    def __sub__(self, other):
        acc = dict(self.terms)
        for word, coeff in other.terms.items():
            _add_into(acc, word, -coeff)
        return TensorPoly(acc)

    def __neg__(self):
        return TensorPoly({w: -c for w, c in self.terms.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return TensorPoly({w: scalar * c for w, c in self.terms.items()})

    def __repr__(self):
        return f"TensorPoly({format_poly(self)})"


class TensorPolyPair:
    """Rational combination of word pairs; the coproduct lives here."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for pair, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[pair] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorPolyPair is immutable")

    def __eq__(self, other):
        return isinstance(other, TensorPolyPair) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        acc = dict(self.terms)
        for pair, coeff in other.terms.items():
            _add_into(acc, pair, coeff)
        return TensorPolyPair(acc)

    def __sub__(self, other):
        acc = dict(self.terms)
        for pair, coeff in other.terms.items():
            _add_into(acc, pair, -coeff)
        return TensorPolyPair(acc)

    def __neg__(self):
        return TensorPolyPair({p: -c for p, c in self.terms.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return TensorPolyPair({p: scalar * c for p, c in self.terms.items()})


def pair_tensor(left: TensorPoly, right: TensorPoly) -> TensorPolyPair:
    acc = {}
    for u, a in left.terms.items():
        for v, b in right.terms.items():
            _add_into(acc, (u, v), a * b)
    return TensorPolyPair(acc)


def _add_into(acc: dict, key, coeff) -> None:
    total = acc.get(key, 0) + coeff
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


def counit(poly: TensorPoly) -> Fraction:
    return poly.coeff(())


def _max_degree(poly: TensorPoly) -> int:
    return max((word_degree(w) for w in poly.terms), default=0)


def _check_cap(max_degree, *polys) -> None:
    if max_degree is None:
        return
    for poly in polys:
        worst = _max_degree(poly)
        if worst > max_degree:
            raise SizeCapError(
                f"input of degree {worst} exceeds the cap {max_degree}; "
                "pass max_degree=None to force"
            )


def concat(left: TensorPoly, right: TensorPoly) -> TensorPoly:
    acc = {}
    for u, a in left.terms.items():
        for v, b in right.terms.items():
            _add_into(acc, u + v, a * b)
    return TensorPoly(acc)


_SPLITS: dict = {}


def _splits(word: TensorWord) -> list:
    """All 2^k ordered (subword, complement) position splits."""
    hit = _SPLITS.get(word)
    if hit is not None:
        return hit
    n = len(word)
    out = []
    for mask in range(1 << n):
        sub = tuple(word[i] for i in range(n) if mask >> i & 1)
        comp = tuple(word[i] for i in range(n) if not mask >> i & 1)
        out.append((sub, comp))
    _SPLITS[word] = out
    return out


def unshuffle(poly: TensorPoly, max_degree=DEGREE_CAP) -> TensorPolyPair:
    """Coproduct: letters are primitive and words split over positions."""
    _check_cap(max_degree, poly)
    acc = {}
    for word, coeff in poly.terms.items():
        for sub, comp in _splits(word):
            _add_into(acc, (sub, comp), coeff)
    return TensorPolyPair(acc)


_TRI: dict = {}


def _tri_word(left: TensorWord, right: TensorWord) -> TensorPoly:
    key = (left, right)
    hit = _TRI.get(key)
    if hit is not None:
        return hit
    if not left:
        out = TensorPoly.from_word(right)
    elif not right:
        out = TensorPoly.zero()
    elif len(left) == 1:
        # a single tree acts as a derivation over the word's letters
        x = left[0]
        acc = {}
        for i in range(len(right)):
            grown = right[:i] + (Node(x, right[i]),) + right[i + 1:]
            _add_into(acc, grown, _ONE)
        out = TensorPoly(acc)
    else:
        # peel the first letter: (x.v) |> w = x |> (v |> w) - (x |> v) |> w
        x, rest = (left[0],), left[1:]
        inner = _tri_word(rest, right)
        out = _tri_word_poly(x, inner) - _tri_poly_word(_tri_word(x, rest), right)
    _TRI[key] = out
    return out


def _tri_word_poly(left: TensorWord, poly: TensorPoly) -> TensorPoly:
    acc = TensorPoly.zero()
    for word, coeff in poly.terms.items():
        acc = acc + coeff * _tri_word(left, word)
    return acc


def _tri_poly_word(poly: TensorPoly, right: TensorWord) -> TensorPoly:
    acc = TensorPoly.zero()
    for word, coeff in poly.terms.items():
        acc = acc + coeff * _tri_word(word, right)
    return acc


def triangle(left: TensorPoly, right: TensorPoly, max_degree=DEGREE_CAP) -> TensorPoly:
    """Bilinear triangle product on the tensor algebra."""
    _check_cap(max_degree, left, right)
    acc = TensorPoly.zero()
    for u, a in left.terms.items():
        for w, b in right.terms.items():
            acc = acc + (a * b) * _tri_word(u, w)
    return acc


_GL: dict = {}


def _gl_word(left: TensorWord, right: TensorWord) -> TensorPoly:
    key = (left, right)
    hit = _GL.get(key)
    if hit is not None:
        return hit
    acc = {}
    for sub, comp in _splits(left):
        for word, coeff in _tri_word(comp, right).terms.items():
            _add_into(acc, sub + word, coeff)
    out = TensorPoly(acc)
    _GL[key] = out
    return out


def gl_star(left: TensorPoly, right: TensorPoly, max_degree=DEGREE_CAP) -> TensorPoly:
    """Twisted product A*B: concatenate half of A, act with the rest."""
    _check_cap(max_degree, left, right)
    acc = TensorPoly.zero()
    for u, a in left.terms.items():
        for w, b in right.terms.items():
            acc = acc + (a * b) * _gl_word(u, w)
    return acc


def antipode_dot(poly: TensorPoly) -> TensorPoly:
    """Antipode of the concatenation structure: signed reversal."""
    acc = {}
    for word, coeff in poly.terms.items():
        sign = -coeff if len(word) % 2 else coeff
        _add_into(acc, word[::-1], sign)
    return TensorPoly(acc)


_SSTAR: dict = {}


def _sstar_word(word: TensorWord) -> TensorPoly:
    hit = _SSTAR.get(word)
    if hit is not None:
        return hit
    if not word:
        out = TensorPoly.unit()
    else:
        # graded recursion from sum S(w_1) * w_2 = 0 for nonunit words
        out = -TensorPoly.from_word(word)
        for sub, comp in _splits(word):
            if sub and comp:
                piece = _sstar_word(sub)
                acc = TensorPoly.zero()
                for inner, coeff in piece.terms.items():
                    acc = acc + coeff * _gl_word(inner, comp)
                out = out - acc
    _SSTAR[word] = out
    return out


def antipode_star(poly: TensorPoly, max_degree=DEGREE_CAP) -> TensorPoly:
    """Antipode of the twisted product, by the graded recursion."""
    _check_cap(max_degree, poly)
    acc = TensorPoly.zero()
    for word, coeff in poly.terms.items():
        acc = acc + coeff * _sstar_word(word)
    return acc


_K: dict = {}


def _k_word(word: TensorWord) -> TensorPoly:
    hit = _K.get(word)
    if hit is not None:
        return hit
    if len(word) <= 1:
        out = TensorPoly.from_word(word)
    else:
        # K(x.rest) = x.K(rest) - K(x |> rest)
        x, rest = word[0], word[1:]
        acc = {(x,) + w: c for w, c in _k_word(rest).terms.items()}
        out = TensorPoly(acc)
        for grown, coeff in _tri_word((x,), rest).terms.items():
            out = out - coeff * _k_word(grown)
    _K[word] = out
    return out


def kmap_tensor(poly: TensorPoly, max_degree=DEGREE_CAP) -> TensorPoly:
    """The degree-preserving, length-lowering twist map K."""
    _check_cap(max_degree, poly)
    acc = TensorPoly.zero()
    for word, coeff in poly.terms.items():
        acc = acc + coeff * _k_word(word)
    return acc


def kmap_tensor_inverse(poly: TensorPoly, max_degree=DEGREE_CAP) -> TensorPoly:
    """Invert K by fixed-point iteration on U = A - (K(U) - U).

    K(U) - U only has words strictly shorter than those of U, so the
    iteration stabilizes after at most max word length rounds.
    """
    _check_cap(max_degree, poly)
    rounds = max((len(w) for w in poly.terms), default=0) + 2
    current = poly
    for _ in range(rounds):
        image = kmap_tensor(current, max_degree=None)
        if image == poly:
            return current
        current = poly - (image - current)
    raise RuntimeError("kmap inverse did not stabilize")


def is_primitive(poly: TensorPoly) -> bool:
    expected = {}
    for word, coeff in poly.terms.items():
        _add_into(expected, (word, ()), coeff)
        _add_into(expected, ((), word), coeff)
    return unshuffle(poly, max_degree=None) == TensorPolyPair(expected)


def _require_primitive(*polys) -> None:
    for poly in polys:
        if not is_primitive(poly):
            raise NotPrimitiveError(
                f"{format_poly(poly)} is not primitive for the unshuffle coproduct"
            )


def lie_bracket(left: TensorPoly, right: TensorPoly) -> TensorPoly:
    """Concatenation commutator of two primitive elements."""
    _require_primitive(left, right)
    return concat(left, right) - concat(right, left)


def gl_lie_bracket(left: TensorPoly, right: TensorPoly, max_degree=DEGREE_CAP) -> TensorPoly:
    """Twisted bracket [X,Y] + X |> Y - Y |> X on primitives."""
    _require_primitive(left, right)
    return (
        concat(left, right)
        - concat(right, left)
        + triangle(left, right, max_degree)
        - triangle(right, left, max_degree)
    )


@dataclass(frozen=True)
class LawReport:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_postlie_axioms(x: TensorPoly, y: TensorPoly, z: TensorPoly,
                         max_degree=DEGREE_CAP) -> LawReport:
    """Both post-Lie axioms for the primitives x, y, z, and the same
    axioms for the opposite structure (negated bracket, twisted act)."""
    _require_primitive(x, y, z)
    _check_cap(max_degree, x, y, z)

    def tri(a, b):
        return triangle(a, b, max_degree=None)

    def bra(a, b):
        return concat(a, b) - concat(b, a)

    def opp_tri(a, b):
        return tri(a, b) + bra(a, b)

    def opp_bra(a, b):
        return bra(b, a)

    for name, t, b in (("", tri, bra), ("opposite ", opp_tri, opp_bra)):
        lhs = t(x, b(y, z))
        rhs = b(t(x, y), z) + b(y, t(x, z))
        if lhs != rhs:
            return LawReport(False, f"{name}derivation axiom fails")
        assoc_xy = t(x, t(y, z)) - t(t(x, y), z)
        assoc_yx = t(y, t(x, z)) - t(t(y, x), z)
        if t(b(x, y), z) != assoc_xy - assoc_yx:
            return LawReport(False, f"{name}associator axiom fails")
    return LawReport(True)


def trees_of_degree(degree: int, generators: int) -> tuple:
    """All trees with the given leaf count, in canonical order."""
    if degree < 1:
        return ()
    if degree == 1:
        return tuple(Leaf(i) for i in range(generators))
    out = []
    for left_degree in range(1, degree):
        for left in trees_of_degree(left_degree, generators):
            for right in trees_of_degree(degree - left_degree, generators):
                out.append(Node(left, right))
    return tuple(sorted(out, key=tree_key))


def words_of_degree(degree: int, generators: int) -> tuple:
    """All words with the given total leaf count, in canonical order."""
    if degree < 0:
        return ()
    if degree == 0:
        return ((),)
    out = []
    for head_degree in range(1, degree + 1):
        for head in trees_of_degree(head_degree, generators):
            for tail in words_of_degree(degree - head_degree, generators):
                out.append((head,) + tail)
    return tuple(sorted(out, key=word_key))


def _generator_name(index: int, names=None) -> str:
    if names is not None:
        return names[index]
    return f"x{index + 1}"


def format_tree(tree: MagmaTree, names=None) -> str:
    if isinstance(tree, Leaf):
        return _generator_name(tree.index, names)
    return f"({format_tree(tree.left, names)}>{format_tree(tree.right, names)})"


def format_word(word: TensorWord, names=None) -> str:
    if not word:
        return "1"
    return ".".join(format_tree(t, names) for t in word)


def format_poly(poly: TensorPoly, names=None) -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for word in sorted(poly.terms, key=word_key):
        coeff = poly.terms[word]
        body = format_word(word, names)
        magnitude = abs(coeff)
        if magnitude != 1 or not word:
            body = f"{magnitude}*{body}" if word else str(magnitude)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)
