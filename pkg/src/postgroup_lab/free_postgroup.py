"""The free post-group over a diagonal left-regular magma.

Elements are reduced words over the magma's generator set.  The action
of a word on the generators extends the magma rows letter by letter:
a running permutation pi starts at the identity and, for each letter a
of the acting word, absorbs the letter permutation of b := pi^{-1}(a),
where pi^{-1} moves a negative letter by acting on its base generator.
This is the unique extension making pi multiplicative for the group
law u * v := u . (u |> v), and it is well defined on unreduced
spellings of the same group element.

The letterwise action on a target word sends each letter of v through
the finished permutation, preserving signs and reducedness.

jmap and kmap are mutually inverse bijections of the set of reduced
words that exchange the free-group product with the * product; jmap is
the identity on generators and a homomorphism from dot to *.
"""

from __future__ import annotations

from collections.abc import Sequence

from .magma import MagmaTable, generator_perm
from .perms import compose_perm, identity_perm, invert_perm
from .words import (
    Alphabet,
    Letter,
    ReducedWord,
    check_same_alphabet,
    dot,
    invert,
    parse_word,
    reduce_word,
)


def _check_alphabet(magma: MagmaTable, u: ReducedWord) -> None:
    if u.alphabet != magma.alphabet:
        # reuse the standard mismatch error text
        check_same_alphabet(u, ReducedWord(magma.alphabet, ()))


def act_perm_raw(magma: MagmaTable, letters: Sequence[Letter]) -> tuple[int, ...]:
    """Run the extension recursion over any letter sequence, reduced or not."""
    n = len(magma)
    pi = identity_perm(n)
    pi_inv = identity_perm(n)
    for letter in letters:
        b = Letter(pi_inv[letter.gen], letter.sign)
        step = generator_perm(magma, b)
        pi = compose_perm(pi, step)
        pi_inv = compose_perm(invert_perm(step), pi_inv)
    return pi


def act_perm(magma: MagmaTable, u: ReducedWord) -> tuple[int, ...]:
    """The permutation of the generator set induced by the word u."""
    _check_alphabet(magma, u)
    return act_perm_raw(magma, u.letters)


def act(magma: MagmaTable, u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """u |> v: apply the permutation of u to every letter of v."""
    _check_alphabet(magma, v)
    pi = act_perm(magma, u)
    return ReducedWord(
        v.alphabet, tuple(Letter(pi[l.gen], l.sign) for l in v.letters)
    )


def inverse_act(magma: MagmaTable, u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """The unique w with u |> w = v."""
    _check_alphabet(magma, v)
    pi_inv = invert_perm(act_perm(magma, u))
    return ReducedWord(
        v.alphabet, tuple(Letter(pi_inv[l.gen], l.sign) for l in v.letters)
    )


def gl_product(magma: MagmaTable, u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """The group law u * v = u . (u |> v) of the free post-group."""
    return dot(u, act(magma, u, v))


def gl_inverse(magma: MagmaTable, u: ReducedWord) -> ReducedWord:
    """Inverse for *: undo the action of u on the dot inverse of u."""
    return inverse_act(magma, u, invert(u))


def opposite_act(magma: MagmaTable, u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """The companion action u . (u |> v) . u^{-1} of the opposite post-group."""
    return dot(gl_product(magma, u, v), invert(u))


def jmap(magma: MagmaTable, u: ReducedWord) -> ReducedWord:
    """Rewrite a dot-word as a *-word, one letter at a time.

    Positive letters map to themselves.  The negative letter of m maps
    to its *-inverse, the single letter lam(m)^{-1}.  The images are
    then multiplied with the * product from the left.
    """
    _check_alphabet(magma, u)
    out = ReducedWord(u.alphabet, ())
    for letter in u.letters:
        if letter.sign == 1:
            image = letter
        else:
            image = Letter(magma.lam[letter.gen], -1)
        out = gl_product(magma, out, ReducedWord(u.alphabet, (image,)))
    return out


def kmap(magma: MagmaTable, v: ReducedWord) -> ReducedWord:
    """Invert jmap by a triangular solve along the running permutation.

    Peeling letters from the left, the k-th letter b of the input must
    equal pi(a'), where pi is the permutation accumulated from the
    previous solved letters, so a' = pi^{-1}(b).  A positive a' came
    from itself; a negative letter p^{-1} came from lam^{-1}(p)^{-1}.
    The recovered letters are concatenated with the dot product.
    """
    _check_alphabet(magma, v)
    n = len(magma)
    pi_inv = identity_perm(n)
    recovered: list[Letter] = []
    for letter in v.letters:
        solved = Letter(pi_inv[letter.gen], letter.sign)
        step = generator_perm(magma, solved)
        pi_inv = compose_perm(invert_perm(step), pi_inv)
        if solved.sign == 1:
            recovered.append(solved)
        else:
            recovered.append(Letter(magma.lam_inv[solved.gen], -1))
    out = ReducedWord(v.alphabet, ())
    for letter in recovered:
        out = dot(out, ReducedWord(v.alphabet, (letter,)))
    return out


def parse_over(magma: MagmaTable, text: str) -> ReducedWord:
    """Parse a word in the magma's alphabet."""
    return parse_word(text, magma.alphabet)


def random_word(alphabet: Alphabet, rng, max_len: int) -> ReducedWord:
    """A random reduced word with at most max_len letters."""
    letters = [
        Letter(rng.randrange(len(alphabet)), rng.choice((1, -1)))
        for _ in range(rng.randrange(max_len + 1))
    ]
    return reduce_word(alphabet, letters)
