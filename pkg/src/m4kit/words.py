"""Freely reduced words in a free group.

A word is an immutable sequence of letters; a letter is a pair
``(generator_name, sign)`` with sign +1 or -1.  Every ``Word`` is freely
reduced by construction: adjacent inverse pairs are cancelled when the
object is built, so equality of words is equality in the free group on
whatever alphabet the letters mention.

Convention used throughout the package: the commutator is

    [x, y] = x y x^-1 y^-1

and conjugation is ``conjugate(w, g) = g w g^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Letter = tuple[str, int]

# Generator names: a letter followed by letters/digits/underscores.  Sign
# characters, whitespace and brackets are syntax, never part of a name.
NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Freely reduce a letter sequence with a stack scan."""
    out: list[Letter] = []
    for name, sign in letters:
        if out and out[-1][0] == name and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((name, sign))
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word.  Construct via gen(), parse_word(), or the
    algebraic operations below; the constructor reduces whatever it is
    given."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for name, sign in self.letters:
            assert sign in (1, -1), f"bad sign {sign!r} on letter {name!r}"
            assert NAME_RE.fullmatch(name), f"bad generator name {name!r}"
        reduced = _reduce(self.letters)
        if reduced != tuple(self.letters):
            object.__setattr__(self, "letters", reduced)
        elif not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -s) for n, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def names(self) -> frozenset[str]:
        """The generator names actually occurring in the word."""
        return frozenset(n for n, _ in self.letters)

    def exponent_sum(self, name: str) -> int:
        return sum(s for n, s in self.letters if n == name)

    def occurrences(self, name: str) -> int:
        return sum(1 for n, _ in self.letters if n == name)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


IDENTITY = Word()


def gen(name: str, sign: int = 1) -> Word:
    """The one-letter word ``name^sign``."""
    return Word(((name, sign),))


def conjugate(w: Word, by: Word) -> Word:
    """g w g^-1 for by = g."""
    return by * w * by.inverse()


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


def substitute(w: Word, images: Mapping[str, Word]) -> Word:
    """Apply the homomorphism sending each name in `images` to its image
    (other generators map to themselves)."""
    out: list[Letter] = []
    for name, sign in w.letters:
        if name in images:
            img = images[name] if sign > 0 else images[name].inverse()
            out.extend(img.letters)
        else:
            out.append((name, sign))
    return Word(tuple(out))


def cyclic_reduce(w: Word) -> Word:
    """Strip matching inverse letters from the two ends.  The result is the
    shortest word in the conjugacy class of w."""
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i][0] == letters[j - 1][0] \
            and letters[i][1] == -letters[j - 1][1]:
        i += 1
        j -= 1
    return Word(letters[i:j])


def rotate(w: Word, k: int) -> Word:
    """Cyclic rotation: move the first k letters to the end.  Only sensible
    for cyclically reduced words (a rotation of such stays reduced)."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return Word(w.letters[k:] + w.letters[:k])


def cyclic_rotations(w: Word) -> list[Word]:
    """All rotations of a cyclically reduced word (length-many, or [w] when
    empty)."""
    if not w.letters:
        return [w]
    return [rotate(w, k) for k in range(len(w.letters))]


def cyclically_equal(u: Word, v: Word) -> bool:
    """Equality of conjugacy-class representatives, allowing inversion —
    the equivalence under which relators are interchangeable."""
    u = cyclic_reduce(u)
    v = cyclic_reduce(v)
    if len(u) != len(v):
        return False
    rots = cyclic_rotations(u)
    return v in rots or v.inverse() in rots


# -- text form -----------------------------------------------------------
#
# Syntax:   word  := atom*            (concatenation)
#           atom  := base exponent?
#           base  := NAME | "[" word "," word "]" | "(" word ")"
#           exponent := "^" ("-"? digits)
# "1" denotes the empty word.  Whitespace separates atoms but is otherwise
# ignored.  format_word emits the plain syllable form `a^2 b^-1 c`, which
# parses back to the same word.

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<punct>[\[\],^()])|(?P<bad>\S))"
)


class WordSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    for m in _TOKEN_RE.finditer(text):
        if m.group("bad"):
            raise WordSyntaxError(f"unexpected character {m.group('bad')!r} at column {m.start('bad') + 1}")
        for kind in ("name", "int", "punct"):
            if m.group(kind):
                toks.append((kind, m.group(kind), m.start(kind)))
    return toks


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise WordSyntaxError(f"unexpected end of word in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, col = self.take()
        if val != value:
            raise WordSyntaxError(f"expected {value!r} but found {val!r} at column {col + 1}")

    def word(self, stop: tuple[str, ...] = ()) -> Word:
        parts: list[Word] = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "punct" and tok[1] in stop):
                break
            parts.append(self.atom())
        out = IDENTITY
        for p in parts:
            out = out * p
        return out

    def atom(self) -> Word:
        kind, val, col = self.take()
        if kind == "name":
            base = gen(val)
        elif kind == "int" and val == "1":
            base = IDENTITY
        elif kind == "punct" and val == "[":
            x = self.word(stop=(",",))
            self.expect(",")
            y = self.word(stop=("]",))
            self.expect("]")
            base = commutator(x, y)
        elif kind == "punct" and val == "(":
            base = self.word(stop=(")",))
            self.expect(")")
        else:
            raise WordSyntaxError(f"unexpected token {val!r} at column {col + 1}")
        tok = self.peek()
        if tok is not None and tok[0] == "punct" and tok[1] == "^":
            self.take()
            kind, val, col = self.take()
            if kind != "int":
                raise WordSyntaxError(f"expected integer exponent at column {col + 1}")
            base = base ** int(val)
        return base


def parse_word(text: str) -> Word:
    """Parse the word syntax above.  Examples:

    >>> parse_word("a b^-1")           # doctest: +SKIP
    >>> parse_word("[b1^-1, d^-1]")    # commutator sugar
    >>> parse_word("1")                # identity
    """
    parser = _WordParser(text)
    w = parser.word()
    if parser.peek() is not None:
        kind, val, col = parser.peek()
        raise WordSyntaxError(f"trailing token {val!r} at column {col + 1}")
    return w


def format_word(w: Word) -> str:
    """Syllable form, e.g. ``a^2 b^-1 c``; the empty word prints as ``1``."""
    if not w.letters:
        return "1"
    syllables: list[str] = []
    i = 0
    letters = w.letters
    while i < len(letters):
        name, sign = letters[i]
        j = i
        while j < len(letters) and letters[j] == (name, sign):
            j += 1
        e = sign * (j - i)
        syllables.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(syllables)
