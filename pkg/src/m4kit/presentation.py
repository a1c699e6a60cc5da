"""Finite presentations with surgery-flavoured extras.

Beyond generators and relators, a presentation here can carry three kinds
of side data that the rest of the package leans on:

* ``meridional`` tiers — a symbolic marker for a family of unnamed extra
  generators, every one of which is a conjugate of a distinguished
  boundary circle (the *key* word).  Such generators die in any quotient
  where the key dies, so we never materialise them; a tier is discharged
  once the key word has been proved trivial.

* ``conditional`` relators — relations known to hold *provided* a key
  word is trivial.  They typically record a curve identification that was
  computed only up to multiplication by a boundary circle.  The
  certification engine may activate one only after the key's image has
  become freely trivial.

* ``distinguished`` words — named markers (meridians, images of standard
  curves) that are carried through every substitution so that their fate
  can be read off afterwards.

All types are immutable; operations return new presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .words import (
    NAME_RE,
    Word,
    WordSyntaxError,
    cyclically_equal,
    format_word,
    gen,
    parse_word,
    rotate,
    substitute,
)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class MeridionalTier:
    """Symbolic stand-in for finitely many extra generators, each conjugate
    to the key word.  The count is deliberately not stored: no downstream
    argument may depend on it."""

    label: str
    key: Word


@dataclass(frozen=True, slots=True)
class ConditionalRelator:
    """A relator valid in any quotient where `key` is trivial."""

    relator: Word
    key: Word


@dataclass(frozen=True, slots=True)
class FpPresentation:
    generators: tuple[str, ...] = ()
    relators: tuple[Word, ...] = ()
    conditional: tuple[ConditionalRelator, ...] = ()
    meridional: tuple[MeridionalTier, ...] = ()
    distinguished: tuple[tuple[str, Word], ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for g in self.generators:
            if not NAME_RE.fullmatch(g):
                raise PresentationError(f"bad generator name {g!r}")
            if g in seen:
                raise PresentationError(f"duplicate generator {g!r}")
            seen.add(g)
        for w in self.relators:
            self._check_word(w, "relator")
        for c in self.conditional:
            self._check_word(c.relator, "conditional relator")
            self._check_word(c.key, "conditional key")
        for t in self.meridional:
            self._check_word(t.key, f"meridional key for {t.label!r}")
        labels = [name for name, _ in self.distinguished]
        if len(labels) != len(set(labels)):
            raise PresentationError("duplicate distinguished label")
        for _, w in self.distinguished:
            self._check_word(w, "distinguished word")

    def _check_word(self, w: Word, what: str) -> None:
        stray = w.names() - set(self.generators)
        if stray:
            raise PresentationError(
                f"{what} {format_word(w)!r} uses unknown generators {sorted(stray)}")

    # -- small immutable transforms ---------------------------------------

    def with_relators(self, *extra: Word) -> "FpPresentation":
        return replace(self, relators=self.relators + tuple(extra))

    def without_relator(self, w: Word) -> "FpPresentation":
        """Remove one occurrence of `w` (exact value) from the relator list."""
        rels = list(self.relators)
        try:
            rels.remove(w)
        except ValueError:
            raise PresentationError(f"relator {format_word(w)!r} not present")
        return replace(self, relators=tuple(rels))

    def replace_relator(self, old: Word, new: Word) -> "FpPresentation":
        rels = list(self.relators)
        try:
            i = rels.index(old)
        except ValueError:
            raise PresentationError(f"relator {format_word(old)!r} not present")
        rels[i] = new
        return replace(self, relators=tuple(rels))

    def with_conditional(self, relator: Word, key: Word) -> "FpPresentation":
        return replace(self, conditional=self.conditional
                       + (ConditionalRelator(relator, key),))

    def with_meridional(self, label: str, key: Word) -> "FpPresentation":
        return replace(self, meridional=self.meridional
                       + (MeridionalTier(label, key),))

    def with_distinguished(self, label: str, w: Word) -> "FpPresentation":
        return replace(self, distinguished=self.distinguished + ((label, w),))

    def strip_meridional(self) -> "FpPresentation":
        return replace(self, meridional=())

    def distinguished_map(self) -> dict[str, Word]:
        return dict(self.distinguished)

    def rename_generators(self, mapping: Mapping[str, str]) -> "FpPresentation":
        """Rename generators; mapping must stay injective on the full set."""
        full = {g: mapping.get(g, g) for g in self.generators}
        if len(set(full.values())) != len(full):
            raise PresentationError("rename is not injective")
        word_map = {old: gen(new) for old, new in full.items() if old != new}

        def sub(w: Word) -> Word:
            return substitute(w, word_map)

        return FpPresentation(
            generators=tuple(full[g] for g in self.generators),
            relators=tuple(sub(r) for r in self.relators),
            conditional=tuple(ConditionalRelator(sub(c.relator), sub(c.key))
                              for c in self.conditional),
            meridional=tuple(MeridionalTier(t.label, sub(t.key))
                             for t in self.meridional),
            distinguished=tuple((n, sub(w)) for n, w in self.distinguished),
        )

    def with_prefix(self, prefix: str) -> "FpPresentation":
        """Prefix every generator name and every distinguished label."""
        p = self.rename_generators({g: prefix + g for g in self.generators})
        return replace(p, distinguished=tuple((prefix + n, w)
                                              for n, w in p.distinguished))

    def __str__(self) -> str:
        return format_presentation(self)


def free_product(left: FpPresentation, right: FpPresentation) -> FpPresentation:
    """Disjoint union of presentations.  Generator (and distinguished-label)
    clashes are errors; the caller renames first, e.g. with with_prefix()."""
    clash = set(left.generators) & set(right.generators)
    if clash:
        raise PresentationError(f"generator clash in free product: {sorted(clash)}")
    lclash = {n for n, _ in left.distinguished} & {n for n, _ in right.distinguished}
    if lclash:
        raise PresentationError(f"distinguished-label clash: {sorted(lclash)}")
    return FpPresentation(
        generators=left.generators + right.generators,
        relators=left.relators + right.relators,
        conditional=left.conditional + right.conditional,
        meridional=left.meridional + right.meridional,
        distinguished=left.distinguished + right.distinguished,
    )


def impose(p: FpPresentation, relators: Iterable[Word]) -> FpPresentation:
    """Quotient by extra relators (validated against p's generators)."""
    return p.with_relators(*relators)


def defining_rotation(r: Word, name: str) -> tuple[int, Word] | None:
    """If relator r mentions `name` exactly once, return (sign, definition)
    so that r = 1 is equivalent to name = definition and definition avoids
    `name`.  Otherwise None."""
    if r.occurrences(name) != 1:
        return None
    k = next(i for i, (n, _) in enumerate(r.letters) if n == name)
    rot = rotate(r, k)          # now rot[0] is (name, e)
    e = rot.letters[0][1]
    tail = Word(rot.letters[1:])
    definition = tail.inverse() if e > 0 else tail
    assert name not in definition.names()
    return e, definition


def eliminate_generator(p: FpPresentation, name: str,
                        definition: Word) -> FpPresentation:
    """Tietze elimination: require a relator saying name = definition (up to
    rotation/inversion), then substitute the definition everywhere and drop
    both the generator and the defining relator."""
    if name not in p.generators:
        raise PresentationError(f"no generator {name!r}")
    if name in definition.names():
        raise PresentationError("definition mentions the generator itself")
    witness = gen(name) * definition.inverse()
    for r in p.relators:
        if cyclically_equal(r, witness):
            break
    else:
        raise PresentationError(
            f"no relator witnessing {name} = {format_word(definition)}")
    images = {name: definition}

    def sub(w: Word) -> Word:
        return substitute(w, images)

    rels = [sub(x) for x in p.relators if x is not r]
    return FpPresentation(
        generators=tuple(g for g in p.generators if g != name),
        relators=tuple(x for x in rels if x),
        conditional=tuple(ConditionalRelator(sub(c.relator), sub(c.key))
                          for c in p.conditional),
        meridional=tuple(MeridionalTier(t.label, sub(t.key))
                         for t in p.meridional),
        distinguished=tuple((n, sub(w)) for n, w in p.distinguished),
    )


# -- text form -------------------------------------------------------------
#
# Line oriented.  `relator:` lines accept either a bare word or an equation
# `lhs = rhs` (meaning the relator lhs rhs^-1); the formatter always emits
# bare words.  This is the fixture/display format, not the manifest DSL.

def format_presentation(p: FpPresentation) -> str:
    lines = ["generators: " + ", ".join(p.generators)]
    lines += [f"relator: {format_word(r)}" for r in p.relators]
    lines += [f"conditional: {format_word(c.relator)} : {format_word(c.key)}"
              for c in p.conditional]
    lines += [f"meridional: {t.label} : {format_word(t.key)}"
              for t in p.meridional]
    lines += [f"distinguished: {n} = {format_word(w)}"
              for n, w in p.distinguished]
    return "\n".join(lines)


def _parse_relator_text(text: str) -> Word:
    if "=" in text:
        lhs, _, rhs = text.partition("=")
        return parse_word(lhs) * parse_word(rhs).inverse()
    return parse_word(text)


def parse_presentation(text: str) -> FpPresentation:
    generators: tuple[str, ...] = ()
    relators: list[Word] = []
    conditional: list[ConditionalRelator] = []
    meridional: list[MeridionalTier] = []
    distinguished: list[tuple[str, Word]] = []
    saw_generators = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'kind: ...'")
        kind = kind.strip()
        rest = rest.strip()
        try:
            if kind == "generators":
                saw_generators = True
                generators = tuple(g.strip() for g in rest.split(",") if g.strip())
            elif kind == "relator":
                relators.append(_parse_relator_text(rest))
            elif kind == "conditional":
                rel_text, sep2, key_text = rest.rpartition(":")
                if not sep2:
                    raise PresentationError("conditional needs 'relator : key'")
                conditional.append(ConditionalRelator(
                    _parse_relator_text(rel_text.strip()),
                    parse_word(key_text.strip())))
            elif kind == "meridional":
                label, sep2, key_text = rest.partition(":")
                if not sep2:
                    raise PresentationError("meridional needs 'label : key'")
                meridional.append(MeridionalTier(label.strip(),
                                                 parse_word(key_text.strip())))
            elif kind == "distinguished":
                name, sep2, word_text = rest.partition("=")
                if not sep2:
                    raise PresentationError("distinguished needs 'name = word'")
                distinguished.append((name.strip(), parse_word(word_text.strip())))
            else:
                raise PresentationError(f"unknown section {kind!r}")
        except (WordSyntaxError, PresentationError) as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
    if not saw_generators:
        raise PresentationError("missing 'generators:' line")
    return FpPresentation(
        generators=generators,
        relators=tuple(r for r in relators if r),
        conditional=tuple(conditional),
        meridional=tuple(meridional),
        distinguished=tuple(distinguished),
    )
