"""Independent replay of certificates.

The checker rebuilds the derivation from a certificate's trace using word
algebra only — free/cyclic reduction, rotation, substitution and a pair
set it maintains itself.  It never consults the engine, the abelianization
or the coset enumerator, so a bug there cannot hide here: every step is
re-verified against its own soundness contract (see trace.py) before it is
applied, the terminal state must match the certificate's, and the verdict
must be forced by that terminal state.

Raises CheckFailure with a specific message on the first discrepancy.
"""

from __future__ import annotations

from math import gcd

from .certify import Certificate, FINITE_CYCLIC, INFINITE_CYCLIC, TRIVIAL
from .presentation import ConditionalRelator, FpPresentation, MeridionalTier
from .trace import (
    ActivateConditional,
    CommutationCancel,
    DischargeMeridional,
    Eliminate,
    PairFromDefinition,
    PairFromRelator,
    ReplaceSubword,
)
from .words import (
    Word,
    commutator,
    cyclic_reduce,
    cyclically_equal,
    format_word,
    gen,
    rotate,
    substitute,
)


class CheckFailure(AssertionError):
    pass


def _fail(msg: str) -> None:
    raise CheckFailure(msg)


class _Replay:
    def __init__(self, p: FpPresentation):
        self.gens = list(p.generators)
        self.relators = [cyclic_reduce(r) for r in p.relators]
        self.relators = [r for r in self.relators if r]
        self.conditional = [(c.relator, c.key) for c in p.conditional if c.relator]
        self.tiers = [(t.label, t.key) for t in p.meridional]
        self.distinguished = list(p.distinguished)
        self.pairs: set[frozenset[str]] = set()
        self.activations = 0

    def paired(self, a: str, b: str) -> bool:
        return a == b or frozenset((a, b)) in self.pairs

    def require_relator(self, w: Word, what: str) -> int:
        try:
            return self.relators.index(w)
        except ValueError:
            _fail(f"{what}: relator {format_word(w)!r} is not in the state")
            raise  # unreachable

    def rewrite_of(self, r: Word, name: str) -> Word:
        """The definition of `name` read off relator r (which must mention
        it exactly once)."""
        if r.occurrences(name) != 1:
            _fail(f"relator {format_word(r)!r} does not define {name!r} "
                  "(not a single occurrence)")
        k = next(i for i, (n, _) in enumerate(r.letters) if n == name)
        rot = rotate(r, k)
        e = rot.letters[0][1]
        tail = Word(rot.letters[1:])
        return tail.inverse() if e > 0 else tail

    # -- step handlers ----------------------------------------------------

    def pair_from_relator(self, s: PairFromRelator) -> None:
        self.require_relator(s.relator, "pair_from_relator")
        if s.x == s.y or s.x not in self.gens or s.y not in self.gens:
            _fail(f"pair_from_relator: bad pair ({s.x}, {s.y})")
        if len(s.relator) != 4 or s.relator.names() != {s.x, s.y}:
            _fail(f"pair_from_relator: {format_word(s.relator)!r} is not a "
                  "two-letter commutator shape")
        if not any(cyclically_equal(s.relator, commutator(gen(s.x, ex), gen(s.y, ey)))
                   for ex in (1, -1) for ey in (1, -1)):
            _fail(f"pair_from_relator: {format_word(s.relator)!r} is not a "
                  f"commutator of {s.x}^±1 and {s.y}^±1")
        self.pairs.add(frozenset((s.x, s.y)))

    def pair_from_definition(self, s: PairFromDefinition) -> None:
        r = s.relator
        self.require_relator(r, "pair_from_definition")
        if s.gen == s.other or s.other not in self.gens or s.gen not in self.gens:
            _fail(f"pair_from_definition: bad pair ({s.gen}, {s.other})")
        definition = self.rewrite_of(r, s.gen)
        for n, _ in definition.letters:
            if not self.paired(n, s.other):
                _fail(f"pair_from_definition: letter {n!r} of the definition "
                      f"of {s.gen!r} is not known to commute with {s.other!r}")
        self.pairs.add(frozenset((s.gen, s.other)))

    def commutation_cancel(self, s: CommutationCancel) -> None:
        idx = self.require_relator(s.before, "commutation_cancel")
        L = len(s.before)
        if not (0 <= s.rotation < L and 0 <= s.i < s.j < L):
            _fail("commutation_cancel: positions out of range")
        w = rotate(s.before, s.rotation)
        ni, ei = w.letters[s.i]
        nj, ej = w.letters[s.j]
        if ni != s.x or nj != s.x or ei != -ej:
            _fail(f"commutation_cancel: positions {s.i},{s.j} do not hold "
                  f"{s.x}^e and {s.x}^-e")
        for n, _ in w.letters[s.i + 1:s.j]:
            if not self.paired(n, s.x):
                _fail(f"commutation_cancel: interior letter {n!r} is not "
                      f"known to commute with {s.x!r}")
        after = cyclic_reduce(Word(w.letters[:s.i] + w.letters[s.i + 1:s.j]
                                   + w.letters[s.j + 1:]))
        if after != s.after:
            _fail("commutation_cancel: recorded result does not match "
                  f"({format_word(after)} != {format_word(s.after)})")
        if after:
            self.relators[idx] = after
        else:
            del self.relators[idx]

    def eliminate(self, s: Eliminate) -> None:
        idx = self.require_relator(s.via, "eliminate")
        if s.gen not in self.gens:
            _fail(f"eliminate: unknown generator {s.gen!r}")
        if s.gen in s.definition.names():
            _fail(f"eliminate: definition of {s.gen!r} mentions itself")
        definition = self.rewrite_of(s.via, s.gen)
        if definition != s.definition:
            _fail(f"eliminate: relator {format_word(s.via)!r} defines "
                  f"{s.gen} = {format_word(definition)}, not "
                  f"{format_word(s.definition)}")
        del self.relators[idx]
        images = {s.gen: definition}
        new_rels = []
        for r in self.relators:
            r2 = cyclic_reduce(substitute(r, images))
            if r2:
                new_rels.append(r2)
        self.relators = new_rels
        new_cond = []
        for rel, key in self.conditional:
            rel2 = substitute(rel, images)
            if rel2:
                new_cond.append((rel2, substitute(key, images)))
        self.conditional = new_cond
        self.tiers = [(label, substitute(key, images)) for label, key in self.tiers]
        self.distinguished = [(n, substitute(w, images))
                              for n, w in self.distinguished]
        self.gens.remove(s.gen)
        self.pairs = {pr for pr in self.pairs if s.gen not in pr}

    def replace_subword(self, s: ReplaceSubword) -> None:
        idx = self.require_relator(s.before, "replace_subword")
        self.require_relator(s.via, "replace_subword (via)")
        if s.via == s.before:
            _fail("replace_subword: a relator may not rewrite itself")
        base = s.via.inverse() if s.via_inverted else s.via
        if not (0 <= s.via_rotation < len(base)):
            _fail("replace_subword: rotation out of range")
        w = rotate(base, s.via_rotation)
        if not (len(w) // 2 < s.split <= len(w)):
            _fail("replace_subword: split does not shorten")
        sub = w.letters[:s.split]
        t = Word(w.letters[s.split:])
        if s.at < 0 or s.at + s.split > len(s.before):
            _fail("replace_subword: occurrence out of range")
        if s.before.letters[s.at:s.at + s.split] != sub:
            _fail("replace_subword: claimed occurrence does not match")
        after = cyclic_reduce(Word(s.before.letters[:s.at]
                                   + t.inverse().letters
                                   + s.before.letters[s.at + s.split:]))
        if after != s.after:
            _fail("replace_subword: recorded result does not match")
        if after:
            self.relators[idx] = after
        else:
            del self.relators[idx]

    def activate_conditional(self, s: ActivateConditional) -> None:
        for k, (rel, key) in enumerate(self.conditional):
            if rel == s.relator and not key:
                del self.conditional[k]
                promoted = cyclic_reduce(rel)
                if promoted:
                    self.relators.append(promoted)
                self.activations += 1
                return
        _fail(f"activate_conditional: no conditional relator "
              f"{format_word(s.relator)!r} with a trivial key")

    def discharge_meridional(self, s: DischargeMeridional) -> None:
        for k, (label, key) in enumerate(self.tiers):
            if label == s.label and not key:
                del self.tiers[k]
                return
        _fail(f"discharge_meridional: no tier {s.label!r} with a trivial key")

    def snapshot(self) -> FpPresentation:
        return FpPresentation(
            generators=tuple(self.gens),
            relators=tuple(self.relators),
            conditional=tuple(ConditionalRelator(rel, key)
                              for rel, key in self.conditional),
            meridional=tuple(MeridionalTier(label, key)
                             for label, key in self.tiers),
            distinguished=tuple(self.distinguished),
        )


_HANDLERS = {
    PairFromRelator: _Replay.pair_from_relator,
    PairFromDefinition: _Replay.pair_from_definition,
    CommutationCancel: _Replay.commutation_cancel,
    Eliminate: _Replay.eliminate,
    ReplaceSubword: _Replay.replace_subword,
    ActivateConditional: _Replay.activate_conditional,
    DischargeMeridional: _Replay.discharge_meridional,
}


def replay(cert: Certificate, presentation: FpPresentation | None = None) -> None:
    """Replay and audit a certificate.  If `presentation` is given, it must
    equal the one embedded in the certificate (guarding against a swapped
    starting point).  Raises CheckFailure on any discrepancy."""
    if presentation is not None and presentation != cert.presentation:
        _fail("certificate presentation does not match the given one")
    state = _Replay(cert.presentation)
    for n, step in enumerate(cert.trace):
        handler = _HANDLERS.get(type(step))
        if handler is None:
            _fail(f"step {n}: unknown step kind {type(step).__name__}")
        try:
            handler(state, step)
        except CheckFailure as exc:
            raise CheckFailure(f"step {n}: {exc}") from None

    if state.snapshot() != cert.final:
        _fail("terminal state does not match the certificate's final "
              "presentation")
    if state.activations != len(cert.activated):
        _fail("activation count does not match the certificate")

    # The verdict must be forced by the terminal state via word algebra.
    if cert.verdict == TRIVIAL:
        if state.tiers:
            _fail("trivial verdict with an undischarged meridional tier")
        if state.gens:
            _fail("trivial verdict but generators remain")
    elif cert.verdict in (INFINITE_CYCLIC, FINITE_CYCLIC):
        if state.tiers:
            _fail("cyclic verdict with an undischarged meridional tier")
        if state.conditional:
            _fail("cyclic verdict with unactivated conditional relators")
        if len(state.gens) != 1 or state.gens[0] != cert.generator:
            _fail(f"cyclic verdict: surviving generators {state.gens} do not "
                  f"match claimed generator {cert.generator!r}")
        d = 0
        for r in state.relators:
            if r.names() != {cert.generator}:
                _fail("cyclic verdict: non-power relator survives")
            d = gcd(d, abs(r.exponent_sum(cert.generator)))
        if cert.verdict == INFINITE_CYCLIC and d != 0:
            _fail(f"claimed Z but relators force order {d}")
        if cert.verdict == FINITE_CYCLIC and (d < 2 or d != cert.order):
            _fail(f"claimed Z/{cert.order} but relator exponents have gcd {d}")
    else:
        # Inconclusive certificates assert nothing; the replay above already
        # confirmed the trace is honest.
        pass
