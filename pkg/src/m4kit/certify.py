"""Certified simplification of presentations.

The engine repeatedly applies a small move set — commuting-pair discovery,
commutation cancellation, generator elimination, length-reducing relator
application, meridional-tier discharge and conditional-relator activation —
recording every move as a replayable trace step (see trace.py).  A verdict
is only ever *positive*: the group is trivial, infinite cyclic, or finite
cyclic, read off a terminal state that is the empty or a single-generator
presentation.  Anything else is Inconclusive with a reason; the engine
never claims a group is nontrivial.

Corroborating evidence (abelianization, coset enumeration) is computed
independently of the trace and stored on the certificate; a consistency
gate downgrades any verdict whose abelianization disagrees.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterable

from .abelian import AbelianGroup, h1
from .coset import CosetCount, Exceeded, coset_enumeration
from .presentation import (
    ConditionalRelator,
    FpPresentation,
    MeridionalTier,
    defining_rotation,
    format_presentation,
    parse_presentation,
)
from .trace import (
    ActivateConditional,
    CommutationCancel,
    DischargeMeridional,
    Eliminate,
    PairFromDefinition,
    PairFromRelator,
    ReplaceSubword,
    TraceStep,
    step_from_json,
    step_to_json,
)
from .words import (
    Word,
    commutator,
    cyclic_reduce,
    cyclically_equal,
    format_word,
    gen,
    parse_word,
    rotate,
    substitute,
)

TRIVIAL = "trivial"
INFINITE_CYCLIC = "infinite_cyclic"
FINITE_CYCLIC = "finite_cyclic"
INCONCLUSIVE = "inconclusive"


def _default_cosets() -> int:
    return int(os.environ.get("M4KIT_BUDGET_COSETS", "1000000"))


@dataclass(frozen=True)
class Budget:
    max_cosets: int = field(default_factory=_default_cosets)
    max_derivation_steps: int = 10_000
    corroborate: bool = True


class _State:
    """Mutable working copy of a presentation plus the proved commuting
    pairs.  Relators are kept cyclically reduced and nonempty; conditional
    relators with empty current form are dropped as vacuous."""

    def __init__(self, p: FpPresentation):
        self.gens: list[str] = list(p.generators)
        self.relators: list[Word] = []
        for r in p.relators:
            r = cyclic_reduce(r)
            if r:
                self.relators.append(r)
        # (current relator, current key, original relator)
        self.conditional: list[tuple[Word, Word, Word]] = [
            (c.relator, c.key, c.relator) for c in p.conditional if c.relator]
        self.tiers: list[MeridionalTier] = list(p.meridional)
        self.distinguished: list[tuple[str, Word]] = list(p.distinguished)
        self.pairs: set[frozenset[str]] = set()
        self.activated: list[Word] = []      # original forms, for reporting

    def paired(self, a: str, b: str) -> bool:
        return a == b or frozenset((a, b)) in self.pairs

    def commutes_with(self, letters: Iterable[tuple[str, int]], x: str) -> bool:
        return all(self.paired(n, x) for n, _ in letters)

    def substitute_everywhere(self, name: str, definition: Word) -> None:
        images = {name: definition}
        new_rels = []
        for r in self.relators:
            r2 = cyclic_reduce(substitute(r, images))
            if r2:
                new_rels.append(r2)
        self.relators = new_rels
        new_cond = []
        for rel, key, orig in self.conditional:
            rel2 = substitute(rel, images)
            if rel2:
                new_cond.append((rel2, substitute(key, images), orig))
        self.conditional = new_cond
        self.tiers = [MeridionalTier(t.label, substitute(t.key, images))
                      for t in self.tiers]
        self.distinguished = [(n, substitute(w, images))
                              for n, w in self.distinguished]
        self.gens.remove(name)
        self.pairs = {pr for pr in self.pairs if name not in pr}

    def snapshot(self) -> FpPresentation:
        return FpPresentation(
            generators=tuple(self.gens),
            relators=tuple(self.relators),
            conditional=tuple(ConditionalRelator(rel, key)
                              for rel, key, _ in self.conditional),
            meridional=tuple(self.tiers),
            distinguished=tuple(self.distinguished),
        )


# -- move discovery --------------------------------------------------------

def _closure_pass(state: _State) -> list[TraceStep]:
    """One fixpoint run of commuting-pair discovery.  Seeds from relators
    that are commutators of two letters; derives more pairs from
    single-occurrence (definitional) relators whose definition already
    commutes with a generator."""
    steps: list[TraceStep] = []
    changed = True
    while changed:
        changed = False
        for r in state.relators:
            names = r.names()
            if len(r) == 4 and len(names) == 2:
                x, y = sorted(names)
                if state.paired(x, y):
                    continue
                if any(cyclically_equal(r, commutator(gen(x, ex), gen(y, ey)))
                       for ex in (1, -1) for ey in (1, -1)):
                    state.pairs.add(frozenset((x, y)))
                    steps.append(PairFromRelator(x, y, r))
                    changed = True
        for r in state.relators:
            for g in dict.fromkeys(n for n, _ in r.letters):
                if r.occurrences(g) != 1:
                    continue
                rot = defining_rotation(r, g)
                assert rot is not None
                _, definition = rot
                for other in state.gens:
                    if other == g or state.paired(g, other):
                        continue
                    if state.commutes_with(definition.letters, other):
                        state.pairs.add(frozenset((g, other)))
                        steps.append(PairFromDefinition(g, other, r))
                        changed = True
    return steps


def _find_cancel(state: _State) -> CommutationCancel | None:
    """First commutation cancellation x^e ... x^-e (interior commuting with
    x), checking both the inner arc and, via rotation, the cyclic outer
    arc of each candidate pair."""
    for r in state.relators:
        L = len(r)
        letters = r.letters
        for i in range(L - 1):
            xi, ei = letters[i]
            for j in range(i + 1, L):
                if letters[j] != (xi, -ei):
                    continue
                if state.commutes_with(letters[i + 1:j], xi):
                    return _make_cancel(state, r, 0, i, j, xi)
                exterior = letters[j + 1:] + letters[:i]
                if state.commutes_with(exterior, xi):
                    return _make_cancel(state, r, j, 0, L - j + i, xi)
    return None


def _make_cancel(state: _State, r: Word, rotation: int, i: int, j: int,
                 x: str) -> CommutationCancel:
    w = rotate(r, rotation)
    after = cyclic_reduce(Word(w.letters[:i] + w.letters[i + 1:j]
                               + w.letters[j + 1:]))
    return CommutationCancel(before=r, after=after, rotation=rotation,
                             i=i, j=j, x=x)


def _find_elimination(state: _State) -> Eliminate | None:
    """Cheapest Tietze elimination.  A generator occurring exactly once in
    some relator can be eliminated; kills (relator g^±1) and renames
    (definition of length one) are free, otherwise the cost estimates the
    growth caused by substituting the definition elsewhere."""
    best = None
    for idx, r in enumerate(state.relators):
        for g in sorted(r.names()):
            if r.occurrences(g) != 1:
                continue
            rot = defining_rotation(r, g)
            assert rot is not None
            _, definition = rot
            occ_elsewhere = sum(r2.occurrences(g)
                                for k, r2 in enumerate(state.relators) if k != idx)
            occ_elsewhere += sum(rel.occurrences(g) + key.occurrences(g)
                                 for rel, key, _ in state.conditional)
            occ_elsewhere += sum(t.key.occurrences(g) for t in state.tiers)
            cost = occ_elsewhere * max(len(definition) - 1, 0)
            cand = (cost, len(definition), g, idx)
            if best is None or cand < best[0]:
                best = (cand, g, definition, r)
    if best is None:
        return None
    _, g, definition, r = best
    return Eliminate(gen=g, definition=definition, via=r)


def _find_replacement(state: _State) -> ReplaceSubword | None:
    """Length-reducing application of one relator inside another: if a
    rotation/inversion of `via` splits as s t with |s| > |t|, then s = t^-1
    in the group and any occurrence of s may be replaced by t^-1."""
    for ti, target in enumerate(state.relators):
        tletters = target.letters
        for vi, via in enumerate(state.relators):
            if vi == ti or via == target or len(via) < 2:
                continue
            for inverted in (False, True):
                base = via.inverse() if inverted else via
                for rot_k in range(len(base)):
                    w = rotate(base, rot_k)
                    for split in range(len(w), len(w) // 2, -1):
                        if split > len(tletters):
                            continue
                        s = w.letters[:split]
                        t = Word(w.letters[split:])
                        for at in range(len(tletters) - split + 1):
                            if tletters[at:at + split] != s:
                                continue
                            after = cyclic_reduce(Word(
                                tletters[:at] + t.inverse().letters
                                + tletters[at + split:]))
                            return ReplaceSubword(
                                before=target, after=after, via=via,
                                via_rotation=rot_k, via_inverted=inverted,
                                split=split, at=at)
    return None


# -- move application -------------------------------------------------------

def _apply_cancel(state: _State, step: CommutationCancel) -> None:
    i = state.relators.index(step.before)
    if step.after:
        state.relators[i] = step.after
    else:
        del state.relators[i]


def _apply_elimination(state: _State, step: Eliminate) -> None:
    i = state.relators.index(step.via)
    del state.relators[i]
    state.substitute_everywhere(step.gen, step.definition)


def _apply_replacement(state: _State, step: ReplaceSubword) -> None:
    i = state.relators.index(step.before)
    if step.after:
        state.relators[i] = step.after
    else:
        del state.relators[i]


def _discharge_pass(state: _State) -> list[TraceStep]:
    """Discharge tiers and activate conditional relators whose current key
    word is freely trivial."""
    steps: list[TraceStep] = []
    remaining_tiers = []
    for t in state.tiers:
        if not t.key:
            steps.append(DischargeMeridional(t.label))
        else:
            remaining_tiers.append(t)
    state.tiers = remaining_tiers
    remaining_cond = []
    for rel, key, orig in state.conditional:
        if not key:
            steps.append(ActivateConditional(rel))
            state.activated.append(orig)
            promoted = cyclic_reduce(rel)
            if promoted:
                state.relators.append(promoted)
        else:
            remaining_cond.append((rel, key, orig))
    state.conditional = remaining_cond
    return steps


# -- the engine -------------------------------------------------------------

def _run_engine(p: FpPresentation, budget: Budget, *,
                allow_discharge: bool) -> tuple[_State, list[TraceStep], bool]:
    """Returns (final state, trace, budget_exhausted)."""
    state = _State(p)
    trace: list[TraceStep] = []

    def spent() -> bool:
        return len(trace) >= budget.max_derivation_steps

    while True:
        if spent():
            return state, trace, True
        progress = False
        new = _closure_pass(state)
        trace.extend(new)
        progress |= bool(new)
        if allow_discharge:
            new = _discharge_pass(state)
            trace.extend(new)
            progress |= bool(new)
        step = _find_elimination(state)
        if step is not None and not step.definition:
            trace.append(step)
            _apply_elimination(state, step)
            continue
        cancel = _find_cancel(state)
        if cancel is not None:
            trace.append(cancel)
            _apply_cancel(state, cancel)
            continue
        if step is not None:
            trace.append(step)
            _apply_elimination(state, step)
            continue
        repl = _find_replacement(state)
        if repl is not None:
            trace.append(repl)
            _apply_replacement(state, repl)
            continue
        if not progress:
            return state, trace, False


def simplify(p: FpPresentation, budget: Budget | None = None) -> FpPresentation:
    """Tietze-safe simplification.  Never discharges tiers or activates
    conditional relators, so the presented group (and in particular its
    abelianization over the ordinary relators) is preserved exactly."""
    state, _, _ = _run_engine(p, budget or Budget(), allow_discharge=False)
    return state.snapshot()


def commutation_closure(p: FpPresentation) -> frozenset[frozenset[str]]:
    """The commuting generator pairs provable from p's relators by the
    closure rules (commutator relators; definitional relators whose
    definition commutes letterwise)."""
    state = _State(p)
    _closure_pass(state)
    return frozenset(state.pairs)


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    verdict: str
    generator: str | None
    order: int | None
    reason: str | None
    presentation: FpPresentation
    final: FpPresentation
    trace: tuple[TraceStep, ...]
    activated: tuple[Word, ...]
    h1_rank: int | None
    h1_torsion: tuple[int, ...] | None
    coset_index: int | None
    coset_subgroup: tuple[str, ...] | None
    steps_used: int
    target: str | None
    matches_target: bool | None

    @property
    def is_definite(self) -> bool:
        return self.verdict != INCONCLUSIVE

    def describe(self) -> str:
        if self.verdict == TRIVIAL:
            return "trivial"
        if self.verdict == INFINITE_CYCLIC:
            return f"Z (generated by {self.generator})"
        if self.verdict == FINITE_CYCLIC:
            return f"Z/{self.order} (generated by {self.generator})"
        return f"inconclusive: {self.reason}"

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": "m4kit.certificate/1",
            "verdict": self.verdict,
            "generator": self.generator,
            "order": self.order,
            "reason": self.reason,
            "presentation": format_presentation(self.presentation),
            "final": format_presentation(self.final),
            "trace": [step_to_json(s) for s in self.trace],
            "activated": [format_word(w) for w in self.activated],
            "h1_rank": self.h1_rank,
            "h1_torsion": list(self.h1_torsion) if self.h1_torsion is not None else None,
            "coset_index": self.coset_index,
            "coset_subgroup": list(self.coset_subgroup)
                              if self.coset_subgroup is not None else None,
            "steps_used": self.steps_used,
            "target": self.target,
            "matches_target": self.matches_target,
        }

    @staticmethod
    def from_json(data: dict[str, Any]) -> "Certificate":
        assert data.get("schema") == "m4kit.certificate/1", "unknown schema"
        return Certificate(
            verdict=data["verdict"],
            generator=data["generator"],
            order=data["order"],
            reason=data["reason"],
            presentation=parse_presentation(data["presentation"]),
            final=parse_presentation(data["final"]),
            trace=tuple(step_from_json(s) for s in data["trace"]),
            activated=tuple(parse_word(w) for w in data["activated"]),
            h1_rank=data["h1_rank"],
            h1_torsion=tuple(data["h1_torsion"])
                       if data["h1_torsion"] is not None else None,
            coset_index=data["coset_index"],
            coset_subgroup=tuple(data["coset_subgroup"])
                           if data["coset_subgroup"] is not None else None,
            steps_used=data["steps_used"],
            target=data["target"],
            matches_target=data["matches_target"],
        )


def _verdict_from_state(state: _State) -> tuple[str, str | None, int | None, str | None]:
    """(verdict, generator, order, reason) read off a terminal state."""
    if state.tiers:
        labels = ", ".join(t.label for t in state.tiers)
        return (INCONCLUSIVE, None, None,
                f"meridional tier(s) {labels} not discharged: key word was "
                "never proved trivial")
    if not state.gens:
        return (TRIVIAL, None, None, None)
    if len(state.gens) == 1:
        g = state.gens[0]
        if state.conditional:
            return (INCONCLUSIVE, None, None,
                    "conditional relator(s) never activated: key word was "
                    "never proved trivial")
        exponents = [abs(r.exponent_sum(g)) for r in state.relators]
        d = 0
        for e in exponents:
            d = gcd(d, e)
        if d == 0:
            return (INFINITE_CYCLIC, g, None, None)
        if d >= 2:
            return (FINITE_CYCLIC, g, d, None)
        return (INCONCLUSIVE, None, None,
                "single-generator state with relator exponents of gcd 1 "
                "was not resolved")
    return (INCONCLUSIVE, None, None,
            f"simplification stalled with {len(state.gens)} generators and "
            f"{len(state.relators)} relators")


def _matches(verdict: str, order: int | None, target: str | None) -> bool | None:
    if target is None:
        return None
    if target == "trivial":
        return verdict == TRIVIAL
    if target == "Z":
        return verdict == INFINITE_CYCLIC
    if target.startswith("Z/"):
        return verdict == FINITE_CYCLIC and order == int(target[2:])
    raise ValueError(f"unknown target {target!r} (expected trivial, Z, or Z/n)")


def certify(p: FpPresentation, target: str | None = None,
            budget: Budget | None = None) -> Certificate:
    """Run the derivation engine on p and package the result.

    Definite verdicts carry a trace ending at the empty or a single-
    generator presentation (replayable by checker.py), pass an
    abelianization consistency gate, and — unless budget.corroborate is
    off — are corroborated by a coset enumeration: over the trivial
    subgroup for a trivial verdict, over the surviving generator for a
    cyclic one (expected index 1 in both cases).
    """
    budget = budget or Budget()
    state, trace, exhausted = _run_engine(p, budget, allow_discharge=True)
    if exhausted:
        verdict, generator, order, reason = (
            INCONCLUSIVE, None, None,
            f"derivation budget ({budget.max_derivation_steps} steps) exhausted")
    else:
        verdict, generator, order, reason = _verdict_from_state(state)

    h1_rank: int | None = None
    h1_torsion: tuple[int, ...] | None = None
    coset_index: int | None = None
    coset_subgroup: tuple[str, ...] | None = None

    if verdict != INCONCLUSIVE:
        # certified basis: the input with the (now discharged) tier removed
        basis = p.strip_meridional()
        ab = h1(basis, include_h1_safe_conditionals=True)
        h1_rank, h1_torsion = ab.rank, ab.torsion
        expected = {
            TRIVIAL: AbelianGroup(0),
            INFINITE_CYCLIC: AbelianGroup(1),
            FINITE_CYCLIC: AbelianGroup(0, (order,) if order else ()),
        }[verdict]
        if ab != expected:
            verdict, generator, order, reason = (
                INCONCLUSIVE, None, None,
                f"abelianization gate: derivation reached a "
                f"{expected} answer but H1 of the input is {ab}")

    if verdict != INCONCLUSIVE and budget.corroborate:
        enum_p = FpPresentation(
            generators=p.generators,
            relators=p.relators + tuple(state.activated))
        subgroup_names: tuple[str, ...] = ()
        subgroup_words: list[Word] = []
        if verdict in (INFINITE_CYCLIC, FINITE_CYCLIC):
            assert generator is not None
            subgroup_names = (generator,)
            subgroup_words = [gen(generator)]
        result = coset_enumeration(enum_p, subgroup_words,
                                   max_cosets=budget.max_cosets)
        coset_subgroup = subgroup_names
        if isinstance(result, CosetCount):
            coset_index = result.index
            if result.index != 1:
                verdict, generator, order, reason = (
                    INCONCLUSIVE, None, None,
                    f"coset enumeration gate: expected index 1 over "
                    f"{subgroup_names or 'the trivial subgroup'}, got {result.index}")
        else:
            assert isinstance(result, Exceeded)
            coset_index = None          # budget ran out; trace still stands

    return Certificate(
        verdict=verdict,
        generator=generator,
        order=order,
        reason=reason,
        presentation=p,
        final=state.snapshot(),
        trace=tuple(trace),
        activated=tuple(state.activated),
        h1_rank=h1_rank,
        h1_torsion=h1_torsion,
        coset_index=coset_index,
        coset_subgroup=coset_subgroup,
        steps_used=len(trace),
        target=target,
        matches_target=_matches(verdict, order, target),
    )
