"""The independent step-checker.  One direction is boring (honest
certificates replay); the point of this file is the other direction —
every kind of tampering must raise CheckFailure."""

from dataclasses import replace

import pytest

from m4kit.certify import certify
from m4kit.checker import CheckFailure, replay
from m4kit.presentation import ConditionalRelator, FpPresentation, MeridionalTier
from m4kit.trace import Eliminate
from m4kit.words import gen, parse_word


def pres(gens: str, *rels: str, **extra) -> FpPresentation:
    return FpPresentation(tuple(gens.split()),
                          tuple(parse_word(r) for r in rels), **extra)


TRIVIAL_P = pres("a b", "a b^-1", "b")
Z_P = pres("a b", "[a, b]", "a b^-2")          # a = b^2, leaves Z on b
ZN_P = pres("a b", "b a^-2", "b^-1 a^7")        # collapses to a^5
TIERED_P = pres("a b", "b",
                meridional=(MeridionalTier("g", parse_word("[a, b]")),),
                conditional=(ConditionalRelator(parse_word("a^10"),
                                                parse_word("[a, b]")),))


@pytest.fixture(scope="module")
def certs():
    return {name: certify(p) for name, p in
            [("trivial", TRIVIAL_P), ("z", Z_P), ("zn", ZN_P),
             ("tiered", TIERED_P)]}


def test_honest_certificates_replay(certs):
    for c in certs.values():
        assert c.is_definite
        replay(c)                       # no exception is the assertion
        replay(c, c.presentation)


def test_presentation_swap_rejected(certs):
    with pytest.raises(CheckFailure):
        replay(certs["trivial"], Z_P)


def test_dropped_step_rejected(certs):
    c = certs["trivial"]
    with pytest.raises(CheckFailure):
        replay(replace(c, trace=c.trace[:-1]))


def test_forged_verdict_rejected(certs):
    c = certs["z"]
    with pytest.raises(CheckFailure):
        replay(replace(c, verdict="trivial"))


def test_forged_order_rejected(certs):
    c = certs["zn"]
    assert c.order == 5
    with pytest.raises(CheckFailure):
        replay(replace(c, order=3))


def test_forged_generator_rejected(certs):
    c = certs["z"]
    with pytest.raises(CheckFailure):
        replay(replace(c, generator="a" if c.generator != "a" else "b"))


def test_z_claim_on_torsion_rejected(certs):
    c = certs["zn"]
    with pytest.raises(CheckFailure):
        replay(replace(c, verdict="infinite_cyclic", order=None))


def test_tampered_final_state_rejected(certs):
    c = certs["trivial"]
    fake_final = pres("a")
    with pytest.raises(CheckFailure):
        replay(replace(c, final=fake_final))


def test_tampered_step_rejected(certs):
    c = certs["z"]
    doctored = []
    for s in c.trace:
        if isinstance(s, Eliminate):
            # claim a different definition than the relator supports
            s = replace(s, definition=s.definition * gen("b"))
        doctored.append(s)
    assert doctored != list(c.trace), "fixture needs an Eliminate step"
    with pytest.raises(CheckFailure):
        replay(replace(c, trace=tuple(doctored)))


def test_injected_step_rejected(certs):
    c = certs["trivial"]
    # append a fabricated elimination over a generator that is long gone
    forged = c.trace + (Eliminate(gen="a", definition=parse_word("1"),
                                  via=gen("a")),)
    with pytest.raises(CheckFailure):
        replay(replace(c, trace=forged))


def test_activation_count_audited(certs):
    c = certs["tiered"]
    assert c.activated, "fixture should activate its conditional"
    with pytest.raises(CheckFailure):
        replay(replace(c, activated=()))


def test_undischarged_tier_cannot_carry_definite_verdict(certs):
    c = certs["z"]
    # graft a tier onto the input without any discharge step in the trace
    tiered_input = replace(c.presentation, meridional=(
        MeridionalTier("g", parse_word("[a, b]")),))
    with pytest.raises(CheckFailure):
        replay(replace(c, presentation=tiered_input))


def test_inconclusive_certificates_replay_without_claims():
    c = certify(pres("a b", "a^2", "b^2", "(a b)^7"))
    assert not c.is_definite
    replay(c)  # the trace itself must still be honest
