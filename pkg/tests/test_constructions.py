"""The headline families, checked cheaply: characteristic numbers across the
parameter ranges, abelianization oracles, and plumbing of the sign choice.
Certification of the groups themselves happens in the acceptance suite."""

import pytest

from m4kit.abelian import AbelianGroup, h1
from m4kit.constructions import (
    cyclic_family,
    exotic_cp2_2,
    exotic_cp2_4,
    exotic_cp2_6,
    exotic_odd_cp2,
    finite_cyclic_example,
)


def h1_core(M):
    """H1 of the closed sum: strip the meridional tier (its generators are
    conjugates of a commutator key, so they vanish in H1) and count the
    conditionals whose keys are exponent-sum zero."""
    return h1(M.pi1.strip_meridional(), include_h1_safe_conditionals=True)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_exotic_cp2_2_invariants(m):
    M = exotic_cp2_2(m)
    assert (M.euler, M.signature) == (5, -1)
    assert M.parity == "odd"
    assert M.symplectic is (m == 1)
    assert h1_core(M) == AbelianGroup(0)


@pytest.mark.parametrize("n, m", [(2, 1), (3, 1), (2, 2), (4, 3), (6, 1)])
def test_exotic_odd_cp2_invariants(n, m):
    M = exotic_odd_cp2(n, m)
    assert (M.euler, M.signature) == (4 * n + 1, -1)
    assert M.parity == "odd"
    assert M.symplectic is (m == 1)
    assert h1_core(M) == AbelianGroup(0)


@pytest.mark.parametrize("m", [1, 2])
def test_exotic_cp2_4_invariants(m):
    M = exotic_cp2_4(m)
    assert (M.euler, M.signature) == (7, -3)
    assert M.parity == "odd"
    assert M.symplectic is (m == 1)
    assert h1_core(M) == AbelianGroup(0)
    # the clash with the right-hand alpha alphabet forces the z_ prefix
    assert any(g.startswith("z_") for g in M.pi1.generators)


@pytest.mark.parametrize("m", [1, 3])
def test_exotic_cp2_6_invariants(m):
    M = exotic_cp2_6(m)
    assert (M.euler, M.signature) == (9, -5)
    assert M.parity == "odd"
    assert M.symplectic is (m == 1)
    assert h1_core(M) == AbelianGroup(0)


@pytest.mark.parametrize("p, expected", [
    (0, AbelianGroup(1)),
    (1, AbelianGroup(0)),
    (2, AbelianGroup(0, (2,))),
    (5, AbelianGroup(0, (5,))),
    (6, AbelianGroup(0, (6,))),
])
def test_cyclic_family_h1(p, expected):
    M = cyclic_family(p)
    assert (M.euler, M.signature) == (5, -1)
    assert h1_core(M) == expected


def test_cyclic_family_p1_is_the_flagship():
    assert cyclic_family(1).pi1 == exotic_cp2_2().pi1


def test_finite_cyclic_example_h1():
    M = finite_cyclic_example()
    assert (M.euler, M.signature) == (9, -1)
    assert h1_core(M) == AbelianGroup(0, (2,))


def test_sign_choice_changes_words_not_invariants():
    base, flipped = exotic_cp2_2(), exotic_cp2_2(eps1=-1, eps3=1)
    assert base.pi1 != flipped.pi1
    assert (base.euler, base.signature, base.parity, base.symplectic) == \
           (flipped.euler, flipped.signature, flipped.parity, flipped.symplectic)
    assert h1_core(base) == h1_core(flipped)


def test_names_are_compositional():
    assert exotic_cp2_2().name == "T2xG2(1,1)#BT4(1,1,1)"
    assert finite_cyclic_example().name == "G2xG2(1)#BT4(0,0,1)"
    assert "BT4(1,1,3)" in exotic_cp2_6(3).name


def test_sums_carry_one_tier_and_one_conditional():
    # the right-hand block contributes its meridional tier; the one curve
    # image known only modulo the meridian becomes the sole conditional
    for M in (exotic_cp2_2(), exotic_cp2_4(), exotic_odd_cp2(3),
              finite_cyclic_example()):
        assert len(M.pi1.meridional) == 1
        assert len(M.pi1.conditional) == 1
