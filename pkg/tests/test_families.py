from fractions import Fraction

import pytest

from kovacic_aim.errors import KovacicError, NonSquareLeading
from kovacic_aim.families import FAMILIES, doubly_confluent_point, get_family
from kovacic_aim.kovacic import Signs
from kovacic_aim.params import ParamSpace
from kovacic_aim.parser import parse
from kovacic_aim.pipeline import VerdictStatus, solve, stratum_membership


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_registry_parses(name):
    family = get_family(name)
    assert family.name == name
    assert family.L.symbols == frozenset(family.params.names)
    assert not family.L.is_concrete


def test_canonical_family():
    family = get_family("canonical_3_1")
    assert family.params.names == ("mu",)
    assert family.L == parse("x^3 + mu*x^2 + 2/x^2", ParamSpace.parse_declaration("mu"))
    assert family.specialize({"mu": 0}).L == parse("x^3 + 2*x^-2")


@pytest.mark.parametrize("name", ["canonical_3", "canonical_x_1", "canonical_0_1", "airy", ""])
def test_bad_family_names(name):
    with pytest.raises(KovacicError):
        get_family(name)


def test_specialize_needs_every_parameter():
    with pytest.raises(KovacicError, match="gamma, delta"):
        get_family("biconfluent").specialize({"alpha": 1, "beta": 0})


def test_doubly_confluent_point():
    eq = doubly_confluent_point(alpha=1, beta=Fraction(-9, 4), gamma=Fraction(-1, 4), delta=Fraction(-21, 16))
    assert eq.L == parse("x^2 + 9 + 6/x^2 + 1/x^4 + 1/x^6")
    assert dict(stratum_membership(eq, 2))[Signs(1, 1)]
    found = {(s.lam, s.P, s.omega) for s in solve(eq).solutions}
    assert (2, parse("x^2 + 2"), parse("x + x^-3")) in found


def test_doubly_confluent_scaled_alpha():
    eq = doubly_confluent_point(alpha=4, beta=0, gamma=0, delta=0)
    assert eq.L == parse("x^2 + 3/(4*x^2) + 64/x^6")


def test_doubly_confluent_needs_square_alpha():
    with pytest.raises(NonSquareLeading):
        doubly_confluent_point(alpha=2, beta=0, gamma=0, delta=0)
    with pytest.raises(NonSquareLeading):
        doubly_confluent_point(alpha=0, beta=0, gamma=0, delta=0)


def test_solo_beta_never_integrable():
    family = get_family("solo_beta")
    for beta in (-3, 1, Fraction(5, 2)):
        assert solve(family.specialize({"beta": beta}), d_max=6).status is VerdictStatus.NOT_INTEGRABLE_UP_TO


def test_doubly_confluent_curve_point_is_outside_degree_one():
    # alpha-tilde = 2, gamma = 1, beta = 3/2, delta = -3/16
    eq = doubly_confluent_point(alpha=4, beta=Fraction(3, 2), gamma=1, delta=Fraction(-3, 16))
    assert eq.L == parse("x^2 - 3 + 3/(2*x^2) - 8/x^4 + 64/x^6")
    assert not any(inside for _, inside in stratum_membership(eq, 1))
