import random
from fractions import Fraction

from kovacic_aim.diffpoly import DifferentialPolynomial, dp_derive, dp_evaluate
from kovacic_aim.laurent import LaurentPolynomial

a, b = DifferentialPolynomial.alpha, DifferentialPolynomial.beta


def test_derive_is_leibniz():
    p = a() * a() * b(1)
    assert p.derive() == 2 * a() * a(1) * b(1) + a() * a() * b(2)
    assert DifferentialPolynomial.constant(5).derive() == 0
    q = a(1) + b()
    assert (p * q).derive() == p.derive() * q + p * q.derive()


def test_weights():
    assert (a() * b(1)).weights() == {4}
    assert (a() * b(1) - a(1) * b() - b() * b()).weights() == {4}
    assert (a(2) + b()).weights() == {3, 2}
    assert DifferentialPolynomial.constant(1).weights() == {0}


def test_display():
    p = a() * b(1) - a(1) * b() - b() * b()
    assert str(p) == "alpha*beta' - alpha'*beta - beta^2"
    assert str(DifferentialPolynomial()) == "0"
    assert str(-b()) == "-beta"
    assert str(3 * a() * a()) == "3*alpha^2"


def test_max_order():
    assert (a(3) * b(1)).max_order() == 3
    assert DifferentialPolynomial.constant(2).max_order() == 0


def test_evaluate():
    f = LaurentPolynomial({1: 2, -1: 1})
    g = LaurentPolynomial({0: 3})
    p = a(1) * b() + a() * a()
    expected = f.derive() * g + f * f
    assert p.evaluate(f, g) == expected
    assert DifferentialPolynomial.constant(Fraction(1, 2)).evaluate(f, g) == LaurentPolynomial({0: Fraction(1, 2)})


def random_laurent(rng):
    return LaurentPolynomial({k: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for k in range(-2, 3)
                              if rng.random() < 0.6})


def random_dp(rng):
    p = DifferentialPolynomial()
    for _ in range(rng.randint(1, 4)):
        term = DifferentialPolynomial.constant(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice((a, b))(rng.randint(0, 2))
        p = p + term
    return p


def test_evaluation_commutes_with_derivation():
    rng = random.Random(31)
    for _ in range(120):
        p, f, g = random_dp(rng), random_laurent(rng), random_laurent(rng)
        assert dp_evaluate(dp_derive(p), f, g) == dp_evaluate(p, f, g).derive(), (str(p), str(f), str(g))


def test_evaluation_is_multiplicative():
    rng = random.Random(32)
    for _ in range(120):
        p, q, f, g = random_dp(rng), random_dp(rng), random_laurent(rng), random_laurent(rng)
        assert dp_evaluate(p * q, f, g) == dp_evaluate(p, f, g) * dp_evaluate(q, f, g)
        assert dp_evaluate(p + q, f, g) == dp_evaluate(p, f, g) + dp_evaluate(q, f, g)
