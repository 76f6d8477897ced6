import random

import pytest

from detschemes import GF, NOT_HOMOGENEOUS, QQ, ZERO, PolyRing
from detschemes.linalg import poly_det
from detschemes.ring import ParseError, RingError, random_homogeneous


def rational_point(values):
    return [QQ.from_int(v) for v in values]


def test_parse_two_term_quadric(ring):
    p = ring.parse("x1*x3 - x0*x2")
    assert len(p.terms) == 2
    assert p.homogeneous_degree() == 2


def test_parse_zero(ring):
    p = ring.parse("0")
    assert p.is_zero()
    assert p.terms == ()


def test_parse_matches_laplace_minor(ring):
    # the (2,3)-column minor of the double-point matrix, expanded exactly
    grid = [
        [ring.parse("x2"), ring.parse("x3")],
        [ring.parse("x1"), ring.parse("x2")],
    ]
    assert poly_det(grid) == ring.parse("x2^2 - x1*x3")


def test_parse_rejects_unknown_variable(ring):
    with pytest.raises(ParseError):
        ring.parse("x9 + x0")


def test_parse_rejects_malformed(ring):
    with pytest.raises(ParseError):
        ring.parse("x0 + * x1")


def test_parse_rational_coefficients(ring):
    p = ring.parse("1/2*x0 + 3/4*x1")
    assert str(p) == "1/2*x0 + 3/4*x1"
    assert ring.parse(str(p)) == p


def test_modular_coefficient_denominator_zero():
    ring = PolyRing(("x0", "x1", "x2"), GF(5))
    with pytest.raises(ParseError):
        ring.parse("1/5*x0")


def test_add_inverse(ring):
    x0 = ring.variable(0)
    assert (x0 + (-x0)).is_zero()


def test_difference_of_squares(ring):
    x0, x1 = ring.variable(0), ring.variable(1)
    assert (x0 + x1) * (x0 - x1) == ring.parse("x0^2 - x1^2")


def test_scale_over_prime_field():
    ring = PolyRing(("x0", "x1", "x2"), GF(5))
    p = ring.parse("4*x0")
    assert p.scale(ring.field.from_int(3)) == ring.parse("2*x0")  # 12 mod 5


def test_homogeneous_degree_cases(ring):
    assert ring.parse("x1*x3 - x0*x2").homogeneous_degree() == 2
    assert ring.parse("x0 + x1^2").homogeneous_degree() is NOT_HOMOGENEOUS
    assert ring.parse("0").homogeneous_degree() is ZERO


def test_evaluate_examples(ring):
    assert ring.parse("x1*x3 - x0*x2").evaluate(rational_point((1, 1, 1, 1))) == 0
    assert ring.parse("x0^2").evaluate(rational_point((3, 0, 0, 0))) == 9
    # by hand: 1*1 - 2*3 = -5
    assert ring.parse("x2^2 - x1*x3").evaluate(rational_point((0, 2, 1, 3))) == -5


def test_evaluate_length_mismatch(ring):
    with pytest.raises(RingError):
        ring.parse("x0").evaluate(rational_point((1, 2)))


def test_ring_rejects_duplicate_variables():
    with pytest.raises(RingError):
        PolyRing(("x0", "x0", "x1"))


def test_ring_rejects_too_few_variables():
    with pytest.raises(RingError):
        PolyRing(("x0", "x1"))


def _random_poly(ring, rng, max_degree=3):
    terms = []
    for _ in range(rng.randint(0, 6)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(ring.nvars)] += 1
        from detschemes.ring import Monomial

        terms.append((Monomial(tuple(exps)), QQ.from_int(rng.randint(-5, 5))))
    return ring.from_terms(terms)


def test_ring_laws_on_random_samples(ring):
    rng = random.Random(7)
    for _ in range(40):
        p, q, r = (_random_poly(ring, rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r


def test_parse_print_roundtrip_on_random_samples(ring):
    rng = random.Random(11)
    for _ in range(40):
        p = _random_poly(ring, rng)
        assert ring.parse(str(p)) == p


def test_evaluate_is_ring_homomorphism(ring):
    rng = random.Random(13)
    for _ in range(25):
        p, q = _random_poly(ring, rng), _random_poly(ring, rng)
        point = rational_point([rng.randint(-4, 4) for _ in range(4)])
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


def test_homogeneous_scaling_law(ring):
    rng = random.Random(17)
    for _ in range(20):
        d = rng.randint(1, 4)
        p = random_homogeneous(ring, d, rng)
        v = [rng.randint(-3, 3) for _ in range(4)]
        lam = rng.randint(-3, 3)
        lhs = p.evaluate(rational_point([lam * x for x in v]))
        rhs = QQ.from_int(lam) ** d * p.evaluate(rational_point(v))
        assert lhs == rhs


def test_exact_division(ring):
    p = ring.parse("x0^2 - x1^2")
    q = ring.parse("x0 + x1")
    assert p.exact_div(q) == ring.parse("x0 - x1")
    with pytest.raises(RingError):
        ring.parse("x0^2 + x1").exact_div(q)


def test_monomial_enumeration_counts(ring):
    for d in range(6):
        assert len(ring.monomials_of_degree(d)) == ring.dim_of_degree(d)


def test_ring_mismatch_rejected(ring, ring_p2):
    with pytest.raises(RingError):
        ring.variable(0) + ring_p2.variable(0)
    with pytest.raises(RingError):
        ring.variable(0) * ring_p2.variable(1)


def test_whitespace_insignificant(ring):
    assert ring.parse("x0+x1") == ring.parse("  x0  +  x1 ")
    assert ring.parse("2*x0^2-x1*x2") == ring.parse("2 * x0 ^ 2 - x1 * x2")


def test_functional_wrappers(ring):
    from detschemes import evaluate, homogeneous_degree, parse_polynomial, poly_arith

    p = parse_polynomial("x0 + x1", ring)
    q = parse_polynomial("x0 - x1", ring)
    assert poly_arith("add", p, q) == ring.parse("2*x0")
    assert poly_arith("mul", p, q) == ring.parse("x0^2 - x1^2")
    assert poly_arith("scale", p, QQ.from_int(3)) == ring.parse("3*x0 + 3*x1")
    assert homogeneous_degree(p) == 1
    assert evaluate(p, rational_point((2, 3, 0, 0))) == 5
    with pytest.raises(RingError):
        poly_arith("pow", p, q)
