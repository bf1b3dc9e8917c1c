"""Tests for core/automorphism.py"""
import random
from fractions import Fraction

import pytest

from bell_rogalski.core.automorphism import (
    Automorphism,
    RingMap,
    WeightPoint,
    act_point,
    apply_ideal,
    commute,
    compose_all,
    is_locally_algebraic,
    orbit_point,
    power,
    solve_orbit_exponent,
)
from bell_rogalski.core.errors import AutomorphismError, PointError, RingError, UnsupportedError
from bell_rogalski.core.groebner import Ideal, ideal_equal
from bell_rogalski.core.lattice import ExponentSet
from bell_rogalski.core.poly import RingSpec


def _make_ring():
    return RingSpec.polynomial("x", "y")


def _make_mixed():
    return RingSpec(("u", "z"), (True, False))


def test_from_images_and_apply():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "2*x + 1"})
    assert s.apply(R.parse("x*y")) == R.parse("2*x*y + y")
    assert s.to_dict() == {"x": "2*x + 1", "y": "y"}


def test_from_images_rejects_nonlinear_image():
    R = _make_ring()
    with pytest.raises(AutomorphismError):
        Automorphism.from_images(R, {"x": "x^2"})
    with pytest.raises(AutomorphismError):
        Automorphism.from_images(R, {"x": "x + y"})


def test_shift_on_invertible_variable_rejected():
    with pytest.raises(AutomorphismError):
        Automorphism.from_images(_make_mixed(), {"u": "u + 1"})


def test_permutation_must_respect_invertibility():
    with pytest.raises(AutomorphismError):
        Automorphism.from_images(_make_mixed(), {"u": "z", "z": "u"})


def test_swap_is_a_permutation():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "y", "y": "x"})
    assert not s.is_diagonal()
    assert s.power(2).is_identity()
    with pytest.raises(UnsupportedError):
        s.coordinate_rule(0)


def test_compose_applies_right_factor_first():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "2*x"})
    t = Automorphism.from_images(R, {"x": "x + 1"})
    f = R.parse("x")
    assert s.compose(t).apply(f) == s.apply(t.apply(f))
    assert s.compose(t).apply(f) == R.parse("2*x + 1")


def test_inverse_and_powers():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "3*y - 1", "y": "x"})
    assert s.compose(s.inverse()).is_identity()
    assert s.power(-2) == s.inverse().compose(s.inverse())
    assert s.power(3).apply(R.parse("x")) == s.apply(s.apply(s.apply(R.parse("x"))))
    assert s.power(0).is_identity()


def test_commute():
    R = _make_ring()
    a = Automorphism.from_images(R, {"x": "x + 1"})
    b = Automorphism.from_images(R, {"y": "2*y"})
    c = Automorphism.from_images(R, {"x": "2*x"})
    assert commute(a, b)
    assert not commute(a, c)


def test_act_point_translation_moves_against_shift():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "x + 1"})
    pt = WeightPoint(R, (0, 5))
    assert s.act_point(pt).coords == (Fraction(-1), Fraction(5))


def test_act_point_is_the_maximal_ideal_image():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "2*y + 1", "y": "x"})
    pt = WeightPoint(R, (3, Fraction(1, 2)))
    image = s.apply_ideal(pt.maximal_ideal())
    assert ideal_equal(image, s.act_point(pt).maximal_ideal())


def test_weight_point_parse_defaults():
    M = _make_mixed()
    pt = WeightPoint.parse(M, "z=-1/2")
    assert pt.coords == (Fraction(1), Fraction(-1, 2))
    assert pt.to_text() == "u=1,z=-1/2"


@pytest.mark.parametrize("text", ["u=0", "w=1", "u"])
def test_weight_point_parse_errors(text):
    with pytest.raises((PointError, RingError)):
        WeightPoint.parse(_make_mixed(), text)


def test_orbit_point_and_compose_all():
    R = _make_ring()
    sx = Automorphism.from_images(R, {"x": "x - 1"})
    sy = Automorphism.from_images(R, {"y": "2*y"})
    pt = WeightPoint(R, (0, 1))
    assert orbit_point([sx, sy], pt, (3, -1)).coords == (Fraction(3), Fraction(2))
    assert compose_all([sx, sy], (0, 0)).is_identity()


def test_solve_orbit_exponent():
    R = _make_ring()
    s = Automorphism.from_images(R, {"x": "x - 1", "y": "2*y"})
    pt = WeightPoint(R, (0, 1))
    assert solve_orbit_exponent(s, pt, WeightPoint(R, (2, Fraction(1, 4)))) == ExponentSet.single(2)
    assert solve_orbit_exponent(s, pt, WeightPoint(R, (2, 4))).empty


def test_is_locally_algebraic_names_orbit_spans():
    R = _make_ring()
    ok, why = is_locally_algebraic(Automorphism.from_images(R, {"x": "y + 1", "y": "x"}))
    assert ok
    assert "span{1, x, y}" in why


def test_ring_map_and_inclusion():
    A = RingSpec.polynomial("x")
    B = RingSpec.polynomial("x", "y")
    phi = RingMap.from_texts(A, B, {"x": "x*y"})
    assert phi.apply(A.parse("x^2 + 1")) == B.parse("x^2*y^2 + 1")
    inc = RingMap.inclusion(A, B)
    assert inc.apply(A.parse("x")) == B.var("x")


def test_ring_map_needs_unit_images_for_invertible_variables():
    L = RingSpec.laurent("u")
    B = RingSpec.polynomial("u")
    with pytest.raises(RingError):
        RingMap.from_texts(L, B, {"u": "u"})


def test_ring_map_after_and_before():
    A = RingSpec.polynomial("x")
    B = RingSpec.polynomial("x", "y")
    phi = RingMap.inclusion(A, B)
    s = Automorphism.from_images(A, {"x": "x + 1"})
    t = Automorphism.from_images(B, {"x": "x + 1"})
    assert phi.after(s).images == phi.before(t).images
    assert isinstance(phi.apply_ideal(Ideal(A, [A.var(0)])), Ideal)


# ---------------------------------------------------------------------------
# Randomised checks
# ---------------------------------------------------------------------------

def _random_automorphism(rng, ring):
    n = ring.nvars
    return Automorphism(
        ring,
        tuple(rng.sample(range(n), n)),
        tuple(Fraction(rng.choice([1, -1, 2, 3])) / rng.choice([1, 2]) for _ in range(n)),
        tuple(Fraction(rng.choice([0, 1, -2, 5]), rng.choice([1, 3])) for _ in range(n)),
    )


def _random_point(rng, ring):
    return WeightPoint(ring, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(ring.nvars)))


def test_ideal_image_matches_point_action():
    rng = random.Random(17)
    R = RingSpec.polynomial("x", "y", "z")
    for _ in range(100):
        s = _random_automorphism(rng, R)
        pt = _random_point(rng, R)
        image = apply_ideal(s, pt.maximal_ideal())
        assert ideal_equal(image, act_point(s, pt).maximal_ideal()), (str(s), pt.to_text())


def test_powers_add():
    rng = random.Random(19)
    R = RingSpec.polynomial("x", "y", "z")
    for _ in range(3):
        s = _random_automorphism(rng, R)
        for a in range(-5, 6):
            for b in range(-5, 6):
                assert power(s, a + b) == power(s, a).compose(power(s, b)), (str(s), a, b)


def test_commuting_automorphisms_act_in_either_order():
    rng = random.Random(29)
    R = RingSpec.polynomial("x", "y", "z")
    pairs = []
    for _ in range(20):
        s = _random_automorphism(rng, R)
        pairs.append((s, _random_automorphism(rng, R)))
        pairs.append((s, power(s, rng.choice([-2, 3]))))
    tested = 0
    for s, t in pairs:
        if not commute(s, t):
            continue
        tested += 1
        for _ in range(5):
            pt = _random_point(rng, R)
            assert act_point(s, act_point(t, pt)) == act_point(t, act_point(s, pt)), (str(s), str(t))
    assert tested >= 20
