"""Tests for core/datum.py"""
import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from bell_rogalski.core.datafile import load_datum
from bell_rogalski.core.datum import (
    BellRogalskiDatum,
    GradedElement,
    commutation_scalar,
    datum_fingerprint,
    degree_window,
    generators,
    graded_containment_defects,
    has_scalar_units,
    iterate_decompose,
    lambda_scalar,
    multiply,
    sign_compatible,
    unit_vector,
    validate,
)
from bell_rogalski.core.errors import DatumError, MembershipError, PreconditionError, RingMismatchError
from bell_rogalski.core.groebner import Ideal, ideal_equal, ideal_product
from bell_rogalski.core.poly import RingSpec

DATA = Path(__file__).resolve().parent.parent / "data"


def _factors(rng, var, count):
    roots = rng.sample(range(-3, 4), count)
    return "*".join(f"({var} - ({r}))" for r in roots) or "1"


def _random_rank1(rng):
    ring = RingSpec.polynomial("z")
    image = rng.choice(["z + 1", "z - 1", "z + 2", "2*z", "-z + 1"])
    return BellRogalskiDatum.from_texts(
        ring, [{"z": image}], None,
        [[_factors(rng, "z", rng.randint(0, 1))]],
        [[_factors(rng, "z", rng.randint(1, 2))]],
    )


def _random_rank2(rng):
    ring = RingSpec.polynomial("x", "y")
    q = Fraction(rng.choice([1, 2, 3, -1]))
    return BellRogalskiDatum.from_texts(
        ring,
        [{"x": rng.choice(["x + 1", "x - 2"])}, {"y": rng.choice(["y + 1", "3*y"])}],
        [[1, q], [1 / q, 1]],
        [[_factors(rng, "x", rng.randint(0, 1))], [_factors(rng, "y", rng.randint(0, 1))]],
        [[_factors(rng, "x", 1)], [_factors(rng, "y", rng.randint(1, 2))]],
    )


def _make_twisted():
    ring = RingSpec.polynomial("x", "y")
    return BellRogalskiDatum.from_texts(
        ring,
        [{"x": "x + 1"}, {"y": "2*y"}],
        [[1, 2], [Fraction(1, 2), 1]],
        [["1"], ["1"]],
        [["x"], ["y - 1"]],
        name="twisted",
    )


def _random_poly(rng, ring):
    x, y = ring.gens()
    monos = [ring.one(), x, y, x * y, x * x]
    out = ring.zero()
    for m in rng.sample(monos, rng.randint(1, 3)):
        out = out + m.scale(rng.choice([-2, -1, 1, 2, 3]))
    return out


def _random_ambient(rng, datum):
    parts = {}
    for _ in range(rng.randint(1, 2)):
        alpha = tuple(rng.randint(-1, 1) for _ in range(datum.n))
        parts[alpha] = _random_poly(rng, datum.ring)
    return GradedElement(datum, parts, ambient=True)


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------

def test_weyl_loads_and_validates():
    weyl = load_datum(DATA / "weyl.yaml")
    assert weyl.n == 1
    assert all(e.passed for e in validate(weyl))


def test_twisted_validates():
    assert all(e.passed for e in validate(_make_twisted()))


def test_validate_reports_non_antisymmetric_p():
    ring = RingSpec.polynomial("x", "y")
    datum = BellRogalskiDatum.from_texts(
        ring, [{"x": "x + 1"}, {"y": "y + 1"}], [[1, 2], [2, 1]],
        [["1"], ["1"]], [["x"], ["y"]],
    )
    failed = [e for e in validate(datum) if not e.passed]
    assert [e.name for e in failed] == ["p multiplicatively antisymmetric"]


def test_validate_reports_moved_ideal_with_witness():
    ring = RingSpec.polynomial("x", "y")
    datum = BellRogalskiDatum.from_texts(
        ring, [{"x": "x + 1"}, {"y": "y + 1"}], None,
        [["1"], ["1"]], [["x"], ["x*y"]],
    )
    failed = [e for e in validate(datum) if not e.passed]
    assert len(failed) == 1
    assert "sigma_1(J_2)" in failed[0].detail
    assert "x*y" in failed[0].detail


def test_validate_reports_non_commuting_sigma():
    ring = RingSpec.polynomial("x")
    datum = BellRogalskiDatum.from_texts(
        ring, [{"x": "x + 1"}, {"x": "2*x"}], None, [["1"], ["1"]], [["x"], ["x"]],
    )
    failed = {e.name for e in validate(datum) if not e.passed}
    assert "sigma commute" in failed


def test_rank_mismatch_rejected():
    ring = RingSpec.polynomial("x")
    with pytest.raises(DatumError):
        BellRogalskiDatum.from_texts(ring, [{"x": "x + 1"}], None, [["1"], ["1"]], [["x"]])


def test_zero_p_entry_rejected():
    ring = RingSpec.polynomial("x")
    with pytest.raises(DatumError):
        BellRogalskiDatum.from_texts(ring, [{"x": "x + 1"}], [[0]], [["1"]], [["x"]])


def test_fingerprint_identifies_equal_data():
    assert _make_twisted() == _make_twisted()
    assert hash(_make_twisted()) == hash(_make_twisted())
    assert _make_twisted().fingerprint != load_datum(DATA / "weyl.yaml").fingerprint
    assert datum_fingerprint(_make_twisted()) == _make_twisted().fingerprint


def test_has_scalar_units():
    L = RingSpec.laurent("u")
    fixed = BellRogalskiDatum.from_texts(L, [{"u": "u"}], None, [["1"]], [["u + 1"]])
    moved = BellRogalskiDatum.from_texts(L, [{"u": "2*u"}], None, [["1"]], [["u + 1"]])
    assert has_scalar_units(fixed) == (True, None)
    ok, witness = has_scalar_units(moved)
    assert not ok
    assert "2*u" in witness


# ---------------------------------------------------------------------------
# Canonical ideals
# ---------------------------------------------------------------------------

def test_weyl_canonical_ideals():
    weyl = load_datum(DATA / "weyl.yaml")
    R = weyl.ring
    assert ideal_equal(weyl.canonical_ideal((2,)), Ideal(R, [R.parse("(z + 1)*(z + 2)")]))
    assert weyl.canonical_ideal((-3,)).is_unit()
    assert weyl.canonical_ideal((0,)).is_unit()


def test_negative_degrees_use_inverse_images_of_h():
    ring = RingSpec.polynomial("z")
    datum = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["z"]], [["1"]])
    assert ideal_equal(datum.canonical_ideal((-2,)), Ideal(ring, [ring.parse("(z - 1)*(z - 2)")]))


def test_canonical_ideal_wrong_length():
    with pytest.raises(DatumError):
        _make_twisted().canonical_ideal((1,))


def test_sign_compatible():
    assert sign_compatible((1, 0), (2, -1))
    assert not sign_compatible((1, -1), (-1, 0))


def test_graded_identity_on_random_data():
    rng = random.Random(7)
    data = [_random_rank1(rng) for _ in range(7)] + [_random_rank2(rng) for _ in range(3)]
    for datum in data:
        window = 2
        assert all(e.passed for e in validate(datum)), datum.to_dict()
        assert graded_containment_defects(datum, window) == [], datum.to_dict()


def test_mixed_signs_are_only_contained():
    weyl = load_datum(DATA / "weyl.yaml")
    # J sigma(I^(-1)) = (z + 1) sits strictly inside I^(0) = R
    shifted = weyl.sigma_power((1,)).apply_ideal(weyl.canonical_ideal((-1,)))
    product = ideal_product(weyl.canonical_ideal((1,)), shifted)
    target = weyl.canonical_ideal((0,))
    assert not ideal_equal(product, target)
    assert target.contains_ideal(product)
    assert graded_containment_defects(weyl, 2) == []


# ---------------------------------------------------------------------------
# Multiplication
# ---------------------------------------------------------------------------

def test_weyl_relation():
    weyl = load_datum(DATA / "weyl.yaml")
    x = GradedElement.homogeneous(weyl, (1,), weyl.ring.parse("z + 1"))
    y = GradedElement.homogeneous(weyl, (-1,), 1)
    assert multiply(x, y) - multiply(y, x) == GradedElement.one(weyl)
    assert x.to_text() == "(z + 1)*t1"


def test_membership_enforced():
    weyl = load_datum(DATA / "weyl.yaml")
    with pytest.raises(MembershipError) as exc:
        GradedElement.homogeneous(weyl, (1,), 1)
    assert exc.value.witness == "1"
    assert GradedElement.homogeneous(weyl, (1,), 1, ambient=True).support() == [(1,)]


def test_elements_of_different_data_do_not_mix():
    weyl = load_datum(DATA / "weyl.yaml")
    twisted = _make_twisted()
    with pytest.raises(RingMismatchError):
        GradedElement.one(weyl) + GradedElement.one(twisted)


def test_zero_components_dropped():
    weyl = load_datum(DATA / "weyl.yaml")
    x = GradedElement.homogeneous(weyl, (1,), weyl.ring.parse("z + 1"))
    assert (x - x).is_zero()
    assert (x - x).to_text() == "0"


def _random_element(rng, datum):
    gens = generators(datum)
    out = GradedElement.zero(datum)
    for _ in range(rng.randint(1, 3)):
        term = GradedElement.one(datum)
        for _ in range(rng.randint(0, 3)):
            term = multiply(term, rng.choice(gens), verify=False)
        out = out + term.scale(rng.choice([1, -1, 2, Fraction(-1, 3)]))
    return out


def _random_pairs(seed, count):
    rng = random.Random(seed)
    data = [load_datum(DATA / "weyl.yaml"), _make_twisted()]
    data += [_random_rank1(rng) for _ in range(3)] + [_random_rank2(rng) for _ in range(3)]
    for _ in range(count):
        datum = rng.choice(data)
        a, b = _random_element(rng, datum), _random_element(rng, datum)
        if a.is_zero() or b.is_zero():
            continue
        yield a, b


def test_products_of_nonzero_elements_are_nonzero():
    for a, b in _random_pairs(11, 60):
        assert not multiply(a, b, verify=False).is_zero(), (a.to_text(), b.to_text())


def test_product_support_within_minkowski_sum():
    for a, b in _random_pairs(13, 60):
        sums = {tuple(x + y for x, y in zip(p, q)) for p in a.support() for q in b.support()}
        product = multiply(a, b, verify=False)
        assert set(product.support()) <= sums, (a.to_text(), b.to_text())


def test_lambda_scalar_orders_generators():
    p = ((Fraction(1), Fraction(2)), (Fraction(1, 2), Fraction(1)))
    assert lambda_scalar(p, (0, 1), (1, 0)) == 2
    assert lambda_scalar(p, (1, 0), (0, 1)) == 1


def test_generators_commute_up_to_p():
    datum = _make_twisted()
    t1 = GradedElement.homogeneous(datum, (1, 0), 1, ambient=True)
    t2 = GradedElement.homogeneous(datum, (0, 1), 1, ambient=True)
    # t_k t_i = p_ik t_i t_k with k = 2, i = 1
    assert multiply(t2, t1) == multiply(t1, t2).scale(datum.p[0][1])


def test_p_commutation_on_random_pairs():
    datum = _make_twisted()
    rng = random.Random(11)
    for _ in range(100):
        alpha = tuple(rng.randint(-2, 2) for _ in range(2))
        beta = tuple(rng.randint(-2, 2) for _ in range(2))
        ta = GradedElement.homogeneous(datum, alpha, 1, ambient=True)
        tb = GradedElement.homogeneous(datum, beta, 1, ambient=True)
        assert multiply(ta, tb) == multiply(tb, ta).scale(commutation_scalar(datum.p, beta, alpha))


def test_associativity_on_random_triples():
    datum = _make_twisted()
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = (_random_ambient(rng, datum) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_products_stay_in_b():
    datum = _make_twisted()
    for alpha, beta in itertools.product(degree_window(2, 1), repeat=2):
        x = GradedElement(datum, {alpha: datum.canonical_ideal(alpha).groebner()[0]})
        y = GradedElement(datum, {beta: datum.canonical_ideal(beta).groebner()[0]})
        z = multiply(x, y, verify=True)
        assert not z.ambient


def test_generators_have_degree_zero_or_unit():
    datum = _make_twisted()
    degrees = {g.degree() for g in generators(datum)}
    assert degrees == {(0, 0), unit_vector(2, 0), unit_vector(2, 0, -1), unit_vector(2, 1), unit_vector(2, 1, -1)}


# ---------------------------------------------------------------------------
# Iterated presentation
# ---------------------------------------------------------------------------

def test_iterate_decompose_checks_pass():
    dec, entries = iterate_decompose(_make_twisted())
    assert all(e.passed for e in entries), [e.to_dict() for e in entries]
    assert dec.axis == 1
    assert dec.twist == (Fraction(2),)
    assert dec.inner.n == 1


def test_iterate_decompose_other_axis():
    dec, entries = iterate_decompose(_make_twisted(), axis=0)
    assert all(e.passed for e in entries)
    assert dec.twist == (Fraction(1, 2),)


def test_iterate_decompose_needs_rank_two():
    with pytest.raises(PreconditionError):
        iterate_decompose(load_datum(DATA / "weyl.yaml"))
