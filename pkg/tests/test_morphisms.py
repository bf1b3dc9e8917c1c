"""Tests for core/morphisms.py"""
from fractions import Fraction
from pathlib import Path

import pytest

from bell_rogalski.core.automorphism import Automorphism, RingMap
from bell_rogalski.core.datafile import load_datum, load_tgwa
from bell_rogalski.core.datum import BellRogalskiDatum, GradedElement
from bell_rogalski.core.errors import HypothesisError, PreconditionError, UnsupportedError
from bell_rogalski.core.groebner import Ideal, ideal_equal
from bell_rogalski.core.morphisms import fixed_ring, gk_dimension, gk_dimension_tgwa, induced_morphism
from bell_rogalski.core.poly import RingSpec
from bell_rogalski.core.tensor import twisted_tensor

DATA = Path(__file__).resolve().parent.parent / "data"


def _make_weyl():
    return load_datum(DATA / "weyl.yaml")


def _make_scaling():
    ring = RingSpec.polynomial("x")
    return BellRogalskiDatum.from_texts(ring, [{"x": "2*x"}], None, [["1"]], [["x^2 - 1"]], name="scaling")


# ---------------------------------------------------------------------------
# GK dimension
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("filename,expected", [
    ("weyl.yaml", 2),
    ("laurent_simple.yaml", 3),
    ("box_breaks.yaml", 4),
    ("hyperplane_fault.yaml", 2),
])
def test_gk_dimension(filename, expected):
    gk = gk_dimension(load_datum(DATA / filename))
    assert gk.value == expected
    assert all(e.passed for e in gk.checks)


def test_gk_dimension_of_weyl_square():
    weyl = _make_weyl()
    assert gk_dimension(twisted_tensor(weyl, weyl, verify=False).datum).value == 4


def test_gk_dimension_of_laurent_square():
    laurent = load_datum(DATA / "laurent_simple.yaml")
    assert gk_dimension(twisted_tensor(laurent, laurent, verify=False).datum).value == 6


def test_gk_dimension_tgwa():
    gk = gk_dimension_tgwa(load_tgwa(DATA / "quantum_tgwa.yaml"))
    assert gk.value == 4
    assert gk.to_dict()["bounds"] == [2, 4]


def test_gk_dimension_unknown_for_zero_ideal():
    ring = RingSpec.polynomial("z")
    datum = BellRogalskiDatum(
        ring, (Automorphism.from_images(ring, {"z": "z + 1"}),), ((1,),),
        (Ideal.unit(ring),), (Ideal.zero(ring),),
    )
    gk = gk_dimension(datum)
    assert gk.value is None
    assert not all(e.passed for e in gk.checks)


# ---------------------------------------------------------------------------
# Induced morphisms
# ---------------------------------------------------------------------------

def test_identity_map_with_scalar():
    weyl = _make_weyl()
    phi = RingMap.inclusion(weyl.ring, weyl.ring)
    morphism = induced_morphism(weyl, weyl, phi, [2])
    assert all(e.passed for e in morphism.checks)
    x = GradedElement.homogeneous(weyl, (1,), weyl.ring.parse("z + 1"))
    assert morphism.apply(x) == x.scale(2)
    y = GradedElement.homogeneous(weyl, (-2,), 1)
    assert morphism.apply(y) == y.scale(Fraction(1, 4))


def test_map_into_larger_algebra():
    weyl = _make_weyl()
    ring = weyl.ring
    bigger = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["1"]], [["1"]])
    morphism = induced_morphism(weyl, bigger, RingMap.inclusion(ring, ring))
    assert all(e.passed for e in morphism.checks)


def test_containment_hypothesis_named():
    weyl = _make_weyl()
    phi = RingMap.from_texts(weyl.ring, weyl.ring, {"z": "z + 1"})
    with pytest.raises(HypothesisError) as exc:
        induced_morphism(weyl, weyl, phi)
    assert "J_1" in str(exc.value)
    assert exc.value.witness == "phi(z + 1) = z + 2"


def test_commutation_hypothesis_named():
    ring = RingSpec.polynomial("z")
    target = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["1"]], [["1"]])
    phi = RingMap.from_texts(ring, ring, {"z": "2*z"})
    with pytest.raises(HypothesisError) as exc:
        induced_morphism(_make_weyl(), target, phi)
    assert "sigma_1" in str(exc.value)


def test_rank_and_p_hypotheses():
    weyl = _make_weyl()
    square = twisted_tensor(weyl, weyl, verify=False).datum
    with pytest.raises(HypothesisError):
        induced_morphism(weyl, square, RingMap.inclusion(weyl.ring, square.ring, ["z_L"]))
    with pytest.raises(HypothesisError):
        induced_morphism(weyl, weyl, RingMap.inclusion(weyl.ring, weyl.ring), [0])


# ---------------------------------------------------------------------------
# Fixed rings
# ---------------------------------------------------------------------------

def test_fixed_ring_of_sign_character():
    ring = RingSpec.polynomial("z")
    datum = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["z"]], [["z + 1"]])
    fixed = fixed_ring(datum, gamma=[-1])
    assert fixed.orders == (1, 2)
    assert all(e.passed for e in fixed.checks), [e.to_dict() for e in fixed.checks if not e.passed]
    W = fixed.datum
    assert W.sigma[0].to_dict() == {"z": "z + 2"}
    assert ideal_equal(W.J[0], Ideal(ring, [ring.parse("(z + 1)*(z + 2)")]))
    assert ideal_equal(W.canonical_ideal((-1,)), datum.canonical_ideal((-2,)))


def test_fixed_ring_of_negation():
    fixed = fixed_ring(_make_scaling(), Automorphism.from_images(RingSpec.polynomial("x"), {"x": "-x"}))
    assert fixed.orders == (2, 1)
    assert all(e.passed for e in fixed.checks), [e.to_dict() for e in fixed.checks if not e.passed]
    W = fixed.datum
    assert W.ring.variables == ("x2",)
    assert fixed.embedding.to_dict() == {"x2": "x^2"}
    assert W.sigma[0].to_dict() == {"x2": "4*x2"}
    assert W.J[0].generators == (W.ring.parse("x2 - 1"),)


def test_fixed_ring_of_laurent_negation():
    L = RingSpec.laurent("u", "v")
    datum = BellRogalskiDatum.from_texts(L, [{"u": "2*u", "v": "3*v"}], None, [["1"]], [["u*v + 1"]])
    phi = Automorphism.from_images(L, {"u": "-u", "v": "-v"})
    fixed = fixed_ring(datum, phi)
    assert all(e.passed for e in fixed.checks), [e.to_dict() for e in fixed.checks if not e.passed]
    assert fixed.datum.ring.variables == ("u2", "v_u")
    assert fixed.datum.sigma[0].to_dict() == {"u2": "4*u2", "v_u": "3/2*v_u"}


def test_fixed_ring_orders_must_be_coprime():
    phi = Automorphism.from_images(RingSpec.polynomial("x"), {"x": "-x"})
    with pytest.raises(PreconditionError):
        fixed_ring(_make_scaling(), phi, gamma=[-1])


def test_fixed_ring_needs_order_two_scalars():
    with pytest.raises(UnsupportedError):
        fixed_ring(_make_scaling(), gamma=[2])


def test_fixed_ring_needs_commuting_phi():
    ring = RingSpec.polynomial("z")
    datum = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["1"]], [["z^2"]])
    with pytest.raises(HypothesisError):
        fixed_ring(datum, Automorphism.from_images(ring, {"z": "-z"}))


def test_fixed_ring_needs_stable_ideals():
    ring = RingSpec.polynomial("x")
    datum = BellRogalskiDatum.from_texts(ring, [{"x": "2*x"}], None, [["1"]], [["x - 1"]])
    with pytest.raises(HypothesisError) as exc:
        fixed_ring(datum, Automorphism.from_images(ring, {"x": "-x"}))
    assert exc.value.witness == "x - 1"
