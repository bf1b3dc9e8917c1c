"""Tests for core/weights.py"""
import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from bell_rogalski.core.automorphism import WeightPoint, orbit_point
from bell_rogalski.core.datafile import load_datum
from bell_rogalski.core.datum import BellRogalskiDatum, GradedElement, multiply, unit_vector
from bell_rogalski.core.errors import PreconditionError, SearchBoundError
from bell_rogalski.core.poly import RingSpec
from bell_rogalski.core.weights import (
    act,
    axis_breaks,
    break_classes,
    choose_b,
    classify,
    g_set,
    g_set_bruteforce,
    is_i_break,
    is_torsion_free,
    module_table,
    verify_module,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def _load(name):
    return load_datum(DATA / name)


def _origin(datum):
    return WeightPoint(datum.ring, (0,) * datum.ring.nvars)


def _roots(rng, var, count):
    return "*".join(f"({var} - ({r}))" for r in rng.sample(range(-4, 5), count)) or "1"


def _random_rank1(rng):
    ring = RingSpec.polynomial("z")
    image = rng.choice(["z + 1", "z - 1", "z + 2", "2*z"])
    datum = BellRogalskiDatum.from_texts(
        ring, [{"z": image}], None,
        [[_roots(rng, "z", rng.randint(0, 1))]],
        [[_roots(rng, "z", rng.randint(1, 3))]],
    )
    # points off the scaling center keep the orbit torsion-free
    z = rng.choice([1, 2, 3, -1]) if image == "2*z" else rng.randint(-3, 3)
    return datum, WeightPoint(ring, (z,))


def _random_rank2(rng):
    ring = RingSpec.polynomial("x", "y")
    q = Fraction(rng.choice([1, 2, -3]))
    datum = BellRogalskiDatum.from_texts(
        ring,
        [{"x": rng.choice(["x + 1", "x - 1"])}, {"y": rng.choice(["y + 1", "3*y"])}],
        [[1, q], [1 / q, 1]],
        [[_roots(rng, "x", rng.randint(0, 1))], [_roots(rng, "y", rng.randint(0, 1))]],
        [[_roots(rng, "x", rng.randint(1, 2))], [_roots(rng, "y", rng.randint(1, 2))]],
    )
    return datum, WeightPoint(ring, (rng.randint(-2, 2), rng.choice([1, -1, 3])))


# ---------------------------------------------------------------------------
# Torsion and breaks
# ---------------------------------------------------------------------------

def test_translation_orbit_is_torsion_free():
    t = is_torsion_free(_load("weyl.yaml"), WeightPoint.parse(_load("weyl.yaml").ring, "z=0"))
    assert t.torsion_free
    assert t.stabilizer == []


def test_sign_flip_has_torsion():
    ring = RingSpec.polynomial("x")
    datum = BellRogalskiDatum.from_texts(ring, [{"x": "-x"}], None, [["1"]], [["x - 1"]])
    t = is_torsion_free(datum, WeightPoint(ring, (1,)))
    assert not t.torsion_free
    assert t.stabilizer == [(2,)]
    with pytest.raises(PreconditionError):
        classify(datum, WeightPoint(ring, (1,)))


def test_weyl_breaks():
    weyl = _load("weyl.yaml")
    b = axis_breaks(weyl, _origin(weyl), 0)
    assert b.values == [0]
    assert b.method == "translation"
    assert is_i_break(weyl, _origin(weyl), 0)


def test_hyperplane_fault_breaks():
    datum = _load("hyperplane_fault.yaml")
    assert axis_breaks(datum, _origin(datum), 0).values == [-3, -1]


def test_box_breaks_per_axis():
    datum = _load("box_breaks.yaml")
    breaks = break_classes(datum, _origin(datum), max_workers=2)
    assert [b.values for b in breaks] == [[-1, 1], [-1, 2]]
    assert all(b.exact for b in breaks)


def test_laurent_breaks_by_points():
    datum = _load("laurent_simple.yaml")
    pt = WeightPoint.parse(datum.ring, "u=-1,v=1")
    assert is_torsion_free(datum, pt).torsion_free
    b = axis_breaks(datum, pt, 0)
    assert b.values == [-1]
    assert b.method == "zero-dimensional"


def test_empty_locus_has_no_breaks():
    ring = RingSpec.polynomial("z")
    datum = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["1"]], [["1"]])
    b = axis_breaks(datum, _origin(datum), 0)
    assert b.values == []
    assert b.classes(3) == [None]


def _break_cases():
    cases = [(d, _origin(d)) for d in (_load("weyl.yaml"), _load("hyperplane_fault.yaml"), _load("box_breaks.yaml"))]
    rng = random.Random(41)
    cases.extend(_random_rank2(rng) for _ in range(4))
    return cases


def test_breaks_shift_with_the_base_point():
    for datum, pt in _break_cases():
        base = [axis_breaks(datum, pt, i) for i in range(datum.n)]
        for k in range(datum.n):
            for s in (1, -1):
                q = orbit_point(datum.sigma, pt, unit_vector(datum.n, k, s))
                for i, b in enumerate(base):
                    moved = axis_breaks(datum, q, i)
                    assert moved.everything == b.everything
                    assert moved.values == [v - s * (k == i) for v in b.values], (
                        datum.to_dict(), pt.to_text(), k, s,
                    )


# ---------------------------------------------------------------------------
# G_m
# ---------------------------------------------------------------------------

def test_weyl_g_set():
    weyl = _load("weyl.yaml")
    pt = _origin(weyl)
    assert g_set(weyl, pt, 3) == [(-3,), (-2,), (-1,), (0,)]
    assert g_set_bruteforce(weyl, pt, 3) == g_set(weyl, pt, 3)


def test_box_rule_matches_bruteforce_rank1():
    rng = random.Random(23)
    for _ in range(20):
        datum, pt = _random_rank1(rng)
        assert g_set(datum, pt, 4) == g_set_bruteforce(datum, pt, 4), (datum.to_dict(), pt.to_text())


def test_box_rule_matches_bruteforce_rank2():
    rng = random.Random(31)
    for _ in range(6):
        datum, pt = _random_rank2(rng)
        assert g_set(datum, pt, 4) == g_set_bruteforce(datum, pt, 4), (datum.to_dict(), pt.to_text())


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def test_weyl_orbit_has_two_modules():
    weyl = _load("weyl.yaml")
    c = classify(weyl, _origin(weyl), window=4)
    assert len(c.descriptors) == 2
    assert [d.describe_box() for d in c.descriptors] == ["-inf < a1 <= 0", "0 < a1 <= inf"]
    assert [d.base_offset for d in c.descriptors] == [(0,), (1,)]
    assert c.partition_defects() == []


def test_box_breaks_tile_the_lattice():
    datum = _load("box_breaks.yaml")
    c = classify(datum, _origin(datum), window=3)
    assert len(c.descriptors) == 9
    assert c.partition_defects() == []
    assert c.to_dict()["count"] == 9


def test_laurent_orbit_through_break_point():
    datum = _load("laurent_simple.yaml")
    c = classify(datum, WeightPoint.parse(datum.ring, "u=-1,v=1"), window=3)
    assert len(c.descriptors) == 2
    assert c.caveats == []


def test_descriptors_distinct_exactly_when_break_tuples_differ():
    for datum, pt in _break_cases():
        c = classify(datum, pt, window=4)
        tuples = [(d.predecessors, d.classes) for d in c.descriptors]
        assert len(set(tuples)) == len(tuples)
        for d1, d2 in itertools.combinations(c.descriptors, 2):
            assert d1.base_offset != d2.base_offset
            assert not set(d1.support_in(4)) & set(d2.support_in(4))
        shifted = classify(datum, orbit_point(datum.sigma, pt, unit_vector(datum.n, 0, 1)), window=4)
        assert len(shifted.descriptors) == len(c.descriptors)


# ---------------------------------------------------------------------------
# Basis elements and tables
# ---------------------------------------------------------------------------

def test_choose_b_inverts_at_the_weight():
    weyl = _load("weyl.yaml")
    pt = _origin(weyl)
    c = choose_b(weyl, pt, (-1,))
    assert c.b.degree() == (-1,)
    assert c.b_prime.to_text() == "(z + 1)*t1"
    unit = multiply(c.b, c.b_prime, verify=False)
    assert unit.component((0,)).evaluate((1,)) == 1


def test_choose_b_outside_g_set():
    weyl = _load("weyl.yaml")
    with pytest.raises(PreconditionError):
        choose_b(weyl, _origin(weyl), (1,))


def test_choose_b_at_zero_is_one():
    weyl = _load("weyl.yaml")
    c = choose_b(weyl, _origin(weyl), (0,))
    assert c.b == GradedElement.one(weyl)


def test_choose_b_respects_combined_degree_bound():
    weyl = _load("weyl.yaml")
    with pytest.raises(SearchBoundError):
        choose_b(weyl, _origin(weyl), (-5,), degree_bound=2)
    c = choose_b(weyl, _origin(weyl), (-5,), degree_bound=5)
    assert c.b_prime.component((5,)).total_degree() == 5


def test_weyl_module_table():
    weyl = _load("weyl.yaml")
    descriptor = classify(weyl, _origin(weyl), window=6).descriptors[0]
    table = module_table(weyl, descriptor, window=6)
    assert table.basis == [(a,) for a in range(-6, 1)]
    assert table.edge((0,), 0, 1).scalar == 0
    assert table.edge((-1,), 0, 1).scalar != 0
    assert all(e.passed for e in verify_module(table)), [e.to_dict() for e in verify_module(table)]


def test_upper_module_table():
    weyl = _load("weyl.yaml")
    descriptor = classify(weyl, _origin(weyl), window=6).descriptors[1]
    table = module_table(weyl, descriptor, window=6)
    assert table.base.to_text() == "z=-1"
    assert table.basis == [(a,) for a in range(0, 7)]
    assert table.edge((0,), 0, -1).scalar == 0
    assert all(e.passed for e in verify_module(table)), [e.to_dict() for e in verify_module(table)]


def test_box_breaks_module_table():
    datum = _load("box_breaks.yaml")
    c = classify(datum, _origin(datum), window=2)
    table = module_table(datum, c.descriptors[4], window=2)
    assert table.basis
    assert all(e.passed for e in verify_module(table)), [e.to_dict() for e in verify_module(table)]


def test_degree_zero_acts_by_evaluation():
    weyl = _load("weyl.yaml")
    descriptor = classify(weyl, _origin(weyl), window=3).descriptors[0]
    table = module_table(weyl, descriptor, window=3)
    z = GradedElement.homogeneous(weyl, (0,), weyl.ring.var(0))
    assert act(table, z, (-2,)) == {(-2,): 2}


def test_corrupted_edge_breaks_relations():
    weyl = _load("weyl.yaml")
    descriptor = classify(weyl, _origin(weyl), window=4).descriptors[0]
    table = module_table(weyl, descriptor, window=4)
    table.edge((-2,), 0, 1).scalar += 7
    entries = {e.name: e for e in verify_module(table)}
    relations = entries["generator relations act consistently"]
    assert not relations.passed
    assert "[-2] -> [-1]" in relations.detail
    assert entries["R acts on v_alpha by evaluation at sigma^alpha(m)"].passed


def test_empty_window_passes_vacuously():
    weyl = _load("weyl.yaml")
    descriptor = classify(weyl, _origin(weyl), window=4).descriptors[0]
    table = module_table(weyl, descriptor, window=-1)
    assert table.basis == []
    assert table.edges == []
    entries = verify_module(table)
    assert len(entries) == 4
    assert all(e.passed for e in entries)
