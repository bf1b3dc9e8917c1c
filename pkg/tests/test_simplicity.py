"""Tests for core/simplicity.py"""
import random
from fractions import Fraction
from pathlib import Path

import pytest

from bell_rogalski.core.datafile import load_datum
from bell_rogalski.core.datum import BellRogalskiDatum
from bell_rogalski.core.errors import PreconditionError
from bell_rogalski.core.poly import RingSpec
from bell_rogalski.core.simplicity import (
    INCONCLUSIVE,
    NOT_SIMPLE,
    SIMPLE,
    TrailEntry,
    Verdict,
    fold_verdict,
    gamma_simple,
    hyperplane_condition,
    invariant_subring,
    rank1_verdict,
    rankn_verdict,
    simplicity_verdict,
    tensor_factors,
)
from bell_rogalski.core.tensor import TwistSpec, twisted_tensor

DATA = Path(__file__).resolve().parent.parent / "data"


def _load(name):
    return load_datum(DATA / name)


def _make_mixed(assumptions=None):
    ring = RingSpec(("u", "z"), (True, False))
    return BellRogalskiDatum.from_texts(
        ring, [{"u": "2*u", "z": "z + 1"}], None, [["1"]], [["z"]], assumptions=assumptions,
    )


def _laurent_square(d=1):
    laurent = _load("laurent_simple.yaml")
    return twisted_tensor(laurent, laurent, TwistSpec(((Fraction(d),),)), verify=False).datum


# ---------------------------------------------------------------------------
# Verdict folding
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("entries,expected", [
    ([], INCONCLUSIVE),
    ([("pass", "necessary"), ("pass", "sufficient")], SIMPLE),
    ([("fail", "necessary"), ("pass", "sufficient")], NOT_SIMPLE),
    ([("unknown", "necessary"), ("unknown", "sufficient")], INCONCLUSIVE),
    ([("fail", "sufficient"), ("fail", "info")], INCONCLUSIVE),
])
def test_fold_verdict(entries, expected):
    trail = [TrailEntry(f"c{i}", result, role=role) for i, (result, role) in enumerate(entries)]
    assert fold_verdict(trail) == expected


def test_inconclusive_lists_unresolved_conditions():
    v = Verdict.from_trail([TrailEntry("a", "pass"), TrailEntry("b", "unknown", role="sufficient")])
    d = v.to_dict()
    assert d["status"] == INCONCLUSIVE
    assert d["unresolved"] == ["b"]
    assert "unresolved" not in Verdict.from_trail([TrailEntry("a", "fail")]).to_dict()


def _random_rank1(rng):
    ring = RingSpec.polynomial("z")
    roots = rng.sample(range(-4, 5), rng.randint(1, 3))
    return BellRogalskiDatum.from_texts(
        ring, [{"z": rng.choice(["z + 1", "z - 1", "z + 2", "2*z", "-z + 1"])}], None,
        [["1"]], [["*".join(f"(z - ({r}))" for r in roots)]],
    )


def _verdict_cases():
    rng = random.Random(37)
    data = [_load(name) for name in (
        "weyl.yaml", "laurent_simple.yaml", "hyperplane_fault.yaml", "box_breaks.yaml",
    )]
    data += [_make_mixed(), _laurent_square(), _laurent_square(2)]
    data += [_random_rank1(rng) for _ in range(8)]
    return data


def test_replayed_trail_gives_the_same_status():
    rng = random.Random(43)
    for datum in _verdict_cases():
        v = simplicity_verdict(datum, kmax=6)
        replay = [
            TrailEntry(e["condition"], e["result"], e.get("detail", ""), e["role"])
            for e in v.to_dict()["trail"]
        ]
        assert fold_verdict(replay) == v.status, datum.to_dict()
        rng.shuffle(replay)
        assert fold_verdict(replay) == v.status


# ---------------------------------------------------------------------------
# Gamma-simplicity and invariants
# ---------------------------------------------------------------------------

def test_translations_of_full_rank_are_certified():
    g = gamma_simple(_load("weyl.yaml"))
    assert g.status == "certified"
    assert g.method == "translations of full rank"


def test_laurent_scalings_are_certified():
    assert gamma_simple(_load("laurent_simple.yaml")).status == "certified"


def test_invariant_ideal_refutes():
    ring = RingSpec.polynomial("x")
    datum = BellRogalskiDatum.from_texts(ring, [{"x": "2*x"}], None, [["1"]], [["x"]])
    g = gamma_simple(datum)
    assert g.status == "refuted"
    assert g.witness == ["x"]
    assert rank1_verdict(datum).status == NOT_SIMPLE


def test_gamma_simplicity_unknown_without_certifier():
    g = gamma_simple(_make_mixed())
    assert g.status == "unknown"
    assert gamma_simple(_make_mixed({"gamma_simple": True})).method == "assumption"


def test_invariant_subring_of_laurent_scalings_is_trivial():
    inv = invariant_subring(_load("laurent_simple.yaml"))
    assert inv.constants_only
    assert inv.exact
    assert inv.to_dict()["generators"] == ["1"]


def test_invariant_subring_with_character_relation():
    L = RingSpec.laurent("u", "v")
    datum = BellRogalskiDatum.from_texts(L, [{"u": "2*u", "v": "1/2*v"}], None, [["1"]], [["u + 1"]])
    inv = invariant_subring(datum)
    assert not inv.constants_only
    assert inv.exact


def test_invariant_subring_searches_polynomial_cone():
    ring = RingSpec.polynomial("x", "y")
    datum = BellRogalskiDatum.from_texts(ring, [{"x": "2*x", "y": "1/2*y"}], None, [["1"]], [["x + 1"]])
    inv = invariant_subring(datum)
    assert [g.to_text() for g in inv.generators] == ["x*y"]
    assert not inv.exact


# ---------------------------------------------------------------------------
# Hyperplane conditions
# ---------------------------------------------------------------------------

def test_hyperplane_fault_fails_at_two():
    h = hyperplane_condition(_load("hyperplane_fault.yaml"), 0, kmax=6)
    assert h.ideal_mode[0] == (1, True)
    assert h.first_failure == 2
    assert h.agree
    assert h.exact is False
    assert h.exact_witness == 2
    assert h.to_dict()["smallest_failing_k"] == 2


def test_hyperplane_holds_for_weyl():
    h = hyperplane_condition(_load("weyl.yaml"), 0, kmax=5)
    assert h.first_failure is None
    assert h.exact is True


def test_empty_break_locus_passes():
    ring = RingSpec.polynomial("z")
    datum = BellRogalskiDatum.from_texts(ring, [{"z": "z + 1"}], None, [["1"]], [["1"]])
    h = hyperplane_condition(datum, 0, kmax=3)
    assert h.exact
    assert h.method == "empty break locus"


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("filename,expected", [
    ("weyl.yaml", SIMPLE),
    ("laurent_simple.yaml", SIMPLE),
    ("hyperplane_fault.yaml", NOT_SIMPLE),
    ("box_breaks.yaml", NOT_SIMPLE),
])
def test_simplicity_verdict(filename, expected):
    assert simplicity_verdict(_load(filename)).status == expected


def test_fault_trail_names_failing_k():
    v = rank1_verdict(_load("hyperplane_fault.yaml"))
    lonely = next(e for e in v.trail if e.condition == "B is sigma-lonely")
    assert lonely.result == "fail"
    assert "k = 2" in lonely.detail


def test_box_breaks_fail_on_first_axis():
    v = rankn_verdict(_load("box_breaks.yaml"))
    failed = [e for e in v.trail if e.result == "fail"]
    assert failed[0].condition == "hyperplane condition, axis 1"
    assert "k = 2" in failed[0].detail


def test_rank1_verdict_needs_rank_one():
    with pytest.raises(PreconditionError):
        rank1_verdict(_load("box_breaks.yaml"))


def test_untwisted_laurent_square_is_simple():
    datum = _laurent_square()
    factors, reason = tensor_factors(datum)
    assert len(factors) == 2
    assert reason == "2 rank-1 factors"
    v = rankn_verdict(datum)
    assert v.status == SIMPLE
    tensor = v.trail[-1]
    assert tensor.role == "sufficient"
    assert tensor.result == "pass"


def test_twisted_laurent_square_is_inconclusive():
    datum = _laurent_square(2)
    factors, reason = tensor_factors(datum)
    assert factors is None
    assert reason.startswith("twisted")
    v = rankn_verdict(datum)
    assert v.status == INCONCLUSIVE
    assert "tensor of simple rank-1 factors, all but one central" in v.unresolved


def test_simple_rank1_data_pass_every_hyperplane_check():
    simple = 0
    for datum in _verdict_cases():
        if datum.n != 1 or rank1_verdict(datum, kmax=8).status != SIMPLE:
            continue
        simple += 1
        h = hyperplane_condition(datum, 0, kmax=8)
        assert h.first_failure is None, datum.to_dict()
        assert all(ok for _, ok in h.point_mode or [])
        assert h.exact is not False
    assert simple >= 1
