import itertools
import json
import math
from fractions import Fraction

import pytest

from exactrepair.codes import MdsMsrCode, RbtMbrCode
from exactrepair.lift import (
    CYCLIC, PERMUTATION, CapacityError, LiftedCode, cyclic_layout, cyclic_lift, iterated_lift,
    lift_parameters, lifted_repair, pad_with_empty, permutation_layout, permutation_lift,
)
from exactrepair.model import random_file, repair, store, verify_all

XS = [0x01, 0x02, 0x03, 0x04]
YS = [0x11, 0x12, 0x13, 0x14]


def toy():
    return MdsMsrCode(3, 2)


@pytest.fixture
def cyclic_toy():
    # lifted file is (x1, x2, x3, x4, y1, y2, y3, y4)
    return store(cyclic_lift(toy()), XS + YS)


def test_cyclic_layout_rule():
    assert cyclic_layout(3) == (
        (None, 1, 2, 3),
        (1, None, 2, 3),
        (1, 2, None, 3),
        (1, 2, 3, None),
    )


def test_cyclic_w1_holds_x2_x3_x4(cyclic_toy):
    assert cyclic_toy.node(1) == (XS[1], XS[2], XS[3])
    assert cyclic_toy.node(2) == (XS[0], YS[2], YS[3])
    assert cyclic_toy.node(4) == tuple(x ^ y for x, y in zip(XS[:3], YS[:3]))


def test_cyclic_base_files_are_interleaved(cyclic_toy):
    code = cyclic_toy.code
    for s in range(4):
        base = code.base.encode([XS[s], YS[s]])
        for p in range(1, 5):
            b = code.layout[s][p - 1]
            if b is not None:
                assert code._slice(cyclic_toy.node(p), p, s) == tuple(base[b - 1])


def test_cyclic_params():
    p = cyclic_lift(toy()).params
    assert (p.n, p.k, p.d) == (4, 3, 3)
    assert p.alpha == (3,) * 4 and p.gamma == 6 and p.B == 8
    assert lift_parameters(toy().params, CYCLIC) == {
        "n": 4, "k": 3, "d": 3, "subsystems": 4, "alpha": 3, "gamma": 6, "B": 8}


def test_cyclic_repair_w1(cyclic_toy):
    trace = lifted_repair(cyclic_toy, 1, [2, 3, 4])
    assert trace.rebuilt == cyclic_toy.node(1)
    assert trace.total == 6
    plan = cyclic_toy.code.repair_plan(1, (2, 3, 4))
    assert [s for s, _, _ in plan] == [1, 2, 3]  # subsystem 0 has w1 empty


def test_cyclic_full_verification(cyclic_toy):
    assert verify_all(cyclic_toy).all_pass


def test_permutation_layout_counts():
    layout = permutation_layout(3)
    assert len(layout) == 24
    assert layout[0] == (1, 2, 3, None)  # identity first
    for p in range(4):
        assert sum(pl[p] is None for pl in layout) == 6
    for pl in layout:
        assert sorted(b for b in pl if b is not None) == [1, 2, 3]


def test_permutation_lift_params():
    code = permutation_lift(toy())
    p = code.params
    assert code.subsystems == 24
    assert p.alpha == (18,) * 4 and p.gamma == 36 and p.B == 48
    assert Fraction(p.B, p.alpha[0]) == Fraction(8, 3) == Fraction(4, 3) * 2
    assert lift_parameters(toy().params, PERMUTATION)["alpha"] == 18


def test_permutation_lift_verification_and_helper_load(rng):
    code = permutation_lift(toy())
    inst = store(code, random_file(code, rng))
    assert verify_all(inst).all_pass
    for failed in range(1, 5):
        helpers = [j for j in range(1, 5) if j != failed]
        trace = repair(inst, failed, helpers)
        assert trace.total == 36
        assert set(trace.sent.values()) == {12}


def test_permutation_lift_too_large():
    with pytest.raises(CapacityError):
        permutation_lift(MdsMsrCode(6, 2))


def test_lifted_repair_rejects_failed_in_helpers(cyclic_toy):
    with pytest.raises(ValueError):
        lifted_repair(cyclic_toy, 1, [1, 2, 3])
    with pytest.raises(TypeError):
        lifted_repair(store(toy(), [1, 2]), 1, [2, 3])


def test_iterated_zero_is_identity():
    base = toy()
    assert iterated_lift(base, 0) is base


def test_iterated_cyclic_twice(rng):
    code = iterated_lift(toy(), 2, CYCLIC)
    p = code.params
    assert (p.n, p.k, p.d) == (5, 4, 4)
    assert p.alpha == (12,) * 5 and p.B == 40
    assert Fraction(p.B, 5 * p.alpha[0]) == Fraction(2, 3)
    assert Fraction(p.B, p.alpha[0]) == Fraction(5, 3) * 2
    report = verify_all(store(code, random_file(code, rng)))
    assert report.all_pass
    assert len(report.reconstruction_results) == math.comb(5, 4)
    assert len(report.repair_results) == 5


def test_pad_with_empty():
    code = pad_with_empty(toy())
    assert code.params.alpha == (1, 1, 1, 0)
    assert (code.params.n, code.params.k, code.params.d) == (4, 3, 3)
    assert code.empty_count(4) == 1


@pytest.mark.parametrize("variant, per_position", [(CYCLIC, 1), (PERMUTATION, 6)])
def test_empty_counts(variant, per_position):
    code = LiftedCode(toy(), variant)
    assert [code.empty_count(p) for p in range(1, 5)] == [per_position] * 4


@pytest.mark.parametrize("make", [
    lambda: toy(), lambda: MdsMsrCode(4, 2), lambda: RbtMbrCode(4, 2), lambda: MdsMsrCode(3, 2, 2),
])
@pytest.mark.parametrize("variant", [CYCLIC, PERMUTATION])
def test_parameter_arithmetic(make, variant):
    base = make()
    code = LiftedCode(base, variant)
    n = base.params.n
    count, factor = ((math.factorial(n + 1), n * math.factorial(n)) if variant == PERMUTATION
                     else (n + 1, n))
    p, bp = code.params, base.params
    assert code.subsystems == count
    assert p.alpha == (factor * bp.alpha[0],) * (n + 1)
    assert p.gamma == factor * bp.gamma
    assert p.B == count * bp.B
    assert Fraction(p.B, p.alpha[0]) == Fraction(n + 1, n) * Fraction(bp.B, bp.alpha[0])


def test_mbr_cyclic_534(rng):
    code = cyclic_lift(RbtMbrCode(4, 2))
    p = code.params
    assert (p.n, p.k, p.d) == (5, 3, 4)
    assert p.gamma == 4 * 3
    assert verify_all(store(code, random_file(code, rng))).all_pass


def test_msr_perm_633_all_helper_sets(rng):
    code = permutation_lift(MdsMsrCode(5, 2))
    inst = store(code, random_file(code, rng))
    report = verify_all(inst)
    assert report.all_pass
    assert len(report.repair_results) == 6 * 10
    assert report.per_helper_max == 400


def test_perm_lift_symmetry_with_idle_helpers(rng):
    """d < n-1: one helper must idle in some subsystems, yet totals stay equal."""
    code = permutation_lift(MdsMsrCode(5, 2))
    inst = store(code, random_file(code, rng))
    for failed in range(1, 7):
        survivors = [j for j in range(1, 7) if j != failed]
        for helpers in itertools.combinations(survivors, 3):
            loads = {code.helper_load(h, failed, helpers) for h in helpers}
            assert loads == {400}
    trace = repair(inst, 1, [2, 3, 4])
    assert set(trace.sent.values()) == {400}


def test_lift_of_lift_permutation(rng):
    code = permutation_lift(cyclic_lift(toy()))  # (5, 4, 4)
    assert code.subsystems == 120
    inst = store(code, random_file(code, rng))
    assert verify_all(inst).all_pass


def test_describe_json():
    code = iterated_lift(toy(), 2, CYCLIC)
    doc = json.loads(json.dumps(code.describe()))
    assert doc["variant_chain"] == ["msr(3,2)", "cyclic", "cyclic"]
    assert doc["node_sizes"] == [12] * 5
    assert doc["layout_digest"] == iterated_lift(toy(), 2, CYCLIC).describe()["layout_digest"]
    assert doc["layout_digest"] != iterated_lift(toy(), 2, PERMUTATION).describe()["layout_digest"]


def test_unknown_variant():
    with pytest.raises(ValueError):
        LiftedCode(toy(), "spiral")
    with pytest.raises(ValueError):
        iterated_lift(toy(), -1)
