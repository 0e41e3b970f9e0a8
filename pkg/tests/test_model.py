import json

import pytest

from exactrepair.codes import MdsMsrCode
from exactrepair.lift import cyclic_lift, pad_with_empty, permutation_lift
from exactrepair.model import (
    Bounded, CodeParams, Homogeneous, random_file, reconstruct, repair, store,
    verify_all, verify_exact_repair_all, verify_reconstruction_all,
)

X, Y = 0x05, 0x07


@pytest.fixture
def toy():
    return store(MdsMsrCode(3, 2), [X, Y])


def test_params_validation():
    CodeParams(3, 2, 2, (1, 1, 1), 2, Homogeneous(1), 2)
    with pytest.raises(ValueError):
        CodeParams(3, 3, 2, (1, 1, 1), 2, Bounded(), 2)  # k > d
    with pytest.raises(ValueError):
        CodeParams(3, 2, 3, (1, 1, 1), 3, Bounded(), 2)  # d = n
    with pytest.raises(ValueError):
        CodeParams(3, 2, 2, (1, 1), 2, Bounded(), 2)
    with pytest.raises(ValueError):
        CodeParams(3, 2, 2, (1, 1, 1), 3, Homogeneous(1), 2)  # gamma != d*beta
    with pytest.raises(ValueError):
        CodeParams(3, 2, 2, (1, 1, 1), 2, Bounded(), 0)


def test_store_rejects_wrong_length():
    with pytest.raises(ValueError):
        store(MdsMsrCode(3, 2), [1, 2, 3])


def test_toy_reconstruction_all_pass(toy):
    report = verify_reconstruction_all(toy)
    assert report.all_pass
    assert sorted(report.reconstruction_results) == [(1, 2), (1, 3), (2, 3)]


def test_corrupted_node_detected(toy):
    bad = toy.with_symbol_flipped(3, 0)
    report = verify_reconstruction_all(bad)
    assert not report.all_pass
    assert report.failures


def test_reconstruct_validates_subset(toy):
    with pytest.raises(ValueError):
        reconstruct(toy, [1])
    with pytest.raises(ValueError):
        reconstruct(toy, [1, 1])
    with pytest.raises(ValueError):
        reconstruct(toy, [1, 4])


def test_toy_repair_of_v1(toy):
    trace = repair(toy, 1, [2, 3])
    assert trace.rebuilt == (X,)
    assert trace.sent == {2: 1, 3: 1}
    assert trace.total == 2 == toy.params.gamma


@pytest.mark.parametrize("failed, helpers", [(1, [1, 2]), (1, [2]), (1, [2, 3, 4]), (4, [1, 2])])
def test_repair_rejects_bad_helper_sets(toy, failed, helpers):
    with pytest.raises(ValueError):
        repair(toy, failed, helpers)


def test_cyclic_lift_reconstruction():
    code = cyclic_lift(MdsMsrCode(3, 2))
    inst = store(code, list(range(1, 9)))
    report = verify_reconstruction_all(inst)
    assert report.all_pass and len(report.reconstruction_results) == 4


def test_permutation_lift_repair_bandwidth(rng):
    code = permutation_lift(MdsMsrCode(3, 2))
    inst = store(code, random_file(code, rng))
    report = verify_exact_repair_all(inst)
    assert report.all_pass
    assert len(report.repair_results) == 4  # one 3-helper set per node
    assert report.max_bandwidth_used == 36


def test_zero_length_node_repair():
    code = pad_with_empty(MdsMsrCode(3, 2))
    inst = store(code, [X, Y])
    assert inst.node(4) == ()
    trace = repair(inst, 4, [1, 2, 3])
    assert trace.rebuilt == ()
    assert trace.total == 0
    assert verify_all(inst).all_pass


def test_repair_is_deterministic(rng):
    code = permutation_lift(MdsMsrCode(3, 2))
    inst = store(code, random_file(code, rng))
    assert repair(inst, 2, [1, 3, 4]) == repair(inst, 2, [4, 3, 1])


def test_trace_counts_match_transmissions(rng):
    code = cyclic_lift(MdsMsrCode(3, 2))
    inst = store(code, random_file(code, rng))
    for failed in range(1, 5):
        helpers = tuple(j for j in range(1, 5) if j != failed)
        trace = repair(inst, failed, helpers)
        for h in helpers:
            assert trace.sent[h] == len(code.helper_data(h, failed, helpers, inst.node(h)))


def test_report_json_fields(toy):
    doc = json.loads(verify_all(toy).to_json())
    assert {"params", "total_checks", "failures", "max_bandwidth_used", "per_helper_max",
            "all_pass"} <= set(doc)
    assert doc["total_checks"] == 3 + 3
    assert doc["all_pass"] is True


def test_sampling_cap_records_coverage(rng):
    code = MdsMsrCode(8, 4)
    inst = store(code, random_file(code, rng))
    report = verify_reconstruction_all(inst, cap=10, seed=3)
    assert report.sampled and len(report.reconstruction_results) == 10
    again = verify_reconstruction_all(inst, cap=10, seed=3)
    assert list(again.reconstruction_results) == list(report.reconstruction_results)


def test_all_pass_iff_every_entry_passes(toy):
    report = verify_all(toy)
    assert report.all_pass
    report.repair_results[(1, (2, 3))] = False
    assert not report.all_pass
