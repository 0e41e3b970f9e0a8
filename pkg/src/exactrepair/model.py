"""Storage-code abstraction and exhaustive verification of reconstruction and repair.

Node indices are 1-based everywhere. A code object implements the
:class:`RegeneratingCode` interface; helpers only ever see their own content,
and the newcomer only sees what helpers transmit, so every symbol counted in
a :class:`RepairTrace` is a symbol that actually crossed the wire.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

FIELD = "GF(2^8)"


@dataclass(frozen=True)
class Homogeneous:
    """Every helper sends at most ``beta`` symbols."""

    beta: int


@dataclass(frozen=True)
class Bounded:
    """Only the total repair bandwidth is fixed; per-helper amounts may vary."""


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    alpha: tuple[int, ...]
    gamma: int
    beta: Homogeneous | Bounded
    B: int
    field: str = FIELD

    def __post_init__(self):
        if not 1 <= self.k <= self.d < self.n:
            raise ValueError(f"need 1 <= k <= d < n, got (n, k, d) = ({self.n}, {self.k}, {self.d})")
        if len(self.alpha) != self.n:
            raise ValueError(f"alpha profile has {len(self.alpha)} entries for n={self.n}")
        if min(self.alpha) < 0 or self.gamma < 0:
            raise ValueError("node sizes and gamma must be non-negative")
        if self.B < 1:
            raise ValueError("file size B must be at least 1")
        if isinstance(self.beta, Homogeneous) and self.gamma != self.d * self.beta.beta:
            raise ValueError(f"homogeneous beta={self.beta.beta} needs gamma = d*beta, got {self.gamma}")

    @property
    def alpha_max(self) -> int:
        return max(self.alpha)

    @property
    def uniform(self) -> bool:
        return len(set(self.alpha)) == 1

    def to_dict(self) -> dict:
        beta = self.beta.beta if isinstance(self.beta, Homogeneous) else None
        return {
            "n": self.n, "k": self.k, "d": self.d,
            "alpha": list(self.alpha), "gamma": self.gamma,
            "beta_profile": "homogeneous" if beta is not None else "bounded",
            "beta": beta, "B": self.B, "field": self.field,
        }


class RegeneratingCode:
    """Interface every storable code implements.

    ``encode``/``decode`` handle placement and recovery; ``helper_data`` is
    what helper ``helper`` transmits given only its own content, and
    ``rebuild`` runs at the newcomer on the received messages.
    """

    params: CodeParams
    name: str

    def encode(self, file: Sequence[int]) -> list[list[int]]:
        raise NotImplementedError

    def decode(self, contents: Mapping[int, Sequence[int]]) -> list[int]:
        raise NotImplementedError

    def helper_load(self, helper: int, failed: int, helpers: tuple[int, ...]) -> int:
        raise NotImplementedError

    def helper_data(self, helper: int, failed: int, helpers: tuple[int, ...],
                    content: Sequence[int]) -> list[int]:
        raise NotImplementedError

    def rebuild(self, failed: int, received: Mapping[int, Sequence[int]]) -> list[int]:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"name": self.name, "params": self.params.to_dict()}


@dataclass(frozen=True)
class StorageInstance:
    params: CodeParams
    nodes: tuple[tuple[int, ...], ...]
    file: tuple[int, ...]
    code: RegeneratingCode = field(compare=False, repr=False)

    def __post_init__(self):
        sizes = tuple(len(c) for c in self.nodes)
        if sizes != self.params.alpha:
            raise ValueError(f"node sizes {sizes} do not match alpha profile {self.params.alpha}")
        if len(self.file) != self.params.B:
            raise ValueError(f"file has {len(self.file)} symbols, expected B={self.params.B}")

    @property
    def code_id(self) -> str:
        return self.code.name

    def node(self, j: int) -> tuple[int, ...]:
        return self.nodes[j - 1]

    def with_symbol_flipped(self, node: int, pos: int, mask: int = 0x01) -> "StorageInstance":
        """Copy with one stored symbol XOR-ed by ``mask`` (for negative controls)."""
        if not mask:
            raise ValueError("mask must be nonzero")
        nodes = [list(c) for c in self.nodes]
        nodes[node - 1][pos] ^= mask
        return StorageInstance(self.params, tuple(map(tuple, nodes)), self.file, self.code)


@dataclass(frozen=True)
class RepairTrace:
    failed: int
    helpers: tuple[int, ...]
    sent: dict[int, int]
    rebuilt: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.sent.values())


def store(code: RegeneratingCode, file: Sequence[int]) -> StorageInstance:
    if len(file) != code.params.B:
        raise ValueError(f"{code.name} stores files of {code.params.B} symbols, got {len(file)}")
    nodes = code.encode(file)
    return StorageInstance(code.params, tuple(map(tuple, nodes)), tuple(file), code)


def random_file(code: RegeneratingCode, rng: random.Random) -> list[int]:
    return [rng.randrange(256) for _ in range(code.params.B)]


def reconstruct(instance: StorageInstance, subset: Sequence[int]) -> list[int]:
    p = instance.params
    subset = tuple(sorted(subset))
    if len(subset) != p.k or len(set(subset)) != p.k or not all(1 <= j <= p.n for j in subset):
        raise ValueError(f"need {p.k} distinct nodes in [1, {p.n}], got {subset}")
    return instance.code.decode({j: instance.node(j) for j in subset})


def _check_helpers(p: CodeParams, failed: int, helpers) -> tuple[int, ...]:
    helpers = tuple(sorted(helpers))
    if not 1 <= failed <= p.n:
        raise ValueError(f"failed node {failed} outside [1, {p.n}]")
    if failed in helpers:
        raise ValueError(f"helper set {helpers} contains the failed node {failed}")
    if len(helpers) != p.d or len(set(helpers)) != p.d:
        raise ValueError(f"need exactly d={p.d} distinct helpers, got {helpers}")
    if not all(1 <= h <= p.n for h in helpers):
        raise ValueError(f"helpers {helpers} outside [1, {p.n}]")
    return helpers


def repair(instance: StorageInstance, failed: int, helpers: Sequence[int]) -> RepairTrace:
    code = instance.code
    helpers = _check_helpers(instance.params, failed, helpers)
    received = {}
    for h in helpers:
        msg = code.helper_data(h, failed, helpers, instance.node(h))
        expected = code.helper_load(h, failed, helpers)
        if len(msg) != expected:
            raise RuntimeError(f"helper {h} sent {len(msg)} symbols, announced {expected}")
        received[h] = msg
    rebuilt = tuple(code.rebuild(failed, received))
    return RepairTrace(failed, helpers, {h: len(m) for h, m in received.items()}, rebuilt)


@dataclass
class VerificationReport:
    params: CodeParams
    reconstruction_results: dict[tuple[int, ...], bool] = field(default_factory=dict)
    repair_results: dict[tuple[int, tuple[int, ...]], bool] = field(default_factory=dict)
    max_bandwidth_used: int = 0
    per_helper_max: int = 0
    failures: list[str] = field(default_factory=list)
    sampled: bool = False
    cap: int | None = None
    seed: int | None = None

    @property
    def total_checks(self) -> int:
        return len(self.reconstruction_results) + len(self.repair_results)

    @property
    def all_pass(self) -> bool:
        return all(self.reconstruction_results.values()) and all(self.repair_results.values())

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            self.params,
            {**self.reconstruction_results, **other.reconstruction_results},
            {**self.repair_results, **other.repair_results},
            max(self.max_bandwidth_used, other.max_bandwidth_used),
            max(self.per_helper_max, other.per_helper_max),
            self.failures + other.failures,
            self.sampled or other.sampled,
            self.cap if self.cap is not None else other.cap,
            self.seed if self.seed is not None else other.seed,
        )

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "total_checks": self.total_checks,
            "failures": list(self.failures),
            "max_bandwidth_used": self.max_bandwidth_used,
            "per_helper_max": self.per_helper_max,
            "all_pass": self.all_pass,
            "sampled": self.sampled,
            "cap": self.cap,
            "seed": self.seed,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _subsets(universe, r, cap, rng):
    """All r-subsets of ``universe``, or a seeded sample of ``cap`` of them."""
    universe = list(universe)
    total = math.comb(len(universe), r)
    if cap is None or total <= cap:
        return list(itertools.combinations(universe, r)), False
    seen = set()
    while len(seen) < cap:
        seen.add(tuple(sorted(rng.sample(universe, r))))
    return sorted(seen), True


def verify_reconstruction_all(instance: StorageInstance, cap: int | None = None,
                              seed: int = 0) -> VerificationReport:
    p = instance.params
    report = VerificationReport(p, cap=cap, seed=seed)
    subsets, report.sampled = _subsets(range(1, p.n + 1), p.k, cap, random.Random(seed))
    for subset in subsets:
        try:
            ok = tuple(reconstruct(instance, subset)) == instance.file
        except ValueError as exc:
            ok = False
            report.failures.append(f"reconstruct {subset}: {exc}")
        else:
            if not ok:
                report.failures.append(f"reconstruct {subset}: wrong file")
        report.reconstruction_results[subset] = ok
    return report


def verify_exact_repair_all(instance: StorageInstance, cap: int | None = None,
                            seed: int = 0) -> VerificationReport:
    """Repair every node from every d-subset of the survivors (or a sample per node)."""
    p = instance.params
    rng = random.Random(seed)
    beta = p.beta.beta if isinstance(p.beta, Homogeneous) else None
    report = VerificationReport(p, cap=cap, seed=seed)
    for failed in range(1, p.n + 1):
        survivors = [j for j in range(1, p.n + 1) if j != failed]
        helper_sets, sampled = _subsets(survivors, p.d, cap, rng)
        report.sampled |= sampled
        for helpers in helper_sets:
            key = (failed, helpers)
            try:
                trace = repair(instance, failed, helpers)
            except (ValueError, RuntimeError) as exc:
                report.repair_results[key] = False
                report.failures.append(f"repair {key}: {exc}")
                continue
            problems = []
            if trace.rebuilt != instance.node(failed):
                problems.append("rebuilt content differs")
            if trace.total > p.gamma:
                problems.append(f"bandwidth {trace.total} > gamma {p.gamma}")
            worst = max(trace.sent.values(), default=0)
            if beta is not None and worst > beta:
                problems.append(f"helper sent {worst} > beta {beta}")
            report.max_bandwidth_used = max(report.max_bandwidth_used, trace.total)
            report.per_helper_max = max(report.per_helper_max, worst)
            report.repair_results[key] = not problems
            report.failures.extend(f"repair {key}: {msg}" for msg in problems)
    return report


def verify_all(instance: StorageInstance, cap: int | None = None, seed: int = 0) -> VerificationReport:
    return verify_reconstruction_all(instance, cap, seed).merge(
        verify_exact_repair_all(instance, cap, seed))
