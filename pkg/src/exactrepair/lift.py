"""Lifting an (n, k, d) exact-repair code to an (n+1, k+1, d+1) one.

A lifted code is a stack of *subsystems*. Each subsystem is a copy of the
base code padded with one empty node, with its n + 1 slots assigned to the
n + 1 lifted positions by a *placement*. Lifted node j stores, in subsystem
order, whatever its slot holds in every subsystem.

Three placement families are provided:

* ``pad``         -- the single identity placement; the new last node stores nothing.
* ``cyclic``      -- n + 1 subsystems, subsystem i leaves position i empty and
                     keeps the base order elsewhere.
* ``permutation`` -- all (n+1)! orderings, in lexicographic order.

The lifted file is split across subsystems symbol by symbol: symbol t of
subsystem i's file is lifted symbol ``t*S + i`` (S = number of subsystems),
so a (3, 2, 2) base storing (x, y) lifts to (x1, ..., x4, y1, ..., y4).
"""
from __future__ import annotations

import hashlib
import itertools
import math
from functools import lru_cache
from typing import Sequence

from .model import (
    Bounded, CodeParams, Homogeneous, RegeneratingCode, RepairTrace, StorageInstance, repair,
)

PAD, CYCLIC, PERMUTATION = "pad", "cyclic", "permutation"
MAX_PERMUTATION_BASE_N = 5


class CapacityError(ValueError):
    """The requested construction is too large to materialise."""


def pad_layout(n: int) -> tuple[tuple[int | None, ...], ...]:
    return (tuple(range(1, n + 1)) + (None,),)


def cyclic_layout(n: int) -> tuple[tuple[int | None, ...], ...]:
    """Subsystem i (1-based) leaves position i empty; others keep base order."""
    layout = []
    for i in range(1, n + 2):
        layout.append(tuple(None if p == i else (p if p < i else p - 1) for p in range(1, n + 2)))
    return tuple(layout)


def permutation_layout(n: int) -> tuple[tuple[int | None, ...], ...]:
    """One placement per permutation sigma of {1..n+1}, lexicographic.

    Node i of the padded base (node n+1 being the empty one) goes to
    position sigma(i).
    """
    layout = []
    for sigma in itertools.permutations(range(1, n + 2)):
        slots: list[int | None] = [None] * (n + 1)
        for i, pos in enumerate(sigma, start=1):
            slots[pos - 1] = i if i <= n else None
        layout.append(tuple(slots))
    return tuple(layout)


LAYOUTS = {PAD: pad_layout, CYCLIC: cyclic_layout, PERMUTATION: permutation_layout}


def layout_digest(layout) -> str:
    return hashlib.sha256(repr(layout).encode()).hexdigest()


class LiftedCode(RegeneratingCode):
    """(n+1, k+1, d+1) code built from copies of ``base``.

    Any :class:`RegeneratingCode` can be the base, including another lifted
    code, so lifts compose.
    """

    def __init__(self, base: RegeneratingCode, variant: str):
        if variant not in LAYOUTS:
            raise ValueError(f"unknown lift variant {variant!r}")
        bp = base.params
        if variant == PERMUTATION and bp.n > MAX_PERMUTATION_BASE_N:
            raise CapacityError(
                f"permutation lift of an n={bp.n} base needs {math.factorial(bp.n + 1)} subsystems;"
                f" limit is n <= {MAX_PERMUTATION_BASE_N}")
        self.base = base
        self.variant = variant
        self.layout = LAYOUTS[variant](bp.n)
        self.subsystems = len(self.layout)
        n = bp.n + 1

        # slices[p][s] = (base node, offset) of subsystem s inside position p+1
        self.slices: list[dict[int, tuple[int, int]]] = [{} for _ in range(n)]
        alpha = [0] * n
        for s, placement in enumerate(self.layout):
            for p, b in enumerate(placement):
                if b is not None:
                    self.slices[p][s] = (b, alpha[p])
                    alpha[p] += bp.alpha[b - 1]

        # repairing position p touches every subsystem where p is non-empty
        gamma = max(len(sl) for sl in self.slices) * bp.gamma
        d = bp.d + 1
        if variant == PERMUTATION and gamma % d == 0:
            beta = Homogeneous(gamma // d)
        else:
            beta = Bounded()
        self.params = CodeParams(
            n=n, k=bp.k + 1, d=d, alpha=tuple(alpha), gamma=gamma, beta=beta,
            B=self.subsystems * bp.B, field=bp.field)
        self.name = f"{variant}({base.name})"

    @property
    def chain(self) -> list[str]:
        inner = self.base.chain if isinstance(self.base, LiftedCode) else [self.base.name]
        return inner + [self.variant]

    def empty_count(self, position: int) -> int:
        return sum(1 for placement in self.layout if placement[position - 1] is None)

    def describe(self) -> dict:
        digests = []
        code: RegeneratingCode = self
        while isinstance(code, LiftedCode):
            digests.append(layout_digest(code.layout))
            code = code.base
        return {
            "name": self.name,
            "params": self.params.to_dict(),
            "variant_chain": self.chain,
            "subsystems": self.subsystems,
            "node_sizes": list(self.params.alpha),
            "layout_digest": hashlib.sha256("".join(reversed(digests)).encode()).hexdigest(),
        }

    def _slice(self, content, p, s):
        b, off = self.slices[p - 1][s]
        return content[off:off + self.base.params.alpha[b - 1]]

    def encode(self, file):
        S = self.subsystems
        n = self.params.n
        nodes: list[list[int]] = [[] for _ in range(n)]
        for s, placement in enumerate(self.layout):
            base_nodes = self.base.encode(list(file[s::S]))
            for p, b in enumerate(placement):
                if b is not None:
                    nodes[p].extend(base_nodes[b - 1])
        return nodes

    def decode(self, contents):
        positions = sorted(contents)[:self.params.k]
        kb = self.base.params.k
        files = []
        for s, placement in enumerate(self.layout):
            usable = [p for p in positions if placement[p - 1] is not None][:kb]
            files.append(self.base.decode(
                {placement[p - 1]: self._slice(contents[p], p, s) for p in usable}))
        B = self.base.params.B
        return [files[s][t] for t in range(B) for s in range(self.subsystems)]

    def repair_plan(self, failed: int, helpers: tuple[int, ...]):
        return _repair_plan(self, failed, tuple(sorted(helpers)))

    def helper_load(self, helper, failed, helpers):
        total = 0
        for s, bf, chosen in self.repair_plan(failed, helpers):
            if helper in chosen:
                bh = self.layout[s][helper - 1]
                total += self.base.helper_load(bh, bf, self._base_helpers(s, chosen))
        return total

    def _base_helpers(self, s, chosen):
        return tuple(sorted(self.layout[s][p - 1] for p in chosen))

    def helper_data(self, helper, failed, helpers, content):
        out = []
        for s, bf, chosen in self.repair_plan(failed, helpers):
            if helper in chosen:
                placement = self.layout[s]
                out.extend(self.base.helper_data(
                    placement[helper - 1], bf, self._base_helpers(s, chosen),
                    self._slice(content, helper, s)))
        return out

    def rebuild(self, failed, received):
        helpers = tuple(sorted(received))
        cursor = dict.fromkeys(helpers, 0)
        pieces = {}
        for s, bf, chosen in self.repair_plan(failed, helpers):
            placement = self.layout[s]
            base_helpers = self._base_helpers(s, chosen)
            got = {}
            for p in chosen:
                size = self.base.helper_load(placement[p - 1], bf, base_helpers)
                got[placement[p - 1]] = received[p][cursor[p]:cursor[p] + size]
                cursor[p] += size
            pieces[s] = self.base.rebuild(bf, got)
        out = []
        for s in self.slices[failed - 1]:
            out.extend(pieces[s])
        return out


@lru_cache(maxsize=1024)
def _repair_plan(code: LiftedCode, failed: int, helpers: tuple[int, ...]):
    """Per-subsystem base repairs for one lifted repair.

    Returns ``(subsystem, base failed node, chosen helper positions)`` for
    every subsystem where ``failed`` is non-empty. When all d+1 helpers are
    non-empty one must sit out; the c-th such subsystem (in subsystem order)
    idles the helper of rank ``c mod (d+1)``, which spreads the idling evenly.
    Helpers and newcomer all derive the same plan from (failed, helpers).
    """
    d = code.base.params.d
    plan = []
    c = 0
    for s, placement in enumerate(code.layout):
        bf = placement[failed - 1]
        if bf is None:
            continue
        live = [p for p in helpers if placement[p - 1] is not None]
        if len(live) > d:
            del live[c % len(live)]
            c += 1
        plan.append((s, bf, tuple(live)))
    return tuple(plan)


def cyclic_lift(base: RegeneratingCode) -> LiftedCode:
    return LiftedCode(base, CYCLIC)


def permutation_lift(base: RegeneratingCode) -> LiftedCode:
    return LiftedCode(base, PERMUTATION)


def pad_with_empty(base: RegeneratingCode) -> LiftedCode:
    """The base plus one extra node that stores nothing."""
    return LiftedCode(base, PAD)


def iterated_lift(base: RegeneratingCode, times: int, variant: str = CYCLIC) -> RegeneratingCode:
    if times < 0:
        raise ValueError("lift count must be non-negative")
    code = base
    for _ in range(times):
        code = LiftedCode(code, variant)
    return code


def lift_parameters(base_params: CodeParams, variant: str) -> dict:
    """Predicted parameters of one lift of a uniform base, without building it."""
    n = base_params.n
    if not base_params.uniform:
        raise ValueError("closed-form lift parameters need a uniform base")
    if variant == PERMUTATION:
        count, node_factor = math.factorial(n + 1), n * math.factorial(n)
    elif variant == CYCLIC:
        count, node_factor = n + 1, n
    else:
        raise ValueError(f"no closed form for variant {variant!r}")
    return {
        "n": n + 1, "k": base_params.k + 1, "d": base_params.d + 1,
        "subsystems": count,
        "alpha": node_factor * base_params.alpha[0],
        "gamma": node_factor * base_params.gamma,
        "B": count * base_params.B,
    }


def lifted_repair(instance: StorageInstance, failed: int, helpers: Sequence[int]) -> RepairTrace:
    if not isinstance(instance.code, LiftedCode):
        raise TypeError("instance was not produced by a lifted code")
    return repair(instance, failed, helpers)
