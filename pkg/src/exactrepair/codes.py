"""Concrete exact-repair base codes.

* :class:`MdsMsrCode` -- MDS striping with decode-and-re-encode repair, the
  MSR point at d = k.
* :class:`RbtMbrCode` -- repair-by-transfer on the complete graph, the MBR
  point at d = n - 1.
"""
from __future__ import annotations

import itertools
import math
from typing import Sequence

from .gf import MdsCodec, dot
from .model import (
    CodeParams, Homogeneous, RegeneratingCode, RepairTrace, StorageInstance, repair, store,
)


class MdsMsrCode(RegeneratingCode):
    """(n, k, d=k) code storing ``alpha`` MDS stripes.

    Stripe t of the file is ``file[t*k:(t+1)*k]``; node j keeps symbol j of
    every stripe. Each helper ships its whole node, so beta = alpha and
    gamma = k*alpha = B.
    """

    def __init__(self, n: int, k: int, alpha: int = 1):
        if alpha < 1:
            raise ValueError("alpha must be at least 1")
        self.codec = MdsCodec(n, k)
        self.n, self.k, self.alpha = n, k, alpha
        self.params = CodeParams(
            n=n, k=k, d=k, alpha=(alpha,) * n, gamma=k * alpha,
            beta=Homogeneous(alpha), B=k * alpha)
        self.name = f"msr({n},{k})" if alpha == 1 else f"msr({n},{k})x{alpha}"

    def encode(self, file):
        k = self.k
        stripes = [self.codec.encode(file[t * k:(t + 1) * k]) for t in range(self.alpha)]
        return [[s[j] for s in stripes] for j in range(self.n)]

    def decode(self, contents):
        nodes = sorted(contents)[:self.k]
        out = []
        for t in range(self.alpha):
            out.extend(self.codec.decode([(j, contents[j][t]) for j in nodes]))
        return out

    def helper_load(self, helper, failed, helpers):
        return self.alpha

    def helper_data(self, helper, failed, helpers, content):
        return list(content)

    def rebuild(self, failed, received):
        row = self.codec.row(failed)
        file = self.decode(received)
        k = self.k
        return [dot(row, file[t * k:(t + 1) * k]) for t in range(self.alpha)]


class RbtMbrCode(RegeneratingCode):
    """Repair-by-transfer MBR code with d = n - 1.

    The file (B = k*d - k(k-1)/2 symbols) is MDS-encoded into one symbol per
    edge of the complete graph on the nodes; each node stores the symbols of
    its n - 1 incident edges. Edges are enumerated lexicographically.
    """

    def __init__(self, n: int, k: int):
        d = n - 1
        if not 1 <= k <= d:
            raise ValueError(f"need 1 <= k <= n-1, got n={n}, k={k}")
        edges = list(itertools.combinations(range(1, n + 1), 2))
        B = k * d - k * (k - 1) // 2
        self.codec = MdsCodec(len(edges), B)
        self.n, self.k, self.d = n, k, d
        self.edges = edges
        self.edge_index = {e: i + 1 for i, e in enumerate(edges)}
        self.params = CodeParams(
            n=n, k=k, d=d, alpha=(d,) * n, gamma=d, beta=Homogeneous(1), B=B)
        self.name = f"mbr({n},{k})"

    def node_edges(self, j: int) -> list[int]:
        """Edge positions stored on node j, ordered by the other endpoint."""
        return [self.edge_index[tuple(sorted((j, m)))] for m in range(1, self.n + 1) if m != j]

    def encode(self, file):
        coded = self.codec.encode(file)
        return [[coded[e - 1] for e in self.node_edges(j)] for j in range(1, self.n + 1)]

    def decode(self, contents):
        held = {}
        for j in sorted(contents)[:self.k]:
            held.update(zip(self.node_edges(j), contents[j]))
        chosen = sorted(held)[:self.params.B]
        return self.codec.decode([(e, held[e]) for e in chosen])

    def helper_load(self, helper, failed, helpers):
        return 1

    def helper_data(self, helper, failed, helpers, content):
        # slot of edge {helper, failed} among helper's edges
        slot = failed - 1 if failed < helper else failed - 2
        return [content[slot]]

    def rebuild(self, failed, received):
        if sorted(received) != [m for m in range(1, self.n + 1) if m != failed]:
            raise ValueError("repair-by-transfer needs every surviving node as a helper")
        return [received[m][0] for m in sorted(received)]


def _stripe_count(n_symbols: int, k: int) -> int:
    if n_symbols == 0 or n_symbols % k:
        raise ValueError(f"file length {n_symbols} is not a positive multiple of k={k}")
    return n_symbols // k


def msr_store(n: int, k: int, file: Sequence[int]) -> StorageInstance:
    return store(MdsMsrCode(n, k, _stripe_count(len(file), k)), file)


def msr_repair(instance: StorageInstance, failed: int, helpers) -> RepairTrace:
    if not isinstance(instance.code, MdsMsrCode):
        raise TypeError("instance was not produced by an MdsMsrCode")
    return repair(instance, failed, helpers)


def mbr_store(n: int, k: int, file: Sequence[int]) -> StorageInstance:
    code = RbtMbrCode(n, k)
    if len(file) != code.params.B:
        raise ValueError(f"mbr({n},{k}) stores exactly B={code.params.B} symbols, got {len(file)}")
    return store(code, file)


def mbr_repair(instance: StorageInstance, failed: int, helpers) -> RepairTrace:
    if not isinstance(instance.code, RbtMbrCode):
        raise TypeError("instance was not produced by an RbtMbrCode")
    return repair(instance, failed, helpers)


def mbr_file_size(n: int, k: int) -> int:
    return k * (n - 1) - math.comb(k, 2)
