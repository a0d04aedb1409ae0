"""Approximate fill-degree bucketing from quantiles of sketch minimizers.

Per remaining vertex the structure keeps the multiset of its k per-copy
minimizer keys and the element of rank floor(k(1-1/e)) (ascending,
1-based).  The reciprocal of that quantile estimates the size of the fill
neighborhood including the vertex itself, so vertices can be handed out in
geometric degree buckets.

Below the quantile's validity range the distinct-owner count is an almost
exact size estimate instead, so a vertex is bucketed by its count whenever
the count falls under k(1-1/e); both mappings place a size-s vertex in
bucket floor(log_{1+eps}(s)), with isolated vertices landing in bucket 0.
Values exactly on a bucket boundary go to the lower-index bucket.
"""

from __future__ import annotations

import math

import numpy as np
from sortedcontainers import SortedList

from .bank import MinimizerCache, SketchBank
from .graphs import ComponentGraph, Graph, GraphError


class StaleReportError(RuntimeError):
    pass


class ApproxDegreeDS:
    """k = O(log n / eps^2) sketch copies with quantile and distinct-count
    indexes supporting pivots and bucketed reporting."""

    def __init__(self, g: Graph, eps_hat: float, seed: int, c_q: float = 8.0):
        if not (0.0 < eps_hat <= 0.5):
            raise GraphError("eps_hat must be in (0, 1/2]")
        n = g.n
        self.eps_hat = float(eps_hat)
        self.base = 1.0 + self.eps_hat
        self.k = max(3, math.ceil(c_q * math.log(max(n, 2)) / (eps_hat * eps_hat)))
        self.rank = math.floor(self.k * (1.0 - 1.0 / math.e))  # 1-based, ascending
        self._count_cutoff = self.k * (1.0 - 1.0 / math.e)
        self.cg = ComponentGraph(g)
        self.bank = SketchBank(self.cg, seed, self.k)
        self._cache = MinimizerCache(self.bank)
        self.epoch = 0
        self._q: dict = {}
        self._distinct: dict = {}
        self._count_index = SortedList()   # (distinct count, vertex), coupon regime
        self._q_index = SortedList()       # (quantile, vertex), estimator regime
        for v in range(n):
            self._refresh(v)

    # ----- per-vertex statistics -----

    def quantile(self, v: int) -> float:
        """The rank-floor(k(1-1/e)) minimizer key of v."""
        return self._q[v]

    def distinct_count(self, v: int) -> int:
        return self._distinct[v]

    def _in_count_regime(self, v: int) -> bool:
        return self._distinct[v] < self._count_cutoff

    def _drop(self, v: int) -> None:
        if v not in self._q:
            return
        if self._in_count_regime(v):
            self._count_index.remove((self._distinct[v], v))
        else:
            self._q_index.remove((self._q[v], v))
        del self._q[v]
        del self._distinct[v]

    def _refresh(self, v: int) -> None:
        self._drop(v)
        vals, owners = self._cache.minimizer(v)
        q = float(np.partition(vals, self.rank - 1)[self.rank - 1])
        counts = np.bincount(owners, minlength=self.cg.n)
        distinct = int(np.count_nonzero(counts)) + (0 if counts[v] else 1)
        self._q[v] = q
        self._distinct[v] = distinct
        if distinct < self._count_cutoff:
            self._count_index.add((distinct, v))
        else:
            self._q_index.add((q, v))

    # ----- bucket geometry (size space is s ~ |N_fill(v) ∪ {v}|) -----

    def _size_lo(self, i: int) -> float:
        return self.base ** i

    def _q_hi(self, i: int) -> float:
        return self.base ** (-i)

    def bucket_index_of(self, v: int) -> int:
        """Bucket holding v; boundary values resolve to the lower index."""
        if self._in_count_regime(v):
            s = self._distinct[v]
            i = 0 if s <= 1 else int(math.floor(math.log(s) / math.log(self.base)))
            while i > 0 and s < self._size_lo(i):
                i -= 1
            while s >= self._size_lo(i + 1):
                i += 1
            return i
        q = max(self._q[v], 1e-300)  # keys live in [0, 1); guard the log
        i = max(0, math.ceil(-math.log(q) / math.log(self.base)) - 1)
        while i > 0 and q >= self._q_hi(i):
            i -= 1
        while q < self._q_hi(i + 1):
            i += 1
        return i

    # ----- updates -----

    def pivot(self, u: int) -> None:
        if not self.cg.is_remaining(u):
            raise GraphError(f"vertex {u} is not remaining")
        self._drop(u)
        delta, affected = self.bank.pivot(u)
        self._cache.apply_pivot(delta, affected)
        for v in affected:
            self._refresh(v)
        self.epoch += 1

    # ----- reporting -----

    def _nonempty_buckets(self) -> tuple:
        out = set()
        idx = self._count_index
        pos = 0
        while pos < len(idx):
            _, v = idx[pos]
            i = self.bucket_index_of(v)
            out.add(i)
            pos = idx.bisect_left((self._size_lo(i + 1), -1))
        idx = self._q_index
        pos = 0
        while pos < len(idx):
            _, v = idx[pos]
            i = self.bucket_index_of(v)
            out.add(i)
            pos = idx.bisect_left((self._q_hi(i), -1))
        return tuple(sorted(out))

    def report(self) -> "BucketReport":
        return BucketReport(self, self.epoch, self._nonempty_buckets())


class BucketView:
    """Zero-copy view of one degree bucket, valid until the next pivot."""

    def __init__(self, ds: ApproxDegreeDS, epoch: int, index: int):
        self._ds = ds
        self._epoch = epoch
        self.index = index

    def _check(self):
        if self._ds.epoch != self._epoch:
            raise StaleReportError("bucket report was invalidated by a pivot")

    def __iter__(self):
        self._check()
        ds = self._ds
        i = self.index
        for _, v in ds._count_index.irange(
            (ds._size_lo(i), -1), (ds._size_lo(i + 1), -1), inclusive=(True, False)
        ):
            yield v
        for _, v in ds._q_index.irange(
            (ds._q_hi(i + 1), -1), (ds._q_hi(i), -1), inclusive=(True, False)
        ):
            yield v

    def __len__(self):
        self._check()
        ds = self._ds
        i = self.index
        total = ds._count_index.bisect_left((ds._size_lo(i + 1), -1)) - ds._count_index.bisect_left(
            (ds._size_lo(i), -1)
        )
        total += ds._q_index.bisect_left((ds._q_hi(i), -1)) - ds._q_index.bisect_left(
            (ds._q_hi(i + 1), -1)
        )
        return total

    def __bool__(self):
        return len(self) > 0


class BucketReport:
    """Handles to the degree buckets at one epoch."""

    def __init__(self, ds: ApproxDegreeDS, epoch: int, nonempty: tuple):
        self._ds = ds
        self._epoch = epoch
        self.nonempty_indices = nonempty

    def _check(self):
        if self._ds.epoch != self._epoch:
            raise StaleReportError("bucket report was invalidated by a pivot")

    @property
    def min_index(self):
        self._check()
        return self.nonempty_indices[0] if self.nonempty_indices else None

    def bucket(self, i: int) -> BucketView:
        self._check()
        return BucketView(self._ds, self._epoch, i)

    def contents(self) -> dict:
        return {i: list(self.bucket(i)) for i in self.nonempty_indices}


def approx_ds_new(g: Graph, eps_hat: float, seed: int, c_q: float = 8.0) -> ApproxDegreeDS:
    return ApproxDegreeDS(g, eps_hat, seed, c_q=c_q)
