"""Vectorized bundle of sketch copies sharing one component graph.

Semantically identical to maintaining k independent SketchCopy instances
(the per-copy key streams are the same, so minimizers agree bit for bit;
see the equivalence tests), but stores all copies as one (n, k) key matrix
and recomputes minimizers only for the vertices a pivot touched.  This is
what makes algorithms that need thousands of copies tractable.

Keys are laid out vertex-major so gathering a neighborhood is a contiguous
row fetch.
"""

from __future__ import annotations

import numpy as np

from .graphs import ComponentGraph, GraphError
from .streams import copy_keys


class SketchBank:
    def __init__(self, cg: ComponentGraph, seed: int, k: int):
        if k < 1:
            raise GraphError("need at least one sketch copy")
        self.cg = cg
        self.seed = seed
        self.k = k
        n = cg.n
        self.keys = np.empty((n, k))        # keys[v, i]: key of v in copy i
        for i in range(k):
            self.keys[:, i] = copy_keys(seed, i, n)
        self._comp_min: dict = {}
        self._comp_owner: dict = {}
        for c in cg.component_ids():
            self._recompute_component(c)
        self.update_moves = 0  # (vertex, copy) minimizer entries recomputed

    def keys_of_copy(self, i: int) -> np.ndarray:
        return self.keys[:, i]

    def _recompute_component(self, c: int) -> None:
        members = list(self.cg.remaining_neighbors_of_component(c))
        if not members:
            self._comp_min[c] = np.full(self.k, np.inf)
            self._comp_owner[c] = np.full(self.k, -1, dtype=np.int64)
            return
        block = self.keys[members]
        idx = np.argmin(block, axis=0)
        self._comp_min[c] = block[idx, np.arange(self.k)]
        self._comp_owner[c] = np.asarray(members, dtype=np.int64)[idx]

    def _sources(self, u: int):
        """(values, owners) source matrices, one row per source of u."""
        cg = self.cg
        rows = list(cg.remaining_neighbors_of_vertex(u)) + [u]
        vals = self.keys[rows]
        owner_rows = [np.asarray(rows, dtype=np.int64)]
        comps = list(cg.component_neighbors(u))
        if comps:
            vals = np.concatenate([vals, np.stack([self._comp_min[c] for c in comps])])
            owner_rows.append(np.stack([self._comp_owner[c] for c in comps]))
        return vals, owner_rows, rows

    def minimizer(self, u: int):
        """(values, owners) of the per-copy minimum over N_fill(u) and u itself."""
        vals, owner_rows, rows = self._sources(u)
        idx = np.argmin(vals, axis=0)
        cols = np.arange(self.k)
        out_vals = vals[idx, cols]
        direct = len(rows)
        owners = np.where(idx < direct, owner_rows[0][np.minimum(idx, direct - 1)], 0)
        if len(owner_rows) > 1:
            comp_owned = idx >= direct
            if comp_owned.any():
                owners = np.where(comp_owned,
                                  owner_rows[1][np.maximum(idx - direct, 0), cols], owners)
        self.update_moves += self.k
        return out_vals, owners.astype(np.int64)

    def pivot(self, u: int):
        """Pivot u on the shared component graph; returns (delta, affected)
        where affected lists every remaining vertex whose minimizers may
        have changed (the new component's remaining neighborhood)."""
        delta = self.cg.pivot(u)
        for c in delta.absorbed:
            self._comp_min.pop(c, None)
            self._comp_owner.pop(c, None)
        self._recompute_component(delta.component)
        affected = list(self.cg.remaining_neighbors_of_component(delta.component))
        return delta, affected

    def add_copies(self, extra: int) -> None:
        """Grow the bank with `extra` fresh copies built on the current state."""
        if extra <= 0:
            return
        n = self.cg.n
        new = np.empty((n, extra))
        for i in range(extra):
            new[:, i] = copy_keys(self.seed, self.k + i, n)
        self.keys = np.concatenate([self.keys, new], axis=1)
        self.k += extra
        for c in list(self._comp_min):
            self._recompute_component(c)


class MinimizerCache:
    """Per-vertex minimizer arrays maintained incrementally across pivots.

    After pivoting u into component C, a touched vertex's new minimizer is
    min(cached value, C's remaining-minimum) in every copy whose previous
    owner was not u: the pivot removed only u's key from the vertex's
    sources, and every other key that may have vanished as a separate
    source (an absorbed component's minimum) is dominated by C's minimum.
    Copies owned by u are recomputed from scratch.
    """

    def __init__(self, bank: SketchBank):
        self.bank = bank
        self._vals: dict = {}
        self._owners: dict = {}
        for v in bank.cg.remaining_vertices():
            self._vals[v], self._owners[v] = bank.minimizer(v)

    def minimizer(self, v: int):
        return self._vals[v], self._owners[v]

    def _recompute_cols(self, v: int, cols: np.ndarray):
        bank = self.bank
        cg = bank.cg
        rows = list(cg.remaining_neighbors_of_vertex(v)) + [v]
        vals = bank.keys[np.ix_(rows, cols)]
        owner_rows = [np.asarray(rows, dtype=np.int64)]
        comps = list(cg.component_neighbors(v))
        if comps:
            vals = np.concatenate([vals, np.stack([bank._comp_min[c][cols] for c in comps])])
            owner_rows.append(np.stack([bank._comp_owner[c][cols] for c in comps]))
        idx = np.argmin(vals, axis=0)
        rr = np.arange(cols.size)
        out_vals = vals[idx, rr]
        direct = len(rows)
        owners = np.where(idx < direct, owner_rows[0][np.minimum(idx, direct - 1)], 0)
        if len(owner_rows) > 1:
            comp_owned = idx >= direct
            if comp_owned.any():
                owners = np.where(comp_owned,
                                  owner_rows[1][np.maximum(idx - direct, 0), rr], owners)
        return out_vals, owners.astype(np.int64)

    def apply_pivot(self, delta, affected) -> None:
        bank = self.bank
        u = delta.vertex
        self._vals.pop(u, None)
        self._owners.pop(u, None)
        cmin = bank._comp_min[delta.component]
        cown = bank._comp_owner[delta.component]
        for v in affected:
            vals, owners = self._vals[v], self._owners[v]
            stale = np.flatnonzero(owners == u)
            improved = cmin < vals
            vals[improved] = cmin[improved]
            owners[improved] = cown[improved]
            if stale.size:
                rv, ro = self._recompute_cols(v, stale)
                vals[stale] = rv
                owners[stale] = ro
            bank.update_moves += int(improved.sum()) + int(stale.size)

    def rebuild(self) -> None:
        self._vals.clear()
        self._owners.clear()
        for v in self.bank.cg.remaining_vertices():
            self._vals[v], self._owners[v] = self.bank.minimizer(v)
