"""One dynamic min-key sketch copy over a component graph.

Every vertex draws a uniform key once; each remaining vertex tracks the
minimum key over its fill neighborhood (itself included) as vertices get
pivoted.  Updates propagate eagerly: a component whose remaining-minimum
changes informs the remaining vertices around it, and components are melded
small-into-large.

Entry tags inside the per-vertex fill structures are ints: a remaining
neighbor v is tagged ``v``, a component c is tagged ``n + c``, so stale
entries are removed by keyed lookup instead of scanning.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graphs import ComponentGraph, GraphError, PivotDelta, meld_survivor
from .streams import copy_keys


@dataclass(frozen=True)
class SketchKey:
    x: float
    owner: int


class _MinDict:
    """Minimum over a keyed set of floats: dict plus a lazy-deletion heap."""

    __slots__ = ("live", "_heap")

    def __init__(self, items=()):
        self.live = dict(items)
        self._heap = [(k, t) for t, k in self.live.items()]
        heapq.heapify(self._heap)

    def __len__(self):
        return len(self.live)

    def __contains__(self, tag):
        return tag in self.live

    def set(self, tag, key) -> None:
        self.live[tag] = key
        heapq.heappush(self._heap, (key, tag))

    def remove(self, tag) -> None:
        del self.live[tag]

    def top(self):
        """(key, tag) of the current minimum, or None when empty."""
        heap = self._heap
        live = self.live
        while heap:
            key, tag = heap[0]
            if live.get(tag) == key:
                return key, tag
            heapq.heappop(heap)
        return None

    def min_key(self):
        t = self.top()
        return t[0] if t is not None else None


class SketchCopy:
    """A single sketch copy bound to a ComponentGraph it mirrors in lockstep.

    The copy owns, per component, the min-structure over the keys of its
    remaining neighbors, and per remaining vertex the min-structure over
    its direct remaining neighbors' keys plus the remaining-minimum of each
    adjacent component.  The vertex's own key is consulted at query time
    rather than stored, so it never needs self-updates.
    """

    def __init__(self, cg: ComponentGraph, seed: int, copy_index: int = 0):
        self.cg = cg
        self.seed = seed
        self.copy_index = copy_index
        n = cg.n
        self.n = n
        self.keys = copy_keys(seed, copy_index, n)
        self.informs = 0       # fill-entry updates caused by component-min changes
        self.meld_moves = 0    # element moves from melding and retagging

        self._rem = {}
        for c in cg.component_ids():
            self._rem[c] = _MinDict((v, self.keys[v]) for v in cg.remaining_neighbors_of_component(c))
        self._fill = {}
        for u in cg.remaining_vertices():
            md = _MinDict((v, self.keys[v]) for v in cg.remaining_neighbors_of_vertex(u))
            for c in cg.component_neighbors(u):
                md.set(n + c, self._rem[c].min_key())
            self._fill[u] = md

    @property
    def op_counter(self) -> int:
        return self.informs + self.meld_moves

    # ----- queries -----

    def _query_value(self, u: int) -> float:
        t = self._fill[u].top()
        x = self.keys[u]
        return x if t is None or x < t[0] else t[0]

    def query_min(self, u: int) -> SketchKey:
        """Minimum key over the fill neighborhood of u, u included. O(1) amortized."""
        if u not in self._fill:
            raise GraphError(f"vertex {u} is not remaining")
        t = self._fill[u].top()
        x = self.keys[u]
        if t is None or x < t[0]:
            return SketchKey(x=x, owner=u)
        key, tag = t
        owner = tag if tag < self.n else self._rem[tag - self.n].top()[1]
        return SketchKey(x=key, owner=owner)

    # ----- update machinery -----

    def _capture(self, store, v):
        if v not in store and v in self._fill:
            store[v] = self._query_value(v)

    def inform_remaining(self, w: int, x_old: float, x_new: float):
        """Replace component w's entry (key x_old -> x_new) in the fill
        structure of every remaining neighbor of w; returns the neighbors
        whose fill minimum changed."""
        changed = self._inform(w, x_new, {}, check_fill_min=True)
        return changed

    def _inform(self, w: int, x_new: float, capture_store, check_fill_min: bool = False):
        members = self._rem[w].live
        tag = self.n + w
        changed = []
        for v in members:
            fd = self._fill[v]
            if check_fill_min:
                before = fd.min_key()
            self._capture(capture_store, v)
            fd.set(tag, x_new)
            if check_fill_min and fd.min_key() != before:
                changed.append(v)
        self.informs += len(members)
        return changed

    def meld(self, a: int, b: int, _capture_store=None) -> int:
        """Meld components a and b; informs the side whose remaining-minimum
        lost (ties inform neither), melds contents small-into-large, and
        retags the absorbed side's entries.  Returns the surviving id."""
        store = _capture_store if _capture_store is not None else {}
        da, db = self._rem[a], self._rem[b]
        winner = meld_survivor(a, len(da), b, len(db))
        loser = b if winner == a else a
        dw, dl = self._rem[winner], self._rem[loser]
        min_w, min_l = dw.min_key(), dl.min_key()
        merged = min(x for x in (min_w, min_l) if x is not None) if (min_w is not None or min_l is not None) else None

        # Inform the side whose remaining-minimum lost; ties inform neither.
        # When the winner side lost, its neighbors get an explicit pass; when
        # the loser side lost, its neighbors pick up the new key while being
        # retagged below, which is counted as the same kind of update.
        if min_l is not None and (min_w is None or min_l < min_w):
            self._inform(winner, merged, store)
        loser_informed = min_w is not None and (min_l is None or min_w < min_l)

        win_tag, lose_tag = self.n + winner, self.n + loser
        for v, key in dl.live.items():
            fd = self._fill[v]
            self._capture(store, v)
            fd.remove(lose_tag)
            fd.set(win_tag, merged)
            if v not in dw.live:
                dw.set(v, key)
            self.meld_moves += 1
            if loser_informed:
                self.informs += 1
        del self._rem[loser]
        return winner

    def pivot_vertex(self, delta: PivotDelta):
        """Apply the pivot summarized by `delta` (the ComponentGraph must
        already be in the post-pivot state).  Returns the sorted list of
        remaining vertices whose query_min changed."""
        u = delta.vertex
        if u not in self._fill:
            raise GraphError(f"vertex {u} is not remaining in this sketch copy")
        n = self.n
        x_u = self.keys[u]
        old: dict = {}

        # Direct remaining neighbors lose u's key and gain the fresh component.
        fresh = _MinDict((v, self.keys[v]) for v in delta.remaining_neighbors)
        fresh_min = fresh.min_key()
        for v in delta.remaining_neighbors:
            self._capture(old, v)
            fd = self._fill[v]
            fd.remove(u)
            fd.set(n + u, fresh_min)
            self.meld_moves += 1
        del self._fill[u]
        self._rem[u] = fresh

        cur = u
        for w in delta.component_neighbors:
            wd = self._rem[w]
            was_min = wd.top()[1] == u
            wd.remove(u)
            if was_min and len(wd):
                self._inform(w, wd.min_key(), old)
            cur = self.meld(cur, w, _capture_store=old)
        if cur != delta.component:
            raise AssertionError("sketch meld chain diverged from the component graph")

        changed = [v for v, before in old.items() if self._query_value(v) != before]
        changed.sort()
        return changed

    # ----- introspection for tests -----

    def logical_state(self):
        rem = {c: dict(d.live) for c, d in self._rem.items()}
        fill = {v: dict(d.live) for v, d in self._fill.items()}
        return rem, fill
