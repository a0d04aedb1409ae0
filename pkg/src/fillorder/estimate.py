"""Sampling-based cardinality estimation.

The chain goes: a stopping-time mean estimator over [0, 1] distributions;
column-sum estimation for an implicitly accessed 0/1 matrix; two non-zero
column counters (a direct one built on per-column sums and a faster one
built on a combined geometric-trial distribution); and an adapter that
reads the fill degree of one vertex off the component graph by viewing the
remaining neighborhoods around it as matrix rows.

Samplers may implement ``sample_batch`` for vectorized draws; the stopping
rule consumes exactly the prefix up to the cutoff crossing, so batched and
scalar runs produce identical results for the same stream of draws.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import ComponentGraph, GraphError


class EstimationBudgetError(RuntimeError):
    pass


_BATCH0 = 256
_BATCH_MAX = 65536


def estimate_mean(d, sigma: float, rng, max_draws: int | None = None) -> float:
    """Draw from d until the running sum reaches sigma; return sigma/counter.

    d is a callable rng -> float in [0, 1], or an object with ``sample`` and
    optionally ``sample_batch``/``commit`` for vectorized draws.
    """
    if sigma <= 0:
        raise GraphError("sigma must be positive")
    batch = getattr(d, "sample_batch", None)
    sample = d if callable(d) else getattr(d, "sample", None)
    if batch is None and sample is None:
        raise GraphError("distribution must provide sample or sample_batch")
    commit = getattr(d, "commit", None)
    total = 0.0
    counter = 0
    size = _BATCH0
    while total < sigma:
        if max_draws is not None and counter >= max_draws:
            raise EstimationBudgetError(
                f"mean estimation exceeded {max_draws} draws with sum {total} < {sigma}"
            )
        if batch is not None:
            vals = np.asarray(batch(rng, size))
            if vals.size and (vals.min() < 0.0 or vals.max() > 1.0):
                raise GraphError("distribution produced a value outside [0, 1]")
            cum = total + np.cumsum(vals)
            pos = int(np.searchsorted(cum, sigma, side="left"))
            if pos < vals.size:
                counter += pos + 1
                total = float(cum[pos])
                if commit is not None:
                    commit(pos + 1)
                break
            counter += vals.size
            total = float(cum[-1]) if vals.size else total
            if commit is not None:
                commit(vals.size)
            size = min(size * 2, _BATCH_MAX)
        else:
            x = float(sample(rng))
            if not (0.0 <= x <= 1.0):
                raise GraphError(f"distribution produced {x} outside [0, 1]")
            total += x
            counter += 1
    return sigma / counter


class ImplicitMatrix:
    """Oracle access to a 0/1 matrix: row sizes, uniform sampling inside a
    row, and point queries.  ``query_count`` audits the oracle traffic."""

    def __init__(self):
        self.query_count = 0

    # subclasses define: r, ncols, nnz, n_for_logs, row_size, _row_entries
    def row_size(self, i: int) -> int:
        raise NotImplementedError

    def _row_entries(self, i: int):
        raise NotImplementedError

    def sample_from_row(self, i: int, rng) -> int:
        entries = self._row_entries(i)
        if len(entries) == 0:
            raise GraphError(f"row {i} has no non-zeros")
        self.query_count += 1
        return entries[int(rng.integers(len(entries)))]

    def query_value(self, i: int, j) -> int:
        self.query_count += 1
        return 1 if self._query(i, j) else 0

    def _query(self, i: int, j) -> bool:
        raise NotImplementedError

    def column_sum(self, j) -> int:
        return sum(1 for i in range(self.r) if self._query(i, j))

    def sample_nonzero(self, rng):
        """Uniform non-zero entry (i, j): row weighted by size, then uniform."""
        if self.nnz == 0:
            raise GraphError("matrix has no non-zeros")
        cum = getattr(self, "_row_cum", None)
        if cum is None:
            cum = np.cumsum([self.row_size(i) for i in range(self.r)])
            self._row_cum = cum
        t = int(rng.integers(self.nnz))
        i = int(np.searchsorted(cum, t, side="right"))
        self.query_count += 1
        return i, self.sample_from_row(i, rng)


class DenseMatrix(ImplicitMatrix):
    """Array-backed implicit matrix with vectorized helpers."""

    def __init__(self, array):
        super().__init__()
        self.a = np.asarray(array) != 0
        self.r, self.ncols = self.a.shape
        self._rows = [np.flatnonzero(self.a[i]) for i in range(self.r)]
        self.nnz = int(self.a.sum())
        self.n_for_logs = max(self.r, self.ncols, 2)

    def row_size(self, i: int) -> int:
        return len(self._rows[i])

    def _row_entries(self, i: int):
        return self._rows[i]

    def _query(self, i: int, j) -> bool:
        return bool(self.a[i, j])

    def column_sum(self, j) -> int:
        return int(self.a[:, j].sum())

    def true_nonzero_columns(self) -> int:
        return int(self.a.any(axis=0).sum())

    def nonzero_entries(self):
        i, j = np.nonzero(self.a)
        return i, j


class ComponentNeighborhoodMatrix(ImplicitMatrix):
    """The fill neighborhood of one remaining vertex as a 0/1 matrix: one
    row per adjacent component (its remaining neighbors) plus one virtual
    row for the vertex's own remaining neighbors; columns are vertices."""

    def __init__(self, cg: ComponentGraph, u: int):
        super().__init__()
        if not cg.is_remaining(u):
            raise GraphError(f"vertex {u} is eliminated")
        self.cg = cg
        self.u = u
        comp_rows = [cg.remaining_neighbors_of_component(c) for c in cg.component_neighbors(u)]
        self._sets = [set(s) for s in comp_rows] + [set(cg.remaining_neighbors_of_vertex(u))]
        self._sorted = [list(s) for s in comp_rows] + [list(cg.remaining_neighbors_of_vertex(u))]
        self.r = len(self._sets)
        self.ncols = cg.n
        self.nnz = sum(len(s) for s in self._sets)
        self.n_for_logs = max(cg.n, 2)

    def row_size(self, i: int) -> int:
        return len(self._sets[i])

    def _row_entries(self, i: int):
        return self._sorted[i]

    def _query(self, i: int, j) -> bool:
        return j in self._sets[i]

    def nonzero_entries(self):
        rows, cols = [], []
        for i, entries in enumerate(self._sorted):
            rows.extend([i] * len(entries))
            cols.extend(entries)
        return np.asarray(rows), np.asarray(cols)


class _BernoulliColumn:
    """D_Col(j): uniform row index, then the 0/1 entry A(i, j)."""

    def __init__(self, a: ImplicitMatrix, j):
        self.a = a
        self.j = j
        self._dense = isinstance(a, DenseMatrix)

    def sample(self, rng) -> float:
        i = int(rng.integers(self.a.r))
        return float(self.a.query_value(i, self.j))

    def sample_batch(self, rng, m: int):
        if not self._dense:
            return np.array([self.sample(rng) for _ in range(m)])
        i = rng.integers(self.a.r, size=m)
        self.a.query_count += m
        return self.a.a[i, self.j].astype(float)


def approx_column_sum(
    a: ImplicitMatrix, j, eps: float, delta_fail: float, rng,
    c_sigma: float = 5.0, c_cap: float = 8.0,
) -> float:
    """(1 +- eps) estimate of the number of non-zeros in column j, given the
    column is non-empty; raises EstimationBudgetError when the sampling
    budget is exhausted (an all-zero column would never terminate)."""
    if not (0 < eps) or not (0 < delta_fail < 1):
        raise GraphError("need eps > 0 and delta_fail in (0, 1)")
    sigma = math.ceil(c_sigma * eps ** -2 * math.log(1.0 / delta_fail))
    cap = math.ceil(c_cap * sigma * a.r)
    mu = estimate_mean(_BernoulliColumn(a, j), sigma, rng, max_draws=cap)
    return a.r * mu


class _ReciprocalColumnSums:
    """D_global: uniform non-zero (i, j), returning the reciprocal of the
    estimated sum of column j; one estimate per column per top-level call."""

    def __init__(self, a: ImplicitMatrix, eps: float, rng, c_sigma: float):
        self.a = a
        self.eps = eps
        self.rng = rng
        self.c_sigma = c_sigma
        self.delta_fail = a.n_for_logs ** -2.0
        self.memo: dict = {}

    def sample(self, rng) -> float:
        _, j = self.a.sample_nonzero(rng)
        est = self.memo.get(j)
        if est is None:
            est = approx_column_sum(self.a, j, self.eps, self.delta_fail, self.rng,
                                    c_sigma=self.c_sigma)
            self.memo[j] = est
        # the true reciprocal is at most 1; estimation noise on sum-1 columns
        # can push the estimate slightly below 1, so clamp into range
        return min(1.0, 1.0 / est)


def count_nonzero_columns_slow(a: ImplicitMatrix, eps: float, rng, c_sigma: float = 5.0) -> float:
    """Non-zero column count as nnz times the mean reciprocal column sum."""
    if a.nnz == 0:
        return 0.0
    sigma = math.ceil(c_sigma * eps ** -2 * math.log(a.n_for_logs))
    d = _ReciprocalColumnSums(a, eps, rng, c_sigma)
    return a.nnz * estimate_mean(d, sigma, rng)


class _CappedGeometric:
    """D_combined: uniform non-zero (i, j), then the number of uniform row
    probes until column j is hit again, capped at lim, scaled by 1/lim.

    The probe loop is realized as one inverse-transform geometric draw per
    sample (identical in distribution); the audit counts the probes the
    literal loop would have made.
    """

    def __init__(self, a: ImplicitMatrix, lim: int):
        self.a = a
        self.lim = lim
        _, cols = a.nonzero_entries()
        sums: dict = {}
        for j in cols.tolist():
            sums[j] = sums.get(j, 0) + 1
        self._cols = cols
        self._p = np.array([sums[j] for j in cols.tolist()]) / a.r
        self._last_costs = np.zeros(0, dtype=np.int64)

    def sample_batch(self, rng, m: int):
        idx = rng.integers(self._cols.size, size=m)
        p = self._p[idx]
        u = rng.random(m)
        with np.errstate(divide="ignore"):
            trials = np.ceil(np.log1p(-u) / np.log1p(-p)).astype(np.int64)
        trials = np.where(p >= 1.0, 1, np.maximum(trials, 1))
        counter = np.minimum(trials, self.lim)
        self._last_costs = counter + 1  # probes plus the entry draw
        return counter / self.lim

    def commit(self, used: int) -> None:
        self.a.query_count += int(self._last_costs[:used].sum())


def count_nonzero_columns(
    a: ImplicitMatrix, eps: float, rng, c_sigma: float = 5.0, c_lim: float = 4.0,
) -> float:
    """(1 +- eps) estimate of the non-zero column count via the combined
    geometric-trial distribution."""
    if a.nnz == 0:
        return 0.0
    log_n = math.log(a.n_for_logs)
    lim = max(1, math.ceil(c_lim * a.r * log_n))
    sigma = math.ceil(c_sigma * eps ** -2 * log_n ** 2)
    mean = estimate_mean(_CappedGeometric(a, lim), sigma, rng)
    return mean * a.nnz * lim / a.r


def estimate_degree(
    cg: ComponentGraph, u: int, eps: float, rng,
    policy: str = "auto", c_sigma: float = 5.0, c_lim: float = 4.0,
    query_audit: dict | None = None,
) -> float:
    """(1 +- eps) estimate of the fill degree of a remaining vertex.

    With no adjacent components the remaining degree is the answer.  The
    sampling path counts the non-zero columns of the neighborhood matrix
    and subtracts the vertex's own column.  Under the default policy the
    estimate is computed exactly by direct set union whenever that is
    cheaper than the sampling budget, which at small scales it always is;
    ``policy="sample"`` forces the sampling path.
    """
    if not cg.is_remaining(u):
        raise GraphError(f"vertex {u} is eliminated")
    if cg.d_component(u) == 0:
        return float(cg.d_remain(u))
    mat = ComponentNeighborhoodMatrix(cg, u)
    log_n = math.log(mat.n_for_logs)
    sampling_cost = (c_sigma * eps ** -2 * log_n ** 2) * (c_lim * mat.r * log_n)
    if policy == "auto" and mat.nnz <= sampling_cost:
        if query_audit is not None:
            query_audit["oracle_calls"] = query_audit.get("oracle_calls", 0) + mat.nnz
        return float(cg.fill_degree(u))
    est = count_nonzero_columns(mat, eps, rng, c_sigma=c_sigma, c_lim=c_lim) - 1.0
    if query_audit is not None:
        query_audit["oracle_calls"] = query_audit.get("oracle_calls", 0) + mat.query_count
    return max(0.0, est)
