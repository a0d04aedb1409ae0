"""Exponential perturbation machinery and the approximate ordering loop.

The selection rule multiplies candidate degree values by (1 - eps_hat * X)
with X standard exponential, and picks the minimum.  Because the top order
statistics of k exponentials can be generated lazily in decreasing order,
only a handful of candidates per bucket ever need to be materialized, and
the winner's degree is then measured by a routine whose randomness is drawn
fresh per step: the pivot choice stays decoupled from the randomness inside
the bucketing sketches, which is exactly what keeps those sketches safe
from the adaptive-adversary failure mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import streams
from .buckets import ApproxDegreeDS
from .estimate import estimate_degree
from .graphs import Graph, GraphError, OrderingResult

_CDF_DOMAIN = 60.0
_CDF_TOL = 1e-12


@dataclass(frozen=True)
class DecayedCandidate:
    delta: float
    vertex: int
    bucket_index: int


@dataclass
class _ChainState:
    """Internal truncation state, enough to extend the chain and the
    assignment in tests (continuation oracle)."""

    k: int
    chain: list
    pending: float | None       # first order statistic below the threshold
    next_rate: int              # rate of the next gap to draw
    pool: list                  # element indices not yet assigned


def _sample_max_exponential(k: int, rng) -> float:
    """X_(k) of k Exp(1) draws by binary-search inversion of (1-e^-x)^k."""
    u = float(rng.random())
    lo, hi = 0.0, _CDF_DOMAIN
    while hi - lo > _CDF_TOL:
        mid = 0.5 * (lo + hi)
        cdf = math.exp(k * math.log1p(-math.exp(-mid))) if mid > 0 else 0.0
        if cdf < u:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_decreasing_exponentials(k: int, c2: float, rng):
    """Top order statistics of k Exp(1) variables, decreasing, down to the
    first value under X_(k) - c2 (exclusive)."""
    chain, _ = _sample_chain_with_state(k, c2, rng)
    return chain


def _sample_chain_with_state(k: int, c2: float, rng):
    if k < 1:
        raise GraphError("need k >= 1")
    if c2 <= 0:
        raise GraphError("c2 must be positive")
    x = _sample_max_exponential(k, rng)
    chain = [x]
    threshold = x - c2
    pending = None
    rate = 1
    while rate < k:
        nxt = chain[-1] - rng.exponential(1.0 / rate)
        rate += 1
        if nxt < threshold:
            pending = nxt
            break
        chain.append(nxt)
    return chain, _ChainState(k=k, chain=list(chain), pending=pending, next_rate=rate, pool=[])


def exp_decayed_candidates(items, eps_hat: float, c2: float, rng, bucket_index: int = -1):
    """Perturbation candidates for one bucket of (vertex, value) pairs whose
    values lie within a (1 + c2*eps_hat) factor of each other.

    Samples the top order statistics, assigns eps_hat * X to distinct
    uniformly chosen elements without replacement, and returns them; the
    element achieving the decayed minimum under the full (untruncated)
    assignment is always among those returned.
    """
    cands, _ = _decayed_candidates_with_state(items, eps_hat, c2, rng, bucket_index)
    return cands


def _decayed_candidates_with_state(items, eps_hat, c2, rng, bucket_index=-1):
    items = list(items)
    k = len(items)
    if k == 0:
        raise GraphError("cannot perturb an empty set")
    chain, state = _sample_chain_with_state(k, c2, rng)
    pool = list(range(k))
    out = []
    for x in chain:
        j = int(rng.integers(len(pool)))
        idx = pool.pop(j)
        out.append(DecayedCandidate(delta=eps_hat * x, vertex=items[idx][0], bucket_index=bucket_index))
    state.pool = pool
    return out, state


@dataclass
class ApproxOrderingConfig:
    """Tunable constants of the approximate ordering pipeline.

    c1 scales the error split eps_hat = eps / (c1 * ln n); the per-step
    flip probability scales like n^(1-c1), so holding the guarantee across
    all n steps of a run needs c1 comfortably above 2; c2 is the order-statistic stopping
    threshold (the trim window spans a (1 + eps_hat)^7 value spread, so 7
    covers the worst case); c_scan widens the bucket scan; the remaining
    constants pass through to the bucketing and estimation layers.
    """

    c1: float = 3.0
    c2: float = 7.0
    c_scan: float = 2.0
    c_q: float = 8.0
    c_sigma: float = 5.0
    c_lim: float = 4.0
    trim_exponent: int = 7
    degree_policy: str = "auto"
    threads: int = 1


def approx_min_degree_sequence(
    g: Graph, eps: float, seed: int, config: ApproxOrderingConfig | None = None,
) -> OrderingResult:
    """(1 + eps)-approximate greedy min-degree ordering, decorrelated.

    Per step: report degree buckets, draw decayed candidates from the
    scanned buckets, trim them against the best candidate score, measure
    each survivor's degree with per-step randomness, and pivot the vertex
    minimizing (1 - delta) * degree estimate.
    """
    cfg = config or ApproxOrderingConfig()
    if not (0.0 < eps <= 0.5):
        raise GraphError("eps must be in (0, 1/2]")
    if cfg.c1 <= 1.0:
        raise GraphError("c1 must exceed 1")
    n = g.n
    if n == 0:
        return OrderingResult(order=[], degrees=[], method="approx", seed=seed)
    ln_n = max(math.log(n), 1.0)
    eps_hat = min(0.5, eps / (cfg.c1 * ln_n))
    ds = ApproxDegreeDS(g, eps_hat, seed, c_q=cfg.c_q)
    base = 1.0 + eps_hat
    scan_width = math.ceil(cfg.c_scan * ln_n / eps_hat)
    audit = {"copies": ds.k, "oracle_calls": 0, "candidates_queried": 0}

    order, degrees = [], []
    for step in range(n):
        report = ds.report()
        i_min = report.min_index
        candidates = []
        for i in report.nonempty_indices:
            if i > i_min + scan_width:
                break
            items = [(v, base ** i) for v in report.bucket(i)]
            rng_i = streams.stream(seed, streams.DECAY, step, i)
            candidates.extend(exp_decayed_candidates(items, eps_hat, cfg.c2, rng_i, bucket_index=i))

        # duplicate vertices (cannot arise from a partition, but cheap to
        # guard): keep the larger perturbation
        best_delta: dict = {}
        for c in candidates:
            prev = best_delta.get(c.vertex)
            if prev is None or c.delta > prev.delta:
                best_delta[c.vertex] = c
        candidates = list(best_delta.values())

        m_star = min((1.0 - c.delta) * base ** c.bucket_index for c in candidates)
        cutoff = base ** cfg.trim_exponent * m_star
        trimmed = [c for c in candidates if (1.0 - c.delta) * base ** c.bucket_index <= cutoff]

        def measure(c: DecayedCandidate):
            rng_v = streams.stream(seed, streams.ESTIMATE, step, c.vertex)
            calls: dict = {}
            est = estimate_degree(
                ds.cg, c.vertex, eps_hat, rng_v,
                policy=cfg.degree_policy, c_sigma=cfg.c_sigma, c_lim=cfg.c_lim,
                query_audit=calls,
            )
            return (1.0 - c.delta) * est, est, c.vertex, calls.get("oracle_calls", 0)

        if cfg.threads > 1 and len(trimmed) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
                measured = list(ex.map(measure, trimmed))
        else:
            measured = [measure(c) for c in trimmed]
        audit["oracle_calls"] += sum(t[3] for t in measured)
        audit["candidates_queried"] += len(measured)
        _, est, u, _ = min(measured, key=lambda t: (t[0], t[2]))
        order.append(u)
        degrees.append(est)
        ds.pivot(u)

    audit["informs"] = ds.bank.update_moves
    return OrderingResult(order=order, degrees=degrees, method="approx", seed=seed, audit=audit)
