"""Benchmark and adversarial instance generation.

Covers the standard graph families used in tests and experiments, the
covering-set-system construction, the orthogonal-vectors reduction graph
(with the decision procedure it implies), and the adaptive-deletion
demonstration of how adversarially correlated updates break a sampled
set-size structure that is perfectly fine under oblivious updates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import streams
from .graphs import Graph, GraphError, MinDegreeEngine


# ----- graph families -----


def grid(k: int) -> Graph:
    if k < 1:
        raise GraphError("grid side must be >= 1")
    edges = []
    for r in range(k):
        for c in range(k):
            v = r * k + c
            if c + 1 < k:
                edges.append((v, v + 1))
            if r + 1 < k:
                edges.append((v, v + k))
    return Graph.from_edges(k * k, edges)


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs >= 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def clique(n: int) -> Graph:
    if n < 1:
        raise GraphError("clique needs >= 1 vertex")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> Graph:
    """Star on n vertices with center 0."""
    if n < 1:
        raise GraphError("star needs >= 1 vertex")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    if n < 0 or not (0.0 <= p <= 1.0):
        raise GraphError("need n >= 0 and p in [0, 1]")
    rng = streams.stream(seed, streams.GENERATE, n)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[mask].tolist(), ju[mask].tolist()))


_FAMILIES = ("grid", "erdos_renyi", "clique", "star", "path")


def generate(family: str, *args, seed: int = 0) -> Graph:
    """Dispatch by family name; deterministic for a fixed seed."""
    if family == "grid":
        return grid(int(args[0]))
    if family == "erdos_renyi":
        return erdos_renyi(int(args[0]), float(args[1]), seed=seed)
    if family == "clique":
        return clique(int(args[0]))
    if family == "star":
        return star(int(args[0]))
    if family == "path":
        return path(int(args[0]))
    raise GraphError(f"unknown family {family!r}; choose from {_FAMILIES}")


# ----- covering set systems -----


def next_prime(lo: int) -> int:
    """Smallest prime >= lo, by trial division."""
    p = max(2, int(lo))
    while True:
        if all(p % q for q in range(2, int(math.isqrt(p)) + 1)):
            return p
        p += 1


def _covering_arrays(n: int, p: int):
    """All diagonal and row subsets of [p^2] as one (p^2 + p, p) array of
    1-based elements, plus the mask of entries that survive truncation to [n]."""
    x = np.arange(p)
    a = np.arange(p)[:, None, None]
    b = np.arange(p)[None, :, None]
    diag = x[None, None, :] * p + (a * x[None, None, :] + b) % p + 1
    rows = x[:, None] * p + np.arange(p)[None, :] + 1
    table = np.concatenate([diag.reshape(p * p, p), rows], axis=0)
    return table, table <= n


@dataclass
class CoveringSetSystem:
    """Subsets of {1..n}, each of size <= 10*sqrt(n), jointly covering every
    pair of elements.  Sets materialize lazily from the array form."""

    n: int
    p: int

    @cached_property
    def sets(self) -> list:
        table, mask = _covering_arrays(self.n, self.p)
        out = []
        seen = set()
        for row, m in zip(table, mask):
            s = tuple(sorted(int(v) for v in row[m]))
            if s and s not in seen:
                seen.add(s)
                out.append(s)
        return out

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def max_size(self) -> int:
        return max(len(s) for s in self.sets)


def covering_set_system(n: int) -> CoveringSetSystem:
    if n < 1:
        raise GraphError("universe size must be >= 1")
    return CoveringSetSystem(n=n, p=next_prime(math.isqrt(n - 1) + 1))


def verify_covering_system(n: int):
    """Check the three covering conditions for [n] directly on the array
    form; returns (k, max_size).  Raises AssertionError on any failure."""
    sys = covering_set_system(n)
    p = sys.p
    assert p < 4.0 * math.sqrt(n) + 1e-9, f"prime {p} too large for n={n}"
    table, mask = _covering_arrays(n, p)
    sizes = mask.sum(axis=1)
    nonempty = sizes > 0
    max_size = int(sizes.max())
    assert max_size <= 10.0 * math.sqrt(n), f"set size {max_size} exceeds 10*sqrt({n})"
    canon = np.sort(np.where(mask, table, 0), axis=1)
    k = int(np.unique(canon[nonempty], axis=0).shape[0])
    assert k <= 17 * n, f"too many sets: {k} > 17*{n}"
    # one scatter marks every within-set pair; truncated entries redirect to
    # the scratch row/column 0
    t0 = np.where(mask, table, 0)
    covered = np.zeros((n + 1, n + 1), dtype=bool)
    covered[t0[:, :, None], t0[:, None, :]] = True
    assert covered[1:, 1:].all(), f"pair coverage fails for n={n}"
    return k, max_size


# ----- orthogonal-vectors reduction -----


@dataclass
class OVInstance:
    vectors: list            # n binary vectors, each a tuple of 0/1 ints
    graph: Graph
    v_vec: tuple             # vertex ids for the vectors
    v_dim: tuple             # vertex ids for the covering subsets, all dimensions
    v_pad: tuple             # the fully connected padding clique

    @property
    def pad_count(self) -> int:
        return len(self.v_pad)

    @property
    def dense_degree(self) -> int:
        """Fill degree every remaining vertex has after the subset vertices
        are eliminated when no orthogonal pair exists."""
        return self.pad_count + len(self.v_vec) - 1


def ov_reduction_graph(vectors) -> OVInstance:
    vecs = [tuple(int(b) for b in v) for v in vectors]
    if not vecs:
        raise GraphError("need at least one vector")
    d = len(vecs[0])
    if any(len(v) != d for v in vecs):
        raise GraphError("vectors must share one dimension")
    if any(b not in (0, 1) for v in vecs for b in v):
        raise GraphError("vectors must be binary")
    n = len(vecs)
    system = covering_set_system(n)
    subsets = system.sets

    v_vec = tuple(range(n))
    edges = []
    dim_ids = []
    nxt = n
    for j in range(d):
        for s in subsets:
            dim_ids.append(nxt)
            for i in s:  # 1-based element ids
                if vecs[i - 1][j] == 1:
                    edges.append((i - 1, nxt))
            nxt += 1
    pad_count = 20 * math.ceil(math.sqrt(n))
    v_pad = tuple(range(nxt, nxt + pad_count))
    for idx, a in enumerate(v_pad):
        for b in v_pad[idx + 1:]:
            edges.append((a, b))
        for i in v_vec:
            edges.append((a, i))
    g = Graph.from_edges(nxt + pad_count, edges)
    return OVInstance(vectors=vecs, graph=g, v_vec=v_vec, v_dim=tuple(dim_ids), v_pad=v_pad)


def ov_decide_via_ordering(inst: OVInstance):
    """Run the min-degree ordering until the first non-subset vertex is about
    to be pivoted and read the decision off its fill degree.

    Returns (has_orthogonal_pair, next_degree, dims_eliminated_first).
    """
    dims = set(inst.v_dim)
    eng = MinDegreeEngine(inst.graph)
    eliminated = 0
    while True:
        deg, u = eng.min_entry()
        if u not in dims:
            dims_first = eliminated == len(dims)
            return deg < inst.dense_degree, deg, dims_first
        eng.pivot(u)
        eliminated += 1


def ov_bruteforce(vectors) -> bool:
    """Direct orthogonal-pair scan."""
    vecs = [tuple(v) for v in vectors]
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if all(a * b == 0 for a, b in zip(vecs[i], vecs[j])):
                return True
    return False


def random_ov_vectors(n: int, d: int, density: float, seed: int) -> list:
    rng = streams.stream(seed, streams.GENERATE, n, d)
    return [tuple(int(b) for b in (rng.random(d) < density)) for _ in range(n)]


# ----- adversarial-correlation demonstration -----


def adversarial_correlation_demo(n: int, eps: float, seed: int = 0, c_keys: float = 1.0) -> dict:
    """Sampled set-size structure under an adaptive deletion loop versus an
    oblivious control.

    Two sets start full.  The structure tracks |S_i ∩ K| for a hidden random
    key set K and reports the set of minimum tracked size (ties to the lower
    index).  The adaptive loop deletes each element from the second set and
    reinserts it exactly when the structure flags that set as the minimum,
    which filters the second set down to K.  The oblivious control performs
    the same number of pre-committed random deletions and keeps the additive
    size-estimation error within eps*n.
    """
    if n < 100:
        raise GraphError("demo needs n >= 100")
    rng = streams.stream(seed, streams.DEMO, n)
    k = math.ceil(c_keys * math.log(n) / (eps * eps))
    k = min(k, n)
    key_ids = rng.choice(n, size=k, replace=False)
    in_key = np.zeros(n, dtype=bool)
    in_key[key_ids] = True

    # Adaptive loop: S1 stays full, so |S1 ∩ K| == k throughout.
    s2 = np.ones(n, dtype=bool)
    k2 = k
    for x in range(n):
        s2[x] = False
        if in_key[x]:
            k2 -= 1
        if k2 < k:  # S2 strictly minimum; on ties S1 wins lexicographically
            s2[x] = True
            k2 += 1
    final_size = int(s2.sum())

    # Oblivious control: delete a pre-committed random permutation from a
    # fresh full set, estimating its size as |S ∩ K| * n / |K| along the way.
    perm = rng.permutation(n)
    deleted_keys = np.cumsum(in_key[perm])
    k2_t = k - deleted_keys
    true_t = n - 1 - np.arange(n)
    est_t = k2_t * (n / k)
    oblivious_max_error = float(np.max(np.abs(est_t - true_t)))

    return {
        "final_set_size": final_size,
        "key_set_size": k,
        "oblivious_max_error": oblivious_max_error,
    }
