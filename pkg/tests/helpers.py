"""Shared test oracles, independent of the library code paths they check.

Expected eigenvalues come from closed forms or small characteristic
polynomials solved by hand; isomorphism is decided by brute-force
bijection search; the Rayleigh quotient is recomputed as the weighted
edge-difference sum.
"""

from __future__ import annotations

import math
from itertools import permutations, product

from fiedlertrees import Tree
from fiedlertrees.enumeration import prufer_decode


def path_alpha(n: int) -> float:
    """Second-smallest Laplacian eigenvalue of the n-vertex path."""
    return 2.0 * (1.0 - math.cos(math.pi / n))


def dirichlet_path_nu(m: int) -> float:
    """Smallest Dirichlet eigenvalue of a root followed by m chained
    interior vertices, unit weights."""
    return 2.0 * (1.0 - math.cos(math.pi / (2 * m + 1)))


# frozen closed-form constants used across tests
ALPHA_P4 = 2.0 - math.sqrt(2.0)            # roots of x^2 - 4x + 2 shifted; equals path_alpha(4)
NU_M1 = 1.0                                # 1x1 matrix [1]
NU_M2 = (3.0 - math.sqrt(5.0)) / 2.0       # smaller root of x^2 - 3x + 1
NU_M2_W2 = 2.0 - math.sqrt(2.0)            # smaller root of x^2 - 4x + 2
NU_STAR4_LEAF = 2.0 - math.sqrt(3.0)       # smaller root of x^2 - 4x + 1


def spider(*leg_lengths: int) -> Tree:
    """Center 0 with one path leg per entry; leg vertices are numbered
    consecutively leg by leg."""
    edges = []
    next_id = 1
    for length in leg_lengths:
        prev = 0
        for _ in range(length):
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
    return Tree(next_id, edges)


def edge_rayleigh(t: Tree, f) -> float:
    """Weighted edge-difference form of the Laplacian Rayleigh quotient."""
    num = sum(w * (f[u] - f[v]) ** 2 for u, v, w in t.edges)
    den = sum(x * x for x in f)
    return num / den


def brute_force_isomorphic(t1: Tree, t2: Tree) -> bool:
    """Bijection search; only usable for small n."""
    if t1.n != t2.n:
        return False
    if sorted(t1.degrees()) != sorted(t2.degrees()):
        return False
    e2 = {(u, v) for u, v, _ in t2.edges}
    deg1, deg2 = t1.degrees(), t2.degrees()
    for perm in permutations(range(t1.n)):
        if any(deg1[v] != deg2[perm[v]] for v in range(t1.n)):
            continue
        mapped = {tuple(sorted((perm[u], perm[v]))) for u, v, _ in t1.edges}
        if mapped == e2:
            return True
    return False


def unlabeled_count_by_brute_force(n: int) -> dict[tuple[int, ...], int]:
    """Decode every Prufer word on n vertices and count unlabeled trees per
    degree multiset using brute-force isomorphism only."""
    by_seq: dict[tuple[int, ...], list[Tree]] = {}
    for word in product(range(n), repeat=n - 2):
        t = prufer_decode(list(word), n)
        seq = tuple(sorted(t.degrees(), reverse=True))
        reps = by_seq.setdefault(seq, [])
        if not any(brute_force_isomorphic(t, r) for r in reps):
            reps.append(t)
    return {seq: len(reps) for seq, reps in by_seq.items()}
