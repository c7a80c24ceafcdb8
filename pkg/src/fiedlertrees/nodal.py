"""Characteristic sets, weak nodal domains, and the geometric split of a
tree along its Fiedler vector.

A Fiedler vector of a tree changes sign across exactly one edge, or
vanishes at exactly one vertex separating the positive from the negative
vertices.  Splitting there produces two rooted boundary trees whose first
Dirichlet eigenvalues both equal the algebraic connectivity; that identity
is the workhorse the extremal searches rely on, so it is exposed here with
an explicit residual check.

Zero classification uses the relative threshold tau = tau_factor * max|f|,
which separates symmetry-forced zeros from round-off at these scales.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .spectral import algebraic_connectivity, dirichlet_nu
from .trees import RootedBoundaryTree, Tree, branches_at, root_to_leaf_paths

DEFAULT_TAU_FACTOR = 1e-7


class AmbiguousCharacteristicSet(RuntimeError):
    """Zero or several characteristic candidates survived the tolerance.

    A genuine Fiedler vector admits exactly one characteristic vertex or
    edge, so ambiguity always signals numerical degeneracy worth surfacing;
    re-solve with a tighter residual instead of guessing.
    """


class DisconnectedNodalDomainError(RuntimeError):
    """A weak nodal domain came out disconnected, which means the input was
    not a Fiedler vector or the zero tolerance failed."""


@dataclass(frozen=True)
class CharacteristicSet:
    """kind is "vertex" (ids = (v,)) or "edge" (ids = (u, w) with
    f(u) < 0 < f(w))."""

    kind: str
    ids: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiedlerAnalysis:
    alpha: float
    fiedler: np.ndarray
    charset: CharacteristicSet
    domain_pos: frozenset[int]
    domain_neg: frozenset[int]
    tau_zero: float


@dataclass(frozen=True, eq=False)
class GeometricSplit:
    """Two rooted boundary trees covering the original tree.

    origin_pos / origin_neg map side vertex ids to original vertex ids;
    the root maps to the characteristic vertex, or to -1 when it is the
    vertex inserted on the characteristic edge.  w1 is the boundary weight
    of the negative side and w2 of the positive side (None in the vertex
    case, where all boundary edges keep weight 1).
    """

    pos: RootedBoundaryTree
    neg: RootedBoundaryTree
    origin_pos: tuple[int, ...]
    origin_neg: tuple[int, ...]
    w1: float | None
    w2: float | None


def _tau(f: np.ndarray, tau_factor: float) -> float:
    scale = float(np.abs(f).max(initial=0.0))
    if scale == 0.0:
        raise ValueError("zero vector has no sign structure")
    return tau_factor * scale


def _separates(t: Tree, z: int, pos: set[int], neg: set[int]) -> bool:
    """True iff no component of t minus z contains both a strictly positive
    and a strictly negative vertex."""
    for comp in branches_at(t, z, z):
        if comp & pos and comp & neg:
            return False
    return True


def characteristic_set(
    t: Tree, f, tau_factor: float = DEFAULT_TAU_FACTOR
) -> CharacteristicSet:
    """Locate the unique sign-change edge or separating zero vertex of a
    Fiedler vector."""
    f = np.asarray(f, dtype=float)
    tau = _tau(f, tau_factor)
    sign_edges = []
    for u, v, _ in t.edges:
        if f[u] < -tau and f[v] > tau:
            sign_edges.append((u, v))
        elif f[v] < -tau and f[u] > tau:
            sign_edges.append((v, u))
    if len(sign_edges) == 1:
        return CharacteristicSet("edge", sign_edges[0])
    if len(sign_edges) > 1:
        raise AmbiguousCharacteristicSet(
            f"{len(sign_edges)} sign-change edges at tau={tau:.3e}"
        )
    pos = {v for v in range(t.n) if f[v] > tau}
    neg = {v for v in range(t.n) if f[v] < -tau}
    candidates = [
        z for z in range(t.n) if abs(f[z]) <= tau and _separates(t, z, pos, neg)
    ]
    if len(candidates) != 1:
        raise AmbiguousCharacteristicSet(
            f"{len(candidates)} separating zero vertices at tau={tau:.3e}"
        )
    return CharacteristicSet("vertex", (candidates[0],))


def _connected(t: Tree, vertices: frozenset[int]) -> bool:
    if not vertices:
        return False
    start = min(vertices)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, _ in t.neighbors(x):
            if y in vertices and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen == vertices


def nodal_domains(
    t: Tree, f, tau_factor: float = DEFAULT_TAU_FACTOR
) -> tuple[frozenset[int], frozenset[int]]:
    """Weak nodal domains: the vertices with f >= -tau and those with
    f <= tau.  Zero vertices belong to both.  Each must induce a connected
    subtree."""
    f = np.asarray(f, dtype=float)
    tau = _tau(f, tau_factor)
    pos = frozenset(v for v in range(t.n) if f[v] >= -tau)
    neg = frozenset(v for v in range(t.n) if f[v] <= tau)
    for name, dom in (("non-negative", pos), ("non-positive", neg)):
        if not _connected(t, dom):
            raise DisconnectedNodalDomainError(
                f"{name} domain is disconnected; input is not a Fiedler "
                "vector or tau is miscalibrated"
            )
    return pos, neg


def analyze(t: Tree, tau_factor: float = DEFAULT_TAU_FACTOR) -> FiedlerAnalysis:
    """Full Fiedler analysis: alpha, vector, characteristic set, domains."""
    alpha, f = algebraic_connectivity(t)
    charset = characteristic_set(t, f, tau_factor)
    pos, neg = nodal_domains(t, f, tau_factor)
    return FiedlerAnalysis(alpha, f, charset, pos, neg, _tau(f, tau_factor))


def analysis_to_json(a: FiedlerAnalysis) -> dict:
    return {
        "alpha": float(a.alpha),
        "fiedler": [float(x) for x in a.fiedler],
        "characteristic": {"kind": a.charset.kind, "ids": list(a.charset.ids)},
        "domain_pos": sorted(a.domain_pos),
        "domain_neg": sorted(a.domain_neg),
    }


def _make_side(
    t: Tree,
    vertices: list[int],
    attach: list[tuple[int, float]],
    origin_root: int,
) -> tuple[RootedBoundaryTree, tuple[int, ...]]:
    """Build one side of a split: a new root 0 joined to the listed original
    vertices with the given weights, plus all original edges inside the side.
    Returns the rooted tree and the side-id -> original-id map."""
    order = sorted(vertices)
    new_id = {orig: i + 1 for i, orig in enumerate(order)}
    inside = set(vertices)
    edges: list[tuple[int, int, float]] = []
    for u, v, w in t.edges:
        if u in inside and v in inside:
            edges.append((new_id[u], new_id[v], w))
    boundary_ids = []
    for orig, w in attach:
        edges.append((0, new_id[orig], w))
        boundary_ids.append(new_id[orig])
    side_tree = Tree(len(order) + 1, edges)
    # designate the heaviest boundary edge (the split edge when present),
    # otherwise the smallest interior id
    designated = max(boundary_ids, key=lambda i: (side_tree.weight(0, i), -i))
    rbt = RootedBoundaryTree(side_tree, 0, designated)
    return rbt, (origin_root,) + tuple(order)


def geometric_split(t: Tree, analysis: FiedlerAnalysis) -> GeometricSplit:
    """Split t at the characteristic set of its Fiedler vector.

    Edge case: a new vertex is inserted on the characteristic edge uw and the
    two half-edges get weights |f(w)-f(u)|/|f(u)| (negative side) and
    |f(w)-f(u)|/|f(w)| (positive side); both are >= 1 because the endpoint
    values have opposite signs.

    Vertex case: the characteristic vertex becomes the shared root; branches
    are assigned by sign, and each branch on which f vanishes goes to the
    currently smaller side (ties to the positive side).  All boundary edges
    keep weight 1.
    """
    f = analysis.fiedler
    tau = analysis.tau_zero
    cs = analysis.charset
    if cs.kind == "edge":
        u, w = cs.ids  # f[u] < 0 < f[w]
        diff = abs(float(f[w]) - float(f[u]))
        w1 = diff / abs(float(f[u]))
        w2 = diff / abs(float(f[w]))
        comp_pos = next(c for c in branches_at(t, u, u) if w in c)
        comp_neg = frozenset(range(t.n)) - comp_pos
        pos_rbt, origin_pos = _make_side(t, sorted(comp_pos), [(w, w2)], -1)
        neg_rbt, origin_neg = _make_side(t, sorted(comp_neg), [(u, w1)], -1)
        return GeometricSplit(pos_rbt, neg_rbt, origin_pos, origin_neg, w1, w2)

    v0 = cs.ids[0]
    pos_branches, neg_branches, zero_branches = [], [], []
    for branch in branches_at(t, v0, v0):
        if any(f[x] > tau for x in branch):
            pos_branches.append(branch)
        elif any(f[x] < -tau for x in branch):
            neg_branches.append(branch)
        else:
            zero_branches.append(branch)
    pos_verts = set().union(*pos_branches)
    neg_verts = set().union(*neg_branches)
    for branch in zero_branches:
        if len(pos_verts) <= len(neg_verts):
            pos_verts |= branch
        else:
            neg_verts |= branch

    def attach_edges(side: set[int]) -> list[tuple[int, float]]:
        return [(x, wt) for x, wt in t.neighbors(v0) if x in side]

    pos_rbt, origin_pos = _make_side(t, sorted(pos_verts), attach_edges(pos_verts), v0)
    neg_rbt, origin_neg = _make_side(t, sorted(neg_verts), attach_edges(neg_verts), v0)
    return GeometricSplit(pos_rbt, neg_rbt, origin_pos, origin_neg, None, None)


def verify_split(t: Tree, split: GeometricSplit, alpha: float) -> tuple[float, float]:
    """Relative distances |nu(side) - alpha| / alpha for both sides.

    Small residuals (<= 1e-8 for well-conditioned inputs) confirm the first
    Dirichlet eigenvalues of the two sides coincide with alpha.  Large
    residuals are returned, not raised: they are a diagnostic.
    """
    covered = (split.pos.tree.n - 1) + (split.neg.tree.n - 1)
    # edge case: the interiors cover every original vertex; vertex case:
    # every original vertex except the characteristic vertex
    expected = t.n if split.w1 is not None else t.n - 1
    if covered != expected:
        raise ValueError("split sides do not partition the tree")
    nu_pos, _ = dirichlet_nu(split.pos)
    nu_neg, _ = dirichlet_nu(split.neg)
    return abs(nu_pos - alpha) / alpha, abs(nu_neg - alpha) / alpha


def check_monotone_paths(
    rbt: RootedBoundaryTree, g, tau_factor: float = DEFAULT_TAU_FACTOR
) -> bool:
    """True iff along every root-to-leaf path the eigenvector values (with 0
    at the root) are strictly increasing with margin tau, or the whole path
    is zero within tau."""
    g = np.asarray(g, dtype=float)
    tau = _tau(g, tau_factor)
    index = rbt.interior_index()
    for path in root_to_leaf_paths(rbt.tree, rbt.root):
        values = [0.0] + [float(g[index[v]]) for v in path[1:]]
        if all(abs(x) <= tau for x in values):
            continue
        if all(b - a > tau for a, b in zip(values, values[1:])):
            continue
        return False
    return True
