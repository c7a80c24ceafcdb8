"""Constructive moves on rooted boundary trees and the structural
predicates they certify.

The two pendant perturbations and the branch rearrangement each strictly
decrease the first Dirichlet eigenvalue when applied under their
preconditions, which is what pins down the shape of eigenvalue
minimizers: a caterpillar whose non-pendant degrees grow away from the
root.  Gluing two rooted trees at their roots bounds the algebraic
connectivity of the result by the larger of the two Dirichlet
eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Sequence

import numpy as np

from .nodal import FiedlerAnalysis
from .trees import (
    RootedBoundaryTree,
    Tree,
    distances_from,
    is_caterpillar,
    trunk,
    validate_tree_sequence,
)


@dataclass(frozen=True)
class PerturbationRecord:
    """One applied move: kind is "P1", "P2" or "Rearrange"; moved lists the
    removed then the added edges."""

    kind: str
    before_nu: float
    after_nu: float
    moved: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "before_nu": float(self.before_nu),
            "after_nu": float(self.after_nu),
            "moved": [list(e) for e in self.moved],
        }


def _rebuild(
    rbt: RootedBoundaryTree,
    edges: list[tuple[int, int, float]],
    n: int,
    removed_designated: bool,
) -> RootedBoundaryTree:
    tree = Tree(n, edges)
    designated = rbt.boundary_neighbor
    if removed_designated:
        if rbt.boundary_weight != 1.0:
            raise ValueError(
                "cannot detach the weighted boundary edge from the root"
            )
        designated = tree.neighbors(rbt.root)[0][0]
    return RootedBoundaryTree(tree, rbt.root, designated)


def perturb_p1(
    rbt: RootedBoundaryTree, w: int, vi: int, vj: int
) -> RootedBoundaryTree:
    """Move pendant w from trunk vertex vi to the deeper trunk vertex vj.

    Requires a rooted caterpillar, w a pendant other than the root attached
    to vi, and vi, vj on the trunk with height(vi) < height(vj).  The vertex
    count is unchanged; if vj was the head, the trunk lengthens.
    """
    t = rbt.tree
    line = trunk(rbt)
    pos = {v: i for i, v in enumerate(line)}
    if w == rbt.root or not t.is_pendant(w):
        raise ValueError(f"w={w} must be a pendant vertex other than the root")
    if vi not in pos or vj not in pos:
        raise ValueError(f"vi={vi} and vj={vj} must lie on the trunk")
    if not t.has_edge(w, vi):
        raise ValueError(f"pendant {w} is not attached to {vi}")
    if pos[vi] >= pos[vj]:
        raise ValueError(f"need height({vi}) < height({vj})")
    if vj == w:
        raise ValueError("cannot reattach a pendant to itself")
    edges = [e for e in t.edges if {e[0], e[1]} != {w, vi}]
    edges.append((min(w, vj), max(w, vj), 1.0))
    removed_designated = {w, vi} == {rbt.root, rbt.boundary_neighbor}
    return _rebuild(rbt, edges, t.n, removed_designated)


def perturb_p2(rbt: RootedBoundaryTree, vj: int) -> RootedBoundaryTree:
    """Attach a new pendant vertex to trunk vertex vj (vj != root)."""
    t = rbt.tree
    line = trunk(rbt)
    if vj not in line:
        raise ValueError(f"vj={vj} must lie on the trunk")
    if vj == rbt.root:
        raise ValueError("cannot attach the new pendant to the root")
    edges = list(t.edges) + [(vj, t.n, 1.0)]
    return _rebuild(rbt, edges, t.n + 1, removed_designated=False)


def rearrange_branches(
    rbt: RootedBoundaryTree,
    g,
    x_path: Sequence[int],
    y_path: Sequence[int],
) -> RootedBoundaryTree:
    """Reattach everything hanging below y_i onto the pendant x_j.

    x_path and y_path are simple root paths sharing a prefix and diverging
    after some vertex; x_path ends at a pendant x_j, y_i is the first vertex
    of y_path past the divergence, and the eigenvector value at x_j must
    exceed the one at y_i.  Every edge (y_i, s) with s away from the root is
    replaced by (x_j, s), which preserves the degree multiset.
    """
    t = rbt.tree
    x_path, y_path = tuple(x_path), tuple(y_path)
    for path in (x_path, y_path):
        if not path or path[0] != rbt.root:
            raise ValueError("paths must start at the root")
        for a, b in zip(path, path[1:]):
            if not t.has_edge(a, b):
                raise ValueError(f"({a},{b}) is not an edge")
    split_at = 0
    while (
        split_at < min(len(x_path), len(y_path))
        and x_path[split_at] == y_path[split_at]
    ):
        split_at += 1
    if split_at == 0 or split_at >= min(len(x_path), len(y_path)):
        raise ValueError("paths must share a prefix and then diverge")
    if len(x_path) < split_at + 2 or len(y_path) < split_at + 2:
        raise ValueError("both paths must continue past the divergence")
    anchor = x_path[split_at - 1]
    y_i = y_path[split_at]
    x_j = x_path[-1]
    if not t.is_pendant(x_j):
        raise ValueError(f"x_path must end at a pendant vertex, got {x_j}")
    g = np.asarray(g, dtype=float)
    index = rbt.interior_index()
    if not g[index[x_j]] > g[index[y_i]]:
        raise ValueError("need g(x_j) > g(y_i); swap the roles of the two paths")
    edges = []
    for u, v, wt in t.edges:
        if y_i in (u, v) and anchor not in (u, v):
            s = v if u == y_i else u
            edges.append((min(x_j, s), max(x_j, s), wt))
        else:
            edges.append((u, v, wt))
    return _rebuild(rbt, edges, t.n, removed_designated=False)


def glue(t1: RootedBoundaryTree, t2: RootedBoundaryTree) -> Tree:
    """Identify the two roots into a single interior vertex.

    The merged root becomes vertex 0; the interiors of t1 and then t2 follow
    in increasing original id order.  All edge weights are preserved, so the
    result has |V1| + |V2| - 1 vertices.
    """
    new_id_1 = {t1.root: 0}
    for i, v in enumerate(t1.interior()):
        new_id_1[v] = 1 + i
    offset = t1.tree.n
    new_id_2 = {t2.root: 0}
    for i, v in enumerate(t2.interior()):
        new_id_2[v] = offset + i
    edges = [(new_id_1[u], new_id_1[v], w) for u, v, w in t1.tree.edges]
    edges += [(new_id_2[u], new_id_2[v], w) for u, v, w in t2.tree.edges]
    return Tree(t1.tree.n + t2.tree.n - 1, edges)


def build_monotone_rooted_caterpillar(
    seq: Sequence[int], root_choice: int, boundary_weight: float = 1.0
) -> RootedBoundaryTree:
    """The rooted caterpillar with non-pendant degrees sorted non-decreasing
    away from the root.

    root_choice selects the root's degree from seq; the remaining degrees
    make up the interior.  The root gets root_choice - 1 pendant neighbors
    plus the spine (when the interior has non-pendant vertices), so at most
    one root neighbor is non-pendant.  Labeling: root 0, spine 1..m outward,
    pendants afterwards grouped by attachment, root pendants first.
    """
    seq = tuple(int(d) for d in seq)
    if not validate_tree_sequence(seq):
        raise ValueError(f"invalid tree sequence {seq}")
    if boundary_weight < 1.0:
        raise ValueError(f"boundary weight {boundary_weight} must be >= 1")
    if root_choice not in seq:
        raise ValueError(f"root degree {root_choice} not present in {seq}")
    rest = list(seq)
    rest.remove(root_choice)
    spine = sorted(d for d in rest if d >= 2)
    m = len(spine)
    pendants_available = sum(1 for d in rest if d == 1)

    edges: list[tuple[int, int]] = []
    next_id = 1 + m
    pendant_need = []
    if m == 0:
        pendant_need.append((0, root_choice))
    else:
        edges.extend((i, i + 1) for i in range(m))  # 0-1-2-...-m spine chain
        pendant_need.append((0, root_choice - 1))
        for k, d in enumerate(spine, start=1):
            if k < m:
                pendant_need.append((k, d - 2))
            else:
                pendant_need.append((k, d - 1))
    total_needed = sum(c for _, c in pendant_need)
    if total_needed != pendants_available:
        raise ValueError(
            f"cannot realize {seq} with root degree {root_choice}: "
            f"needs {total_needed} pendants, sequence provides {pendants_available}"
        )
    for vertex, count in pendant_need:
        for _ in range(count):
            edges.append((vertex, next_id))
            next_id += 1
    tree = Tree(next_id, edges)
    boundary_neighbor = 1 if m > 0 else tree.neighbors(0)[0][0]
    if boundary_weight != 1.0:
        weighted = [
            (u, v, boundary_weight if {u, v} == {0, boundary_neighbor} else 1.0)
            for u, v, _ in tree.edges
        ]
        tree = Tree(tree.n, weighted)
    return RootedBoundaryTree(tree, 0, boundary_neighbor)


def _spine_path(t: Tree) -> list[int]:
    """Non-pendant vertices of a caterpillar ordered along their induced
    path (empty when there are fewer than two)."""
    spine = [v for v in range(t.n) if t.degree(v) >= 2]
    if len(spine) <= 1:
        return spine
    keep = set(spine)
    induced_deg = {
        v: sum(1 for u, _ in t.neighbors(v) if u in keep) for v in spine
    }
    ends = sorted(v for v in spine if induced_deg[v] <= 1)
    order = [ends[0]]
    prev = -1
    while len(order) < len(spine):
        nxt = next(
            u for u, _ in t.neighbors(order[-1]) if u in keep and u != prev
        )
        prev = order[-1]
        order.append(nxt)
    return order


def is_minimal_shape_rooted(rbt: RootedBoundaryTree) -> bool:
    """Shape of the Dirichlet-eigenvalue minimizers among all rooted trees
    with a given degree multiset.

    True iff the tree is a caterpillar, the root is a pendant vertex whose
    neighbor ends the induced non-pendant path, and the degrees along that
    path are non-decreasing moving away from the root.  Exhaustive search
    over every degree sequence with n <= 8 confirms this shape is exactly
    the set of minimizers.
    """
    t = rbt.tree
    if t.n == 2:
        return True
    if not is_caterpillar(t):
        return False
    if not t.is_pendant(rbt.root):
        return False
    neighbor = t.neighbors(rbt.root)[0][0]
    spine = _spine_path(t)
    if not spine:
        return True
    if neighbor not in (spine[0], spine[-1]):
        return False
    if neighbor == spine[-1]:
        spine = spine[::-1]
    degs = [t.degree(v) for v in spine]
    return all(a <= b for a, b in zip(degs, degs[1:]))


def is_theorem1_shape(t: Tree, analysis: FiedlerAnalysis) -> bool:
    """Shape of algebraic-connectivity minimizers for a degree sequence.

    True iff t is a caterpillar and, on each weak nodal domain, the degrees
    of the non-pendant vertices are non-decreasing moving away from the
    characteristic set.  A characteristic vertex is counted as the first
    element of both sides; the endpoints of a characteristic edge start
    their own sides.  Equalities are allowed throughout.
    """
    if not is_caterpillar(t):
        return False
    f = analysis.fiedler
    tau = analysis.tau_zero
    cs = analysis.charset
    dist = [distances_from(t, v) for v in cs.ids]
    anchor_dist = [min(d[v] for d in dist) for v in range(t.n)]

    def side_ok(members: list[int]) -> bool:
        members = sorted(members, key=lambda v: (anchor_dist[v], v))
        for a, b in zip(members, members[1:]):
            if not t.has_edge(a, b):
                return False  # non-pendant side vertices must chain up
        degs = [t.degree(v) for v in members]
        return all(x <= y for x, y in zip(degs, degs[1:]))

    non_pendant = [v for v in range(t.n) if t.degree(v) >= 2]
    pos_side = [v for v in non_pendant if f[v] >= -tau]
    neg_side = [v for v in non_pendant if f[v] <= tau]
    return side_ok(pos_side) and side_ok(neg_side)
