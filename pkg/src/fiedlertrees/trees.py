"""Weighted undirected trees, degree sequences, caterpillars, and rooted
boundary trees.

Vertices are 0-based contiguous integers.  Every structure is immutable
after construction, so instances can be shared freely across worker
processes.  Edge weights are strictly positive reals and default to 1.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence


class NotATreeError(ValueError):
    """The input does not describe a connected simple tree."""


class EdgeListParseError(ValueError):
    """An edge-list file or string could not be parsed."""


class Tree:
    """Weighted undirected tree on vertices ``0 .. n-1``.

    The constructor validates tree-ness: exactly ``n - 1`` edges, no self
    loops, no parallel edges, all weights strictly positive, connected.
    Adjacency is stored symmetrically and sorted by neighbor id so all
    traversals are deterministic.
    """

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple]) -> None:
        if n < 1:
            raise NotATreeError(f"need at least one vertex, got n={n}")
        seen = set()
        norm = []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            else:
                u, v, w = e
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise NotATreeError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise NotATreeError(f"self loop at vertex {u}")
            if w <= 0.0:
                raise NotATreeError(f"edge ({u},{v}) has non-positive weight {w}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise NotATreeError(f"parallel edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v, w))
        if len(norm) != n - 1:
            raise NotATreeError(
                f"{len(norm)} edges for {n} vertices, a tree needs {n - 1}"
            )
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in norm:
            adj[u].append((v, w))
            adj[v].append((u, w))
        # connectivity (n-1 edges + connected <=> tree)
        if n > 1:
            visited = [False] * n
            visited[0] = True
            queue = deque([0])
            count = 1
            while queue:
                x = queue.popleft()
                for y, _ in adj[x]:
                    if not visited[y]:
                        visited[y] = True
                        count += 1
                        queue.append(y)
            if count != n:
                raise NotATreeError("edge set is not connected")
        self.n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._edges = tuple(sorted(norm))

    @property
    def edges(self) -> tuple[tuple[int, int, float], ...]:
        """Edges as (u, v, weight) with u < v, sorted."""
        return self._edges

    def neighbors(self, v: int) -> tuple[tuple[int, float], ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        """Per-vertex degrees indexed by vertex id."""
        return tuple(len(a) for a in self._adj)

    def is_pendant(self, v: int) -> bool:
        return len(self._adj[v]) == 1

    def weight(self, u: int, v: int) -> float:
        for x, w in self._adj[u]:
            if x == v:
                return w
        raise KeyError(f"no edge ({u},{v})")

    def has_edge(self, u: int, v: int) -> bool:
        return any(x == v for x, _ in self._adj[u])

    def has_unit_weights(self) -> bool:
        return all(w == 1.0 for _, _, w in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={list(self._edges)!r})"


class RootedBoundaryTree:
    """Tree with a single boundary vertex, the root.

    Exactly one root-incident edge (the designated boundary edge) may carry
    a weight >= 1; every other edge must have weight 1.  The interior is
    every vertex except the root and must be nonempty.
    """

    __slots__ = ("tree", "root", "boundary_neighbor")

    def __init__(self, tree: Tree, root: int, boundary_neighbor: int | None = None):
        if not 0 <= root < tree.n:
            raise ValueError(f"root {root} out of range")
        if tree.n < 2:
            raise ValueError("interior must be nonempty")
        nbrs = [u for u, _ in tree.neighbors(root)]
        if boundary_neighbor is None:
            boundary_neighbor = nbrs[0]
        if boundary_neighbor not in nbrs:
            raise ValueError(
                f"boundary neighbor {boundary_neighbor} is not adjacent to root {root}"
            )
        bw = tree.weight(root, boundary_neighbor)
        if bw < 1.0:
            raise ValueError(f"boundary edge weight {bw} must be >= 1")
        for u, v, w in tree.edges:
            if {u, v} == {root, boundary_neighbor}:
                continue
            if w != 1.0:
                raise ValueError(
                    f"edge ({u},{v}) has weight {w}; only the designated "
                    "boundary edge may differ from 1"
                )
        self.tree = tree
        self.root = root
        self.boundary_neighbor = boundary_neighbor

    @property
    def boundary_weight(self) -> float:
        return self.tree.weight(self.root, self.boundary_neighbor)

    def interior(self) -> tuple[int, ...]:
        """Interior vertex ids in increasing order."""
        return tuple(v for v in range(self.tree.n) if v != self.root)

    def interior_index(self) -> dict[int, int]:
        """Map interior vertex id -> position in interior() order."""
        return {v: i for i, v in enumerate(self.interior())}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedBoundaryTree):
            return NotImplemented
        return (
            self.tree == other.tree
            and self.root == other.root
            and self.boundary_neighbor == other.boundary_neighbor
        )

    def __hash__(self) -> int:
        return hash((self.tree, self.root, self.boundary_neighbor))

    def __repr__(self) -> str:
        return (
            f"RootedBoundaryTree(root={self.root}, "
            f"boundary_neighbor={self.boundary_neighbor}, tree={self.tree!r})"
        )


# ---------------------------------------------------------------------------
# degree sequences


def validate_tree_sequence(seq: Sequence[int]) -> bool:
    """True iff seq is realizable by a tree: n >= 2, all degrees >= 1,
    and the degree sum equals 2(n - 1)."""
    n = len(seq)
    if n < 2:
        return False
    if any(int(d) != d or d < 1 for d in seq):
        return False
    return sum(seq) == 2 * (n - 1)


def degree_sequence(t: Tree) -> tuple[int, ...]:
    """Degree multiset of t, sorted non-increasing."""
    return tuple(sorted(t.degrees(), reverse=True))


# ---------------------------------------------------------------------------
# common shapes


def path_tree(n: int) -> Tree:
    """Path 0 - 1 - ... - (n-1) with unit weights."""
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    """Star with center 0 and leaves 1 .. n-1."""
    return Tree(n, [(0, i) for i in range(1, n)])


def is_caterpillar(t: Tree) -> bool:
    """True iff deleting all pendant vertices leaves a path (possibly
    empty or a single vertex)."""
    spine = [v for v in range(t.n) if t.degree(v) >= 2]
    if len(spine) <= 1:
        return True
    keep = set(spine)
    # the non-pendant vertices of a tree always induce a subtree, so a
    # path is equivalent to induced degree <= 2 everywhere
    for v in spine:
        if sum(1 for u, _ in t.neighbors(v) if u in keep) > 2:
            return False
    return True


def build_caterpillar(spine_degrees: Sequence[int]) -> Tree:
    """Build the caterpillar whose spine vertex i has degree spine_degrees[i].

    Spine vertices get ids 0 .. m-1 in order; pendant ids follow, grouped by
    spine position, so the labeling is deterministic.  An empty spine gives
    the single edge on two vertices.
    """
    spine = [int(d) for d in spine_degrees]
    if any(d < 2 for d in spine):
        raise ValueError(f"unrealizable spine {spine}: every spine degree must be >= 2")
    m = len(spine)
    if m == 0:
        return Tree(2, [(0, 1)])
    edges = [(i, i + 1) for i in range(m - 1)]
    if m == 1:
        pendant_counts = [spine[0]]
    else:
        pendant_counts = [spine[0] - 1] + [d - 2 for d in spine[1:-1]] + [spine[-1] - 1]
    next_id = m
    for i, cnt in enumerate(pendant_counts):
        for _ in range(cnt):
            edges.append((i, next_id))
            next_id += 1
    return Tree(next_id, edges)


# ---------------------------------------------------------------------------
# structure around a root


def branches_at(t: Tree, root: int, u: int) -> tuple[frozenset[int], ...]:
    """Maximal subtrees of t minus u that do not contain the root.

    For u == root this is every component of t minus root.  Branches are
    returned sorted by their smallest vertex id.
    """
    for x in (root, u):
        if not 0 <= x < t.n:
            raise ValueError(f"vertex {x} out of range")
    visited = {u}
    comps = []
    for s in range(t.n):
        if s in visited:
            continue
        comp = {s}
        visited.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in t.neighbors(x):
                if y not in visited:
                    visited.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    if u != root:
        comps = [c for c in comps if root not in c]
    return tuple(sorted(comps, key=min))


def distances_from(t: Tree, src: int) -> list[int]:
    """Edge-count distance from src to every vertex."""
    dist = [-1] * t.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y, _ in t.neighbors(x):
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def root_to_leaf_paths(t: Tree, root: int) -> list[tuple[int, ...]]:
    """All simple paths from root to a pendant vertex, in deterministic order."""
    paths = []
    stack = [(root, -1, (root,))]
    while stack:
        v, parent, path = stack.pop()
        extended = False
        for u, _ in t.neighbors(v):
            if u != parent:
                stack.append((u, v, path + (u,)))
                extended = True
        if not extended and v != root:
            paths.append(path)
    return sorted(paths)


def trunk(rbt: RootedBoundaryTree) -> tuple[int, ...]:
    """Longest simple path starting at the root, ending at a pendant vertex.

    Ties are broken by the lexicographically smallest vertex-id sequence.
    Requires a caterpillar in which at most one root neighbor is non-pendant.
    """
    t, r = rbt.tree, rbt.root
    if not is_caterpillar(t):
        raise ValueError("trunk requires a caterpillar")
    non_pendant_nbrs = [u for u, _ in t.neighbors(r) if t.degree(u) >= 2]
    if len(non_pendant_nbrs) > 1:
        raise ValueError("trunk requires at most one non-pendant root neighbor")
    best: tuple[int, ...] | None = None
    for path in root_to_leaf_paths(t, r):
        if best is None or len(path) > len(best) or (len(path) == len(best) and path < best):
            best = path
    assert best is not None
    return best


def height(rbt: RootedBoundaryTree, v: int) -> int:
    """Number of edges on the unique root-to-v path."""
    if not 0 <= v < rbt.tree.n:
        raise ValueError(f"vertex {v} out of range")
    return distances_from(rbt.tree, rbt.root)[v]


def with_boundary_weight(t: Tree, root: int, boundary_weight: float) -> RootedBoundaryTree:
    """Root a unit-weight tree and put boundary_weight on one root edge.

    The weighted edge goes to the root neighbor with the deepest subtree
    (ties to the smallest neighbor id), which is the edge a trunk would use.
    """
    if boundary_weight < 1.0:
        raise ValueError(f"boundary weight {boundary_weight} must be >= 1")
    if not 0 <= root < t.n:
        raise ValueError(f"root {root} out of range")
    if not t.has_unit_weights():
        raise ValueError("expected a unit-weight tree")
    dist = distances_from(t, root)
    best_u = None
    best_depth = -1
    for u, _ in t.neighbors(root):
        branch = next(b for b in branches_at(t, root, root) if u in b)
        depth = max(dist[x] for x in branch)
        if depth > best_depth:
            best_u, best_depth = u, depth
    if boundary_weight == 1.0:
        return RootedBoundaryTree(t, root, best_u)
    edges = [
        (u, v, boundary_weight if {u, v} == {root, best_u} else w)
        for u, v, w in t.edges
    ]
    return RootedBoundaryTree(Tree(t.n, edges), root, best_u)


# ---------------------------------------------------------------------------
# edge-list format: one edge per line, "u v [w]", '#' starts a comment line


def parse_edge_list(text: str) -> Tree:
    edges = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise EdgeListParseError(f"line {lineno}: expected 'u v [w]', got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
            w = float(tokens[2]) if len(tokens) == 3 else 1.0
        except ValueError as exc:
            raise EdgeListParseError(f"line {lineno}: {exc}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(f"line {lineno}: vertex ids must be >= 0")
        edges.append((u, v, w))
        max_id = max(max_id, u, v)
    if not edges:
        raise EdgeListParseError("no edges found")
    return Tree(max_id + 1, edges)


def read_edge_list(path) -> Tree:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(t: Tree) -> str:
    lines = []
    for u, v, w in t.edges:
        if w == 1.0:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {w:.12g}")
    return "\n".join(lines) + "\n"
