"""Exhaustive enumeration of unlabeled trees with a prescribed degree
sequence.

The labeled substrate is the Prufer correspondence: fixing the degree
assignment "vertex i has degree d_i" (degrees sorted non-increasing),
the labeled trees realizing it are exactly the decodings of the
multiset permutations of the word in which vertex i appears d_i - 1
times.  Decoding every permutation and deduplicating by a canonical
code yields each unlabeled tree exactly once.

The rank space of the multiset permutations is addressable: ranks can
be split into disjoint ranges and processed independently, with the
caller merging the per-range code sets.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterator, Sequence
from math import factorial

from .trees import RootedBoundaryTree, Tree, validate_tree_sequence


def prufer_decode(word: Sequence[int], n: int) -> Tree:
    """Labeled tree on n vertices from a Prufer word of length n - 2."""
    if len(word) != n - 2:
        raise ValueError(f"word length {len(word)} != n - 2 = {n - 2}")
    degree = [1] * n
    for s in word:
        degree[s] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in word:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Tree(n, edges)


def prufer_count(seq: Sequence[int]) -> int:
    """Number of labeled Prufer words for the fixed degree assignment,
    (n-2)! / prod (d_i - 1)!."""
    if not validate_tree_sequence(seq):
        raise ValueError(f"invalid tree sequence {tuple(seq)}")
    n = len(seq)
    total = factorial(n - 2)
    for d in seq:
        total //= factorial(d - 1)
    return total


def _word_counts(seq_desc: Sequence[int]) -> dict[int, int]:
    """Symbol multiplicities of the Prufer word for the sorted assignment."""
    return {i: d - 1 for i, d in enumerate(seq_desc) if d >= 2}


def unrank_prufer(seq: Sequence[int], rank: int) -> tuple[int, ...]:
    """The rank-th multiset permutation, in lexicographic order, of the
    Prufer word where vertex i (degrees sorted non-increasing) appears
    d_i - 1 times."""
    seq_desc = tuple(sorted(seq, reverse=True))
    counts = _word_counts(seq_desc)
    length = sum(counts.values())
    total = prufer_count(seq_desc)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    word = []
    symbols = sorted(counts)
    for _ in range(length):
        for s in symbols:
            c = counts[s]
            if c == 0:
                continue
            # permutations that start with s; exact integer division
            t = total * c // length
            if rank < t:
                word.append(s)
                counts[s] = c - 1
                total = t
                length -= 1
                break
            rank -= t
    return tuple(word)


# ---------------------------------------------------------------------------
# canonical codes (rooted subtree sorting)


def rooted_code(t: Tree, root: int) -> str:
    """Canonical code of t rooted at root: children codes sorted and
    concatenated inside parentheses.  Equal for two rooted trees iff they
    are isomorphic as rooted trees.  Weights are ignored; unit weights
    are required so codes never silently conflate weighted trees."""
    if not t.has_unit_weights():
        raise ValueError("canonical codes are defined for unit-weight trees")

    def code(v: int, parent: int) -> str:
        subs = sorted(code(u, v) for u, _ in t.neighbors(v) if u != parent)
        return "(" + "".join(subs) + ")"

    return code(root, -1)


def _centers(t: Tree) -> list[int]:
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = list(t.degrees())
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u, _ in t.neighbors(v):
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def canonical_code(t: Tree) -> str:
    """Label-invariant code: equal for two trees iff they are isomorphic.

    The tree is rooted at its center; for bicentral trees the code is the
    lexicographic minimum over the two center roots.
    """
    return min(rooted_code(t, c) for c in _centers(t))


def tree_from_code(code: str) -> Tree:
    """Rebuild the tree encoded by a (rooted or canonical) code.

    Vertex ids are assigned in preorder, children in code order, so the
    labeling depends only on the code.  The code's root becomes vertex 0.
    """
    edges = []
    next_id = 0

    def parse(i: int, parent: int) -> int:
        nonlocal next_id
        if code[i] != "(":
            raise ValueError(f"malformed code at position {i}")
        my = next_id
        next_id += 1
        if parent >= 0:
            edges.append((parent, my))
        i += 1
        while i < len(code) and code[i] == "(":
            i = parse(i, my)
        if i >= len(code) or code[i] != ")":
            raise ValueError(f"malformed code at position {i}")
        return i + 1

    end = parse(0, -1)
    if end != len(code):
        raise ValueError("trailing characters after code")
    return Tree(next_id, edges)


def _root_child_codes(code: str) -> list[str]:
    """Top-level child code strings of a rooted code, in code order."""
    inner = code[1:-1]
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(inner):
        depth += 1 if ch == "(" else -1
        if depth == 0:
            out.append(inner[start : i + 1])
            start = i + 1
    return out


# ---------------------------------------------------------------------------
# unlabeled enumeration


def canonical_tree_codes(seq: Sequence[int], lo: int = 0, hi: int | None = None) -> set[str]:
    """Canonical codes of the trees decoded from Prufer ranks [lo, hi).

    The union over a partition of [0, prufer_count(seq)) is the full set of
    unlabeled trees with degree multiset seq.
    """
    seq_desc = tuple(sorted(seq, reverse=True))
    total = prufer_count(seq_desc)
    if hi is None:
        hi = total
    if not 0 <= lo <= hi <= total:
        raise ValueError(f"bad rank range [{lo}, {hi}) for total {total}")
    n = len(seq_desc)
    codes = set()
    for rank in range(lo, hi):
        word = unrank_prufer(seq_desc, rank)
        codes.add(canonical_code(prufer_decode(word, n)))
    return codes


def enumerate_trees(seq: Sequence[int]) -> Iterator[Tree]:
    """Every unlabeled tree with degree multiset seq, exactly once, in
    lexicographic canonical-code order.  Each yielded tree carries the
    deterministic labeling decoded from its own canonical code."""
    if not validate_tree_sequence(seq):
        raise ValueError(f"invalid tree sequence {tuple(seq)}")
    for code in sorted(canonical_tree_codes(seq)):
        yield tree_from_code(code)


def rooted_canonical_key(rbt: RootedBoundaryTree) -> tuple[str, str] | str:
    """Dedupe key for a rooted boundary tree.

    The key is the rooted code of the underlying unit-weight tree; when the
    boundary weight differs from 1 the code of the child subtree carrying
    the weighted edge is appended, so inequivalent placements of the
    weighted edge count as distinct rooted trees.
    """
    t = rbt.tree
    unit = Tree(t.n, [(u, v) for u, v, _ in t.edges])
    rcode = rooted_code(unit, rbt.root)
    if rbt.boundary_weight == 1.0:
        return rcode

    def subtree_code(v: int, parent: int) -> str:
        subs = sorted(
            subtree_code(u, v) for u, _ in unit.neighbors(v) if u != parent
        )
        return "(" + "".join(subs) + ")"

    return rcode, subtree_code(rbt.boundary_neighbor, rbt.root)


def _rooted_tree_from_key(key, boundary_weight: float) -> RootedBoundaryTree:
    if isinstance(key, tuple):
        rcode, marked = key
    else:
        rcode, marked = key, None
    t = tree_from_code(rcode)
    child_codes = _root_child_codes(rcode)
    # preorder: child k's id is 1 + total size of children 0..k-1,
    # where a code of length 2s encodes s vertices
    child_ids = []
    next_id = 1
    for c in child_codes:
        child_ids.append(next_id)
        next_id += len(c) // 2
    if marked is None:
        return RootedBoundaryTree(t, 0, child_ids[0])
    target = child_ids[child_codes.index(marked)]
    edges = [
        (u, v, boundary_weight if {u, v} == {0, target} else w)
        for u, v, w in t.edges
    ]
    return RootedBoundaryTree(Tree(t.n, edges), 0, target)


def enumerate_rooted_trees(
    seq: Sequence[int], boundary_weight: float = 1.0
) -> Iterator[RootedBoundaryTree]:
    """Every (unlabeled tree, root choice) pair with degree multiset seq,
    deduplicated by rooted canonical code.

    With boundary_weight == 1 the designated boundary edge is the root's
    first child in code order (the choice has no numeric effect).  With
    boundary_weight > 1, each inequivalent root-incident edge placement is
    yielded as a distinct rooted tree.
    """
    if not validate_tree_sequence(seq):
        raise ValueError(f"invalid tree sequence {tuple(seq)}")
    if boundary_weight < 1.0:
        raise ValueError(f"boundary weight {boundary_weight} must be >= 1")
    keys = set()
    for code in sorted(canonical_tree_codes(seq)):
        t = tree_from_code(code)
        for root in range(t.n):
            rcode = rooted_code(t, root)
            if boundary_weight == 1.0:
                keys.add(rcode)
            else:
                for child in _root_child_codes(rcode):
                    keys.add((rcode, child))
    for key in sorted(keys, key=lambda k: (k,) if isinstance(k, str) else k):
        yield _rooted_tree_from_key(key, boundary_weight)
