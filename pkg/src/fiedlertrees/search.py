"""Brute-force extremal search over enumerated trees, verification
suites for the structural properties, and the degree-partition explorer.

Searches are exact: every candidate in the class is enumerated and
solved.  Minimizer values are computed from each tree's canonical
labeling, so reports are identical whether the Prufer rank space is
scanned serially or split across a worker pool and merged.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .enumeration import (
    canonical_code,
    canonical_tree_codes,
    enumerate_rooted_trees,
    prufer_count,
    prufer_decode,
    rooted_canonical_key,
    tree_from_code,
)
from .nodal import analyze, check_monotone_paths, geometric_split, verify_split
from .perturb import (
    PerturbationRecord,
    glue,
    is_minimal_shape_rooted,
    is_theorem1_shape,
    perturb_p1,
    perturb_p2,
)
from .spectral import algebraic_connectivity, dirichlet_nu
from .trees import (
    RootedBoundaryTree,
    Tree,
    build_caterpillar,
    distances_from,
    is_caterpillar,
    path_tree,
    trunk,
    validate_tree_sequence,
    with_boundary_weight,
)

#: two values are co-minimal when they agree to this relative tolerance
TIE_RTOL = 1e-9

#: a perturbation must decrease nu by more than this relative margin
STRICT_MARGIN = 1e-10

DEFAULT_CAP = 10_000_000

SUITES = ("theorem1", "lemma2", "lemma5", "perturb", "glue", "split", "all")


class EnumerationCapExceeded(RuntimeError):
    """The labeled enumeration would exceed the configured cap."""


@dataclass
class SearchReport:
    """Result of one exhaustive search.

    minimizers holds one dict per argmin instance carrying its canonical
    code, edge list, and the structural predicate evaluations relevant to
    the search kind.  Every minimizer value is within TIE_RTOL relative of
    min_value.
    """

    sequence: tuple[int, ...]
    min_value: float
    minimizers: list[dict]
    instance_count: int
    elapsed: float
    all_caterpillars: bool | None = None
    all_theorem1_shape: bool | None = None
    all_minimal_shape: bool | None = None
    boundary_weight: float | None = None

    def to_json(self) -> dict:
        out = {
            "sequence": list(self.sequence),
            "min_value": float(self.min_value),
            "instance_count": self.instance_count,
            "minimizers": self.minimizers,
        }
        for key in ("all_caterpillars", "all_theorem1_shape", "all_minimal_shape"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.boundary_weight is not None:
            out["boundary_weight"] = float(self.boundary_weight)
        out["elapsed"] = float(self.elapsed)
        return out


@dataclass(frozen=True)
class PartitionRow:
    """One caterpillar arrangement and how its spine degrees fall on the
    two sides of the characteristic set.  The characteristic vertex's own
    degree (vertex case) belongs to neither side."""

    sequence: tuple[int, ...]
    arrangement: tuple[int, ...]
    alpha: float
    charset_kind: str
    charset_pos: str
    left_degrees: tuple[int, ...]
    right_degrees: tuple[int, ...]


def _require_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(int(d) for d in seq)
    if not validate_tree_sequence(seq):
        raise ValueError(f"invalid tree sequence {seq}")
    return tuple(sorted(seq, reverse=True))


def _tied(value: float, minimum: float) -> bool:
    return value <= minimum + TIE_RTOL * abs(minimum)


def _alpha_chunk(args: tuple[tuple[int, ...], int, int]) -> dict[str, float]:
    seq, lo, hi = args
    return {
        code: algebraic_connectivity(tree_from_code(code))[0]
        for code in canonical_tree_codes(seq, lo, hi)
    }


def min_alpha_tree(
    seq: Sequence[int], *, jobs: int = 1, cap: int = DEFAULT_CAP
) -> SearchReport:
    """Exact argmin set of the algebraic connectivity over all unlabeled
    trees with the given degree multiset.

    Raises EnumerationCapExceeded when the labeled Prufer space is larger
    than cap; the caterpillar-restricted search handles those sequences.
    """
    start = time.perf_counter()
    seq = _require_sequence(seq)
    total = prufer_count(seq)
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} labeled decodings exceed the cap {cap}; "
            "use the caterpillar-restricted search (min_alpha_caterpillar)"
        )
    if jobs > 1 and total > 1:
        step = math.ceil(total / jobs)
        chunks = [
            (seq, lo, min(lo + step, total)) for lo in range(0, total, step)
        ]
        values: dict[str, float] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_alpha_chunk, chunks):
                values.update(part)
    else:
        values = _alpha_chunk((seq, 0, total))
    minimum = min(values.values())
    minimizers = []
    for code in sorted(c for c, v in values.items() if _tied(v, minimum)):
        tree = tree_from_code(code)
        cat = is_caterpillar(tree)
        shape = is_theorem1_shape(tree, analyze(tree))
        minimizers.append(
            {
                "code": code,
                "alpha": values[code],
                "edges": [[u, v] for u, v, _ in tree.edges],
                "is_caterpillar": cat,
                "is_theorem1_shape": shape,
            }
        )
    return SearchReport(
        sequence=seq,
        min_value=minimum,
        minimizers=minimizers,
        instance_count=len(values),
        elapsed=time.perf_counter() - start,
        all_caterpillars=all(m["is_caterpillar"] for m in minimizers),
        all_theorem1_shape=all(m["is_theorem1_shape"] for m in minimizers),
    )


def _multiset_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    counts: dict[int, int] = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    symbols = sorted(counts)
    length = len(items)
    current: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(current) == length:
            yield tuple(current)
            return
        for s in symbols:
            if counts[s] > 0:
                counts[s] -= 1
                current.append(s)
                yield from rec()
                current.pop()
                counts[s] += 1

    yield from rec()


def spine_arrangements(interior: Sequence[int]) -> list[tuple[int, ...]]:
    """Multiset permutations of the interior degrees, deduplicated under
    reversal (a caterpillar and its mirror are the same tree)."""
    seen = []
    for arr in _multiset_permutations(sorted(interior)):
        if arr <= arr[::-1]:
            seen.append(arr)
    return seen


def min_alpha_caterpillar(seq: Sequence[int]) -> SearchReport:
    """Argmin of the algebraic connectivity over all caterpillars with the
    given degree multiset, enumerated as spine arrangements."""
    start = time.perf_counter()
    seq = _require_sequence(seq)
    interior = [d for d in seq if d >= 2]
    arrangements = spine_arrangements(interior)
    values: list[tuple[tuple[int, ...], Tree, float]] = []
    for arr in arrangements:
        tree = build_caterpillar(arr)
        values.append((arr, tree, algebraic_connectivity(tree)[0]))
    minimum = min(v for _, _, v in values)
    minimizers = []
    for arr, tree, value in values:
        if not _tied(value, minimum):
            continue
        minimizers.append(
            {
                "code": canonical_code(tree),
                "alpha": value,
                "arrangement": list(arr),
                "edges": [[u, v] for u, v, _ in tree.edges],
                "is_caterpillar": True,
                "is_theorem1_shape": is_theorem1_shape(tree, analyze(tree)),
            }
        )
    minimizers.sort(key=lambda m: m["code"])
    return SearchReport(
        sequence=seq,
        min_value=minimum,
        minimizers=minimizers,
        instance_count=len(arrangements),
        elapsed=time.perf_counter() - start,
        all_caterpillars=True,
        all_theorem1_shape=all(m["is_theorem1_shape"] for m in minimizers),
    )


def min_nu_rooted(
    seq: Sequence[int],
    boundary_weight: float = 1.0,
    *,
    cap: int = DEFAULT_CAP,
) -> SearchReport:
    """Argmin set of the first Dirichlet eigenvalue over every rooted tree
    with the given degree multiset."""
    start = time.perf_counter()
    seq = _require_sequence(seq)
    total = prufer_count(seq)
    if total > cap:
        raise EnumerationCapExceeded(
            f"{total} labeled decodings exceed the cap {cap}"
        )
    instances = []
    for rbt in enumerate_rooted_trees(seq, boundary_weight):
        nu, _ = dirichlet_nu(rbt)
        instances.append((rbt, nu))
    minimum = min(v for _, v in instances)
    minimizers = []
    for rbt, value in instances:
        if not _tied(value, minimum):
            continue
        key = rooted_canonical_key(rbt)
        minimizers.append(
            {
                "code": key if isinstance(key, str) else list(key),
                "nu": value,
                "root": rbt.root,
                "edges": [[u, v, w] for u, v, w in rbt.tree.edges],
                "is_minimal_shape": is_minimal_shape_rooted(rbt),
            }
        )
    minimizers.sort(key=lambda m: str(m["code"]))
    return SearchReport(
        sequence=seq,
        min_value=minimum,
        minimizers=minimizers,
        instance_count=len(instances),
        elapsed=time.perf_counter() - start,
        all_minimal_shape=all(m["is_minimal_shape"] for m in minimizers),
        boundary_weight=boundary_weight,
    )


# ---------------------------------------------------------------------------
# degree-partition explorer


def explore_partitions(seq: Sequence[int]) -> list[PartitionRow]:
    """One row per caterpillar spine arrangement: its algebraic
    connectivity, characteristic set, and the non-pendant degrees on the two
    sides, ordered outward.  Rows are sorted by alpha ascending.

    The explorer presents the partitions as data only; no pattern is
    assumed or checked.
    """
    seq = _require_sequence(seq)
    interior = [d for d in seq if d >= 2]
    rows = []
    for arr in spine_arrangements(interior):
        tree = build_caterpillar(arr)
        analysis = analyze(tree)
        split = geometric_split(tree, analysis)

        def side_degrees(side_rbt, origin):
            pairs = []
            dist = distances_from(side_rbt.tree, side_rbt.root)
            for side_id in range(1, side_rbt.tree.n):
                orig = origin[side_id]
                if tree.degree(orig) >= 2:
                    pairs.append((dist[side_id], orig))
            return tuple(tree.degree(orig) for _, orig in sorted(pairs))

        cs = analysis.charset
        pos_str = "|".join(str(i) for i in sorted(cs.ids))
        rows.append(
            PartitionRow(
                sequence=seq,
                arrangement=arr,
                alpha=analysis.alpha,
                charset_kind=cs.kind,
                charset_pos=pos_str,
                left_degrees=side_degrees(split.pos, split.origin_pos),
                right_degrees=side_degrees(split.neg, split.origin_neg),
            )
        )
    rows.sort(key=lambda r: (r.alpha, r.arrangement))
    return rows


CSV_HEADER = "sequence,arrangement,alpha,charset_kind,charset_pos,left_degrees,right_degrees"


def partition_rows_to_csv(rows: Sequence[PartitionRow]) -> str:
    """CSV with degree lists encoded as '|'-separated integers."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    "|".join(str(d) for d in r.sequence),
                    "|".join(str(d) for d in r.arrangement),
                    f"{r.alpha:.12g}",
                    r.charset_kind,
                    r.charset_pos,
                    "|".join(str(d) for d in r.left_degrees),
                    "|".join(str(d) for d in r.right_degrees),
                ]
            )
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# sequence generation and random models


def _partitions(k: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    top = min(k, max_part) if max_part is not None else k
    for first in range(top, 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def all_tree_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Every degree multiset realizable by a tree on n vertices, sorted
    non-increasing, in deterministic order."""
    if n < 2:
        return
    for parts in _partitions(n - 2):
        degrees = [p + 1 for p in parts] + [1] * (n - len(parts))
        yield tuple(sorted(degrees, reverse=True))


def random_tree(rng: random.Random, n: int) -> Tree:
    """Uniform random labeled tree via a random Prufer word."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        return path_tree(2)
    word = [rng.randrange(n) for _ in range(n - 2)]
    return prufer_decode(word, n)


def random_rooted_tree(
    rng: random.Random, n: int, boundary_weight: float = 1.0
) -> RootedBoundaryTree:
    t = random_tree(rng, n)
    return with_boundary_weight(t, rng.randrange(n), boundary_weight)


def random_rooted_caterpillar(rng: random.Random) -> RootedBoundaryTree:
    """Random caterpillar rooted at a pendant vertex or a spine end, the
    shapes on which a trunk is defined."""
    m = rng.randint(1, 4)
    spine = [rng.randint(2, 4) for _ in range(m)]
    t = build_caterpillar(spine)
    candidates = [v for v in range(t.n) if t.is_pendant(v)]
    ends = _ends_of_spine(t)
    candidates.extend(ends)
    root = rng.choice(sorted(set(candidates)))
    return with_boundary_weight(t, root, 1.0)


def _ends_of_spine(t: Tree) -> list[int]:
    spine = [v for v in range(t.n) if t.degree(v) >= 2]
    if len(spine) <= 1:
        return spine
    keep = set(spine)
    return [
        v
        for v in spine
        if sum(1 for u, _ in t.neighbors(v) if u in keep) <= 1
    ]


def _legal_p1_moves(rbt: RootedBoundaryTree) -> list[tuple[int, int, int]]:
    t = rbt.tree
    line = trunk(rbt)
    pos = {v: i for i, v in enumerate(line)}
    moves = []
    for w in range(t.n):
        if w == rbt.root or not t.is_pendant(w):
            continue
        vi = t.neighbors(w)[0][0]
        if vi not in pos:
            continue
        if {w, vi} == {rbt.root, rbt.boundary_neighbor} and rbt.boundary_weight != 1.0:
            continue
        for vj in line:
            if pos[vj] > pos[vi] and vj != w:
                moves.append((w, vi, vj))
    return sorted(moves)


# ---------------------------------------------------------------------------
# verification suites


def _suite_rng(rng_seed: int, name: str) -> random.Random:
    return random.Random(f"{rng_seed}:{name}")


def _fail_list(failures: list, limit: int = 20) -> list:
    return failures[:limit]


def _suite_theorem1(nmax: int, **_: object) -> dict:
    failures = []
    checked = 0
    for n in range(2, nmax + 1):
        for seq in all_tree_sequences(n):
            report = min_alpha_tree(seq)
            checked += len(report.minimizers)
            for m in report.minimizers:
                if not (m["is_caterpillar"] and m["is_theorem1_shape"]):
                    failures.append({"sequence": list(seq), "minimizer": m})
    return {
        "name": "alpha minimizers are monotone caterpillars",
        "checked": checked,
        "failures": _fail_list(failures),
        "passed": not failures,
    }


def _suite_lemma2(nmax: int, **_: object) -> dict:
    failures = []
    checked = 0
    for n in range(2, nmax + 1):
        for seq in all_tree_sequences(n):
            for rbt in enumerate_rooted_trees(seq, 1.0):
                _, vec = dirichlet_nu(rbt)
                checked += 1
                if not check_monotone_paths(rbt, vec):
                    failures.append(
                        {
                            "sequence": list(seq),
                            "root": rbt.root,
                            "edges": [[u, v] for u, v, _ in rbt.tree.edges],
                        }
                    )
    return {
        "name": "first Dirichlet eigenvectors grow along root paths",
        "checked": checked,
        "failures": _fail_list(failures),
        "passed": not failures,
    }


def _suite_lemma5(
    nmax: int, w0_values: Sequence[float] = (1.0, 1.5, 3.0), **_: object
) -> dict:
    failures = []
    checked = 0
    for n in range(2, nmax + 1):
        for seq in all_tree_sequences(n):
            for w0 in w0_values:
                instances = []
                for rbt in enumerate_rooted_trees(seq, w0):
                    nu, _ = dirichlet_nu(rbt)
                    instances.append((rbt, nu))
                minimum = min(v for _, v in instances)
                argmin = set()
                predicted = set()
                for rbt, nu in instances:
                    key = str(rooted_canonical_key(rbt))
                    if _tied(nu, minimum):
                        argmin.add(key)
                    if is_minimal_shape_rooted(rbt):
                        predicted.add(key)
                checked += 1
                if argmin != predicted:
                    failures.append(
                        {
                            "sequence": list(seq),
                            "w0": w0,
                            "argmin_only": sorted(argmin - predicted),
                            "predicted_only": sorted(predicted - argmin),
                        }
                    )
    return {
        "name": "nu argmin equals the monotone pendant-rooted caterpillar shape",
        "checked": checked,
        "failures": _fail_list(failures),
        "passed": not failures,
    }


def _suite_perturb(
    samples: int, rng_seed: int, strict_margin: float = STRICT_MARGIN, **_: object
) -> dict:
    rng = _suite_rng(rng_seed, "perturb")
    failures = []
    records = []
    done_p1 = done_p2 = 0
    attempts = 0
    while done_p1 < samples or done_p2 < samples:
        attempts += 1
        if attempts > 100 * samples:  # pragma: no cover - sampling stall
            raise RuntimeError("could not sample enough legal perturbations")
        rbt = random_rooted_caterpillar(rng)
        before, _ = dirichlet_nu(rbt)
        if done_p1 < samples:
            moves = _legal_p1_moves(rbt)
            if moves:
                w, vi, vj = rng.choice(moves)
                after, _ = dirichlet_nu(perturb_p1(rbt, w, vi, vj))
                rec = PerturbationRecord("P1", before, after, ((w, vi), (w, vj)))
                records.append(rec)
                done_p1 += 1
                if not after < before - strict_margin * before:
                    failures.append(rec.to_json())
        if done_p2 < samples:
            line = trunk(rbt)
            vj = rng.choice(line[1:])
            after, _ = dirichlet_nu(perturb_p2(rbt, vj))
            rec = PerturbationRecord(
                "P2", before, after, ((vj, rbt.tree.n),)
            )
            records.append(rec)
            done_p2 += 1
            if not after < before - strict_margin * before:
                failures.append(rec.to_json())
    gaps = [(r.before_nu - r.after_nu) / r.before_nu for r in records]
    return {
        "name": "pendant moves strictly decrease nu",
        "checked": len(records),
        "min_relative_gap": min(gaps),
        "failures": _fail_list(failures),
        "passed": not failures,
    }


def _suite_glue(samples: int, rng_seed: int, nmax: int = 9, **_: object) -> dict:
    rng = _suite_rng(rng_seed, "glue")
    failures = []
    checked = 0
    for _ in range(samples):
        n1 = rng.randint(2, max(3, nmax // 2 + 2))
        n2 = rng.randint(2, max(3, nmax // 2 + 2))
        w0 = rng.choice([1.0, 1.5, 2.0, 3.0])
        a = random_rooted_tree(rng, n1, w0)
        b = random_rooted_tree(rng, n2, rng.choice([1.0, 1.5, 2.0, 3.0]))
        nu1, _ = dirichlet_nu(a)
        nu2, _ = dirichlet_nu(b)
        alpha, _ = algebraic_connectivity(glue(a, b))
        top = max(nu1, nu2)
        checked += 1
        ok = alpha <= top + 1e-10
        if ok and abs(nu1 - nu2) > 1e-8:
            ok = alpha < top
        if not ok:
            failures.append(
                {"nu1": nu1, "nu2": nu2, "alpha": alpha, "n1": n1, "n2": n2}
            )
    # constructed equality case: two identical two-interior rooted paths
    # glue into the five-vertex path, alpha == nu on both sides
    side = with_boundary_weight(path_tree(3), 0, 1.0)
    nu, _ = dirichlet_nu(side)
    alpha, _ = algebraic_connectivity(glue(side, side))
    equality_ok = abs(alpha - nu) <= 1e-10 and abs(nu - (3 - math.sqrt(5)) / 2) <= 1e-10
    if not equality_ok:
        failures.append({"equality_case_alpha": alpha, "equality_case_nu": nu})
    return {
        "name": "gluing bounds alpha by the larger side nu",
        "checked": checked + 1,
        "failures": _fail_list(failures),
        "passed": not failures,
    }


def _suite_split(nmax: int, samples: int, rng_seed: int, **_: object) -> dict:
    rng = _suite_rng(rng_seed, "split")
    failures = []
    checked = 0
    worst = 0.0

    def check(tree: Tree) -> None:
        nonlocal checked, worst
        analysis = analyze(tree)
        split = geometric_split(tree, analysis)
        r1, r2 = verify_split(tree, split, analysis.alpha)
        checked += 1
        worst = max(worst, r1, r2)
        if r1 > 1e-8 or r2 > 1e-8:
            failures.append(
                {
                    "edges": [[u, v] for u, v, _ in tree.edges],
                    "alpha": analysis.alpha,
                    "residuals": [r1, r2],
                }
            )

    for n in range(2, min(nmax, 8) + 1):
        for seq in all_tree_sequences(n):
            for code in sorted(canonical_tree_codes(seq)):
                check(tree_from_code(code))
    for _ in range(samples):
        check(random_tree(rng, rng.randint(2, nmax)))
    return {
        "name": "split sides reproduce alpha as their first Dirichlet eigenvalue",
        "checked": checked,
        "worst_residual": worst,
        "failures": _fail_list(failures),
        "passed": not failures,
    }


_SUITE_FUNCS = {
    "theorem1": _suite_theorem1,
    "lemma2": _suite_lemma2,
    "lemma5": _suite_lemma5,
    "perturb": _suite_perturb,
    "glue": _suite_glue,
    "split": _suite_split,
}


def verify_suite(
    suite: str,
    nmax: int = 8,
    samples: int = 100,
    rng_seed: int = 0,
    *,
    strict_margin: float = STRICT_MARGIN,
) -> dict:
    """Run one named verification suite (or "all") and return a
    machine-readable report.  Deterministic for fixed arguments."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}, expected one of {SUITES}")
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    checks = []
    for name in names:
        checks.append(
            {"suite": name}
            | _SUITE_FUNCS[name](
                nmax=nmax,
                samples=samples,
                rng_seed=rng_seed,
                strict_margin=strict_margin,
            )
        )
    return {
        "suite": suite,
        "params": {"nmax": nmax, "samples": samples, "rng_seed": rng_seed},
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }
