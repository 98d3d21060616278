"""Exhaustive brute-force censuses and theorem-level verification suites.

Every count here is obtained by enumerating objects one by one (vectorized
across preference sequences, but still one check per object); the closed
forms appear only on the *expected* side of each report.  The tree space can
be sharded: ``shard=(k, m)`` keeps the trees (or shapes) whose enumeration
index is congruent to k mod m, and the per-shard counts sum to the full run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from math import factorial

import numpy as np

from .bijections import (
    borie_map,
    decode_prime,
    encode_prime,
    is_132_avoiding,
    labeled_path,
    pair_to_prime,
    prime_to_pair,
    standard_path_prime,
)
from .errors import LimitExceededError
from .parking import run_parking
from .series import catalan_number, closed_counts
from .trees import (
    LabeledPlaneTree,
    RootedTree,
    enumerate_labeled_plane_trees,
    enumerate_plane_trees,
    enumerate_rooted_trees,
    format_plane_tree,
    format_rooted_tree,
    path_shape,
    shape_to_parents,
)

CENSUS_COLUMNS = (
    "parking",
    "prime",
    "distribution",
    "prime_distribution",
    "marked_prime",
    "marked_distribution",
    "standard_prime",
)


def _ancestor_matrix(tree: RootedTree) -> np.ndarray:
    """M[u-1, v-1] = 1 when v lies on the path from u to the root (u included)."""
    n = tree.n
    m = np.zeros((n, n), dtype=np.int16)
    for u in range(1, n + 1):
        for v in tree.path_to_root(u):
            m[u - 1, v - 1] = 1
    return m


def _count_matrix(rows: list[tuple[int, ...]], n: int) -> np.ndarray:
    out = np.zeros((len(rows), n), dtype=np.int16)
    for i, row in enumerate(rows):
        for s in row:
            out[i, s - 1] += 1
    return out


def _shape_prime_rows(shape, seqs: list[tuple[int, ...]], counts: np.ndarray) -> np.ndarray:
    parents, _ = shape_to_parents(shape)
    tree = RootedTree(parents)
    m = _ancestor_matrix(tree)
    sizes = m.sum(axis=0, dtype=np.int16)
    strict = np.ones(tree.n, dtype=np.int16)
    strict[tree.root - 1] = 0
    totals = counts @ m
    return (totals >= sizes + strict).all(axis=1)


def _is_standard_prime_fast(shape, prefs: tuple[int, ...]) -> bool:
    """Sibling-order test for a sequence already known to be prime on the shape."""
    parents, children = shape_to_parents(shape)
    outcome = run_parking(RootedTree(parents), prefs)
    tick = {edge: i for i, edge in enumerate(outcome.crossings)}
    n = len(parents)
    for v in range(1, n + 1):
        times = [tick[(c, v)] for c in children[v]]
        if any(a <= b for a, b in zip(times, times[1:])):
            return False
    return True


def census_counts(n: int, shard: tuple[int, int] = (0, 1), allow_large: bool = False) -> dict[str, int]:
    """Raw enumeration counts for one shard of the tree space at size n."""
    if n < 1 or n > 6:
        raise LimitExceededError(f"census is guarded to 1 <= n <= 6, got {n}")
    if n == 6 and not allow_large:
        raise LimitExceededError("the n=6 census runs ~3.6e8 checks; pass allow_large")
    which, mod = shard

    seqs = list(product(range(1, n + 1), repeat=n))
    seq_counts = _count_matrix(seqs, n)
    multi_counts = _count_matrix(
        list(combinations_with_replacement(range(1, n + 1), n)), n
    )

    counts = dict.fromkeys(CENSUS_COLUMNS, 0)
    for index, tree in enumerate(enumerate_rooted_trees(n)):
        if index % mod != which:
            continue
        m = _ancestor_matrix(tree)
        sizes = m.sum(axis=0, dtype=np.int16)
        strict = np.ones(n, dtype=np.int16)
        strict[tree.root - 1] = 0
        totals = seq_counts @ m
        counts["parking"] += int((totals >= sizes).all(axis=1).sum())
        counts["prime"] += int((totals >= sizes + strict).all(axis=1).sum())
        totals_m = multi_counts @ m
        dist = int((totals_m >= sizes).all(axis=1).sum())
        prime_dist = int((totals_m >= sizes + strict).all(axis=1).sum())
        counts["distribution"] += dist
        counts["prime_distribution"] += prime_dist
        leaves = len(tree.leaves())
        counts["marked_prime"] += leaves * prime_dist
        counts["marked_distribution"] += leaves * dist

    for index, shape in enumerate(enumerate_plane_trees(n)):
        if index % mod != which:
            continue
        prime_rows = _shape_prime_rows(shape, seqs, seq_counts)
        for i in np.flatnonzero(prime_rows):
            if _is_standard_prime_fast(shape, seqs[i]):
                counts["standard_prime"] += 1
    return counts


@dataclass(frozen=True)
class ColumnCheck:
    name: str
    counted: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.counted == self.expected


@dataclass(frozen=True)
class CensusReport:
    n: int
    columns: tuple[ColumnCheck, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.columns)


def census(n: int, allow_large: bool = False) -> CensusReport:
    """Full census at size n, compared column by column with the closed forms."""
    start = time.perf_counter()
    counted = census_counts(n, allow_large=allow_large)
    row = closed_counts(n).row(n)
    expected = {
        "parking": row.parking,
        "prime": row.prime,
        "distribution": row.distribution,
        "prime_distribution": row.prime_distribution,
        "marked_prime": row.marked_prime,
        "marked_distribution": row.marked_distribution,
        "standard_prime": factorial(n - 1) * catalan_number(n - 1),
    }
    columns = tuple(
        ColumnCheck(name, counted[name], expected[name]) for name in CENSUS_COLUMNS
    )
    return CensusReport(n, columns, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteReport:
    name: str
    n: int
    cases: int
    failures: tuple[str, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures


def _iter_primes(n: int):
    """All prime pairs on n vertices, by enumeration and the strict criterion."""
    seqs = list(product(range(1, n + 1), repeat=n))
    seq_counts = _count_matrix(seqs, n)
    for tree in enumerate_rooted_trees(n):
        m = _ancestor_matrix(tree)
        sizes = m.sum(axis=0, dtype=np.int16)
        strict = np.ones(n, dtype=np.int16)
        strict[tree.root - 1] = 0
        totals = seq_counts @ m
        mask = (totals >= sizes + strict).all(axis=1)
        for i in np.flatnonzero(mask):
            yield tree, seqs[i]


def roundtrip_suite(n: int) -> SuiteReport:
    """Both composites of the prime <-> (permutation, plane tree) maps are
    identities, and the forward image has no duplicates."""
    if n > 4:
        raise LimitExceededError("the round-trip suite is guarded to n <= 4")
    start = time.perf_counter()
    failures: list[str] = []
    cases = 0

    images: set = set()
    forward = 0
    for tree, prefs in _iter_primes(n):
        cases += 1
        forward += 1
        word, plt = prime_to_pair(tree, prefs)
        images.add((word, plt))
        back_tree, back_prefs = pair_to_prime(word, plt)
        if back_tree != tree or back_prefs != prefs:
            failures.append(
                f"forward roundtrip broke at tree={format_rooted_tree(tree)} seq={prefs}"
            )
    if len(images) != forward:
        failures.append(f"image has {forward - len(images)} duplicate pairs")
    if forward != factorial(2 * n - 2):
        failures.append(f"found {forward} prime pairs, expected {factorial(2 * n - 2)}")

    backward = 0
    for word in permutations(range(1, n + 1)):
        for plt in enumerate_labeled_plane_trees(n):
            cases += 1
            backward += 1
            tree, prefs = pair_to_prime(word, plt)
            word2, plt2 = prime_to_pair(tree, prefs)
            if word2 != word or plt2 != plt:
                failures.append(
                    f"backward roundtrip broke at sigma={word} ptree={format_plane_tree(plt)}"
                )
    if backward != factorial(n) * factorial(n - 1) * catalan_number(n - 1):
        failures.append(f"enumerated {backward} (permutation, tree) pairs")

    return SuiteReport("roundtrip", n, cases, tuple(failures), time.perf_counter() - start)


def theorem53_suite(n: int) -> SuiteReport:
    """For every 132-avoiding permutation, the statistic map agrees with the
    decoded labeled path after dropping its leading 1."""
    if n > 7:
        raise LimitExceededError("the pattern suite is guarded to n <= 7")
    start = time.perf_counter()
    failures: list[str] = []
    cases = 0
    for word in permutations(range(1, n + 1)):
        if not is_132_avoiding(word):
            continue
        cases += 1
        sp = decode_prime(labeled_path(word))
        if sp.shape != path_shape(n + 1):
            failures.append(f"sigma={word}: decoded tree is not a path")
            continue
        if sp.prefs[0] != 1 or borie_map(word) != sp.prefs[1:]:
            failures.append(
                f"sigma={word}: statistic map {borie_map(word)} != decoded tail {sp.prefs[1:]}"
            )
    if cases != catalan_number(n):
        failures.append(f"saw {cases} avoiders, expected {catalan_number(n)}")
    return SuiteReport("thm53", n, cases, tuple(failures), time.perf_counter() - start)


def path_image_suite(n: int) -> SuiteReport:
    """Encoding restricted to growth sequences (s_1 = 1, s_i <= i-1) on the
    (n+1)-spot path is a bijection onto all n! labeled paths."""
    if n > 6:
        raise LimitExceededError("the path-image suite is guarded to n <= 6")
    start = time.perf_counter()
    failures: list[str] = []
    seen: set[tuple[int, ...]] = set()
    cases = 0
    ranges = [range(1, 2)] + [range(1, i) for i in range(2, n + 2)]
    for seq in product(*ranges):
        cases += 1
        image = encode_prime(standard_path_prime(seq))
        word = []
        node: LabeledPlaneTree = image
        while node.children:
            if len(node.children) > 1:
                failures.append(f"seq={seq}: image is not a path")
                break
            node = node.children[0]
            word.append(node.label)
        else:
            seen.add(tuple(word))
    if cases != factorial(n):
        failures.append(f"enumerated {cases} growth sequences, expected {factorial(n)}")
    if len(seen) != factorial(n):
        failures.append(f"images cover {len(seen)} labeled paths out of {factorial(n)}")
    return SuiteReport("paths", n, cases, tuple(failures), time.perf_counter() - start)
