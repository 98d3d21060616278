"""Rooted labeled trees, plane trees, and their exhaustive enumeration.

Conventions used throughout the package:

* Rooted trees live on the labels 1..n with every edge oriented towards the
  root.  The text form is the parent list: the i-th entry is the parent of
  vertex i, and 0 marks the root (``3 3 5 5 0``).
* A plane-tree *shape* is a nested tuple of child shapes, ordered left to
  right; the empty tuple is a single vertex.
* Permutations are one-line words: ``word[i - 1]`` is the image of ``i``.
* The labeled plane-tree text form is ``*[6[3] 2[5 4] 8[7[1]]]``: ``*`` is
  the unlabeled root, each labeled vertex is ``label[children...]``, and
  brackets are omitted on leaves.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import count, permutations, product
from typing import Iterator, Sequence

from .errors import (
    CycleDetectedError,
    InputError,
    LabelOutOfRangeError,
    MultipleRootsError,
    NoRootError,
    VertexOutOfRangeError,
)

# A plane-tree shape: tuple of child shapes, left to right.
PlaneShape = tuple


@dataclass(frozen=True)
class RootedTree:
    """Labeled rooted tree stored as its parent list (entry 0 marks the root)."""

    parents: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parents)

    @property
    def root(self) -> int:
        return self.parents.index(0) + 1

    def parent(self, v: int) -> int:
        return self.parents[v - 1]

    def children(self) -> list[list[int]]:
        """Child lists indexed by vertex label; slot 0 is unused."""
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for v, p in enumerate(self.parents, start=1):
            if p:
                kids[p].append(v)
        return kids

    def leaves(self) -> list[int]:
        """Vertices with no children (the root counts when it is bare)."""
        inner = set(p for p in self.parents if p)
        return [v for v in range(1, self.n + 1) if v not in inner]

    def bottom_up(self) -> list[int]:
        """Vertices ordered so that every child precedes its parent."""
        kids = self.children()
        order = [self.root]
        for v in order:  # grows while iterating: breadth-first sweep
            order.extend(kids[v])
        order.reverse()
        return order

    def path_to_root(self, v: int) -> list[int]:
        """Vertices on the directed path from v to the root, inclusive."""
        walk = [v]
        while self.parents[walk[-1] - 1]:
            walk.append(self.parents[walk[-1] - 1])
        return walk


def validate_rooted_tree(entries: Sequence[int]) -> RootedTree:
    """Check a parent list and wrap it as a :class:`RootedTree`.

    Raises :class:`NoRootError`, :class:`MultipleRootsError`,
    :class:`CycleDetectedError` or :class:`LabelOutOfRangeError`, each naming
    the offending vertex.
    """
    n = len(entries)
    if n == 0:
        raise NoRootError("empty parent list")
    for v, p in enumerate(entries, start=1):
        if not isinstance(p, int) or not 0 <= p <= n:
            raise LabelOutOfRangeError(f"vertex {v}: parent {p!r} outside 0..{n}")
    # Every parent chain must terminate within n steps; a revisited vertex
    # pins down the cycle.
    safe: set[int] = set()
    for v in range(1, n + 1):
        walk: list[int] = []
        seen: set[int] = set()
        u = v
        while u not in safe:
            if u in seen:
                raise CycleDetectedError(f"cycle through vertex {u}")
            seen.add(u)
            walk.append(u)
            p = entries[u - 1]
            if p == 0:
                break
            u = p
        safe.update(walk)
    roots = [v for v, p in enumerate(entries, start=1) if p == 0]
    if not roots:
        raise NoRootError("no vertex marked as root")
    if len(roots) > 1:
        raise MultipleRootsError(f"vertices {roots} all marked as root")
    return RootedTree(tuple(entries))


def subtree_size(tree: RootedTree, v: int) -> int:
    """Number of vertices whose path to the root passes through v, v included."""
    if not 1 <= v <= tree.n:
        raise VertexOutOfRangeError(f"vertex {v} outside 1..{tree.n}")
    kids = tree.children()
    total = 0
    stack = [v]
    while stack:
        u = stack.pop()
        total += 1
        stack.extend(kids[u])
    return total


def path_tree(n: int) -> RootedTree:
    """The path 1 -> 2 -> ... -> n rooted at n (the classical parking lot)."""
    if n < 1:
        raise VertexOutOfRangeError("path needs at least one vertex")
    return RootedTree(tuple(range(2, n + 1)) + (0,))


# ---------------------------------------------------------------------------
# Exhaustive generation
# ---------------------------------------------------------------------------


def _prufer_to_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * (n + 1)
    for a in seq:
        degree[a] += 1
    heap = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for a in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, a))
        degree[leaf] -= 1
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(heap, a)
    u = heapq.heappop(heap)
    v = heapq.heappop(heap)
    edges.append((u, v))
    return edges


def _orient(edges: list[tuple[int, int]], n: int, root: int) -> RootedTree:
    adjacent: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in edges:
        adjacent[u].append(v)
        adjacent[v].append(u)
    parents = [0] * n
    stack = [root]
    seen = {root}
    while stack:
        u = stack.pop()
        for w in adjacent[u]:
            if w not in seen:
                seen.add(w)
                parents[w - 1] = u
                stack.append(w)
    return RootedTree(tuple(parents))


def enumerate_rooted_trees(n: int) -> Iterator[RootedTree]:
    """All n^(n-1) labeled rooted trees: every Pruefer word crossed with every root."""
    if n < 1:
        raise VertexOutOfRangeError("need n >= 1")
    if n == 1:
        yield RootedTree((0,))
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        edges = _prufer_to_edges(seq, n)
        for root in range(1, n + 1):
            yield _orient(edges, n, root)


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    """Ordered positive parts of ``total``, in lexicographic order."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple[PlaneShape, ...]:
    if n == 1:
        return ((),)
    out: list[PlaneShape] = []
    for sizes in _compositions(n - 1):
        for combo in product(*(_shapes(k) for k in sizes)):
            out.append(tuple(combo))
    return tuple(out)


def enumerate_plane_trees(n: int) -> Iterator[PlaneShape]:
    """All plane-tree shapes on n vertices; there are Catalan(n-1) of them."""
    if n < 1:
        raise VertexOutOfRangeError("need n >= 1")
    yield from _shapes(n)


def shape_size(shape: PlaneShape) -> int:
    return 1 + sum(shape_size(c) for c in shape)


def path_shape(n: int) -> PlaneShape:
    shape: PlaneShape = ()
    for _ in range(n - 1):
        shape = (shape,)
    return shape


def shape_to_parents(shape: PlaneShape) -> tuple[tuple[int, ...], list[list[int]]]:
    """Parent list and ordered child lists of a shape under post-order labels.

    Post-order walks the left border of the tree: a vertex is labeled after
    all of its descendants and all subtrees of its left siblings, so the root
    receives the largest label.
    """
    n = shape_size(shape)
    parents = [0] * (n + 1)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    ticker = count(1)

    def visit(node: PlaneShape) -> int:
        kid_labels = [visit(c) for c in node]
        label = next(ticker)
        for k in kid_labels:
            parents[k] = label
        children[label] = kid_labels
        return label

    root = visit(shape)
    parents[root] = 0
    return tuple(parents[1:]), children


# ---------------------------------------------------------------------------
# Labeled plane trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledPlaneTree:
    """Plane tree with integer labels; ``None`` marks an unlabeled root."""

    label: int | None
    children: tuple["LabeledPlaneTree", ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def shape(self) -> PlaneShape:
        return tuple(c.shape() for c in self.children)

    def labels(self) -> list[int]:
        """All labels in pre-order, skipping unlabeled vertices."""
        out: list[int] = []
        stack = [self]
        while stack:
            node = stack.pop()
            if node.label is not None:
                out.append(node.label)
            stack.extend(reversed(node.children))
        return out


def check_labeled_plane_tree(t: LabeledPlaneTree) -> int:
    """Validate the root-unlabeled form: non-root labels are a bijection onto [n-1]."""
    if t.label is not None:
        raise InputError(f"root carries label {t.label}; expected an unlabeled root")
    n = t.size
    seen = t.labels()
    if sorted(seen) != list(range(1, n)):
        raise LabelOutOfRangeError(
            f"non-root labels {sorted(seen)} are not a bijection onto 1..{n - 1}"
        )
    stack = list(t.children)
    while stack:
        node = stack.pop()
        if node.label is None:
            raise InputError("unlabeled vertex below the root")
        stack.extend(node.children)
    return n


def check_all_labeled(t: LabeledPlaneTree) -> int:
    """Validate the everywhere-labeled form: labels are a bijection onto [n]."""
    n = t.size
    labels: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if node.label is None:
            raise InputError("every vertex must carry a label")
        labels.append(node.label)
        stack.extend(node.children)
    if sorted(labels) != list(range(1, n + 1)):
        raise LabelOutOfRangeError(f"labels {sorted(labels)} are not a bijection onto 1..{n}")
    return n


def post_order_relabel(t: LabeledPlaneTree) -> tuple[tuple[int, ...], LabeledPlaneTree]:
    """Relabel an everywhere-labeled plane tree by post-order.

    Returns the permutation ``sigma`` (old label -> new label) together with
    the relabeled tree.  Running it again on the output yields the identity.
    """
    n = check_all_labeled(t)
    mapping = [0] * (n + 1)
    ticker = count(1)

    def visit(node: LabeledPlaneTree) -> LabeledPlaneTree:
        kids = tuple(visit(c) for c in node.children)
        new = next(ticker)
        mapping[node.label] = new
        return LabeledPlaneTree(new, kids)

    relabeled = visit(t)
    return tuple(mapping[1:]), relabeled


def enumerate_labeled_plane_trees(n: int) -> Iterator[LabeledPlaneTree]:
    """All Catalan(n-1) * (n-1)! plane trees with non-root labels from [n-1]."""

    def build(shape: PlaneShape, labels: Iterator[int], is_root: bool) -> LabeledPlaneTree:
        label = None if is_root else next(labels)
        return LabeledPlaneTree(label, tuple(build(c, labels, False) for c in shape))

    for shape in enumerate_plane_trees(n):
        for word in permutations(range(1, n)):
            yield build(shape, iter(word), True)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


def is_permutation(word: Sequence[int]) -> bool:
    return sorted(word) == list(range(1, len(word) + 1))


def check_permutation(word: Sequence[int]) -> tuple[int, ...]:
    if not is_permutation(word):
        raise InputError(f"{list(word)} is not a permutation of 1..{len(word)}")
    return tuple(word)


def inverse_permutation(word: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(word)
    for i, image in enumerate(word, start=1):
        inv[image - 1] = i
    return tuple(inv)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise InputError(f"{what}: expected whitespace-separated integers, got {text!r}") from exc


def parse_rooted_tree(text: str) -> RootedTree:
    return validate_rooted_tree(_parse_ints(text, "tree"))


def format_rooted_tree(tree: RootedTree) -> str:
    return " ".join(str(p) for p in tree.parents)


def parse_preferences(text: str) -> tuple[int, ...]:
    return tuple(_parse_ints(text, "sequence"))


def parse_permutation(text: str) -> tuple[int, ...]:
    return check_permutation(_parse_ints(text, "permutation"))


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(x) for x in word)


def format_plane_tree(t: LabeledPlaneTree) -> str:
    head = "*" if t.label is None else str(t.label)
    if not t.children:
        return head
    return head + "[" + " ".join(format_plane_tree(c) for c in t.children) + "]"


_TOKEN = re.compile(r"\s*(\*|\d+|\[|\])")


def parse_plane_tree(text: str) -> LabeledPlaneTree:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise InputError(f"plane tree: unexpected character at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise InputError("plane tree: empty input")

    index = 0

    def parse_node() -> LabeledPlaneTree:
        nonlocal index
        if index >= len(tokens) or tokens[index] in "[]":
            raise InputError("plane tree: expected a vertex")
        tok = tokens[index]
        index += 1
        label = None if tok == "*" else int(tok)
        kids: list[LabeledPlaneTree] = []
        if index < len(tokens) and tokens[index] == "[":
            index += 1
            while index < len(tokens) and tokens[index] != "]":
                kids.append(parse_node())
            if index >= len(tokens):
                raise InputError("plane tree: missing closing bracket")
            index += 1
            if not kids:
                raise InputError("plane tree: empty bracket pair")
        return LabeledPlaneTree(label, tuple(kids))

    tree = parse_node()
    if index != len(tokens):
        raise InputError("plane tree: trailing tokens")
    return tree
