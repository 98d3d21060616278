"""The parking procedure on rooted trees and the predicates built on it.

Drivers are processed in index order.  Driver i parks at her preferred
vertex if it is free; otherwise she follows the unique path towards the
root and takes the first free vertex, leaving the tree if there is none.
An edge is *used* once some driver crosses it after finding her preferred
spot occupied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    LabelOutOfRangeError,
    LengthMismatchError,
    NotAParkingFunctionError,
)
from .trees import RootedTree

Edge = tuple[int, int]  # (child, parent) with the edge oriented child -> parent


@dataclass(frozen=True)
class ParkingOutcome:
    """Result of running the procedure.

    ``spots[i - 1]`` is where driver i parked (None if she left the tree),
    and ``crossings`` lists each edge once, in the order of first crossing.
    """

    spots: tuple[int | None, ...]
    crossings: tuple[Edge, ...]

    @property
    def all_parked(self) -> bool:
        return None not in self.spots


def check_preferences(tree: RootedTree, prefs: Sequence[int]) -> tuple[int, ...]:
    if len(prefs) != tree.n:
        raise LengthMismatchError(f"{len(prefs)} preferences for a tree on {tree.n} vertices")
    for i, s in enumerate(prefs, start=1):
        if not 1 <= s <= tree.n:
            raise LabelOutOfRangeError(f"driver {i}: preference {s} outside 1..{tree.n}")
    return tuple(prefs)


def run_parking(tree: RootedTree, prefs: Sequence[int]) -> ParkingOutcome:
    """Simulate any prefix of drivers; no length check."""
    occupied = [False] * (tree.n + 1)
    spots: list[int | None] = []
    crossed: set[Edge] = set()
    crossings: list[Edge] = []
    for want in prefs:
        v = want
        if not occupied[v]:
            occupied[v] = True
            spots.append(v)
            continue
        spot = None
        while True:
            p = tree.parent(v)
            if p == 0:
                break
            edge = (v, p)
            if edge not in crossed:
                crossed.add(edge)
                crossings.append(edge)
            v = p
            if not occupied[v]:
                spot = v
                break
        spots.append(spot)
        if spot is not None:
            occupied[spot] = True
    return ParkingOutcome(tuple(spots), tuple(crossings))


def park(tree: RootedTree, prefs: Sequence[int]) -> ParkingOutcome:
    """Run the full parking procedure for all n drivers."""
    return run_parking(tree, check_preferences(tree, prefs))


def _subtree_totals(tree: RootedTree, prefs: Sequence[int]) -> tuple[list[int], list[int]]:
    """For each vertex v: size of its subtree and how many drivers prefer it."""
    totals = [0] * (tree.n + 1)
    sizes = [0] * (tree.n + 1)
    for s in prefs:
        totals[s] += 1
    for v in tree.bottom_up():
        sizes[v] += 1
        p = tree.parent(v)
        if p:
            totals[p] += totals[v]
            sizes[p] += sizes[v]
    return totals, sizes


def is_parking_function(tree: RootedTree, prefs: Sequence[int]) -> bool:
    """Subtree criterion: every subtree receives at least as many preferences
    as it has vertices.  Agrees with simulation success; the test suite checks
    that exhaustively."""
    check_preferences(tree, prefs)
    totals, sizes = _subtree_totals(tree, prefs)
    return all(totals[v] >= sizes[v] for v in range(1, tree.n + 1))


def used_edges(tree: RootedTree, prefs: Sequence[int]) -> tuple[Edge, ...]:
    """Edges used by a parking function, in chronological first-crossing order.

    Computed twice: by the strict subtree criterion and by simulation.  The
    two sets must agree; the simulation supplies the order.
    """
    check_preferences(tree, prefs)
    totals, sizes = _subtree_totals(tree, prefs)
    if any(totals[v] < sizes[v] for v in range(1, tree.n + 1)):
        raise NotAParkingFunctionError("used edges are only defined for parking functions")
    criterion = {
        (v, tree.parent(v))
        for v in range(1, tree.n + 1)
        if tree.parent(v) and totals[v] > sizes[v]
    }
    outcome = run_parking(tree, prefs)
    assert criterion == set(outcome.crossings), "edge criterion disagrees with simulation"
    return outcome.crossings


def is_prime(tree: RootedTree, prefs: Sequence[int]) -> bool:
    """Every proper subtree receives strictly more preferences than its size.

    Evaluated both ways: by the strict criterion and as "a parking function
    that uses every edge" (simulation).  The two must agree.
    """
    check_preferences(tree, prefs)
    totals, sizes = _subtree_totals(tree, prefs)
    root = tree.root
    by_criterion = all(
        totals[v] > sizes[v] for v in range(1, tree.n + 1) if v != root
    )
    outcome = run_parking(tree, prefs)
    by_simulation = outcome.all_parked and len(outcome.crossings) == tree.n - 1
    assert by_criterion == by_simulation, "primality characterizations disagree"
    return by_criterion


def is_parking_distribution(tree: RootedTree, prefs: Sequence[int]) -> bool:
    """Weakly increasing parking function."""
    check_preferences(tree, prefs)
    increasing = all(a <= b for a, b in zip(prefs, prefs[1:]))
    return increasing and is_parking_function(tree, prefs)
