"""Shared oracles and builders for the test suite.

The naive enumerator here is deliberately unpruned: a plain Cartesian
product over every spanning-path choice, checked against the crossing
relation. It is the independent reference the solvers are measured
against, so it must never share code paths with them.
"""

import itertools

from cliques2paths.model import (
    Instance,
    InstanceBuilder,
    PathChoice,
    Solution,
    spanning_paths,
)
from cliques2paths.verify import verify_solution


def kept_sets(instance: Instance, pidx: int) -> list[frozenset]:
    out = []
    for seq in spanning_paths(instance.parts[pidx]):
        out.append(
            frozenset(
                instance.edge_ids[(min(a, b), max(a, b))] for a, b in zip(seq, seq[1:])
            )
        )
    return out


def naive_feasible(instance: Instance) -> bool:
    """Unpruned product over all spanning-path choices; stops at first hit."""
    domains = [
        kept_sets(instance, pidx)
        for pidx, part in enumerate(instance.parts)
        if len(part) >= 2
    ]
    always_kept = {e.id for e in instance.edges if instance.edge_part[e.id] is None}
    crossings = instance.sorted_crossings()
    for combo in itertools.product(*domains):
        kept = set(always_kept)
        for k in combo:
            kept |= k
        if all(not (a in kept and b in kept) for a, b in crossings):
            return True
    return False


def naive_solutions(instance: Instance) -> list[Solution]:
    """All valid solutions, found by full product + the verifier."""
    part_ids = [p for p, part in enumerate(instance.parts) if len(part) >= 2]
    domains = [
        [PathChoice(p, seq) for seq in spanning_paths(instance.parts[p])]
        for p in part_ids
    ]
    out = []
    for combo in itertools.product(*domains):
        sol = Solution.from_choices(combo)
        if not verify_solution(instance, sol):
            out.append(sol)
    return out


def instance_from_shape(sizes, crossings=()) -> Instance:
    """Parts of the given sizes over fresh vertices, plus crossing id pairs."""
    b = InstanceBuilder()
    for s in sizes:
        b.add_part(s)
    for e, f in crossings:
        b.cross(e, f)
    return b.build()


def eligible_pairs(instance: Instance) -> list[tuple[int, int]]:
    """Edge-id pairs that may legally cross (distinct, non-adjacent)."""
    pairs = []
    for a, b in itertools.combinations(range(len(instance.edges)), 2):
        ea, eb = instance.edges[a], instance.edges[b]
        if not ({ea.u, ea.v} & {eb.u, eb.v}):
            pairs.append((a, b))
    return pairs


def small_instance_family(shapes, max_crossings=2):
    """Every instance over the shapes with up to ``max_crossings`` crossings."""
    for sizes in shapes:
        base = instance_from_shape(sizes)
        pairs = eligible_pairs(base)
        for k in range(max_crossings + 1):
            for chosen in itertools.combinations(pairs, k):
                yield instance_from_shape(sizes, chosen)


def k4_crossed() -> Instance:
    """The drawn 4-clique whose two diagonals cross."""
    return instance_from_shape([4], [(1, 4)])  # edges (0,2) and (1,3)
