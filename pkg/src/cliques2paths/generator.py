"""Seeded random instances and formulas for cross-solver property tests.

All randomness flows through an explicit splitmix64 generator and integer
arithmetic only, so a seed produces byte-identical artifacts on every
platform and Python version. Crossings are drawn by rejection sampling
over non-adjacent edge pairs, honoring a per-edge crossing cap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParamConflict, Underconstrained
from .model import Instance, InstanceBuilder
from .reduction import Formula

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64: z += 0x9e3779b97f4a7c15; mix via xor-shift-multiply."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n); unbiased via rejection."""
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        limit = _MASK - (_MASK + 1) % n
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % n


@dataclass(frozen=True)
class GenParams:
    """Knobs for random instances.

    ``density`` targets ``round(density * |E|)`` crossings; ``cap`` bounds
    crossings per edge; ``realizable`` (meaningful with cap=1) refuses
    crossings between a part of five or more vertices and another part,
    which no 1-plane drawing could realize.
    """

    seed: int
    parts: int
    size_min: int = 2
    size_max: int = 4
    density: float = 0.3
    cap: int = 3
    links: int = 0
    realizable: bool = False


_MAX_ATTEMPT_FACTOR = 200


def random_instance(params: GenParams) -> Instance:
    """Deterministic instance for a seed; raises ParamConflict when stuck."""
    p = params
    if p.parts < 0 or p.size_min < 1 or p.size_min > p.size_max:
        raise ParamConflict("part sizes must satisfy 1 <= size_min <= size_max")
    if p.size_max > 6:
        raise ParamConflict("parts larger than 6 are not generated")
    if not (0.0 <= p.density <= 1.0):
        raise ParamConflict("density must lie in [0, 1]")
    if p.cap < 0 or p.links < 0:
        raise ParamConflict("cap and links must be non-negative")

    rng = SplitMix64(p.seed)
    builder = InstanceBuilder()
    part_of_vertex: list[int] = []
    sizes: list[int] = []
    for pidx in range(p.parts):
        size = p.size_min + rng.randrange(p.size_max - p.size_min + 1)
        sizes.append(size)
        _, verts = builder.add_part(size)
        part_of_vertex.extend(pidx for _ in verts)

    n_vertices = len(part_of_vertex)
    if p.links:
        if p.parts < 2:
            raise ParamConflict("link edges need at least two parts")
        placed = 0
        attempts = 0
        max_attempts = _MAX_ATTEMPT_FACTOR * p.links + 1000
        link_pairs: set[tuple[int, int]] = set()
        while placed < p.links:
            attempts += 1
            if attempts > max_attempts:
                raise ParamConflict(f"could not place {p.links} link edges")
            u = rng.randrange(n_vertices)
            v = rng.randrange(n_vertices)
            if u == v or part_of_vertex[u] == part_of_vertex[v]:
                continue
            pair = (min(u, v), max(u, v))
            if pair in link_pairs:
                continue
            link_pairs.add(pair)
            builder.add_link(*pair)
            placed += 1

    n_edges = builder.n_edges
    target = round(p.density * n_edges)
    if p.cap * n_edges < 2 * target:
        raise ParamConflict(
            f"{target} crossings are unreachable with {n_edges} edges capped at {p.cap}"
        )

    part_of_edge = []
    for eid in range(n_edges):
        u, v = builder.edge_pair(eid)
        pu, pv = part_of_vertex[u], part_of_vertex[v]
        part_of_edge.append(pu if pu == pv else None)

    load = [0] * n_edges
    placed = 0
    attempts = 0
    max_attempts = _MAX_ATTEMPT_FACTOR * max(target, 1) + 1000
    while placed < target:
        attempts += 1
        if attempts > max_attempts:
            raise ParamConflict(f"could not place {target} crossings under cap {p.cap}")
        a = rng.randrange(n_edges)
        c = rng.randrange(n_edges)
        if a == c or load[a] >= p.cap or load[c] >= p.cap:
            continue
        ua, va = builder.edge_pair(a)
        uc, vc = builder.edge_pair(c)
        if {ua, va} & {uc, vc}:
            continue
        if builder.has_crossing(a, c):
            continue
        if p.realizable:
            pa, pc = part_of_edge[a], part_of_edge[c]
            if pa is not None and pc is not None and pa != pc:
                if builder.part_size(pa) >= 5 or builder.part_size(pc) >= 5:
                    continue
        builder.cross(a, c)
        load[a] += 1
        load[c] += 1
        placed += 1

    return builder.build()


def random_formula(seed: int, nvars: int, nclauses: int) -> Formula:
    """Random positive triples covering every variable at least once."""
    if nvars < 3:
        raise Underconstrained("clauses of three distinct variables need nvars >= 3")
    if 3 * nclauses < nvars:
        raise Underconstrained(f"{nclauses} clauses cannot cover {nvars} variables")
    rng = SplitMix64(seed)
    for _ in range(1000):
        clauses = []
        for _ in range(nclauses):
            chosen: set[int] = set()
            while len(chosen) < 3:
                chosen.add(1 + rng.randrange(nvars))
            clauses.append(tuple(sorted(chosen)))
        if len({x for cl in clauses for x in cl}) == nvars:
            return Formula.make(nvars, clauses)
    raise Underconstrained(f"no coverage of {nvars} variables after 1000 draws")
