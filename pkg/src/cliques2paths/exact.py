"""Complete search over per-part spanning-path domains.

Works for any part size and doubles as the reference oracle for the
polynomial solvers. Domains are tiny (at most 6!/2 = 360 paths per part),
so pairwise nogoods between crossing edges plus forward checking are all
the propagation that is needed.

Determinism contract: the solver always returns the same solution for the
same input. Variable order is minimum-remaining-values with ascending part
index as tie-break; values follow the canonical path order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    EdgeId,
    Instance,
    PathChoice,
    Solution,
    size2_choice,
    spanning_paths,
)


@dataclass(frozen=True)
class Preprocess:
    """Unary consequences of unremovable edges.

    ``blocking`` names the first pair of crossing unremovable edges (link or
    size-2-part edges), which makes the whole instance infeasible;
    ``forbidden`` are removable clique edges that cross an unremovable edge
    and therefore cannot stay.
    """

    blocking: tuple[EdgeId, EdgeId] | None
    forbidden: frozenset[EdgeId]

    @property
    def feasible(self) -> bool:
        return self.blocking is None


@dataclass(frozen=True)
class Candidate:
    vertices: tuple[int, ...]
    kept: frozenset[EdgeId]  # clique edges of the part that stay


@dataclass
class Enumeration:
    solutions: list[Solution]
    truncated: bool  # cap hit before the search space was exhausted


DEFAULT_CAP = 10**6


def preprocess(instance: Instance) -> Preprocess:
    """Resolve crossings that involve unremovable edges."""
    forbidden: set[EdgeId] = set()
    for a, b in instance.sorted_crossings():
        a_fixed = instance.is_unremovable(a)
        b_fixed = instance.is_unremovable(b)
        if a_fixed and b_fixed:
            return Preprocess(blocking=(a, b), forbidden=frozenset())
        if a_fixed:
            forbidden.add(b)
        elif b_fixed:
            forbidden.add(a)
    return Preprocess(blocking=None, forbidden=frozenset(forbidden))


def internal_crossings(instance: Instance) -> dict[int, list[tuple[EdgeId, EdgeId]]]:
    """Crossing pairs whose two edges sit in the same part, keyed by part."""
    internal: dict[int, list[tuple[EdgeId, EdgeId]]] = {}
    for a, b in instance.sorted_crossings():
        pa, pb = instance.edge_part[a], instance.edge_part[b]
        if pa is not None and pa == pb:
            internal.setdefault(pa, []).append((a, b))
    return internal


def part_domains(
    instance: Instance,
    forbidden: frozenset[EdgeId],
    parts: list[int] | None = None,
    internal: dict[int, list[tuple[EdgeId, EdgeId]]] | None = None,
) -> dict[int, list[Candidate]]:
    """Candidate paths per part of size >= 3, after unary pruning.

    Filters paths that keep a forbidden edge or both sides of a crossing
    internal to the part (a drawn K4 or larger may cross itself).
    """
    part_list = parts if parts is not None else range(len(instance.parts))
    if internal is None:
        internal = internal_crossings(instance)

    domains: dict[int, list[Candidate]] = {}
    for pidx in part_list:
        part = instance.parts[pidx]
        if len(part) < 3:
            continue
        own_pairs = internal.get(pidx, [])
        cands = []
        for seq in spanning_paths(part):
            kept = frozenset(instance.edge_ids[(min(a, b), max(a, b))] for a, b in zip(seq, seq[1:]))
            if kept & forbidden:
                continue
            if any(a in kept and b in kept for a, b in own_pairs):
                continue
            cands.append(Candidate(seq, kept))
        domains[pidx] = cands
    return domains


def _cross_part_conflicts(instance: Instance) -> dict[EdgeId, list[tuple[int, EdgeId]]]:
    """edge -> [(other part, other edge)] over removable/removable crossings."""
    conflicts: dict[EdgeId, list[tuple[int, EdgeId]]] = {}
    for a, b in instance.sorted_crossings():
        if instance.is_unremovable(a) or instance.is_unremovable(b):
            continue
        pa, pb = instance.edge_part[a], instance.edge_part[b]
        if pa == pb:
            continue  # handled during domain filtering
        conflicts.setdefault(a, []).append((pb, b))
        conflicts.setdefault(b, []).append((pa, a))
    return conflicts


class _Search:
    """Shared backtracking core for decision, enumeration and counting."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.pre = preprocess(instance)
        self.parts: list[int] = []
        self.alive: dict[int, list[Candidate]] = {}
        self.assigned: dict[int, Candidate] = {}
        if not self.pre.feasible:
            return
        self.alive = part_domains(instance, self.pre.forbidden)
        self.parts = sorted(self.alive)
        self.conflicts = _cross_part_conflicts(instance)

    @property
    def feasible_so_far(self) -> bool:
        return self.pre.feasible and all(self.alive[p] for p in self.parts)

    def _prune(self, pidx: int, cand: Candidate):
        """Forward-check; returns the undo trail, or None on a wipeout."""
        trail: list[tuple[int, list[Candidate]]] = []
        for eid in cand.kept:
            for other_part, other_edge in self.conflicts.get(eid, ()):
                if other_part == pidx:
                    continue
                hit = self.assigned.get(other_part)
                if hit is not None:
                    if other_edge in hit.kept:
                        self._undo(trail)
                        return None
                    continue
                dom = self.alive[other_part]
                next_dom = [c for c in dom if other_edge not in c.kept]
                if len(next_dom) != len(dom):
                    trail.append((other_part, dom))
                    self.alive[other_part] = next_dom
                    if not next_dom:
                        self._undo(trail)
                        return None
        return trail

    def _undo(self, trail):
        for part, dom in reversed(trail):
            self.alive[part] = dom

    def solve(self) -> Solution | None:
        if not self.feasible_so_far:
            return None
        if self._solve_mrv():
            return self._materialize()
        return None

    def _solve_mrv(self) -> bool:
        todo = [p for p in self.parts if p not in self.assigned]
        if not todo:
            return True
        pidx = min(todo, key=lambda p: (len(self.alive[p]), p))
        for cand in self.alive[pidx]:
            self.assigned[pidx] = cand
            trail = self._prune(pidx, cand)
            if trail is not None:
                if self._solve_mrv():
                    return True
                self._undo(trail)
            del self.assigned[pidx]
        return False

    def walk_all(self, visit) -> bool:
        """DFS in ascending part order; ``visit`` returns False to stop.

        Returns True when the space was fully explored.
        """
        if not self.feasible_so_far:
            return True
        return self._walk(0, visit)

    def _walk(self, depth: int, visit) -> bool:
        if depth == len(self.parts):
            return visit(dict(self.assigned))
        pidx = self.parts[depth]
        for cand in list(self.alive[pidx]):
            self.assigned[pidx] = cand
            trail = self._prune(pidx, cand)
            if trail is not None:
                if not self._walk(depth + 1, visit):
                    self._undo(trail)
                    del self.assigned[pidx]
                    return False
                self._undo(trail)
            del self.assigned[pidx]
        return True

    def _materialize(self, assigned: dict[int, Candidate] | None = None) -> Solution:
        src = self.assigned if assigned is None else assigned
        choices = [PathChoice(p, c.vertices) for p, c in src.items()]
        for pidx, part in enumerate(self.instance.parts):
            if len(part) == 2:
                choices.append(size2_choice(self.instance, pidx))
        return Solution.from_choices(choices)


def solve_exact(instance: Instance) -> Solution | None:
    """Decide feasibility and return a valid solution, or None."""
    return _Search(instance).solve()


def enumerate_solutions(instance: Instance, cap: int = DEFAULT_CAP) -> Enumeration:
    """All valid solutions in canonical order, up to ``cap`` of them.

    Canonical order: parts ascending, candidate paths in canonical path
    order, solutions emitted in the induced lexicographic order.
    """
    search = _Search(instance)
    out: list[Solution] = []

    def visit(assigned: dict[int, Candidate]) -> bool:
        out.append(search._materialize(assigned))
        return len(out) < cap

    finished = search.walk_all(visit)
    return Enumeration(out, truncated=not finished)


def count_solutions(instance: Instance, cap: int = DEFAULT_CAP) -> int:
    """Number of valid solutions, capped at ``cap``."""
    search = _Search(instance)
    count = 0

    def visit(_assigned) -> bool:
        nonlocal count
        count += 1
        return count < cap

    search.walk_all(visit)
    return count
