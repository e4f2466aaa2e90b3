"""Linear-time decision for instances where every edge crosses at most once.

With one crossing per edge, clique-on-clique interaction cannot spread:
groups of parts connected through clique-edge crossings stay constant-sized
(two parts at most in anything drawable, and never involving a part of five
or more vertices). Each such group is decided by exhaustive search over its
own spanning-path domains, which is constant work per group, so the whole
run is linear in vertices + edges + crossings.

Groups that could not come from an actual drawing (a part of size >= 5
crossing another part) are still solved, but flagged, since the abstract
crossing relation admits them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotOnePlane
from .model import EdgeId, Instance, PathChoice, Solution, size2_choice
from .exact import Candidate, internal_crossings, part_domains, preprocess


@dataclass(frozen=True)
class CrossComponent:
    """Parts tied together by clique-edge/clique-edge crossings."""

    parts: tuple[int, ...]
    crossings: tuple[tuple[EdgeId, EdgeId], ...]  # clique-clique pairs inside the group
    forbidden: tuple[EdgeId, ...]                 # members crossing unremovable edges
    oversized_crossing: bool                      # a >=5 part crosses another part


@dataclass
class OnePlaneOutcome:
    status: str  # "feasible" | "infeasible" | "not-one-plane"
    solution: Solution | None = None
    offending_edge: EdgeId | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def assert_one_plane(instance: Instance) -> None:
    """Raise NotOnePlane citing the first edge with two or more crossings."""
    for eid, partners in enumerate(instance.crossings_of):
        if len(partners) > 1:
            raise NotOnePlane(eid)


def crossing_components(instance: Instance) -> list[CrossComponent]:
    """Group parts via clique-clique crossings; every part lands in one group.

    Parts whose edges only cross link edges, or cross nothing, come back as
    singletons. Components are ordered by their smallest part index.
    """
    parent = list(range(len(instance.parts)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    clique_pairs: list[tuple[EdgeId, EdgeId]] = []
    for a, b in instance.sorted_crossings():
        pa, pb = instance.edge_part[a], instance.edge_part[b]
        if pa is not None and pb is not None:
            clique_pairs.append((a, b))
            union(pa, pb)

    pair_buckets: dict[int, list[tuple[EdgeId, EdgeId]]] = {}
    for a, b in clique_pairs:
        pair_buckets.setdefault(find(instance.edge_part[a]), []).append((a, b))

    pre = preprocess(instance)
    forb_buckets: dict[int, list[EdgeId]] = {}
    for eid in sorted(pre.forbidden):
        forb_buckets.setdefault(find(instance.edge_part[eid]), []).append(eid)

    members: dict[int, list[int]] = {}
    for pidx in range(len(instance.parts)):
        members.setdefault(find(pidx), []).append(pidx)

    comps: list[CrossComponent] = []
    for root in sorted(members):
        parts = tuple(members[root])
        pairs = tuple(pair_buckets.get(root, ()))
        crossing_parts = {instance.edge_part[a] for a, b in pairs} | {
            instance.edge_part[b] for a, b in pairs
        }
        oversized = len(parts) > 1 and any(
            len(instance.parts[p]) >= 5 for p in crossing_parts
        )
        comps.append(
            CrossComponent(parts, pairs, tuple(forb_buckets.get(root, ())), oversized)
        )
    return comps


def _solve_component(
    instance: Instance, comp: CrossComponent, domains: dict[int, list[Candidate]]
) -> dict[int, Candidate] | None:
    """First valid joint choice in canonical order, by exhaustive search."""
    parts = [p for p in comp.parts if p in domains]
    if not parts:
        return {}
    chosen: dict[int, Candidate] = {}
    kept: set[EdgeId] = set()

    def consistent(cand: Candidate) -> bool:
        for a, b in comp.crossings:
            if (a in cand.kept and b in kept) or (b in cand.kept and a in kept):
                return False
            if a in cand.kept and b in cand.kept:
                return False
        return True

    def rec(depth: int) -> bool:
        if depth == len(parts):
            return True
        pidx = parts[depth]
        for cand in domains[pidx]:
            if not consistent(cand):
                continue
            chosen[pidx] = cand
            kept.update(cand.kept)
            if rec(depth + 1):
                return True
            kept.difference_update(cand.kept)
            del chosen[pidx]
        return False

    return chosen if rec(0) else None


def solve_one_plane(instance: Instance) -> OnePlaneOutcome:
    """Decide a 1-plane instance component by component.

    Verdicts agree with the exact solver; when a group is not realizable as
    a 1-plane drawing it is solved anyway and a warning is attached.
    """
    try:
        assert_one_plane(instance)
    except NotOnePlane as err:
        return OnePlaneOutcome("not-one-plane", offending_edge=err.edge_id)

    pre = preprocess(instance)
    if not pre.feasible:
        return OnePlaneOutcome("infeasible")

    comps = crossing_components(instance)
    warnings = [
        f"component of parts {list(c.parts)} has a clique of size >= 5 crossing "
        "another clique; no 1-plane drawing realizes this"
        for c in comps
        if c.oversized_crossing
    ]

    internal = internal_crossings(instance)
    choices: list[PathChoice] = []
    for comp in comps:
        domains = part_domains(instance, pre.forbidden, parts=list(comp.parts), internal=internal)
        if any(not dom for dom in domains.values()):
            return OnePlaneOutcome("infeasible", warnings=warnings)
        assignment = _solve_component(instance, comp, domains)
        if assignment is None:
            return OnePlaneOutcome("infeasible", warnings=warnings)
        choices.extend(PathChoice(p, c.vertices) for p, c in assignment.items())

    for pidx, part in enumerate(instance.parts):
        if len(part) == 2:
            choices.append(size2_choice(instance, pidx))
    return OnePlaneOutcome("feasible", solution=Solution.from_choices(choices), warnings=warnings)
