"""Ground-truth checker for candidate solutions.

A solution is valid when every part of size >= 2 carries a spanning path
and no crossing survives between two kept edges. The verifier reports every
violation it finds, not just the first, so failing tests stay diagnosable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ForeignPart
from .model import EdgeId, Instance, PathChoice, Solution


@dataclass(frozen=True)
class Violation:
    """kind is one of MissingChoice, NotAPath, UnresolvedCrossing."""

    kind: str
    part: int | None = None
    edges: tuple[EdgeId, EdgeId] | None = None


def _choice_kept_edges(instance: Instance, choice: PathChoice) -> set[EdgeId]:
    kept = set()
    for pair in choice.edge_pairs():
        eid = instance.edge_ids.get(pair)
        if eid is not None:
            kept.add(eid)
    return kept


def _is_spanning_path(instance: Instance, choice: PathChoice) -> bool:
    part = instance.parts[choice.part]
    return len(choice.vertices) == len(part) and sorted(choice.vertices) == list(part)


def verify_solution(instance: Instance, solution: Solution) -> list[Violation]:
    """Return all violations; an empty list means the solution is valid."""
    by_part: dict[int, PathChoice] = {}
    for choice in solution.choices:
        if not (0 <= choice.part < len(instance.parts)):
            raise ForeignPart(f"choice references part {choice.part}; instance has {len(instance.parts)} parts")
        by_part[choice.part] = choice

    violations: list[Violation] = []
    kept: set[EdgeId] = set()
    for pidx, part in enumerate(instance.parts):
        choice = by_part.get(pidx)
        if choice is None:
            if len(part) >= 2:
                violations.append(Violation("MissingChoice", part=pidx))
                kept.update(instance.part_edges[pidx])  # nothing was removed
            continue
        if not _is_spanning_path(instance, choice):
            violations.append(Violation("NotAPath", part=pidx))
        kept.update(_choice_kept_edges(instance, choice))

    for eid, part in zip(range(len(instance.edges)), instance.edge_part):
        if part is None:
            kept.add(eid)  # link edges are never removable

    for a, b in instance.sorted_crossings():
        if a in kept and b in kept:
            violations.append(Violation("UnresolvedCrossing", edges=(a, b)))
    return violations


def removed_edges(instance: Instance, solution: Solution) -> set[EdgeId]:
    """Clique edges dropped by the solution; link edges never appear."""
    removed: set[EdgeId] = set()
    for choice in solution.choices:
        if not (0 <= choice.part < len(instance.parts)):
            raise ForeignPart(f"choice references part {choice.part}; instance has {len(instance.parts)} parts")
        part_edge_set = set(instance.part_edges[choice.part])
        removed.update(part_edge_set - _choice_kept_edges(instance, choice))
    return removed
