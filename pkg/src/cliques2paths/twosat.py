"""Polynomial route for instances whose parts have at most 3 vertices.

Every triangle keeps exactly two of its three edges, so "edge e is removed"
becomes a boolean variable and all constraints are 1- or 2-literal clauses:

  * at most one removal per triangle (a spanning path drops exactly one
    edge; dropping is relaxed to "at most one" here, and extraction removes
    an arbitrary edge from untouched triangles, which can only erase
    crossings, never create them);
  * each crossing between two triangle edges forces one of them out;
  * a triangle edge crossing an unremovable edge (link edge, or the single
    edge of a size-2 part) is forced out by a unit clause.

Satisfiability is decided on the implication graph with strongly connected
components; component order is deterministic, so the extracted solution is
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import HTooLarge, InvalidAssignment
from .exact import preprocess
from .model import EdgeId, Instance, PathChoice, Solution, size2_choice, triangle_choice

Literal = int  # +-(var+1), DIMACS style


@dataclass
class TwoSatInstance:
    """Clause set over removal variables; ``var_edge`` maps back to edges."""

    nvars: int
    clauses: list[tuple[Literal, ...]]
    var_edge: list[EdgeId] = field(default_factory=list)
    edge_var: dict[EdgeId, int] = field(default_factory=dict)


def build_2sat(instance: Instance) -> TwoSatInstance | None:
    """Encode an h<=3 instance; None when two unremovable edges cross."""
    if instance.h > 3:
        raise HTooLarge(f"instance has a part of size {instance.h}; the 2-SAT route needs h <= 3")

    pre = preprocess(instance)
    if not pre.feasible:
        return None

    var_edge: list[EdgeId] = []
    edge_var: dict[EdgeId, int] = {}
    for pidx, part in enumerate(instance.parts):
        if len(part) != 3:
            continue
        for eid in instance.part_edges[pidx]:
            edge_var[eid] = len(var_edge)
            var_edge.append(eid)

    clauses: list[tuple[Literal, ...]] = []
    for pidx, part in enumerate(instance.parts):
        if len(part) != 3:
            continue
        e0, e1, e2 = instance.part_edges[pidx]
        for a, b in ((e0, e1), (e0, e2), (e1, e2)):
            clauses.append((-(edge_var[a] + 1), -(edge_var[b] + 1)))

    for a, b in instance.sorted_crossings():
        a_var = edge_var.get(a)
        b_var = edge_var.get(b)
        if a_var is not None and b_var is not None:
            # triangle edges are pairwise adjacent, so both ends of a
            # crossing inside one part would have been rejected at build
            assert instance.edge_part[a] != instance.edge_part[b]
            clauses.append((a_var + 1, b_var + 1))
        elif a_var is not None and instance.is_unremovable(b):
            clauses.append((a_var + 1,))
        elif b_var is not None and instance.is_unremovable(a):
            clauses.append((b_var + 1,))

    return TwoSatInstance(len(var_edge), clauses, var_edge, edge_var)


def _tarjan_scc(n_nodes: int, adj: list[list[int]]) -> list[int]:
    """Iterative Tarjan; component ids come out in reverse topological order."""
    index = [0] * n_nodes
    low = [0] * n_nodes
    comp = [-1] * n_nodes
    on_stack = bytearray(n_nodes)
    stack: list[int] = []
    counter = 1
    ncomp = 0
    for root in range(n_nodes):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            node, ei = work[-1]
            if ei == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = 1
            if ei < len(adj[node]):
                work[-1] = (node, ei + 1)
                nxt = adj[node][ei]
                if not index[nxt]:
                    work.append((nxt, 0))
                elif on_stack[nxt]:
                    low[node] = min(low[node], index[nxt])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = 0
                        comp[w] = ncomp
                        if w == node:
                            break
                    ncomp += 1
    return comp


def _node(lit: Literal) -> int:
    var = abs(lit) - 1
    return 2 * var + (0 if lit > 0 else 1)


def solve_2sat(ts: TwoSatInstance) -> list[bool] | None:
    """Satisfying assignment per variable, or None when unsatisfiable.

    Satisfiability is decided on the strongly connected components of the
    implication graph. Values are then committed variable by variable in
    ascending order, trying False first and keeping the implication closure
    of whichever branch survives, so unconstrained variables stay False and
    the output is reproducible.
    """
    n_nodes = 2 * ts.nvars
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for clause in ts.clauses:
        if len(clause) == 1:
            (l,) = clause
            adj[_node(-l)].append(_node(l))
        else:
            l1, l2 = clause
            adj[_node(-l1)].append(_node(l2))
            adj[_node(-l2)].append(_node(l1))

    comp = _tarjan_scc(n_nodes, adj)
    for v in range(ts.nvars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None

    value: list[bool | None] = [None] * n_nodes  # truth per literal node

    def try_commit(start: int) -> bool:
        closure: set[int] = set()
        stack = [start]
        while stack:
            node = stack.pop()
            if node in closure or value[node] is True:
                continue
            if value[node] is False or (node ^ 1) in closure:
                return False
            closure.add(node)
            stack.extend(adj[node])
        for node in closure:
            value[node] = True
            value[node ^ 1] = False
        return True

    for v in range(ts.nvars):
        if value[2 * v] is None:
            committed = try_commit(2 * v + 1) or try_commit(2 * v)
            assert committed, "a satisfiable formula admits one of the two branches"
    return [bool(value[2 * v]) for v in range(ts.nvars)]


def removed_by_assignment(ts: TwoSatInstance, values: list[bool]) -> set[EdgeId]:
    return {ts.var_edge[v] for v, val in enumerate(values) if val}


def extract_solution_2sat(instance: Instance, removed: Iterable[EdgeId]) -> Solution:
    """Turn per-edge removal decisions into spanning paths.

    Triangles with one removed edge keep the complementary two; untouched
    triangles lose their smallest edge id (a removal never adds crossings).
    """
    removed_set = set(removed)
    choices: list[PathChoice] = []
    for pidx, part in enumerate(instance.parts):
        if len(part) == 2:
            choices.append(size2_choice(instance, pidx))
            continue
        if len(part) != 3:
            continue
        dropped = [eid for eid in instance.part_edges[pidx] if eid in removed_set]
        if len(dropped) > 1:
            raise InvalidAssignment(f"part {pidx} has {len(dropped)} removed edges; a triangle path drops exactly one")
        eid = dropped[0] if dropped else instance.part_edges[pidx][0]
        choices.append(triangle_choice(instance, pidx, eid))
    return Solution.from_choices(choices)


def solve_with_2sat(instance: Instance) -> Solution | None:
    """Full pipeline: encode, decide, extract. None when infeasible."""
    ts = build_2sat(instance)
    if ts is None:
        return None
    values = solve_2sat(ts)
    if values is None:
        return None
    return extract_solution_2sat(instance, removed_by_assignment(ts, values))
