"""Compile positive exactly-1-in-3 formulas into path-planarization instances.

The construction uses only cliques of size 3 and 4 and makes every instance
3-plane. Each triangle carries a crossing-free ``base`` edge plus ``left``
and ``right`` edges that do all the crossing; which of left/right a
triangle's spanning path drops is the bit every gadget pushes around.

Gadget inventory:

  * variable gadget: a ring of 2n alternating triangles forces a single
    left-or-right phase; n extra "value" triangles read that phase out, one
    per clause occurrence, and feed the chains.
  * chain: an odd run of triangles in which adjacent members must drop
    opposite sides, so the value at one end re-appears unchanged at the
    other.
  * clause gadget: a plane-drawn 4-clique (hub vertex plus a 3-cycle rim)
    crossed by three "port" triangles; the 4-clique can be pathified
    exactly when one port drops its right edge and the other two drop
    their left.

A brute-force assignment scan (``oracle_1in3``) is kept fully independent
of the solvers so reductions can be cross-validated end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptyFormula,
    EvenChain,
    InconsistentGadget,
    NotOneInThree,
    TooLarge,
)
from .model import (
    EdgeId,
    Instance,
    InstanceBuilder,
    PathChoice,
    Solution,
    triangle_choice,
)

Assignment = tuple[bool, ...]  # index i holds variable i+1


@dataclass(frozen=True)
class Formula:
    """Positive 1-in-3 formula: clauses are triples of distinct variables."""

    nvars: int
    clauses: tuple[tuple[int, int, int], ...]

    @staticmethod
    def make(nvars: int, clauses) -> "Formula":
        norm = []
        for cl in clauses:
            triple = tuple(sorted(cl))
            if len(triple) != 3 or len(set(triple)) != 3:
                raise ValueError(f"clause {cl!r} must hold three distinct variables")
            if not all(1 <= v <= nvars for v in triple):
                raise ValueError(f"clause {cl!r} references variables outside 1..{nvars}")
            norm.append(triple)
        return Formula(nvars, tuple(norm))

    def occurrences(self) -> dict[int, list[int]]:
        """variable -> clause indices containing it, in formula order."""
        occ: dict[int, list[int]] = {x: [] for x in range(1, self.nvars + 1)}
        for cidx, clause in enumerate(self.clauses):
            for x in clause:
                occ[x].append(cidx)
        return occ


def is_one_in_three(formula: Formula, assignment: Assignment) -> bool:
    return all(sum(assignment[x - 1] for x in clause) == 1 for clause in formula.clauses)


def oracle_1in3(formula: Formula) -> Assignment | None:
    """Scan all assignments; smallest bitmask first (variable 1 = low bit).

    Independent of every solver and of the reduction; the cross-validation
    anchor. None when unsatisfiable.
    """
    if formula.nvars > 24:
        raise TooLarge(f"{formula.nvars} variables; the scan is capped at 24")
    for mask in range(1 << formula.nvars):
        values = tuple(bool((mask >> i) & 1) for i in range(formula.nvars))
        if is_one_in_three(formula, values):
            return values
    return None


# -- gadget handles ---------------------------------------------------------

@dataclass(frozen=True)
class TriHandle:
    """Role-tagged edges of one gadget triangle."""

    part: int
    base: EdgeId
    left: EdgeId
    right: EdgeId

    def side(self, name: str) -> EdgeId:
        return {"base": self.base, "left": self.left, "right": self.right}[name]


@dataclass(frozen=True)
class QuadHandle:
    """The clause 4-clique: hub vertex, rim 3-cycle, spoke and outer edges.

    ``outers[i]`` joins ``rim[i]`` to ``rim[(i + 1) % 3]``.
    """

    part: int
    hub: int
    rim: tuple[int, int, int]
    spokes: tuple[EdgeId, EdgeId, EdgeId]
    outers: tuple[EdgeId, EdgeId, EdgeId]


@dataclass(frozen=True)
class VariableGadget:
    variable: int
    ring: tuple[TriHandle, ...]    # 2n triangles
    values: tuple[TriHandle, ...]  # n readout triangles, one per occurrence


@dataclass(frozen=True)
class ClauseGadget:
    quad: QuadHandle
    ports: tuple[TriHandle, TriHandle, TriHandle]
    variables: tuple[int, int, int]  # variable per port position, (0,0,0) if unbound


@dataclass(frozen=True)
class ChainHandle:
    clause: int
    position: int  # port position 0..2 within the clause
    variable: int
    links: tuple[TriHandle, ...]


@dataclass(frozen=True)
class ReductionWitness:
    """Traceability from formula elements to gadget parts and edges."""

    nvars: int
    chain_len: int
    gadgets: tuple[VariableGadget, ...]
    clauses: tuple[ClauseGadget, ...]
    chains: tuple[ChainHandle, ...]  # clause-major, position-minor

    def chain(self, clause: int, position: int) -> ChainHandle:
        return self.chains[3 * clause + position]


def _opposite(side: str) -> str:
    return "right" if side == "left" else "left"


# -- gadget construction ----------------------------------------------------

def _add_triangle(b: InstanceBuilder) -> TriHandle:
    pidx, (u, v, w) = b.add_part(3)
    return TriHandle(
        part=pidx,
        base=b.edge_id(u, v),
        left=b.edge_id(v, w),
        right=b.edge_id(u, w),
    )


def _add_quad(b: InstanceBuilder) -> QuadHandle:
    pidx, (hub, rx, ry, rz) = b.add_part(4)
    return QuadHandle(
        part=pidx,
        hub=hub,
        rim=(rx, ry, rz),
        spokes=(b.edge_id(hub, rx), b.edge_id(hub, ry), b.edge_id(hub, rz)),
        outers=(b.edge_id(rx, ry), b.edge_id(ry, rz), b.edge_id(rz, rx)),
    )


def _wire_variable(b: InstanceBuilder, variable: int, n_occ: int) -> VariableGadget:
    ring = tuple(_add_triangle(b) for _ in range(2 * n_occ))
    values = tuple(_add_triangle(b) for _ in range(n_occ))
    k = len(ring)
    for i in range(k):
        b.cross(ring[i].left, ring[(i + 1) % k].left)
        b.cross(ring[i].right, ring[(i + 1) % k].right)
    for j in range(n_occ):
        odd, even, val = ring[2 * j], ring[2 * j + 1], values[j]
        b.cross(val.right, odd.left)
        b.cross(val.right, even.right)
        b.cross(val.left, even.left)
        b.cross(val.left, odd.right)
    return VariableGadget(variable, ring, values)


def _wire_clause(b: InstanceBuilder, variables: tuple[int, int, int]) -> ClauseGadget:
    quad = _add_quad(b)
    ports = tuple(_add_triangle(b) for _ in range(3))
    for w in range(3):
        pred = (w + 2) % 3
        b.cross(ports[w].left, quad.spokes[w])
        b.cross(ports[w].left, quad.outers[w])
        b.cross(ports[w].right, quad.outers[pred])
    return ClauseGadget(quad, ports, variables)


def _wire_chain_links(b: InstanceBuilder, m: int) -> tuple[TriHandle, ...]:
    links = tuple(_add_triangle(b) for _ in range(m))
    for i in range(m - 1):
        b.cross(links[i].left, links[i + 1].left)
        b.cross(links[i].right, links[i + 1].right)
    return links


def _attach_chain(b: InstanceBuilder, source: TriHandle, links, sink: TriHandle) -> None:
    b.cross(source.left, links[0].left)
    b.cross(source.right, links[0].right)
    b.cross(links[-1].left, sink.left)
    b.cross(links[-1].right, sink.right)


def build_variable_gadget(n_occ: int) -> tuple[Instance, VariableGadget]:
    """The isolated gadget for a variable with ``n_occ`` clause occurrences."""
    if n_occ < 1:
        raise ValueError("a variable gadget needs at least one occurrence")
    b = InstanceBuilder()
    gadget = _wire_variable(b, 1, n_occ)
    return b.build(), gadget


def build_clause_gadget(variables: tuple[int, int, int] = (0, 0, 0)) -> tuple[Instance, ClauseGadget]:
    """The isolated clause gadget: 4-clique plus three port triangles."""
    b = InstanceBuilder()
    gadget = _wire_clause(b, variables)
    return b.build(), gadget


def build_chain(m: int, allow_even: bool = False) -> tuple[Instance, tuple[TriHandle, ...]]:
    """An unattached chain of ``m`` triangles (odd unless explicitly allowed)."""
    if m < 1 or (m % 2 == 0 and not allow_even):
        raise EvenChain(f"chain length {m} must be a positive odd number")
    b = InstanceBuilder()
    links = _wire_chain_links(b, m)
    return b.build(), links


def build_chain_harness(m: int, allow_even: bool = False) -> tuple[Instance, TriHandle, tuple[TriHandle, ...], TriHandle]:
    """A chain wired between a source and a sink triangle, for transfer tests."""
    if m < 1 or (m % 2 == 0 and not allow_even):
        raise EvenChain(f"chain length {m} must be a positive odd number")
    b = InstanceBuilder()
    source = _add_triangle(b)
    links = _wire_chain_links(b, m)
    sink = _add_triangle(b)
    _attach_chain(b, source, links, sink)
    return b.build(), source, links, sink


def reduce_formula(formula: Formula, chain_len: int = 1) -> tuple[Instance, ReductionWitness]:
    """Build the full instance for a formula; feasible iff the formula is.

    Construction size is linear in the formula. Every variable must occur
    in at least one clause (its gadget needs a ring).
    """
    if not formula.clauses:
        raise EmptyFormula("the reduction needs at least one clause")
    if chain_len < 1 or chain_len % 2 == 0:
        raise EvenChain(f"chain length {chain_len} must be a positive odd number")
    occ = formula.occurrences()
    for x in range(1, formula.nvars + 1):
        if not occ[x]:
            raise ValueError(f"variable {x} occurs in no clause")

    b = InstanceBuilder()
    gadgets = tuple(
        _wire_variable(b, x, len(occ[x])) for x in range(1, formula.nvars + 1)
    )
    clause_gadgets: list[ClauseGadget] = []
    chains: list[ChainHandle] = []
    for cidx, clause in enumerate(formula.clauses):
        cg = _wire_clause(b, clause)
        clause_gadgets.append(cg)
        for pos, x in enumerate(clause):
            j = occ[x].index(cidx)
            links = _wire_chain_links(b, chain_len)
            _attach_chain(b, gadgets[x - 1].values[j], links, cg.ports[pos])
            chains.append(ChainHandle(cidx, pos, x, links))

    witness = ReductionWitness(
        nvars=formula.nvars,
        chain_len=chain_len,
        gadgets=gadgets,
        clauses=tuple(clause_gadgets),
        chains=tuple(chains),
    )
    return b.build(), witness


# -- witness translation ----------------------------------------------------

def removed_side(instance: Instance, solution: Solution, tri: TriHandle) -> str:
    """Which role-tagged edge ("base"/"left"/"right") the solution drops."""
    choice = solution.by_part()[tri.part]
    kept = {instance.edge_ids[p] for p in choice.edge_pairs()}
    (eid,) = [e for e in instance.part_edges[tri.part] if e not in kept]
    return {tri.base: "base", tri.left: "left", tri.right: "right"}[eid]


def extract_assignment(instance: Instance, witness: ReductionWitness, solution: Solution) -> Assignment:
    """Read the truth value of each variable off its value triangles.

    Right removed means True. All value triangles of one gadget agree in
    any valid solution; disagreement (or a dropped base edge) raises
    InconsistentGadget.
    """
    values: list[bool] = []
    for gadget in witness.gadgets:
        sides = {removed_side(instance, solution, t) for t in gadget.values}
        if len(sides) != 1 or sides <= {"base"}:
            raise InconsistentGadget(
                f"variable {gadget.variable} value triangles drop sides {sorted(sides)}"
            )
        values.append(sides.pop() == "right")
    return tuple(values)


def _quad_choice(instance: Instance, quad: QuadHandle, removed: set[EdgeId]) -> PathChoice:
    kept = [instance.edges[e] for e in instance.part_edges[quad.part] if e not in removed]
    neighbors: dict[int, list[int]] = {}
    for e in kept:
        neighbors.setdefault(e.u, []).append(e.v)
        neighbors.setdefault(e.v, []).append(e.u)
    ends = sorted(v for v, ns in neighbors.items() if len(ns) == 1)
    assert len(kept) == 3 and len(ends) == 2, "kept 4-clique edges must form a path"
    seq = [ends[0]]
    while len(seq) < 4:
        nxt = [v for v in neighbors[seq[-1]] if len(seq) < 2 or v != seq[-2]]
        seq.append(nxt[0])
    return PathChoice(quad.part, tuple(seq))


def solution_from_assignment(
    instance: Instance, witness: ReductionWitness, assignment: Assignment
) -> Solution:
    """Materialize the canonical solution encoding a satisfying assignment.

    True: ring triangles drop right on odd positions and left on even ones,
    value triangles drop right (False mirrors everything); chains alternate
    away from the value side; each clause quad drops its three edges
    walking clockwise from the true port's spoke.
    """
    formula = Formula(witness.nvars, tuple(c.variables for c in witness.clauses))
    if len(assignment) != witness.nvars or not is_one_in_three(formula, assignment):
        raise NotOneInThree("assignment does not set exactly one variable per clause true")

    choices: list[PathChoice] = []

    def drop(tri: TriHandle, side: str) -> None:
        choices.append(triangle_choice(instance, tri.part, tri.side(side)))

    for gadget in witness.gadgets:
        side = "right" if assignment[gadget.variable - 1] else "left"
        for i, tri in enumerate(gadget.ring):
            drop(tri, side if i % 2 == 0 else _opposite(side))
        for tri in gadget.values:
            drop(tri, side)

    for chain in witness.chains:
        side = "right" if assignment[chain.variable - 1] else "left"
        for k, tri in enumerate(chain.links):
            drop(tri, _opposite(side) if k % 2 == 0 else side)

    for cg in witness.clauses:
        (true_pos,) = [p for p in range(3) if assignment[cg.variables[p] - 1]]
        for pos, port in enumerate(cg.ports):
            drop(port, "right" if pos == true_pos else "left")
        removed = {
            cg.quad.spokes[true_pos],
            cg.quad.outers[true_pos],
            cg.quad.outers[(true_pos + 1) % 3],
        }
        choices.append(_quad_choice(instance, cg.quad, removed))

    return Solution.from_choices(choices)
