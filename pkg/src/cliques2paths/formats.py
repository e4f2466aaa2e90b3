"""Strict line-based text formats for every artifact the toolkit exchanges.

Text over binary: the cross-solver test oracles diff serialized artifacts,
so byte-stable output matters more than compactness. Parsing never guesses;
unknown directives, bad token counts and stray values all raise FormatError.

Instance files ('#' comments):
    c2p 1
    n <count>
    part <v1> <v2> ...      one line per part; clique edges are implied
    link <u> <v>            explicit non-clique edges
    cross <u1> <v1> <u2> <v2>   edges named by endpoints, defined above

Solution files: ``sol 1`` then ``path <part-index> <v1> <v2> ...`` per part
of size >= 2.

Formula files ('c' comments): ``p pp13 <nvars> <nclauses>`` then one
``<x> <y> <z> 0`` line per clause, variables 1-based.

Witness files ('#' comments): ``c2pwit 1``, ``nvars``/``chainlen`` headers,
then one ``wit <kind> <indices> <ids>`` line per gadget handle.
"""

from __future__ import annotations

from .errors import FormatError, InvariantError
from .model import Instance, PathChoice, Solution, build_instance
from .reduction import (
    ChainHandle,
    ClauseGadget,
    Formula,
    QuadHandle,
    ReductionWitness,
    TriHandle,
    VariableGadget,
)


def _lines(text: str, comment: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split(comment, 1)[0].strip()
        if body:
            out.append((lineno, body.split()))
    return out


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)}") from None


def _expect_magic(lines, magic: list[str], what: str):
    if not lines:
        raise FormatError(f"empty {what} file")
    lineno, tokens = lines[0]
    if tokens != magic:
        raise FormatError(f"line {lineno}: {what} file must start with '{' '.join(magic)}'")
    return lines[1:]


# -- instances ----------------------------------------------------------------

def parse_instance(text: str) -> Instance:
    lines = _expect_magic(_lines(text, "#"), ["c2p", "1"], "instance")
    n: int | None = None
    parts: list[list[int]] = []
    edges: list[tuple[int, int]] = []
    edge_ids: dict[tuple[int, int], int] = {}
    crossings: list[tuple[int, int]] = []

    def add_edge(u: int, v: int) -> None:
        pair = (min(u, v), max(u, v))
        if pair not in edge_ids:
            edge_ids[pair] = len(edges)
            edges.append(pair)
        else:
            edges.append(pair)  # duplicate; build_instance reports it

    for lineno, tokens in lines:
        directive, rest = tokens[0], tokens[1:]
        if directive == "n":
            if n is not None:
                raise FormatError(f"line {lineno}: repeated n directive")
            if len(rest) != 1:
                _bad(lineno, "n <count>")
            (n,) = _ints(rest, lineno)
        elif directive == "part":
            if n is None:
                raise FormatError(f"line {lineno}: part before n")
            if not rest:
                raise FormatError(f"line {lineno}: empty part")
            verts = _ints(rest, lineno)
            parts.append(verts)
            ordered = sorted(verts)
            for i in range(len(ordered)):
                for j in range(i + 1, len(ordered)):
                    add_edge(ordered[i], ordered[j])
        elif directive == "link":
            if n is None:
                raise FormatError(f"line {lineno}: link before n")
            if len(rest) != 2:
                _bad(lineno, "link <u> <v>")
            u, v = _ints(rest, lineno)
            add_edge(u, v)
        elif directive == "cross":
            if len(rest) != 4:
                _bad(lineno, "cross <u1> <v1> <u2> <v2>")
            u1, v1, u2, v2 = _ints(rest, lineno)
            e1 = edge_ids.get((min(u1, v1), max(u1, v1)))
            e2 = edge_ids.get((min(u2, v2), max(u2, v2)))
            if e1 is None or e2 is None:
                missing = (u1, v1) if e1 is None else (u2, v2)
                raise InvariantError(
                    "UnknownEdgeInCrossing",
                    f"line {lineno}: crossing names pair {missing} which is not an edge yet",
                )
            crossings.append((e1, e2))
        else:
            raise FormatError(f"line {lineno}: unknown directive '{directive}'")
    if n is None:
        raise FormatError("missing n directive")
    return build_instance(n, edges, crossings, parts)


def _bad(lineno: int, shape: str):
    raise FormatError(f"line {lineno}: expected '{shape}'")


def serialize_instance(instance: Instance) -> str:
    out = ["c2p 1", f"n {instance.n}"]
    for part in instance.parts:
        out.append("part " + " ".join(map(str, part)))
    for edge in instance.edges:
        if instance.edge_part[edge.id] is None:
            out.append(f"link {edge.u} {edge.v}")
    for a, b in instance.sorted_crossings():
        ea, eb = instance.edges[a], instance.edges[b]
        out.append(f"cross {ea.u} {ea.v} {eb.u} {eb.v}")
    return "\n".join(out) + "\n"


def canonical_key(instance: Instance):
    """Structural identity, independent of internal edge numbering."""
    pairs = lambda eid: instance.edges[eid].pair  # noqa: E731
    return (
        instance.n,
        instance.parts,
        frozenset(e.pair for e in instance.edges),
        frozenset(frozenset((pairs(a), pairs(b))) for a, b in instance.crossings),
    )


# -- solutions ----------------------------------------------------------------

def parse_solution(text: str) -> Solution:
    lines = _expect_magic(_lines(text, "#"), ["sol", "1"], "solution")
    choices: dict[int, PathChoice] = {}
    for lineno, tokens in lines:
        if tokens[0] != "path":
            raise FormatError(f"line {lineno}: unknown directive '{tokens[0]}'")
        values = _ints(tokens[1:], lineno)
        if len(values) < 3:
            _bad(lineno, "path <part-index> <v1> <v2> ...")
        part, verts = values[0], tuple(values[1:])
        if part in choices:
            raise FormatError(f"line {lineno}: repeated path for part {part}")
        choices[part] = PathChoice(part, verts)
    return Solution.from_choices(choices.values())


def serialize_solution(solution: Solution) -> str:
    out = ["sol 1"]
    for choice in solution.choices:
        out.append(f"path {choice.part} " + " ".join(map(str, choice.vertices)))
    return "\n".join(out) + "\n"


# -- formulas -------------------------------------------------------------------

def parse_formula(text: str) -> Formula:
    # 'c' opens a DIMACS-style comment only at line start
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.strip()
        if not body or body == "c" or body.startswith("c "):
            continue
        lines.append((lineno, body.split()))
    if not lines:
        raise FormatError("empty formula file")
    lineno, header = lines[0]
    if len(header) != 4 or header[0] != "p" or header[1] != "pp13":
        raise FormatError(f"line {lineno}: formula file must start with 'p pp13 <nvars> <nclauses>'")
    nvars, nclauses = _ints(header[2:], lineno)
    clauses = []
    for lineno, tokens in lines[1:]:
        values = _ints(tokens, lineno)
        if len(values) != 4 or values[3] != 0:
            _bad(lineno, "<x> <y> <z> 0")
        triple = values[:3]
        if len(set(triple)) != 3 or not all(1 <= x <= nvars for x in triple):
            raise FormatError(f"line {lineno}: clause needs three distinct variables in 1..{nvars}")
        clauses.append(tuple(sorted(triple)))
    if len(clauses) != nclauses:
        raise FormatError(f"header declares {nclauses} clauses, file has {len(clauses)}")
    return Formula.make(nvars, clauses)


def serialize_formula(formula: Formula) -> str:
    out = [f"p pp13 {formula.nvars} {len(formula.clauses)}"]
    for clause in formula.clauses:
        out.append(" ".join(map(str, clause)) + " 0")
    return "\n".join(out) + "\n"


# -- reduction witnesses --------------------------------------------------------

def serialize_witness(witness: ReductionWitness) -> str:
    out = ["c2pwit 1", f"nvars {witness.nvars}", f"chainlen {witness.chain_len}"]

    def tri(kind: str, head: list[int], t: TriHandle) -> str:
        fields = head + [t.part, t.base, t.left, t.right]
        return f"wit {kind} " + " ".join(map(str, fields))

    for g in witness.gadgets:
        for i, t in enumerate(g.ring):
            out.append(tri("ring", [g.variable, i], t))
        for j, t in enumerate(g.values):
            out.append(tri("value", [g.variable, j], t))
    for cidx, cg in enumerate(witness.clauses):
        q = cg.quad
        fields = [cidx, q.part, q.hub, *q.rim, *q.spokes, *q.outers]
        out.append("wit quad " + " ".join(map(str, fields)))
        for pos, port in enumerate(cg.ports):
            out.append(tri("port", [cidx, pos, cg.variables[pos]], port))
    for chain in witness.chains:
        for k, t in enumerate(chain.links):
            out.append(tri("chain", [chain.clause, chain.position, chain.variable, k], t))
    return "\n".join(out) + "\n"


def parse_witness(text: str) -> ReductionWitness:
    lines = _expect_magic(_lines(text, "#"), ["c2pwit", "1"], "witness")
    nvars: int | None = None
    chain_len: int | None = None
    rings: dict[int, dict[int, TriHandle]] = {}
    values: dict[int, dict[int, TriHandle]] = {}
    quads: dict[int, QuadHandle] = {}
    ports: dict[int, dict[int, tuple[int, TriHandle]]] = {}
    chain_links: dict[tuple[int, int], dict[int, tuple[int, TriHandle]]] = {}

    def take(tokens, count, lineno, shape):
        vals = _ints(tokens, lineno)
        if len(vals) != count:
            _bad(lineno, shape)
        return vals

    for lineno, tokens in lines:
        directive = tokens[0]
        if directive == "nvars":
            (nvars,) = take(tokens[1:], 1, lineno, "nvars <n>")
        elif directive == "chainlen":
            (chain_len,) = take(tokens[1:], 1, lineno, "chainlen <m>")
        elif directive == "wit":
            kind = tokens[1] if len(tokens) > 1 else ""
            rest = tokens[2:]
            if kind == "ring":
                var, i, part, base, left, right = take(rest, 6, lineno, "wit ring ...")
                rings.setdefault(var, {})[i] = TriHandle(part, base, left, right)
            elif kind == "value":
                var, j, part, base, left, right = take(rest, 6, lineno, "wit value ...")
                values.setdefault(var, {})[j] = TriHandle(part, base, left, right)
            elif kind == "quad":
                f = take(rest, 12, lineno, "wit quad ...")
                quads[f[0]] = QuadHandle(f[1], f[2], tuple(f[3:6]), tuple(f[6:9]), tuple(f[9:12]))
            elif kind == "port":
                c, pos, var, part, base, left, right = take(rest, 7, lineno, "wit port ...")
                ports.setdefault(c, {})[pos] = (var, TriHandle(part, base, left, right))
            elif kind == "chain":
                c, pos, var, k, part, base, left, right = take(rest, 8, lineno, "wit chain ...")
                chain_links.setdefault((c, pos), {})[k] = (var, TriHandle(part, base, left, right))
            else:
                raise FormatError(f"line {lineno}: unknown witness kind '{kind}'")
        else:
            raise FormatError(f"line {lineno}: unknown directive '{directive}'")

    if nvars is None or chain_len is None:
        raise FormatError("witness file missing nvars or chainlen header")

    def in_order(d: dict[int, object], what: str) -> list:
        if sorted(d) != list(range(len(d))):
            raise FormatError(f"{what} indices are not consecutive from 0")
        return [d[i] for i in range(len(d))]

    gadgets = []
    for var in range(1, nvars + 1):
        ring = in_order(rings.get(var, {}), f"ring triangles of variable {var}")
        vals = in_order(values.get(var, {}), f"value triangles of variable {var}")
        if not vals or len(ring) != 2 * len(vals):
            raise FormatError(f"variable {var} needs 2n ring and n value triangles")
        gadgets.append(VariableGadget(var, tuple(ring), tuple(vals)))

    nclauses = len(quads)
    if sorted(quads) != list(range(nclauses)):
        raise FormatError("clause indices are not consecutive from 0")
    clause_gadgets = []
    chains = []
    for c in range(nclauses):
        port_list = in_order(ports.get(c, {}), f"ports of clause {c}")
        if len(port_list) != 3:
            raise FormatError(f"clause {c} needs exactly 3 ports")
        variables = tuple(v for v, _ in port_list)
        clause_gadgets.append(ClauseGadget(quads[c], tuple(t for _, t in port_list), variables))
        for pos in range(3):
            link_list = in_order(chain_links.get((c, pos), {}), f"chain links of clause {c} port {pos}")
            if len(link_list) != chain_len:
                raise FormatError(f"chain of clause {c} port {pos} must have {chain_len} links")
            link_vars = {v for v, _ in link_list}
            if link_vars != {variables[pos]}:
                raise FormatError(f"chain of clause {c} port {pos} names the wrong variable")
            chains.append(ChainHandle(c, pos, variables[pos], tuple(t for _, t in link_list)))

    return ReductionWitness(nvars, chain_len, tuple(gadgets), tuple(clause_gadgets), tuple(chains))
