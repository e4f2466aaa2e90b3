"""Exception hierarchy shared by all modules.

Two broad families matter to callers: structural problems with an input
instance (``InvariantError``, one ``kind`` per rejected invariant) and
usage-level problems such as unparseable files or a solver applied outside
its supported regime. The CLI maps the first family to exit code 3 and the
second to exit code 2.
"""


class C2PError(Exception):
    """Base class for all package-specific errors."""


class InvariantError(C2PError):
    """A structural invariant of an instance does not hold.

    ``kind`` is one of: SelfLoop, DuplicateEdge, AdjacentCrossing,
    DuplicateCrossing, UnknownEdgeInCrossing, PartitionNotCovering,
    CliqueIncomplete. The message cites the first violating element
    (lowest ids).
    """

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class FormatError(C2PError):
    """A text artifact does not follow its line format."""


class PartTooSmall(C2PError):
    """Spanning paths requested for a part with fewer than 2 vertices."""


class HTooLarge(C2PError):
    """The 2-SAT route only covers parts of size at most 3."""


class NotOnePlane(C2PError):
    """Some edge participates in more than one crossing."""

    def __init__(self, edge_id: int):
        super().__init__(f"edge {edge_id} has more than one crossing")
        self.edge_id = edge_id


class ForeignPart(C2PError):
    """A solution references a part index the instance does not have."""


class InvalidAssignment(C2PError):
    """A 2-SAT assignment marks two edges of the same triangle removed."""


class EvenChain(C2PError):
    """Chains transferring a removal side must have odd length."""


class EmptyFormula(C2PError):
    """The reduction needs at least one clause."""


class NotOneInThree(C2PError):
    """An assignment fails to set exactly one variable per clause true."""


class InconsistentGadget(C2PError):
    """Value triangles of one variable gadget disagree on the removed side."""


class TooLarge(C2PError):
    """Brute-force assignment scan refused beyond 24 variables."""


class Underconstrained(C2PError):
    """Formula generation parameters cannot cover every variable."""


class ParamConflict(C2PError):
    """Instance generation parameters are unsatisfiable as requested."""


class CapExceeded(C2PError):
    """Solution enumeration hit its cap before finishing."""
