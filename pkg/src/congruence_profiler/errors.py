"""Exception hierarchy shared by every stage of the profiler."""

from __future__ import annotations


class CongruenceError(Exception):
    """Base class for all profiler errors."""


class GraphError(CongruenceError):
    pass


class CycleError(GraphError):
    """A combinational loop was found; ``witness`` lists the nodes on it."""

    def __init__(self, witness):
        self.witness = list(witness)
        super().__init__("combinational cycle: " + " -> ".join(self.witness + self.witness[:1]))


class NoConstrainedPathError(GraphError):
    pass


class GraphTooLargeError(GraphError):
    pass


class CapacityError(CongruenceError):
    """Demand for some tile type exceeds what the grid provides."""

    def __init__(self, tile_type, demand, supply):
        self.tile_type = tile_type
        self.demand = demand
        self.supply = supply
        super().__init__(f"capacity exceeded for {tile_type}: need {demand}, grid has {supply}")


class NetlistError(CongruenceError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ArchitectureError(CongruenceError):
    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class TargetNotBelowBaselineError(CongruenceError):
    pass


class GenerationError(CongruenceError):
    pass
