"""Exception hierarchy shared by every engine."""


class BunkbedError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BunkbedError, ValueError):
    """Malformed input (graph, labels, parameters)."""


class SelfLoop(ValidationError):
    def __init__(self, edge):
        self.edge = tuple(edge)
        super().__init__(f"self-loop {list(self.edge)}")


class DuplicateEdge(ValidationError):
    def __init__(self, edge):
        self.edge = tuple(edge)
        super().__init__(f"duplicate edge {list(self.edge)}")


class LabelOutOfRange(ValidationError):
    def __init__(self, label, n, edge=None):
        self.label = label
        self.n = n
        self.edge = None if edge is None else tuple(edge)
        where = "" if edge is None else f" in edge {list(self.edge)}"
        super().__init__(f"label {label!r} outside 1..{n}{where}")


class InvalidParameters(ValidationError):
    pass


class NotAForest(ValidationError):
    pass


class EmptyH(ValidationError):
    def __init__(self):
        super().__init__("transversal set H must be nonempty")


class DisconnectedTerminals(BunkbedError):
    """u and v lie in different components; both connection probabilities are 0."""

    def __init__(self, u, v):
        self.u, self.v = u, v
        super().__init__(f"terminals {u} and {v} are in different components")


class TooLarge(BunkbedError):
    def __init__(self, bits, cap):
        self.bits, self.cap = bits, cap
        super().__init__(f"enumeration needs 2^{bits} configurations, cap is 2^{cap}")
