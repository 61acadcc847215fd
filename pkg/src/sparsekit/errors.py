"""Shared exception types."""


class SparsekitError(Exception):
    pass


class GraphInputError(SparsekitError, ValueError):
    """Malformed graph data (bad ids, self-loops, duplicate edges)."""


class EdgeListParseError(GraphInputError):
    def __init__(self, message, line_no):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class FormulaParseError(SparsekitError, ValueError):
    def __init__(self, message, pos):
        super().__init__(f"at position {pos}: {message}")
        self.pos = pos


class FormulaScopeError(SparsekitError, ValueError):
    """A variable is used outside the scope of its quantifier."""


class LocalityError(SparsekitError, ValueError):
    """A formula does not satisfy the syntactic radius restriction."""


class CapabilityError(SparsekitError):
    """Instance exceeds a configured exact-computation cap."""

    def __init__(self, message, cap_name, cap_value):
        super().__init__(message)
        self.cap_name = cap_name
        self.cap_value = cap_value


class PreconditionError(SparsekitError, ValueError):
    """An operation's stated precondition does not hold for the input."""


class StrategyBugError(SparsekitError):
    """A game strategy produced an illegal move."""

    def __init__(self, message, round_no, side):
        super().__init__(f"round {round_no}, {side}: {message}")
        self.round_no = round_no
        self.side = side


class AlgorithmStallError(SparsekitError):
    """An iterative construction failed to make progress where theory says it must."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}
