"""Exception types raised across the package."""


class NivatError(ValueError):
    pass


class ZeroDirectionError(NivatError):
    def __init__(self):
        super().__init__("zero direction")


class DegenerateError(NivatError):
    """Raised when an edge query is made on a set whose hull has zero area."""

    def __init__(self, what="set"):
        super().__init__(f"degenerate {what}: convex hull has zero area")


class ExactnessUnavailable(NivatError):
    def __init__(self, source=None):
        msg = "exactness unavailable"
        if source is not None:
            msg += f" for {type(source).__name__} (sampled source)"
        super().__init__(msg)


class PatternNotInLanguage(NivatError):
    def __init__(self):
        super().__init__("pattern not in language")


class ComplexityPreconditionError(NivatError):
    def __init__(self, count, size):
        self.count = count
        self.size = size
        super().__init__(
            f"complexity precondition violated: P = {count} > |U| = {size}"
        )


class NoAnnihilatorError(NivatError):
    def __init__(self, detail=""):
        msg = "no annihilator at this sampling radius"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InfeasibleWindowError(NivatError):
    """The window decomposition system has no solution.

    ``witness`` is a list of ``(point, multiplier)`` pairs: the weighted sum of
    the corresponding constraint rows has zero left-hand side and nonzero
    right-hand side.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            "window not decomposable with these periods "
            f"(unsatisfiable subset of {len(witness)} constraints)"
        )


class NoCandidatesError(NivatError):
    def __init__(self):
        super().__init__("no candidates at this radius")


class ConfigError(NivatError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
