"""Exception types shared across the package."""


class CubeTileError(Exception):
    pass


class UsageError(CubeTileError, ValueError):
    """Bad arguments or an operation applied to the wrong kind of instance."""


class ParseError(UsageError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class NotCovered(CubeTileError):
    pass


class AlreadyMember(CubeTileError):
    pass


class NotTiling(CubeTileError):
    pass


class NotMember(CubeTileError):
    pass


class OddPeriod(CubeTileError):
    pass


class HypothesisViolated(CubeTileError):
    pass


class Inconsistent(CubeTileError, RuntimeError):
    """A guarantee that should hold by construction failed; indicates a bug."""


class SearchExhausted(CubeTileError):
    pass
