"""Exception hierarchy shared by every module of the package."""


class DinftyError(Exception):
    """Base class. ``to_json`` gives the machine-readable form used by the CLI."""

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self)}


# order layer

class OrderError(DinftyError):
    pass


class AntisymmetryViolation(OrderError):
    def __init__(self, x, y):
        super().__init__(f"{x!r} <= {y!r} and {y!r} <= {x!r} but {x!r} != {y!r}")
        self.x, self.y = x, y


class TransitivityViolation(OrderError):
    def __init__(self, x, y, z):
        super().__init__(f"{x!r} <= {y!r} <= {z!r} but not {x!r} <= {z!r}")
        self.x, self.y, self.z = x, y, z


class UnknownElement(OrderError, KeyError):
    def __init__(self, x):
        super().__init__(f"unknown element {x!r}")
        self.x = x

    def __str__(self):
        return self.args[0]


class NotACpo(OrderError):
    pass


class SizeLimitExceeded(OrderError):
    def __init__(self, count, limit, level=None):
        where = "" if level is None else f" at level {level}"
        super().__init__(f"enumeration exceeded {limit} elements{where} (reached {count})")
        self.count, self.limit, self.level = count, limit, level


# tower

class TowerError(DinftyError):
    pass


class LevelOutOfRange(TowerError):
    pass


class NonMonotoneRealization(TowerError):
    pass


class TowerMismatch(TowerError):
    pass


# lambda terms and proofs

class LambdaError(DinftyError):
    pass


class ParseError(LambdaError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class InvalidStep(LambdaError):
    def __init__(self, index, previous, current, kind):
        super().__init__(f"step {index} ({kind}) does not relate {previous} and {current}")
        self.index = index
        self.previous, self.current, self.kind = previous, current, kind


class EndpointMismatch(DinftyError):
    pass


class EquationMismatch(LambdaError):
    pass


class InterpretationMismatch(LambdaError):
    def __init__(self, index, term):
        super().__init__(f"chain term {index} ({term}) has a different level-0 interpretation")
        self.index, self.term = index, term


# step paths

class PathError(DinftyError):
    pass


class MalformedPartition(PathError):
    pass


class FaceMismatch(PathError):
    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left, self.right = left, right


# homotopy / groupoid

class NotConnected(DinftyError):
    pass


class GroupoidError(DinftyError):
    pass


class IncompleteTable(GroupoidError):
    pass


class NotComposable(GroupoidError):
    pass
