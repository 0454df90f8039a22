class RoothallError(Exception):
    """Base error. `reason` is the stable code printed by the command line."""
    reason = 'error'

    def __init__(self, message: str = ''):
        super().__init__(message or self.reason)


class InconsistentSystemError(RoothallError):
    reason = 'inconsistent'


class InterpolationError(RoothallError):
    reason = 'interpolation failed'

    def __init__(self, reason: str, message: str = ''):
        self.reason = reason
        super().__init__(message or reason)


class RelationsPresentError(RoothallError):
    reason = 'relations present'


class DisconnectedQuiverError(RoothallError):
    reason = 'disconnected quiver'


class BudgetExceededError(RoothallError):
    reason = 'budget exceeded'

    def __init__(self, attempted: int, budget: int, what: str = 'search'):
        self.attempted = attempted
        self.budget = budget
        super().__init__(f"{what} of size {attempted} exceeds budget {budget}")


class FieldStabilityError(RoothallError):
    reason = 'class not field-stable'


class WildTypeError(RoothallError):
    reason = 'wild type refused'


class NotTameError(RoothallError):
    reason = 'not tame'


class NotSourceError(RoothallError):
    reason = 'not a source'


class QuiverParseError(RoothallError):
    reason = 'parse error'

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class UnknownVertexError(QuiverParseError):
    reason = 'unknown vertex'

    def __init__(self, line_number: int, vertex: str):
        self.vertex = vertex
        super().__init__(line_number, f"unknown vertex '{vertex}'")


class CacheCorruptError(RoothallError):
    reason = 'corrupt cache record'


class MissingQuiverFileError(RoothallError):
    reason = 'missing quiver file'
