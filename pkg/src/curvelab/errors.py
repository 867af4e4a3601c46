"""Exception hierarchy shared by every module."""


class CurvelabError(Exception):
    """Base class for library errors."""


class InvalidArgument(CurvelabError, ValueError):
    pass


class FieldMismatch(InvalidArgument):
    pass


class CharacteristicError(CurvelabError, ValueError):
    """An order r >= char(K) was requested where r < char(K) is required."""


class WorkLimitExceeded(CurvelabError, RuntimeError):
    """A bounded computation hit its work cap; raise the limit and retry."""


class NotOnCurve(InvalidArgument):
    pass


class IrregularPoint(InvalidArgument):
    """The gradients of the complete-intersection pair are dependent here."""


class ReducibleCurve(InvalidArgument):
    pass


class InfiniteIntersection(InvalidArgument):
    """The two curves coincide as point sets."""


class NotIsolated(CurvelabError, RuntimeError):
    """Local quotient dimensions did not stabilize within the truncation cap."""


class FieldTooSmall(InvalidArgument):
    pass
