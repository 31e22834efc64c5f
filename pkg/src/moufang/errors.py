"""Exception types shared across the package.

Every domain failure derives from :class:`MoufangError`; the CLI maps these to
exit status 1 and prints the class name.
"""


class MoufangError(Exception):
    pass


class DomainError(MoufangError, ValueError):
    """Argument outside the residue window."""


class NotLatin(MoufangError):
    pass


class NoIdentity(MoufangError):
    pass


class NotNormal(MoufangError):
    pass


class NotMoufang(MoufangError):
    pass


class InvalidParams(MoufangError):
    pass


class OrderMismatch(MoufangError):
    pass


class NotALoop(MoufangError):
    pass


class ActionMismatch(MoufangError):
    pass


class CdegTooHigh(MoufangError):
    pass


class DeltaNotQuadratic(MoufangError):
    pass


class NotApplicable(MoufangError):
    pass


class ConstructionFailed(MoufangError):
    pass


class NotAGroup(MoufangError):
    pass


class InvalidData(MoufangError):
    pass


class UnknownName(MoufangError):
    pass


class EnumerationOverflow(MoufangError):
    pass


class ParseError(MoufangError):
    pass
