"""Exception hierarchy shared by every service module.

Each error carries a human-readable ``detail`` and the process ``exit_code``
the CLI should use when it escapes to the top level.
"""

USAGE_ERROR = 2
CHECK_FAILURE = 1


class SpinalError(Exception):
    exit_code: int = USAGE_ERROR

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# Input and configuration


class ConfigInvalid(SpinalError):
    pass


class InvalidTuple(ConfigInvalid):
    pass


class UnknownSuite(SpinalError):
    pass


class WordSyntaxError(SpinalError):
    pass


class ContextMismatch(SpinalError):
    pass


# Membership preconditions


class NotInStabilizer(SpinalError):
    pass


class NotInL(NotInStabilizer):
    pass


class NotInDerived(SpinalError):
    pass


class NotNormalized(SpinalError):
    pass


class DepthMismatch(SpinalError):
    pass


class DegreeCap(SpinalError):
    pass


class NotSubgroup(SpinalError):
    pass


class Unreachable(SpinalError):
    pass


# Algorithmic failures (a verification did not go through)


class ReductionFailed(SpinalError):
    exit_code = CHECK_FAILURE


class NormalizationFailed(SpinalError):
    exit_code = CHECK_FAILURE
