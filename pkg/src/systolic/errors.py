"""Exception hierarchy shared by every module."""


class SystolicError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(SystolicError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid fat graph: " + "; ".join(str(v) for v in report.violations))


class UnknownCycleId(SystolicError):
    pass


class DeletingEverything(SystolicError):
    pass


class CycleCapExceeded(SystolicError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"more than {cap} simple cycles; raise the cap to continue")


class NotACycle(SystolicError):
    pass


class MissingLength(SystolicError):
    pass


class NonPositiveLength(SystolicError):
    pass


class NotFourRegular(SystolicError):
    pass


class BadParameter(SystolicError):
    pass


class DomainError(SystolicError, ValueError):
    pass


class InconsistentEqualities(SystolicError):
    pass


class InternalError(SystolicError):
    pass


class ParseError(SystolicError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DanglingSlot(ParseError):
    pass


class MismatchedOccurrenceCounts(ParseError):
    pass
