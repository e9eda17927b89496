"""Exception hierarchy. Every rejection is a ValueError so callers can catch broadly."""


class ZeroSumLabError(ValueError):
    """Base class for every rejected input or unsatisfied hypothesis"""


class ModulusError(ZeroSumLabError):
    pass


class WeightSetError(ZeroSumLabError):
    pass


class ProjectionError(ZeroSumLabError):
    pass


class HypothesisError(ZeroSumLabError):
    """Instance lies outside a theorem's or lemma's hypotheses"""


class UsageError(ZeroSumLabError):
    pass


class UnknownIdentifierError(UsageError):
    pass
