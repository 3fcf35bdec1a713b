"""Exception hierarchy.

Every error belongs to one of three families, which the command-line front
end maps onto exit codes: invalid input (2), a configured resource cap (3),
and a violated structural assumption such as injectivity (4).
"""


class SsFractalError(Exception):
    exit_code = 1


class ValidationError(SsFractalError, ValueError):
    exit_code = 2


class CapExceeded(SsFractalError):
    exit_code = 3


class AssumptionViolated(SsFractalError):
    exit_code = 4


# instance
class WeightOutOfRange(ValidationError):
    pass


class EmptyWeights(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class DensityOverflow(CapExceeded):
    pass


# multiplicity
class ModulusTooLarge(CapExceeded):
    pass


class InstanceTooLarge(CapExceeded):
    pass


# spectrum
class DegenerateModulus(ValidationError):
    pass


class DegenerateDenominator(ValidationError):
    pass


# partition
class SolutionInstanceMismatch(ValidationError):
    pass


class NotACollision(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    pass


class SetsNotFree(ValidationError):
    pass


# hausdorff
class NotInjective(AssumptionViolated):
    pass


class Surjective(AssumptionViolated):
    pass


class NoBoundaryGap(AssumptionViolated):
    pass


class DegenerateSingleFullComponent(AssumptionViolated):
    pass


class OutputTooLarge(CapExceeded):
    pass
