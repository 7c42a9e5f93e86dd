"""Exception hierarchy.

Every exception carries a machine-readable ``code`` and the process exit
status the CLI maps it to (1 validation, 2 numerical instability).
"""


class ShilovError(Exception):
    code = "error"
    exit_status = 1


class ValidationError(ShilovError, ValueError):
    code = "validation_error"


class NumericalInstability(ShilovError, ArithmeticError):
    code = "numerical_instability"
    exit_status = 2


class DimensionMismatch(ValidationError):
    code = "dimension_mismatch"


class RankMismatch(DimensionMismatch):
    code = "rank_mismatch"


class NotTripotent(ValidationError):
    code = "not_tripotent"


class SpectrumOutOfRange(NumericalInstability):
    code = "spectrum_out_of_range"


class NonSymmetricInput(ValidationError):
    code = "non_symmetric_input"


class NotBoundary(ValidationError):
    code = "not_boundary"


class NotInGroup(ValidationError):
    code = "not_in_group"


class SingularDenominator(ValidationError):
    code = "singular_denominator"


class NotTransversal(ValidationError):
    code = "not_transversal"


class NotInClosedBall(ValidationError):
    code = "not_in_closed_ball"


class NoConvergence(NumericalInstability):
    code = "no_convergence"


class RankUnstable(NumericalInstability):
    code = "rank_unstable"


class SignatureUnstable(NumericalInstability):
    code = "signature_unstable"


class NotLagrangian(ValidationError):
    code = "not_lagrangian"


class NotSymmetricUnitary(ValidationError):
    code = "not_symmetric_unitary"


class ExtractionRankFailure(NumericalInstability):
    code = "extraction_rank_failure"


class DegenerateFrame(NumericalInstability):
    code = "degenerate_frame"


class Infeasible(ValidationError):
    code = "infeasible"


class NotMonotone(ValidationError):
    code = "not_monotone"


class OutOfRange(ValidationError):
    code = "out_of_range"


class NotIsotropic(ValidationError):
    code = "not_isotropic"


class DegeneratePair(ValidationError):
    code = "degenerate_pair"


class UnknownFlavor(ValidationError):
    code = "unknown_flavor"


class ParseError(ShilovError):
    code = "parse_error"
    exit_status = 3
