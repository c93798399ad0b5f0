"""Exception types. Each carries a short machine-readable ``code``."""


class AffSchubError(ValueError):
    code = "domain_error"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class ArityError(AffSchubError):
    code = "arity_mismatch"


class NotABijectionError(AffSchubError):
    code = "not_a_bijection"


class ParseError(AffSchubError):
    code = "parse_error"


class LetterRangeError(AffSchubError):
    code = "letter_out_of_range"


class GuardExceededError(AffSchubError):
    code = "guard_exceeded"


class WindowError(AffSchubError):
    code = "window_too_small"


class ShapeError(AffSchubError):
    code = "shape_mismatch"


class NotNilpotentError(AffSchubError):
    code = "not_nilpotent"


class NotReducedError(AffSchubError):
    code = "not_reduced"


class InconsistentRankTableError(AffSchubError):
    code = "negative_multiplicity"


class ConstraintViolationError(AffSchubError):
    code = "constraint_violation"


class ParameterRangeError(AffSchubError):
    code = "parameter_range"


class NotCircularError(AffSchubError):
    code = "not_circular"
