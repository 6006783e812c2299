"""Exception and warning types raised across the package."""


class SttiltError(Exception):
    """Base class for all package errors."""

    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class NonAdmissible(SttiltError):
    code = "non_admissible"


class InconsistentPath(SttiltError):
    code = "inconsistent_path"


class Condition1Violated(SttiltError):
    code = "condition1_violated"


class NotTwoTermReducible(SttiltError):
    code = "not_two_term_reducible"


class SplitFailure(SttiltError):
    code = "split_failure"


class CapExceeded(SttiltError):
    code = "cap_exceeded"


class CycleDetected(SttiltError):
    code = "cycle_detected"


class NotLattice(SttiltError):
    code = "not_lattice"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PairingFailed(SttiltError):
    code = "pairing_failed"


class KeyNotRealized(SttiltError):
    code = "key_not_realized"


class NotFound(SttiltError):
    code = "not_found"


class Ambiguous(SttiltError):
    code = "ambiguous"


class InvalidSpec(SttiltError):
    code = "invalid_spec"


class FieldTooSmall(UserWarning):
    """Prime field too small for the trace-form radical test."""
