# utils/exceptions.py

class WorkbenchError(Exception):
    """Base exception for workbench errors."""
    exit_status = 2

    def __init__(self, message="A workbench computation failed", details=None, original_exception=None):
        self.details = details
        self.original_exception = original_exception
        suffix = ""
        if details:
            suffix = f" - {details}"
        elif original_exception is not None:
            suffix = f" - Caused by: {original_exception}"
        super().__init__(f"{message}{suffix}")

class InputValidationError(WorkbenchError):
    """Raised for malformed input files, unknown labels or bad flags."""
    def __init__(self, message="Input validation failed", details=None, original_exception=None):
        super().__init__(message, details, original_exception)

class GuardRailError(WorkbenchError):
    """Raised when a configured size limit would be exceeded."""
    def __init__(self, message="Configured size limit exceeded", details=None, original_exception=None):
        super().__init__(message, details, original_exception)

class InvalidTreeError(WorkbenchError):
    """Raised for trees that violate the tree invariants or an operation's precondition."""
    def __init__(self, message="Invalid tree", details=None, original_exception=None):
        super().__init__(message, details, original_exception)

class LabelCollisionError(InvalidTreeError):
    """Raised when a composition would duplicate a leaf label."""
    def __init__(self, label, details=None):
        self.label = label
        super().__init__(f"Leaf label '{label}' occurs in both trees", details)

class SquareZeroError(WorkbenchError):
    """Raised when a differential does not square to zero."""
    exit_status = 3

    def __init__(self, witness, message="Differential does not square to zero"):
        self.witness = witness
        super().__init__(message, details=str(witness))

class JacobiError(WorkbenchError):
    """Raised when a bracket fails antisymmetry, Jacobi or the Leibniz rule."""
    def __init__(self, message="Bracket is not a graded Lie bracket", witness=None):
        self.witness = witness
        super().__init__(message, details=f"witness {witness}" if witness is not None else None)

class AssociativityError(WorkbenchError):
    """Raised when structure constants are not associative or not unital."""
    def __init__(self, message="Structure constants are not associative", witness=None):
        self.witness = witness
        super().__init__(message, details=f"witness {witness}" if witness is not None else None)

class InfiniteBasisError(WorkbenchError):
    """Raised when a graded piece of a symmetric algebra would be infinite."""
    def __init__(self, generator, details=None):
        self.generator = generator
        super().__init__(f"Graded pieces are infinite because of generator '{generator}'", details)

class DegreeBookkeepingError(WorkbenchError):
    """Raised when degrees cannot place the curvature element in degree +1."""
    def __init__(self, message="Degree bookkeeping failed", details=None):
        super().__init__(message, details)

class PairingError(WorkbenchError):
    """Raised for pairings that are not perfect, not graded symmetric or of the wrong degree."""
    def __init__(self, message="Pairing is not admissible", details=None):
        super().__init__(message, details)

class CertificateError(WorkbenchError):
    """Raised when a computation needs a successful trace certificate."""
    exit_status = 3

    def __init__(self, failing_degree, details=None):
        self.failing_degree = failing_degree
        super().__init__(f"Trace certificate failed at degree {failing_degree}", details)
