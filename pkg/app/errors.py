class ClusterForgeError(Exception):
    """Base class for every error raised by the engine"""

    exit_code = 2
    http_status = 400


class InvalidInput(ClusterForgeError):
    """Malformed preset, file, object spec, index or shape"""


class VariableCountMismatch(InvalidInput):
    """Two Laurent polynomials live in rings with different variable counts"""


class InvalidQuiver(InvalidInput):
    """Loops, 2-cycles or a non-antisymmetric exchange matrix"""


class PreconditionError(ClusterForgeError):
    """A verifier was called on input outside its hypotheses"""


class NotDivisible(ClusterForgeError):
    """Exact division failed; inside a mutation this violates the Laurent phenomenon"""

    exit_code = 3
    http_status = 422


class BudgetExceeded(ClusterForgeError):
    """Grassmannian enumeration refused because it would exceed the budget"""

    exit_code = 4
    http_status = 422


class NonIntegralInterpolation(ClusterForgeError):
    """Point counts do not interpolate to an integral polynomial"""

    exit_code = 5
    http_status = 422


class InternalInconsistency(ClusterForgeError):
    """Two computations of the same invariant disagree"""

    exit_code = 5
    http_status = 422


class SamplingExhausted(ClusterForgeError):
    """No generic representation found within the attempt budget; retry with another prime or seed"""

    exit_code = 6
    http_status = 503
