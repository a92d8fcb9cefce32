class PceError(Exception):
    """Base class for every error raised by the library."""


class InvalidArgumentError(PceError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class UnsupportedError(PceError, NotImplementedError):
    """Raised when a family, provider or support cannot perform an operation."""


class DomainError(PceError, ValueError):
    """Raised when points fall outside the support of a polynomial family."""


class BoundaryError(DomainError):
    """Raised when a marginal CDF evaluates to exactly 0 or 1."""

    def __init__(self, coordinate: int) -> None:
        self.coordinate = coordinate
        super().__init__(f"marginal CDF of coordinate {coordinate} hits 0 or 1; Gaussian image is infinite")


class NumericalError(PceError):
    """Base class for numeric failures; the CLI maps these to exit code 1."""


class IllPosedOrthogonalizationError(NumericalError):
    """Raised when the weighted moment matrix is numerically rank deficient."""

    def __init__(self, index: int, multi_index: tuple[int, ...], ratio: float) -> None:
        self.index = index
        self.multi_index = multi_index
        self.ratio = ratio
        super().__init__(
            f"moment matrix is rank deficient at basis function {index} {multi_index} "
            f"(|R_nn|/|R_11| = {ratio:.3e}); use a richer quadrature rule"
        )


class NotPositiveDefiniteError(NumericalError):
    """Raised when a correlation matrix has no Cholesky factor."""

    def __init__(self, message: str) -> None:
        super().__init__(message)


class InfeasibleCorrelationError(NumericalError):
    """Raised when a target correlation cannot be reached for the given marginals."""

    def __init__(self, pair: tuple[int, int], target: float) -> None:
        self.pair = pair
        self.target = target
        super().__init__(f"correlation {target} between variables {pair} is unattainable for these marginals")


class ConvergenceError(NumericalError):
    """Raised when an iterative solve stops before meeting its tolerance."""

    def __init__(self, message: str, residual: float) -> None:
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class UnisolvenceError(NumericalError):
    """Raised when no remaining candidate gives a non-zero LU pivot."""

    def __init__(self, step: int, pivot: float) -> None:
        self.step = step
        self.pivot = pivot
        super().__init__(f"candidate set is not unisolvent: pivot {pivot:.3e} at step {step}")


class DegenerateRuleError(NumericalError):
    """Raised when quadrature weights do not have a positive sum."""


class ZeroDensityError(NumericalError, ZeroDivisionError):
    """Raised when a dominating density vanishes at a quadrature node."""

    def __init__(self, node: int) -> None:
        self.node = node
        super().__init__(f"dominating density is zero at quadrature node {node}")


class SamplingEfficiencyError(NumericalError):
    """Raised when rejection sampling accepts too few proposals."""

    def __init__(self, acceptance_rate: float) -> None:
        self.acceptance_rate = acceptance_rate
        super().__init__(
            f"rejection acceptance rate {acceptance_rate:.2e} is below 1e-4; "
            "the bound is far above the density supremum or the proposal box is too large"
        )


class IntegrationBlowupError(NumericalError):
    """Raised when an ODE state becomes non-finite."""

    def __init__(self, time: float) -> None:
        self.time = time
        super().__init__(f"ODE state became non-finite at t={time:.4g}")


class ResultParseError(PceError, ValueError):
    """Raised when a result CSV cannot be parsed."""

    def __init__(self, path: str, line: int, message: str) -> None:
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
