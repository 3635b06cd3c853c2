"""Exception hierarchy for vacphase."""


class VacPhaseError(ValueError):
    """Base class for every error raised by this package."""


class NonPositiveIndex(VacPhaseError):
    pass


class EvanescentMode(VacPhaseError):
    """No propagating circular mode: eps1 + eps2 <= 0 or eps1 - eps2 <= 0.

    ``which`` names the failing index, ``"n_plus"`` or ``"n_minus"``.
    """

    def __init__(self, which, value):
        self.which = which
        self.value = value
        sign = "+" if which == "n_plus" else "-"
        super().__init__(
            f"{which} is evanescent: eps1 {sign} eps2 = {value:g} <= 0"
        )


class QuadratureDomain(VacPhaseError):
    pass


class InvalidStep(VacPhaseError):
    pass


class OrthogonalEndpoints(VacPhaseError):
    pass


class StepCount(VacPhaseError):
    pass


class DimensionMismatch(VacPhaseError):
    pass


class NonFinite(VacPhaseError):
    pass


class ConfigInvalid(VacPhaseError):
    """Malformed configuration; ``path`` is the dotted key that failed."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class IoFailure(VacPhaseError):
    pass
