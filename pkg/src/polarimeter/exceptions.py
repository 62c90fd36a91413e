class PolarimeterError(Exception):
    """Base class for errors raised by polarimeter."""


class InputError(PolarimeterError, ValueError):
    """An input file is missing or does not match its declared format."""


class DegenerateVarianceError(PolarimeterError, ValueError):
    """Two samples have zero pooled variance but different means."""


class StageError(PolarimeterError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
