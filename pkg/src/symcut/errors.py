"""Exception types shared across the toolkit."""


class GraphError(ValueError):
    """Invalid graph construction or unparseable edge-list input."""


class CapExceededError(RuntimeError):
    """A size or enumeration cap was hit; the result would be incomplete."""

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        msg = f"cap exceeded in {stage}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class GroupNotEnumeratedError(RuntimeError):
    """An operation needed the full element list of a group that has none."""


class BoundViolationError(RuntimeError):
    """Computed entropy exceeded the combined upper bound; indicates a bug."""
