class InconsistencyError(RuntimeError):
    """An internal invariant failed: conventions, reality of bilinears or classification."""
