class GuardExceeded(RuntimeError):
    """An enumeration would exceed the configured size cap."""


class InconsistencyError(RuntimeError):
    """Two computations that must agree did not (a broken invariant)."""


DEFAULT_GUARD = 6561


def check_guard(size, guard, what="enumeration"):
    if guard is not None and size > guard:
        raise GuardExceeded(f"{what} of size {size} exceeds guard {guard}")
