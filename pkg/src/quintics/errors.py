"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an operation receives a structurally invalid input."""


class FieldMismatchError(InputError):
    """Raised when exact values from different coefficient fields are mixed."""


class SamplingError(RuntimeError):
    """Raised when rejection sampling exhausts its attempt budget.

    Over a small prime field the genericity predicates may be unsatisfiable,
    so the sampler gives up after a bounded number of retries instead of
    spinning forever.
    """


class TaxonomyError(AssertionError):
    """Raised when the configuration classifier matches two distinct types.

    The 42 recognized incidence patterns are mutually exclusive; a double
    match signals a bug in the decision tree, not bad user input.
    """
