"""Exception types shared across the package."""


class DomainError(ValueError):
    """A request falls outside the model's domain of validity.

    Raised where a quantity makes the underlying expression undefined, e.g.
    asking for the capacity asymptote of a zero-delay-spread channel or for
    an infeasible channel discretization.
    """


class QuantityError(ValueError):
    """A quantity string does not conform to the unit-suffix grammar."""


class SchemaError(ValueError):
    """A CSV file does not conform to its declared table schema."""
