"""Random binomial ideals, Groebner complexity labels, and models that
predict them."""

__version__ = "0.1.0"
