"""Best-approximation-preserving Hadamard operators on Hardy spaces."""

__version__ = "0.1.0"
