"""Label combinatorics for blocks, Brauer characters and weights of
finite symplectic groups at odd non-defining primes."""

__version__ = "0.1.0"
