"""The global arithmetic frame (p, f, q, ell, e, epsilon).

Every enumeration in the package is driven by one of these contexts.
e is the multiplicative order of q^2 modulo ell; epsilon records whether
ell divides q^e - 1 (linear, +1) or q^e + 1 (unitary, -1).
"""

from dataclasses import dataclass, field

from .gf import GF, get_field, is_prime


def order_mod(a, m):
    """Minimal k >= 1 with a^k = 1 mod m (m prime, a invertible mod m)."""
    assert is_prime(m), f"modulus {m} is not prime"
    a %= m
    if a == 0:
        raise ValueError("a must be invertible modulo m")
    k, x = 1, a
    while x != 1:
        x = (x * a) % m
        k += 1
    return k


@dataclass(frozen=True)
class FieldContext:
    p: int
    f: int
    q: int
    ell: int
    e: int
    epsilon: int
    gf: GF = field(compare=False, repr=False, hash=False)

    @property
    def mode(self):
        """Symbol core/quotient mode: hooks for linear primes, cohooks for unitary."""
        return "hook" if self.epsilon == 1 else "cohook"


def make_context(p, f, ell):
    """Validate (p, f, ell) and derive q, e and epsilon."""
    if not is_prime(p) or p % 2 == 0:
        raise ValueError(f"p = {p} must be an odd prime")
    if f < 1:
        raise ValueError(f"f = {f} must be a positive integer")
    if not is_prime(ell) or ell % 2 == 0:
        raise ValueError(f"ell = {ell} must be an odd prime")
    if ell == p:
        raise ValueError("ell must differ from p")
    q = p ** f
    e = order_mod(q * q % ell, ell)
    if (pow(q, e, ell) - 1) % ell == 0:
        epsilon = 1
    else:
        assert (pow(q, e, ell) + 1) % ell == 0
        epsilon = -1
    return FieldContext(p=p, f=f, q=q, ell=ell, e=e, epsilon=epsilon,
                        gf=get_field(p, f))
