"""Number-theory helpers on top of sympy, returning plain ints."""
from functools import lru_cache
from math import gcd
from typing import List

from sympy import divisors as _divisors
from sympy import isprime, n_order, totient
from sympy import mobius as _mobius
from sympy.ntheory import primitive_root as _primitive_root

from .errors import BadParameter


def phi(n: int) -> int:
    return int(totient(int(n)))


def mobius(n: int) -> int:
    if n < 1:
        raise BadParameter(f"mobius needs n >= 1, got {n}")
    return int(_mobius(int(n)))


@lru_cache(maxsize=None)
def divisors(n: int) -> List[int]:
    return [int(x) for x in _divisors(int(n))]


def is_prime(n: int) -> bool:
    return bool(isprime(int(n)))


def is_odd_prime(p: int) -> bool:
    return p > 2 and is_prime(p)


def require_odd_prime(p: int, what: str = "p"):
    if not is_odd_prime(p):
        raise BadParameter(f"{what} must be an odd prime, got {p}")


def order_mod(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise BadParameter(f"{a} is not a unit mod {m}")
    return int(n_order(a, m))


def primitive_root(p: int) -> int:
    """Smallest primitive root mod p."""
    if not is_prime(p):
        raise BadParameter(f"primitive_root needs a prime, got {p}")
    g = int(_primitive_root(p))
    if order_mod(g, p) != p - 1:
        raise BadParameter(f"{g} does not generate (Z/{p}Z)^x")
    return g


def primitive_root_mod_p2(p: int) -> int:
    """Smallest g that generates (Z/p^2 Z)^x, found by checking orders."""
    require_odd_prime(p)
    m = p * p
    target = p * (p - 1)
    for g in range(2, m):
        if g % p and order_mod(g, m) == target:
            return g
    raise BadParameter(f"no primitive root mod {m}")
