"""Local invariants over the rationals.

Legendre symbols, p-adic valuations, square-class reduction and Hilbert
symbols at every place of Q. Integers are Python ints throughout, so there is
no size limit other than the cost of factoring, which is trial division up to
``settings.trial_division_bound`` followed by Pollard's rho on the cofactor.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from functools import lru_cache

from .config import settings
from .errors import ZeroArgument

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclasses.dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``p=0`` is the real place, otherwise a prime."""

    p: int = 0

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "inf" if self.p == 0 else str(self.p)

    @classmethod
    def parse(cls, text: str) -> Place:
        text = text.strip().lower()
        if text in ("inf", "oo", "infinity", "real", "r"):
            return cls(0)
        p = int(text)
        if not is_prime(p):
            raise ValueError(f"{p} is not a prime")
        return cls(p)


REAL = Place(0)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


@lru_cache(maxsize=65536)
def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    bound = settings.trial_division_bound
    p = 2
    while p * p <= n and p <= bound:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return tuple(sorted(out.items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|``; ``factorize(1) == {}``."""
    if n == 0:
        raise ZeroArgument("cannot factor 0")
    return dict(_factor_positive(abs(n)))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in _factor_positive(abs(n))] if n not in (0, 1, -1) else []


def valuation(a: int | Fraction, p: int) -> int:
    if a == 0:
        raise ZeroArgument("valuation of 0")
    a = Fraction(a)
    v = 0
    num, den = a.numerator, a.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime ``p``, via quadratic reciprocity."""
    if p <= 2 or p % 2 == 0:
        raise ValueError(f"legendre needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    result = 1
    n = p
    # Jacobi-symbol loop; n stays odd and positive
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=65536)
def squarefree_part(n: int) -> int:
    """The squarefree integer in the square class of the nonzero integer ``n``."""
    if n == 0:
        raise ZeroArgument("square class of 0")
    out = -1 if n < 0 else 1
    for p, e in _factor_positive(abs(n)):
        if e % 2:
            out *= p
    return out


def square_class_Q(a: int | Fraction) -> int:
    """Squarefree integer representing ``a`` modulo nonzero rational squares.

    >>> square_class_Q(Fraction(8, 3))
    6
    """
    a = Fraction(a)
    if a == 0:
        raise ZeroArgument("square class of 0")
    return squarefree_part(a.numerator * a.denominator)


def squarefree_mul(a: int, b: int) -> int:
    """Square class of ``a*b`` for squarefree ``a``, ``b`` (no factoring needed)."""
    g = math.gcd(a, b)
    return (a // g) * (b // g)


def _unit_and_val(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return a, v


@lru_cache(maxsize=262144)
def _hilbert_sqfree(a: int, b: int, p: int) -> int:
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    u, alpha = _unit_and_val(a, p)
    w, beta = _unit_and_val(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(w, p)
    return sign


def hilbert(a: int | Fraction, b: int | Fraction, v: Place | int) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals.

    ``v`` is a :class:`Place` or an int (0 for the real place).
    """
    if a == 0 or b == 0:
        raise ZeroArgument("Hilbert symbol of 0")
    p = v.p if isinstance(v, Place) else int(v)
    return _hilbert_sqfree(square_class_Q(a), square_class_Q(b), p)


def relevant_places(*values: int | Fraction) -> list[Place]:
    """Real place, 2, and every prime dividing a numerator or denominator."""
    primes = {2}
    for x in values:
        x = Fraction(x)
        primes.update(prime_divisors(x.numerator))
        primes.update(prime_divisors(x.denominator))
    return [REAL] + [Place(p) for p in sorted(primes)]


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
