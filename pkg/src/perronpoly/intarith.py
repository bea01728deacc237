"""Unbounded-integer primitives: primality, bounded factorization, squarefree status.

Everything here is deterministic. Primality is a strong-pseudoprime test with a
fixed witness set that is exhaustive below 2**64; above that the witnesses are
topped up with a strong Lucas test (Selfridge parameters), for which no
composite passing both tests is known. The intended operating range of the
package is N <= 2**128.

Factorization is budgeted: trial division against a sieved prime table, then
perfect-power extraction, then Brent-cycle rho with a deterministic parameter
schedule. The budget counts rho iterations; when it runs out the unfinished
part is reported as an explicit composite cofactor rather than guessed at.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .errors import InvalidInputError

DEFAULT_BUDGET = 10**6

TRIAL_BOUND = 10**6

# Exhaustive strong-pseudoprime witness set below 2**64 (Sinclair's seven bases).
_WITNESSES_U64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

# Extra rounds used above 2**64, alongside the Lucas check.
_WITNESSES_WIDE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Prime exponents to probe in perfect-power extraction; 127 covers any
# 2**128-scale input since a power with prime exponent above the bit length
# would be below 2.
_POWER_EXPONENTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                    59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127)


@lru_cache(maxsize=None)
def _trial_primes() -> tuple[int, ...]:
    """Primes up to TRIAL_BOUND, sieved once per process."""
    bound = TRIAL_BOUND
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(bound + 1) if sieve[i])


def primes_below(bound: int) -> list[int]:
    """All primes strictly below bound (bound <= TRIAL_BOUND + 1)."""
    if bound > TRIAL_BOUND + 1:
        raise InvalidInputError(f"primes_below supports bounds up to {TRIAL_BOUND + 1}")
    out = []
    for p in _trial_primes():
        if p >= bound:
            break
        out.append(p)
    return out


def _strong_probable_prime(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's method A parameters.

    Assumes n odd, n > 2, not divisible by any prime in _SMALL_PRIMES.
    """
    if _is_square(n):
        return False
    d_param = 5
    while True:
        j = _jacobi(d_param % n, n)
        if j == -1:
            break
        if j == 0 and abs(d_param) % n != 0:
            return False
        d_param = -(d_param + 2) if d_param > 0 else -(d_param - 2)
    p_param = 1
    q_param = (1 - d_param) // 4

    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s

    # Binary ladder for U_d, V_d modulo n.
    u, v = 1, p_param
    qk = q_param % n
    for bit in bin(d)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = p_param * u + v, d_param * u + p_param * v
            if u & 1:
                u += n
            if v & 1:
                v += n
            u = (u >> 1) % n
            v = (v >> 1) % n
            qk = qk * q_param % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality below 2**64; BPSW-style beyond.

    >>> is_prime(2), is_prime(561), is_prime(2**61 - 1)
    (True, False, True)
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < 2**64:
        return all(_strong_probable_prime(n, b) for b in _WITNESSES_U64)
    return all(_strong_probable_prime(n, b) for b in _WITNESSES_WIDE) and _strong_lucas_probable_prime(n)


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2:
        return n
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int]:
    """Largest k with n = r**k; returns (r, k), k = 1 when n is not a power."""
    for k in _POWER_EXPONENTS:
        if k > n.bit_length():
            break
        r = _iroot(n, k)
        if r**k == n:
            r2, k2 = _perfect_power(r)
            return r2, k * k2
    return n, 1


def _brent_rho(n: int, budget: list[int]) -> int | None:
    """One nontrivial factor of odd composite n, or None if the budget dies.

    Deterministic: cycles use x**2 + c with c = 1, 2, 3, ... and start y = 2.
    budget is a single-element mutable cell counting remaining iterations.
    """
    c = 0
    while budget[0] > 0:
        c += 1
        if c % n == 0:
            continue
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        batch = 128
        while g == 1 and budget[0] > 0:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            budget[0] -= r
            k = 0
            while k < r and g == 1 and budget[0] > 0:
                ys = y
                steps = min(batch, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget[0] -= steps
                g = gcd(q, n)
                k += batch
            r *= 2
        if g == 1:
            return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                budget[0] -= 1
                g = gcd(abs(x - ys), n)
            if g == n:
                continue  # degenerate cycle for this c, move on
        return g
    return None


@dataclass(frozen=True)
class Factorization:
    """Partial or complete factorization of a positive integer.

    factors are (prime, exponent) pairs with primes ascending; cofactor is the
    unfactored remainder (1 when complete). prod(p**e) * cofactor == N always.
    """

    factors: tuple[tuple[int, int], ...]
    cofactor: int
    complete: bool

    def value(self) -> int:
        v = self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v

    def exponent(self, q: int) -> int:
        for p, e in self.factors:
            if p == q:
                return e
        return 0


def factorize(n: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Factor n >= 1 within the given rho-iteration budget.

    >>> factorize(604800).factors
    ((2, 7), (3, 3), (5, 2), (7, 1))
    """
    if n < 1:
        raise InvalidInputError(f"factorize requires N >= 1, got {n}")
    if n == 1:
        return Factorization((), 1, True)
    found: dict[int, int] = {}
    rem = n
    for p in _trial_primes():
        if p * p > rem:
            break
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            found[p] = e
    cofactor = 1
    if rem > 1:
        if isqrt(rem) <= TRIAL_BOUND:
            # Trial division left no factor up to sqrt(rem), so rem is prime.
            found[rem] = found.get(rem, 0) + 1
        else:
            cell = [budget]
            cofactor = _factor_hard(rem, found, cell)
    factors = tuple(sorted(found.items()))
    return Factorization(factors, cofactor, cofactor == 1)


def _factor_hard(m: int, found: dict[int, int], cell: list[int]) -> int:
    """Split m (no prime factor <= TRIAL_BOUND) into found; returns the
    product of the pieces still composite when the budget runs out."""
    stack = [(m, 1)]
    leftover = 1
    while stack:
        v, mult = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            found[v] = found.get(v, 0) + mult
            continue
        r, k = _perfect_power(v)
        if k > 1:
            stack.append((r, mult * k))
            continue
        d = _brent_rho(v, cell)
        if d is None:
            leftover *= v**mult
            continue
        stack.append((d, mult))
        stack.append((v // d, mult))
    return leftover


def valuation(q: int, n: int) -> int:
    """Largest e with q**e dividing n. Requires q prime and n nonzero.

    >>> valuation(3, 45)
    2
    """
    if n == 0:
        raise InvalidInputError("valuation is undefined at N = 0")
    if q < 2 or not is_prime(q):
        raise InvalidInputError(f"valuation requires a prime q, got {q}")
    e = 0
    n = abs(n)
    while n % q == 0:
        n //= q
        e += 1
    return e


@dataclass(frozen=True)
class SquarefreeStatus:
    """Outcome of a squarefree test.

    kind is one of "squarefree", "not_squarefree", "unknown". A negative
    verdict carries a prime witness q with q**2 | N; an unknown verdict
    carries the composite cofactor the budget could not finish.
    """

    kind: str
    witness: int | None = None
    cofactor: int | None = None

    @staticmethod
    def squarefree() -> "SquarefreeStatus":
        return SquarefreeStatus("squarefree")

    @staticmethod
    def not_squarefree(witness: int) -> "SquarefreeStatus":
        return SquarefreeStatus("not_squarefree", witness=witness)

    @staticmethod
    def unknown(cofactor: int) -> "SquarefreeStatus":
        return SquarefreeStatus("unknown", cofactor=cofactor)

    @property
    def is_squarefree(self) -> bool:
        return self.kind == "squarefree"

    @property
    def is_decided(self) -> bool:
        return self.kind != "unknown"

    def __str__(self) -> str:
        if self.kind == "squarefree":
            return "Squarefree"
        if self.kind == "not_squarefree":
            return f"NotSquarefree({self.witness})"
        return f"Unknown({self.cofactor})"

    @staticmethod
    def parse(text: str) -> "SquarefreeStatus":
        if text == "Squarefree":
            return SquarefreeStatus.squarefree()
        for tag, ctor in (("NotSquarefree(", SquarefreeStatus.not_squarefree),
                          ("Unknown(", SquarefreeStatus.unknown)):
            if text.startswith(tag) and text.endswith(")"):
                return ctor(int(text[len(tag) : -1]))
        raise InvalidInputError(f"unparseable squarefree status: {text!r}")


def squarefree_status(n: int, budget: int = DEFAULT_BUDGET) -> SquarefreeStatus:
    """Decide whether n >= 1 is squarefree, using certificates cheaper than a
    full factorization when one applies.

    Shortcuts after trial division to TRIAL_BOUND: a prime cofactor is fine; a
    cofactor below TRIAL_BOUND**3 that is neither prime nor a perfect power
    has exactly two distinct prime factors, hence is squarefree; a
    perfect-power cofactor is certainly not squarefree (the witness is any
    prime factor of its root). Only past those does the rho budget matter, so
    an unknown verdict needs a composite, non-power cofactor at or above
    TRIAL_BOUND**3 plus an exhausted budget.
    """
    if n < 1:
        raise InvalidInputError(f"squarefree_status requires N >= 1, got {n}")
    if n == 1:
        return SquarefreeStatus.squarefree()
    rem = n
    for p in _trial_primes():
        if p * p > rem:
            break
        if rem % p == 0:
            rem //= p
            if rem % p == 0:
                return SquarefreeStatus.not_squarefree(p)
    if rem == 1:
        return SquarefreeStatus.squarefree()
    if isqrt(rem) <= TRIAL_BOUND or is_prime(rem):
        return SquarefreeStatus.squarefree()
    root, k = _perfect_power(rem)
    if k >= 2:
        if is_prime(root):
            return SquarefreeStatus.not_squarefree(root)
        cell = [budget]
        found: dict[int, int] = {}
        _factor_hard(root, found, cell)
        if found:
            return SquarefreeStatus.not_squarefree(min(found))
        return SquarefreeStatus.unknown(rem)
    if rem < TRIAL_BOUND**3:
        # Two distinct primes above TRIAL_BOUND; the square case was excluded.
        return SquarefreeStatus.squarefree()
    cell = [budget]
    found = {}
    leftover = _factor_hard(rem, found, cell)
    for q, e in sorted(found.items()):
        if e >= 2:
            return SquarefreeStatus.not_squarefree(q)
    if leftover != 1:
        return SquarefreeStatus.unknown(leftover)
    return SquarefreeStatus.squarefree()
