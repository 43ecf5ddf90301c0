"""Integer substrate: primality, factorization, Euler phi, multiplicative order.

Python ints are already arbitrary precision, so a "natural" here is just a
nonnegative ``int``.  Factoring is trial division up to 10**6 followed by
Brent's variant of Pollard rho.
"""
from __future__ import annotations

import json
import logging
import math
import os
import random
import tempfile
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

log = logging.getLogger(__name__)

TRIAL_LIMIT = 10**6

# Deterministic for n < 3.3e24, which covers 2**64.
_SMALL_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_RANDOM_WITNESSES = 64


class DomainError(ValueError):
    """An argument is outside the domain of the operation."""


class FactoringBudgetExceeded(RuntimeError):
    """Factoring ran out of time.

    ``partial`` holds the primes found so far and ``cofactors`` the composite
    pieces nobody managed to split; ``partial.value * prod(cofactors)`` is the
    original input.  ``pieces`` names the algebraic pieces (e.g. ``"Phi_36(5)"``)
    that failed, when the caller split the number first.
    """

    def __init__(self, partial: "Factorization", cofactors: list[int], pieces: list[str] | None = None):
        self.partial = partial
        self.cofactors = sorted(cofactors)
        self.pieces = list(pieces or [])
        where = f" in {', '.join(self.pieces)}" if self.pieces else ""
        super().__init__(f"factoring budget exhausted{where}; unfactored cofactor(s): "
                         + ", ".join(str(c) for c in self.cofactors))

    @property
    def cofactor(self) -> int:
        return math.prod(self.cofactors)


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition, primes strictly increasing."""

    pairs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "Factorization":
        counts: dict[int, int] = {}
        for q in primes:
            counts[q] = counts.get(q, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_dict(cls, counts: dict[int, int]) -> "Factorization":
        return cls(tuple(sorted((q, e) for q, e in counts.items() if e)))

    @property
    def value(self) -> int:
        return math.prod(q**e for q, e in self.pairs)

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.pairs]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def merge(self, other: "Factorization") -> "Factorization":
        counts = self.as_dict()
        for q, e in other.pairs:
            counts[q] = counts.get(q, 0) + e
        return Factorization.from_dict(counts)

    def divisors(self) -> list[int]:
        divs = [1]
        for q, e in self.pairs:
            divs = [d * q**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(str(q) if e == 1 else f"{q}^{e}" for q, e in self.pairs)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise DomainError("negative exponent")
    return pow(base, exp, modulus)


@lru_cache(maxsize=1)
def _sieve(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def small_primes() -> tuple[int, ...]:
    """All primes up to the trial-division limit."""
    return _sieve()


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, seed: int = 0) -> bool:
    """Miller-Rabin.  Exact below 2**64, error < 4**-64 above."""
    if n < 2:
        return False
    for q in _SMALL_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        witnesses: Iterable[int] = _SMALL_WITNESSES
    else:
        rng = random.Random(f"mr:{seed}:{n}")
        witnesses = (rng.randrange(2, n - 1) for _ in range(_RANDOM_WITNESSES))
    return all(_strong_probable_prime(n, a, d, s) for a in witnesses)


def _brent(n: int, rng: random.Random, deadline: float | None) -> int | None:
    """One Brent-rho attempt; returns a nontrivial factor, or None to restart."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        if deadline is not None and time.monotonic() > deadline:
            return None
    if g == n:
        # Overshot; backtrack one step at a time.
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split_composite(n: int, rng: random.Random, deadline: float | None) -> int | None:
    if math.isqrt(n) ** 2 == n:
        return math.isqrt(n)
    while deadline is None or time.monotonic() <= deadline:
        f = _brent(n, rng, deadline)
        if f is not None:
            return f
    return None


def _trial_divide(n: int) -> tuple[list[int], int]:
    found = []
    for q in small_primes():
        if q * q > n:
            break
        if n % q == 0:
            while n % q == 0:
                n //= q
                found.append(q)
    return found, n


def _factor_uncached(n: int, deadline: float | None, seed: int) -> Factorization:
    primes, rest = _trial_divide(n)
    if rest == 1:
        return Factorization.from_primes(primes)
    rng = random.Random(f"rho:{seed}:{n}")
    stack, stuck = [rest], []
    while stack:
        c = stack.pop()
        if c < TRIAL_LIMIT**2 or is_prime(c, seed):
            # Below 10**12 a survivor of trial division to 10**6 is prime.
            primes.append(c)
            continue
        f = _split_composite(c, rng, deadline)
        if f is None:
            stuck.append(c)
        else:
            stack.extend((f, c // f))
    result = Factorization.from_primes(primes)
    if stuck:
        raise FactoringBudgetExceeded(result, stuck)
    return result


class FactorCache:
    """JSON file of known factorizations: ``{"n": [["p", e], ...]}``.

    Entries that fail to parse or do not multiply back to their key are
    dropped with a warning.
    """

    def __init__(self, path: str | os.PathLike | None):
        self.path = os.fspath(path) if path is not None else None
        self._entries: dict[int, Factorization] = {}
        if self.path and os.path.exists(self.path):
            self._load()

    def _load(self) -> None:
        try:
            with open(self.path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable factor cache %s: %s", self.path, exc)
            return
        if not isinstance(raw, dict):
            log.warning("ignoring factor cache %s: top level is not an object", self.path)
            return
        for key, pairs in raw.items():
            try:
                n = int(key)
                fac = Factorization.from_dict({int(q): int(e) for q, e in pairs})
                if fac.value != n or not all(is_prime(q) for q in fac.primes):
                    raise ValueError("factorization does not match key")
            except (TypeError, ValueError) as exc:
                log.warning("ignoring corrupt cache entry %r: %s", key, exc)
                continue
            self._entries[n] = fac

    def get(self, n: int) -> Factorization | None:
        return self._entries.get(n)

    def put(self, n: int, fac: Factorization) -> None:
        if n in self._entries:
            return
        self._entries[n] = fac
        if self.path:
            self._save()

    def _save(self) -> None:
        data = {str(n): [[str(q), e] for q, e in f.pairs] for n, f in sorted(self._entries.items())}
        folder = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=folder, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=0)
        os.replace(tmp, self.path)

    def __len__(self) -> int:
        return len(self._entries)


def factor(n: int, budget: float | None = None, seed: int = 0,
           cache: FactorCache | None = None) -> Factorization:
    """Complete prime factorization of ``n >= 1``.

    ``budget`` is a wall-clock limit in seconds for the rho stage; when it
    runs out, :class:`FactoringBudgetExceeded` carries what was found.
    """
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    if cache is not None:
        hit = cache.get(n)
        if hit is not None:
            return hit
    deadline = None if budget is None else time.monotonic() + budget
    if n < TRIAL_LIMIT**2:
        fac = _factor_small(n)
    else:
        fac = _factor_uncached(n, deadline, seed)
    if cache is not None and n > TRIAL_LIMIT:
        cache.put(n, fac)
    return fac


@lru_cache(maxsize=4096)
def _factor_small(n: int) -> Factorization:
    return _factor_uncached(n, None, 0)


def pk_minus_one_factor(p: int, k: int, budget: float | None = None, seed: int = 0,
                        cache: FactorCache | None = None) -> Factorization:
    """Factor ``p**k - 1`` piecewise through ``p**k - 1 = prod_{d | k} Phi_d(p)``."""
    from .cyclofield import cyclotomic_poly

    if k < 1:
        raise DomainError("k must be positive")
    if cache is not None:
        hit = cache.get(p**k - 1)
        if hit is not None:
            return hit
    deadline = None if budget is None else time.monotonic() + budget
    total = Factorization()
    stuck: list[int] = []
    failed: list[str] = []
    for d in divisors(k):
        piece = cyclotomic_poly(d).evaluate(p)
        remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
        try:
            total = total.merge(factor(piece, remaining, seed, cache))
        except FactoringBudgetExceeded as exc:
            total = total.merge(exc.partial)
            stuck.extend(exc.cofactors)
            failed.append(f"Phi_{d}({p})")
    if stuck:
        raise FactoringBudgetExceeded(total, stuck, failed)
    if cache is not None:
        cache.put(p**k - 1, total)
    return total


def divisors(n: int) -> list[int]:
    return factor(n).divisors()


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"phi undefined for {n}")
    result = n
    for q, _ in factor(n):
        result = result // q * (q - 1)
    return result


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factor(n)) == 1


def multiplicative_order(a: int, n: int, group_order_factorization: Factorization | None = None) -> int:
    """Least ``f >= 1`` with ``a**f == 1 (mod n)``.

    ``group_order_factorization`` must factor a multiple of the order; by
    default that is ``factor(euler_phi(n))``.
    """
    if n < 1:
        raise DomainError("modulus must be positive")
    if math.gcd(a, n) != 1:
        raise DomainError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    if group_order_factorization is None:
        group_order_factorization = factor(euler_phi(n))
    order = group_order_factorization.value
    if pow(a, order, n) != 1:
        raise DomainError(f"{order} is not a multiple of the order of {a} mod {n}")
    for q, e in group_order_factorization:
        for _ in range(e):
            if pow(a, order // q, n) == 1:
                order //= q
            else:
                break
    return order
