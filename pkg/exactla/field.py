"""
Prime field scalars.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from utils.errors import DimensionMismatchError, WorkbenchError

MAX_PRIME = 2**31


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Trial division; primes stay at desk scale."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p) or p > MAX_PRIME:
        raise WorkbenchError(f"modulus {p!r} is not a prime below 2^31")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class FpScalar:
    """An element of F_p stored as its reduced representative."""

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise DimensionMismatchError(
                    f"moduli differ: {self.modulus} vs {other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def _make(self, value: int) -> FpScalar:
        return FpScalar(value, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inverse(self) -> FpScalar:
        return self._make(inv_mod(self.value, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._make(o).inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._make(pow(self.value, exponent, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def signed(self) -> int:
        """Representative in (-p/2, p/2], used for readable witnesses."""
        return self.value - self.modulus if self.value > self.modulus // 2 else self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"
