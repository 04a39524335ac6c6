"""Exact scalar fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values, so ordinary Python
arithmetic applies.  Elements of F_p are :class:`FpElement` instances bound
to a :class:`PrimeField`.  Both field kinds expose the same small surface
(coercion, zero/one, inverse, sampling, JSON scalars) so the linear algebra
and geometry layers never need to know which one they are working over.
"""

from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction
from typing import Any, Iterable

from .errors import PreconditionError

DEFAULT_BOUND = 1000
DEFAULT_PRIME = 101
LIAISON_PRIME = 11


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % k for k in range(3, math.isqrt(n) + 1, 2))


class RationalField:
    """The field Q, with elements represented as ``Fraction``."""

    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, FpElement):
            raise TypeError("cannot coerce an F_p element into Q")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def inverse(self, a) -> Fraction:
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def sample(self, rs: "RandomSource", n: int) -> list[Fraction]:
        if n < 1:
            raise PreconditionError("sample size must be positive")
        return [Fraction(rs.randint(-rs.bound, rs.bound)) for _ in range(n)]

    def tag(self):
        return "Q"

    def to_json(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def from_json(self, s) -> Fraction:
        if isinstance(s, bool):
            raise ValueError("boolean is not a rational scalar")
        if isinstance(s, (int, str)):
            return Fraction(s)
        raise ValueError(f"bad rational scalar {s!r}")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """The prime field F_p.  Construction rejects composite moduli."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise PreconditionError(f"F_p requires a prime modulus, got {p!r}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    def __call__(self, x) -> "FpElement":
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise TypeError(f"element of F_{x.p} used in F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, str):
            return self(Fraction(x))
        return FpElement(int(x), self.p)

    @property
    def zero(self) -> "FpElement":
        return FpElement(0, self.p)

    @property
    def one(self) -> "FpElement":
        return FpElement(1, self.p)

    def inverse(self, a) -> "FpElement":
        return self.one / self(a)

    def sample(self, rs: "RandomSource", n: int) -> list["FpElement"]:
        if n < 1:
            raise PreconditionError("sample size must be positive")
        return [FpElement(rs.randrange(self.p), self.p) for _ in range(n)]

    def tag(self):
        return {"Fp": self.p}

    def to_json(self, a) -> int:
        return self(a).value

    def from_json(self, s) -> "FpElement":
        if isinstance(s, bool) or not isinstance(s, (int, str)):
            raise ValueError(f"bad F_p scalar {s!r}")
        return self(int(s)) if isinstance(s, int) else self(s)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class FpElement:
    """Immutable residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise TypeError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"division by zero in F_{self.p}")
            return FpElement(pow(pow(self.value, -1, self.p), -e, self.p), self.p)
        return FpElement(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


Field = RationalField | PrimeField


def inverse(a):
    """Multiplicative inverse of a field element; zero raises ``ZeroDivisionError``."""
    return field_of(a).inverse(a)


def field_of(a) -> Field:
    if isinstance(a, FpElement):
        return PrimeField(a.p)
    if isinstance(a, (Fraction, int)):
        return QQ
    raise TypeError(f"not a field element: {a!r}")


def parse_field(spec: Any) -> Field:
    """Accept ``"Q"``, ``{"Fp": p}``, ``"Fp:p"`` or a field instance."""
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if spec == "Q" or spec is None:
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return PrimeField(int(spec["Fp"]))
    if isinstance(spec, str) and spec.startswith("Fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unrecognised field {spec!r}")


def derive_seed(master: int, *labels: Any) -> int:
    """Split a master seed into an independent 64-bit child seed.

    The child is the first eight bytes (big endian) of
    ``sha256("master:label1:label2:...")``.
    """
    text = ":".join([str(master), *map(str, labels)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


class RandomSource:
    """Seeded sampler for "general" coordinates.

    Over Q, samples are integers uniform in ``[-bound, bound]``; over F_p they
    are uniform residues.  Identical seeds give identical streams.
    """

    def __init__(self, seed: int = 0, bound: int = DEFAULT_BOUND):
        if bound < 1:
            raise PreconditionError("bound must be positive")
        self.seed = int(seed) & ((1 << 64) - 1)
        self.bound = bound
        self._rng = random.Random(self.seed)

    def randint(self, a: int, b: int) -> int:
        return self._rng.randint(a, b)

    def randrange(self, n: int) -> int:
        return self._rng.randrange(n)

    def choice(self, seq):
        return self._rng.choice(seq)

    def shuffle(self, seq: list) -> None:
        self._rng.shuffle(seq)

    def sample(self, field: Field, n: int) -> list:
        return field.sample(self, n)

    def nonzero(self, field: Field):
        while True:
            (x,) = field.sample(self, 1)
            if x != 0:
                return x

    def child(self, *labels) -> "RandomSource":
        return RandomSource(derive_seed(self.seed, *labels), self.bound)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, bound={self.bound})"


def sample(rs: RandomSource, n: int, field: Field = QQ) -> list:
    return field.sample(rs, n)


def scalars_to_json(field: Field, values: Iterable) -> list:
    return [field.to_json(v) for v in values]


def scalars_from_json(field: Field, values: Iterable) -> list:
    return [field.from_json(v) for v in values]
