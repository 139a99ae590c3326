"""Exact scalar arithmetic: the rationals and prime fields F_p.

Field elements are plain Python values (Fraction for Q, int in [0, p) for
F_p); a field object supplies the arithmetic.  Nothing here ever rounds.
"""
from fractions import Fraction


class FieldMismatch(Exception):
    """Raised when two operands live over different fields."""


class NotPrime(ValueError):
    """Raised when F_p is requested for composite or out-of-range p."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface for exact fields."""

    tag = "?"

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag


class RationalField(Field):
    """Q with mixed int/Fraction values: integers stay plain ints (fast
    exact arithmetic); Fractions appear only after genuine division."""

    tag = "Q"

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return int(x) if x.denominator == 1 else x
        if isinstance(x, str):
            fr = Fraction(x)
            return int(fr) if fr.denominator == 1 else fr
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        out = 1 / Fraction(a)
        return int(out) if out.denominator == 1 else out

    def div(self, a, b):
        out = Fraction(a) / Fraction(b)
        return int(out) if out.denominator == 1 else out

    def is_zero(self, a):
        return a == 0

    zero = 0
    one = 1


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or p >= 2 ** 31 or not _is_prime(p):
            raise NotPrime(f"F_p needs a prime p < 2^31, got {p!r}")
        self.p = p
        self.tag = f"F{p}"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/")
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(x) % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1


QQ = RationalField()

_fp_cache: dict = {}


def GF(p: int) -> PrimeField:
    """The prime field F_p (cached)."""
    if p not in _fp_cache:
        _fp_cache[p] = PrimeField(p)
    return _fp_cache[p]


def field_from_json(spec) -> Field:
    if spec == {"type": "Q"}:
        return QQ
    if isinstance(spec, dict) and spec.get("type") == "Fp":
        return GF(spec["p"])
    raise ValueError(f"unknown field spec {spec!r}")


def field_to_json(field: Field):
    if field.tag == "Q":
        return {"type": "Q"}
    return {"type": "Fp", "p": field.p}


def same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatch(f"mixed fields {a} and {b}")
    return a
