"""Exact scalar fields: rationals (default) and prime fields GF(p)."""
from __future__ import annotations

from fractions import Fraction


class RationalField:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def to_str(self, x) -> str:
        return str(x)

    def spec(self) -> dict:
        return {"type": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


class _ModP:
    __slots__ = ("v",)
    p = 0

    def __init__(self, v):
        self.v = v % self.p

    def _c(self, o):
        if isinstance(o, _ModP):
            return o.v
        return o

    def __add__(self, o):
        return self.__class__(self.v + self._c(o))

    __radd__ = __add__

    def __sub__(self, o):
        return self.__class__(self.v - self._c(o))

    def __rsub__(self, o):
        return self.__class__(self._c(o) - self.v)

    def __mul__(self, o):
        return self.__class__(self.v * self._c(o))

    __rmul__ = __mul__

    def __neg__(self):
        return self.__class__(-self.v)

    def __truediv__(self, o):
        d = self._c(o) % self.p
        if d == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return self.__class__(self.v * pow(d, -1, self.p))

    def __rtruediv__(self, o):
        return self.__class__(self._c(o)) / self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, _ModP):
            return self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return "%d" % self.v

    def __str__(self):
        return "%d" % self.v


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    def __init__(self, p: int = 10007):
        if not _is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.characteristic = p
        self.element = type("GF%d" % p, (_ModP,), {"p": p, "__slots__": ()})
        self.zero = self.element(0)
        self.one = self.element(1)

    def __call__(self, x):
        if isinstance(x, _ModP):
            return self.element(x.v)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return self.element(x.numerator) / self.element(x.denominator)
        return self.element(int(x))

    def to_str(self, x) -> str:
        return str(x.v)

    def spec(self) -> dict:
        return {"type": "prime", "p": self.characteristic}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return "PrimeField(%d)" % self.characteristic


QQ = RationalField()


def field_from_spec(spec) -> RationalField | PrimeField:
    """Accepts a dict like {"type": "prime", "p": 7} or a string like "prime:7"."""
    if spec is None:
        return QQ
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if isinstance(spec, str):
        if spec == "rational":
            return QQ
        if spec.startswith("prime"):
            _, _, p = spec.partition(":")
            return PrimeField(int(p) if p else 10007)
        raise ValueError("unknown field %r" % spec)
    kind = spec.get("type", "rational")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(int(spec.get("p", 10007)))
    raise ValueError("unknown field type %r" % kind)
