"""Finite fields F_q, q = p^k.

Elements are plain integers in ``range(q)``: the element with residue
polynomial ``d_0 + d_1 g + ... + d_{k-1} g^{k-1}`` has code
``d_0 + d_1 p + ... + d_{k-1} p^{k-1}``.  Ascending code order is the
canonical enumeration order, so ``0`` and ``1`` are always the first two
elements.  Engines work on codes directly (scalar methods below, or the
``v*`` methods on numpy arrays); :class:`FieldElement` is a thin
operator-overloading wrapper for interactive use.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import FieldMismatch, NoDefaultPoly, NotPrime, ReducibleModPoly, ZeroInverse

# Conway polynomials, coefficients low degree first.
DEFAULT_MODPOLYS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """Return ``(p, k)`` with ``q == p**k`` or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


# -- polynomials over F_p as coefficient lists (low degree first) -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim([c % p for c in poly])
    k = len(poly) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for code in range(p**d):
            divisor = [(code // p**i) % p for i in range(d)] + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


@dataclass(frozen=True)
class Field:
    """The finite field F_{p^k}; build through :func:`field_make` or :func:`GF`."""

    p: int
    k: int = 1
    modpoly: Optional[tuple[int, ...]] = None
    q: int = dc_field(init=False, compare=False)
    _add: np.ndarray = dc_field(init=False, compare=False, repr=False)
    _mul: np.ndarray = dc_field(init=False, compare=False, repr=False)
    _neg: np.ndarray = dc_field(init=False, compare=False, repr=False)
    _inv: np.ndarray = dc_field(init=False, compare=False, repr=False)
    _addl: list = dc_field(init=False, compare=False, repr=False)
    _mull: list = dc_field(init=False, compare=False, repr=False)
    _negl: list = dc_field(init=False, compare=False, repr=False)
    _invl: list = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        q = self.p**self.k
        object.__setattr__(self, "q", q)
        if self.k == 1:
            if self.modpoly is not None:
                object.__setattr__(self, "modpoly", None)
            inv = [0] + [pow(a, self.p - 2, self.p) for a in range(1, q)]
            object.__setattr__(self, "_invl", inv)
            object.__setattr__(self, "_inv", np.array(inv, dtype=np.int64))
            return
        mp = tuple(int(c) % self.p for c in self.modpoly)
        if len(mp) != self.k + 1 or mp[-1] != 1:
            raise ReducibleModPoly(f"modpoly must be monic of degree {self.k}: {self.modpoly}")
        if not is_irreducible(mp, self.p):
            raise ReducibleModPoly(f"{mp} is reducible over F_{self.p}")
        object.__setattr__(self, "modpoly", mp)
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        digits = [[(c // p**i) % p for i in range(k)] for c in range(q)]

        def code(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        add = [[code([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
               for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] += x * y
                r = _poly_mod(prod, self.modpoly, p)
                mul[a][b] = mul[b][a] = code(r + [0] * (k - len(r)))
        neg = [add[a].index(0) for a in range(q)]
        inv = [0] + [mul[a].index(1) for a in range(1, q)]
        for name, val in (("_addl", add), ("_mull", mul), ("_negl", neg), ("_invl", inv)):
            object.__setattr__(self, name, val)
        for name, val in (("_add", add), ("_mul", mul), ("_neg", neg), ("_inv", inv)):
            object.__setattr__(self, name, np.array(val, dtype=np.int64))

    # -- scalar arithmetic on codes -------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._addl[a][b]

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self._addl[a][self._negl[b]]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._negl[a]

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return self._mull[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        return self._invl[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def reduce(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # -- vectorized arithmetic on numpy code arrays ---------------------

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return self._add[a, b]

    def vsub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self._add[a, self._neg[b]]

    def vmul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._mul[a, b]

    def vinv(self, a):
        """Elementwise inverse; maps 0 to 0."""
        return self._inv[a]

    # -- enumeration and conversion ------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.k))

    def from_digits(self, ds: Sequence[int]) -> int:
        if len(ds) != self.k or any(not 0 <= d < self.p for d in ds):
            raise ValueError(f"bad digit vector {ds!r} for F_{self.q}")
        return sum(d * self.p**i for i, d in enumerate(ds))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if self.k == 1:
            return FieldElement(self, int(value) % self.p)
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"code {value} out of range for F_{self.q}")
            return FieldElement(self, value)
        return FieldElement(self, self.from_digits(tuple(value)))

    def name(self) -> str:
        return f"F_{self.q}"


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.name()} vs {other.field.name()}")
            return other.code
        if isinstance(other, int):
            return self.field(other).code
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    @property
    def digits(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.code}"
        ds = self.digits
        terms = []
        for i in reversed(range(len(ds))):
            if ds[i]:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                coef = str(ds[i]) if (ds[i] != 1 or i == 0) else ""
                terms.append(coef + mono)
        return "+".join(terms) or "0"


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1, modpoly: Optional[tuple[int, ...]] = None) -> Field:
    """Validated field F_{p^k}.

    For k > 1 without ``modpoly`` the built-in Conway polynomial is used;
    only q in {4, 8, 9, 16, 25, 27} are tabled.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k > 1 and modpoly is None:
        try:
            modpoly = DEFAULT_MODPOLYS[p**k]
        except KeyError:
            raise NoDefaultPoly(f"no built-in modulus for q={p**k}; pass modpoly") from None
    if modpoly is not None:
        modpoly = tuple(int(c) for c in modpoly)
    return Field(p, k, modpoly if k > 1 else None)


def GF(q: int, modpoly: Optional[Sequence[int]] = None) -> Field:
    """Field of order q (a prime power)."""
    pk = prime_power(q)
    if pk is None:
        raise NotPrime(f"{q} is not a prime power")
    return field_make(pk[0], pk[1], tuple(modpoly) if modpoly is not None else None)


def field_arith(op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    """Dispatch one of add/sub/mul/neg/inv on field elements."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field operation {op!r}")


def field_elements(F: Field) -> list[FieldElement]:
    return F.elements()
