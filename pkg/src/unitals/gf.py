"""Arithmetic in small finite fields GF(p^e).

Elements are encoded as integers in ``range(p**e)``: the base-p digits of the
integer are the coefficients (low degree first) of the residue polynomial
modulo a fixed monic modulus.  The modulus is the lexicographically least
primitive polynomial of degree e over GF(p), found by brute force, so the
residue class of x is always a generator of the multiplicative group.  That
makes discrete-log tables available for multiplication, inversion, powers and
Frobenius maps; addition works digit-wise (XOR when p = 2).

The integer encoding is the fast path used by the geometry code.  The
:class:`FieldElement` wrapper provides operator syntax on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

MAX_FIELD_SIZE = 1 << 20

# Full addition tables are only built for small odd-characteristic fields;
# beyond this size addition falls back to a digit loop.
_ADD_TABLE_LIMIT = 2048


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> tuple[int, int]:
    """Return (p, k) with n = p**k, or raise ValueError."""
    if n < 2:
        raise ValueError(f"{n} is not a prime power")
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{n} is not a prime power")
            return p, k
        p += 1
    return n, 1  # n itself is prime


def _mul_by_x(vec: list[int], mod_low: tuple[int, ...], p: int) -> list[int]:
    """Multiply a residue polynomial by x modulo x^e + ... + mod_low."""
    e = len(vec)
    head = vec[e - 1]
    out = [0] * e
    for i in range(e - 1, 0, -1):
        out[i] = (vec[i - 1] - head * mod_low[i]) % p
    out[0] = (-head * mod_low[0]) % p
    return out


def _x_is_primitive(p: int, e: int, mod_low: tuple[int, ...]) -> bool:
    """True iff x has multiplicative order exactly p^e - 1 mod the candidate.

    Walks the powers of x directly.  Reaching 1 early means a proper divisor
    order; reaching 0 means x is a zero divisor.  Either way: not primitive.
    A full-order x also certifies the modulus irreducible, since a residue
    ring with zero divisors has fewer than p^e - 1 units.
    """
    target = p**e - 1
    one = [1] + [0] * (e - 1)
    if e == 1:
        vec = [(-mod_low[0]) % p]
    else:
        vec = [0] * e
        vec[1] = 1
    if not any(vec):
        return False
    for k in range(1, target + 1):
        if vec == one:
            return k == target
        vec = _mul_by_x(vec, mod_low, p)
    return False


def _find_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least primitive modulus, low-degree coefficients first."""
    for low in product(range(p), repeat=e):
        if low[0] == 0:
            continue  # divisible by x, never primitive
        if _x_is_primitive(p, e, low):
            return tuple(low) + (1,)
    raise ArithmeticError(f"no primitive polynomial of degree {e} over GF({p})")


class Field:
    """GF(p^e) with table-driven arithmetic on int-encoded elements."""

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p**e > MAX_FIELD_SIZE:
            raise ValueError(f"field size {p}^{e} exceeds limit {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus = _find_modulus(p, e)
        self._powers = [p**i for i in range(e)]
        self._build_tables()
        self.zero = 0
        self.one = 1

    def _build_tables(self) -> None:
        p, e, n = self.p, self.e, self.order
        mod_low = self.modulus[:e]
        exp = [0] * (n - 1)
        log = [-1] * n
        vec = [1] + [0] * (e - 1)
        for k in range(n - 1):
            enc = 0
            for i in range(e - 1, -1, -1):
                enc = enc * p + vec[i]
            exp[k] = enc
            log[enc] = k
            vec = _mul_by_x(vec, mod_low, p)
        self._exp = exp
        self._log = log
        if p == 2:
            self._add_table = None
            self._neg_table = None
        else:
            self._neg_table = [self.from_coeffs([(-c) % p for c in self.coeffs(a)]) for a in range(n)]
            if n <= _ADD_TABLE_LIMIT:
                tbl = []
                for a in range(n):
                    ca = self.coeffs(a)
                    row = [0] * n
                    for b in range(n):
                        cb = self.coeffs(b)
                        row[b] = self.from_coeffs([(x + y) % p for x, y in zip(ca, cb)])
                    tbl.append(row)
                self._add_table = tbl
            else:
                self._add_table = None

    # -- encoding ---------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digits of the encoding = polynomial coefficients, low first."""
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.e:
            raise ValueError(f"expected {self.e} coefficients")
        enc = 0
        for c in reversed(cs):
            enc = enc * self.p + (c % self.p)
        return enc

    def scalar(self, n: int) -> int:
        """The prime-field constant n·1."""
        return n % self.p

    # -- raw arithmetic on int encodings ----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        enc = 0
        mul = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            enc += ((ra + rb) % p) * mul
            mul *= p
        return enc

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self._neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[-self._log[a] % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.order - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k > 0:
                return 0
            if k == 0:
                return 1
            raise ZeroDivisionError("negative power of zero")
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ↦ a^(p^k), the k-fold Frobenius automorphism."""
        return self.pow(a, self.p ** (k % self.e))

    def norm_to(self, a: int, d: int) -> int:
        """Relative norm onto the subfield of degree d (d must divide e)."""
        if d < 1 or self.e % d != 0:
            raise ValueError(f"degree {d} does not divide {self.e}")
        return self.pow(a, (self.order - 1) // (self.p**d - 1))

    def subfield(self, d: int) -> frozenset[int]:
        """Elements of the unique subfield GF(p^d), as raw encodings."""
        if d < 1 or self.e % d != 0:
            raise ValueError(f"degree {d} does not divide {self.e}")
        return frozenset(a for a in range(self.order) if self.frobenius(a, d) == a)

    def multiplicative_generator(self) -> int:
        return self._exp[1] if self.order > 2 else 1

    # -- wrapped elements --------------------------------------------------

    def element(self, a: int) -> "FieldElement":
        if not 0 <= a < self.order:
            raise ValueError(f"encoding {a} out of range for GF({self.p}^{self.e})")
        return FieldElement(self, a)

    def elements(self) -> Iterator["FieldElement"]:
        for a in range(self.order):
            yield FieldElement(self, a)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return self is other

    def __hash__(self) -> int:
        return hash((Field, self.p, self.e))


@dataclass(frozen=True)
class FieldElement:
    """Operator-syntax wrapper over a Field's integer encoding."""

    field: Field
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def __bool__(self) -> bool:
        return self.value != 0

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, k))

    def norm_to(self, d: int) -> "FieldElement":
        return FieldElement(self.field, self.field.norm_to(self.value, d))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __repr__(self) -> str:
        return f"{self.field!r}:{self.value}"


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> Field:
    """Shared, immutable Field instance for GF(p^e)."""
    return Field(p, e)


def make_field_of_order(n: int) -> Field:
    p, e = prime_power(n)
    return make_field(p, e)
