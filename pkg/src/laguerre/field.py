"""Exact arithmetic in prime fields GF(q), with quadratic-residue tables.

Only prime moduli are supported.  q = 2 is allowed (it is needed as a
negative-test field elsewhere) but carries a ``char2`` flag and offers no
square classes.  Internally every value is a plain int in ``[0, q)``; the
``GF`` object performs all reductions, so values can be shared freely
between workers.
"""

from __future__ import annotations

DEFAULT_MAX_Q = 101

# square-class tags
ZERO = "zero"
SQUARE = "square"
NONSQUARE = "nonsquare"


class FieldError(ValueError):
    """Invalid field construction or an undefined field operation."""

    def __init__(self, message: str, code: str = "field"):
        super().__init__(message)
        self.code = code


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class GF:
    """A prime field GF(q) with precomputed inverse and square-root tables."""

    __slots__ = ("q", "char2", "_inv", "_sqrt", "squares")

    def __init__(self, q: int, max_q: int = DEFAULT_MAX_Q):
        if not isinstance(q, int) or isinstance(q, bool) or not is_prime(q):
            raise FieldError(f"{q!r} is not prime", code="not_prime")
        if q > max_q:
            raise FieldError(f"q={q} exceeds the configured bound {max_q}", code="out_of_range")
        self.q = q
        self.char2 = q == 2
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = pow(a, q - 2, q)
        # one preferred root per square value; tables beat per-call pow()
        self._sqrt: dict[int, int] = {}
        for a in range(q):
            self._sqrt.setdefault(a * a % q, a)
        self.squares = frozenset(a * a % q for a in range(1, q))

    # -- arithmetic on ints -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise FieldError("0 has no inverse", code="div_zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.q

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.q)
        return pow(a % self.q, e, self.q)

    # -- quadratic structure ------------------------------------------------

    def square_class(self, a: int) -> str:
        """Classify ``a`` as zero, a nonzero square, or a nonsquare."""
        if self.char2:
            raise FieldError("no square classes in characteristic 2", code="char2_square_class")
        a %= self.q
        if a == 0:
            return ZERO
        return SQUARE if a in self.squares else NONSQUARE

    def sqrts(self, a: int) -> tuple[int, ...]:
        """All roots of x^2 = a, sorted (0, 1, or 2 of them; 1 in char 2)."""
        a %= self.q
        r = self._sqrt.get(a)
        if r is None:
            return ()
        if r == 0 or self.char2:
            return (r,)
        other = self.q - r
        return (r, other) if r < other else (other, r)

    # -- element factory ----------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


class FieldElement:
    """An element of GF(q); thin operator-overload wrapper over the int API."""

    __slots__ = ("value", "gf")

    def __init__(self, value: int, gf: GF):
        self.value = value % gf.q
        self.gf = gf

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.gf != self.gf:
                raise FieldError("operands belong to different fields", code="field_mismatch")
            return other.value
        return other % self.gf.q

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.gf)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.gf)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.gf)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.gf)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        return FieldElement(self.gf.div(self.value, self._coerce(other)), self.gf)

    def __rtruediv__(self, other):
        return FieldElement(self.gf.div(self._coerce(other), self.value), self.gf)

    def __neg__(self):
        return FieldElement(-self.value, self.gf)

    def __pow__(self, e: int):
        return FieldElement(self.gf.pow(self.value, e), self.gf)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.gf.inv(self.value), self.gf)

    def square_class(self) -> str:
        return self.gf.square_class(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.gf == other.gf and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.gf.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.gf.q, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}"
