"""Exact scalar arithmetic: prime fields, arbitrary-precision rationals, and
Laurent polynomials with the exponent-negating involution.

Field elements are plain Python values (int residues for F_p, Fraction for
the rationals) manipulated through a field object.  Laurent polynomials are
sparse {exponent: coefficient} dicts that never store a zero coefficient, so
the zero polynomial is the empty dict.  Coefficient growth is unbounded by
design: several witness recursions cube their coefficients at every step, so
fixed-width arithmetic would be a correctness bug, not an optimization.
"""

from __future__ import annotations

from fractions import Fraction


class ScalarError(ValueError):
    """Bad scalar input: unknown field spec, division by zero, ring mismatch."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p with residues kept canonical in [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ScalarError(f"not a prime: {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ScalarError("division by zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def involute(self, a: int) -> int:
        return a

    def parse(self, text: str) -> int:
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(text) % self.p
        except ValueError as exc:
            raise ScalarError(f"bad F{self.p} scalar: {text!r}") from exc

    def to_str(self, a: int) -> str:
        return str(a % self.p)


class RationalField:
    """Q with elements represented as Fraction (always reduced)."""

    kind = "rational"

    def __init__(self):
        self.characteristic = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ScalarError("division by zero")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return a * self.inv(b)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def involute(self, a: Fraction) -> Fraction:
        return a

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad rational scalar: {text!r}") from exc

    def to_str(self, a: Fraction) -> str:
        return str(a)


_FIELDS = {"Q": RationalField(), "F2": PrimeField(2), "F3": PrimeField(3), "F5": PrimeField(5)}


def field_from_spec(spec: str):
    """Resolve a CLI field spec ("F2", "F3", "F5", "Q") to a field object."""
    s = spec.strip()
    if s in _FIELDS:
        return _FIELDS[s]
    if s.startswith("F") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise ScalarError(f"unknown field spec: {spec!r}")


def field_of_characteristic(c: int):
    """Field with the given characteristic: Q for 0, F_p for prime p."""
    if c == 0:
        return _FIELDS["Q"]
    return _FIELDS.get(f"F{c}", None) or PrimeField(c)


def field_arith(field, op: str, x, y=None):
    """Dispatch one field operation by name: add, neg, mul, inv."""
    if op == "add":
        return field.add(x, y)
    if op == "neg":
        return field.neg(x)
    if op == "mul":
        return field.mul(x, y)
    if op == "inv":
        return field.inv(x)
    raise ScalarError(f"unknown field op: {op!r}")


class LaurentRing:
    """K[x, x^-1] over an exact base field, with the involution x -> x^-1.

    Values are sparse dicts {exponent: nonzero coefficient}.  All methods
    return fresh canonical dicts; inputs are never mutated.
    """

    kind = "laurent"

    def __init__(self, field):
        self.field = field
        self.characteristic = field.characteristic
        self.zero = {}
        self.one = {0: field.one}

    def __repr__(self):
        return f"{self.field!r}[x,x^-1]"

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and other.field == self.field

    def __hash__(self):
        return hash(("laurent", self.field))

    def monomial(self, exp: int, coeff=None) -> dict:
        c = self.field.one if coeff is None else coeff
        return {} if self.field.is_zero(c) else {exp: c}

    def x(self) -> dict:
        return self.monomial(1)

    def x_inv(self) -> dict:
        return self.monomial(-1)

    def from_int(self, n: int) -> dict:
        return self.monomial(0, self.field.from_int(n))

    def scalar(self, c) -> dict:
        return self.monomial(0, c)

    def add(self, f: dict, g: dict) -> dict:
        out = dict(f)
        fld = self.field
        for e, c in g.items():
            s = fld.add(out.get(e, fld.zero), c)
            if fld.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def neg(self, f: dict) -> dict:
        fld = self.field
        return {e: fld.neg(c) for e, c in f.items()}

    def sub(self, f: dict, g: dict) -> dict:
        return self.add(f, self.neg(g))

    def mul(self, f: dict, g: dict) -> dict:
        fld = self.field
        out: dict = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                e = e1 + e2
                s = fld.add(out.get(e, fld.zero), fld.mul(c1, c2))
                if fld.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def smul(self, c, f: dict) -> dict:
        fld = self.field
        if fld.is_zero(c):
            return {}
        return {e: fld.mul(c, v) for e, v in f.items()}

    def pow(self, f: dict, n: int) -> dict:
        if n < 0:
            raise ScalarError("negative power of a Laurent polynomial")
        out = self.one
        for _ in range(n):
            out = self.mul(out, f)
        return out

    def involute(self, f: dict) -> dict:
        return {-e: c for e, c in f.items()}

    def is_zero(self, f: dict) -> bool:
        return not f

    def eq(self, f: dict, g: dict) -> bool:
        return f == g

    def to_str(self, f: dict) -> str:
        if not f:
            return "0"
        parts = []
        for e in sorted(f):
            c = f[e]
            cs = self.field.to_str(c)
            if e == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append(f"x^{e}" if e != 1 else "x")
            else:
                parts.append(f"{cs}*x^{e}" if e != 1 else f"{cs}*x")
        return " + ".join(parts)


def laurent_arith(ring: LaurentRing, op: str, f: dict, g: dict = None) -> dict:
    """Dispatch one Laurent ring operation by name: add, mul, neg."""
    if op == "add":
        return ring.add(f, g)
    if op == "mul":
        return ring.mul(f, g)
    if op == "neg":
        return ring.neg(f)
    raise ScalarError(f"unknown laurent op: {op!r}")
