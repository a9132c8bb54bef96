"""Exact coefficient arithmetic for bracket computations.

Two rings are supported: the integers mod n (n >= 2), and integer Laurent
polynomials in two variables (conventionally ``A`` and ``B``).  Elements are
immutable and hashable, so they can be shared freely and used as multiset
keys.  All arithmetic is exact; Laurent polynomials are kept in a canonical
sparse form with no zero coefficients.
"""
from __future__ import annotations

import re
from math import gcd
from typing import Dict, Iterable, Tuple


class RingMismatchError(ValueError):
    """Raised when combining elements of different rings."""


class NotAUnitError(ValueError):
    """Raised when inverting an element that is not a unit."""


class ModRing:
    """The ring of integers modulo ``n``."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ModRing) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("mod", self.modulus))

    def __repr__(self) -> str:
        return f"ModRing({self.modulus})"

    def element(self, value: int) -> "ModElement":
        return ModElement(self, value % self.modulus)

    def zero(self) -> "ModElement":
        return self.element(0)

    def one(self) -> "ModElement":
        return self.element(1)

    def elements(self) -> Iterable["ModElement"]:
        return (self.element(v) for v in range(self.modulus))

    def units(self) -> Iterable["ModElement"]:
        return (self.element(v) for v in range(1, self.modulus)
                if gcd(v, self.modulus) == 1)

    def parse(self, text: str) -> "ModElement":
        return self.element(int(text))


class ModElement:
    """A residue in ``ModRing``.  Stored reduced to [0, n)."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: ModRing, value: int):
        self.ring = ring
        self.value = value % ring.modulus

    def _check(self, other: "ModElement") -> None:
        if not isinstance(other, ModElement) or other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other: "ModElement") -> "ModElement":
        self._check(other)
        return ModElement(self.ring, self.value + other.value)

    def __sub__(self, other: "ModElement") -> "ModElement":
        self._check(other)
        return ModElement(self.ring, self.value - other.value)

    def __mul__(self, other: "ModElement") -> "ModElement":
        self._check(other)
        return ModElement(self.ring, self.value * other.value)

    def __neg__(self) -> "ModElement":
        return ModElement(self.ring, -self.value)

    def is_unit(self) -> bool:
        return gcd(self.value, self.ring.modulus) == 1

    def inverse(self) -> "ModElement":
        try:
            inv = pow(self.value, -1, self.ring.modulus)
        except ValueError:
            raise NotAUnitError(
                f"{self.value} is not a unit mod {self.ring.modulus}") from None
        return ModElement(self.ring, inv)

    def __pow__(self, k: int) -> "ModElement":
        if k < 0:
            return self.inverse() ** (-k)
        return ModElement(self.ring, pow(self.value, k, self.ring.modulus))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ModElement) and other.ring == self.ring
                and other.value == self.value)

    def __hash__(self) -> int:
        return hash((self.ring, self.value))

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Mod({self.value}, {self.ring.modulus})"


Monomial = Tuple[int, int]  # exponent pair (i, j) for A^i * B^j


class LaurentRing:
    """Integer Laurent polynomials in two variables (default ``A``, ``B``)."""

    def __init__(self, var_a: str = "A", var_b: str = "B"):
        if var_a == var_b:
            raise ValueError("variable names must be distinct")
        self.var_a = var_a
        self.var_b = var_b

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LaurentRing) and other.var_a == self.var_a
                and other.var_b == self.var_b)

    def __hash__(self) -> int:
        return hash(("laurent", self.var_a, self.var_b))

    def __repr__(self) -> str:
        return f"LaurentRing({self.var_a!r}, {self.var_b!r})"

    def element(self, terms: Dict[Monomial, int]) -> "LaurentElement":
        return LaurentElement(self, terms)

    def zero(self) -> "LaurentElement":
        return LaurentElement(self, {})

    def one(self) -> "LaurentElement":
        return LaurentElement(self, {(0, 0): 1})

    def constant(self, c: int) -> "LaurentElement":
        return LaurentElement(self, {(0, 0): c})

    def monomial(self, i: int, j: int, coeff: int = 1) -> "LaurentElement":
        return LaurentElement(self, {(i, j): coeff})

    def gen_a(self) -> "LaurentElement":
        return self.monomial(1, 0)

    def gen_b(self) -> "LaurentElement":
        return self.monomial(0, 1)

    def parse(self, text: str) -> "LaurentElement":
        return parse_laurent(self, text)


class LaurentElement:
    """A sparse Laurent polynomial; ``terms`` maps (i, j) to a nonzero int."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring: LaurentRing, terms: Dict[Monomial, int]):
        self.ring = ring
        cleaned = {m: c for m, c in terms.items() if c != 0}
        self.terms = cleaned
        self._key = tuple(sorted(cleaned.items()))

    def _check(self, other: "LaurentElement") -> None:
        if not isinstance(other, LaurentElement) or other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LaurentElement(self.ring, out)

    def __sub__(self, other: "LaurentElement") -> "LaurentElement":
        return self + (-other)

    def __neg__(self) -> "LaurentElement":
        return LaurentElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "LaurentElement") -> "LaurentElement":
        self._check(other)
        out: Dict[Monomial, int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentElement(self.ring, out)

    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        (_, coeff), = self.terms.items()
        return coeff in (1, -1)

    def inverse(self) -> "LaurentElement":
        if not self.is_unit():
            raise NotAUnitError(f"{self} is not a unit (must be +/- a monomial)")
        ((i, j), coeff), = self.terms.items()
        return LaurentElement(self.ring, {(-i, -j): coeff})

    def __pow__(self, k: int) -> "LaurentElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LaurentElement) and other.ring == self.ring
                and other._key == self._key)

    def __hash__(self) -> int:
        return hash((self.ring, self._key))

    def _format_monomial(self, m: Monomial, coeff: int) -> str:
        i, j = m
        parts = []
        if i == 1:
            parts.append(self.ring.var_a)
        elif i != 0:
            parts.append(f"{self.ring.var_a}^{i}")
        if j == 1:
            parts.append(self.ring.var_b)
        elif j != 0:
            parts.append(f"{self.ring.var_b}^{j}")
        mono = "*".join(parts)
        if not mono:
            return str(abs(coeff))
        if abs(coeff) == 1:
            return mono
        return f"{abs(coeff)}*{mono}"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # exponent-lexicographic, highest first
        items = sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)
        out = []
        for idx, (m, c) in enumerate(items):
            body = self._format_monomial(m, c)
            if idx == 0:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append((" + " if c > 0 else " - ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Laurent({self})"


_MONO_FACTOR = re.compile(r"^([A-Za-z])(?:\^(-?\d+))?$")


def parse_laurent(ring: LaurentRing, text: str) -> LaurentElement:
    """Parse a signed monomial expression such as ``-A^2*B^-1`` or ``3``.

    Bracket files only ever contain units (signed monomials) or small
    integers, so sums are not accepted here.
    """
    s = text.strip().replace(" ", "")
    coeff = 1
    if s.startswith("-"):
        coeff = -1
        s = s[1:]
    elif s.startswith("+"):
        s = s[1:]
    if not s:
        raise ValueError(f"empty Laurent literal in {text!r}")
    if re.fullmatch(r"\d+", s):
        return ring.constant(coeff * int(s))
    i = j = 0
    factors = s.split("*")
    for factor in factors:
        if re.fullmatch(r"\d+", factor):
            coeff *= int(factor)
            continue
        m = _MONO_FACTOR.match(factor)
        if not m:
            raise ValueError(f"cannot parse Laurent factor {factor!r} in {text!r}")
        var, exp = m.group(1), int(m.group(2) or 1)
        if var == ring.var_a:
            i += exp
        elif var == ring.var_b:
            j += exp
        else:
            raise ValueError(f"unknown variable {var!r} in {text!r}")
    return ring.monomial(i, j, coeff)
