"""Exact arithmetic over finite commutative local rings and close relatives.

Four ring families are supported:

* ``Z/p^k``, integers modulo a prime power, stored as least nonnegative
  residues (family ``prime-power-integers``);
* ``Fp[t]/(t^k)``, truncated polynomials, stored as coefficient vectors of
  length exactly ``k`` with entries in ``[0, p)`` (family
  ``truncated-polynomials``);
* finite products of the two local families, the CRT form of ``Z/m``
  (family ``product``);
* ``Z_(p)``, integers localized at a prime, stored as reduced
  :class:`fractions.Fraction` values whose denominator is coprime to ``p``
  (family ``localized-integers``).

Each local family has maximal ideal ``P`` generated by ``p`` (or ``t``) with
``P**k = 0``, so an element is a unit exactly when its residue mod ``P`` is
nonzero.  ``Z_(p)`` is local with ``P = p*Z_(p)`` but not artinian; anything
that enumerates elements raises :class:`~cleanforge.errors.InfiniteRing` for
it.

Ring specs are immutable and hashable; elements are thin immutable wrappers
around a canonical payload.  Enumeration of a finite ring is deterministic:
elements appear in the order of their integer encoding (for ``Fp[t]/(t^k)``
this is ``c0 + c1*p + c2*p**2 + ...``, so ``F2[t]/(t^2)`` enumerates as
``0, 1, t, 1+t``); products enumerate with the first component varying
fastest.

Textual grammar (used by the CLI and the JSON formats):

* ring specs: ``Z/N``, ``Fp[t]/t^k``, ``Zloc(p)``; a composite ``N``
  yields the product of its prime-power parts, sorted by prime;
* elements: decimal integers for ``Z/p^k`` and all-integer products,
  comma-free coefficient strings such as ``1+2*t+t^2`` for truncated
  polynomials, and reduced fractions ``a/b`` for ``Z_(p)``.

Constructors reject ``p**k > 2**31`` and products with more than eight
components so table-driven code paths stay in bounded memory.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import (
    InfiniteRing,
    NotAUnit,
    NotPrime,
    ParseError,
    SpecMismatch,
    UnsupportedFamily,
)

MAX_MODULUS = 2**31
MAX_PRODUCT_COMPONENTS = 8


def is_prime(n: int) -> bool:
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


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


@dataclass(frozen=True)
class ResidueElem:
    """An element of the residue field F_p, canonicalized into [0, p)."""

    p: int
    value: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: "ResidueElem | int") -> "ResidueElem":
        if isinstance(other, int):
            return ResidueElem(self.p, other)
        if other.p != self.p:
            raise SpecMismatch(f"residue fields F_{self.p} and F_{other.p} differ")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return ResidueElem(self.p, self.value + other.value)

    def __sub__(self, other):
        other = self._coerce(other)
        return ResidueElem(self.p, self.value - other.value)

    def __mul__(self, other):
        other = self._coerce(other)
        return ResidueElem(self.p, self.value * other.value)

    def __neg__(self):
        return ResidueElem(self.p, -self.value)

    def inv(self) -> "ResidueElem":
        if self.value == 0:
            raise NotAUnit(f"0 is not invertible in F_{self.p}")
        return ResidueElem(self.p, pow(self.value, -1, self.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)


class RingElem:
    """An element of a :class:`RingSpec`, wrapping a canonical payload."""

    __slots__ = ("spec", "payload")

    def __init__(self, spec: "RingSpec", payload):
        self.spec = spec
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatch(f"elements of {self.spec} and {other.spec} mixed")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElem(self.spec, self.spec._add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElem(
            self.spec, self.spec._add(self.payload, self.spec._neg(other.payload))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElem(self.spec, self.spec._mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.spec, self.spec._neg(self.payload))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self.invert() if n < 0 else self
        result = self.spec.one()
        for _ in range(abs(n)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.spec.from_int(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.spec == other.spec and self.payload == other.payload

    def __hash__(self):
        return hash((self.spec, self.payload))

    def is_zero(self) -> bool:
        return self.payload == self.spec.zero().payload

    def is_unit(self) -> bool:
        return self.spec._is_unit(self.payload)

    def invert(self) -> "RingElem":
        return RingElem(self.spec, self.spec._invert(self.payload))

    def residue(self) -> ResidueElem:
        return ResidueElem(self.spec.residue_char(), self.spec._residue(self.payload))

    def __str__(self) -> str:
        return self.spec.format_payload(self.payload)

    def __repr__(self) -> str:
        return f"<{self} in {self.spec}>"


class RingSpec:
    """Common interface of the ring families."""

    family: str = "?"

    # payload-level arithmetic, provided by each family
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _is_unit(self, a) -> bool:
        raise NotImplementedError

    def _invert(self, a):
        raise NotImplementedError

    def _residue(self, a) -> int:
        raise NotImplementedError

    def _lift(self, r: int):
        raise NotImplementedError

    def residue_char(self) -> int:
        raise UnsupportedFamily(f"{self} has no single residue field")

    def is_finite(self) -> bool:
        return True

    def size(self) -> int:
        raise NotImplementedError

    def name(self) -> str:
        raise NotImplementedError

    def from_int(self, v: int) -> RingElem:
        raise NotImplementedError

    def format_payload(self, a) -> str:
        raise NotImplementedError

    def parse_element(self, s: str) -> RingElem:
        raise NotImplementedError

    def elements(self):
        """Yield every element in the canonical deterministic order."""
        raise NotImplementedError

    def element(self, payload) -> RingElem:
        return RingElem(self, payload)

    def element_at(self, index: int) -> RingElem:
        """Element at a position in the ``elements()`` order, without enumerating."""
        raise NotImplementedError

    def zero(self) -> RingElem:
        return self.from_int(0)

    def one(self) -> RingElem:
        return self.from_int(1)

    def __str__(self) -> str:
        return self.name()


@dataclass(frozen=True)
class PrimePowerIntegers(RingSpec):
    """Z/p^k with least nonnegative residue payloads."""

    p: int
    k: int

    family = "prime-power-integers"

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if self.k < 1:
            raise ParseError(f"nilpotency degree must be >= 1, got {self.k}")
        if self.p**self.k > MAX_MODULUS:
            raise ParseError(f"modulus {self.p}^{self.k} exceeds {MAX_MODULUS}")

    @cached_property
    def modulus(self) -> int:
        return self.p**self.k

    def _add(self, a, b):
        return (a + b) % self.modulus

    def _mul(self, a, b):
        return (a * b) % self.modulus

    def _neg(self, a):
        return -a % self.modulus

    def _is_unit(self, a) -> bool:
        return a % self.p != 0

    def _invert(self, a):
        if a % self.p == 0:
            raise NotAUnit(f"{a} is not a unit in {self}")
        # extended Euclid on the canonical lift
        return pow(a, -1, self.modulus)

    def _residue(self, a) -> int:
        return a % self.p

    def _lift(self, r: int):
        return r % self.p

    def residue_char(self) -> int:
        return self.p

    def size(self) -> int:
        return self.modulus

    def name(self) -> str:
        return f"Z/{self.modulus}"

    def from_int(self, v: int) -> RingElem:
        return RingElem(self, v % self.modulus)

    def format_payload(self, a) -> str:
        return str(a)

    def parse_element(self, s: str) -> RingElem:
        try:
            return self.from_int(int(s.strip()))
        except ValueError:
            raise ParseError(f"bad element {s!r} for {self}") from None

    def elements(self):
        for v in range(self.modulus):
            yield RingElem(self, v)

    def element_at(self, index: int) -> RingElem:
        return RingElem(self, index % self.modulus)


@dataclass(frozen=True)
class TruncatedPolynomials(RingSpec):
    """Fp[t]/(t^k) with fixed-length coefficient-vector payloads."""

    p: int
    k: int

    family = "truncated-polynomials"

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if self.k < 1:
            raise ParseError(f"truncation degree must be >= 1, got {self.k}")
        if self.p**self.k > MAX_MODULUS:
            raise ParseError(f"ring size {self.p}^{self.k} exceeds {MAX_MODULUS}")

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _mul(self, a, b):
        p, k = self.p, self.k
        out = [0] * k
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(k - i):
                out[i + j] = (out[i + j] + x * b[j]) % p
        return tuple(out)

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _is_unit(self, a) -> bool:
        return a[0] != 0

    def _invert(self, a):
        if a[0] == 0:
            raise NotAUnit(f"{self.format_payload(a)} is not a unit in {self}")
        p, k = self.p, self.k
        c0inv = pow(a[0], -1, p)
        # a = c0*(1 - n) with n nilpotent, so 1/a = (1/c0)*(1 + n + n^2 + ...)
        n = tuple(0 if i == 0 else (-c0inv * x) % p for i, x in enumerate(a))
        acc = self._lift(1)
        term = acc
        for _ in range(k - 1):
            term = self._mul(term, n)
            acc = self._add(acc, term)
        return tuple((c0inv * x) % p for x in acc)

    def _residue(self, a) -> int:
        return a[0]

    def _lift(self, r: int):
        return (r % self.p,) + (0,) * (self.k - 1)

    def residue_char(self) -> int:
        return self.p

    def size(self) -> int:
        return self.p**self.k

    def name(self) -> str:
        return f"F{self.p}[t]/t^{self.k}"

    def from_int(self, v: int) -> RingElem:
        return RingElem(self, self._lift(v))

    def from_coeffs(self, coeffs) -> RingElem:
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.k:
            raise ParseError(f"coefficient vector longer than {self.k}")
        cs.extend([0] * (self.k - len(cs)))
        return RingElem(self, tuple(cs))

    def format_payload(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                tpow = "t" if i == 1 else f"t^{i}"
                terms.append(tpow if c == 1 else f"{c}*{tpow}")
        return "+".join(terms) if terms else "0"

    _TERM_RE = re.compile(r"^(?:(\d+)|(?:(\d+)\*)?t(?:\^(\d+))?)$")

    def parse_element(self, s: str) -> RingElem:
        coeffs = [0] * self.k
        body = s.strip()
        if not body:
            raise ParseError(f"empty element string for {self}")
        for term in body.split("+"):
            m = self._TERM_RE.match(term.strip())
            if m is None:
                raise ParseError(f"bad term {term!r} in element {s!r} for {self}")
            const, coef, power = m.groups()
            if const is not None:
                i, c = 0, int(const)
            else:
                i = 1 if power is None else int(power)
                c = 1 if coef is None else int(coef)
            if i >= self.k:
                raise ParseError(f"term {term!r} exceeds t^{self.k - 1} in {self}")
            coeffs[i] = (coeffs[i] + c) % self.p
        return RingElem(self, tuple(coeffs))

    def elements(self):
        p, k = self.p, self.k
        for v in range(p**k):
            yield self.element_at(v)

    def element_at(self, index: int) -> RingElem:
        p, k = self.p, self.k
        x = index % p**k
        digits = []
        for _ in range(k):
            digits.append(x % p)
            x //= p
        return RingElem(self, tuple(digits))


@dataclass(frozen=True)
class ProductRing(RingSpec):
    """A finite product of local components, the CRT form of Z/m."""

    components: tuple

    family = "product"

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) < 2:
            raise ParseError("a product ring needs at least two components")
        if len(comps) > MAX_PRODUCT_COMPONENTS:
            raise ParseError(
                f"a product ring is limited to {MAX_PRODUCT_COMPONENTS} components"
            )
        for c in comps:
            if not isinstance(c, (PrimePowerIntegers, TruncatedPolynomials)):
                raise ParseError(f"unsupported product component {c}")

    @cached_property
    def all_integer(self) -> bool:
        return all(isinstance(c, PrimePowerIntegers) for c in self.components)

    @cached_property
    def modulus(self) -> int:
        if not self.all_integer:
            raise UnsupportedFamily(f"{self} is not an integer product")
        m = 1
        for c in self.components:
            m *= c.modulus
        return m

    def _add(self, a, b):
        return tuple(c._add(x, y) for c, x, y in zip(self.components, a, b))

    def _mul(self, a, b):
        return tuple(c._mul(x, y) for c, x, y in zip(self.components, a, b))

    def _neg(self, a):
        return tuple(c._neg(x) for c, x in zip(self.components, a))

    def _is_unit(self, a) -> bool:
        return all(c._is_unit(x) for c, x in zip(self.components, a))

    def _invert(self, a):
        if not self._is_unit(a):
            raise NotAUnit(f"{self.format_payload(a)} is not a unit in {self}")
        return tuple(c._invert(x) for c, x in zip(self.components, a))

    def _residue(self, a) -> int:
        raise UnsupportedFamily(f"{self} has no single residue field")

    def _lift(self, r: int):
        raise UnsupportedFamily(f"{self} has no single residue field")

    def size(self) -> int:
        n = 1
        for c in self.components:
            n *= c.size()
        return n

    def name(self) -> str:
        if self.all_integer:
            return f"Z/{self.modulus}"
        return " x ".join(c.name() for c in self.components)

    def from_int(self, v: int) -> RingElem:
        return RingElem(self, tuple(c.from_int(v).payload for c in self.components))

    def to_int(self, x: RingElem) -> int:
        """CRT-combine an all-integer product element into [0, m)."""
        m = self.modulus
        total = 0
        for c, a in zip(self.components, x.payload):
            mi = c.modulus
            rest = m // mi
            total += a * rest * pow(rest, -1, mi)
        return total % m

    def format_payload(self, a) -> str:
        if self.all_integer:
            return str(self.to_int(RingElem(self, a)))
        return ";".join(
            c.format_payload(x) for c, x in zip(self.components, a)
        )

    def parse_element(self, s: str) -> RingElem:
        body = s.strip()
        if self.all_integer:
            try:
                return self.from_int(int(body))
            except ValueError:
                raise ParseError(f"bad element {s!r} for {self}") from None
        parts = body.split(";")
        if len(parts) != len(self.components):
            raise ParseError(f"expected {len(self.components)} components in {s!r}")
        return RingElem(
            self,
            tuple(c.parse_element(t).payload for c, t in zip(self.components, parts)),
        )

    def elements(self):
        pools = [[e.payload for e in c.elements()] for c in self.components]
        # first component varies fastest
        for combo in itertools.product(*reversed(pools)):
            yield RingElem(self, tuple(reversed(combo)))

    def element_at(self, index: int) -> RingElem:
        index %= self.size()
        parts = []
        for c in self.components:
            parts.append(c.element_at(index % c.size()).payload)
            index //= c.size()
        return RingElem(self, tuple(parts))


@dataclass(frozen=True)
class LocalizedIntegers(RingSpec):
    """Z_(p): reduced fractions with denominator coprime to p."""

    p: int

    family = "localized-integers"

    def __post_init__(self) -> None:
        _check_prime(self.p)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _is_unit(self, a) -> bool:
        return a.numerator % self.p != 0

    def _invert(self, a):
        if a.numerator % self.p == 0:
            raise NotAUnit(f"{a} is not a unit in {self}")
        return 1 / a

    def _residue(self, a) -> int:
        return a.numerator * pow(a.denominator, -1, self.p) % self.p

    def _lift(self, r: int):
        return Fraction(r % self.p)

    def residue_char(self) -> int:
        return self.p

    def is_finite(self) -> bool:
        return False

    def size(self) -> int:
        raise InfiniteRing(f"{self} is infinite")

    def name(self) -> str:
        return f"Zloc({self.p})"

    def from_int(self, v: int) -> RingElem:
        return RingElem(self, Fraction(v))

    def from_fraction(self, value) -> RingElem:
        fr = Fraction(value)
        if fr.denominator % self.p == 0:
            raise NotAUnit(f"denominator of {fr} is divisible by {self.p}")
        return RingElem(self, fr)

    def format_payload(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse_element(self, s: str) -> RingElem:
        try:
            fr = Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad element {s!r} for {self}") from None
        if fr.denominator % self.p == 0:
            raise ParseError(f"{s!r} has denominator divisible by {self.p}")
        return RingElem(self, fr)

    def elements(self):
        raise InfiniteRing(f"{self} cannot be enumerated")

    def element_at(self, index: int) -> RingElem:
        raise InfiniteRing(f"{self} cannot be enumerated")


def is_unit(x: RingElem) -> bool:
    return x.is_unit()


def invert(x: RingElem) -> RingElem:
    return x.invert()


def residue(x: RingElem) -> ResidueElem:
    return x.residue()


def lift(r: ResidueElem, spec: RingSpec) -> RingElem:
    if r.p != spec.residue_char():
        raise SpecMismatch(f"residue char {r.p} does not match {spec}")
    return RingElem(spec, spec._lift(r.value))


def elements(spec: RingSpec):
    return spec.elements()


def crt_split(x: RingElem) -> tuple:
    """Split a product-ring element into its component elements."""
    spec = x.spec
    if not isinstance(spec, ProductRing):
        raise SpecMismatch(f"crt_split needs a product ring, got {spec}")
    return tuple(RingElem(c, a) for c, a in zip(spec.components, x.payload))


def crt_combine(components, spec: ProductRing | None = None) -> RingElem:
    """Recombine component elements into an element of the product ring."""
    comps = tuple(components)
    if spec is None:
        spec = ProductRing(tuple(c.spec for c in comps))
    if tuple(c.spec for c in comps) != spec.components:
        raise SpecMismatch("component elements do not match the product spec")
    return RingElem(spec, tuple(c.payload for c in comps))


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, sorted by prime."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


_ZMOD_RE = re.compile(r"^Z/(\d+)$")
_TRUNC_RE = re.compile(r"^F(\d+)\[t\]/t\^(\d+)$")
_ZLOC_RE = re.compile(r"^Zloc\((\d+)\)$")


def parse_ring_spec(s: str) -> RingSpec:
    """Parse ``Z/N``, ``Fp[t]/t^k`` or ``Zloc(p)`` into a ring spec."""
    body = s.strip()
    m = _ZMOD_RE.match(body)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ParseError(f"modulus must be >= 2 in {s!r}")
        if n > MAX_MODULUS:
            raise ParseError(f"modulus {n} exceeds {MAX_MODULUS}")
        parts = factorize(n)
        if len(parts) == 1:
            p, k = parts[0]
            return PrimePowerIntegers(p, k)
        return ProductRing(tuple(PrimePowerIntegers(p, k) for p, k in parts))
    m = _TRUNC_RE.match(body)
    if m:
        return TruncatedPolynomials(int(m.group(1)), int(m.group(2)))
    m = _ZLOC_RE.match(body)
    if m:
        return LocalizedIntegers(int(m.group(1)))
    raise ParseError(f"unrecognized ring spec {s!r}")
