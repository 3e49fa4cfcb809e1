"""Univariate polynomials over the supported rings and their residue fields.

Polynomials are stored as coefficient tuples, constant term first, with no
trailing zeros; the zero polynomial has an empty coefficient tuple and degree
``-1``.  :class:`Poly` carries ring coefficients, :class:`ResiduePoly` carries
``F_p`` coefficients as plain integers in ``[0, p)``.

Division is only defined for monic divisors over a ring (synthetic division
needs no inversions then) and for arbitrary nonzero divisors over a residue
field.  Residue factorization is done by exhaustive trial division over monic
candidate divisors in increasing degree, so the factor search doubles as an
irreducibility certificate for every factor it emits.

Deterministic orders used throughout: monic polynomials of fixed degree
enumerate by the integer encoding of their coefficient vector (constant
term least significant); factor lists sort by degree, then by coefficients
read from the leading term down.
"""

from __future__ import annotations

import re

from .errors import (
    BoundExceeded,
    NotAUnit,
    NotCoprime,
    NotMonic,
    ParseError,
    SpecMismatch,
    UnsupportedFamily,
)
from .rings import ProductRing, RingElem, RingSpec
from .workbound import work_bound

FACTOR_MAX_DEGREE = 8
FACTOR_MAX_CHAR = 13


def _trim(coeffs, is_zero):
    n = len(coeffs)
    while n > 0 and is_zero(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """A polynomial with coefficients in one ring spec."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: RingSpec, coeffs=()):
        self.spec = spec
        self.coeffs = _trim(tuple(coeffs), lambda c: c.is_zero())

    @classmethod
    def from_ints(cls, spec: RingSpec, ints) -> "Poly":
        return cls(spec, [spec.from_int(v) for v in ints])

    @classmethod
    def zero(cls, spec: RingSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: RingSpec) -> "Poly":
        return cls(spec, (spec.one(),))

    @classmethod
    def x(cls, spec: RingSpec) -> "Poly":
        return cls(spec, (spec.zero(), spec.one()))

    @classmethod
    def x_pow(cls, spec: RingSpec, m: int) -> "Poly":
        return cls(spec, (spec.zero(),) * m + (spec.one(),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one()

    def leading(self) -> RingElem:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> RingElem:
        return self.coeffs[i] if i < len(self.coeffs) else self.spec.zero()

    def _check(self, other: "Poly") -> None:
        if self.spec != other.spec:
            raise SpecMismatch(f"polynomials over {self.spec} and {other.spec} mixed")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.spec, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.spec, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.spec)
        zero = self.spec.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.spec, out)

    def scale(self, c: RingElem) -> "Poly":
        return Poly(self.spec, [c * a for a in self.coeffs])

    def shift(self, m: int) -> "Poly":
        """Multiply by X^m."""
        if self.is_zero():
            return self
        return Poly(self.spec, (self.spec.zero(),) * m + self.coeffs)

    def __call__(self, x: RingElem) -> RingElem:
        acc = self.spec.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"<{self} over {self.spec}>"


def divmod_monic(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Divide by a monic polynomial; returns (quotient, remainder)."""
    f._check(g)
    if not g.is_monic():
        raise NotMonic(f"divisor {g} is not monic")
    dg = g.degree
    rem = list(f.coeffs)
    if len(rem) - 1 < dg:
        return Poly.zero(f.spec), f
    quot = [f.spec.zero()] * (len(rem) - dg)
    for i in range(len(rem) - dg - 1, -1, -1):
        c = rem[i + dg]
        if c.is_zero():
            continue
        quot[i] = c
        for j, b in enumerate(g.coeffs):
            rem[i + j] = rem[i + j] - c * b
    return Poly(f.spec, quot), Poly(f.spec, rem[:dg])


class ResiduePoly:
    """A polynomial over F_p with plain-integer coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        self.p = p
        self.coeffs = _trim(tuple(c % p for c in coeffs), lambda c: c == 0)

    @classmethod
    def zero(cls, p: int) -> "ResiduePoly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "ResiduePoly":
        return cls(p, (1,))

    @classmethod
    def x_pow(cls, p: int, m: int) -> "ResiduePoly":
        return cls(p, (0,) * m + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def _check(self, other: "ResiduePoly") -> None:
        if self.p != other.p:
            raise SpecMismatch(f"residue polynomials over F_{self.p} and F_{other.p}")

    def __add__(self, other: "ResiduePoly") -> "ResiduePoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return ResiduePoly(self.p, out)

    def __sub__(self, other: "ResiduePoly") -> "ResiduePoly":
        return self + (-other)

    def __neg__(self) -> "ResiduePoly":
        return ResiduePoly(self.p, [-c % self.p for c in self.coeffs])

    def __mul__(self, other: "ResiduePoly") -> "ResiduePoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return ResiduePoly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return ResiduePoly(self.p, out)

    def __divmod__(self, other: "ResiduePoly") -> tuple["ResiduePoly", "ResiduePoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("residue polynomial division by zero")
        p = self.p
        dg = other.degree
        inv_lead = pow(other.coeffs[-1], -1, p)
        rem = list(self.coeffs)
        if len(rem) - 1 < dg:
            return ResiduePoly.zero(p), self
        quot = [0] * (len(rem) - dg)
        for i in range(len(rem) - dg - 1, -1, -1):
            c = rem[i + dg] * inv_lead % p
            if c == 0:
                continue
            quot[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] = (rem[i + j] - c * b) % p
        return ResiduePoly(p, quot), ResiduePoly(p, rem[:dg])

    def __mod__(self, other: "ResiduePoly") -> "ResiduePoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "ResiduePoly") -> "ResiduePoly":
        return divmod(self, other)[0]

    def divides(self, other: "ResiduePoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "ResiduePoly":
        if self.is_zero() or self.is_monic():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return ResiduePoly(self.p, [c * inv for c in self.coeffs])

    def scale(self, c: int) -> "ResiduePoly":
        return ResiduePoly(self.p, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "ResiduePoly":
        result = ResiduePoly.one(self.p)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __eq__(self, other):
        if not isinstance(other, ResiduePoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return format_residue_poly(self)

    def __repr__(self) -> str:
        return f"<{self} over F_{self.p}>"


def reduce_mod_p(f: Poly) -> ResiduePoly:
    """Reduce a polynomial over a local family to its residue image."""
    if isinstance(f.spec, ProductRing):
        raise UnsupportedFamily(f"{f.spec} has no single residue field")
    p = f.spec.residue_char()
    return ResiduePoly(p, [f.spec._residue(c.payload) for c in f.coeffs])


def monic_residue_polys(p: int, degree: int):
    """Yield all monic degree-``degree`` polynomials over F_p.

    Order: integer encoding of the coefficient vector, constant term least
    significant.
    """
    if degree == 0:
        yield ResiduePoly.one(p)
        return
    for v in range(p**degree):
        digits = []
        x = v
        for _ in range(degree):
            digits.append(x % p)
            x //= p
        yield ResiduePoly(p, digits + [1])


def monic_polys(spec: RingSpec, degree: int):
    """Yield all monic degree-``degree`` polynomials over a finite ring.

    Same order convention as :func:`monic_residue_polys`.
    """
    size = spec.size()
    pool = [e for e in spec.elements()]
    one = spec.one()
    if degree == 0:
        yield Poly(spec, (one,))
        return
    for v in range(size**degree):
        digits = []
        x = v
        for _ in range(degree):
            digits.append(pool[x % size])
            x //= size
        digits.append(one)
        yield Poly(spec, digits)


def is_irreducible_residue(f: ResiduePoly) -> bool:
    """Trial-division irreducibility test for a monic residue polynomial."""
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for q in monic_residue_polys(f.p, d):
            if q.divides(f):
                return False
    return True


def factor_residue(
    fbar: ResiduePoly,
    max_degree: int = FACTOR_MAX_DEGREE,
    max_char: int = FACTOR_MAX_CHAR,
) -> list[tuple[ResiduePoly, int]]:
    """Factor a monic residue polynomial into monic irreducible powers.

    Exhaustive trial division over monic candidate divisors in increasing
    degree; every emitted factor is re-certified irreducible the same way.
    The returned list is sorted by degree, then by coefficients from the
    leading term down, and its expansion equals the input.
    """
    if not fbar.is_monic():
        raise NotMonic(f"{fbar} is not monic")
    p = fbar.p
    if fbar.degree > max_degree or p > max_char:
        raise BoundExceeded(
            f"factor_residue limited to degree {max_degree} and p <= {max_char}"
        )
    if p ** (fbar.degree // 2) > work_bound():
        raise BoundExceeded(
            f"trial division over F_{p} up to degree {fbar.degree // 2} "
            f"exceeds the work bound"
        )
    factors: list[tuple[ResiduePoly, int]] = []
    rem = fbar
    while rem.degree > 0:
        found = None
        for d in range(1, rem.degree // 2 + 1):
            for q in monic_residue_polys(p, d):
                if q.divides(rem):
                    found = q
                    break
            if found is not None:
                break
        if found is None:
            found = rem
        if not is_irreducible_residue(found):
            raise BoundExceeded(f"factor search returned reducible {found}")
        mult = 0
        while found.divides(rem):
            rem = rem // found
            mult += 1
        factors.append((found, mult))
    factors.sort(key=lambda fm: fm[0].sort_key())
    return factors


def residue_gcd(g: ResiduePoly, h: ResiduePoly) -> ResiduePoly:
    g._check(h)
    a, b = g, h
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd_residue(
    g: ResiduePoly, h: ResiduePoly
) -> tuple[ResiduePoly, ResiduePoly, ResiduePoly]:
    """Extended gcd over F_p[X]; returns monic ``d`` and ``(u, v)``.

    ``u*g + v*h = d`` with ``deg u < deg h - deg d`` and
    ``deg v < deg g - deg d`` whenever neither input divides the other.
    When one divides the other the pair is ``(lc**-1, 0)`` or ``(0, lc**-1)``
    with the unit coefficient on the divisor.
    """
    g._check(h)
    p = g.p
    if g.is_zero() and h.is_zero():
        raise ParseError("xgcd of two zero polynomials is undefined")
    if g.is_zero():
        inv = pow(h.coeffs[-1], -1, p)
        return h.monic(), ResiduePoly.zero(p), ResiduePoly(p, (inv,))
    if h.is_zero():
        inv = pow(g.coeffs[-1], -1, p)
        return g.monic(), ResiduePoly(p, (inv,)), ResiduePoly.zero(p)
    if (h % g).is_zero():
        inv = pow(g.coeffs[-1], -1, p)
        return g.monic(), ResiduePoly(p, (inv,)), ResiduePoly.zero(p)
    if (g % h).is_zero():
        inv = pow(h.coeffs[-1], -1, p)
        return h.monic(), ResiduePoly.zero(p), ResiduePoly(p, (inv,))
    r0, r1 = g, h
    s0, s1 = ResiduePoly.one(p), ResiduePoly.zero(p)
    t0, t1 = ResiduePoly.zero(p), ResiduePoly.one(p)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = pow(r0.coeffs[-1], -1, p)
    d = r0.scale(inv)
    u = s0.scale(inv)
    # reduce u modulo h/d, then recover v by exact division
    u = u % (h // d)
    num = d - u * g
    v, check = divmod(num, h)
    if not check.is_zero():
        raise NotCoprime(f"internal xgcd reduction failed for {g} and {h}")
    return d, u, v


def scale_substitute(f: Poly, a: RingElem) -> Poly:
    """Return ``g`` with ``g(Y) = a**(-n) * f(a*Y)``; ``g`` is monic again.

    ``b`` is a root of ``g`` exactly when ``a*b`` is a root of ``f``.
    """
    if f.spec != a.spec:
        raise SpecMismatch(f"polynomial over {f.spec} scaled by element of {a.spec}")
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if not a.is_unit():
        raise NotAUnit(f"{a} is not a unit in {a.spec}")
    n = f.degree
    ainv = a.invert()
    out = []
    power = a.spec.one()  # ainv ** (n - i), built from i = n downward
    scaled = [None] * (n + 1)
    for i in range(n, -1, -1):
        scaled[i] = f.coeffs[i] * power
        power = power * ainv
    return Poly(f.spec, scaled)


_OPERATOR_CHARS = set("+-*/;")


def _format_terms(coeff_strs, skip, one_str, var):
    terms = []
    deg = len(coeff_strs) - 1
    for i in range(deg, -1, -1):
        s = coeff_strs[i]
        if skip[i]:
            continue
        sign = ""
        if s.startswith("-") and not (_OPERATOR_CHARS & set(s[1:])):
            sign, s = "-", s[1:]
        needs_parens = bool(_OPERATOR_CHARS & set(s))
        if i == 0:
            core = f"({s})" if needs_parens else s
        else:
            xpow = var if i == 1 else f"{var}^{i}"
            if s == one_str and not needs_parens:
                core = xpow
            else:
                base = f"({s})" if needs_parens else s
                core = f"{base}*{xpow}"
        terms.append(sign + core)
    if not terms:
        return "0"
    return "+".join(terms).replace("+-", "-")


def format_poly(f: Poly, var: str = "X") -> str:
    coeff_strs = [str(c) for c in f.coeffs]
    skip = [c.is_zero() for c in f.coeffs]
    return _format_terms(coeff_strs, skip, str(f.spec.one()), var)


def format_residue_poly(f: ResiduePoly, var: str = "X") -> str:
    coeff_strs = [str(c) for c in f.coeffs]
    skip = [c == 0 for c in f.coeffs]
    return _format_terms(coeff_strs, skip, "1", var)


def _split_terms(s: str, var: str):
    """Split a polynomial string into (sign, term) pairs at depth zero."""
    terms = []
    depth = 0
    start = 0
    sign = 1
    body = s.replace(" ", "")
    if not body:
        raise ParseError("empty polynomial string")
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses at position {i} in {s!r}")
        elif ch in "+-" and depth == 0 and i > start:
            terms.append((sign, body[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        elif ch == "-" and depth == 0 and i == start:
            sign = -sign
            start = i + 1
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    if start >= len(body):
        raise ParseError(f"dangling operator in {s!r}")
    terms.append((sign, body[start:]))
    return terms


_XPOW_RE = re.compile(r"^(?:\^(\d+))?$")


def _parse_terms(s: str, var: str, parse_coeff, add, mul_sign, zero_list):
    """Shared polynomial text parser; mutates ``zero_list`` in place."""
    coeffs = zero_list
    for sign, term in _split_terms(s, var):
        # locate the variable at depth zero
        depth = 0
        var_idx = None
        for i, ch in enumerate(term):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == var and depth == 0:
                var_idx = i
                break
        if var_idx is None:
            coeff_src, power = term, 0
        else:
            tail = term[var_idx + 1 :]
            m = _XPOW_RE.match(tail)
            if m is None:
                raise ParseError(f"bad variable power in term {term!r}")
            power = 1 if m.group(1) is None else int(m.group(1))
            coeff_src = term[:var_idx]
            if coeff_src.endswith("*"):
                coeff_src = coeff_src[:-1]
            elif coeff_src:
                raise ParseError(f"missing '*' before {var} in term {term!r}")
        if coeff_src.startswith("(") and coeff_src.endswith(")"):
            coeff_src = coeff_src[1:-1]
        c = parse_coeff(coeff_src) if coeff_src else parse_coeff(None)
        if sign < 0:
            c = mul_sign(c)
        while len(coeffs) <= power:
            coeffs.append(None)
        coeffs[power] = c if coeffs[power] is None else add(coeffs[power], c)
    return coeffs


def parse_poly(spec: RingSpec, s: str, var: str = "X") -> Poly:
    """Parse polynomial text such as ``X^2+3*X+2`` over ``spec``."""

    def parse_coeff(src):
        if src is None:
            return spec.one()
        return spec.parse_element(src)

    got = _parse_terms(s, var, parse_coeff, lambda a, b: a + b, lambda c: -c, [])
    zero = spec.zero()
    return Poly(spec, [zero if c is None else c for c in got])


def parse_residue_poly(p: int, s: str, var: str = "X") -> ResiduePoly:
    """Parse polynomial text over F_p."""

    def parse_coeff(src):
        if src is None:
            return 1
        try:
            return int(src) % p
        except ValueError:
            raise ParseError(f"bad coefficient {src!r} over F_{p}") from None

    got = _parse_terms(
        s, var, parse_coeff, lambda a, b: (a + b) % p, lambda c: -c % p, []
    )
    return ResiduePoly(p, [0 if c is None else c for c in got])


def poly_to_strings(f: Poly) -> list[str]:
    """JSON form: coefficient strings, constant term first."""
    return [str(c) for c in f.coeffs]


def residue_poly_to_ints(f: ResiduePoly) -> list[int]:
    return list(f.coeffs)
