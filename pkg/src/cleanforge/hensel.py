"""Exact factor lifting over local rings with nilpotent maximal ideal.

Over ``Z/p^k`` or ``Fp[t]/(t^k)`` the maximal ideal ``P`` satisfies
``P**k = 0``, so a coprime monic factorization of the residue image of a
monic polynomial lifts to an exact factorization of the polynomial itself:
the error ``f - g*h`` starts in ``P`` and each linear correction step pushes
it one power of ``P`` deeper, so ``k - 1`` steps reach zero exactly.  The
same correction scheme turns the residue Bezout identity into an exact one,
which is what makes the lifted factorizations certifiable by multiplication
alone.

The lifted data is unique: for fixed coprime monic residue factors there is
exactly one monic factor pair ``(g, h)`` with those residues, and exactly one
Bezout pair ``(u, v)`` with ``deg u < deg h`` and ``deg v < deg g``.  Every
function here therefore has a deterministic output that any alternative
implementation must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    InternalCheckFailed,
    NotCoprime,
    NotMonic,
    ResidueMismatch,
    SpecMismatch,
    UnsupportedFamily,
)
from .poly import (
    Poly,
    ResiduePoly,
    divmod_monic,
    factor_residue,
    reduce_mod_p,
    residue_gcd,
    xgcd_residue,
)
from .rings import PrimePowerIntegers, RingSpec, TruncatedPolynomials


@dataclass(frozen=True)
class HenselFactorization:
    """An exact factorization ``f = g*h`` with exact Bezout pair ``(u, v)``."""

    f: Poly
    g: Poly
    h: Poly
    u: Poly
    v: Poly


@dataclass(frozen=True)
class LocalFactorList:
    """``f`` as an ordered product of monic factors with coprime residues."""

    f: Poly
    factors: tuple


class SplitAtZero(NamedTuple):
    g: Poly
    h: Poly
    u: Poly
    v: Poly
    m: int


def require_nilpotent_local(spec: RingSpec) -> None:
    if not isinstance(spec, (PrimePowerIntegers, TruncatedPolynomials)):
        raise UnsupportedFamily(
            f"lifting needs a local ring with nilpotent maximal ideal, got {spec}"
        )


def lift_residue_poly(rbar: ResiduePoly, spec: RingSpec) -> Poly:
    """Coefficientwise canonical lift of a residue polynomial."""
    if rbar.p != spec.residue_char():
        raise SpecMismatch(f"residue char {rbar.p} does not match {spec}")
    return Poly(spec, [spec.element(spec._lift(c)) for c in rbar.coeffs])


def _truncate(f: Poly, degree: int) -> Poly:
    """Drop all coefficients at ``degree`` and above."""
    return Poly(f.spec, f.coeffs[:degree])


def hensel_lift(f: Poly, gbar0: ResiduePoly, hbar0: ResiduePoly) -> HenselFactorization:
    """Lift a coprime monic residue split of ``f`` to an exact one.

    Requires monic ``f`` over a local family with nilpotent maximal ideal,
    monic residue factors with ``gbar0 * hbar0`` equal to the residue image
    of ``f``, and ``gcd(gbar0, hbar0) = 1``.  Returns the unique exact data
    ``f = g*h``, ``u*g + v*h = 1``.
    """
    spec = f.spec
    require_nilpotent_local(spec)
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if not gbar0.is_monic() or not hbar0.is_monic():
        raise NotMonic("residue factors must be monic")
    fbar = reduce_mod_p(f)
    if gbar0.p != fbar.p or hbar0.p != fbar.p:
        raise SpecMismatch("residue factors live over the wrong prime field")
    if gbar0 * hbar0 != fbar:
        raise ResidueMismatch(
            f"{gbar0} * {hbar0} != {fbar} over F_{fbar.p}"
        )
    d = residue_gcd(gbar0, hbar0)
    if d.degree != 0:
        raise NotCoprime(f"residue factors share the factor {d}")

    if gbar0.degree == 0:
        return HenselFactorization(f, Poly.one(spec), f, Poly.one(spec), Poly.zero(spec))
    if hbar0.degree == 0:
        return HenselFactorization(f, f, Poly.one(spec), Poly.zero(spec), Poly.one(spec))

    _, ubar, vbar = xgcd_residue(gbar0, hbar0)
    g = lift_residue_poly(gbar0, spec)
    h = lift_residue_poly(hbar0, spec)
    u0 = lift_residue_poly(ubar, spec)
    v0 = lift_residue_poly(vbar, spec)
    deg_h = h.degree

    # factor refinement: one power of P per step
    for _ in range(spec.k - 1):
        e = f - g * h
        if e.is_zero():
            break
        q, r = divmod_monic(v0 * e, g)
        g = g + r
        h = h + _truncate(u0 * e + q * h, deg_h)
    if not (f - g * h).is_zero():
        raise InternalCheckFailed("factor lifting did not converge")

    u, v = _exact_bezout(g, h, u0, v0)
    result = HenselFactorization(f, g, h, u, v)
    _check_factorization(result, gbar0, hbar0)
    return result


def _exact_bezout(g: Poly, h: Poly, u: Poly, v: Poly) -> tuple[Poly, Poly]:
    """Refine ``u*g + v*h = 1 mod P`` into an exact identity."""
    spec = g.spec
    one = Poly.one(spec)
    deg_h = h.degree
    for _ in range(spec.k - 1):
        b = one - u * g - v * h
        if b.is_zero():
            break
        q, r = divmod_monic(v * b, g)
        u = u + _truncate(u * b + q * h, deg_h)
        v = v + r
    if not (one - u * g - v * h).is_zero():
        raise InternalCheckFailed("Bezout refinement did not converge")
    return u, v


def _check_factorization(
    hf: HenselFactorization, gbar0: ResiduePoly, hbar0: ResiduePoly
) -> None:
    spec = hf.f.spec
    if hf.g * hf.h != hf.f:
        raise InternalCheckFailed("lifted factors do not multiply back to f")
    if hf.u * hf.g + hf.v * hf.h != Poly.one(spec):
        raise InternalCheckFailed("lifted Bezout identity does not hold")
    if reduce_mod_p(hf.g) != gbar0 or reduce_mod_p(hf.h) != hbar0:
        raise InternalCheckFailed("lifted factors have wrong residues")
    if not hf.g.is_monic() or not hf.h.is_monic():
        raise InternalCheckFailed("lifted factors are not monic")
    if hf.u.degree >= max(hf.h.degree, 1) or hf.v.degree >= max(hf.g.degree, 1):
        raise InternalCheckFailed("Bezout pair exceeds its degree bounds")


def bezout_lift(g: Poly, h: Poly) -> tuple[Poly, Poly]:
    """Exact Bezout pair for monic ``g``, ``h`` with coprime residues.

    Returns the unique ``(u, v)`` with ``u*g + v*h = 1``, ``deg u < deg h``
    and ``deg v < deg g`` (a polynomial forced to be constant by the bound
    degenerates to ``0`` or ``1`` in the divisor cases).
    """
    spec = g.spec
    require_nilpotent_local(spec)
    if g.spec != h.spec:
        raise SpecMismatch(f"polynomials over {g.spec} and {h.spec} mixed")
    if not g.is_monic() or not h.is_monic():
        raise NotMonic("bezout_lift needs monic inputs")
    if g.degree == 0:
        return Poly.one(spec), Poly.zero(spec)
    if h.degree == 0:
        return Poly.zero(spec), Poly.one(spec)
    gbar, hbar = reduce_mod_p(g), reduce_mod_p(h)
    d, ubar, vbar = xgcd_residue(gbar, hbar)
    if d.degree != 0:
        raise NotCoprime(f"residues share the factor {d}")
    u, v = _exact_bezout(g, h, lift_residue_poly(ubar, spec), lift_residue_poly(vbar, spec))
    if u.degree >= h.degree or v.degree >= g.degree:
        raise InternalCheckFailed("Bezout pair exceeds its degree bounds")
    return u, v


def split_at_zero(f: Poly) -> SplitAtZero:
    """Split monic ``f`` at the root ``0`` of its residue image.

    ``m`` is the multiplicity of ``0`` as a root of the residue image; the
    returned factors satisfy ``f = g*h`` and ``u*g + v*h = 1`` exactly, with
    the residue of ``g`` equal to ``X^m`` and ``h`` a unit at ``0``.  The
    trivial splits are ``(1, f)`` for ``m = 0`` and ``(f, 1)`` for ``m = n``.
    """
    spec = f.spec
    require_nilpotent_local(spec)
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    fbar = reduce_mod_p(f)
    m = 0
    while fbar.coeff(m) == 0:
        m += 1
    n = f.degree
    if m == 0:
        return SplitAtZero(Poly.one(spec), f, Poly.one(spec), Poly.zero(spec), 0)
    if m == n:
        return SplitAtZero(f, Poly.one(spec), Poly.zero(spec), Poly.one(spec), n)
    gbar = ResiduePoly.x_pow(fbar.p, m)
    hbar = ResiduePoly(fbar.p, fbar.coeffs[m:])
    hf = hensel_lift(f, gbar, hbar)
    return SplitAtZero(hf.g, hf.h, hf.u, hf.v, m)


def local_factorization(f: Poly) -> LocalFactorList:
    """Factor monic ``f`` along the irreducible factors of its residue.

    Each residue prime power ``q^e`` contributes one monic factor whose
    residue is exactly ``q^e``; factors appear in the deterministic residue
    order.  A residue image that is a single prime power yields ``[f]``.
    """
    spec = f.spec
    require_nilpotent_local(spec)
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    fbar = reduce_mod_p(f)
    parts = factor_residue(fbar)
    if len(parts) <= 1:
        factors = (f,) if f.degree > 0 else ()
        return LocalFactorList(f, factors)
    out = []
    rem = f
    for qbar, e in parts[:-1]:
        gbar = qbar**e
        hbar = reduce_mod_p(rem) // gbar
        hf = hensel_lift(rem, gbar, hbar)
        out.append(hf.g)
        rem = hf.h
    out.append(rem)
    product = Poly.one(spec)
    for fac in out:
        product = product * fac
    if product != f:
        raise InternalCheckFailed("local factor list does not multiply back to f")
    return LocalFactorList(f, tuple(out))
