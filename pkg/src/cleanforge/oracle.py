"""Brute-force ground truth and reproducible sweep checks.

Everything here recomputes claims independently of the fast paths:
idempotents come from exhaustive enumeration, factors from trial division,
and every sweep re-verifies the clean equations by direct arithmetic.
Sweeps route through the table kernel when the ring and dimension fit it
and otherwise walk the object-level path; both enumerate matrices in the
same order (entry 0 varying fastest) and sample with the same
splitmix-style generator, so a report is independent of the engine.

Enumerations that would pass the work bound are refused with
``BoundExceeded``; nothing is silently truncated.  Reports are
deterministic for a fixed seed, including the first counterexample if one
ever appears.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from . import _kernel
from .errors import (
    BoundExceeded,
    CleanforgeError,
    NotMonic,
    PreconditionViolated,
    UnsupportedFamily,
    UnsupportedRing,
    WitnessDegenerate,
)
from .hensel import require_nilpotent_local
from .matclean import (
    Mat,
    det,
    mat_pow,
    pi_regular_witness,
    poly_reduce_via_matrix,
    strongly_clean_decompose,
    verify_decomposition,
)
from .poly import Poly, divmod_monic, format_poly, monic_polys, poly_to_strings
from .rings import (
    LocalizedIntegers,
    PrimePowerIntegers,
    ProductRing,
    RingSpec,
    TruncatedPolynomials,
)
from .workbound import work_bound

FAILURE_CAP = 25

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Seeded 64-bit generator with the splitmix update.

    The kernel backends reproduce this stream bit for bit, which keeps
    sampled sweeps engine-independent.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def random_matrix(spec: RingSpec, n: int, rng: SplitMix64) -> Mat:
    """One matrix with entries drawn row-major as ``next() % size``."""
    size = spec.size()
    entries = [spec.element_at(rng.next() % size) for _ in range(n * n)]
    return Mat(spec, [entries[i * n : (i + 1) * n] for i in range(n)])


@dataclass
class PropertyReport:
    """Outcome of one sweep: what ran, how much, and what failed."""

    name: str
    ring: str
    bounds: dict
    checked: int
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "property": self.name,
            "ring": self.ring,
            "bounds": self.bounds,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures,
            "details": self.details,
        }
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out

    def summary(self) -> str:
        state = "PASS" if self.ok else f"FAIL ({self.details.get('failure_count', len(self.failures))} failures)"
        return (
            f"{self.name} over {self.ring}: {self.checked} checked, {state}"
            f" in {self.elapsed:.3f}s"
        )


@dataclass
class NonCleanWitness:
    """A monic quadratic certifying a decomposition failure over Zloc(p)."""

    p: int
    f: Poly
    checks: dict

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "ring": self.f.spec.name(),
            "f": poly_to_strings(self.f),
            "checks": self.checks,
        }


_IDEMPOTENT_CACHE: dict = {}


def _idempotents(spec: RingSpec, n: int) -> tuple:
    cached = _IDEMPOTENT_CACHE.get((spec, n))
    if cached is not None:
        return cached
    elems = list(spec.elements())
    out = []
    for combo in itertools.product(elems, repeat=n * n):
        E = Mat(spec, [combo[i * n : (i + 1) * n] for i in range(n)])
        if E * E == E:
            out.append(E)
    result = tuple(out)
    _IDEMPOTENT_CACHE[(spec, n)] = result
    return result


def brute_strongly_clean(A: Mat) -> tuple[Mat, Mat] | None:
    """First (E, U) with E idempotent, EA = AE, A-E a unit; None if none.

    Candidates are enumerated lexicographically over the entries, each in
    the ring's element order, so the answer is deterministic.
    """
    spec = A.spec
    n = A.n
    total = spec.size() ** (n * n)
    bound = work_bound()
    if total > bound:
        raise BoundExceeded(
            f"{total} candidate idempotents exceed the work bound {bound}"
        )
    for E in _idempotents(spec, n):
        if E * A != A * E:
            continue
        U = A - E
        if det(U).is_unit():
            return E, U
    return None


def brute_factor(f: Poly) -> tuple[Poly, Poly] | None:
    """First monic proper divisor and cofactor of monic f; None if none.

    Trial division over all monic candidates, degree ascending, each
    degree in the coefficient enumeration order.  The quotient of one
    monic polynomial by another is monic, so a hit is a factorization.
    """
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    spec = f.spec
    n = f.degree
    size = spec.size()
    candidates = sum(size**d for d in range(1, n))
    bound = work_bound()
    if candidates > bound:
        raise BoundExceeded(
            f"{candidates} divisor candidates exceed the work bound {bound}"
        )
    for d in range(1, n):
        for g in monic_polys(spec, d):
            q, r = divmod_monic(f, g)
            if r.is_zero():
                return g, q
    return None


def _iter_matrices(spec: RingSpec, n: int, mode: str, count: int, seed: int):
    nn = n * n
    if mode == "sample":
        rng = SplitMix64(seed)
        for _ in range(count):
            yield random_matrix(spec, n, rng)
        return
    elems = list(spec.elements())
    size = len(elems)
    idx = [0] * nn
    for _ in range(size**nn):
        yield Mat(spec, [[elems[idx[i * n + j]] for j in range(n)] for i in range(n)])
        pos = 0
        while pos < nn:
            idx[pos] += 1
            if idx[pos] < size:
                break
            idx[pos] = 0
            pos += 1


def _mat_from_indices(spec: RingSpec, n: int, flat) -> Mat:
    elems = [spec.element_at(i) for i in flat]
    return Mat(spec, [elems[i * n : (i + 1) * n] for i in range(n)])


def _check_mode(mode: str) -> None:
    if mode not in ("exhaustive", "sample"):
        raise PreconditionViolated(f"unknown sweep mode {mode!r}")


def _sweep_total(spec: RingSpec, n: int, mode: str, count: int) -> int:
    if mode == "sample":
        if count < 1:
            raise PreconditionViolated("sample count must be positive")
        return count
    return spec.size() ** (n * n)


def _pick_engine(spec: RingSpec, n: int, engine: str) -> bool:
    """True for the kernel path, False for the object path."""
    fits = _kernel.supports(spec, n)
    if engine == "kernel":
        if not fits:
            raise UnsupportedRing(f"kernel tables do not cover {spec} at n={n}")
        return True
    if engine == "generic":
        return False
    if engine == "auto":
        return fits
    raise PreconditionViolated(f"unknown engine {engine!r}")


def _engine_details(use_kernel: bool) -> dict:
    if use_kernel:
        return {"engine": "kernel", "kernel_backend": _kernel.backend()}
    return {"engine": "generic"}


def _nilpotency_index(spec: RingSpec) -> int:
    if isinstance(spec, (PrimePowerIntegers, TruncatedPolynomials)):
        return spec.k
    if isinstance(spec, ProductRing):
        return max(c.k for c in spec.components)
    raise UnsupportedFamily(f"no nilpotency index for {spec}")


def check_theorem_local_instance(
    spec: RingSpec,
    n: int,
    mode: str = "exhaustive",
    count: int = 1000,
    seed: int = 0,
    engine: str = "auto",
) -> PropertyReport:
    """Sweep: every matrix decomposes and passes all four clean equations."""
    t0 = time.perf_counter()
    _check_mode(mode)
    total = _sweep_total(spec, n, mode, count)
    bound = work_bound()
    if total > bound:
        raise BoundExceeded(f"{total} matrices exceed the work bound {bound}")
    use_kernel = _pick_engine(spec, n, engine)
    failures: list = []
    if use_kernel:
        t = _kernel.tables_for(spec)
        checked, nfail, fails = _kernel.sweep_decompose(
            t, n, mode == "sample", count, seed, FAILURE_CAP
        )
        for flat in fails:
            failures.append(_decompose_failure(_mat_from_indices(spec, n, flat)))
    else:
        checked = 0
        nfail = 0
        for A in _iter_matrices(spec, n, mode, count, seed):
            checked += 1
            payload = _decompose_failure(A)
            if payload is not None:
                nfail += 1
                if len(failures) < FAILURE_CAP:
                    failures.append(payload)
    bounds = {"n": n, "mode": mode}
    if mode == "sample":
        bounds.update(count=count, seed=seed)
    details = _engine_details(use_kernel)
    details["failure_count"] = nfail
    return PropertyReport(
        name="strongly-clean-decomposition",
        ring=spec.name(),
        bounds=bounds,
        checked=checked,
        failures=failures,
        elapsed=time.perf_counter() - t0,
        details=details,
    )


def _decompose_failure(A: Mat):
    """None if A decomposes and verifies; a failure payload otherwise."""
    try:
        dec = strongly_clean_decompose(A)
    except CleanforgeError as exc:
        return {"matrix": A.to_strings(), "reason": f"{type(exc).__name__}: {exc}"}
    result = verify_decomposition(A, dec.E, dec.U)
    if not result:
        return {"matrix": A.to_strings(), "reason": result.reason}
    return None


def check_t5_condition(spec: RingSpec, degrees) -> PropertyReport:
    """Sweep: monic f with f(0) and f(1) non-units splits, both engines.

    For each qualifying polynomial the companion construction must return
    a factorization that multiplies back, and trial division must agree
    that a proper monic divisor exists.
    """
    t0 = time.perf_counter()
    require_nilpotent_local(spec)
    degs = sorted({int(d) for d in degrees})
    if not degs:
        raise PreconditionViolated("no degrees given")
    for d in degs:
        if d < 2 or d > 5:
            raise PreconditionViolated(f"degree {d} is outside 2..5")
    size = spec.size()
    total = sum(size**d for d in degs)
    bound = work_bound()
    if total > bound:
        raise BoundExceeded(f"{total} polynomials exceed the work bound {bound}")
    one = spec.one()
    checked = 0
    nfail = 0
    failures: list = []
    for d in degs:
        for f in monic_polys(spec, d):
            if f.coeff(0).is_unit() or f(one).is_unit():
                continue
            checked += 1
            reason = None
            try:
                g, h = poly_reduce_via_matrix(f, one)
                if g * h != f:
                    reason = "factors do not multiply back"
                elif brute_factor(f) is None:
                    reason = "trial division finds no proper divisor"
            except CleanforgeError as exc:
                reason = f"{type(exc).__name__}: {exc}"
            if reason is not None:
                nfail += 1
                if len(failures) < FAILURE_CAP:
                    failures.append({"f": format_poly(f), "reason": reason})
    return PropertyReport(
        name="marked-polynomials-split",
        ring=spec.name(),
        bounds={"degrees": degs},
        checked=checked,
        failures=failures,
        elapsed=time.perf_counter() - t0,
        details={"failure_count": nfail},
    )


def check_lemma_polyreduc(spec: RingSpec, n: int) -> PropertyReport:
    """Sweep: f monic of degree n, a a unit, f(0) and f(a) non-units.

    Each qualifying pair must factor through the companion construction
    with an exact multiply-back, and trial division must also find a
    proper divisor of f.
    """
    t0 = time.perf_counter()
    require_nilpotent_local(spec)
    if n < 2:
        raise PreconditionViolated("the factored degree must be at least 2")
    size = spec.size()
    units = [a for a in spec.elements() if a.is_unit()]
    total = size**n * len(units)
    bound = work_bound()
    if total > bound:
        raise BoundExceeded(f"{total} (f, a) pairs exceed the work bound {bound}")
    checked = 0
    nfail = 0
    failures: list = []
    for f in monic_polys(spec, n):
        if f.coeff(0).is_unit():
            continue
        brute_ok = None
        for a in units:
            if f(a).is_unit():
                continue
            checked += 1
            reason = None
            try:
                g, h = poly_reduce_via_matrix(f, a)
                if g * h != f:
                    reason = "factors do not multiply back"
                else:
                    if brute_ok is None:
                        brute_ok = brute_factor(f) is not None
                    if not brute_ok:
                        reason = "trial division finds no proper divisor"
            except CleanforgeError as exc:
                reason = f"{type(exc).__name__}: {exc}"
            if reason is not None:
                nfail += 1
                if len(failures) < FAILURE_CAP:
                    failures.append(
                        {"f": format_poly(f), "a": str(a), "reason": reason}
                    )
    return PropertyReport(
        name="unit-point-factorization",
        ring=spec.name(),
        bounds={"degree": n},
        checked=checked,
        failures=failures,
        elapsed=time.perf_counter() - t0,
        details={"failure_count": nfail},
    )


def nonclean_witness_quadratic(p: int) -> NonCleanWitness:
    """X^2 - X + p over Zloc(p): marked at 0 and 1, yet irreducible.

    Both values land in the maximal ideal while the discriminant 1 - 4p
    is negative and hence not a rational square, so the monic quadratic
    cannot factor over the localization.  A factorization would have to
    exist if 2x2 matrices over the ring were all strongly clean.
    """
    spec = LocalizedIntegers(p)
    f = Poly.from_ints(spec, [p, -1, 1])
    if f(spec.zero()).is_unit() or f(spec.one()).is_unit():
        raise WitnessDegenerate("marked values are not both in the maximal ideal")
    disc = 1 - 4 * p
    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
        raise WitnessDegenerate(f"discriminant {disc} is a square")
    checks = {
        "f0_in_max_ideal": True,
        "f1_in_max_ideal": True,
        "discriminant": disc,
        "discriminant_is_square": False,
    }
    return NonCleanWitness(p=p, f=f, checks=checks)


def check_pi_regular(
    spec: RingSpec,
    n: int,
    mode: str = "exhaustive",
    count: int = 1000,
    seed: int = 0,
    engine: str = "auto",
) -> PropertyReport:
    """Sweep: every matrix has q, s with A^q = A^(q+1) s, within the q bound.

    Also checks that A^q s^q is idempotent and that q never exceeds
    n * k * period, where k is the nilpotency index of the maximal ideal.
    """
    t0 = time.perf_counter()
    _check_mode(mode)
    total = _sweep_total(spec, n, mode, count)
    bound = work_bound()
    if total > bound:
        raise BoundExceeded(f"{total} matrices exceed the work bound {bound}")
    use_kernel = _pick_engine(spec, n, engine)
    failures: list = []
    if use_kernel:
        t = _kernel.tables_for(spec)
        checked, nfail, fails, max_q = _kernel.sweep_pireg(
            t, n, mode == "sample", count, seed, FAILURE_CAP
        )
        for flat in fails:
            A = _mat_from_indices(spec, n, flat)
            failures.append({"matrix": A.to_strings(), "reason": "witness check failed"})
    else:
        kmax = _nilpotency_index(spec)
        checked = 0
        nfail = 0
        max_q = 0
        for A in _iter_matrices(spec, n, mode, count, seed):
            checked += 1
            reason = None
            try:
                w = pi_regular_witness(A)
                max_q = max(max_q, w.q)
                if mat_pow(A, w.q) != mat_pow(A, w.q + 1) * w.s:
                    reason = "A^q != A^(q+1) s"
                else:
                    T = mat_pow(A, w.q) * mat_pow(w.s, w.q)
                    if T * T != T:
                        reason = "A^q s^q is not idempotent"
                    elif w.q > n * kmax * w.period:
                        reason = f"q={w.q} exceeds n*k*period={n * kmax * w.period}"
            except CleanforgeError as exc:
                reason = f"{type(exc).__name__}: {exc}"
            if reason is not None:
                nfail += 1
                if len(failures) < FAILURE_CAP:
                    failures.append({"matrix": A.to_strings(), "reason": reason})
    bounds = {"n": n, "mode": mode}
    if mode == "sample":
        bounds.update(count=count, seed=seed)
    details = _engine_details(use_kernel)
    details["failure_count"] = nfail
    details["max_q"] = max_q
    return PropertyReport(
        name="power-stabilization-witness",
        ring=spec.name(),
        bounds=bounds,
        checked=checked,
        failures=failures,
        elapsed=time.perf_counter() - t0,
        details=details,
    )
