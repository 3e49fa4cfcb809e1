"""Square matrices and strongly clean decompositions.

A decomposition ``A = E + U`` is strongly clean when ``E`` is idempotent,
``U`` is a unit of the matrix ring, and ``E`` and ``U`` commute.  Over a
local ring whose maximal ideal is nilpotent the decomposition is computed
from the characteristic polynomial alone: split ``f`` at the root ``0`` of
its residue image into ``f = g*h`` with exact Bezout pair ``u*g + v*h = 1``,
and take ``E = v(A)*h(A)``.  Idempotence follows from ``g(A)*h(A) = 0``
(Cayley-Hamilton) and the Bezout identity; invertibility of ``A - E``
reduces to the residue field, where ``E`` projects onto the generalized
eigenspace of ``0``.  The three shapes are ``unit`` (no zero root),
``unipotent-shift`` (residue is nilpotent, ``E = I``), and ``split``.

Product rings decompose componentwise and recombine entrywise (case
``crt``).  Localized integers are refused: over ``Z_(p)`` a matrix need not
be strongly clean at all, and :mod:`cleanforge.oracle` can produce explicit
witnesses.

The characteristic polynomial is computed with the division-free Berkowitz
recurrence, so it is exact over every supported family, products and
localized integers included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    InfiniteRing,
    InternalCheckFailed,
    NotAUnit,
    NotIdempotent,
    NotMonic,
    ParseError,
    PreconditionViolated,
    SpecMismatch,
    UnsupportedFamily,
    UnsupportedRing,
)
from .hensel import require_nilpotent_local, split_at_zero
from .poly import Poly, scale_substitute
from .rings import (
    LocalizedIntegers,
    ProductRing,
    RingElem,
    RingSpec,
    crt_combine,
    crt_split,
)


def _dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


class Mat:
    """An immutable square matrix over one ring spec."""

    __slots__ = ("spec", "n", "rows")

    def __init__(self, spec: RingSpec, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ParseError("matrix must be square and nonempty")
        for r in rows:
            for x in r:
                if not isinstance(x, RingElem) or x.spec != spec:
                    raise SpecMismatch(f"matrix entry {x!r} does not belong to {spec}")
        self.spec = spec
        self.n = n
        self.rows = rows

    @classmethod
    def from_ints(cls, spec: RingSpec, rows) -> "Mat":
        return cls(spec, [[spec.from_int(v) for v in r] for r in rows])

    @classmethod
    def from_strings(cls, spec: RingSpec, rows) -> "Mat":
        return cls(spec, [[spec.parse_element(s) for s in r] for r in rows])

    @classmethod
    def identity(cls, spec: RingSpec, n: int) -> "Mat":
        z, o = spec.zero(), spec.one()
        return cls(spec, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, spec: RingSpec, n: int) -> "Mat":
        z = spec.zero()
        return cls(spec, [[z] * n for _ in range(n)])

    def entry(self, i: int, j: int) -> RingElem:
        return self.rows[i][j]

    def _check(self, other: "Mat") -> None:
        if self.spec != other.spec:
            raise SpecMismatch(f"matrices over {self.spec} and {other.spec} mixed")
        if self.n != other.n:
            raise SpecMismatch(f"matrix sizes {self.n} and {other.n} differ")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat(
            self.spec,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        return Mat(
            self.spec,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self) -> "Mat":
        return Mat(self.spec, [[-a for a in r] for r in self.rows])

    def __mul__(self, other: "Mat") -> "Mat":
        self._check(other)
        cols = list(zip(*other.rows))
        return Mat(
            self.spec, [[_dot(r, c) for c in cols] for r in self.rows]
        )

    def scale(self, c: RingElem) -> "Mat":
        return Mat(self.spec, [[c * a for a in r] for r in self.rows])

    def add_scalar_diag(self, c: RingElem) -> "Mat":
        rows = [list(r) for r in self.rows]
        for i in range(self.n):
            rows[i][i] = rows[i][i] + c
        return Mat(self.spec, rows)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.spec == other.spec and self.rows == other.rows

    def __hash__(self):
        return hash((self.spec, self.rows))

    def payload_key(self) -> tuple:
        return tuple(x.payload for r in self.rows for x in r)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"<{self.n}x{self.n} matrix {self} over {self.spec}>"


def mat_pow(A: Mat, e: int) -> Mat:
    if e < 0:
        raise PreconditionViolated("matrix powers need a nonnegative exponent")
    result = Mat.identity(A.spec, A.n)
    base = A
    while e:
        if e & 1:
            result = result * base
        base = base * base if e > 1 else base
        e >>= 1
    return result


def charpoly(A: Mat) -> Poly:
    """Characteristic polynomial ``det(X*I - A)`` by the Berkowitz recurrence.

    Division-free, so exact over any supported ring.  Coefficients are
    returned constant term first; the result is monic of degree ``n``.
    """
    spec, n = A.spec, A.n
    zero, one = spec.zero(), spec.one()
    prev = [one, -A.rows[0][0]]  # leading coefficient first
    for r in range(1, n):
        row_r = A.rows[r][:r]
        w = [A.rows[i][r] for i in range(r)]
        svals = [_dot(row_r, w)]
        for _ in range(r - 1):
            w = [_dot(A.rows[i][:r], w) for i in range(r)]
            svals.append(_dot(row_r, w))
        t = [one, -A.rows[r][r]] + [-s for s in svals]
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                acc = acc + t[i - j] * prev[j]
            new.append(acc)
        prev = new
    return Poly(spec, list(reversed(prev)))


def det(A: Mat) -> RingElem:
    """Determinant, read off the characteristic polynomial."""
    c0 = charpoly(A).coeff(0)
    return c0 if A.n % 2 == 0 else -c0


def mat_invert(A: Mat) -> Mat:
    """Exact inverse; raises :class:`NotAUnit` when none exists.

    Local families use Gauss-Jordan elimination with unit pivots (over a
    local ring an invertible matrix always offers a unit pivot in each
    column).  Products invert componentwise, since a unit pivot can be
    missing there even for an invertible matrix.
    """
    if isinstance(A.spec, ProductRing):
        return mat_crt_combine([mat_invert(c) for c in mat_crt_split(A)], A.spec)
    n = A.n
    identity = Mat.identity(A.spec, n)
    aug = [list(r) + list(identity.rows[i]) for i, r in enumerate(A.rows)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col].is_unit():
                piv = r
                break
        if piv is None:
            raise NotAUnit("matrix is not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].invert()
        aug[col] = [inv * x for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return Mat(A.spec, [row[n:] for row in aug])


def poly_eval_matrix(f: Poly, A: Mat) -> Mat:
    """Evaluate ``f`` at ``A`` by Horner's scheme."""
    if f.spec != A.spec:
        raise SpecMismatch(f"polynomial over {f.spec} evaluated at matrix over {A.spec}")
    acc = Mat.zeros(A.spec, A.n)
    for c in reversed(f.coeffs):
        acc = acc * A
        if not c.is_zero():
            acc = acc.add_scalar_diag(c)
    return acc


def companion(f: Poly) -> Mat:
    """Companion matrix of a monic polynomial of degree >= 1."""
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    n = f.degree
    if n < 1:
        raise PreconditionViolated("companion matrix needs degree >= 1")
    spec = f.spec
    z, o = spec.zero(), spec.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        rows[i][n - 1] = -f.coeffs[i]
    for i in range(1, n):
        rows[i][i - 1] = o
    return Mat(spec, rows)


def mat_crt_split(A: Mat) -> list[Mat]:
    spec = A.spec
    if not isinstance(spec, ProductRing):
        raise SpecMismatch(f"component split needs a product ring, got {spec}")
    out = []
    for idx, comp in enumerate(spec.components):
        rows = [
            [RingElem(comp, x.payload[idx]) for x in r] for r in A.rows
        ]
        out.append(Mat(comp, rows))
    return out


def mat_crt_combine(mats, spec: ProductRing) -> Mat:
    n = mats[0].n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(crt_combine([m.rows[i][j] for m in mats], spec))
        rows.append(row)
    return Mat(spec, rows)


class VerifyResult(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CleanDecomposition:
    """``A = E + U`` with the shape of the split and its certificate.

    ``case`` is one of ``unit``, ``unipotent-shift``, ``split`` over a local
    family, or ``crt`` for product rings.  ``certificate`` carries the
    ``(g, h, u, v)`` polynomials for a ``split`` and the tuple of component
    decompositions for ``crt``; it is ``None`` for the trivial shapes.
    """

    E: Mat
    U: Mat
    case: str
    certificate: tuple | None = None


@dataclass(frozen=True)
class PiRegularWitness:
    """``q >= 1``, ``s`` and the power period ``j`` with ``A^q = A^(q+1)*s``."""

    q: int
    s: Mat
    period: int


def verify_decomposition(A: Mat, E: Mat, U: Mat) -> VerifyResult:
    """Check the strongly clean equations; first failure wins."""
    A._check(E)
    A._check(U)
    if A != E + U:
        return VerifyResult(False, "A != E+U")
    if E * E != E:
        return VerifyResult(False, "E^2 != E")
    if E * U != U * E:
        return VerifyResult(False, "EU != UE")
    if not det(U).is_unit():
        return VerifyResult(False, "U not a unit")
    return VerifyResult(True, None)


def strongly_clean_decompose(A: Mat) -> CleanDecomposition:
    """Deterministic strongly clean decomposition ``A = E + U``.

    Supported over the finite local families and their products; refused
    over localized integers, where the decomposition can fail to exist.
    The result is verified before being returned.
    """
    spec = A.spec
    if isinstance(spec, LocalizedIntegers):
        raise UnsupportedRing(
            f"strongly clean decomposition is not guaranteed over {spec}"
        )
    if isinstance(spec, ProductRing):
        parts = [strongly_clean_decompose(c) for c in mat_crt_split(A)]
        E = mat_crt_combine([p.E for p in parts], spec)
        U = mat_crt_combine([p.U for p in parts], spec)
        result = verify_decomposition(A, E, U)
        if not result:
            raise InternalCheckFailed(f"component glue failed: {result.reason}")
        return CleanDecomposition(E, U, "crt", tuple(parts))
    require_nilpotent_local(spec)
    f = charpoly(A)
    g, h, u, v, m = split_at_zero(f)
    n = A.n
    if m == 0:
        E, U, case, cert = Mat.zeros(spec, n), A, "unit", None
    elif m == n:
        E = Mat.identity(spec, n)
        U = A - E
        case, cert = "unipotent-shift", None
    else:
        E = poly_eval_matrix(v, A) * poly_eval_matrix(h, A)
        U = A - E
        case, cert = "split", (g, h, u, v)
    result = verify_decomposition(A, E, U)
    if not result:
        raise InternalCheckFailed(f"decomposition failed its own check: {result.reason}")
    return CleanDecomposition(E, U, case, cert)


def idempotent_split_basis(E: Mat) -> tuple[Mat, int]:
    """A change of basis diagonalizing an idempotent over a local family.

    Returns ``(Q, p)`` with ``Q * E * Q^-1 = diag(I_p, 0)`` where ``p`` is
    the rank of the residue image of ``E``.  The basis columns are chosen
    greedily, leftmost first, from the columns of ``E`` and then of
    ``I - E``, keeping residues linearly independent.
    """
    spec = E.spec
    require_nilpotent_local(spec)
    if E * E != E:
        raise NotIdempotent("matrix is not idempotent")
    p = spec.residue_char()
    n = E.n
    complement = Mat.identity(spec, n) - E

    basis: list[tuple[int, list[int]]] = []

    def try_add(col) -> bool:
        vec = [x.residue().value for x in col]
        for piv, row in basis:
            if vec[piv] != 0:
                c = vec[piv] * pow(row[piv], -1, p) % p
                vec = [(x - c * y) % p for x, y in zip(vec, row)]
        for i, x in enumerate(vec):
            if x != 0:
                basis.append((i, vec))
                return True
        return False

    chosen = []
    rank = 0
    for j in range(n):
        col = [E.rows[i][j] for i in range(n)]
        if try_add(col):
            chosen.append(col)
            rank += 1
    for j in range(n):
        if len(chosen) == n:
            break
        col = [complement.rows[i][j] for i in range(n)]
        if try_add(col):
            chosen.append(col)
    if len(chosen) != n:
        raise InternalCheckFailed("column selection did not produce a basis")
    M = Mat(spec, [[chosen[j][i] for j in range(n)] for i in range(n)])
    Q = mat_invert(M)
    B = Q * E * M
    expected = Mat(
        spec,
        [
            [spec.one() if i == j and i < rank else spec.zero() for j in range(n)]
            for i in range(n)
        ],
    )
    if B != expected:
        raise InternalCheckFailed("basis change did not diagonalize the idempotent")
    return Q, rank


def poly_reduce_via_matrix(f: Poly, a: RingElem) -> tuple[Poly, Poly]:
    """Factor monic ``f`` with ``f(0)`` and ``f(a)`` non-units, ``a`` a unit.

    Scales the variable so the distinguished points become ``0`` and ``1``,
    decomposes the companion matrix, diagonalizes its idempotent part and
    reads the two factors off the diagonal blocks.  Returns ``(g, h)`` with
    ``g*h = f`` and both factors monic of positive degree; ``g`` is the
    factor whose residue is a power of ``X``.
    """
    spec = f.spec
    require_nilpotent_local(spec)
    if f.spec != a.spec:
        raise SpecMismatch(f"polynomial over {f.spec} with point in {a.spec}")
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if f.degree <= 1:
        raise PreconditionViolated("factoring needs degree > 1")
    if not a.is_unit():
        raise PreconditionViolated(f"{a} is not a unit")
    if f(spec.zero()).is_unit():
        raise PreconditionViolated("f(0) is a unit")
    if f(a).is_unit():
        raise PreconditionViolated(f"f({a}) is a unit")
    one = spec.one()
    scaled = a != one
    work = scale_substitute(f, a) if scaled else f
    A = companion(work)
    dec = strongly_clean_decompose(A)
    if dec.case != "split":
        raise InternalCheckFailed(f"expected a proper split, got case {dec.case}")
    Q, rank = idempotent_split_basis(dec.E)
    M = mat_invert(Q)
    B = Q * A * M
    n = A.n
    zero = spec.zero()
    for i in range(n):
        for j in range(n):
            same_block = (i < rank) == (j < rank)
            if not same_block and B.rows[i][j] != zero:
                raise InternalCheckFailed("conjugated matrix is not block diagonal")
    C = Mat(spec, [row[:rank] for row in B.rows[:rank]])
    D = Mat(spec, [row[rank:] for row in B.rows[rank:]])
    g, h = charpoly(C), charpoly(D)
    if scaled:
        ainv = a.invert()
        g, h = scale_substitute(g, ainv), scale_substitute(h, ainv)
    if g * h != f:
        raise InternalCheckFailed("diagonal blocks do not multiply back to f")
    return g, h


def pi_regular_witness(A: Mat) -> PiRegularWitness:
    """Find ``q`` and ``s`` with ``A^q = A^(q+1) * s`` by power cycling.

    The power sequence of a matrix over a finite ring repeats; with index
    ``i`` and period ``j`` (smallest ``i`` with ``A^i = A^(i+j)``) the
    witness is ``q = max(i, 1)`` and ``s = A^(j-1)``, a power of ``A`` and
    hence commuting with it.
    """
    spec = A.spec
    if not spec.is_finite():
        raise InfiniteRing(f"power cycling needs a finite ring, not {spec}")
    seen = {Mat.identity(spec, A.n).payload_key(): 0}
    cur = A
    e = 1
    while True:
        key = cur.payload_key()
        if key in seen:
            i = seen[key]
            j = e - i
            break
        seen[key] = e
        cur = cur * A
        e += 1
    q = max(i, 1)
    s = mat_pow(A, j - 1)
    if mat_pow(A, q) != mat_pow(A, q + 1) * s:
        raise InternalCheckFailed("power cycle witness does not satisfy its equation")
    return PiRegularWitness(q=q, s=s, period=j)
