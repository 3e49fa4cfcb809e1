"""Flat lookup tables for small finite local rings.

The sweep kernels index ring elements by their position in the canonical
enumeration order and do all arithmetic through precomputed tables, so one
code path serves both local families.  With that encoding ``0`` is always
index ``0`` and ``1`` is always index ``1``.  ``inv`` holds ``-1`` for
non-units; ``res`` maps an element to its residue in ``[0, p)``; ``lift``
maps a residue to the index of its canonical lift.
"""

from __future__ import annotations

from functools import lru_cache

from ..rings import PrimePowerIntegers, RingSpec, TruncatedPolynomials

TABLE_SIZE_LIMIT = 128
TABLE_DIM_LIMIT = 6


class LocalRingTables:
    __slots__ = ("spec", "size", "p", "k", "add", "mul", "neg", "inv", "res", "lift", "payloads")

    def __init__(self, spec: RingSpec):
        elems = list(spec.elements())
        size = len(elems)
        payloads = [e.payload for e in elems]
        index = {pl: i for i, pl in enumerate(payloads)}
        self.spec = spec
        self.size = size
        self.p = spec.p
        self.k = spec.k
        self.payloads = payloads
        self.add = [0] * (size * size)
        self.mul = [0] * (size * size)
        self.neg = [0] * size
        self.inv = [0] * size
        self.res = [0] * size
        self.lift = [index[spec._lift(r)] for r in range(spec.p)]
        for i, a in enumerate(payloads):
            self.neg[i] = index[spec._neg(a)]
            self.res[i] = spec._residue(a)
            self.inv[i] = index[spec._invert(a)] if spec._is_unit(a) else -1
            base = i * size
            for j, b in enumerate(payloads):
                self.add[base + j] = index[spec._add(a, b)]
                self.mul[base + j] = index[spec._mul(a, b)]
        assert self.res[0] == 0 and self.res[1] == 1


@lru_cache(maxsize=32)
def tables_for(spec: RingSpec) -> LocalRingTables:
    return LocalRingTables(spec)


def supports(spec: RingSpec, n: int) -> bool:
    """True when the table-driven kernels can handle this sweep."""
    if not isinstance(spec, (PrimePowerIntegers, TruncatedPolynomials)):
        return False
    return spec.size() <= TABLE_SIZE_LIMIT and 1 <= n <= TABLE_DIM_LIMIT
