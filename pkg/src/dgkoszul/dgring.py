"""Representable commutative DG-rings: rings, Koszul DG-rings over rings or
DG-rings, trivial extensions, and tensor products over a ring base.

A DGRingRep carries its degree-zero ring Q = S/J, the underlying bounded
non-positive complex of Q-modules, a presentation of H^0 as a quotient
ring, and construction provenance.  The DG multiplication is never stored
as tables: every invariant in scope (homology, depth, amplitude,
dimension, duality data) factors through the underlying complex and the
Q-action.
"""

from __future__ import annotations

from typing import Sequence

from .complexes import Complex, complex_from_module, koszul_complex, tensor_complexes
from .modules import FPModule
from .poly import Polynomial
from .rings import QuotientRing, substitute


class ElementOfH0:
    """A class in H^0 of a DG-ring, held by an explicit representative in Q.

    The representative is kept exactly as given (not auto-reduced): lifts
    that differ by the defining ideal build syntactically different Koszul
    complexes whose homology must agree.  Zero representatives carry a
    declared degree so the Koszul twist is still defined.
    """

    __slots__ = ("rep", "degree")

    def __init__(self, rep: Polynomial, degree: int | None = None):
        d = rep.homogeneous_degree()
        if d is None:
            if rep.is_zero():
                d = degree if degree is not None else 1
            else:
                raise ValueError(f"representative {rep} is not homogeneous")
        elif degree is not None and degree != d:
            raise ValueError("declared degree disagrees with the representative")
        self.rep = rep
        self.degree = d

    def __eq__(self, other):
        return (
            isinstance(other, ElementOfH0)
            and other.rep == self.rep
            and other.degree == self.degree
        )

    def __hash__(self):
        return hash((self.rep, self.degree))

    def __repr__(self):
        return f"[{self.rep}]"


def _as_element(x, ring: QuotientRing) -> ElementOfH0:
    if isinstance(x, ElementOfH0):
        return x
    if isinstance(x, Polynomial):
        return ElementOfH0(x)
    if isinstance(x, str):
        from .parse import parse_poly

        return ElementOfH0(parse_poly(x, ring.poly_ring))
    raise TypeError(f"cannot interpret {x!r} as an element of H^0")


class DGRingRep:
    """A commutative non-positive DG-ring in the representable class."""

    def __init__(
        self,
        base: QuotientRing,
        underlying: Complex,
        h0: QuotientRing,
        provenance: tuple,
    ):
        self.base = base
        self.underlying = underlying
        self.h0 = h0
        self.provenance = provenance
        self._cache: dict = {}

    # -- cohomology --

    def homology(self, i: int) -> FPModule:
        return self.underlying.homology(i)

    def homology_table(self):
        return self.underlying.homology_table()

    def inf(self):
        return self.underlying.inf()

    def sup(self):
        return self.underlying.sup()

    def amp(self):
        return self.underlying.amp()

    def dim_h0(self):
        return self.h0.dim()

    def irrelevant_ideal(self) -> list[ElementOfH0]:
        """The variable classes generating the irrelevant maximal ideal."""
        ring = self.base.poly_ring
        return [ElementOfH0(ring.var(i)) for i in range(ring.nvars)]

    def koszul_lifts(self) -> list[ElementOfH0]:
        """All Koszul elements accumulated along the provenance chain,
        outermost last."""
        if self.provenance[0] == "koszul":
            parent, elems = self.provenance[1], self.provenance[2]
            return parent.koszul_lifts() + list(elems)
        if self.provenance[0] == "tensor":
            left, right = self.provenance[1], self.provenance[2]
            return left.koszul_lifts() + right.koszul_lifts()
        return []

    def root_ring(self) -> QuotientRing | None:
        """The ring at the bottom of a pure koszul/tensor provenance chain."""
        kind = self.provenance[0]
        if kind == "ring":
            return self.base
        if kind == "koszul":
            return self.provenance[1].root_ring()
        if kind == "tensor":
            l = self.provenance[1].root_ring()
            r = self.provenance[2].root_ring()
            return l if l == r else None
        return None

    def validate(self) -> None:
        """Structural invariants: complex sanity and H^0(underlying) = h0
        (Hilbert series and annihilator agreement)."""
        self.underlying.validate()
        if self.underlying.hi > 0:
            raise AssertionError("underlying complex must be non-positive")
        h = self.underlying.homology(0)
        if h.hilbert_series() != self.h0.hilbert_series().shift(0):
            raise AssertionError("H^0 Hilbert series disagrees with h0")
        closure = QuotientRing(
            self.base.poly_ring,
            tuple(h.annihilator()) + self.base.j_gens,
        )
        if closure.groebner() != self.h0.groebner():
            raise AssertionError("H^0 annihilator disagrees with h0")

    def __repr__(self):
        return f"DGRing({self.provenance[0]}, base={self.base!r})"


class DGModuleRep:
    """A DG-module presented by its underlying complex of Q-modules."""

    def __init__(self, over: DGRingRep, underlying: Complex):
        self.over = over
        self.underlying = underlying

    def homology(self, i: int) -> FPModule:
        return self.underlying.homology(i)

    def inf(self):
        return self.underlying.inf()

    def sup(self):
        return self.underlying.sup()

    def amp(self):
        return self.underlying.amp()

    def __repr__(self):
        return f"DGModule(over={self.over!r})"


# ---------- constructors ----------

def dg_from_ring(Q: QuotientRing) -> DGRingRep:
    underlying = complex_from_module(FPModule.free(Q, (0,)))
    return DGRingRep(Q, underlying, Q, ("ring",))


def trivial_extension(Q: QuotientRing, M: FPModule, n: int) -> DGRingRep:
    """The trivial extension Q (semidirect) M[n]: Q in degree 0, M in degree
    -n, zero differential, M squaring to zero."""
    if n < 1:
        raise ValueError("trivial extension shift must be >= 1")
    if M.ring != Q:
        raise ValueError("module must live over the base ring")
    pres = M.presentation().minimize()
    terms = {0: FPModule.free(Q, (0,))}
    if len(pres.gens) > 0:
        terms[-n] = pres
    underlying = Complex(Q, terms, {})
    return DGRingRep(Q, underlying, Q, ("trivial-extension", M, n))


def koszul(A: DGRingRep, elems: Sequence) -> DGRingRep:
    """The Koszul DG-ring K(A; elems) on classes of H^0(A).

    Realized as Tot(underlying(A) (x) K(Q; lifts)); the Koszul factor is
    termwise free over Q, so no further resolution is needed.  An empty
    element list returns A itself.
    """
    elems = [_as_element(e, A.base) for e in elems]
    if not elems:
        return A
    K = koszul_complex(
        A.base, [e.rep for e in elems], degrees=[e.degree for e in elems]
    )
    underlying = tensor_complexes(A.underlying, K)
    h0 = QuotientRing(
        A.base.poly_ring, A.h0.j_gens + tuple(e.rep for e in elems)
    )
    return DGRingRep(A.base, underlying, h0, ("koszul", A, tuple(elems)))


def dg_as_module(A: DGRingRep) -> DGModuleRep:
    return DGModuleRep(A, A.underlying)


def module_over_dg(A: DGRingRep, M: FPModule, degree: int = 0) -> DGModuleRep:
    return DGModuleRep(A, complex_from_module(M, degree))


def koszul_module(M: DGModuleRep, elems: Sequence) -> DGModuleRep:
    """K(M; elems) = M (x) K(Q; lifts), a DG-module over K(A; elems)."""
    A = M.over
    elems = [_as_element(e, A.base) for e in elems]
    if not elems:
        return M
    K = koszul_complex(
        A.base, [e.rep for e in elems], degrees=[e.degree for e in elems]
    )
    underlying = tensor_complexes(M.underlying, K)
    return DGModuleRep(koszul(A, elems), underlying)


def dg_tensor(L: DGRingRep, R: DGRingRep) -> DGRingRep:
    """Derived tensor product over the common ring base.

    Only supported when both factors live over the same base ring, where
    the Koszul factors are termwise free and the plain tensor computes the
    derived one.
    """
    if L.base != R.base:
        raise ValueError("tensor factors must share the base ring")
    if not (L.underlying.is_termwise_free() or R.underlying.is_termwise_free()):
        raise ValueError("one tensor factor must be termwise free")
    underlying = tensor_complexes(L.underlying, R.underlying)
    h0 = QuotientRing(L.base.poly_ring, L.h0.j_gens + R.h0.j_gens)
    return DGRingRep(L.base, underlying, h0, ("tensor", L, R))


class RingMap:
    """A graded ring map S/J_A -> S'/J_B given on variables."""

    def __init__(
        self, source: QuotientRing, target: QuotientRing, images: Sequence[Polynomial]
    ):
        if len(images) != source.nvars:
            raise ValueError("one image per source variable required")
        for p in images:
            if not p.is_zero() and p.homogeneous_degree() is None:
                raise ValueError("variable images must be homogeneous")
        self.source = source
        self.target = target
        self.images = tuple(images)

    def apply(self, p: Polynomial) -> Polynomial:
        return substitute(p, self.target.poly_ring, self.images)

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero(self.apply(g)) for g in self.source.j_gens)


def base_change(K: DGRingRep, f: RingMap) -> DGRingRep:
    """Push a Koszul DG-ring over a ring A along a ring map A -> B.

    Returns K(B; images of the classes), the right-hand side of the
    Koszul base-change isomorphism.
    """
    if K.provenance[0] != "koszul" or K.root_ring() is None:
        raise ValueError("base change needs a Koszul DG-ring over a ring")
    if not f.is_well_defined():
        raise ValueError("the map does not send the source ideal into the target")
    mapped = []
    for e in K.koszul_lifts():
        img = f.apply(e.rep)
        mapped.append(ElementOfH0(img, degree=e.degree if img.is_zero() else None))
    return koszul(dg_from_ring(f.target), mapped)


def lift_independence_check(
    A: DGRingRep, elems: Sequence, alternates: Sequence
) -> dict:
    """Build the Koszul DG-ring from two lift choices of the same classes
    and compare the homology Hilbert tables degree by degree."""
    elems = [_as_element(e, A.base) for e in elems]
    alternates = [_as_element(e, A.base) for e in alternates]
    if len(elems) != len(alternates):
        raise ValueError("lift lists must have equal length")
    for e, alt in zip(elems, alternates):
        diff = e.rep - alt.rep
        if not A.h0.is_zero(diff):
            raise ValueError(
                f"{alt.rep} is not congruent to {e.rep} modulo the H^0 ideal"
            )
        if e.degree != alt.degree:
            raise ValueError("lifts of one class must share a degree")
    k1 = koszul(A, elems)
    k2 = koszul(A, alternates)
    t1 = k1.homology_table()
    t2 = k2.homology_table()
    equal = set(t1) == set(t2) and all(t1[i] == t2[i] for i in t1)
    return {
        "equal": equal,
        "table_primary": {i: hs.to_json() for i, hs in sorted(t1.items())},
        "table_alternate": {i: hs.to_json() for i, hs in sorted(t2.items())},
    }
