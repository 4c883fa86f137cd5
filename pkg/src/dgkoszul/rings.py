"""Graded quotient rings Q = S/J and free modules over them.

The ambient polynomial ring S does all Groebner work; Q caches the reduced
basis of its defining ideal, its Hilbert series and its Krull dimension.
Quotient rings compare equal when their reduced bases agree, so different
generator lists for the same ideal give interchangeable contexts.
"""

from __future__ import annotations

from typing import Sequence

from . import groebner as gb
from .hilbert import HilbertSeries, krull_dim_lead, monomial_quotient_series
from .poly import GREVLEX, PolyRing, Polynomial, mono_mul


class QuotientRing:
    """S/J for a homogeneous ideal J of the polynomial ring S."""

    def __init__(self, poly_ring: PolyRing, j_gens: Sequence[Polynomial] = ()):
        self.poly_ring = poly_ring
        gens = []
        for g in j_gens:
            if g.ring != poly_ring:
                raise gb.InhomogeneousError("ideal generator from a different ring")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise gb.InhomogeneousError(f"inhomogeneous ideal generator {g}")
            gens.append(g)
        self.j_gens = tuple(gens)
        self._gb: tuple[Polynomial, ...] | None = None
        self._dim = None
        self._hilbert: HilbertSeries | None = None
        self._mod_order = gb.TermOverPosition(poly_ring.order)

    # -- basic structure --

    @property
    def field(self):
        return self.poly_ring.field

    @property
    def nvars(self) -> int:
        return self.poly_ring.nvars

    @property
    def variables(self):
        return self.poly_ring.variables

    def groebner(self) -> tuple[Polynomial, ...]:
        """Reduced Groebner basis of J."""
        if self._gb is None:
            vecs = [gb.vec_from_polys((g,)) for g in self.j_gens]
            basis = gb.buchberger(
                vecs, (0,), self._mod_order, self.field, rank=1
            )
            self._gb = tuple(
                gb.polys_from_vec(v, self.poly_ring, 1)[0] for v in basis
            )
        return self._gb

    def nf(self, p: Polynomial) -> Polynomial:
        """Fully reduced normal form of p modulo J."""
        if p.ring != self.poly_ring:
            raise gb.InhomogeneousError("polynomial from a different ring")
        basis = [gb.vec_from_polys((g,)) for g in self.groebner()]
        r = gb.normal_form(
            gb.vec_from_polys((p,)), basis, self._mod_order, self.field
        )
        return gb.polys_from_vec(r, self.poly_ring, 1)[0]

    def is_zero(self, p: Polynomial) -> bool:
        return self.nf(p).is_zero()

    def is_trivial(self) -> bool:
        """True when J is the unit ideal (the ring is zero)."""
        basis = self.groebner()
        return any(g.total_degree() == 0 for g in basis)

    # -- invariants --

    def dim(self):
        if self._dim is None:
            leads = [g.leading(self.poly_ring.order)[0] for g in self.groebner()]
            self._dim = krull_dim_lead(leads, self.nvars)
        return self._dim

    def hilbert_series(self) -> HilbertSeries:
        if self._hilbert is None:
            leads = [g.leading(self.poly_ring.order)[0] for g in self.groebner()]
            self._hilbert = monomial_quotient_series(leads, self.nvars)
        return self._hilbert

    def is_nilpotent(self, g: Polynomial) -> bool:
        """True iff g lies in the radical of J.

        Certificate: 1 in J + (1 - t*g) inside S[t]; the extension variable
        makes the input inhomogeneous, which the engine allows here.
        """
        if self.is_zero(g):
            return True
        ext = PolyRing(
            self.variables + ("_t",), self.field, self.poly_ring.order
        )

        def lift(p: Polynomial, tdeg: int = 0) -> Polynomial:
            return Polynomial(
                ext, {e + (tdeg,): c for e, c in p.terms.items()}
            )

        witness = ext.one - lift(g, tdeg=1)
        vecs = [gb.vec_from_polys((lift(j),)) for j in self.j_gens]
        vecs.append(gb.vec_from_polys((witness,)))
        basis = gb.buchberger(
            vecs,
            (0,),
            gb.TermOverPosition(ext.order),
            self.field,
            rank=1,
            allow_inhomogeneous=True,
        )
        return any(
            len(v) == 1 and next(iter(v))[1] == (0,) * ext.nvars for v in basis
        )

    # -- identity --

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuotientRing)
            and other.poly_ring == self.poly_ring
            and other.groebner() == self.groebner()
        )

    def __hash__(self):
        return hash((self.poly_ring, self.groebner()))

    def __repr__(self):
        if not self.j_gens:
            return repr(self.poly_ring)
        return f"{self.poly_ring!r}/({', '.join(map(str, self.j_gens))})"


class FreeModule:
    """Free graded module over a QuotientRing with one twist per generator."""

    __slots__ = ("ring", "rank", "twists")

    def __init__(self, ring: QuotientRing, rank: int, twists: Sequence[int] | None = None):
        if rank < 0:
            raise ValueError("negative rank")
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists) if twists is not None else (0,) * rank
        if len(self.twists) != rank:
            raise ValueError("twists length must equal rank")

    def basis_vector(self, i: int) -> tuple[Polynomial, ...]:
        one = self.ring.poly_ring.one
        zero = self.ring.poly_ring.zero
        return tuple(one if j == i else zero for j in range(self.rank))

    def j_columns(self) -> list[tuple[Polynomial, ...]]:
        """The J-multiples of the basis vectors (J acts as zero over Q)."""
        zero = self.ring.poly_ring.zero
        cols = []
        for g in self.ring.j_gens:
            for i in range(self.rank):
                cols.append(
                    tuple(g if j == i else zero for j in range(self.rank))
                )
        return cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeModule)
            and other.ring == self.ring
            and other.rank == self.rank
            and other.twists == self.twists
        )

    def __hash__(self):
        return hash((self.ring, self.rank, self.twists))

    def __repr__(self):
        return f"Free(rank={self.rank}, twists={list(self.twists)})"


def substitute(p: Polynomial, target: PolyRing, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate p under the ring map sending variable i to images[i]."""
    if len(images) != p.ring.nvars:
        raise ValueError("one image per source variable required")
    out = target.zero
    for e, c in p.terms.items():
        term = target.poly({(0,) * target.nvars: c})
        for i, k in enumerate(e):
            for _ in range(k):
                term = term * images[i]
        out = out + term
    return out


def quotient_ring_from_strings(
    variables: Sequence[str], ideal_texts: Sequence[str], field, order=GREVLEX
) -> QuotientRing:
    from .parse import parse_poly

    ring = PolyRing(variables, field, order)
    gens = [parse_poly(t, ring) for t in ideal_texts]
    return QuotientRing(ring, gens)
