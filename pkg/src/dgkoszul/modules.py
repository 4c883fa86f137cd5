"""Finitely presented graded modules as subquotients, and maps between them.

An FPModule is (generators, relations) inside a common free ambient module
over Q = S/J; the module is span(gens) + N modulo N, where N is the span
of the relations together with J times the ambient basis.  Most
constructions return modules in cokernel form (generators equal to the
ambient basis); kernels and homology pass through general subquotients and
are minimized back to cokernel form.
"""

from __future__ import annotations

from typing import Sequence

from . import groebner as gb
from .hilbert import NEG_INF, HilbertSeries, lead_module_series
from .poly import Polynomial
from .rings import FreeModule, QuotientRing

Vec = tuple  # tuple[Polynomial, ...] indexed by ambient component


def _vec_is_zero(v: Vec) -> bool:
    return all(p.is_zero() for p in v)


def _vec_degree(v: Vec, twists) -> int | None:
    degs = set()
    for comp, p in enumerate(v):
        d = p.homogeneous_degree()
        if d is None and not p.is_zero():
            return None
        if d is not None:
            degs.add(d + twists[comp])
    if len(degs) > 1:
        return None
    return degs.pop() if degs else None


def _vec_sort_key(v: Vec):
    return tuple(p.sort_key() for p in v)


class FPModule:
    """Graded subquotient over a QuotientRing."""

    def __init__(
        self,
        ambient: FreeModule,
        gens: Sequence[Vec],
        rels: Sequence[Vec] = (),
        check: bool = True,
    ):
        self.ambient = ambient
        self.ring = ambient.ring
        self.gens = tuple(tuple(v) for v in gens)
        self.rels = tuple(tuple(v) for v in rels if not _vec_is_zero(v))
        if check:
            for v in list(self.gens) + list(self.rels):
                if len(v) != ambient.rank:
                    raise ValueError("vector length does not match ambient rank")
                if not _vec_is_zero(v) and _vec_degree(v, ambient.twists) is None:
                    raise gb.InhomogeneousError("inhomogeneous column")
        self._gen_degrees = None
        self._rels_tagged = None
        self._gen_relations = None
        self._hilbert = None
        self._minimal = None
        self._annihilator = None

    # -- constructors --

    @classmethod
    def cokernel(
        cls, ring: QuotientRing, twists: Sequence[int], rels: Sequence[Vec] = ()
    ) -> FPModule:
        F = FreeModule(ring, len(twists), twists)
        return cls(F, [F.basis_vector(i) for i in range(F.rank)], rels)

    @classmethod
    def free(cls, ring: QuotientRing, twists: Sequence[int]) -> FPModule:
        return cls.cokernel(ring, twists, ())

    @classmethod
    def zero(cls, ring: QuotientRing) -> FPModule:
        return cls.cokernel(ring, (), ())

    @classmethod
    def quotient_by_ideal(cls, ring: QuotientRing, ideal: Sequence[Polynomial]) -> FPModule:
        return cls.cokernel(ring, (0,), [(p,) for p in ideal])

    # -- structure --

    @property
    def is_cokernel(self) -> bool:
        if len(self.gens) != self.ambient.rank:
            return False
        return all(
            self.gens[i] == self.ambient.basis_vector(i)
            for i in range(self.ambient.rank)
        )

    def gen_degrees(self) -> tuple[int, ...]:
        if self._gen_degrees is None:
            degs = []
            for i, v in enumerate(self.gens):
                d = _vec_degree(v, self.ambient.twists)
                if d is None:
                    # zero generator: keep a placeholder degree
                    d = self.ambient.twists[i] if self.is_cokernel else 0
                degs.append(d)
            self._gen_degrees = tuple(degs)
        return self._gen_degrees

    def _relation_columns(self) -> list[Vec]:
        return list(self.rels) + self.ambient.j_columns()

    def rels_tagged(self) -> gb.TaggedBasis:
        """Tagged basis of N = span(rels) + J * ambient."""
        if self._rels_tagged is None:
            cols = [gb.vec_from_polys(v) for v in self._relation_columns()]
            self._rels_tagged = gb.TaggedBasis(
                cols, self.ambient.twists, self.ring.poly_ring
            )
        return self._rels_tagged

    def reduce_ambient(self, v: Vec) -> Vec:
        """Normal form of an ambient vector modulo N."""
        r = self.rels_tagged().reduce(gb.vec_from_polys(v))
        return gb.polys_from_vec(r, self.ring.poly_ring, self.ambient.rank)

    def element_is_zero(self, v: Vec) -> bool:
        return _vec_is_zero(self.reduce_ambient(v))

    def is_zero_module(self) -> bool:
        return all(self.element_is_zero(g) for g in self.gens)

    def element_from_coords(self, coords: Sequence[Polynomial]) -> Vec:
        """Ambient vector of sum coords[j] * gens[j]."""
        zero = self.ring.poly_ring.zero
        out = [zero] * self.ambient.rank
        for c, g in zip(coords, self.gens):
            if c.is_zero():
                continue
            for comp in range(self.ambient.rank):
                out[comp] = out[comp] + c * g[comp]
        return tuple(out)

    def gen_relations(self) -> list[Vec]:
        """Columns c in S^k with sum c_j gens_j in N: the presentation of
        this module as a cokernel on its generators."""
        if self._gen_relations is not None:
            return self._gen_relations
        k = len(self.gens)
        ring = self.ring.poly_ring
        if self.is_cokernel:
            cols = [tuple(v) for v in self._relation_columns()]
            self._gen_relations = cols
            return cols
        all_cols = [gb.vec_from_polys(v) for v in self.gens] + [
            gb.vec_from_polys(v) for v in self._relation_columns()
        ]
        tagged = gb.TaggedBasis(all_cols, self.ambient.twists, ring)
        out = []
        for s in tagged.syzygies():
            col = gb.polys_from_vec(
                {t: c for t, c in s.items() if t[0] < k}, ring, k
            )
            if not _vec_is_zero(col):
                out.append(col)
        self._gen_relations = out
        return out

    def presentation(self) -> FPModule:
        """The same module in cokernel form on its current generators."""
        if self.is_cokernel:
            return self
        return FPModule.cokernel(self.ring, self.gen_degrees(), self.gen_relations())

    # -- invariants --

    def hilbert_series(self) -> HilbertSeries:
        if self._hilbert is not None:
            return self._hilbert
        ring = self.ring.poly_ring
        order = gb.TermOverPosition(ring.order)
        rel_cols = [gb.vec_from_polys(v) for v in self._relation_columns()]
        series_n = self._series_of_quotient(rel_cols, order)
        if self.is_cokernel:
            self._hilbert = series_n
            return self._hilbert
        full = rel_cols + [gb.vec_from_polys(v) for v in self.gens]
        series_gn = self._series_of_quotient(full, order)
        self._hilbert = series_n - series_gn
        return self._hilbert

    def _series_of_quotient(self, cols, order) -> HilbertSeries:
        basis = gb.buchberger(
            cols,
            self.ambient.twists,
            order,
            self.ring.field,
            rank=self.ambient.rank,
        )
        leads = [gb.leading_term(v, order) for v in basis]
        return lead_module_series(
            leads, self.ambient.rank, self.ambient.twists, self.ring.nvars
        )

    def dim(self):
        """Krull dimension: pole order of the Hilbert series (-inf if zero)."""
        return self.hilbert_series().pole_order

    def annihilator(self) -> list[Polynomial]:
        """Generators (in S, containing J) of ann_Q(M).

        Computed as the syzygy coefficient on the stacked column
        (g_1, ..., g_k) inside the direct sum of k twisted copies of the
        ambient module, against all relations in each copy.
        """
        if self._annihilator is not None:
            return self._annihilator
        ring = self.ring.poly_ring
        k = len(self.gens)
        if k == 0:
            one = ring.one
            self._annihilator = [one]
            return self._annihilator
        r = self.ambient.rank
        degs = self.gen_degrees()
        big_twists = []
        for j in range(k):
            big_twists.extend(t - degs[j] for t in self.ambient.twists)
        stacked: gb.ModVec = {}
        for j, g in enumerate(self.gens):
            for comp, p in enumerate(g):
                for e, c in p.terms.items():
                    stacked[(j * r + comp, e)] = c
        cols = [stacked]
        for j in range(k):
            for rel in self._relation_columns():
                col = {}
                for comp, p in enumerate(rel):
                    for e, c in p.terms.items():
                        col[(j * r + comp, e)] = c
                if col:
                    cols.append(col)
        tagged = gb.TaggedBasis(cols, tuple(big_twists), ring)
        anns = []
        zero_expo = (0,) * ring.nvars
        for s in tagged.syzygies():
            poly_terms = {e: c for (idx, e), c in s.items() if idx == 0}
            if poly_terms:
                anns.append(Polynomial(ring, poly_terms))
        anns = [self.ring.nf(p) for p in anns]
        anns = sorted({p for p in anns if not p.is_zero()}, key=lambda p: p.sort_key())
        self._annihilator = anns
        return self._annihilator

    # -- minimization --

    def minimize(self) -> FPModule:
        """Minimal cokernel presentation (no unit entries in the relations)."""
        if self._minimal is not None:
            return self._minimal
        cols = [list(c) for c in self.gen_relations()]
        degs = list(self.gen_degrees())
        field = self.ring.field
        changed = True
        while changed:
            changed = False
            for ci, col in enumerate(cols):
                pivot = None
                for ri, entry in enumerate(col):
                    if not entry.is_zero() and entry.total_degree() == 0:
                        pivot = ri
                        break
                if pivot is None:
                    continue
                lam = col[pivot].constant_coeff()
                lam_inv = field.inv(lam)
                for cj, other in enumerate(cols):
                    if cj == ci or other[pivot].is_zero():
                        continue
                    factor = other[pivot].scale(lam_inv)
                    cols[cj] = [
                        o - factor * c for o, c in zip(other, col)
                    ]
                del cols[ci]
                for c in cols:
                    del c[pivot]
                del degs[pivot]
                changed = True
                break
        clean = []
        seen = set()
        for c in cols:
            tup = tuple(c)
            if _vec_is_zero(tup):
                continue
            key = _vec_sort_key(tup)
            if key in seen:
                continue
            seen.add(key)
            clean.append(tup)
        clean.sort(key=_vec_sort_key)
        # Relations are only defined modulo J, so redundancy is tested
        # against the kept columns together with the J-multiples.
        ambient = FreeModule(self.ring, len(degs), tuple(degs))
        clean = min_gens(clean, ambient, baseline=ambient.j_columns())
        result = FPModule.cokernel(self.ring, tuple(degs), clean)
        result._minimal = result
        self._minimal = result
        return result

    def minimal_rank(self) -> int:
        return len(self.minimize().gens)

    def twist(self, w: int) -> FPModule:
        """Shift all internal degrees up by w (the module M(-w) convention
        is left to callers; this just adds w to every twist)."""
        F = FreeModule(
            self.ambient.ring,
            self.ambient.rank,
            tuple(t + w for t in self.ambient.twists),
        )
        return FPModule(F, self.gens, self.rels, check=False)

    def __repr__(self):
        return (
            f"FPModule(rank={self.ambient.rank}, gens={len(self.gens)}, "
            f"rels={len(self.rels)})"
        )


class ModuleMap:
    """Degree-0 graded map between FPModules, given on generators.

    matrix[i][j] is the coefficient of target generator i in the image of
    source generator j.
    """

    def __init__(self, source: FPModule, target: FPModule, matrix):
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(row) for row in matrix)
        if len(self.matrix) != len(target.gens):
            raise ValueError("matrix row count must equal target generators")
        for row in self.matrix:
            if len(row) != len(source.gens):
                raise ValueError("matrix column count must equal source generators")

    @classmethod
    def zero(cls, source: FPModule, target: FPModule) -> ModuleMap:
        z = source.ring.poly_ring.zero
        return cls(
            source,
            target,
            [[z] * len(source.gens) for _ in range(len(target.gens))],
        )

    @classmethod
    def multiplication(cls, module: FPModule, c: Polynomial) -> ModuleMap:
        """Multiplication by c as a degree-0 map M(twisted) -> M."""
        d = c.homogeneous_degree()
        if d is None:
            if not c.is_zero():
                raise gb.InhomogeneousError("multiplier must be homogeneous")
            d = 0
        source = module.twist(d)
        z = module.ring.poly_ring.zero
        k = len(module.gens)
        matrix = [[c if i == j else z for j in range(k)] for i in range(k)]
        return cls(source, module, matrix)

    def column_vectors(self) -> list[Vec]:
        """Images of the source generators as ambient vectors of the target."""
        out = []
        for j in range(len(self.source.gens)):
            coords = [self.matrix[i][j] for i in range(len(self.target.gens))]
            out.append(self.target.element_from_coords(coords))
        return out

    def is_well_defined(self) -> bool:
        """Image of every source relation lies in the target relations."""
        for col in self.source.gen_relations():
            coords = []
            for i in range(len(self.target.gens)):
                acc = self.source.ring.poly_ring.zero
                for j, cj in enumerate(col):
                    acc = acc + self.matrix[i][j] * cj
                coords.append(acc)
            image = self.target.element_from_coords(coords)
            if not self.target.element_is_zero(image):
                return False
        return True

    def kernel(self) -> FPModule:
        """Kernel as a subquotient of the source.

        Coefficient vectors c with matrix * c inside the target relations
        are found by syzygies of [matrix columns | target presentation]
        projected to the source coordinates.
        """
        ring = self.source.ring.poly_ring
        k_src = len(self.source.gens)
        k_tgt = len(self.target.gens)
        tgt_degs = self.target.gen_degrees()
        cols = []
        for j in range(k_src):
            col: gb.ModVec = {}
            for i in range(k_tgt):
                for e, c in self.matrix[i][j].terms.items():
                    col[(i, e)] = c
            cols.append(col)
        n_cols = len(cols)
        for rel in self.target.gen_relations():
            cols.append(gb.vec_from_polys(rel))
        tagged = gb.TaggedBasis(cols, tgt_degs, ring)
        gens = []
        for s in tagged.syzygies():
            coeffs = gb.polys_from_vec(
                {t: c for t, c in s.items() if t[0] < n_cols}, ring, k_src
            )
            if _vec_is_zero(coeffs):
                continue
            vec = self.source.element_from_coords(coeffs)
            gens.append(vec)
        dedup = []
        seen = set()
        for v in sorted(gens, key=_vec_sort_key):
            key = _vec_sort_key(v)
            if key not in seen and not _vec_is_zero(v):
                seen.add(key)
                dedup.append(v)
        return FPModule(self.source.ambient, dedup, self.source.rels, check=False)

    def image(self) -> FPModule:
        gens = [v for v in self.column_vectors() if not _vec_is_zero(v)]
        return FPModule(self.target.ambient, gens, self.target.rels, check=False)

    def is_injective(self) -> bool:
        return self.kernel().is_zero_module()

    def __repr__(self):
        return f"ModuleMap({len(self.source.gens)} -> {len(self.target.gens)})"


def module_dim(m: FPModule):
    return m.dim()


def module_hilbert(m: FPModule) -> HilbertSeries:
    return m.hilbert_series()


def annihilator(m: FPModule) -> list[Polynomial]:
    return m.annihilator()


def minimize(m: FPModule) -> FPModule:
    return m.minimize()


def min_gens(
    columns: Sequence[Vec], ambient: FreeModule, baseline: Sequence[Vec] = ()
) -> list[Vec]:
    """A minimal generating subset of the given homogeneous columns.

    Greedy by ascending degree with membership tests against the kept
    part; for graded modules this realizes the Nakayama minimal count.
    Baseline columns (e.g. the J-multiples of the basis, when generation
    is only needed modulo J) always span but are never kept.
    """
    ring = ambient.ring.poly_ring
    field = ambient.ring.field
    order = gb.TermOverPosition(ring.order)
    candidates = [c for c in columns if not _vec_is_zero(c)]
    candidates.sort(key=lambda v: (_vec_degree(v, ambient.twists), _vec_sort_key(v)))
    base_vecs = [gb.vec_from_polys(v) for v in baseline if not _vec_is_zero(v)]
    kept: list[Vec] = []

    def rebuild():
        return gb.buchberger(
            [gb.vec_from_polys(v) for v in kept] + base_vecs,
            ambient.twists,
            order,
            field,
            rank=ambient.rank,
        )

    basis = rebuild() if base_vecs else []
    for cand in candidates:
        vec = gb.vec_from_polys(cand)
        if basis:
            rem = gb.normal_form(vec, basis, order, field)
            if not rem:
                continue
        kept.append(cand)
        basis = rebuild()
    return kept
