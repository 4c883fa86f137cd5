"""Free resolutions over the ambient polynomial ring, normalized dualizing
complexes, duals of Koszul DG-rings, and Gorenstein checks.

"Dualizing" is by construction (the shifted Hom of a minimal free
resolution over S); the self-Hom axioms are classical facts about that
model and are not re-verified mechanically.  Isomorphism testing between a
dual and a Koszul complex is done at declared comparison levels: Hilbert
series per degree (up to one uniform twist), annihilator equality for
cyclic top homology, and explicit chain isomorphisms where the statement
provides one.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from . import groebner as gb
from .complexes import Complex, tensor_complexes
from .dgring import DGRingRep
from .hilbert import NEG_INF, POS_INF
from .modules import FPModule, Vec, _vec_degree, _vec_is_zero, min_gens
from .poly import Polynomial
from .rings import FreeModule, QuotientRing


def ambient_ring(Q: QuotientRing) -> QuotientRing:
    """Q's ambient polynomial ring S as a QuotientRing with zero ideal."""
    return QuotientRing(Q.poly_ring, ())


class ResolutionError(RuntimeError):
    pass


def free_resolution(X, minimal: bool = True) -> Complex:
    """Free resolution over S of a module or bounded complex over Q = S/J.

    Modules: iterated syzygies with minimal generating sets at every stage
    (the result is minimal, with no unit entries).  With minimal=False the
    stages keep the raw syzygy generators.

    Complexes: assembled from termwise resolutions; supported for zero
    differentials (direct sums of shifted resolutions) and for two-term
    complexes (one lifted chain map).  Longer complexes with nonzero
    differentials would need homotopy corrections and are rejected.
    """
    if isinstance(X, FPModule):
        return _resolve_module(X, minimal)
    if isinstance(X, Complex):
        return _resolve_complex(X, minimal)
    raise TypeError(f"cannot resolve {X!r}")


def _resolve_module(X: FPModule, minimal: bool) -> Complex:
    S = ambient_ring(X.ring)
    ring = S.poly_ring
    pres = X.presentation()
    twists = list(pres.gen_degrees())
    cols = [tuple(v) for v in pres.gen_relations()]
    terms = {0: FPModule.free(S, tuple(twists))}
    diffs = {}
    ambient = FreeModule(S, len(twists), tuple(twists))
    k = 0
    while True:
        cols = [c for c in cols if not _vec_is_zero(c)]
        if minimal:
            cols = min_gens(cols, ambient)
        if not cols:
            break
        k += 1
        if k > ring.nvars + 1:
            raise ResolutionError("resolution exceeded the syzygy bound")
        col_degs = tuple(_vec_degree(c, ambient.twists) for c in cols)
        terms[-k] = FPModule.free(S, col_degs)
        mat = tuple(
            tuple(cols[c][r] for c in range(len(cols)))
            for r in range(ambient.rank)
        )
        diffs[-k] = mat
        tagged = gb.TaggedBasis(
            [gb.vec_from_polys(c) for c in cols], ambient.twists, ring
        )
        cols = [
            gb.polys_from_vec(s, ring, len(cols)) for s in tagged.syzygies()
        ]
        ambient = FreeModule(S, len(col_degs), col_degs)
    resolution = Complex(S, terms, diffs)
    if minimal:
        _assert_minimal(resolution)
    return resolution


def _assert_minimal(res: Complex) -> None:
    for m in res.diffs.values():
        for row in m:
            for p in row:
                if not p.is_zero() and p.total_degree() == 0:
                    raise ResolutionError("unit entry in a minimal resolution")


def complex_direct_sum(parts: Sequence[Complex], ring: QuotientRing) -> Complex:
    """Degreewise direct sum with block-diagonal differentials."""
    from .complexes import direct_sum

    degrees = sorted({i for c in parts for i in c.terms})
    terms = {}
    diffs = {}
    zero = ring.poly_ring.zero
    for i in degrees:
        terms[i] = direct_sum([c.term(i) for c in parts], ring)
    for i in degrees:
        if (i + 1) not in terms:
            continue
        rows = len(terms[i + 1].gens)
        cols_n = len(terms[i].gens)
        if rows == 0 or cols_n == 0:
            continue
        mat = [[zero] * cols_n for _ in range(rows)]
        ro = co = 0
        any_entry = False
        for c in parts:
            src = c.term(i)
            tgt = c.term(i + 1)
            d = c.diffs.get(i)
            if d is not None:
                any_entry = True
                for r in range(len(tgt.gens)):
                    for cc in range(len(src.gens)):
                        mat[ro + r][co + cc] = d[r][cc]
            ro += len(tgt.gens)
            co += len(src.gens)
        if any_entry:
            diffs[i] = tuple(tuple(row) for row in mat)
    return Complex(ring, terms, diffs)


def _lift_chain_map(d_matrix, src_res: Complex, tgt_res: Complex) -> dict:
    """Lift a module map (matrix on degree-0 generators) to a chain map of
    resolutions, degree by degree via explicit membership lifts."""
    S = src_res.ring
    ring = S.poly_ring
    maps = {0: tuple(tuple(row) for row in d_matrix)}
    k = 0
    while (-k - 1) in src_res.terms:
        k += 1
        if (-k) not in tgt_res.terms:
            rows = 0
            maps[-k] = tuple()
            break
        phi_prev = maps[-k + 1]
        d_src = src_res.diffs[-k]
        d_tgt = tgt_res.diffs[-k]
        tgt_cols = [
            gb.vec_from_polys(
                tuple(d_tgt[r][c] for r in range(len(d_tgt)))
            )
            for c in range(len(d_tgt[0]))
        ]
        tagged = gb.TaggedBasis(
            tgt_cols, tgt_res.term(-k + 1).ambient.twists, ring
        )
        new_rows = len(tgt_res.term(-k).gens)
        new_cols = len(src_res.term(-k).gens)
        z = ring.zero
        mat = [[z] * new_cols for _ in range(new_rows)]
        for c in range(new_cols):
            target_vec = {}
            for r in range(len(phi_prev)):
                acc = z
                for m in range(len(d_src)):
                    acc = acc + phi_prev[r][m] * d_src[m][c]
                for e, cc in acc.terms.items():
                    target_vec[(r, e)] = cc
            coeffs = tagged.lift(target_vec)
            if coeffs is None:
                raise ResolutionError("chain lift failed; map not liftable")
            for r, cd in enumerate(coeffs):
                mat[r][c] = Polynomial(ring, dict(cd))
        maps[-k] = tuple(tuple(row) for row in mat)
    return maps


def _resolve_complex(X: Complex, minimal: bool) -> Complex:
    S = ambient_ring(X.ring)
    if not X.diffs:
        parts = []
        for i in sorted(X.terms):
            res = _resolve_module(X.terms[i], minimal)
            parts.append(res.shift(-i))
        return complex_direct_sum(parts, S)
    if len(X.diffs) == 1:
        (a,) = X.diffs
        if set(X.terms) - {a, a + 1}:
            extra = [
                _resolve_module(X.terms[i], minimal).shift(-i)
                for i in sorted(set(X.terms) - {a, a + 1})
            ]
        else:
            extra = []
        src_res = _resolve_module(X.terms[a], minimal)
        tgt_res = _resolve_module(X.terms[a + 1], minimal)
        maps = _lift_chain_map(X.diffs[a], src_res, tgt_res)
        from .complexes import Bicomplex

        grid = {}
        d_h = {}
        d_v = {}
        for q in src_res.terms:
            grid[(a, q)] = src_res.terms[q]
            if q in src_res.diffs:
                d_v[(a, q)] = src_res.diffs[q]
            if q in maps and (a + 1, q) and q in tgt_res.terms:
                if maps[q]:
                    d_h[(a, q)] = maps[q]
        for q in tgt_res.terms:
            grid[(a + 1, q)] = tgt_res.terms[q]
            if q in tgt_res.diffs:
                d_v[(a + 1, q)] = tgt_res.diffs[q]
        two_col = Bicomplex(S, grid, d_h, d_v).total().shift(-a)
        # Tot of the two-column bicomplex lives at degrees (p+q) with p in
        # {a, a+1}; shifting back by -a puts the resolved object at [a, a+1].
        two_col = two_col.shift(a)
        if extra:
            return complex_direct_sum([two_col] + extra, S)
        return two_col
    raise ResolutionError(
        "free resolutions of complexes with more than one nonzero "
        "differential are outside the supported class"
    )


def betti_table(res: Complex) -> dict:
    """{homological step: {internal degree: rank}} of a resolution."""
    out = {}
    for i in sorted(res.terms):
        step = -i
        row: dict[int, int] = {}
        for w in res.terms[i].ambient.twists:
            row[w] = row.get(w, 0) + 1
        out[step] = dict(sorted(row.items()))
    return out


def betti_numbers(res: Complex) -> list[int]:
    return [len(res.term(-k).gens) for k in range(-min(res.terms) + 1)]


# ---------- dualizing complexes ----------

def dualizing_complex(Q: QuotientRing) -> Complex:
    """Normalized dualizing complex of Q: the shifted S-dual of a minimal
    free resolution, with inf = -dim(Q)."""
    if Q.is_trivial():
        raise ValueError("the zero ring has no dualizing complex")
    module = FPModule.free(Q, (0,))
    res = free_resolution(module, minimal=True)
    dual = res.hom_dual()
    shifted = dual.shift(Q.poly_ring.nvars)
    lo = shifted.inf()
    want = -Q.dim()
    if lo != want:
        raise AssertionError(
            f"normalized dualizing complex has inf {lo}, expected {want}"
        )
    return shifted


def koszul_complex_over_ambient(K: DGRingRep) -> Complex:
    """The Koszul complex of K's accumulated lifts, over S."""
    from .complexes import koszul_complex

    root = K.root_ring()
    if root is None or K.provenance[0] != "koszul":
        raise ValueError("expected a Koszul DG-ring over a ring")
    S = ambient_ring(root)
    lifts = K.koszul_lifts()
    return koszul_complex(
        S, [e.rep for e in lifts], degrees=[e.degree for e in lifts]
    )


def dualizing_of_koszul(K: DGRingRep) -> Complex:
    """The dualizing DG-module of a Koszul DG-ring over a ring base,
    computed over S as Tot(K_S(lifts) (x) R)[-n] with R the normalized
    dualizing complex of the base ring."""
    root = K.root_ring()
    if root is None or K.provenance[0] != "koszul":
        raise ValueError("expected a Koszul DG-ring over a ring")
    n = len(K.koszul_lifts())
    KS = koszul_complex_over_ambient(K)
    R = dualizing_complex(root)
    D0 = tensor_complexes(KS, R)
    return D0.shift(-n)


def koszul_tensor_dualizing(K: DGRingRep) -> Complex:
    """Tot(K_S (x) R) without the shift: the complex whose sup and inf the
    dimension bookkeeping of the amplitude computation refers to."""
    root = K.root_ring()
    KS = koszul_complex_over_ambient(K)
    R = dualizing_complex(root)
    return tensor_complexes(KS, R)


# ---------- Gorenstein ----------

def is_gorenstein_ring(Q: QuotientRing) -> tuple[bool, dict]:
    """Gorenstein = Cohen-Macaulay (resolution length equals codimension)
    of type 1 (last Betti number 1).  The Betti table rides along."""
    res = free_resolution(FPModule.free(Q, (0,)), minimal=True)
    length = -min(res.terms)
    codim = Q.poly_ring.nvars - Q.dim()
    cm = length == codim
    last = len(res.term(min(res.terms)).gens)
    data = {
        "betti": betti_numbers(res),
        "betti_table": {str(k): v for k, v in betti_table(res).items()},
        "resolution_length": length,
        "codim": int(codim),
        "cohen_macaulay": cm,
        "type_one": last == 1,
    }
    return cm and last == 1, data


# ---------- self-duality of Koszul complexes ----------

def _subset_sign(T: tuple, n: int) -> int:
    """Sign of the permutation (T ascending, complement ascending) of 0..n-1."""
    comp = tuple(i for i in range(n) if i not in T)
    seq = T + comp
    inv = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inv % 2 else 1


def self_duality_check(K: DGRingRep) -> dict:
    """Exhibit and verify the +-1 chain isomorphism hom_dual(K) = K[-n].

    The map sends the dual basis vector of e_T to
    (-1)^((n+1)|T|) * sgn(T, T^c) * e_{T^c}; every square is checked by
    normal form over the base ring.  The isomorphism is homogeneous of one
    uniform internal twist (the total degree of the lifts).
    """
    lifts = K.koszul_lifts()
    if K.provenance[0] not in ("koszul", "ring") or K.root_ring() is None:
        raise ValueError("expected a Koszul DG-ring over a ring")
    n = len(lifts)
    Q = K.root_ring()
    field = Q.field
    under = K.underlying
    dual = under.hom_dual()
    target = under.shift(-n)
    subsets = {k: list(itertools.combinations(range(n), k)) for k in range(n + 1)}
    phi = {}
    for i in range(n + 1):
        src_sets = subsets[i]
        tgt_sets = subsets[n - i]
        tgt_index = {T: r for r, T in enumerate(tgt_sets)}
        z = Q.poly_ring.zero
        mat = [[z] * len(src_sets) for _ in range(len(tgt_sets))]
        for c, T in enumerate(src_sets):
            comp = tuple(j for j in range(n) if j not in T)
            sign = _subset_sign(T, n)
            if ((n + 1) * len(T)) % 2:
                sign = -sign
            mat[tgt_index[comp]][c] = Q.poly_ring.const(sign)
        phi[i] = tuple(tuple(row) for row in mat)
    squares = {}
    all_ok = True
    from .complexes import _mat_mul

    for i in range(n):
        lhs = _mat_mul(phi[i + 1], dual.diffs[i], Q)
        rhs = _mat_mul(target.diffs[i], phi[i], Q)
        ok = True
        for r in range(len(lhs)):
            for c in range(len(lhs[0]) if lhs else 0):
                if not Q.is_zero(lhs[r][c] - rhs[r][c]):
                    ok = False
        squares[i] = ok
        all_ok = all_ok and ok
    total_twist = sum(e.degree for e in lifts)
    return {
        "pass": all_ok,
        "n": n,
        "squares": {str(i): v for i, v in squares.items()},
        "uniform_twist": total_twist,
        "iso_entries": "plus-minus-one diagonal on complementary subsets",
    }


# ---------- Gorenstein transfer for Koszul DG-rings ----------

def _table_match_up_to_shift(table_a: dict, table_b: dict):
    """Shift s and uniform twist w with a[i] = t^w * b[i+s] for all i."""
    if not table_a and not table_b:
        return 0, 0
    if not table_a or not table_b:
        return None
    s = min(table_b) - min(table_a)
    if set(i + s for i in table_a) != set(table_b):
        return None
    w = None
    for i, hs in sorted(table_a.items()):
        wi = hs.equal_up_to_twist(table_b[i + s])
        if wi is None:
            return None
        if w is None:
            w = wi
        elif w != wi:
            return None
    return s, (w or 0)


def gorenstein_dg_check(K: DGRingRep) -> dict:
    """Gorenstein verdict for a Koszul DG-ring over a ring base.

    true:   the base ring is Gorenstein and the dualizing DG-module is
            isomorphic to K up to shift at the declared comparison level
            (homology Hilbert tables up to one uniform twist, plus
            annihilator equality of the cyclic top homology).
    false:  the Hilbert comparison fails for every admissible shift (the
            classes lie in the irrelevant ideal, so the converse applies).
    unknown: anything else.
    """
    root = K.root_ring()
    if root is None:
        raise ValueError("expected a Koszul DG-ring over a ring")
    goren_ring, ring_data = is_gorenstein_ring(root)
    D = dualizing_of_koszul(K)
    table_k = K.homology_table()
    table_d = D.homology_table()
    match = _table_match_up_to_shift(table_d, table_k)
    level = "hilbert-series"
    ann_equal = None
    if match is not None:
        s, w = match
        top_d = max(table_d) if table_d else 0
        top_k = top_d + s
        hd = D.homology(top_d)
        hk = K.homology(top_k)
        if len(hd.minimize().gens) == 1 and len(hk.minimize().gens) == 1:
            S_poly = root.poly_ring
            closure_k = QuotientRing(
                S_poly, tuple(hk.annihilator()) + root.j_gens
            )
            closure_d = QuotientRing(S_poly, tuple(hd.annihilator()))
            ann_equal = closure_k.groebner() == closure_d.groebner()
            level = "hilbert-series+annihilator"
    if goren_ring and match is not None and ann_equal in (True, None):
        verdict = "true"
    elif match is None:
        verdict = "false"
    else:
        verdict = "unknown"
    return {
        "verdict": verdict,
        "ring_gorenstein": goren_ring,
        "ring_data": ring_data,
        "tables_match": match is not None,
        "shift": None if match is None else match[0],
        "uniform_twist": None if match is None else match[1],
        "top_annihilators_equal": ann_equal,
        "comparison_level": level,
        "table_koszul": {str(i): hs.to_json() for i, hs in sorted(table_k.items())},
        "table_dual": {str(i): hs.to_json() for i, hs in sorted(table_d.items())},
    }
