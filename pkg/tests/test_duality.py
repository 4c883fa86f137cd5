from __future__ import annotations

import pytest

from conftest import poly, ring
from dgkoszul import (
    Complex,
    FPModule,
    betti_numbers,
    depth,
    dg_as_module,
    dg_from_ring,
    dualizing_complex,
    dualizing_of_koszul,
    free_resolution,
    gorenstein_dg_check,
    is_gorenstein_ring,
    koszul,
    self_duality_check,
    trivial_extension,
)
from dgkoszul.complexes import truncation_oracle, homology_hilbert_functions
from dgkoszul.duality import betti_table, koszul_tensor_dualizing, ResolutionError


def test_betti_numbers_of_residue_field():
    Q = ring("x", "y")
    k_mod = FPModule.quotient_by_ideal(Q, [poly("x", Q), poly("y", Q)])
    assert betti_numbers(free_resolution(k_mod)) == [1, 2, 1]


def test_betti_numbers_of_hypersurface():
    Q = ring("x", "y", ideal=["x*y"])
    assert betti_numbers(free_resolution(FPModule.free(Q, (0,)))) == [1, 1]


def test_betti_numbers_of_socle_ring():
    Q = ring("x", "y", ideal=["x^2", "x*y"])
    res = free_resolution(FPModule.free(Q, (0,)))
    assert betti_numbers(res) == [1, 2, 1]
    # the single second syzygy is (y, -x) in the twisted basis
    assert -min(res.terms) == 2


def test_resolution_is_exact_and_minimal():
    fixtures = [
        ring("x", "y", ideal=["x*y"]),
        ring("x", "y", ideal=["x^2", "x*y"]),
        ring("x", "y", "z", ideal=["x^2", "x*y", "y^2"]),
        ring("x", "y", "z", "w", ideal=["x*y - z*w"]),
    ]
    for Q in fixtures:
        res = free_resolution(FPModule.free(Q, (0,)))
        res.validate()
        assert -min(res.terms) <= Q.poly_ring.nvars
        # H^0 = the module, all other homology vanishes
        assert res.homology(0).hilbert_series() == Q.hilbert_series()
        for i in res.support:
            if i != 0:
                assert res.homology(i).is_zero_module()
        for m in res.diffs.values():
            for row in m:
                for p in row:
                    assert p.is_zero() or p.total_degree() > 0


def test_resolution_of_zero_differential_complex():
    B = ring("x", "y", ideal=["x*y"])
    M = FPModule.quotient_by_ideal(B, [poly("x", B)])
    ext = trivial_extension(B, M, 2)
    res = free_resolution(ext.underlying)
    res.validate()
    for i, hs in ext.underlying.homology_table().items():
        assert res.homology(i).hilbert_series() == hs


def test_resolution_of_two_term_complex():
    # the Koszul complex of x over k[x,y]/(xy), resolved over S
    Q = ring("x", "y", ideal=["x*y"])
    K = koszul(dg_from_ring(Q), ["x"])
    res = free_resolution(K.underlying)
    res.validate()
    for i, hs in K.underlying.homology_table().items():
        assert res.homology(i).hilbert_series() == hs


def test_resolution_rejects_long_nonzero_complexes():
    Q = ring("x", "y", ideal=["x*y"])
    K = koszul(dg_from_ring(Q), ["x", "y"])
    with pytest.raises(ResolutionError):
        free_resolution(K.underlying)


def test_dualizing_complex_of_regular_ring():
    R = dualizing_complex(ring("x", "y", "z"))
    assert R.amp() == 0
    assert R.inf() == -3


def test_dualizing_complex_of_gorenstein_hypersurface():
    Q = ring("x", "y", ideal=["x*y"])
    R = dualizing_complex(Q)
    assert R.amp() == 0 and R.inf() == -1
    top = R.homology(-1).minimize()
    assert len(top.gens) == 1  # cyclic


def test_dualizing_complex_detects_non_cm():
    R = dualizing_complex(ring("x", "y", ideal=["x^2", "x*y"]))
    assert R.amp() == 1
    assert R.inf() == -1


def test_dualizing_amp_lower_bound():
    for Q in (
        ring("x", "y"),
        ring("x", "y", ideal=["x*y"]),
        ring("x", "y", ideal=["x^2", "x*y"]),
        ring("x", "y", "z", ideal=["x^2", "x*y", "y^2"]),
    ):
        assert dualizing_complex(Q).amp() >= 0


def test_gorenstein_ring_classification():
    assert is_gorenstein_ring(ring("x", "y", ideal=["x*y"]))[0]
    assert not is_gorenstein_ring(ring("x", "y", ideal=["x^2", "x*y"]))[0]
    gor, data = is_gorenstein_ring(ring("x", "y", "z", ideal=["x^2", "x*y", "y^2"]))
    assert not gor
    assert data["cohen_macaulay"] and not data["type_one"]
    assert data["betti"] == [1, 3, 2]
    assert is_gorenstein_ring(ring("x", "y", "z", ideal=["x^2 - y*z"]))[0]
    assert is_gorenstein_ring(ring("x", "y"))[0]


@pytest.mark.parametrize(
    "variables,ideal,elements",
    [
        (("x",), (), ["x"]),
        (("x", "y"), ("x*y",), ["x", "y"]),
        (("x", "y", "z"), (), ["x+y", "z"]),
        (("x", "y", "z"), (), ["x", "y", "z"]),
        (("x", "y", "z", "w"), ("x*y - z*w",), ["x", "z"]),
    ],
)
def test_self_duality_isomorphism(variables, ideal, elements):
    Q = ring(*variables, ideal=ideal)
    K = koszul(dg_from_ring(Q), elements)
    rep = self_duality_check(K)
    assert rep["pass"]
    assert all(rep["squares"].values())


def test_self_duality_empty_sequence():
    A = dg_from_ring(ring("x"))
    assert self_duality_check(A)["pass"]


def test_amp_of_dual_matches_on_cm_fixtures():
    fixtures = [
        (ring("x", "y", "z"), ["x", "y", "x"]),
        (ring("x", "y", ideal=["x*y"]), ["x"]),
        (ring("x", "y", ideal=["x*y"]), ["x", "y"]),
        (ring("x", "y", "z", "w", ideal=["x*y - z*w"]), ["x", "z"]),
    ]
    for Q, elements in fixtures:
        K = koszul(dg_from_ring(Q), elements)
        D = dualizing_of_koszul(K)
        assert D.amp() == K.amp()


def test_sup_and_inf_of_koszul_tensor_dualizing():
    # sup(K (x) R) = amp(A) - dim(H0 A); inf(K (x) R) = -dim(H0/I) - n
    fixtures = [
        (ring("x", "y", ideal=["x*y"]), ["x"]),
        (ring("x", "y", "z"), ["x + y"]),
        (ring("x", "y", "z", "w", ideal=["x*y - z*w"]), ["x", "z"]),
    ]
    for Q, elements in fixtures:
        A = dg_from_ring(Q)
        K = koszul(A, elements)
        KR = koszul_tensor_dualizing(K)
        assert KR.sup() == 0 - Q.dim()
        from dgkoszul.rings import QuotientRing

        quotient = QuotientRing(
            Q.poly_ring, Q.j_gens + tuple(poly(t, Q) for t in elements)
        )
        assert KR.inf() == -quotient.dim() - len(elements)


def test_gorenstein_transfer_positive_and_negative():
    Qxy = ring("x", "y", ideal=["x*y"])
    for elements in (["x"], ["x", "y"], ["x + y"]):
        assert gorenstein_dg_check(koszul(dg_from_ring(Qxy), elements))["verdict"] == "true"
    Qhyp = ring("x", "y", "z", ideal=["x^2 - y*z"])
    for elements in (["y"], ["y", "z"], ["x"]):
        assert gorenstein_dg_check(koszul(dg_from_ring(Qhyp), elements))["verdict"] == "true"
    Qt2 = ring("x", "y", "z", ideal=["x^2", "x*y", "y^2"])
    rep = gorenstein_dg_check(koszul(dg_from_ring(Qt2), ["z"]))
    assert rep["verdict"] == "false"
    assert not rep["tables_match"]


def test_dual_of_koszul_requires_koszul_provenance():
    B = ring("x")
    ext = trivial_extension(B, FPModule.free(B, (0,)), 1)
    with pytest.raises(ValueError):
        dualizing_of_koszul(ext)
