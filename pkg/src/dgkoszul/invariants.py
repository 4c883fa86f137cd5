"""Numerical invariants of DG-rings and DG-modules.

Depth is computed through the Koszul characterization
depth(I, M) = inf(M (x) K(A; gens)) + n, which only depends on the ideal;
sequential depth is depth - inf(M).  The greedy regular-sequence search is
a cross-check oracle: a negative answer is only certified for the
enumerated candidate set, and budget exhaustion is flagged, never silently
treated as "no regular element".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dgring import DGRingRep, DGModuleRep, ElementOfH0, _as_element, dg_as_module, koszul, koszul_module
from .hilbert import NEG_INF, POS_INF
from .modules import ModuleMap
from .poly import Polynomial
from .rings import QuotientRing


class ImproperIdealError(ValueError):
    pass


class AcyclicModuleError(ValueError):
    pass


def sentinel_json(x):
    if x == POS_INF:
        return "+inf"
    if x == NEG_INF:
        return "-inf"
    return int(x)


def amp_profile(M: DGModuleRep | DGRingRep):
    """(inf, sup, amp) of the cohomology, with sentinels for acyclic input."""
    u = M.underlying
    return u.inf(), u.sup(), u.amp()


def lcdim(M: DGModuleRep | DGRingRep):
    """sup over n of dim(H^n(M)) + n."""
    u = M.underlying
    best = NEG_INF
    for i in u.support:
        h = u.homology(i)
        d = h.dim()
        if d != NEG_INF:
            best = max(best, d + i)
    return best


def kernel_of_multiplication(module, c: Polynomial):
    """Kernel of multiplication by c on an FPModule, in the module's own
    grading (the degree-0 twist is undone)."""
    f = ModuleMap.multiplication(module, c)
    ker = f.kernel()
    d = c.homogeneous_degree() or 0
    return ker.twist(-d)


def is_regular(M: DGModuleRep, x) -> tuple[bool, dict]:
    """x is M-regular iff multiplication by x on H^{inf(M)}(M) is injective."""
    x = _as_element(x, M.over.base)
    lo = M.underlying.inf()
    if lo == POS_INF:
        raise AcyclicModuleError("regularity is undefined for acyclic modules")
    h = M.underlying.homology(lo)
    ker = kernel_of_multiplication(h, x.rep)
    ok = ker.is_zero_module()
    cert = {
        "element": str(x.rep),
        "bottom_degree": int(lo),
        "kernel_is_zero": ok,
    }
    if not ok:
        nz = next(
            (g for g in ker.gens if not ker.element_is_zero(g)), ker.gens[0]
        )
        cert["kernel_witness"] = [str(p) for p in nz]
    return ok, cert


def _check_proper(A: DGRingRep, elems) -> None:
    closure = QuotientRing(
        A.base.poly_ring, A.h0.j_gens + tuple(e.rep for e in elems)
    )
    if closure.is_trivial():
        raise ImproperIdealError("ideal is the unit ideal of H^0")


def depth(A: DGRingRep, ideal_gens, M: DGModuleRep | None = None):
    """depth_A(I, M) = inf(M (x) K(A; gens)) + n for any generating set."""
    elems = [_as_element(e, A.base) for e in ideal_gens]
    _check_proper(A, elems)
    if M is None:
        M = dg_as_module(A)
    if not elems:
        return M.underlying.inf()
    km = koszul_module(M, elems)
    lo = km.underlying.inf()
    if lo == POS_INF:
        return POS_INF
    return lo + len(elems)


def seq_depth(A: DGRingRep, ideal_gens, M: DGModuleRep | None = None):
    """Sequential depth: depth - inf(M)."""
    if M is None:
        M = dg_as_module(A)
    d = depth(A, ideal_gens, M)
    lo = M.underlying.inf()
    if d == POS_INF or lo == POS_INF:
        return POS_INF
    return d - lo


@dataclass
class RegularSequenceWitness:
    elements: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    exhausted: bool = False
    tested: int = 0

    def __len__(self):
        return len(self.elements)

    def to_json(self):
        return {
            "elements": [str(e.rep) for e in self.elements],
            "certificates": self.certificates,
            "exhausted": self.exhausted,
            "tested": self.tested,
        }


def _candidate_pool(B: DGRingRep, gens: list[ElementOfH0], degree_cap: int):
    """Deterministic homogeneous candidates inside the ideal: monomial
    multiples of the generators up to the degree cap, then pairwise sums
    within each degree.  Candidates are H^0-reduced and deduplicated."""
    from .complexes import _monomials_of_degree

    ring = B.base.poly_ring
    h0 = B.h0
    by_degree: dict[int, list[Polynomial]] = {}
    seen = set()
    for g in gens:
        if g.rep.is_zero():
            continue
        for d in range(g.degree, degree_cap + 1):
            for mono in _monomials_of_degree(ring.nvars, d - g.degree):
                cand = h0.nf(g.rep.mul_term(mono, ring.field.one))
                if cand.is_zero():
                    continue
                key = cand.sort_key()
                if key in seen:
                    continue
                seen.add(key)
                by_degree.setdefault(d, []).append(cand)
    pool = []
    for d in sorted(by_degree):
        singles = sorted(by_degree[d], key=lambda p: p.sort_key())
        pool.extend(singles)
        for a, b in itertools.combinations(singles, 2):
            s = h0.nf(a + b)
            if s.is_zero():
                continue
            key = s.sort_key()
            if key in seen:
                continue
            seen.add(key)
            pool.append(s)
    return pool


def greedy_regular_sequence(
    A: DGRingRep,
    ideal_gens,
    budget: int = 400,
    degree_cap: int = 2,
    max_len: int | None = None,
) -> RegularSequenceWitness:
    """Greedy search for a maximal regular sequence inside the ideal.

    Each found element passes to the Koszul DG-ring and the search
    recurses on the ideal's image.  The witness records per-step kernel
    certificates and whether the budget ran out before the candidate pool
    was fully examined.
    """
    elems = [_as_element(e, A.base) for e in ideal_gens]
    _check_proper(A, elems)
    witness = RegularSequenceWitness()
    stage = A
    remaining = budget
    while True:
        if stage.underlying.inf() == POS_INF:
            break
        pool = _candidate_pool(stage, elems, degree_cap)
        advanced = False
        for cand in pool:
            if remaining <= 0:
                witness.exhausted = True
                return witness
            remaining -= 1
            witness.tested += 1
            ok, cert = is_regular(dg_as_module(stage), cand)
            if ok:
                el = ElementOfH0(cand)
                witness.elements.append(el)
                witness.certificates.append(cert)
                stage = koszul(stage, [el])
                advanced = True
                break
        if not advanced:
            break
        if max_len is not None and len(witness) >= max_len:
            break
    return witness


def is_local_cm(A: DGRingRep) -> bool:
    """Local-Cohen-Macaulay at the irrelevant ideal: seq.depth = dim H^0.

    dim H^0 = 0 short-circuits to True.
    """
    if "local_cm" in A._cache:
        return A._cache["local_cm"]
    if A.h0.is_trivial():
        result = True
    else:
        d0 = A.h0.dim()
        result = d0 == 0 or seq_depth(A, A.irrelevant_ideal()) == d0
    A._cache["local_cm"] = result
    return result


def has_constant_amplitude(A: DGRingRep) -> bool:
    """Supp(H^{inf}) = Spec(H^0): every annihilator generator of the bottom
    cohomology is nilpotent in H^0."""
    if "constant_amplitude" in A._cache:
        return A._cache["constant_amplitude"]
    lo = A.underlying.inf()
    result = True
    if lo != POS_INF:
        h = A.underlying.homology(lo)
        for g in h.annihilator():
            if not A.h0.is_nilpotent(A.h0.nf(g)):
                result = False
                break
    A._cache["constant_amplitude"] = result
    return result


def cm_certify(A: DGRingRep) -> str:
    """'false' if not local-CM; 'true' if local-CM with constant amplitude;
    'unknown' otherwise (localization at other primes is not mechanized)."""
    if not is_local_cm(A):
        return "false"
    if has_constant_amplitude(A):
        return "true"
    return "unknown"


class NonLocalMapError(ValueError):
    pass


def homotopy_fiber(source_vars, images, B: DGRingRep) -> DGRingRep:
    """Derived fiber of a map from the regular ring on source_vars into B.

    Each variable image must be a non-unit class of H^0(B) (zero is
    allowed); the fiber is the Koszul DG-ring on the images.
    """
    elems = [_as_element(e, B.base) for e in images]
    if len(elems) != len(source_vars):
        raise ValueError("one image per source variable required")
    for e in elems:
        red = B.h0.nf(e.rep)
        if not red.is_zero() and red.total_degree() == 0:
            raise NonLocalMapError(f"image {e.rep} is a unit in H^0")
    fiber = koszul(B, elems)
    return DGRingRep(
        fiber.base,
        fiber.underlying,
        fiber.h0,
        ("koszul", B, tuple(elems), "homotopy-fiber"),
    )


def flatdim_over_regular(source_vars, images, B: DGRingRep) -> dict:
    """Flat dimension of B over the regular source, as amp of the homotopy
    fiber, together with the dimension-count right-hand side.

    The two sides are compared when B is CM-certified with constant
    amplitude, the hypotheses of the dimension formula.
    """
    fiber = homotopy_fiber(source_vars, images, B)
    flat = fiber.amp()
    elems = [_as_element(e, B.base) for e in images]
    fiber_ring = QuotientRing(
        B.base.poly_ring, B.h0.j_gens + tuple(e.rep for e in elems)
    )
    dim_a = len(source_vars)
    dim_b = B.h0.dim()
    dim_fiber_ring = NEG_INF if fiber_ring.is_trivial() else fiber_ring.dim()
    amp_b = B.amp()
    cm = cm_certify(B)
    const = has_constant_amplitude(B)
    rhs = None
    if dim_b != NEG_INF and dim_fiber_ring != NEG_INF and amp_b != NEG_INF:
        rhs = dim_a - dim_b + dim_fiber_ring + amp_b
    return {
        "flatdim": sentinel_json(flat),
        "rhs": None if rhs is None else sentinel_json(rhs),
        "dim_source": dim_a,
        "dim_h0_target": sentinel_json(dim_b),
        "dim_fiber_ring": sentinel_json(dim_fiber_ring),
        "amp_target": sentinel_json(amp_b),
        "cm_certified": cm,
        "constant_amplitude": const,
        "hypotheses_met": cm == "true" and const,
        "sides_equal": (rhs is not None and flat == rhs),
        "fiber_homology": {
            str(i): hs.to_json() for i, hs in sorted(fiber.homology_table().items())
        },
    }


@dataclass
class InvariantReport:
    inf: object
    sup: object
    amp: object
    dim_h0: object
    lcdim: object
    depth_at_irrelevant: object
    seq_depth_at_irrelevant: object
    local_cm: bool
    constant_amplitude: bool
    cm_certified: str
    homology: dict
    per_ideal: list = field(default_factory=list)
    witness: dict | None = None

    def to_json(self):
        return {
            "inf": sentinel_json(self.inf),
            "sup": sentinel_json(self.sup),
            "amp": sentinel_json(self.amp),
            "dim_h0": sentinel_json(self.dim_h0),
            "lcdim": sentinel_json(self.lcdim),
            "depth_at_irrelevant": sentinel_json(self.depth_at_irrelevant),
            "seq_depth_at_irrelevant": sentinel_json(self.seq_depth_at_irrelevant),
            "local_cm": self.local_cm,
            "constant_amplitude": self.constant_amplitude,
            "cm_certified": self.cm_certified,
            "homology": self.homology,
            "per_ideal": self.per_ideal,
            "witness": self.witness,
        }


def compute_invariants(
    A: DGRingRep,
    ideals: dict | None = None,
    with_witness: bool = True,
    budget: int = 400,
) -> InvariantReport:
    lo, hi, a = amp_profile(A)
    irr = A.irrelevant_ideal()
    d = depth(A, irr)
    sd = seq_depth(A, irr)
    per_ideal = []
    for name, gens in (ideals or {}).items():
        elems = [_as_element(e, A.base) for e in gens]
        per_ideal.append(
            {
                "ideal": name,
                "generators": [str(e.rep) for e in elems],
                "depth": sentinel_json(depth(A, elems)),
                "seq_depth": sentinel_json(seq_depth(A, elems)),
            }
        )
    witness = None
    if with_witness and not A.h0.is_trivial():
        witness = greedy_regular_sequence(A, irr, budget=budget).to_json()
    return InvariantReport(
        inf=lo,
        sup=hi,
        amp=a,
        dim_h0=NEG_INF if A.h0.is_trivial() else A.h0.dim(),
        lcdim=lcdim(A),
        depth_at_irrelevant=d,
        seq_depth_at_irrelevant=sd,
        local_cm=is_local_cm(A),
        constant_amplitude=has_constant_amplitude(A),
        cm_certified=cm_certify(A),
        homology={
            str(i): hs.to_json() for i, hs in sorted(A.homology_table().items())
        },
        per_ideal=per_ideal,
        witness=witness,
    )
