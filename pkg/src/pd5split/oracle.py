"""Independent chain-level verification of the splitting pipeline.

Everything here recomputes homology from boundary matrices via Smith
normal form only; it never consults the splitter's case analysis or the
block homotopy tables, so a bug shared with the pipeline cannot hide.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import FgAbGroup, GradedGroup, IntMatrix, direct_sum
from .blocks import (ChainComplex, Moore, SigmaCP2, SigmaCP2Tw, Sphere,
                     block_chain_complex, empty_complex)
from .splitter import (Coeffs4, Coeffs5, FMap, HomologyTable, Move,
                       SplitResult, WedgeClass, apply_move, build_w4,
                       normalize_coeffs5, split)


def complex_of_wedge(w: WedgeClass) -> ChainComplex:
    cc = empty_complex()
    for _ in range(w.n3):
        cc = cc.direct_sum(block_chain_complex(Sphere(3)))
    for _ in range(w.n4):
        cc = cc.direct_sum(block_chain_complex(Sphere(4)))
    for _ in range(w.n5):
        cc = cc.direct_sum(block_chain_complex(Sphere(5)))
    for r in w.evens:
        cc = cc.direct_sum(block_chain_complex(Moore(2 ** r)))
    for t in w.odds:
        cc = cc.direct_sum(block_chain_complex(Moore(t)))
    for _ in range(w.b):
        cc = cc.direct_sum(block_chain_complex(SigmaCP2()))
    for s in w.tw:
        cc = cc.direct_sum(block_chain_complex(SigmaCP2Tw(s)))
    return cc


def cone_blocks(f: FMap) -> list:
    """The wedge summands absorbed into the exceptional cone."""
    out = []
    if f.family == 4:
        out.append(Moore(2 ** f.r))
    else:
        if f.x:
            if f.family == 1:
                out.append(Sphere(4))
            elif f.family == 2:
                out.append(Sphere(3))
            else:
                out.append(Moore(2 ** f.rho))
        if f.y:
            out.append(Moore(2 ** f.r))
    if f.z:
        out.append(SigmaCP2Tw(f.s))
    return out


def complex_of_cone(f: FMap) -> ChainComplex:
    """Cell structure of the suspended cone of f.

    The top boundary vanishes for every family: eta, eta squared, the xi
    and eps classes are all torsion, so their degree on homology is zero.
    """
    cc = empty_complex()
    for b in cone_blocks(f):
        cc = cc.direct_sum(block_chain_complex(b))
    top = ChainComplex.build({6: 1}, {})
    return cc.direct_sum(top)


def complex_of_result(s: SplitResult) -> ChainComplex:
    cc = empty_complex()
    for _ in range(s.s2_count):
        cc = cc.direct_sum(block_chain_complex(Sphere(2)))
    cc = cc.direct_sum(complex_of_wedge(s.wedge))
    if s.f is not None:
        cc = cc.direct_sum(complex_of_cone(s.f))
    else:
        cc = cc.direct_sum(ChainComplex.build({6: 1}, {}))
    return cc


def expected_homology(h: HomologyTable) -> GradedGroup:
    """The input table shifted up one degree (suspension)."""
    t = direct_sum([FgAbGroup.cyclic(x) for x in h.torsion])
    return GradedGroup.from_dict({
        2: FgAbGroup.free(h.m),
        3: FgAbGroup.free(h.n).direct_sum(t),
        4: FgAbGroup.free(h.n),
        5: FgAbGroup.free(h.m),
        6: FgAbGroup.free(1),
    })


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    first_mismatch: int | None
    computed: GradedGroup
    expected: GradedGroup

    def __str__(self):
        if self.ok:
            return "ok"
        return (f"mismatch at degree {self.first_mismatch}: "
                f"computed {self.computed.at(self.first_mismatch)}, "
                f"expected {self.expected.at(self.first_mismatch)}")


def verify_split(h: HomologyTable, s: SplitResult) -> VerifyReport:
    """Check the assembled complex's homology against the shifted table."""
    computed = complex_of_result(s).homology_all()
    expected = expected_homology(h)
    for d in range(2, 7):
        if computed.at(d) != expected.at(d):
            return VerifyReport(False, d, computed, expected)
    for d in computed.degrees():
        if d not in range(2, 7) and not computed.at(d).is_trivial:
            return VerifyReport(False, d, computed, expected)
    return VerifyReport(True, None, computed, expected)


def split_from_w4(h: HomologyTable, w4, phi5: Coeffs5) -> SplitResult:
    from .splitter import classify_f, reduce_phi5, _consume
    _, picks = reduce_phi5(w4, phi5)
    f = classify_f(w4, picks)
    return SplitResult(h.m, _consume(w4, picks), f, f is None)


def confluence_probe(h: HomologyTable, phi4: list[Coeffs4], phi5: Coeffs5,
                     move_script: list[Move]) -> bool:
    """True iff applying the script before reduction changes nothing."""
    w4, _ = build_w4(h, phi4)
    direct = split_from_w4(h, w4, phi5)
    c = normalize_coeffs5(w4, phi5)
    for mv in move_script:
        c = apply_move(w4, c, mv)
    scripted = split_from_w4(h, w4, c)
    return scripted == direct
