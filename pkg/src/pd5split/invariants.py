"""Invariants read off a splitting result.

Generalized cohomology through pluggable block theories, cohomotopy groups
in the computable range, the assembled mod-2 Steenrod module, spin
classification, the degree-2 cohomotopy structure report, and advisory
characteristic-class consistency checks.

Where the answer genuinely depends on an undetermined connecting map, the
value of the relevant secondary cohomology operation enters as a user flag
("trivial" / "nontrivial" / "unknown"), and "unknown" propagates as an
explicit list of candidate groups rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .abgroup import (FgAbGroup, GradedGroup, IntMatrix, direct_sum,
                      group_from_presentation, quotient_group, uct_cohomology)
from .blocks import (Moore, SigmaCP2, SigmaCP2Tw, Sphere,
                     stable_cohomotopy_block)
from .splitter import FMap, HomologyTable, SplitResult

Z = FgAbGroup.free(1)
Z2 = FgAbGroup.cyclic(2)
TRIVIAL = FgAbGroup.trivial()

SECONDARY_FLAGS = ("trivial", "nontrivial", "unknown")


class TheoryError(ValueError):
    """Theory gap or unresolved ambiguity at a needed (block, degree)."""


# --------------------------------------------------------------------------
# Desuspended summands of a result
# --------------------------------------------------------------------------

def x_level_summands(s: SplitResult) -> list:
    """The wedge summands of the input complex (suspension shifted away).

    The exceptional cone is not included; its factors come from
    `cone_x_factors`.
    """
    w = s.wedge
    out = [Sphere(1)] * s.s2_count
    out += [Sphere(2)] * w.n3
    out += [Sphere(3)] * w.n4
    out += [Sphere(4)] * w.n5
    out += [Moore(2 ** r) for r in w.evens]
    out += [Moore(t) for t in w.odds]
    out += [SigmaCP2()] * w.b
    out += [SigmaCP2Tw(r) for r in w.tw]
    if s.top_sphere:
        out.append(Sphere(5))
    return out


def cone_x_factors(f: FMap) -> list:
    """Desuspended wedge factors of the cone's base."""
    out = []
    if f.family == 4:
        out.append(Moore(2 ** f.r))
    else:
        if f.x:
            if f.family == 1:
                out.append(Sphere(3))
            elif f.family == 2:
                out.append(Sphere(2))
            else:
                out.append(Moore(2 ** f.rho))
        if f.y:
            out.append(Moore(2 ** f.r))
    if f.z:
        out.append(SigmaCP2Tw(f.s))
    return out


def x_homology(b) -> GradedGroup:
    """Reduced homology of a desuspended block."""
    if isinstance(b, Sphere):
        return GradedGroup.from_dict({b.d: Z})
    if isinstance(b, Moore):
        return GradedGroup.from_dict({2: FgAbGroup.cyclic(b.t)})
    if isinstance(b, SigmaCP2):
        return GradedGroup.from_dict({2: Z, 4: Z})
    if isinstance(b, SigmaCP2Tw):
        return GradedGroup.from_dict({2: FgAbGroup.cyclic(2 ** b.r), 4: Z})
    raise TypeError(f"not a block: {b!r}")


def cone_x_homology(f: FMap) -> GradedGroup:
    """Homology of the desuspended cone: base factors plus a free class in
    degree 5 (every family's attaching map is torsion in homotopy)."""
    acc: dict[int, FgAbGroup] = {5: Z}
    for b in cone_x_factors(f):
        for d, g in x_homology(b).parts:
            acc[d] = acc.get(d, TRIVIAL).direct_sum(g)
    return GradedGroup.from_dict(acc)


# --------------------------------------------------------------------------
# Spin classification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinReport:
    spin: bool
    w3_nonzero: str                       # "yes" | "no"
    detected_components: tuple[tuple[str, str], ...]


def classify_spin(s: SplitResult) -> SpinReport:
    """Spin iff the exceptional map has no eta, xi or eps component.

    The third Stiefel-Whitney class is nonzero exactly when an exponent-1
    xi or eps component occurs.
    """
    f = s.f
    if f is None:
        return SpinReport(True, "no", ())
    detected = []
    spin = True
    w3 = False
    if f.family == 4:
        spin = False
        w3 = w3 or f.r == 1
        detected.append((f"xi_{f.r} + eta_{f.r}",
                         f"Sq2.beta_{f.r} together with the secondary operation"))
    else:
        if f.x:
            if f.family == 1:
                spin = False
                detected.append(("eta", "Sq2 on a degree-3 class"))
            elif f.family == 2:
                detected.append(("eta^2", "secondary operation"))
            else:
                detected.append((f"eta_{f.rho}", f"secondary operation + beta_{f.rho}"))
        if f.y:
            spin = False
            w3 = w3 or f.r == 1
            if f.r == 1:
                detected.append(("xi_1", "cup with w3, square of the detecting class zero"))
            else:
                detected.append((f"xi_{f.r}", f"Sq2.beta_{f.r} with Sq2 of the class zero"))
    if f.z:
        spin = False
        w3 = w3 or f.s == 1
        if f.s == 1:
            detected.append(("eps_1", "cup with w3, square of the detecting class nonzero"))
        else:
            detected.append((f"eps_{f.s}", f"Sq2.beta_{f.s} with Sq2 of the class nonzero"))
    return SpinReport(spin, "yes" if w3 else "no", tuple(detected))


# --------------------------------------------------------------------------
# Assembled Steenrod module
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SteenrodModule:
    """Mod-2 cohomology basis of the input complex with Sq1/Sq2 matrices.

    basis[d] labels the degree-d classes; sq1[d] (resp. sq2[d]) is the
    matrix into degree d+1 (resp. d+2) stored as a tuple of rows, one row
    per target class.  bocksteins lists (bottom-class label, exponent r)
    for summands carrying order-2^r torsion.
    """

    basis: dict[int, tuple[str, ...]]
    sq1: dict[int, tuple[tuple[int, ...], ...]]
    sq2: dict[int, tuple[tuple[int, ...], ...]]
    bocksteins: tuple[tuple[str, int], ...]

    def sq2_h3_h5_nonzero(self) -> bool:
        return any(any(row) for row in self.sq2.get(3, ()))

    def sq2_h2_image(self) -> list[tuple[int, ...]]:
        """Columns of Sq2: H^2 -> H^4 as vectors over the degree-4 basis."""
        mat = self.sq2.get(2, ())
        if not mat:
            return []
        cols = []
        for j in range(len(mat[0])):
            cols.append(tuple(row[j] for row in mat))
        return [c for c in cols if any(c)]


def _two_exponent_of(b) -> int | None:
    if isinstance(b, Moore):
        return b.two_exponent
    if isinstance(b, SigmaCP2Tw):
        return b.r
    return None


def sq_module(s: SplitResult) -> SteenrodModule:
    """Assemble the block-diagonal operations plus the cone's entries."""
    labels: dict[int, list[str]] = {2: [], 3: [], 4: [], 5: []}
    sq1_pairs: list[tuple[str, str]] = []
    sq2_pairs: list[tuple[str, str]] = []
    bocksteins: list[tuple[str, int]] = []

    def add_block(b, name):
        if isinstance(b, Sphere):
            if 2 <= b.d <= 5:
                labels[b.d].append(name)
            return
        if isinstance(b, Moore):
            r = b.two_exponent
            if r is None:
                return
            labels[2].append(f"{name}.u")
            labels[3].append(f"{name}.v")
            bocksteins.append((f"{name}.u", r))
            if r == 1:
                sq1_pairs.append((f"{name}.u", f"{name}.v"))
            return
        if isinstance(b, SigmaCP2):
            labels[2].append(f"{name}.u")
            labels[4].append(f"{name}.w")
            sq2_pairs.append((f"{name}.u", f"{name}.w"))
            return
        if isinstance(b, SigmaCP2Tw):
            labels[2].append(f"{name}.u")
            labels[3].append(f"{name}.v")
            labels[4].append(f"{name}.w")
            bocksteins.append((f"{name}.u", b.r))
            sq2_pairs.append((f"{name}.u", f"{name}.w"))
            if b.r == 1:
                sq1_pairs.append((f"{name}.u", f"{name}.v"))
            return

    for i, b in enumerate(x_level_summands(s)):
        add_block(b, f"{b}[{i}]")

    if s.f is not None:
        f = s.f
        factors = cone_x_factors(f)
        for i, b in enumerate(factors):
            add_block(b, f"Cf.{b}[{i}]")
        labels[5].append("Cf.top")
        # Components detected by Sq2 into the top class: eta, xi, eps.
        if f.family == 1 and f.x:
            sq2_pairs.append((f"Cf.{Sphere(3)}[0]", "Cf.top"))
        if f.y or f.family == 4:
            moore = next(b for b in factors if isinstance(b, Moore))
            idx = factors.index(moore)
            sq2_pairs.append((f"Cf.{moore}[{idx}].v", "Cf.top"))
        if f.z:
            tw = next(b for b in factors if isinstance(b, SigmaCP2Tw))
            idx = factors.index(tw)
            sq2_pairs.append((f"Cf.{tw}[{idx}].v", "Cf.top"))

    basis = {d: tuple(v) for d, v in labels.items()}

    def matrix(pairs, shift):
        out = {}
        for d in (2, 3):
            src, dst = basis.get(d, ()), basis.get(d + shift, ())
            if not src or not dst:
                continue
            rows = [[0] * len(src) for _ in dst]
            for a, bb in pairs:
                if a in src and bb in dst:
                    rows[dst.index(bb)][src.index(a)] = 1
            if any(any(r) for r in rows):
                out[d] = tuple(tuple(r) for r in rows)
        return out

    return SteenrodModule(basis, matrix(sq1_pairs, 1), matrix(sq2_pairs, 2),
                          tuple(bocksteins))


# --------------------------------------------------------------------------
# Kernels of maps to Z/2, two independent ways
# --------------------------------------------------------------------------

def kernel_to_z2_lattice(orders: list[int], coeffs: list[int]) -> FgAbGroup:
    """ker of (+) Z/d_i -> Z/2 (d_i = 0 means Z), e_i -> coeffs[i].

    Computed by presenting the even sublattice and quotienting by the
    order relations.
    """
    g = len(orders)
    if g == 0 or not any(coeffs):
        return FgAbGroup.from_divisors(*orders)
    ones = [i for i in range(g) if coeffs[i]]
    cols: list[list[int]] = []
    first = ones[0]
    e = lambda i: [1 if j == i else 0 for j in range(g)]
    cols.append([2 * v for v in e(first)])
    for i in ones[1:]:
        cols.append([a - b for a, b in zip(e(i), e(first))])
    for i in range(g):
        if not coeffs[i]:
            cols.append(e(i))
    span = IntMatrix.from_rows([[col[i] for col in cols] for i in range(g)])
    rel_cols = [[orders[i] * v for v in e(i)] for i in range(g) if orders[i]]
    if not rel_cols:
        return FgAbGroup.free(span.cols)
    sub = IntMatrix.from_rows([[col[i] for col in rel_cols] for i in range(g)])
    return quotient_group(span, sub)


def kernel_to_z2_census(orders: list[int], coeffs: list[int]) -> FgAbGroup:
    """Same kernel, computed by enumerating the torsion subgroup and
    reading the isomorphism type off the order census.

    The kernel of a map to a finite group has the same free rank as its
    source, and its torsion is the kernel of the restriction to torsion;
    for a finite abelian group, the counts of elements killed by each
    prime power determine the exponent partition.
    """
    from .abgroup import factorize

    rank = sum(1 for d in orders if d == 0)
    fin = [(d, c) for d, c in zip(orders, coeffs) if d != 0]
    if not fin:
        return FgAbGroup.free(rank)
    elements = [el for el in product(*(range(d) for d, _ in fin))
                if sum(c * a for (_, c), a in zip(fin, el)) % 2 == 0]
    primes: dict[int, int] = {}
    for d, _ in fin:
        for p, e in factorize(d).items():
            primes[p] = max(primes.get(p, 0), e)
    divisors: list[int] = []
    for p, emax in sorted(primes.items()):
        killed = []
        for k in range(emax + 1):
            pk = p ** k
            killed.append(sum(1 for el in elements
                              if all((a * pk) % d == 0 for (d, _), a in zip(fin, el))))
        # killed[k] = p ** (sum of min(k, lambda_i)); successive log ratios
        # count the exponents that are still >= k.
        f = []
        for c in killed:
            e = 0
            while p ** (e + 1) <= c:
                e += 1
            if p ** e != c:
                raise AssertionError("census count is not a prime power")
            f.append(e)
        at_least = [f[k] - f[k - 1] for k in range(1, len(f))]
        for k in range(1, len(at_least) + 1):
            copies = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
            divisors.extend([p ** k] * copies)
    return FgAbGroup.from_divisors(*divisors, *([0] * rank))


# --------------------------------------------------------------------------
# pi^3 and friends
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Pi3Result:
    """Either a single group or an explicit list of candidates."""

    candidates: tuple[FgAbGroup, ...]
    note: str = ""

    @property
    def ambiguous(self) -> bool:
        return len(set(self.candidates)) > 1

    @property
    def group(self) -> FgAbGroup:
        if self.ambiguous:
            raise TheoryError(f"ambiguous value: {self}")
        return self.candidates[0]

    def __str__(self):
        if not self.ambiguous:
            return str(self.candidates[0])
        opts = " or ".join(str(c) for c in dict.fromkeys(self.candidates))
        return f"ambiguous: {opts}" + (f" ({self.note})" if self.note else "")


def _cone_pi3_factors(f: FMap) -> list[tuple[int, int]]:
    """(order, pairing bit) per base factor: order 0 means Z; the bit says
    whether the factor's generator hits the Hopf class under f."""
    out = []
    if f.family == 4:
        out.append((2 ** f.r, 1))
    else:
        if f.x:
            if f.family == 1:
                out.append((0, 1))          # pi^3_S(S^3) = Z, pairs onto
            elif f.family == 2:
                pass                        # pi^3_S(S^2) = 0
            else:
                out.append((2 ** f.rho, 0))  # pinch kills iota.eta^2
        if f.y:
            out.append((2 ** f.r, 1))
    if f.z:
        out.append((2 ** (f.s + 1), 1))
    return out


def extension_candidates(a: FgAbGroup, b: FgAbGroup) -> tuple[FgAbGroup, ...]:
    """Isomorphism classes of middle groups of 0 -> a -> E -> b -> 0.

    Enumerates Ext(b, a) elementwise: each class twists the cyclic
    relations of b by an element of a, and the middle group is read off
    the resulting presentation.  Free factors of b never twist.

    >>> [str(e) for e in extension_candidates(FgAbGroup.cyclic(2), FgAbGroup.cyclic(4))]
    ['Z/2 (+) Z/4', 'Z/8']
    """
    from math import gcd, prod

    if a.is_trivial or b.is_trivial:
        return (a.direct_sum(b),)
    a_div = [0] * a.rank + list(a.invariant_factors)   # 0 means Z
    b_fin = list(b.invariant_factors)
    na = len(a_div)
    # Ext(Z/m, Z/n) = Z/gcd(m, n); Ext(Z/m, Z) = Z/m; Ext(Z, -) = 0.
    axes = []
    for i, m in enumerate(b_fin):
        for j, n_ in enumerate(a_div):
            g = m if n_ == 0 else gcd(m, n_)
            if g > 1:
                axes.append((i, j, g))
    if prod((g for _, _, g in axes), start=1) > 4096:
        raise TheoryError("extension enumeration too large")
    seen: dict[FgAbGroup, bool] = {}
    picks = product(*(range(g) for _, _, g in axes)) if axes else iter([()])
    for pick in picks:
        rows = []
        for j, n_ in enumerate(a_div):
            if n_:
                rows.append([n_ if jj == j else 0 for jj in range(na)] + [0] * len(b_fin))
        for i, m in enumerate(b_fin):
            row = [0] * (na + len(b_fin))
            row[na + i] = m
            for (ii, j, g), c in zip(axes, pick):
                if ii == i:
                    n_ = a_div[j]
                    row[j] = -c * (n_ // g if n_ else 1)
            rows.append(row)
        rel = (IntMatrix.from_rows(rows) if rows
               else IntMatrix.zero(0, na + len(b_fin)))
        e = group_from_presentation(na + len(b_fin), rel)
        seen[e.direct_sum(FgAbGroup.free(b.rank))] = True
    return tuple(seen)


def _pi3_cone(f: FMap, spin: bool, secondary: str,
              kernel=kernel_to_z2_lattice) -> Pi3Result:
    if secondary not in SECONDARY_FLAGS:
        raise ValueError(f"secondary flag must be one of {SECONDARY_FLAGS}")
    factors = _cone_pi3_factors(f)
    orders = [d for d, _ in factors]
    coeffs = [c for _, c in factors]
    base = FgAbGroup.from_divisors(*orders)
    if not spin:
        # The pairing is onto, the connecting map vanishes, and the value
        # is the kernel of the pairing.
        return Pi3Result((kernel(orders, coeffs),))
    if f.family == 2:
        # An eta-squared component pairs onto the degree-2 Hopf class,
        # which kills the potential extension class.
        return Pi3Result((base,))
    candidates: list[FgAbGroup] = []
    note = ""
    if secondary in ("nontrivial", "unknown"):
        candidates.append(base)
    if secondary in ("trivial", "unknown"):
        candidates.extend(extension_candidates(Z2, base))
    if secondary == "unknown":
        note = "secondary operation undeclared; connecting map undetermined"
    elif secondary == "trivial":
        note = "extension by Z/2 undetermined"
    return Pi3Result(tuple(dict.fromkeys(candidates)), note)


def pi3(s: SplitResult, secondary: str = "unknown") -> Pi3Result:
    """pi^3 of the input complex, which agrees with stable cohomotopy here.

    Block values come from the stable table; the exceptional cone's value
    is solved from its attaching data, with spin-case ambiguity reported
    explicitly.
    """
    blocks_part = direct_sum([stable_cohomotopy_block(b, 3)
                              for b in x_level_summands(s)])
    if s.f is None:
        return Pi3Result((blocks_part,))
    cone = _pi3_cone(s.f, classify_spin(s).spin, secondary)
    return Pi3Result(tuple(dict.fromkeys(blocks_part.direct_sum(c)
                                         for c in cone.candidates)), cone.note)


def pi3_mod_k(s: SplitResult, k: int, secondary: str = "unknown") -> FgAbGroup:
    """pi^3 with Z/k coefficients, odd k only.

    The suspension comparison is bijective for odd k, and the coefficient
    sequence reduces the answer to tensor/Tor arithmetic; the mod-2
    ambiguity of pi^3 is invisible to odd coefficients.
    """
    if k % 2 == 0 or k < 3:
        raise ValueError("only odd k >= 3 carries the group structure used here")
    zk = FgAbGroup.cyclic(k)
    p4 = pi4(s, None)
    values = {cand.tensor(zk).direct_sum(p4.tor(zk))
              for cand in pi3(s, secondary).candidates}
    if len(values) != 1:
        raise AssertionError("odd-coefficient value should not be ambiguous")
    return values.pop()


# --------------------------------------------------------------------------
# pi^4, pi^5, pi^1
# --------------------------------------------------------------------------

def pi4(s: SplitResult, h: HomologyTable | None = None) -> FgAbGroup:
    """Free of rank m, plus Z/2 exactly when Sq2: H^3 -> H^5 is not onto."""
    m = s.s2_count
    if h is not None and h.m != m:
        raise ValueError("result does not belong to this homology table")
    if classify_spin(s).spin:
        return FgAbGroup.free(m).direct_sum(Z2)
    return FgAbGroup.free(m)


def pi4_mod_k(s: SplitResult, h: HomologyTable | None, k: int) -> FgAbGroup:
    """Odd k sees only H^4; even k adds the same Sq2 quotient as pi^4."""
    if k < 2:
        raise ValueError("k must be at least 2")
    m = s.s2_count
    out = direct_sum([FgAbGroup.cyclic(k)] * m)
    if k % 2 == 0 and classify_spin(s).spin:
        out = out.direct_sum(Z2)
    return out


def pi_simple(s: SplitResult, h: HomologyTable, n: int,
              k: int | None = None) -> FgAbGroup:
    """The degrees where cohomotopy is plain cohomology."""
    if n == 5:
        return Z if k is None else FgAbGroup.cyclic(k)
    if n == 1:
        if k is not None:
            raise ValueError("no coefficient version tabulated in degree 1")
        return FgAbGroup.free(h.m)
    raise ValueError("only degrees 1 and 5 are simple")


# --------------------------------------------------------------------------
# Block theories
# --------------------------------------------------------------------------

def block_key(b) -> str:
    if isinstance(b, Sphere):
        return f"S{b.d}"
    if isinstance(b, Moore):
        return f"P3({b.t})"
    if isinstance(b, SigmaCP2):
        return "CP2"
    if isinstance(b, SigmaCP2Tw):
        return f"CP2({2 ** b.r})"
    raise TypeError(f"not a block: {b!r}")


class BlockTheory:
    """A reduced cohomology theory evaluated on the desuspended blocks."""

    name: str

    def degrees(self) -> tuple[int, ...]:
        raise NotImplementedError

    def value(self, b, degree: int) -> FgAbGroup:
        raise NotImplementedError

    def cone_value(self, s: SplitResult, degree: int,
                   secondary: str = "unknown") -> Pi3Result:
        raise NotImplementedError


class OrdinaryTheory(BlockTheory):
    """Singular cohomology with Z or Z/k coefficients, via the universal
    coefficient formulas on each block."""

    def __init__(self, coeff: FgAbGroup, name: str):
        self.coeff = coeff
        self.name = name

    def degrees(self):
        return (1, 2, 3, 4, 5)

    def value(self, b, degree):
        return uct_cohomology(x_homology(b), self.coeff).at(degree)

    def cone_value(self, s, degree, secondary="unknown"):
        return Pi3Result((uct_cohomology(cone_x_homology(s.f), self.coeff).at(degree),))


class StableCohomotopyTheory(BlockTheory):
    """Stable cohomotopy in degrees 3 and 4.

    The cone's degree-3 value is solved from the attaching data with the
    kernel computed by element enumeration, an independent path from the
    presentation-based computation in `pi3`.
    """

    name = "stable"

    def degrees(self):
        return (3, 4)

    def value(self, b, degree):
        return stable_cohomotopy_block(b, degree)

    def cone_value(self, s, degree, secondary="unknown"):
        f = s.f
        spin = classify_spin(s).spin
        if degree == 3:
            return _pi3_cone(f, spin, secondary, kernel=kernel_to_z2_census)
        if degree == 4:
            rank = f.z  # the twisted factor's top class survives
            out = FgAbGroup.free(rank)
            if spin:
                out = out.direct_sum(Z2)
            return Pi3Result((out,))
        raise TheoryError(f"{self.name}: degree {degree} not computed")


class TableTheory(BlockTheory):
    """User-supplied theory loaded from a table document.

    Cone entries may be tabulated directly under the "Cf" key or marked
    {"derive": true}; derivation assumes the theory is homology-like (the
    attaching map, being torsion, induces zero), and reports extension
    ambiguity rather than resolving it.
    """

    def __init__(self, doc: dict):
        if not isinstance(doc, dict) or "name" not in doc or "entries" not in doc:
            raise TheoryError("theory document needs 'name' and 'entries'")
        self.name = str(doc["name"])
        self.table: dict[tuple[str, int], FgAbGroup] = {}
        self.cone_derive: set[int] = set()
        degs = set()
        for i, e in enumerate(doc["entries"]):
            try:
                key, degree = str(e["block"]), int(e["degree"])
                if e.get("derive"):
                    if key != "Cf":
                        raise TheoryError("only Cf entries may be derived")
                    self.cone_derive.add(degree)
                else:
                    g = FgAbGroup.from_divisors(*([0] * int(e.get("rank", 0))),
                                                *e.get("torsion", []))
                    self.table[(key, degree)] = g
                degs.add(degree)
            except (KeyError, TypeError, ValueError) as exc:
                raise TheoryError(f"entries[{i}]: {exc}") from None
        self._degrees = tuple(sorted(degs))

    def degrees(self):
        return self._degrees

    def value(self, b, degree):
        key = (block_key(b), degree)
        if key not in self.table:
            raise TheoryError(f"{self.name}: no entry for {key[0]} in degree {degree}")
        return self.table[key]

    def cone_value(self, s, degree, secondary="unknown"):
        if ("Cf", degree) in self.table:
            return Pi3Result((self.table[("Cf", degree)],))
        if degree not in self.cone_derive:
            raise TheoryError(f"{self.name}: no Cf entry in degree {degree}")
        f = s.f
        kerpart = direct_sum([self.value(b, degree) for b in cone_x_factors(f)])
        coker = self.value(Sphere(4), degree - 1) if degree - 1 in self._degrees else None
        if coker is None or coker.is_trivial:
            return Pi3Result((kerpart,))
        if kerpart.is_trivial:
            return Pi3Result((coker,))
        return Pi3Result(extension_candidates(coker, kerpart),
                         "derived cone value determined only up to extension")


INTEGRAL = OrdinaryTheory(Z, "integral")


def mod_k_theory(k: int) -> OrdinaryTheory:
    return OrdinaryTheory(FgAbGroup.cyclic(k), f"mod{k}")


def generalized_cohomology(s: SplitResult, th: BlockTheory,
                           secondary: str = "unknown") -> GradedGroup:
    """Degree-wise direct sum of the theory over the desuspended summands.

    Raises TheoryError on a theory gap or on unresolved cone ambiguity.
    """
    out = {}
    for d in th.degrees():
        parts = [th.value(b, d) for b in x_level_summands(s)]
        if s.f is not None:
            cone = th.cone_value(s, d, secondary)
            if cone.ambiguous:
                raise TheoryError(f"{th.name}: cone value ambiguous in degree {d}: {cone}")
            parts.append(cone.group)
        out[d] = direct_sum(parts)
    return GradedGroup.from_dict(out)


# --------------------------------------------------------------------------
# pi^2 structure
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Pi2Report:
    simply_connected_product: tuple[FgAbGroup, Pi3Result] | None
    fiber_description: str
    obstruction_flags: str

    def __str__(self):
        if self.simply_connected_product is not None:
            h2, p3 = self.simply_connected_product
            return f"pi^2 = H^2 x pi^3 = ({h2}) x ({p3})"
        return self.fiber_description


def pi2_structure(s: SplitResult, h: HomologyTable,
                  secondary: str = "unknown") -> Pi2Report:
    """Product description when the complex is simply connected; otherwise
    the fiberwise decomposition with its unevaluated twisting recorded."""
    onto = sq_module(s).sq2_h3_h5_nonzero()
    regime = "sq2_onto" if onto else "sq2_trivial"
    condition = "u^2 = 0" if onto else "u^2 = 0 and Sq2_u(x^2) = 0"
    if h.m == 0:
        h2 = FgAbGroup.free(h.n)
        return Pi2Report((h2, pi3(s, secondary)),
                         f"product of H^2 and pi^3 (index classes: {condition})",
                         regime)
    desc = (f"union over classes u in H^2 with {condition} of fibers "
            f"h^-1(u) = pi^3 / psi_u(H^1); psi_u not evaluated")
    return Pi2Report(None, desc, regime)


# --------------------------------------------------------------------------
# Characteristic-class consistency
# --------------------------------------------------------------------------

def _is_doubled(torsion: tuple[int, ...]) -> bool:
    from collections import Counter
    return all(v % 2 == 0 for v in Counter(torsion).values())


def _gf2_in_span(vec: tuple[int, ...], cols: list[tuple[int, ...]]) -> bool:
    rows = [list(c) for c in cols]
    target = list(vec)
    n = len(vec)
    basis: list[list[int]] = []
    for c in rows:
        cur = c[:]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if cur[lead]:
                cur = [a ^ bb for a, bb in zip(cur, b)]
        if any(cur):
            basis.append(cur)
    cur = target[:]
    for b in basis:
        lead = next(i for i, x in enumerate(b) if x)
        if cur[lead]:
            cur = [a ^ bb for a, bb in zip(cur, b)]
    return not any(cur)


def char_class_consistency(h: HomologyTable, s: SplitResult,
                           declared) -> list[str]:
    """Advisory warnings only; nothing here rejects input."""
    warnings = []
    report = classify_spin(s)
    if declared is not None and declared.spin is not None and declared.spin != report.spin:
        warnings.append(
            f"declared spin={declared.spin} contradicts the attaching-map "
            f"classification (spin={report.spin})")
    if declared is not None and declared.w3_nonzero is not None \
            and declared.w3_nonzero != (report.w3_nonzero == "yes"):
        warnings.append(
            f"declared w3_nonzero={declared.w3_nonzero} contradicts the "
            f"computed value ({report.w3_nonzero})")
    torsion = h.torsion
    if not report.spin and report.w3_nonzero == "yes":
        if 2 not in torsion:
            warnings.append("torsion pairing shape: expected an extra Z/2 summand")
        else:
            reduced = list(torsion)
            reduced.remove(2)
            if not _is_doubled(tuple(reduced)):
                warnings.append("torsion pairing shape: not doubled after "
                                "removing one Z/2")
    elif not _is_doubled(torsion):
        warnings.append("torsion pairing shape: torsion not doubled")
    if declared is not None and declared.p1_mod2 is not None:
        p1 = tuple(declared.p1_mod2)
        module = sq_module(s)
        dim4 = len(module.basis.get(4, ()))
        if len(p1) != dim4:
            warnings.append(f"p1 mod 2 has {len(p1)} coordinates; "
                            f"H^4 basis has {dim4}")
        elif any(p1):
            if report.spin:
                warnings.append("p1 mod 2 nonzero contradicts spin "
                                "(the square of w2 vanishes)")
            elif not _gf2_in_span(p1, module.sq2_h2_image()):
                warnings.append("p1 mod 2 is not in the image of Sq2 on H^2, "
                                "but it must equal the square of w2")
    return warnings
