"""The suspension-splitting pipeline.

Input is the homology data of a connected orientable 5-dimensional
Poincare duality complex X with torsion-free H_1 (rank m of H_1, rank n of
the free part of H_2, and the torsion multiset T of prime powers), plus
attaching-coefficient vectors for the 5-cells and the 6-cell of the
suspension's minimal cell structure.  Output is the canonical wedge
decomposition of Sigma X: m copies of S^2, a wedge of catalog blocks, and
at most one exceptional mapping cone whose attaching map is classified
into one of four families.

Stages: the 3-skeleton wedge, a free 4-sphere layer, one rewriting step
per 5-cell, then normalization of the 6-cell coefficients by the legal
moves until at most one bit survives per class of generator.

Everything is pure and immutable; the pipeline is sequential because each
stage's coefficient vectors are indexed against the basis echoed by the
previous stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import factorize, is_prime_power

# Ladder sentinels for sphere slots, ordered above every finite exponent.
OMEGA = 1 << 40
OMEGA_PLUS_1 = OMEGA + 1


class ValidationError(ValueError):
    """Rejected input data; `path` points at the offending entry."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class MoveError(ValueError):
    """A rewriting move whose side condition fails."""


# --------------------------------------------------------------------------
# Data model
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyTable:
    """(m, n, T): H_1 = Z^m, H_2 = Z^n + T, T a multiset of prime powers."""

    m: int
    n: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValidationError("homology", "ranks must be nonnegative")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))
        for i, t in enumerate(self.torsion):
            if not is_prime_power(t):
                raise ValidationError(f"homology.torsion[{i}]",
                                      f"{t} is not a prime power")


@dataclass(frozen=True)
class WedgeClass:
    """A canonical-form wedge of catalog blocks.

    evens are the exponents r of the mod-2^r Moore summands, tw the
    exponents s of the twisted projective summands; both sorted ascending.
    """

    n3: int = 0
    n4: int = 0
    n5: int = 0
    evens: tuple[int, ...] = ()
    odds: tuple[int, ...] = ()
    b: int = 0
    tw: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "evens", tuple(sorted(self.evens)))
        object.__setattr__(self, "odds", tuple(sorted(self.odds)))
        object.__setattr__(self, "tw", tuple(sorted(self.tw)))

    @property
    def a(self) -> int:
        return len(self.evens)

    @property
    def c(self) -> int:
        return len(self.tw)

    def ladder(self) -> tuple[int, ...]:
        """Slot values for the 6-cell x-vector: Moore exponents, then the
        3-sphere sentinel, then the 4-sphere sentinel."""
        return self.evens + (OMEGA,) * self.n3 + (OMEGA_PLUS_1,) * self.n4

    def remove_even(self, *indices: int) -> "WedgeClass":
        keep = [r for i, r in enumerate(self.evens) if i not in set(indices)]
        return WedgeClass(self.n3, self.n4, self.n5, tuple(keep), self.odds, self.b, self.tw)

    def remove_tw(self, index: int) -> "WedgeClass":
        keep = [s for i, s in enumerate(self.tw) if i != index]
        return WedgeClass(self.n3, self.n4, self.n5, self.evens, self.odds, self.b, tuple(keep))


@dataclass(frozen=True)
class Coeffs4:
    """5-cell attaching bits: x over the 3-sphere slots, y over the even
    Moore slots of the wedge being attached to."""

    x: tuple[int, ...]
    y: tuple[int, ...]


@dataclass(frozen=True)
class Coeffs5:
    """6-cell attaching data against the final wedge basis.

    x is a bit vector over the full ladder (Moore slots, 3-sphere slots,
    4-sphere slots); y runs over the Moore slots with values 0..3 allowed
    at exponent-1 slots before normalization; z is a bit vector over the
    twisted slots.
    """

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]


@dataclass(frozen=True)
class Picks:
    """Surviving slot indices after reduction (ladder / Moore / twisted)."""

    u: int | None
    v: int | None
    w: int | None


@dataclass(frozen=True)
class FMap:
    """The classified exceptional attaching map.

    family 1: (x eta) | (y xi_r) | (z eps_s)      into S^3 / P^3(2^r) / CP^2(2^s)
    family 2: (x eta^2) | (y xi_r) | (z eps_s)     into S^2 / ...
    family 3: (x eta_rho) | (y xi_r) | (z eps_s)   into P^3(2^rho) / ...
    family 4: (y (eta_r + xi_r)) | (z eps_s)

    Family 4 has no x slot.  Whenever y = z = 1 the exponents satisfy s < r.
    """

    family: int
    x: int
    y: int
    z: int
    rho: int | None = None
    r: int | None = None
    s: int | None = None

    def __post_init__(self):
        if self.family not in (1, 2, 3, 4):
            raise ValueError("family out of range")
        if self.family == 4 and (self.x or not self.y):
            raise ValueError("family 4 carries exactly the y component (plus optional z)")
        if self.y and self.r is None:
            raise ValueError("y component needs its exponent")
        if self.z and self.s is None:
            raise ValueError("z component needs its exponent")
        if self.family == 3 and self.x and self.rho is None:
            raise ValueError("family 3 x component needs its exponent")
        if self.y and self.z and not self.s < self.r:
            raise ValueError("y = z = 1 requires s < r")

    def components(self) -> tuple[str, ...]:
        """Generator tags present in the map."""
        out = []
        if self.family == 4:
            out.extend(["iota_eta2", "xi"])
        else:
            if self.x:
                out.append({1: "eta", 2: "eta2", 3: "iota_eta2"}[self.family])
            if self.y:
                out.append("xi")
        if self.z:
            out.append("eps")
        return tuple(out)

    def describe(self) -> str:
        terms = []
        if self.family == 4:
            terms.append(f"eta_{self.r} + xi_{self.r}")
        else:
            if self.x:
                terms.append({1: "eta", 2: "eta^2", 3: f"eta_{self.rho}"}[self.family])
            if self.y:
                terms.append(f"xi_{self.r}")
        if self.z:
            terms.append(f"eps_{self.s}")
        return " | ".join(terms)


@dataclass(frozen=True)
class SplitResult:
    """Sigma X = (S^2)^m  v  wedge  v  (cone of f, or a single top sphere)."""

    s2_count: int
    wedge: WedgeClass
    f: FMap | None
    top_sphere: bool

    def __post_init__(self):
        if self.top_sphere != (self.f is None):
            raise ValueError("the extra top sphere appears exactly when f is absent")


# --------------------------------------------------------------------------
# Stages
# --------------------------------------------------------------------------

def build_w2(h: HomologyTable) -> WedgeClass:
    """3-skeleton wedge: n 3-spheres plus one Moore summand per torsion entry."""
    evens, odds = [], []
    for t in h.torsion:
        f = factorize(t)
        if list(f) == [2]:
            evens.append(f[2])
        else:
            odds.append(t)
    return WedgeClass(n3=h.n, evens=tuple(evens), odds=tuple(odds))


def build_w3(w2: WedgeClass, n: int) -> WedgeClass:
    """The 4-cells attach trivially (their attaching maps are trivial in
    homology and land in a 2-connected wedge), so they split off."""
    return WedgeClass(w2.n3, w2.n4 + n, w2.n5, w2.evens, w2.odds, w2.b, w2.tw)


def _check_bits(vals, path, max_allowed=1):
    for i, v in enumerate(vals):
        if not isinstance(v, int) or not 0 <= v <= max_allowed:
            raise ValidationError(f"{path}[{i}]", f"value {v!r} out of range 0..{max_allowed}")


def validate_coeffs4(w: WedgeClass, c: Coeffs4, path: str = "phi4") -> None:
    if len(c.x) != w.n3:
        raise ValidationError(f"{path}.x", f"expected {w.n3} bits, got {len(c.x)}")
    if len(c.y) != w.a:
        raise ValidationError(f"{path}.y", f"expected {w.a} bits, got {len(c.y)}")
    _check_bits(c.x, f"{path}.x")
    _check_bits(c.y, f"{path}.y")


def attach_5cell(w: WedgeClass, c: Coeffs4) -> WedgeClass:
    """Rewrite the wedge after attaching one 5-cell with coefficients c.

    Zero coefficients split off a 5-sphere.  Any bit on a 3-sphere slot
    converts one 3-sphere into a suspended projective plane (all other bits
    are absorbed).  Otherwise the Moore slot with the largest set index
    absorbs the rest and twists.
    """
    validate_coeffs4(w, c)
    if any(c.x):
        return WedgeClass(w.n3 - 1, w.n4, w.n5, w.evens, w.odds, w.b + 1, w.tw)
    set_y = [i for i, bit in enumerate(c.y) if bit]
    if set_y:
        mu = max(set_y)
        r = w.evens[mu]
        out = w.remove_even(mu)
        return WedgeClass(out.n3, out.n4, out.n5, out.evens, out.odds, out.b,
                          out.tw + (r,))
    return WedgeClass(w.n3, w.n4, w.n5 + 1, w.evens, w.odds, w.b, w.tw)


def validate_coeffs5(w: WedgeClass, c: Coeffs5, path: str = "phi5") -> None:
    lad = w.ladder()
    if len(c.x) != len(lad):
        raise ValidationError(f"{path}.x", f"expected {len(lad)} bits, got {len(c.x)}")
    if len(c.y) != w.a:
        raise ValidationError(f"{path}.y", f"expected {w.a} entries, got {len(c.y)}")
    if len(c.z) != w.c:
        raise ValidationError(f"{path}.z", f"expected {w.c} bits, got {len(c.z)}")
    _check_bits(c.x, f"{path}.x")
    _check_bits(c.z, f"{path}.z")
    for j, v in enumerate(c.y):
        limit = 3 if w.evens[j] == 1 else 1
        if not isinstance(v, int) or not 0 <= v <= limit:
            raise ValidationError(f"{path}.y[{j}]",
                                  f"value {v!r} out of range 0..{limit} at exponent {w.evens[j]}")


def normalize_coeffs5(w: WedgeClass, c: Coeffs5) -> Coeffs5:
    """Reduce y entries to bits.

    On an exponent-1 Moore slot the doubled torsion generator equals the
    eta-squared class on the same summand, so y = 2, 3 trades two units of
    y for one x bit there.  Idempotent on bit input.
    """
    validate_coeffs5(w, c)
    x, y = list(c.x), list(c.y)
    for j, v in enumerate(y):
        if v >= 2:
            x[j] ^= 1
            y[j] = v - 2
    return Coeffs5(tuple(x), tuple(y), c.z)


@dataclass(frozen=True)
class Move:
    """One legal rewriting step on the 6-cell coefficients.

    kinds: "x" adds x[k] into x[l] (needs ladder[k] >= ladder[l]);
    "y" adds y[k] into y[l] (needs exponent[k] <= exponent[l]);
    "z" adds z[k] into z[l] (needs tw[k] <= tw[l]);
    "yz" adds y[k] into z[l] (needs exponent[k] <= tw[l]).
    """

    kind: str
    k: int
    l: int


def apply_move(w: WedgeClass, c: Coeffs5, move: Move) -> Coeffs5:
    """Apply one move; raises MoveError when the side condition fails."""
    c = normalize_coeffs5(w, c)
    x, y, z = list(c.x), list(c.y), list(c.z)
    lad = w.ladder()
    k, l = move.k, move.l
    if move.kind == "x":
        if not (0 <= k < len(lad) and 0 <= l < len(lad)):
            raise MoveError(f"x-move index out of range: {k}, {l}")
        if k == l:
            raise MoveError("move endpoints must be distinct")
        if lad[k] < lad[l]:
            raise MoveError(f"x-move needs ladder[{k}] >= ladder[{l}]")
        x[l] ^= x[k]
    elif move.kind == "y":
        if not (0 <= k < w.a and 0 <= l < w.a):
            raise MoveError(f"y-move index out of range: {k}, {l}")
        if k == l:
            raise MoveError("move endpoints must be distinct")
        if w.evens[k] > w.evens[l]:
            raise MoveError(f"y-move needs exponent[{k}] <= exponent[{l}]")
        y[l] += y[k]
        if y[l] >= 2:
            if w.evens[l] == 1:
                x[l] ^= 1
            y[l] -= 2
    elif move.kind == "z":
        if not (0 <= k < w.c and 0 <= l < w.c):
            raise MoveError(f"z-move index out of range: {k}, {l}")
        if k == l:
            raise MoveError("move endpoints must be distinct")
        if w.tw[k] > w.tw[l]:
            raise MoveError(f"z-move needs twist[{k}] <= twist[{l}]")
        z[l] ^= z[k]
    elif move.kind == "yz":
        if not (0 <= k < w.a and 0 <= l < w.c):
            raise MoveError(f"yz-move index out of range: {k}, {l}")
        if w.evens[k] > w.tw[l]:
            raise MoveError(f"yz-move needs exponent[{k}] <= twist[{l}]")
        z[l] ^= y[k]
    else:
        raise MoveError(f"unknown move kind {move.kind!r}")
    return Coeffs5(tuple(x), tuple(y), tuple(z))


def legal_moves(w: WedgeClass) -> list[Move]:
    """All moves whose side condition holds on this wedge."""
    lad = w.ladder()
    out = []
    for k in range(len(lad)):
        for l in range(len(lad)):
            if k != l and lad[k] >= lad[l]:
                out.append(Move("x", k, l))
    for k in range(w.a):
        for l in range(w.a):
            if k != l and w.evens[k] <= w.evens[l]:
                out.append(Move("y", k, l))
    for k in range(w.c):
        for l in range(w.c):
            if k != l and w.tw[k] <= w.tw[l]:
                out.append(Move("z", k, l))
    for k in range(w.a):
        for l in range(w.c):
            if w.evens[k] <= w.tw[l]:
                out.append(Move("yz", k, l))
    return out


def reduce_phi5(w: WedgeClass, c: Coeffs5) -> tuple[Coeffs5, Picks]:
    """Drive the 6-cell coefficients to the canonical normal form.

    The surviving y bit sits at the smallest set index (the ladder is
    sorted, so that is the smallest exponent); the surviving x bit at the
    largest; the surviving z bit at the smallest twist, and it is absorbed
    by the y bit unless its twist is strictly smaller than the y exponent.

    Two further normalizations keep the form canonical under every legal
    move sequence (without them, twin exponent-1 Moore slots admit move
    paths that land on different case-analysis outcomes):

    * when the x and y survivors sit on distinct Moore slots with equal
      exponent, the x bit migrates onto the y slot (two x-moves between
      equal slots), merging the picks;
    * a lone y survivor on an exponent-1 slot picks up the x bit of its
      own slot whenever a second exponent-1 slot exists, since a two-move
      round trip through the twin slot realizes exactly that exchange.

    Idempotent, and constant on move orbits.
    """
    c = normalize_coeffs5(w, c)
    x, y, z = list(c.x), list(c.y), list(c.z)
    a = w.a

    v = next((j for j in range(a) if y[j]), None)
    if v is not None:
        for j in range(a):
            if j != v and y[j]:
                y[j] = 0
                if w.evens[j] == 1:
                    x[j] ^= 1

    u = max((i for i in range(len(x)) if x[i]), default=None)
    if u is not None:
        for i in range(len(x)):
            if i != u:
                x[i] = 0

    w_idx = next((k for k in range(w.c) if z[k]), None)
    if w_idx is not None:
        for k in range(w.c):
            if k != w_idx:
                z[k] = 0
        if v is not None and w.tw[w_idx] >= w.evens[v]:
            z[w_idx] = 0
            w_idx = None

    if u is not None and v is not None and u != v and u < a and w.evens[u] == w.evens[v]:
        x[u] = 0
        x[v] = 1
        u = v
    elif u is None and v is not None and w.evens[v] == 1 \
            and sum(1 for r in w.evens if r == 1) >= 2:
        x[v] = 1
        u = v

    return Coeffs5(tuple(x), tuple(y), tuple(z)), Picks(u, v, w_idx)


def classify_f(w4: WedgeClass, picks: Picks) -> FMap | None:
    """Read the attaching-map family off the surviving picks."""
    u, v, wk = picks.u, picks.v, picks.w
    if u is None and v is None and wk is None:
        return None
    r = w4.evens[v] if v is not None else None
    s = w4.tw[wk] if wk is not None else None
    y_bit = int(v is not None)
    z_bit = int(wk is not None)
    if u is None:
        return FMap(1, 0, y_bit, z_bit, r=r, s=s)
    lad = w4.ladder()
    if lad[u] == OMEGA_PLUS_1:
        return FMap(1, 1, y_bit, z_bit, r=r, s=s)
    if lad[u] == OMEGA:
        return FMap(2, 1, y_bit, z_bit, r=r, s=s)
    if v is not None and u == v:
        return FMap(4, 0, 1, z_bit, r=r, s=s)
    return FMap(3, 1, y_bit, z_bit, rho=w4.evens[u], r=r, s=s)


def _consume(w4: WedgeClass, picks: Picks) -> WedgeClass:
    """Remove the summands absorbed into the exceptional cone."""
    u, v, wk = picks.u, picks.v, picks.w
    out = w4
    even_gone = []
    if u is not None:
        lad = w4.ladder()
        if lad[u] == OMEGA_PLUS_1:
            out = WedgeClass(out.n3, out.n4 - 1, out.n5, out.evens, out.odds, out.b, out.tw)
        elif lad[u] == OMEGA:
            out = WedgeClass(out.n3 - 1, out.n4, out.n5, out.evens, out.odds, out.b, out.tw)
        else:
            even_gone.append(u)
    if v is not None and v not in even_gone:
        even_gone.append(v)
    if even_gone:
        out = out.remove_even(*even_gone)
    if wk is not None:
        out = out.remove_tw(wk)
    return out


def build_w4(h: HomologyTable, phi4: list[Coeffs4]) -> tuple[WedgeClass, list[WedgeClass]]:
    """Run the 5-cell attachments; returns the final wedge and the wedge
    before each attachment (the basis each record was indexed against)."""
    if len(phi4) != h.m:
        raise ValidationError("phi4", f"expected {h.m} records, got {len(phi4)}")
    w = build_w3(build_w2(h), h.n)
    stages = []
    for i, rec in enumerate(phi4):
        stages.append(w)
        try:
            w = attach_5cell(w, rec)
        except ValidationError as e:
            raise ValidationError(f"phi4[{i}]{e.path.removeprefix('phi4')}",
                                  str(e).split(": ", 1)[1]) from None
    return w, stages


def split(h: HomologyTable, phi4: list[Coeffs4], phi5: Coeffs5) -> SplitResult:
    """Full pipeline: wedge construction, 5-cell rewriting, 6-cell reduction.

    Deterministic; the result's oracle homology always equals the input
    table shifted up one degree (see the oracle module).
    """
    w4, _ = build_w4(h, phi4)
    _, picks = reduce_phi5(w4, phi5)
    f = classify_f(w4, picks)
    wedge = _consume(w4, picks)
    return SplitResult(h.m, wedge, f, f is None)


# --------------------------------------------------------------------------
# Basis descriptions (echoed by the CLI, used in validation messages)
# --------------------------------------------------------------------------

def wedge_basis(w: WedgeClass) -> list[str]:
    """Canonical slot order: 3-spheres, 4-spheres, 5-spheres, even Moore
    slots by exponent, odd Moore slots, projective, twisted by exponent."""
    out = [f"S3[{i}]" for i in range(w.n3)]
    out += [f"S4[{i}]" for i in range(w.n4)]
    out += [f"S5[{i}]" for i in range(w.n5)]
    out += [f"P4(2^{r})[{i}]" for i, r in enumerate(w.evens)]
    out += [f"P4({t})[{i}]" for i, t in enumerate(w.odds)]
    out += [f"SCP2[{i}]" for i in range(w.b)]
    out += [f"SCP2(2^{s})[{i}]" for i, s in enumerate(w.tw)]
    return out


def coeffs4_basis(w: WedgeClass) -> dict[str, list[str]]:
    return {"x": [f"S3[{i}]" for i in range(w.n3)],
            "y": [f"P4(2^{r})[{i}]" for i, r in enumerate(w.evens)]}


def coeffs5_basis(w: WedgeClass) -> dict[str, list[str]]:
    x = [f"P4(2^{r})[{i}]" for i, r in enumerate(w.evens)]
    x += [f"S3[{i}]" for i in range(w.n3)]
    x += [f"S4[{i}]" for i in range(w.n4)]
    return {"x": x,
            "y": [f"P4(2^{r})[{i}]" for i, r in enumerate(w.evens)],
            "z": [f"SCP2(2^{s})[{i}]" for i, s in enumerate(w.tw)]}
