"""Built-in example complexes and connected sums.

The library covers the classical simply connected 5-manifolds (the Wu
manifold, the twisted and untwisted S^3-bundles over S^2, the torsion
families) and the non-smoothable Poincare duality complexes built from
eta-squared attachments, as coefficient data for the splitting pipeline.
Whitehead-product parts of the catalog attaching maps die after one
suspension and are dropped at data-entry time.

No builtin realizes an eps component; the engine accepts such data from
user input all the same.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .abgroup import factorize
from .splitter import (Coeffs4, Coeffs5, HomologyTable, ValidationError,
                       build_w2, build_w3)


@dataclass(frozen=True)
class Declared:
    """Optional user- or library-declared characteristic-class facts."""

    spin: bool | None = None
    w3_nonzero: bool | None = None
    p1_mod2: tuple[int, ...] | None = None


@dataclass(frozen=True)
class InputData:
    homology: HomologyTable
    phi4: tuple[Coeffs4, ...]
    phi5: Coeffs5
    provenance: str
    declared: Declared = field(default_factory=Declared)


def _doubled_prime_powers(k: int) -> tuple[int, ...]:
    parts = tuple(p ** e for p, e in factorize(k).items())
    return tuple(sorted(parts + parts))


def _zero_phi5(h: HomologyTable) -> Coeffs5:
    w4 = build_w3(build_w2(h), h.n)
    return Coeffs5((0,) * len(w4.ladder()), (0,) * w4.a, (0,) * w4.c)


def _data(name, m, n, torsion, x_bits=(), y_bits=(), declared=Declared()):
    """Assemble InputData with the given phi5 bit positions set.

    x_bits / y_bits are indices into the final wedge's ladder and Moore
    bases; all builtins are simply connected so phi4 is always empty.
    """
    h = HomologyTable(m, n, torsion)
    base = _zero_phi5(h)
    x = list(base.x)
    y = list(base.y)
    for i in x_bits:
        x[i] = 1
    for j in y_bits:
        y[j] = 1
    return InputData(h, (), Coeffs5(tuple(x), tuple(y), base.z), name, declared)


_NAME_RE = re.compile(r"^(X|M|X'|M')(-1|0|inf|\d+)$")


def library_names() -> list[str]:
    return ["X0", "X-1", "Xinf", "Minf", "M{k} (k >= 2)", "X{k} (k >= 1)",
            "M'inf", "M'{k} (k >= 2)", "X'{k} (k >= 1)"]


def builtin(name: str) -> InputData:
    """Input data for a named example.

    >>> builtin("X-1").phi5
    Coeffs5(x=(0,), y=(1,), z=())
    """
    m = _NAME_RE.match(name)
    if not m:
        raise ValidationError("manifold", f"unknown name {name!r}")
    family, param = m.group(1), m.group(2)

    if family == "X" and param == "0":
        return _data(name, 0, 0, (), declared=Declared(spin=True, w3_nonzero=False))
    if family == "X" and param == "-1":
        # The Wu manifold: one mod-2 Moore summand, 6-cell attached by xi_1.
        return _data(name, 0, 0, (2,), y_bits=[0],
                     declared=Declared(spin=False, w3_nonzero=True))
    if family == "X" and param == "inf":
        # Twisted S^3-bundle over S^2: 6-cell attached by eta on the 4-sphere slot.
        return _data(name, 0, 1, (), x_bits=[1],
                     declared=Declared(spin=False, w3_nonzero=False))
    if family == "M" and param == "inf":
        return _data(name, 0, 1, (), declared=Declared(spin=True, w3_nonzero=False))
    if family == "M'" and param == "inf":
        # Gitler-Stasheff complex: 6-cell attached by eta^2 on the 3-sphere slot.
        return _data(name, 0, 1, (), x_bits=[0],
                     declared=Declared(spin=True, w3_nonzero=False))

    if param in ("-1", "0", "inf"):
        raise ValidationError("manifold", f"unknown name {name!r}")
    k = int(param)

    if family == "M":
        if k < 2:
            raise ValidationError("manifold", f"M{k} needs k >= 2")
        return _data(name, 0, 0, _doubled_prime_powers(k),
                     declared=Declared(spin=True, w3_nonzero=False))
    if family == "M'":
        if k < 2:
            raise ValidationError("manifold", f"M'{k} needs k >= 2")
        torsion = _doubled_prime_powers(k)
        f = factorize(k)
        if 2 in f:
            # eta^2 through the bottom cell of the first mod-2^a Moore summand.
            h = HomologyTable(0, 0, torsion)
            w4 = build_w3(build_w2(h), 0)
            slot = w4.evens.index(f[2])
            return _data(name, 0, 0, torsion, x_bits=[slot],
                         declared=Declared(spin=True, w3_nonzero=False))
        return _data(name, 0, 0, torsion, declared=Declared(spin=True, w3_nonzero=False))
    if family == "X":
        if k < 1:
            raise ValidationError("manifold", f"X{k} needs k >= 1")
        return _data(name, 0, 0, (2 ** k, 2 ** k), y_bits=[0],
                     declared=Declared(spin=False, w3_nonzero=(k == 1)))
    if family == "X'":
        if k < 1:
            raise ValidationError("manifold", f"X'{k} needs k >= 1")
        return _data(name, 0, 0, (2 ** k, 2 ** k), x_bits=[0], y_bits=[0],
                     declared=Declared(spin=False, w3_nonzero=(k == 1)))
    raise ValidationError("manifold", f"unknown name {name!r}")


# --------------------------------------------------------------------------
# Connected sums
# --------------------------------------------------------------------------

def connected_sum(parts: list[InputData]) -> InputData:
    """Combine input data additively.

    Homology tables add (torsion multisets union); each part's coefficient
    records re-index into the combined canonical basis, which interleaves
    equal-exponent Moore slots in part order.  The 5-cell records of all
    parts concatenate in part order; the 6-cell vectors add.
    """
    if not parts:
        raise ValidationError("sum", "need at least one part")
    m = sum(p.homology.m for p in parts)
    n = sum(p.homology.n for p in parts)
    torsion = tuple(sorted(t for p in parts for t in p.homology.torsion))
    h = HomologyTable(m, n, torsion)

    # Per-part slot tags; a tag is (exponent, part, original position) and the
    # combined order sorts by exactly that key.
    n3 = [p.homology.n for p in parts]
    n4 = [p.homology.n for p in parts]
    evens: list[list[tuple]] = []
    tws: list[list[tuple]] = []
    for pi, p in enumerate(parts):
        w2 = build_w2(p.homology)
        evens.append([(r, pi, i) for i, r in enumerate(w2.evens)])
        tws.append([])

    def combined_evens():
        return sorted(tag for part in evens for tag in part)

    records: list[Coeffs4] = []
    for pi, p in enumerate(parts):
        for ri, rec in enumerate(p.phi4):
            path = f"sum.parts[{pi}].phi4[{ri}]"
            if len(rec.x) != n3[pi]:
                raise ValidationError(path + ".x", f"expected {n3[pi]} bits")
            if len(rec.y) != len(evens[pi]):
                raise ValidationError(path + ".y", f"expected {len(evens[pi])} bits")
            allev = combined_evens()
            x = [0] * sum(n3)
            off = sum(n3[:pi])
            for i, bit in enumerate(rec.x):
                x[off + i] = bit
            y = [0] * len(allev)
            for j, bit in enumerate(rec.y):
                y[allev.index(evens[pi][j])] = bit
            records.append(Coeffs4(tuple(x), tuple(y)))
            if any(rec.x):
                n3[pi] -= 1
            elif any(rec.y):
                mu = max(j for j, bit in enumerate(rec.y) if bit)
                tag = evens[pi].pop(mu)
                tws[pi].append(tag)
                tws[pi].sort()

    allev = combined_evens()
    alltw = sorted(tag for part in tws for tag in part)
    lad_len = len(allev) + sum(n3) + sum(n4)
    x = [0] * lad_len
    y = [0] * len(allev)
    z = [0] * len(alltw)
    for pi, p in enumerate(parts):
        c = p.phi5
        part_lad = len(evens[pi]) + n3[pi] + n4[pi]
        path = f"sum.parts[{pi}].phi5"
        if len(c.x) != part_lad or len(c.y) != len(evens[pi]) or len(c.z) != len(tws[pi]):
            raise ValidationError(path, "vector lengths do not match the part's final basis")
        for i, bit in enumerate(c.x):
            if i < len(evens[pi]):
                pos = allev.index(evens[pi][i])
            elif i < len(evens[pi]) + n3[pi]:
                pos = len(allev) + sum(n3[:pi]) + (i - len(evens[pi]))
            else:
                pos = len(allev) + sum(n3) + sum(n4[:pi]) + (i - len(evens[pi]) - n3[pi])
            x[pos] ^= bit
        for j, val in enumerate(c.y):
            y[allev.index(evens[pi][j])] += val
        for k, bit in enumerate(c.z):
            z[alltw.index(tws[pi][k])] ^= bit

    provenance = " # ".join(p.provenance for p in parts)
    spins = [p.declared.spin for p in parts]
    w3s = [p.declared.w3_nonzero for p in parts]
    declared = Declared(
        spin=None if any(s is None for s in spins) else all(spins),
        w3_nonzero=None if any(w is None for w in w3s) else any(w3s),
    )
    return InputData(h, tuple(records), Coeffs5(tuple(x), tuple(y), tuple(z)),
                     provenance, declared)
