import random
from itertools import product
from math import gcd, prod

import pytest

from pd5split.abgroup import (FgAbGroup, GradedGroup, IntMatrix, Z,
                              direct_sum, group_from_presentation,
                              homology_of_pair, kernel_basis,
                              smith_normal_form, solve, uct_cohomology)


def minors_gcd(m: IntMatrix, k: int) -> int:
    """gcd of all k x k minors; the classical determinantal-divisor oracle
    for the Smith diagonal: d_1 * ... * d_k = gcd of k x k minors."""
    from itertools import combinations
    g = 0
    rows = m.to_lists()
    for ris in combinations(range(m.rows), k):
        for cis in combinations(range(m.cols), k):
            sub = IntMatrix.from_rows([[rows[i][j] for j in cis] for i in ris])
            g = gcd(g, sub.determinant())
    return abs(g)


def snf_oracle_diagonal(m: IntMatrix) -> list[int]:
    out = []
    prev = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        dk = minors_gcd(m, k)
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)]
                                for _ in range(rows)])


class TestSmithNormalForm:
    def test_identity(self):
        m = IntMatrix.identity(2)
        d, u, v = smith_normal_form(m)
        assert d == IntMatrix.identity(2)

    def test_zero(self):
        m = IntMatrix.zero(3, 2)
        d, u, v = smith_normal_form(m)
        assert d.is_zero()

    def test_example_against_minor_gcd_oracle(self):
        m = IntMatrix.from_rows([[2, 4], [6, 8]])
        d, u, v = smith_normal_form(m)
        assert [d.at(0, 0), d.at(1, 1)] == [2, 4]
        assert snf_oracle_diagonal(m) == [2, 4]
        assert u.mul(m).mul(v) == d

    @pytest.mark.parametrize("seed", range(40))
    def test_random_properties(self, seed):
        rng = random.Random(seed)
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        d, u, v = smith_normal_form(m)
        assert u.mul(m).mul(v) == d
        assert abs(u.determinant()) == 1
        assert abs(v.determinant()) == 1
        diag = [d.at(i, i) for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d.at(i, j) == 0
        assert all(x >= 0 for x in diag)
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a != 0 and b % a == 0
        nonzero = [x for x in diag if x]
        assert nonzero == snf_oracle_diagonal(m)

    @pytest.mark.parametrize("seed", range(10))
    def test_kernel_and_solve(self, seed):
        rng = random.Random(100 + seed)
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        k = kernel_basis(m)
        for j in range(k.cols):
            assert all(x == 0 for x in m.mul_vec(list(k.col(j))))
        x = [rng.randint(-3, 3) for _ in range(m.cols)]
        b = m.mul_vec(x)
        got = solve(m, b)
        assert got is not None
        assert m.mul_vec(got) == b


class TestPresentations:
    def test_single_relation(self):
        assert group_from_presentation(1, IntMatrix.from_rows([[2]])) == FgAbGroup.cyclic(2)

    def test_no_relations(self):
        assert group_from_presentation(3, IntMatrix.zero(0, 3)) == FgAbGroup.free(3)

    def test_diagonal_relations_by_enumeration(self):
        # Z^2 / <(2,0), (0,4)>: exactly eight cosets, orders as expected.
        g = group_from_presentation(2, IntMatrix.from_rows([[2, 0], [0, 4]]))
        assert g == FgAbGroup.from_divisors(2, 4)
        cosets = {(a % 2, b % 4) for a in range(8) for b in range(8)}
        assert len(cosets) == 8
        orders = sorted(min(k for k in range(1, 9)
                            if (k * a % 2, k * b % 4) == (0, 0))
                        for a, b in cosets)
        # Element-order census of Z/2 (+) Z/4.
        expected = sorted(min(k for k in range(1, 9)
                              if (k * a % 2, k * b % 4) == (0, 0))
                          for a in range(2) for b in range(4))
        assert orders == expected

    @pytest.mark.parametrize("seed", range(15))
    def test_invariance_under_unimodular_changes(self, seed):
        rng = random.Random(seed)
        g = rng.randint(1, 4)
        rows = rng.randint(0, 4)
        rel = [[rng.randint(-6, 6) for _ in range(g)] for _ in range(rows)]
        base = group_from_presentation(g, IntMatrix.from_rows(rel)
                                       if rel else IntMatrix.zero(0, g))
        work = [r[:] for r in rel]
        for _ in range(10):
            op = rng.choice(["rswap", "radd", "cswap", "cadd", "rneg"])
            if op == "rswap" and len(work) >= 2:
                i, j = rng.sample(range(len(work)), 2)
                work[i], work[j] = work[j], work[i]
            elif op == "radd" and len(work) >= 2:
                i, j = rng.sample(range(len(work)), 2)
                q = rng.randint(-3, 3)
                work[i] = [a + q * b for a, b in zip(work[i], work[j])]
            elif op == "cswap" and g >= 2:
                i, j = rng.sample(range(g), 2)
                for r in work:
                    r[i], r[j] = r[j], r[i]
            elif op == "cadd" and g >= 2:
                i, j = rng.sample(range(g), 2)
                q = rng.randint(-3, 3)
                for r in work:
                    r[i] += q * r[j]
            elif op == "rneg" and work:
                i = rng.randrange(len(work))
                work[i] = [-a for a in work[i]]
        changed = group_from_presentation(g, IntMatrix.from_rows(work)
                                          if work else IntMatrix.zero(0, g))
        assert changed == base


class TestGroups:
    def test_canonical_form_rejects_bad_chain(self):
        with pytest.raises(ValueError):
            FgAbGroup(0, (4, 2))
        with pytest.raises(ValueError):
            FgAbGroup(0, (1,))

    def test_direct_sum_examples(self):
        assert direct_sum([Z, FgAbGroup.cyclic(2)]) == FgAbGroup(1, (2,))
        assert direct_sum([FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)]) == FgAbGroup(0, (2, 4))
        assert direct_sum([FgAbGroup.cyclic(2), FgAbGroup.cyclic(3)]) == FgAbGroup(0, (6,))

    def test_crt_merge_by_element_order_census(self):
        # Census oracle: Z/2 (+) Z/3 and Z/6 have the same order profile.
        orders_sum = sorted((a % 2, b % 3) != (0, 0) and
                            min(k for k in range(1, 7) if (k * a % 2, k * b % 3) == (0, 0))
                            or 1 for a in range(2) for b in range(3))
        orders_z6 = sorted(min(k for k in range(1, 7) if k * c % 6 == 0)
                           for c in range(6))
        assert orders_sum == orders_z6

    def test_lcm_gcd_identity(self):
        from math import lcm
        for a, b in [(2, 4), (6, 4), (12, 18), (5, 7)]:
            got = direct_sum([FgAbGroup.cyclic(a), FgAbGroup.cyclic(b)])
            want = direct_sum([FgAbGroup.cyclic(lcm(a, b)), FgAbGroup.cyclic(gcd(a, b))])
            assert got == want

    @pytest.mark.parametrize("seed", range(10))
    def test_direct_sum_commutative_associative(self, seed):
        rng = random.Random(seed)
        gs = [FgAbGroup.from_divisors(*(rng.choice([0, 2, 3, 4, 8, 9])
                                        for _ in range(rng.randint(0, 3))))
              for _ in range(3)]
        a, b, c = gs
        assert a.direct_sum(b) == b.direct_sum(a)
        assert a.direct_sum(b).direct_sum(c) == a.direct_sum(b.direct_sum(c))

    def test_hom_ext_tensor_tor_against_cyclic(self):
        z4, z2, z6 = FgAbGroup.cyclic(4), FgAbGroup.cyclic(2), FgAbGroup.cyclic(6)
        assert z4.hom(z2) == z2
        assert z4.ext(z2) == z2
        assert z4.tensor(z6) == z2
        assert z4.tor(z6) == z2
        assert Z.hom(z4) == z4
        assert Z.ext(z4) == FgAbGroup.trivial()
        assert z4.hom(Z) == FgAbGroup.trivial()
        assert z4.ext(Z) == z4

    def test_rendering(self):
        assert str(FgAbGroup.trivial()) == "0"
        assert str(Z) == "Z"
        assert str(FgAbGroup.from_divisors(0, 0, 2, 4)) == "Z^2 (+) Z/2 (+) Z/4"


def cochain_cohomology(ranks: dict[int, int], boundaries: dict[int, IntMatrix],
                       coeff: FgAbGroup, degree: int) -> FgAbGroup:
    """Cohomology computed from the dualized complex, as an oracle for the
    universal-coefficient route.  Only implemented for Z and Z/k."""
    def bd(d):
        return boundaries.get(d, IntMatrix.zero(ranks.get(d - 1, 0), ranks.get(d, 0)))

    delta_out = bd(degree + 1).transpose()   # C^deg -> C^{deg+1}
    delta_in = bd(degree).transpose()        # C^{deg-1} -> C^deg
    k = coeff.invariant_factors[0] if coeff.invariant_factors else 0
    if k == 0:
        return homology_of_pair(delta_out, delta_in)
    # mod-k: ker(delta_out mod k) / im(delta_in mod k) by brute force over
    # (Z/k)^n; fine at test sizes.
    n = ranks.get(degree, 0)
    from itertools import product as iproduct
    nm1 = ranks.get(degree - 1, 0)
    elements = [v for v in iproduct(range(k), repeat=n)
                if all(x % k == 0 for x in delta_out.mul_vec(list(v)))]
    image = {tuple(x % k for x in delta_in.mul_vec(list(v)))
             for v in iproduct(range(k), repeat=nm1)} if nm1 else {tuple([0] * n)}
    # order census of the quotient group
    quotient: dict[tuple, int] = {}
    reps = []
    seen = set()
    for v in elements:
        cosets = {tuple((a + b) % k for a, b in zip(v, im)) for im in image}
        key = min(cosets)
        if key not in seen:
            seen.add(key)
            reps.append(key)
    counts = len(reps)
    orders = []
    for v in reps:
        o = 1
        while True:
            w = tuple(a * o % k for a in v)
            if min({tuple((a + b) % k for a, b in zip(w, im)) for im in image}) == tuple([0] * n):
                break
            o += 1
        orders.append(o)
    # reconstruct the group from its order census (2-3 cyclic factors at most here)
    return _group_from_census(counts, orders)


def _group_from_census(count, orders):
    # try all small abelian groups with the right order
    candidates = []
    for divs in _divisor_tuples(count):
        g = FgAbGroup.from_divisors(*divs)
        if g.order() == count:
            census = sorted(_element_orders(divs))
            if census == sorted(orders):
                candidates.append(g)
    assert candidates, "census not matched"
    return candidates[0]


def _divisor_tuples(n, maxlen=4):
    if n == 1:
        yield ()
        return
    def rec(n, start, acc):
        if n == 1:
            yield tuple(acc)
            return
        if len(acc) >= maxlen:
            return
        d = start
        while d <= n:
            if n % d == 0:
                yield from rec(n // d, d, acc + [d])
            d += 1
    yield from rec(n, 2, [])


def _element_orders(divs):
    from math import lcm
    if not divs:
        return [1]
    out = []
    for combo in product(*(range(d) for d in divs)):
        out.append(lcm(*(d // gcd(d, a) if a else 1 for d, a in zip(divs, combo))))
    return out


class TestUct:
    def test_wu_cohomology_and_cochain_oracle(self):
        # H = {2: Z/2, 5: Z} integrally gives {3: Z/2, 5: Z}.
        h = GradedGroup.from_dict({2: FgAbGroup.cyclic(2), 5: Z})
        got = uct_cohomology(h, Z)
        assert got.to_dict() == {3: FgAbGroup.cyclic(2), 5: Z}
        # Oracle: a chain complex with that homology, dualized directly.
        ranks = {2: 1, 3: 1, 5: 1}
        boundaries = {3: IntMatrix.from_rows([[2]])}
        for d in range(1, 7):
            assert cochain_cohomology(ranks, boundaries, Z, d) == got.at(d)

    def test_free_case(self):
        h = GradedGroup.from_dict({3: Z})
        assert uct_cohomology(h, FgAbGroup.cyclic(2)).to_dict() == {3: FgAbGroup.cyclic(2)}

    def test_z4_mod2(self):
        h = GradedGroup.from_dict({2: FgAbGroup.cyclic(4)})
        got = uct_cohomology(h, FgAbGroup.cyclic(2))
        assert got.to_dict() == {2: FgAbGroup.cyclic(2), 3: FgAbGroup.cyclic(2)}

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    @pytest.mark.parametrize("k", [0, 2, 3, 4, 6])
    def test_sphere_one_liner(self, dim, k):
        coeff = Z if k == 0 else FgAbGroup.cyclic(k)
        h = GradedGroup.from_dict({dim: Z})
        got = uct_cohomology(h, coeff)
        for d in range(8):
            assert got.at(d) == (coeff if d == dim else FgAbGroup.trivial())

    def test_rejects_noncyclic_coefficients(self):
        with pytest.raises(ValueError):
            uct_cohomology(GradedGroup.from_dict({2: Z}), FgAbGroup.from_divisors(2, 2))
