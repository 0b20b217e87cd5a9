import random
from itertools import product

import pytest

from pd5split.splitter import (OMEGA, OMEGA_PLUS_1, Coeffs4, Coeffs5, FMap,
                               HomologyTable, Move, MoveError, ValidationError,
                               WedgeClass, apply_move, attach_5cell, build_w2,
                               build_w3, build_w4, classify_f, legal_moves,
                               normalize_coeffs5, reduce_phi5, split,
                               wedge_basis)
from pd5split.splitter import _consume


def zero5(w: WedgeClass) -> Coeffs5:
    return Coeffs5((0,) * len(w.ladder()), (0,) * w.a, (0,) * w.c)


def with_bits(w, x=(), y=(), z=(), yvals=None):
    c = zero5(w)
    xs, ys, zs = list(c.x), list(c.y), list(c.z)
    for i in x:
        xs[i] = 1
    for j in y:
        ys[j] = 1
    for k in z:
        zs[k] = 1
    if yvals:
        for j, v in yvals.items():
            ys[j] = v
    return Coeffs5(tuple(xs), tuple(ys), tuple(zs))


class TestSkeletonStages:
    def test_wu_data(self):
        w = build_w2(HomologyTable(0, 0, (2,)))
        assert w == WedgeClass(evens=(1,))

    def test_two_spheres(self):
        assert build_w2(HomologyTable(0, 2, ())) == WedgeClass(n3=2)

    def test_mixed_torsion(self):
        w = build_w2(HomologyTable(1, 0, (3, 4)))
        assert w.odds == (3,) and w.evens == (2,) and w.n3 == 0

    def test_non_prime_power_rejected(self):
        with pytest.raises(ValidationError):
            HomologyTable(0, 0, (6,))

    def test_w3_adds_4_spheres(self):
        w2 = build_w2(HomologyTable(0, 2, ()))
        assert build_w3(w2, 2) == WedgeClass(n3=2, n4=2)
        assert build_w3(w2, 0) == w2

    def test_ladder_sentinels(self):
        w = WedgeClass(n3=1, n4=1, evens=(1, 3))
        assert w.ladder() == (1, 3, OMEGA, OMEGA_PLUS_1)
        assert OMEGA_PLUS_1 > OMEGA > 3


class TestAttach5Cell:
    def test_zero_bits_split_off_a_sphere(self):
        w = WedgeClass(n3=2, evens=(1,))
        out = attach_5cell(w, Coeffs4((0, 0), (0,)))
        assert out == WedgeClass(n3=2, n5=1, evens=(1,))

    def test_sphere_bit_twists_one_sphere(self):
        w = WedgeClass(n3=2, evens=(2,))
        out = attach_5cell(w, Coeffs4((1, 1), (1,)))
        assert out == WedgeClass(n3=1, b=1, evens=(2,))

    def test_moore_bit_twists_largest_index(self):
        w = WedgeClass(evens=(1, 3))
        out = attach_5cell(w, Coeffs4((), (1, 1)))
        assert out == WedgeClass(evens=(1,), tw=(3,))
        # only the slot at the largest set index converts
        out2 = attach_5cell(w, Coeffs4((), (1, 0)))
        assert out2 == WedgeClass(evens=(3,), tw=(1,))

    def test_length_validation(self):
        w = WedgeClass(n3=1, evens=(1,))
        with pytest.raises(ValidationError):
            attach_5cell(w, Coeffs4((1, 0), (0,)))
        with pytest.raises(ValidationError):
            attach_5cell(w, Coeffs4((1,), ()))
        with pytest.raises(ValidationError):
            attach_5cell(w, Coeffs4((2,), (0,)))


class TestNormalize:
    def test_two_becomes_x_bit(self):
        w = WedgeClass(evens=(1,))
        c = normalize_coeffs5(w, with_bits(w, yvals={0: 2}))
        assert c == Coeffs5((1,), (0,), ())

    def test_three_keeps_unit(self):
        w = WedgeClass(evens=(1,))
        start = Coeffs5((1,), (3,), ())
        c = normalize_coeffs5(w, start)
        assert c == Coeffs5((0,), (1,), ())

    def test_idempotent_on_bits(self):
        w = WedgeClass(n3=1, evens=(1, 2), tw=(1,))
        c = with_bits(w, x=[0, 2], y=[1], z=[0])
        assert normalize_coeffs5(w, c) == c

    def test_rejects_large_values_at_high_exponent(self):
        w = WedgeClass(evens=(2,))
        with pytest.raises(ValidationError):
            normalize_coeffs5(w, Coeffs5((0,), (2,), ()))


class TestMoves:
    def test_x_move_from_4_sphere_slot(self):
        w = WedgeClass(n3=0, n4=1, evens=(1, 3))
        c = with_bits(w, x=[2])
        out = apply_move(w, c, Move("x", 2, 0))
        assert out.x == (1, 0, 1)

    def test_y_move_up_the_ladder(self):
        w = WedgeClass(evens=(1, 3))
        c = with_bits(w, y=[0])
        out = apply_move(w, c, Move("y", 0, 1))
        assert out.y == (1, 1)

    def test_y_move_wraps_at_exponent_one(self):
        w = WedgeClass(evens=(1, 1))
        c = with_bits(w, y=[0, 1])
        out = apply_move(w, c, Move("y", 0, 1))
        assert out == Coeffs5((0, 1), (1, 0), ())

    def test_z_move_side_condition(self):
        w = WedgeClass(evens=(), tw=(1, 3))
        c = with_bits(w, z=[1])
        with pytest.raises(MoveError):
            apply_move(w, c, Move("z", 1, 0))
        out = apply_move(w, c, Move("z", 0, 1))
        assert out.z == (0, 1)

    def test_x_move_side_condition(self):
        w = WedgeClass(n3=1, evens=(2,))
        c = with_bits(w, x=[0])
        with pytest.raises(MoveError):
            apply_move(w, c, Move("x", 0, 1))  # finite ladder below the sphere slot

    def test_yz_move(self):
        w = WedgeClass(evens=(2,), tw=(3,))
        c = with_bits(w, y=[0], z=[0])
        out = apply_move(w, c, Move("yz", 0, 0))
        assert out.z == (0,)
        w2 = WedgeClass(evens=(3,), tw=(2,))
        with pytest.raises(MoveError):
            apply_move(w2, with_bits(w2, y=[0]), Move("yz", 0, 0))

    def test_distinct_endpoints_required(self):
        w = WedgeClass(evens=(1, 1))
        with pytest.raises(MoveError):
            apply_move(w, zero5(w), Move("y", 0, 0))

    def test_index_out_of_range(self):
        w = WedgeClass(evens=(1,))
        with pytest.raises(MoveError):
            apply_move(w, zero5(w), Move("x", 0, 5))


class TestReduce:
    def test_all_zero_no_picks(self):
        w = WedgeClass(n3=1, n4=1, evens=(1, 2), tw=(1,))
        _, picks = reduce_phi5(w, zero5(w))
        assert (picks.u, picks.v, picks.w) == (None, None, None)

    def test_wu_pick(self):
        w = WedgeClass(evens=(1,))
        _, picks = reduce_phi5(w, with_bits(w, y=[0]))
        assert (picks.u, picks.v, picks.w) == (None, 0, None)

    def test_z_annihilated_when_twist_not_below(self):
        w = WedgeClass(evens=(2,), tw=(3,))
        _, picks = reduce_phi5(w, with_bits(w, y=[0], z=[0]))
        assert picks.v == 0 and picks.w is None

    def test_z_survives_below(self):
        w = WedgeClass(evens=(3,), tw=(2,))
        _, picks = reduce_phi5(w, with_bits(w, y=[0], z=[0]))
        assert picks.v == 0 and picks.w == 0

    def test_u_largest_v_smallest(self):
        w = WedgeClass(n3=1, n4=1, evens=(1, 2))
        c = with_bits(w, x=[0, 2, 3], y=[0, 1])
        _, picks = reduce_phi5(w, c)
        assert picks.u == 3     # the 4-sphere slot tops the ladder
        assert picks.v == 0

    def test_equal_exponent_merge(self):
        w = WedgeClass(evens=(2, 2))
        _, picks = reduce_phi5(w, with_bits(w, x=[0], y=[1]))
        assert picks.u == picks.v == 1

    def test_lone_unit_with_twin_slot_materializes(self):
        w = WedgeClass(evens=(1, 1))
        out, picks = reduce_phi5(w, with_bits(w, y=[0]))
        assert picks.u == picks.v == 0
        assert out.x[0] == 1 and out.y[0] == 1

    def test_lone_unit_without_twin_stays(self):
        w = WedgeClass(evens=(1,))
        out, picks = reduce_phi5(w, with_bits(w, y=[0]))
        assert picks.u is None and picks.v == 0
        assert out.x == (0,)

    def test_idempotent(self):
        rng = random.Random(7)
        for _ in range(50):
            w = WedgeClass(n3=rng.randint(0, 2), n4=rng.randint(0, 2),
                           evens=tuple(rng.choices((1, 2, 3), k=rng.randint(0, 3))),
                           tw=tuple(rng.choices((1, 2), k=rng.randint(0, 2))))
            c = Coeffs5(tuple(rng.randint(0, 1) for _ in w.ladder()),
                        tuple(rng.randint(0, 3) if r == 1 else rng.randint(0, 1)
                              for r in w.evens),
                        tuple(rng.randint(0, 1) for _ in w.tw))
            once, p1 = reduce_phi5(w, c)
            twice, p2 = reduce_phi5(w, once)
            assert once == twice and p1 == p2


class TestClassify:
    def test_no_picks_no_cone(self):
        w = WedgeClass(n3=1)
        _, picks = reduce_phi5(w, zero5(w))
        assert classify_f(w, picks) is None

    def test_same_slot_gives_family_4(self):
        w = WedgeClass(evens=(2,))
        _, picks = reduce_phi5(w, with_bits(w, x=[0], y=[0]))
        f = classify_f(w, picks)
        assert f.family == 4 and f.y == 1 and f.r == 2 and f.x == 0

    def test_sphere_slot_families(self):
        w = WedgeClass(n3=1, n4=1, evens=(2,))
        _, picks = reduce_phi5(w, with_bits(w, x=[1], y=[0]))
        f = classify_f(w, picks)
        assert f.family == 2 and f.x == 1 and f.r == 2
        _, picks = reduce_phi5(w, with_bits(w, x=[2]))
        f = classify_f(w, picks)
        assert f.family == 1 and f.x == 1 and f.y == 0

    def test_distinct_moore_slots_family_3(self):
        w = WedgeClass(evens=(1, 3))
        _, picks = reduce_phi5(w, with_bits(w, x=[1], y=[0]))
        f = classify_f(w, picks)
        assert f.family == 3 and f.rho == 3 and f.r == 1

    def test_family_invariants(self):
        with pytest.raises(ValueError):
            FMap(4, 1, 1, 0, r=2)
        with pytest.raises(ValueError):
            FMap(1, 0, 1, 1, r=2, s=2)  # needs s < r
        FMap(1, 0, 1, 1, r=2, s=1)


class TestSplit:
    def test_wu(self):
        h = HomologyTable(0, 0, (2,))
        r = split(h, [], Coeffs5((0,), (1,), ()))
        assert r.f == FMap(1, 0, 1, 0, r=1)
        assert r.wedge == WedgeClass()
        assert r.s2_count == 0 and not r.top_sphere

    def test_twisted_bundle_fixture(self):
        h = HomologyTable(0, 1, ())
        r = split(h, [], Coeffs5((0, 1), (), ()))
        assert r.f == FMap(1, 1, 0, 0)
        assert r.wedge == WedgeClass(n3=1)

    def test_all_zero_torsion_free_gives_spheres(self):
        # product of a genus-2 surface with a 3-manifold of first Betti
        # number 1: m = 5, n = 6, no torsion, every coefficient zero
        g, b = 2, 1
        m = 2 * g + b
        n = 1 + 2 * g * b + b
        h = HomologyTable(m, n, ())
        phi4 = [Coeffs4((0,) * n, ()) for _ in range(m)]
        w4, _ = build_w4(h, phi4)
        r = split(h, phi4, Coeffs5((0,) * len(w4.ladder()), (), ()))
        assert r.f is None and r.top_sphere
        assert r.wedge == WedgeClass(n3=n, n4=n, n5=m)

    def test_record_count_mismatch(self):
        h = HomologyTable(1, 0, ())
        with pytest.raises(ValidationError):
            split(h, [], Coeffs5((), (), ()))

    def test_deterministic(self):
        h = HomologyTable(1, 2, (2, 2, 3))
        phi4 = [Coeffs4((1, 0), (0, 1))]
        w4, _ = build_w4(h, phi4)
        c = Coeffs5(tuple(1 for _ in w4.ladder()),
                    tuple(3 if r == 1 else 1 for r in w4.evens),
                    tuple(1 for _ in w4.tw))
        assert split(h, phi4, c) == split(h, phi4, c)

    def test_count_bookkeeping(self):
        # degree-5 rank contributions come to m after all attachments
        rng = random.Random(3)
        for _ in range(60):
            m, n = rng.randint(0, 3), rng.randint(0, 3)
            torsion = tuple(rng.choice((2, 4, 8, 3, 9))
                            for _ in range(rng.randint(0, 3)))
            h = HomologyTable(m, n, torsion)
            phi4 = []
            w = build_w3(build_w2(h), n)
            for _ in range(m):
                rec = Coeffs4(tuple(rng.randint(0, 1) for _ in range(w.n3)),
                              tuple(rng.randint(0, 1) for _ in range(w.a)))
                phi4.append(rec)
                w = attach_5cell(w, rec)
            c = Coeffs5(tuple(rng.randint(0, 1) for _ in w.ladder()),
                        tuple(rng.randint(0, 3) if r == 1 else rng.randint(0, 1)
                              for r in w.evens),
                        tuple(rng.randint(0, 1) for _ in w.tw))
            r = split(h, phi4, c)
            z_bit = r.f.z if r.f is not None else 0
            assert r.wedge.n5 + r.wedge.b + len(r.wedge.tw) + z_bit == m

    def test_basis_echo(self):
        w = WedgeClass(n3=1, n4=2, evens=(1,), odds=(3,), b=1, tw=(2,))
        names = wedge_basis(w)
        assert names == ["S3[0]", "S4[0]", "S4[1]", "P4(2^1)[0]", "P4(3)[0]",
                         "SCP2[0]", "SCP2(2^2)[0]"]


class TestConfluenceClosure:
    """One-step closure of the reduction: a single legal move never changes
    the normal form, which by induction covers move scripts of any length."""

    def shapes(self):
        for evens in [(), (1,), (2,), (1, 1), (1, 2), (2, 2)]:
            for n3 in (0, 1):
                for n4 in (0, 1):
                    for tw in [(), (1,), (2,)]:
                        yield WedgeClass(n3=n3, n4=n4, evens=evens, tw=tw)

    def normal_form(self, w, c):
        _, picks = reduce_phi5(w, c)
        return classify_f(w, picks), _consume(w, picks)

    def test_exhaustive_small_shapes(self):
        checked = 0
        for w in self.shapes():
            moves = legal_moves(w)
            yranges = [range(4) if r == 1 else range(2) for r in w.evens]
            for xv in product(*(range(2) for _ in w.ladder())):
                for yv in product(*yranges):
                    for zv in product(*(range(2) for _ in w.tw)):
                        c = Coeffs5(xv, yv, zv)
                        base = self.normal_form(w, c)
                        cn = normalize_coeffs5(w, c)
                        for mv in moves:
                            assert self.normal_form(w, apply_move(w, cn, mv)) == base
                            checked += 1
        assert checked > 10000
