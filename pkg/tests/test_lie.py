import json
import math

import numpy as np
import pytest
from oracle import central_difference, table_mul

from quatorb.lie import (
    ALGEBRA_BASIS,
    ALGEBRA_DIM,
    Ad,
    AlgebraElement,
    GroupElement,
    ad,
    algebra_inner,
    algebra_norm,
    algebra_to_array,
    array_to_algebra,
    bracket,
    exp_group,
    group_inv,
    group_mul,
    inner_auto,
    structure_constant_records,
    structure_constants,
)
from quatorb.quaternion import (
    E0,
    E1,
    E2,
    E3,
    P1,
    P2,
    P3,
    PureQuaternion,
    Quaternion,
    UnitQuaternion,
    ZERO,
    mul,
    renormalize,
)

EPS1, EPS2, EPS3 = ALGEBRA_BASIS[0], ALGEBRA_BASIS[1], ALGEBRA_BASIS[2]
EB0, EB1, EB2, EB3 = ALGEBRA_BASIS[3], ALGEBRA_BASIS[4], ALGEBRA_BASIS[5], ALGEBRA_BASIS[6]


def random_algebra(rng):
    return AlgebraElement(Quaternion(*rng.standard_normal(4)),
                          PureQuaternion(*rng.standard_normal(3)))


def random_group(rng):
    return GroupElement(Quaternion(*rng.standard_normal(4)),
                        renormalize(Quaternion(*rng.standard_normal(4))))


def algebra_close(v, vp, tol):
    return algebra_norm(v - vp) <= tol


class TestStructureConstants:
    def test_eps1_e2_gives_e3(self):
        # basis indices: eps1 = 0, e2 = 5, e3 = 6
        c = structure_constants()
        assert c[0, 5, 6] == 1

    def test_delta_term(self):
        # [eps2, e2] has e0 coefficient +1; e0 = 3, eps2 = 1, e2 = 5
        c = structure_constants()
        assert c[1, 5, 3] == 1

    def test_diagonal_zero(self):
        c = structure_constants()
        for i in range(ALGEBRA_DIM):
            assert not c[i, i, :].any()

    def test_antisymmetry_exact(self):
        c = structure_constants()
        assert np.array_equal(c, -np.swapaxes(c, 0, 1))

    def test_values_are_small_integers(self):
        c = structure_constants()
        assert set(np.unique(c)).issubset({-2, -1, 0, 1, 2})

    def test_jacobi_identity_integer(self):
        # enumeration oracle: exact integer arithmetic over all 35 triples
        c = structure_constants()
        for i in range(ALGEBRA_DIM):
            for j in range(i + 1, ALGEBRA_DIM):
                for k in range(j + 1, ALGEBRA_DIM):
                    for n in range(ALGEBRA_DIM):
                        total = 0
                        for m in range(ALGEBRA_DIM):
                            total += int(c[j, k, m]) * int(c[i, m, n])
                            total += int(c[k, i, m]) * int(c[j, m, n])
                            total += int(c[i, j, m]) * int(c[k, m, n])
                        assert total == 0

    def test_records_match_dense(self):
        c = structure_constants()
        records = structure_constant_records()
        json.dumps(records)  # JSON-serializable
        dense = np.zeros_like(c)
        for r in records:
            dense[r["i"], r["j"], r["k"]] = r["c"]
        assert np.array_equal(dense, c)


class TestBracket:
    def test_pure_pure(self):
        got = bracket(EPS1, EPS2)
        assert got.nu == ZERO and got.xi == 2.0 * P3

    def test_pure_e0(self):
        got = bracket(EPS1, EB0)
        assert got.nu == -E1 and got.xi == PureQuaternion(0, 0, 0)

    def test_nu_nu_commute(self):
        got = bracket(EB2, EB3)
        assert got.nu == ZERO and got.xi == PureQuaternion(0, 0, 0)

    def test_matches_structure_constants_exactly(self):
        c = structure_constants()
        for i in range(ALGEBRA_DIM):
            for j in range(i + 1, ALGEBRA_DIM):
                got = algebra_to_array(bracket(ALGEBRA_BASIS[i], ALGEBRA_BASIS[j]))
                expected = c[i, j, :].astype(float)
                assert np.array_equal(got, expected)

    def test_antisymmetry(self, rng):
        for _ in range(100):
            v, vp = random_algebra(rng), random_algebra(rng)
            assert algebra_close(bracket(v, vp), -bracket(vp, v), 1e-13)

    def test_jacobi_random(self, rng):
        for _ in range(200):
            u, v, w = (random_algebra(rng) for _ in range(3))
            total = bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) \
                + bracket(w, bracket(u, v))
            assert algebra_norm(total) <= 1e-12

    def test_ad_is_bracket(self, rng):
        v, vp = random_algebra(rng), random_algebra(rng)
        assert ad(v, vp) == bracket(v, vp)
        assert algebra_norm(ad(v, v)) == 0.0
        assert algebra_close(ad(v, vp) + ad(vp, v), AlgebraElement.zero(), 1e-13)


class TestGroup:
    def test_identity(self, rng):
        g = random_group(rng)
        e = GroupElement.identity()
        assert group_mul(e, g) == g

    def test_mul_example(self):
        # (e1, e0)(e2, e3): q-part e2 + e1 e3 = e2 - e2 = 0
        g = GroupElement(E1, UnitQuaternion(1, 0, 0, 0))
        gp = GroupElement(E2, UnitQuaternion(0, 0, 0, 1))
        expected_q = Quaternion(*(np.array([0, 0, 1, 0], dtype=float)
                                  + np.array(table_mul([0, 1, 0, 0], [0, 0, 0, 1]))))
        got = group_mul(g, gp)
        assert got.q == expected_q == ZERO
        assert got.s == UnitQuaternion(0, 0, 0, 1)

    def test_inverse_example(self):
        # (e1, e3)^-1 = (-e1 conj(e3), conj(e3)) = (-e2, -e3)
        g = GroupElement(E1, UnitQuaternion(0, 0, 0, 1))
        got = group_inv(g)
        assert got.q == -E2
        assert got.s == UnitQuaternion(0, 0, 0, -1)

    def test_inverse_axiom(self, rng):
        e = GroupElement.identity()
        for _ in range(100):
            g = random_group(rng)
            gg = group_mul(g, group_inv(g))
            assert (gg.q - e.q).norm() + (gg.s - e.s).norm() <= 1e-13

    def test_inverse_involution(self, rng):
        g = random_group(rng)
        gg = group_inv(group_inv(g))
        assert (gg.q - g.q).norm() + (gg.s - g.s).norm() <= 1e-13

    def test_associativity(self, rng):
        for _ in range(100):
            g, gp, gpp = (random_group(rng) for _ in range(3))
            lhs = group_mul(group_mul(g, gp), gpp)
            rhs = group_mul(g, group_mul(gp, gpp))
            assert (lhs.q - rhs.q).norm() + (lhs.s - rhs.s).norm() <= 1e-13


class TestInnerAuto:
    def test_fixes_identity(self, rng):
        g = random_group(rng)
        e = GroupElement.identity()
        got = inner_auto(g, e)
        assert (got.q - e.q).norm() + (got.s - e.s).norm() <= 1e-13

    def test_identity_acts_trivially(self, rng):
        gp = random_group(rng)
        got = inner_auto(GroupElement.identity(), gp)
        assert (got.q - gp.q).norm() + (got.s - gp.s).norm() <= 1e-13

    def test_normal_subgroup(self, rng):
        # conjugating (p, e0) lands on (p s^-1, e0)
        for _ in range(50):
            g = random_group(rng)
            p = Quaternion(*rng.standard_normal(4))
            h = GroupElement(p, UnitQuaternion(1, 0, 0, 0))
            got = inner_auto(g, h)
            expected_q = mul(p, g.s.inverse())
            assert (got.q - expected_q).norm() <= 1e-13
            assert (got.s - E0).norm() <= 1e-13

    def test_agrees_with_composition(self, rng):
        for _ in range(100):
            g, gp = random_group(rng), random_group(rng)
            via_formula = inner_auto(g, gp)
            via_ops = group_mul(group_mul(g, gp), group_inv(g))
            assert (via_formula.q - via_ops.q).norm() \
                + (via_formula.s - via_ops.s).norm() <= 1e-12


class TestAd:
    def test_identity(self, rng):
        v = random_algebra(rng)
        assert algebra_close(Ad(GroupElement.identity(), v), v, 0.0)

    def test_pure_rotation(self, rng):
        from quatorb.quaternion import rotate

        s = renormalize(Quaternion(*rng.standard_normal(4)))
        xi = PureQuaternion(*rng.standard_normal(3))
        got = Ad(GroupElement(ZERO, s), AlgebraElement(ZERO, xi))
        assert got.nu == ZERO
        assert (got.xi - rotate(s, xi)).norm() <= 1e-14

    def test_translation_example(self):
        # Ad((e1, e0), (0, eps1)) = (e1 e1, eps1) = (-e0, eps1)
        g = GroupElement(E1, UnitQuaternion(1, 0, 0, 0))
        got = Ad(g, EPS1)
        assert got.nu == -E0
        assert got.xi == P1

    def test_homomorphism(self, rng):
        for _ in range(200):
            g, gp = random_group(rng), random_group(rng)
            v = random_algebra(rng)
            assert algebra_close(Ad(group_mul(g, gp), v), Ad(g, Ad(gp, v)), 1e-12)

    def test_derivative_is_ad(self, rng):
        # oracle: central differences of t -> Ad(exp(t v), v'), step 1e-4
        h = 1e-4
        for _ in range(100):
            v, vp = random_algebra(rng), random_algebra(rng)
            n = algebra_norm(v)
            if n < 1e-6:
                continue
            v = (1.0 / n) * v
            fd = np.array([central_difference(
                lambda t, k=k: algebra_to_array(Ad(exp_group(t * v), vp))[k], h)
                for k in range(ALGEBRA_DIM)])
            expected = algebra_to_array(ad(v, vp))
            assert np.max(np.abs(fd - expected)) <= 1e-6


class TestExpGroup:
    def test_zero(self):
        got = exp_group(AlgebraElement.zero())
        assert got.q == ZERO
        assert got.s == UnitQuaternion(1, 0, 0, 0)

    def test_abelian_direction(self):
        got = exp_group(AlgebraElement(E1, PureQuaternion(0, 0, 0)))
        assert got.q == E1
        assert got.s == UnitQuaternion(1, 0, 0, 0)

    def test_quarter_turn(self):
        got = exp_group(AlgebraElement(ZERO, PureQuaternion(0, 0, math.pi / 4)))
        r = math.sqrt(0.5)
        assert abs(got.s.w - r) <= 1e-15 and abs(got.s.z - r) <= 1e-15
        assert got.s.x == 0.0 and got.s.y == 0.0

    def test_half_turn(self):
        got = exp_group(AlgebraElement(ZERO, PureQuaternion(0, 0, math.pi / 2)))
        assert abs(got.s.w) <= 1e-15 and abs(got.s.z - 1.0) <= 1e-15

    def test_one_parameter_group(self, rng):
        v = random_algebra(rng)
        a, b = 0.31, -0.47
        lhs = exp_group((a + b) * v)
        rhs = group_mul(exp_group(a * v), exp_group(b * v))
        assert (lhs.q - rhs.q).norm() + (lhs.s - rhs.s).norm() <= 1e-12

    def test_series_branch_continuity(self):
        # values straddling the series threshold agree to high accuracy
        nu = Quaternion(0.7, -0.2, 0.1, 0.4)
        for t in (0.99e-4, 1.01e-4):
            xi = PureQuaternion(t, 0, 0)
            got = exp_group(AlgebraElement(nu, xi))
            exact_s = Quaternion(math.cos(t), math.sin(t), 0, 0)
            assert (got.s - exact_s).norm() <= 1e-15


class TestAlgebraInner:
    def test_examples(self):
        assert algebra_inner(AlgebraElement(E0, P1), AlgebraElement(E0, P1)) == 2.0
        assert algebra_inner(AlgebraElement(E0, PureQuaternion(0, 0, 0)),
                             AlgebraElement(E1, PureQuaternion(0, 0, 0))) == 0.0
        assert algebra_inner(AlgebraElement(ZERO, P2),
                             AlgebraElement(E2, PureQuaternion(0, 0, 0))) == 0.0

    def test_positive_definite(self, rng):
        v = random_algebra(rng)
        assert algebra_inner(v, v) > 0.0

    def test_array_roundtrip(self, rng):
        v = random_algebra(rng)
        assert array_to_algebra(algebra_to_array(v)) == v
