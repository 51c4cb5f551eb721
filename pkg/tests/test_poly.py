import random
from fractions import Fraction

import pytest

from crtypes.gaussian import gr
from crtypes.poly import (
    INFINITE,
    Poly,
    PolyError,
    WeightSystem,
    hypersurface_ring,
)

from helpers import random_poly, random_point

R3 = hypersurface_ring(3)  # z1, z2, w
Z1, Z2, W = R3.var("z1"), R3.var("z2"), R3.var("w")
Z1B, Z2B = R3.conj_var("z1"), R3.conj_var("z2")

# chi of the cubic-contact example: (z2 + conj(z2) + z1*conj(z1))^2
CHI_21 = (Z2 + Z2B + Z1 * Z1B) ** 2


class TestArithmetic:
    def test_additive_inverse(self):
        assert (Z1 + (-Z1)).is_zero()

    def test_difference_of_squares(self):
        assert (Z1 + Z1B) * (Z1 - Z1B) == Z1 ** 2 - Z1B ** 2

    def test_scale_by_i_and_conjugate(self):
        p = (Z1 * Z1B).scale(gr(0, 1))
        assert p == (Z1 * Z1B).scale(gr(0, 1))
        assert p.conj() == (Z1 * Z1B).scale(gr(0, -1))

    def test_dimension_mismatch(self):
        other = hypersurface_ring(4)
        with pytest.raises(PolyError):
            Z1 + other.var("z1")


class TestWirtinger:
    def test_dzbar_power(self):
        p = Z1 * Z1B ** 2
        assert p.dzbar("z1") == (Z1 * Z1B).scale(2)

    def test_dz_of_chi(self):
        # d/dz1 of (z2+z2b+z1*z1b)^2 = 2*z1b*(z2+z2b+z1*z1b)
        u = Z2 + Z2B + Z1 * Z1B
        assert CHI_21.dz("z1") == (Z1B * u).scale(2)

    def test_antiholomorphic_kernel(self):
        assert (Z1B ** 3).dz("z1").is_zero()

    def test_unknown_variable(self):
        with pytest.raises(PolyError):
            Z1.dz("z9")


class TestConjugationStructure:
    def test_conjugate_example(self):
        p = Z1 ** 2 * Z2B + R3.const(gr(0, 1))
        assert p.conj() == Z1B ** 2 * Z2 + R3.const(gr(0, -1))

    def test_holomorphic_part(self):
        p = Z1 ** 2 + Z1B ** 2 + Z1 * Z1B
        assert p.holomorphic_part() == Z1 ** 2

    def test_chi_is_real(self):
        assert CHI_21.is_real()


class TestSubstitute:
    def test_shear(self):
        img = Z2 - (Z1 ** 2).scale(Fraction(1, 2))
        assert Z2.substitute({"z2": img}) == img

    def test_dilation(self):
        q = (Z1 * Z1B).substitute({"z1": Z1.scale(Fraction(1, 2))})
        assert q == (Z1 * Z1B).scale(Fraction(1, 4))

    def test_identity(self):
        assert W.substitute({"w": W}) == W

    def test_barred_image_must_be_conjugate(self):
        with pytest.raises(PolyError):
            (Z1 * Z1B).substitute({"z1": Z2, "conj(z1)": Z2B + Z1})
        # consistent explicit barred image is fine
        assert (Z1 * Z1B).substitute({"z1": Z2, "conj(z1)": Z2B}) == Z2 * Z2B


class TestGradedParts:
    def test_weighted_part_mixed_weights(self):
        # weights z1 -> 1, z2 -> 3: both monomials weigh 4
        w = WeightSystem(R3, [1, 3, 5])
        p = Z1 * Z2B + Z1 ** 2 * Z1B ** 2
        assert p.weighted_part(4, w) == p
        assert p.weighted_part(3, w).is_zero()

    def test_hom_part_of_chi(self):
        # expanding the square, the only ordinary-degree-4 term is z1^2*z1b^2
        assert CHI_21.hom_part(4) == Z1 ** 2 * Z1B ** 2

    def test_vanishing_order_of_chi(self):
        assert CHI_21.vanishing_order() == 2

    def test_vanishing_order_of_zero(self):
        assert R3.zero().vanishing_order() == INFINITE


class TestEval:
    def test_modulus_squared(self):
        assert (Z1 * Z1B).eval([gr(1, 1), gr(0), gr(0)]) == gr(2)

    def test_real_part_eval(self):
        # Re(z1^2 * conj(z2)) at z1=1, z2=i: (conj(i) + i)/2 = 0
        p = (Z1 ** 2 * Z2B).real_part()
        assert p.eval([gr(1), gr(0, 1), gr(0)]) == gr(0)

    def test_zero_eval(self):
        assert R3.zero().eval([gr(5), gr(7), gr(11)]) == gr(0)

    def test_eval_of_real_poly_is_real(self):
        rng = random.Random(31)
        for _ in range(20):
            p = random_poly(R3, rng)
            re = p.real_part()
            x = random_point(R3, rng)
            assert re.eval(x).is_real()


class TestAlgebraicLaws:
    def test_ring_laws_randomized(self):
        rng = random.Random(20240811)
        for _ in range(60):
            p = random_poly(R3, rng)
            q = random_poly(R3, rng)
            r = random_poly(R3, rng)
            assert (p + q) + r == p + (q + r)
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert p * q == q * p

    def test_conj_is_ring_antiautomorphism(self):
        rng = random.Random(7)
        for _ in range(40):
            p = random_poly(R3, rng)
            q = random_poly(R3, rng)
            assert (p * q).conj() == p.conj() * q.conj()
            assert p.conj().conj() == p

    def test_wirtinger_commutation_and_intertwining(self):
        rng = random.Random(99)
        for _ in range(40):
            p = random_poly(R3, rng)
            assert p.dz("z1").dzbar("z2") == p.dzbar("z2").dz("z1")
            assert p.dzbar("z1") == p.conj().dz("z1").conj()

    def test_weighted_parts_sum_to_poly(self):
        rng = random.Random(3)
        w = WeightSystem(R3, [1, 2, 4])
        for _ in range(30):
            p = random_poly(R3, rng)
            total = R3.zero()
            for sigma in range(0, 60):
                total = total + p.weighted_part(sigma, w)
            assert total == p

    def test_eval_respects_substitution(self):
        rng = random.Random(12)
        for _ in range(25):
            p = random_poly(R3, rng, max_terms=3, max_exp=2)
            images = {
                "z1": random_poly(R3, rng, max_terms=2, max_exp=1),
                "z2": random_poly(R3, rng, max_terms=2, max_exp=1),
                "w": random_poly(R3, rng, max_terms=2, max_exp=1),
            }
            x = random_point(R3, rng)
            composed = p.substitute(images).eval(x)
            direct = p.eval([images["z1"].eval(x), images["z2"].eval(x), images["w"].eval(x)])
            assert composed == direct

    def test_truncated_mul_agrees_with_full(self):
        rng = random.Random(4)
        for _ in range(25):
            p = random_poly(R3, rng)
            q = random_poly(R3, rng)
            full = p * q
            for d in (0, 2, 5):
                kept = {k: c for k, c in full.terms.items() if sum(k) <= d}
                assert p.mul_truncated(q, d) == Poly(R3, kept)
