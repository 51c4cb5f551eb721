from fractions import Fraction

import pytest

from crtypes.gaussian import gr
from crtypes.grammar import parse_poly
from crtypes.poly import INFINITE, hypersurface_ring
from crtypes.vfield import Hypersurface
from crtypes.normalize import (
    DEFAULT_TRIAL_SET,
    Frame,
    GenericSlideError,
    NormalizeError,
    Substitution,
    case_split,
    euler_shear,
    generic_slide,
    kill_holomorphic_terms,
    l0_of,
    l0_star,
    mixed_sum_coefficients,
    model_weights,
    normalize_full,
    pushforward_frame,
    shear_normalize,
    zslice,
)

R3 = hypersurface_ring(3)
R4 = hypersurface_ring(4)


def model(n, text):
    ring = hypersurface_ring(n)
    m, _ = Hypersurface.from_rho(n, parse_poly(ring, text))
    return m


def cubic_model():
    return model(3, "2*Re(w) + (z2 + conj(z2) + z1*conj(z1))^2")


def degenerate_frame_for(m):
    # S1 = L1 - conj(z1) L2, the degenerate direction of the cubic-contact model
    return Frame(m, [[R3.one(), -R3.conj_var("z1")]])


def frame4(m, a13, a23):
    ring = m.ring
    one, zero = ring.one(), ring.zero()
    return Frame(m, [[one, zero, a13], [zero, one, a23]])


class TestSubstitution:
    def test_round_trips(self):
        g = R4.var("z1") ** 2 * R4.var("z2")
        subs = [
            Substitution.identity(R4),
            Substitution.shear_last_z(R4, g),
            Substitution.w_shear(R4, R4.var("z1") ** 3),
            Substitution.slide(R4, [gr(1, 1)]),
            Substitution.transpose(R4, 0, 1),
        ]
        for s in subs:
            assert s.verify_round_trip()
        composed = subs[1].compose(subs[3]).compose(subs[4])
        assert composed.verify_round_trip()


class TestKillHolomorphicTerms:
    def test_absorbs_pure_terms(self):
        m = model(2, "-2*Re(w) + z1^2 + conj(z1)^2 + z1*conj(z1)")
        m2, sub = kill_holomorphic_terms(m, 2)
        assert m2.rho == parse_poly(m.ring, "-2*Re(w) + z1*conj(z1)")
        # w -> w - z1^2
        assert sub.to_json_dict() == {"w": "w - z1^2"}

    def test_no_holomorphic_terms_identity(self):
        m = model(2, "-2*Re(w) + z1*conj(z1)")
        m2, sub = kill_holomorphic_terms(m, 4)
        assert m2.rho == m.rho
        assert sub.is_identity()

    def test_cubic_chi_has_z2_squared(self):
        # chi = (z2 + z2b + |z1|^2)^2 contains the pure term z2^2, which the
        # w-shear absorbs together with its conjugate
        m = cubic_model()
        m2, sub = kill_holomorphic_terms(m, 4)
        chi = m2.chi
        assert chi.holomorphic_part().is_zero()
        assert chi == parse_poly(
            R3,
            "2*z2*conj(z2) + 2*z2*z1*conj(z1) + 2*conj(z2)*z1*conj(z1)"
            " + z1^2*conj(z1)^2",
        )


class TestL0:
    def test_simple_orders(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.conj_var("z1"), R4.zero())
        assert l0_star(f) == 1
        f2 = frame4(m, R4.var("z1") ** 2, R4.var("z1") * R4.conj_var("z2"))
        assert l0_star(f2) == 2
        f3 = frame4(m, R4.zero(), R4.zero())
        assert l0_star(f3) == INFINITE
        assert l0_of(f3, 4) == 4

    def test_slice_kills_last_variable(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        # a13 = z3^2 disappears on the slice z3 = w = 0
        f = frame4(m, m.ring.var("z3") ** 2, m.ring.zero())
        assert l0_star(f) == INFINITE


class TestShearNormalize:
    def test_single_shear(self):
        # n = 4, a_{1,3}^{(1)} = z1: shear z3 -> z3 - z1^2/2
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.var("z1"), R4.zero())
        f2, m2, sub = shear_normalize(f, m)
        assert sub.to_json_dict()["z3"] == "z3 - 1/2*z1^2"
        sliced = zslice(f2.matrix[0][-1]).hom_part(1)
        assert sliced.is_zero()

    def test_already_normalized(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.conj_var("z1"), R4.zero())
        f2, m2, sub = shear_normalize(f, m)
        assert sub.is_identity()
        assert f2.matrix == f.matrix

    def test_degree_two_shear(self):
        # a_{1,3}^{(2)} = z1*z2: shear z3 -> z3 - z1^2*z2/2
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.var("z1") * R4.var("z2"), R4.zero())
        f2, _, sub = shear_normalize(f, m)
        assert sub.to_json_dict()["z3"] == "z3 - 1/2*z1^2*z2"
        assert zslice(f2.matrix[0][-1]).hom_part(2).set_zero([]).holomorphic_part() \
            .set_zero(range(1, 3)).is_zero()


class TestCaseSplit:
    def test_case_one(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.zero(), R4.var("z1"))
        split = case_split(f, 1)
        assert split.case == "I"
        assert split.j0 == 2

    def test_case_two(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.conj_var("z1"), R4.zero())
        assert case_split(f, 1).case == "II"

    def test_case_two_with_switch(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.var("z2") ** 2, R4.var("z1") * R4.conj_var("z2"))
        split = case_split(f, 2)
        assert split.case == "II"
        assert split.switch_index == 2

    def test_l0_out_of_range(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.conj_var("z1"), R4.zero())
        with pytest.raises(NormalizeError):
            case_split(f, 3, a_contact=2)


class TestEulerShear:
    def test_worked_example(self):
        # a1 = z2, a2 = conj(z1): holomorphic slice parts (z2, 0),
        # g = -(1/2) z1 z2, and the post-shear holomorphic sum cancels
        m = model(4, "-2*Re(w) + (z1*conj(z1))^2 + (z2*conj(z2))^2 + (z3*conj(z3))^2")
        f = frame4(m, R4.var("z2"), R4.conj_var("z1"))
        f2, m2, g, sub = euler_shear(f, m, 1, check_mixed=False)
        assert g == (R4.var("z1") * R4.var("z2")).scale(Fraction(-1, 2))
        z1, z2 = R4.var("z1"), R4.var("z2")
        total = z1 * zslice(f2.matrix[0][-1]).hom_part(1).holomorphic_part() + \
            z2 * zslice(f2.matrix[1][-1]).hom_part(1).holomorphic_part()
        assert total.is_zero()

    def test_antiholomorphic_gives_zero_g(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.conj_var("z2"), R4.conj_var("z1"))
        _, _, g, sub = euler_shear(f, m, 1, check_mixed=False)
        assert g.is_zero()
        assert sub.is_identity()

    def test_pure_z1(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.var("z1"), R4.zero())
        f2, _, g, _ = euler_shear(f, m, 1, check_mixed=False)
        assert g == -(R4.var("z1") ** 2).scale(Fraction(1, 2))
        assert zslice(f2.matrix[0][-1]).hom_part(1).holomorphic_part().is_zero()

    def test_mixed_sums_preserved_bitwise(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        a13 = R4.var("z2") * R4.conj_var("z1") + R4.var("z1") * R4.var("z2")
        a23 = -R4.var("z1") * R4.conj_var("z1")
        f = frame4(m, a13, a23)
        before = mixed_sum_coefficients(f, 2)
        f2, _, g, _ = euler_shear(f, m, 2)
        assert mixed_sum_coefficients(f2, 2) == before

    def test_mixed_condition_enforced(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.var("z2"), R4.conj_var("z1"))
        with pytest.raises(NormalizeError):
            euler_shear(f, m, 1, check_mixed=True)


class TestGenericSlide:
    def test_n3_passthrough(self):
        m = cubic_model()
        m, _ = kill_holomorphic_terms(m, 4)
        f = degenerate_frame_for(m)
        f2, m2, alpha, sub = generic_slide(f, m, DEFAULT_TRIAL_SET, 1)
        assert alpha == ()
        assert sub.is_identity()

    def test_n4_needs_slide(self):
        # the weight-4 part z1*z1b*z2*z2b + z2^2*z2b^2 dies on the (z1, z3)
        # slice at alpha = 0 but survives any slide mixing z2 into z1
        m = model(
            4,
            "-2*Re(w) + z1*conj(z1)*z2*conj(z2) + z2^2*conj(z2)^2"
            " + (z3*conj(z3))^2",
        )
        f = frame4(m, R4.conj_var("z1"), R4.zero())
        k, mw, weights = model_weights(m, 1)
        assert (k, mw) == (2, 4)
        f2, m2, alpha, sub = generic_slide(f, m, DEFAULT_TRIAL_SET, 1)
        assert alpha and not alpha[0].is_zero()
        rho_m = m2.chi_rigid().weighted_part(mw, weights)
        assert not rho_m.set_zero([1]).is_zero()

    def test_degenerate_reports_error(self):
        # weighted part lives only on z2, dies on every (z1, z3) slide slice
        # when only alpha = 0 is offered: genericity impossible, reported
        m = model(4, "-2*Re(w) + z2*conj(z2) + z1^4*conj(z1)^4")
        f = frame4(m, R4.conj_var("z1"), R4.zero())
        with pytest.raises(GenericSlideError):
            generic_slide(f, m, [gr(0)], 1)


class TestPushforward:
    def test_identity(self):
        m = cubic_model()
        f = degenerate_frame_for(m)
        f2 = pushforward_frame(f, Substitution.identity(R3))
        assert f2.matrix == f.matrix

    def test_shear_derivative_rule(self):
        # z2' = z2 - z1^2/2 sends d/dz1 to d/dz1' - z1 d/dz2'
        m = model(3, "-2*Re(w) + z1*conj(z1) + z2*conj(z2)")
        sub = Substitution.shear_last_z(R3, (R3.var("z1") ** 2).scale(Fraction(1, 2)))
        f = Frame.coordinate(m)
        f2 = pushforward_frame(f, sub)
        assert f2.matrix[0][1] == -R3.var("z1")
        assert f2.verify_tangency()

    def test_round_trip_restores_frame(self):
        m = cubic_model()
        f = degenerate_frame_for(m)
        sub = Substitution.shear_last_z(R3, (R3.var("z1") ** 3).scale(Fraction(1, 3)))
        inv = Substitution(R3, sub.inverse, sub.forward)
        f2 = pushforward_frame(pushforward_frame(f, sub), inv)
        assert f2.matrix == f.matrix
        assert f2.m.rho == f.m.rho

    def test_linear_rotation(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.var("z2"), R4.var("z1"))
        sub = Substitution.transpose(R4, 0, 1)
        f2 = pushforward_frame(f, sub)
        # transposing z1 and z2 swaps the two z-columns and relabels variables;
        # without a matching row swap the identity block is gone
        assert not f2.normalized
        assert f2.matrix[0][-1] == R4.var("z1")
        assert f2.matrix[1][-1] == R4.var("z2")
        assert f2.matrix[0][1] == R4.one() and f2.matrix[1][0] == R4.one()


class TestNormalizeFull:
    def test_cubic_certificate(self):
        m = cubic_model()
        f = degenerate_frame_for(m)
        cert = normalize_full(f, m, a_contact=4)
        # for a 3-dimensional model a non-holomorphic row forces the
        # mixed-sum (slide step one) branch
        assert cert.case == "II"
        assert cert.l0 == 1
        assert cert.verified()
        assert cert.weights.weights == (1, 2, 4)

    def test_high_order_certificate(self):
        m = model(3, "-2*Re(w) + z1*conj(z1) + z2*conj(z2)")
        f = Frame(m, [[R3.one(), R3.zero()]])
        cert = normalize_full(f, m, a_contact=2)
        assert cert.case == "high-order"
        assert cert.l0 == 2
        assert cert.verified()

    def test_case_one_certificate(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.zero(), R4.var("z1"))
        cert = normalize_full(f, m, a_contact=2)
        assert cert.case == "I"
        assert cert.j0 == 2
        assert cert.verified()

    def test_case_three_certificate(self):
        # crafted so every mixed sum cancels: a1 = z2*conj(z1) + z1*z2,
        # a2 = -z1*conj(z1); the Euler shear then kills the holomorphic sum
        m = model(
            4,
            "-2*Re(w) + (z1*conj(z1))^2 + (z2*conj(z2))^2 + (z3*conj(z3))^2"
            " + z1*z2*conj(z1)*conj(z2)",
        )
        a13 = R4.var("z2") * R4.conj_var("z1") + R4.var("z1") * R4.var("z2")
        a23 = -(R4.var("z1") * R4.conj_var("z1"))
        f = frame4(m, a13, a23)
        assert not mixed_sum_coefficients(f, 2)
        cert = normalize_full(f, m, a_contact=4)
        assert cert.case == "III"
        assert cert.verified()
        assert cert.euler_g is not None and not cert.euler_g.is_zero()

    def test_switch_branch(self):
        m = model(4, "-2*Re(w) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)")
        f = frame4(m, R4.zero(), R4.conj_var("z2"))
        # row 2 carries the non-holomorphic content; l0 = 1
        cert = normalize_full(f, m, a_contact=2)
        assert cert.case == "II"
        assert cert.switch_index == 2
        assert cert.verified()
