"""Relative dimensions, the Bass dimension scan, and the sandwich
sequences.

Oracles: with the regular bimodule the relative rulers collapse onto
the ordinary projective/injective dimensions, so those answers are
pinned against `dimension`; the Bass chain of the second simple is
pinned against the hand-built coresolution 0 -> S(2) -> I(2) -> I(1);
the sandwich sequences are replayed through their own verification
hooks plus the split-case isomorphism they must reproduce.
"""

import math

import pytest

from cotr.algebra import matlis_dual_bimodule, regular_bimodule
from cotr.answers import EXACT, INFINITE, NO_CORESOLUTION, NO_RESOLUTION, ZERO
from cotr.errors import (
    InputError,
    InternalInvariantViolation,
    PreconditionNotCertified,
)
from cotr.homology import cosyzygy, dimension, ext_dims
from cotr.dims import (
    BASS_ID,
    FW_PD,
    IW_ID,
    PW_ID,
    PW_PD,
    bass_id,
    ext_based_pd,
    f_omega_pd,
    i_omega_id,
    p_omega_id,
    p_omega_pd,
    semi_tilting,
    theorem_4_2_approximations,
)
from cotr.modrep import (
    cotensor,
    direct_sum,
    injective_module,
    is_in_add,
    is_isomorphic,
    matlis_left_module,
    regular_module,
    simple_modules,
    star,
    zero_module,
)
from cotr.semidual import check_semidualizing, class_membership, cotorsionfree_class
from tests.test_algebra import a2_algebra, dual_numbers
from tests.test_semidual import a2_module_zoo, simples


@pytest.fixture(scope="module")
def a2():
    return a2_algebra()


@pytest.fixture(scope="module")
def dn():
    return dual_numbers()


@pytest.fixture(scope="module")
def cert_a2(a2):
    return check_semidualizing(matlis_dual_bimodule(a2))


@pytest.fixture(scope="module")
def cert_reg_a2(a2):
    return check_semidualizing(regular_bimodule(a2))


@pytest.fixture(scope="module")
def cert_dn(dn):
    return check_semidualizing(matlis_dual_bimodule(dn))


@pytest.fixture(scope="module")
def cert_reg_dn(dn):
    return check_semidualizing(regular_bimodule(dn))


@pytest.fixture(scope="module")
def zoo(a2):
    return a2_module_zoo(a2)


def dn_zoo(dn):
    k = simple_modules(dn)[0]
    r = regular_module(dn)
    return [k, r, direct_sum([k, r])[0]]


class TestPwPd:
    def test_summand_of_omega(self, cert_a2, a2):
        ans = p_omega_pd(cert_a2, injective_module(a2, "1"))
        assert ans.quantity == PW_PD
        assert ans.value.status == EXACT and ans.value.value == 0
        assert ans.certificate.length == 0
        ans.certificate.verify()

    def test_omega_itself(self, cert_a2, a2):
        om = direct_sum([injective_module(a2, "1"), injective_module(a2, "2")])[0]
        assert p_omega_pd(cert_a2, om).value.value == 0

    def test_unreachable_simple_has_no_resolution(self, cert_a2, a2):
        # Hom(ω, S(2)) = 0, so the canonical map cannot be onto
        ans = p_omega_pd(cert_a2, simples(a2)["S(2)"])
        assert ans.value.status == NO_RESOLUTION
        assert ans.certificate is None
        assert "image" in ans.value.reason

    def test_regular_module_unreachable(self, cert_a2, a2):
        # every map ω -> Λ lands in the projective-injective summand
        assert p_omega_pd(cert_a2, regular_module(a2)).value.status == NO_RESOLUTION

    def test_trivial_module_cycles_over_dual_numbers(self, cert_reg_dn, dn):
        k = simple_modules(dn)[0]
        ans = p_omega_pd(cert_reg_dn, k)
        assert ans.value.status == INFINITE
        assert ans.value.cycle == (0, 1)
        wit = ans.value.witness
        assert wit.is_isomorphism() and wit.source is k and wit.target.dim == 1

    def test_zero_module(self, cert_a2, a2):
        assert p_omega_pd(cert_a2, zero_module(a2)).value.status == ZERO

    def test_regular_omega_reproduces_ordinary_pd(self, cert_reg_a2, zoo,
                                                  cert_reg_dn, dn):
        for cert, mods in ((cert_reg_a2, zoo), (cert_reg_dn, dn_zoo(dn))):
            for m in mods:
                rel = p_omega_pd(cert, m).value
                ordinary = dimension(m, "pd")
                # cycle indices may differ (the canonical chain is fatter
                # than the minimal one), the verdict may not
                assert rel.status == ordinary.status
                if rel.status == EXACT:
                    assert rel.value == ordinary.value

    def test_certificate_realizes_value(self, cert_reg_a2, a2):
        ans = p_omega_pd(cert_reg_a2, simples(a2)["S(1)"])
        assert ans.value.value == 1
        chain = ans.certificate
        assert chain.length == 1
        chain.verify()
        # the kernel of the cover of S(1) is two copies of the other projective
        assert chain.final.dim == 2
        assert is_in_add(chain.final, regular_module(a2))

    def test_direct_sum_takes_the_max(self, cert_reg_a2, zoo):
        for m in zoo:
            for n in zoo:
                a = p_omega_pd(cert_reg_a2, m).value
                b = p_omega_pd(cert_reg_a2, n).value
                both = p_omega_pd(cert_reg_a2, direct_sum([m, n])[0]).value
                if a.status == EXACT and b.status == EXACT:
                    assert both.value == max(a.value, b.value)

    def test_wrong_algebra_rejected(self, cert_a2, dn):
        with pytest.raises(InputError):
            p_omega_pd(cert_a2, simple_modules(dn)[0])

    def test_raw_bimodule_rejected(self, a2):
        with pytest.raises(PreconditionNotCertified):
            p_omega_pd(matlis_dual_bimodule(a2), regular_module(a2))


class TestFwPd:
    def test_same_number_different_scope(self, cert_a2, a2):
        i1 = injective_module(a2, "1")
        flat = f_omega_pd(cert_a2, i1)
        proj = p_omega_pd(cert_a2, i1)
        assert flat.quantity == FW_PD
        assert flat.value.status == proj.value.status
        assert flat.value.value == proj.value.value
        assert "flat = projective" in flat.note


class TestPwId:
    def test_members_are_zero(self, cert_a2, a2):
        ans = p_omega_id(cert_a2, injective_module(a2, "2"))
        assert ans.quantity == PW_ID
        assert ans.value.value == 0

    def test_matlis_omega_reproduces_ordinary_id(self, cert_a2, zoo):
        # coresolving by add(D(Λ)) is coresolving by injectives
        for m in zoo:
            rel = p_omega_id(cert_a2, m).value
            ordinary = dimension(m, "id")
            assert rel.status == ordinary.status == EXACT
            assert rel.value == ordinary.value

    def test_unreachable_from_projectives(self, cert_reg_a2, a2):
        # ω regular: Hom(S(1), Λ) = 0, nothing to coresolve into
        ans = p_omega_id(cert_reg_a2, simples(a2)["S(1)"])
        assert ans.value.status == NO_CORESOLUTION

    def test_summand_bound(self, cert_a2, zoo):
        for m in zoo:
            for n in zoo:
                whole = p_omega_id(cert_a2, direct_sum([m, n])[0]).value
                part = p_omega_id(cert_a2, m).value
                if whole.status == EXACT and part.status == EXACT:
                    assert part.value <= whole.value


class TestIwId:
    def test_regular_s_module(self, cert_a2, a2):
        ans = i_omega_id(cert_a2, regular_module(a2))
        assert ans.quantity == IW_ID
        assert ans.value.status == EXACT and ans.value.value == 0
        ans.certificate.verify()

    def test_cogenerator_class_is_the_regular_module_here(self, cert_a2, a2):
        # Hom(ω, D(Λ)) picks up every projective exactly once
        cog = star(cert_a2.omega, matlis_left_module(a2)).module
        assert is_isomorphic(cog, regular_module(a2)) is not None
        assert i_omega_id(cert_a2, cog).value.value == 0

    def test_simple_with_no_embedding(self, cert_a2, a2):
        ans = i_omega_id(cert_a2, simples(a2)["S(1)"])
        assert ans.value.status == NO_CORESOLUTION
        assert "kernel" in ans.value.reason

    def test_trivial_module_over_dual_numbers_cycles(self, cert_dn, dn):
        ans = i_omega_id(cert_dn, simple_modules(dn)[0])
        assert ans.value.status == INFINITE
        assert ans.value.cycle == (0, 1)

    def test_wrong_side_rejected(self, cert_a2, dn):
        with pytest.raises(InputError):
            i_omega_id(cert_a2, simple_modules(dn)[0])


class TestBassId:
    def test_injectives_are_members(self, cert_a2, a2):
        for v in ("1", "2"):
            ans = bass_id(cert_a2, injective_module(a2, v))
            assert ans.quantity == BASS_ID
            assert ans.value.value == 0
            assert ans.certificate.length == 0

    def test_regular_module(self, cert_a2, a2):
        ans = bass_id(cert_a2, regular_module(a2))
        assert ans.value.status == EXACT and ans.value.value == 1
        assert ans.cross_check.status == EXACT and ans.cross_check.value == 1

    def test_second_simple_chain(self, cert_a2, a2):
        ans = bass_id(cert_a2, simples(a2)["S(2)"])
        assert ans.value.value == 1
        chain = ans.certificate
        assert chain.length == 1
        # 0 -> S(2) -> I(2) -> I(1) -> 0 is the whole coresolution
        assert is_isomorphic(chain.steps[0].middle, injective_module(a2, "2"))
        assert is_isomorphic(chain.final, injective_module(a2, "1"))
        assert [r.verdict for r in chain.reports] == ["out", "in"]
        assert chain.reports[0].failing_condition == "B3"
        chain.verify(cert_a2)

    def test_everything_is_a_member_for_regular_omega(self, cert_reg_a2, zoo):
        for m in zoo:
            assert bass_id(cert_reg_a2, m).value.value == 0

    def test_self_injective_case(self, cert_dn, dn):
        assert bass_id(cert_dn, simple_modules(dn)[0]).value.value == 0

    def test_zero_module(self, cert_a2, a2):
        assert bass_id(cert_a2, zero_module(a2)).value.status == ZERO

    def test_ext_vanishing_with_finite_value_means_membership(self, cert_a2, zoo):
        # members are exactly the finite-dimension modules with no
        # positive Ext against ω
        omega = cert_a2.omega
        for m in zoo:
            ans = bass_id(cert_a2, m)
            if ans.value.status != EXACT:
                continue
            tail = ext_dims(omega, m, 6)[1:]
            if not any(tail):
                assert class_membership(cert_a2, m, "bass").is_member
                assert ans.value.value == 0


class TestSandwichSequences:
    def test_member_level_zero(self, cert_a2, a2):
        i2 = injective_module(a2, "2")
        up, down = theorem_4_2_approximations(cert_a2, i2, 0)
        assert up.middle is i2 and up.right.dim == 0
        assert down.proj.target is i2
        # at level zero the lower middle term is already in add ω
        assert is_in_add(down.middle, cert_a2.omega.as_left_module())

    def test_second_simple_at_level_one(self, cert_a2, a2):
        s2 = simples(a2)["S(2)"]
        pair = theorem_4_2_approximations(cert_a2, s2, 1)
        up, down = pair
        assert up.incl.source is s2 and down.proj.target is s2
        assert up.middle.dim == s2.dim + up.right.dim
        assert down.middle.dim == down.left.dim + s2.dim
        assert pair.member_above.holds and pair.member_below.holds
        assert pair.chain_above.length == 0
        assert pair.chain_below.length <= 1
        pair.chain_above.verify()
        pair.chain_below.verify()

    def test_regular_module_splits(self, cert_a2, a2):
        # the lower sequence ends in a projective module, so it splits
        lam = regular_module(a2)
        pair = theorem_4_2_approximations(cert_a2, lam, 1)
        rebuilt = direct_sum([pair.below.left, lam])[0]
        assert is_isomorphic(pair.below.middle, rebuilt) is not None

    def test_budget_larger_than_needed(self, cert_a2, a2):
        pair = theorem_4_2_approximations(cert_a2, simples(a2)["S(2)"], 4)
        assert pair.precondition.value.value == 1
        assert pair.chain_below.length <= 4

    def test_budget_too_small(self, cert_a2, a2):
        with pytest.raises(PreconditionNotCertified):
            theorem_4_2_approximations(cert_a2, simples(a2)["S(2)"], 0)

    def test_bad_budget(self, cert_a2, a2):
        with pytest.raises(InputError):
            theorem_4_2_approximations(cert_a2, simples(a2)["S(2)"], -1)

    def test_whole_zoo_coherent(self, cert_a2, zoo):
        # a small cut of the acceptance suite: sequences exist and the
        # Ext tail above the certified level vanishes
        omega = cert_a2.omega
        for m in zoo:
            ans = bass_id(cert_a2, m)
            assert ans.value.status == EXACT
            level = ans.value.value
            pair = theorem_4_2_approximations(cert_a2, m, level)
            assert pair.above.middle.dim == m.dim + pair.above.right.dim
            assert not any(ext_dims(omega, m, 8)[level + 1:])

    def test_nonsplit_extension_over_dual_numbers(self, cert_reg_dn, dn):
        # the cover of the member k is R itself; the lower sequence is
        # the radical filtration of R, not a direct sum
        k = simple_modules(dn)[0]
        up, down = theorem_4_2_approximations(cert_reg_dn, k, 0)
        assert up.middle is k
        assert down.middle.dim == 2
        assert is_isomorphic(down.middle, regular_module(dn)) is not None


class TestSemiTilting:
    def test_matlis_over_a2(self, cert_a2):
        left = semi_tilting(cert_a2, "left")
        right = semi_tilting(cert_a2, "right")
        assert left.status == EXACT and left.value == 1
        assert right.status == EXACT and right.value == 1

    def test_regular_bimodules(self, cert_reg_a2, cert_reg_dn):
        for cert in (cert_reg_a2, cert_reg_dn):
            for side in ("left", "right"):
                assert semi_tilting(cert, side).value == 0

    def test_self_injective_matlis(self, cert_dn):
        assert semi_tilting(cert_dn, "left").value == 0
        assert semi_tilting(cert_dn, "right").value == 0

    def test_bad_side(self, cert_a2):
        with pytest.raises(InputError):
            semi_tilting(cert_a2, "Gorenstein")

    def test_regular_bass_dimension_matches_right_side(self, cert_a2, a2):
        # finite right projective dimension of ω shows up as the Bass
        # dimension of the regular module
        ba = bass_id(cert_a2, regular_module(a2))
        st = semi_tilting(cert_a2, "right")
        assert ba.value.status == st.status == EXACT
        assert ba.value.value == st.value == 1

    def test_two_sided_finiteness_collapses_bass_onto_ext(self, cert_a2, zoo):
        assert semi_tilting(cert_a2, "left").is_finite
        assert semi_tilting(cert_a2, "right").is_finite
        for m in zoo:
            ans = bass_id(cert_a2, m)
            assert ans.value.status == EXACT
            cc = ans.cross_check
            expected = cc.value if cc.status == EXACT else 0
            assert ans.value.value == expected


class TestExtBasedPd:
    def test_omega_is_zero(self, cert_a2, a2):
        om = direct_sum([injective_module(a2, "1"), injective_module(a2, "2")])[0]
        ans = ext_based_pd(cert_a2, om)
        assert ans.status == EXACT and ans.value == 0

    def test_matches_the_resolution_at_one(self, cert_reg_a2, a2):
        s1 = simples(a2)["S(1)"]
        ans = ext_based_pd(cert_reg_a2, s1)
        assert ans.value == 1
        assert ans.value == p_omega_pd(cert_reg_a2, s1).value.value
        assert "resolution" in ans.reason

    def test_uncertified_input_rejected(self, cert_a2, a2):
        with pytest.raises(PreconditionNotCertified):
            ext_based_pd(cert_a2, simples(a2)["S(2)"])

    def test_zero_module(self, cert_a2, a2):
        assert ext_based_pd(cert_a2, zero_module(a2)).status == ZERO


class TestComparisonTheorems:
    def test_star_lowers_pd(self, cert_a2, cert_reg_a2, cert_reg_dn, zoo, dn):
        # pd of M_* never exceeds the relative pd, with equality on the
        # image of the cotensor (the infinite-cotorsionfree modules)
        cases = [(cert_a2, zoo), (cert_reg_a2, zoo), (cert_reg_dn, dn_zoo(dn))]
        checked_equal = 0
        for cert, mods in cases:
            omega = cert.omega
            for m in mods:
                rel = p_omega_pd(cert, m).value
                if rel.status != EXACT:
                    continue
                down = dimension(star(omega, m).module, "pd")
                assert down.status == EXACT
                assert down.value <= rel.value
                if cotorsionfree_class(cert, m, math.inf).is_member:
                    assert down.value == rel.value
                    checked_equal += 1
        assert checked_equal >= 5

    def test_cotensor_lowers_id(self, cert_a2, cert_reg_a2, zoo):
        # id of ω⊗N never exceeds the relative id, equality on the
        # Auslander class
        for cert in (cert_a2, cert_reg_a2):
            for n in zoo:
                rel = i_omega_id(cert, n).value
                if rel.status != EXACT:
                    continue
                down = dimension(cotensor(cert.omega, n).module, "id")
                assert down.status == EXACT
                assert down.value <= rel.value
                if class_membership(cert, n, "auslander").is_member:
                    assert down.value == rel.value

    def test_finite_values_bounded_by_id_of_omega(self, cert_a2, cert_reg_a2,
                                                  cert_reg_dn, zoo, dn):
        cases = [(cert_a2, zoo), (cert_reg_a2, zoo), (cert_reg_dn, dn_zoo(dn))]
        for cert, mods in cases:
            id_omega = dimension(cert.omega.as_left_module(), "id")
            if id_omega.status != EXACT:
                continue
            for m in mods:
                rel = p_omega_pd(cert, m).value
                if rel.status == EXACT and cotorsionfree_class(
                        cert, m, math.inf).is_member:
                    assert rel.value <= id_omega.value

    def test_four_way_minimum_bound(self, cert_a2, cert_reg_a2, zoo):
        for cert in (cert_a2, cert_reg_a2):
            omega = cert.omega
            caps = [
                dimension(omega.as_left_module(), "id"),
                dimension(regular_module(omega.right_algebra), "id"),
            ]
            for m in zoo:
                rel = p_omega_pd(cert, m).value
                if rel.status != EXACT:
                    continue
                bounds = caps + [
                    dimension(m, "pd"),
                    dimension(star(omega, m).module, "pd"),
                ]
                vals = [b.value for b in bounds if b.status == EXACT]
                if vals:
                    assert rel.value <= min(vals)

    def test_star_preserves_ext_dimensions(self, cert_a2, cert_reg_a2, zoo):
        # Ext^i(M, N) and Ext^i(M_*, N_*) agree degreewise when M is
        # infinite-cotorsionfree and N has no positive Ext against ω
        for cert in (cert_a2, cert_reg_a2):
            omega = cert.omega
            good_m = [m for m in zoo
                      if cotorsionfree_class(cert, m, math.inf).is_member]
            good_n = [n for n in zoo if not any(ext_dims(omega, n, 6)[1:])]
            assert good_m and good_n
            for m in good_m:
                ms = star(omega, m).module
                for n in good_n:
                    ns = star(omega, n).module
                    left = ext_dims(m, n, 5)
                    right = ext_dims(ms, ns, 5)
                    assert left == right
