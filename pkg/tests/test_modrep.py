import numpy as np
import pytest

from cotr.algebra import matlis_dual_bimodule, regular_bimodule
from cotr.errors import InputError
from cotr.linalg import F2
from cotr.modrep import (
    Morphism,
    add_approximation,
    cokernel,
    cotensor,
    cotensor_morphism,
    direct_sum,
    dual_module,
    endomorphism_algebra,
    endomorphism_algebra_of_direct_sum,
    from_representation,
    hom_space,
    identity_morphism,
    image,
    indecomposable_decomposition,
    injective_envelope,
    injective_module,
    is_in_add,
    is_isomorphic,
    kernel,
    matlis_left_module,
    mu,
    projective_cover,
    projective_module,
    pullback,
    pushout,
    quotients,
    rad,
    regular_module,
    simple_modules,
    socle,
    star,
    star_morphism,
    submodule,
    submodules,
    subquotient,
    theta,
    top,
    to_representation,
    zero_module,
    zero_morphism,
)
from tests.test_algebra import a2_algebra, dual_numbers, ex28_algebra


@pytest.fixture(scope="module")
def a2():
    return a2_algebra()


@pytest.fixture(scope="module")
def dn():
    return dual_numbers()


@pytest.fixture(scope="module")
def ex28():
    return ex28_algebra()


def simples(a):
    return {m.name: m for m in simple_modules(a)}


class TestBasics:
    def test_simples(self, a2):
        s = simple_modules(a2)
        assert [m.dim for m in s] == [1, 1]
        assert [m.name for m in s] == ["S(1)", "S(2)"]

    def test_projectives(self, a2):
        assert projective_module(a2, "1").dim == 2
        assert projective_module(a2, "2").dim == 1

    def test_injectives(self, a2):
        assert injective_module(a2, "1").dim == 1
        assert injective_module(a2, "2").dim == 2

    def test_regular_decomposes_into_projectives(self, a2):
        pieces = indecomposable_decomposition(regular_module(a2))
        assert sorted(m.dim for m, _ in pieces) == [1, 2]

    def test_matlis_left_decomposes_into_injectives(self, a2):
        pieces = indecomposable_decomposition(matlis_left_module(a2))
        assert sorted(m.dim for m, _ in pieces) == [1, 2]

    def test_invalid_morphism_rejected(self, a2):
        p1 = projective_module(a2, "1")
        s1 = simples(a2)["S(1)"]
        bad = np.array([[0, 1]])
        with pytest.raises(InputError):
            Morphism(p1, s1, bad)


class TestSubquotients:
    def test_kernel_of_identity(self, a2):
        s1 = simples(a2)["S(1)"]
        k, _ = subquotient(identity_morphism(s1), "kernel")
        assert k.dim == 0

    def test_cokernel_of_zero_map(self, a2):
        s1, s2 = simples(a2)["S(1)"], simples(a2)["S(2)"]
        c, proj = subquotient(zero_morphism(s1, s2), "cokernel")
        assert c.dim == s2.dim
        assert proj.is_isomorphism()

    def test_cokernel_of_socle_inclusion(self, a2):
        # quotient of the 2-dim indecomposable by its socle is S(1)
        p1 = projective_module(a2, "1")
        soc, incl = socle(p1)
        assert soc.dim == 1
        c, _ = cokernel(incl)
        assert c.dim == 1
        assert is_isomorphic(c, simples(a2)["S(1)"]) is not None

    def test_exactness_bookkeeping(self, a2):
        p1 = projective_module(a2, "1")
        s1 = simples(a2)["S(1)"]
        f = hom_space(p1, s1)[0]
        k, _ = kernel(f)
        i, _ = image(f)
        assert k.dim + i.dim == p1.dim


class TestSocleTopRad:
    def test_socle_p1(self, a2):
        p1 = projective_module(a2, "1")
        soc, _ = socle(p1)
        assert is_isomorphic(soc, simples(a2)["S(2)"]) is not None

    def test_top_p1(self, a2):
        p1 = projective_module(a2, "1")
        t, _ = top(p1)
        assert is_isomorphic(t, simples(a2)["S(1)"]) is not None

    def test_socle_of_semisimple(self, a2):
        s, _, _ = direct_sum([simples(a2)["S(1)"], simples(a2)["S(2)"]])
        soc, _ = socle(s)
        assert soc.dim == s.dim

    def test_rad_of_projective(self, a2):
        p1 = projective_module(a2, "1")
        r, _ = rad(p1)
        assert r.dim == 1


class TestHomSpaces:
    def test_schur(self, a2):
        for s in simple_modules(a2):
            assert len(hom_space(s, s)) == 1

    def test_hom_omega_s2_vanishes(self, a2):
        omega = matlis_dual_bimodule(a2)
        s2 = simples(a2)["S(2)"]
        assert hom_space(omega.as_left_module(), s2) == []

    def test_hom_p1_s1(self, a2):
        assert len(hom_space(projective_module(a2, "1"), simples(a2)["S(1)"])) == 1

    def test_adjunction_dimension(self, a2):
        # dim Hom(ω⊗N, M) = dim Hom(N, M_*) over the same ω
        omega = matlis_dual_bimodule(a2)
        for n in simple_modules(a2):
            ct = cotensor(omega, n)
            for m in simple_modules(a2):
                lhs = len(hom_space(ct.module, m))
                rhs = len(hom_space(n, star(omega, m).module))
                assert lhs == rhs


class TestEnvelopesCovers:
    def test_envelope_of_s2(self, a2):
        s2 = simples(a2)["S(2)"]
        env, mono = injective_envelope(s2)
        assert env.dim == 2
        assert mono.is_injective()

    def test_envelope_of_injective(self, a2):
        i1 = injective_module(a2, "1")
        env, mono = injective_envelope(i1)
        assert env.dim == i1.dim
        assert mono.is_isomorphism()

    def test_cover_of_s1(self, a2):
        s1 = simples(a2)["S(1)"]
        cov, epi = projective_cover(s1)
        assert cov.dim == 2
        assert epi.is_surjective()

    def test_dual_numbers_envelope_is_regular(self, dn):
        k = simple_modules(dn)[0]
        env, _ = injective_envelope(k)
        assert env.dim == 2
        assert is_isomorphic(env, regular_module(dn)) is not None


class TestIsIsomorphic:
    def test_identity_case(self, a2):
        m = projective_module(a2, "1")
        assert is_isomorphic(m, m) is not None

    def test_p1_vs_i2(self, a2):
        got = is_isomorphic(projective_module(a2, "1"), injective_module(a2, "2"))
        assert got is not None and got.is_isomorphism()

    def test_different_simples(self, a2):
        assert is_isomorphic(simples(a2)["S(1)"], simples(a2)["S(2)"]) is None


class TestSubmoduleEnumeration:
    def test_simple(self, a2):
        subs = submodules(simples(a2)["S(1)"])
        assert len(subs) == 2

    def test_p1_uniserial(self, a2):
        subs = submodules(projective_module(a2, "1"))
        assert [s.dim for s, _ in subs] == [0, 1, 2]
        mid = subs[1][0]
        assert is_isomorphic(mid, simples(a2)["S(2)"]) is not None

    def test_dual_numbers_regular(self, dn):
        subs = submodules(regular_module(dn))
        assert len(subs) == 3

    def test_quotients_of_p1(self, a2):
        qs = quotients(projective_module(a2, "1"))
        assert sorted(q.dim for q, _ in qs) == [0, 1, 2]


class TestAddOmega:
    def test_summand_in_add(self, a2):
        omega = matlis_dual_bimodule(a2).as_left_module()
        assert is_in_add(injective_module(a2, "1"), omega)
        assert is_in_add(projective_module(a2, "1"), omega)  # ≅ I(2)

    def test_s2_not_in_add(self, a2):
        omega = matlis_dual_bimodule(a2).as_left_module()
        assert not is_in_add(simples(a2)["S(2)"], omega)

    def test_add_of_regular_means_projective(self, a2):
        reg = regular_module(a2)
        assert is_in_add(simples(a2)["S(2)"], reg)       # S(2) = P(2)
        assert not is_in_add(simples(a2)["S(1)"], reg)

    def test_approximation_surjective_for_faithful(self, a2):
        omega = matlis_dual_bimodule(a2).as_left_module()
        _, eps = add_approximation(omega, projective_module(a2, "1"))
        assert eps.is_surjective()


class TestPullbackPushout:
    def test_pullback_over_zero_is_product(self, a2):
        m, n = simples(a2)["S(1)"], simples(a2)["S(2)"]
        z = zero_module(a2)
        pb, _, _ = pullback(zero_morphism(m, z), zero_morphism(n, z))
        assert pb.dim == m.dim + n.dim

    def test_pushout_from_zero_is_coproduct(self, a2):
        m, n = simples(a2)["S(1)"], simples(a2)["S(2)"]
        z = zero_module(a2)
        po, _, _ = pushout(zero_morphism(z, m), zero_morphism(z, n))
        assert po.dim == m.dim + n.dim

    def test_pullback_square_commutes(self, a2):
        p1 = projective_module(a2, "1")
        s1 = simples(a2)["S(1)"]
        f = hom_space(p1, s1)[0]
        g = hom_space(p1, s1)[0]
        pb, to_x, to_y = pullback(f, g)
        lhs = (f.matrix @ to_x.matrix) % 2
        rhs = (g.matrix @ to_y.matrix) % 2
        assert np.array_equal(lhs, rhs)
        assert pb.dim == 3  # kernel of (f,-g) on 4-dim sum


class TestStarCotensor:
    def test_star_of_omega_is_regular_s(self, a2):
        omega = matlis_dual_bimodule(a2)
        sd = star(omega, omega.as_left_module())
        assert sd.module.dim == 3
        assert is_isomorphic(sd.module, regular_module(a2)) is not None

    def test_star_kills_s2(self, a2):
        omega = matlis_dual_bimodule(a2)
        assert star(omega, simples(a2)["S(2)"]).module.dim == 0

    def test_star_of_identity_bimodule(self, a2):
        reg = regular_bimodule(a2)
        for m in simple_modules(a2):
            assert is_isomorphic(star(reg, m).module, m) is not None

    def test_cotensor_nakayama(self, a2):
        omega = matlis_dual_bimodule(a2)
        for v in ("1", "2"):
            ct = cotensor(omega, projective_module(a2, v))
            assert is_isomorphic(ct.module, injective_module(a2, v)) is not None

    def test_cotensor_kills_s1(self, a2):
        omega = matlis_dual_bimodule(a2)
        assert cotensor(omega, simples(a2)["S(1)"]).module.dim == 0

    def test_cotensor_identity_bimodule(self, a2):
        reg = regular_bimodule(a2)
        for m in simple_modules(a2):
            assert is_isomorphic(cotensor(reg, m).module, m) is not None


class TestThetaMu:
    def test_theta_iso_on_injectives(self, a2):
        omega = matlis_dual_bimodule(a2)
        for v in ("1", "2"):
            assert theta(omega, injective_module(a2, v)).is_isomorphism()

    def test_theta_s2_zero_source(self, a2):
        omega = matlis_dual_bimodule(a2)
        th = theta(omega, simples(a2)["S(2)"])
        assert th.source.dim == 0
        assert not th.is_surjective()

    def test_theta_identity_bimodule(self, a2):
        reg = regular_bimodule(a2)
        for m in simple_modules(a2):
            assert theta(reg, m).is_isomorphism()

    def test_mu_iso_on_projectives(self, a2):
        omega = matlis_dual_bimodule(a2)
        for v in ("1", "2"):
            assert mu(omega, projective_module(a2, v)).is_isomorphism()

    def test_mu_s1_zero_target(self, a2):
        omega = matlis_dual_bimodule(a2)
        muf = mu(omega, simples(a2)["S(1)"])
        assert muf.target.dim == 0
        k, _ = kernel(muf)
        assert k.dim == 1

    def test_mu_identity_bimodule(self, dn):
        reg = regular_bimodule(dn)
        assert mu(reg, regular_module(dn)).is_isomorphism()


def lemma_6_1_identities(omega, m, n):
    """(θ_X)_* ∘ μ_{X_*} = 1 and θ_{ω⊗Y} ∘ (1_ω ⊗ μ_Y) = 1."""
    fld = omega.field
    # first identity on X = m
    sd = star(omega, m)
    cd = cotensor(omega, sd.module)
    th = theta(omega, m, star_data=sd, ct_data=cd)
    sd_ct = star(omega, cd.module)
    th_star = star_morphism(omega, th, sd_ct, sd)
    mu_star = mu(omega, sd.module, ct_data=cd, star_data=sd_ct)
    comp1 = (th_star.matrix @ mu_star.matrix) % fld.p
    assert np.array_equal(comp1, np.eye(sd.module.dim, dtype=np.int64))
    # second identity on Y = n
    cd_n = cotensor(omega, n)
    sd_n = star(omega, cd_n.module)
    mu_n = mu(omega, n, ct_data=cd_n, star_data=sd_n)
    cd_sd = cotensor(omega, sd_n.module)
    one_mu = cotensor_morphism(omega, mu_n, cd_n, cd_sd)
    th_ct = theta(omega, cd_n.module, star_data=sd_n, ct_data=cd_sd)
    comp2 = (th_ct.matrix @ one_mu.matrix) % fld.p
    assert np.array_equal(comp2, np.eye(cd_n.module.dim, dtype=np.int64))


class TestLemma61:
    def test_a2_simples(self, a2):
        omega = matlis_dual_bimodule(a2)
        for m in simple_modules(a2):
            lemma_6_1_identities(omega, m, m)

    def test_a2_projectives_and_injectives(self, a2):
        omega = matlis_dual_bimodule(a2)
        lemma_6_1_identities(omega, projective_module(a2, "1"), projective_module(a2, "2"))
        lemma_6_1_identities(omega, injective_module(a2, "2"), injective_module(a2, "1"))

    def test_dual_numbers(self, dn):
        omega = matlis_dual_bimodule(dn)
        lemma_6_1_identities(omega, simple_modules(dn)[0], regular_module(dn))


class TestEndomorphismAlgebras:
    def test_end_of_omega_a2(self, a2):
        omega_left = matlis_left_module(a2)
        alg, mats = endomorphism_algebra(omega_left)
        assert alg.dim == 3

    def test_end_of_direct_sum(self, a2):
        i1, i2 = injective_module(a2, "1"), injective_module(a2, "2")
        alg, total, mats = endomorphism_algebra_of_direct_sum([i1, i2])
        assert alg.dim == 3
        assert alg.summand_data is not None
        assert len(alg.summand_data.idempotent_vectors) == 2
        sims = simple_modules(alg)
        assert len(sims) == 2

    def test_ex28_omega_summands(self, ex28):
        # ω = I(1) ⊕ I(2) ⊕ S(3) ⊕ P(4) ⊕ I(4)
        s3 = simple_modules(ex28)[2]
        parts = [
            injective_module(ex28, "1"),
            injective_module(ex28, "2"),
            s3,
            projective_module(ex28, "4"),
            injective_module(ex28, "4"),
        ]
        assert [m.dim for m in parts] == [2, 3, 1, 3, 2]
        alg, total, _ = endomorphism_algebra_of_direct_sum(parts)
        assert total.dim == 11
        assert len(simple_modules(alg)) == 5


class TestRepresentationIO:
    def test_round_trip(self, a2):
        m = from_representation(a2, {"1": 1, "2": 2}, {"a": np.array([[1], [0]])})
        vdims, arrows = to_representation(m)
        assert vdims == {"1": 1, "2": 2}
        m2 = from_representation(a2, vdims, arrows)
        assert is_isomorphic(m, m2) is not None

    def test_relation_violation_rejected(self, dn):
        with pytest.raises(InputError):
            from_representation(dn, {"1": 1}, {"x": np.array([[1]])})

    def test_dual_module(self, a2):
        d = dual_module(projective_module(a2, "1"))
        assert d.algebra is a2.opposite()
        assert d.dim == 2
