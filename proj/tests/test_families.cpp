#include "casoratia/families.hpp"

#include "doctest.h"

using namespace casoratia;

TEST_CASE("registry") {
    CHECK(all_families().size() == 11);
    CHECK(family("AW").n_params == 4);
    CHECK(family("W").kind == Kind::Additive);
    CHECK(family("cqH").group_b);
    CHECK_FALSE(family("AW").group_b);
    CHECK(family(FamilyName::cqJ).id == "cqJ");
    CHECK_THROWS_AS(family("nope"), UnknownFamily);
    int additive = 0;
    for (FamilyName f : all_families())
        if (family(f).kind == Kind::Additive) ++additive;
    CHECK(additive == 4);
}

TEST_CASE("sampling is deterministic and kind-consistent") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint a = sample_params(spec, 42);
        ParamPoint b = sample_params(spec, 42);
        CHECK(a.lam == b.lam);
        CHECK(a.eiphi == b.eiphi);
        CHECK(a.qbase.has_value() == (spec.kind == Kind::Multiplicative));
        if (a.qbase) CHECK(a.qbase->s() == b.qbase->s());
        CHECK(static_cast<int>(a.lam.size()) == spec.n_params);
    }
}

TEST_CASE("eigenpolynomials have eta-degree n") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 7);
        for (long n = 0; n <= 3; ++n) {
            EtaPoly e = to_eta_basis(eigen_poly(spec, n, p), spec.eta);
            CHECK(e.degree() == n);
        }
        CHECK_THROWS_AS(eigen_poly(spec, kDegreeCap + 1, p), CapExceeded);
        CHECK_THROWS_AS(eigen_poly(spec, -1, p), CapExceeded);
    }
}

TEST_CASE("energy factorizes through the shift factors") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 11);
        CHECK(energy(spec, 0, p) == GQ(0));
        for (long n = 1; n <= 4; ++n)
            CHECK(energy(spec, n, p) == fn_factor(spec, n, p) * bn_factor(spec, n, p));
    }
}

TEST_CASE("twist is involutive") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 5);
        ParamPoint tt = twist_params(spec, twist_params(spec, p));
        CHECK(tt.lam == p.lam);
        if (p.qbase) CHECK(tt.qb().s() == p.qb().s());
        if (spec.group_b)
            CHECK(twist_params(spec, p).qb().s() == Rat(1) / p.qb().s());
    }
}

TEST_CASE("twist constant alpha' is E_{-1}") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 13);
        CHECK(twist_constants(spec, p).second == energy(spec, -1, p));
    }
}

TEST_CASE("parameter shifts compose") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 3);
        ParamPoint back = shift_params(spec, shift_params(spec, p, 2), -2);
        CHECK(back.lam == p.lam);
        ParamPoint two = shift_params(spec, shift_params(spec, p, 1), 1);
        CHECK(two.lam == shift_params(spec, p, 2).lam);
    }
}

TEST_CASE("kappa and phi") {
    ParamPoint pw = sample_params(family("W"), 1);
    CHECK(kappa(family("W"), pw) == Rat(1));
    CHECK(phi_poly(family("W")) ==
          RingPoly::variable(Kind::Additive).scaled(GQ(2)));
    ParamPoint pa = sample_params(family("AW"), 1);
    CHECK(kappa(family("AW"), pa) == Rat(1) / pa.qb().q());
    // phi = 2 sin x = -i(z - 1/z).
    RingPoly z = RingPoly::variable(Kind::Multiplicative);
    RingPoly zinv = RingPoly::monomial(Kind::Multiplicative, -1, GQ(1));
    CHECK(phi_poly(family("AW")) == (z - zinv).scaled(-GQ::i()));
}

TEST_CASE("potential is a nontrivial rational function") {
    for (FamilyName f : all_families()) {
        const FamilySpec& spec = family(f);
        ParamPoint p = sample_params(spec, 17);
        CHECK_FALSE(potential(spec, p).is_zero());
        CHECK_FALSE(potential(spec, p, true).is_zero());
    }
}
