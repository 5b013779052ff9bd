#include "casoratia/poly.hpp"

#include "doctest.h"

using namespace casoratia;

namespace {
const QBase kQ(Rat(1, 2));

RingPoly ax() { return RingPoly::variable(Kind::Additive); }
RingPoly az() { return RingPoly::variable(Kind::Multiplicative); }
RingPoly ac(long n) { return RingPoly::constant(Kind::Additive, GQ(n)); }
// z^d including negative Laurent degrees.
RingPoly zm(long d) { return RingPoly::monomial(Kind::Multiplicative, d, GQ(1)); }
}  // namespace

TEST_CASE("RingPoly basics") {
    RingPoly p = ax() * ax() + ax().scaled(GQ(3)) - ac(2);
    CHECK(p.hi_deg() == 2);
    CHECK(p.lo_deg() == 0);
    CHECK(p.coeff(2) == GQ(1));
    CHECK(p.coeff(1) == GQ(3));
    CHECK(p.coeff(0) == GQ(-2));
    CHECK(p.leading() == GQ(1));
    CHECK((p - p).is_zero());
    CHECK(p.pow(2) == p * p);
    CHECK(p.pow(0) == ac(1));
    CHECK(-p == p.scaled(GQ(-1)));
    CHECK(RingPoly::zero(Kind::Additive).is_constant());
}

TEST_CASE("Laurent range") {
    RingPoly p = zm(2) + RingPoly::monomial(Kind::Multiplicative, -3, GQ(5));
    CHECK(p.lo_deg() == -3);
    CHECK(p.hi_deg() == 2);
    CHECK(p.coeff(-3) == GQ(5));
    CHECK(p.coeff(0) == GQ(0));
}

TEST_CASE("additive shift is x -> x + ic") {
    // twice_c = 2 means c = 1: x -> x + i.
    CHECK(ax().shifted(2) == ax() + RingPoly::constant(Kind::Additive, GQ::i()));
    RingPoly p = ax() * ax();
    CHECK(p.shifted(1).shifted(-1) == p);
    // (x + i/2)(x - i/2) = x^2 + 1/4.
    CHECK(p.shifted(1) * RingPoly::zero(Kind::Additive) == RingPoly::zero(Kind::Additive));
    CHECK(ax().shifted(1) * ax().shifted(-1) ==
          p + RingPoly::constant(Kind::Additive, GQ(1, 4)));
}

TEST_CASE("multiplicative shift is z -> q^{-c} z") {
    CHECK_THROWS_AS(az().shifted(2), MissingQBase);
    CHECK(az().shifted(2, &kQ) == az().scaled(GQ(kQ.qpow4(-4))));
    CHECK(zm(-1).shifted(2, &kQ) == zm(-1).scaled(GQ(kQ.q())));
    RingPoly p = zm(3) + zm(-2).scaled(GQ(Rat(1, 3)));
    CHECK(p.shifted(3, &kQ).shifted(-3, &kQ) == p);
}

TEST_CASE("star conjugation") {
    RingPoly p = ax().scaled(GQ::i()) + ac(3);
    CHECK(p.star() == ax().scaled(-GQ::i()) + ac(3));
    CHECK(p.star().star() == p);
    RingPoly m = zm(2).scaled(GQ(Rat(1), Rat(2))) + zm(-1);
    CHECK(m.star() == zm(-2).scaled(GQ(Rat(1), Rat(-2))) + az());
    RingPoly q = az() - zm(-1);
    CHECK((m * q).star() == m.star() * q.star());
}

TEST_CASE("exact division") {
    RingPoly p = (ax() + ac(1)) * (ax() - ac(2));
    CHECK(exact_div(p, ax() + ac(1)) == ax() - ac(2));
    CHECK_THROWS_AS(exact_div(p + ac(1), ax() + ac(1)), NotDivisible);
    RingPoly u = az() - zm(-1);
    RingPoly v = zm(2) + az().scaled(GQ(5));
    CHECK(exact_div(u * v, u) == v);
}

TEST_CASE("poly gcd") {
    RingPoly a = (ax() + ac(1)).pow(2) * (ax() - ac(3));
    RingPoly b = (ax() + ac(1)) * (ax() + ac(5));
    RingPoly g = poly_gcd(a, b);
    CHECK(g == ax() + ac(1));
    CHECK(poly_gcd(RingPoly::zero(Kind::Additive), b) == b.scaled(b.leading().inv()));
}

TEST_CASE("eta basis x^2") {
    RingPoly p = ax().pow(4) + ax().pow(2).scaled(GQ(2)) + ac(7);
    EtaPoly e = to_eta_basis(p, EtaKind::XSquared);
    CHECK(e.degree() == 2);
    CHECK(e.coeff(0) == GQ(7));
    CHECK(e.coeff(1) == GQ(2));
    CHECK(e.coeff(2) == GQ(1));
    CHECK(eta_embed(e, Kind::Additive, EtaKind::XSquared) == p);
    CHECK_THROWS_AS(to_eta_basis(ax(), EtaKind::XSquared), NotInEtaImage);
}

TEST_CASE("eta basis cos x") {
    // z + 1/z = 2 eta.
    RingPoly p = az() + zm(-1);
    EtaPoly e = to_eta_basis(p, EtaKind::CosX);
    CHECK(e.degree() == 1);
    CHECK(e.coeff(1) == GQ(2));
    CHECK(eta_embed(e, Kind::Multiplicative, EtaKind::CosX) == p);
    CHECK_THROWS_AS(to_eta_basis(az(), EtaKind::CosX), NotInEtaImage);
}

TEST_CASE("proportionality") {
    RingPoly p = ax().pow(2) + ac(1);
    Proportionality pr = proportional(p.scaled(GQ(Rat(3, 7))), p);
    CHECK(pr.verdict);
    REQUIRE(pr.ratio.has_value());
    CHECK(*pr.ratio == GQ(3, 7));
    CHECK_FALSE(proportional(p, p + ax()).verdict);
    Proportionality z = proportional(RingPoly::zero(Kind::Additive),
                                     RingPoly::zero(Kind::Additive));
    CHECK(z.verdict);
    CHECK_FALSE(z.ratio.has_value());
    CHECK_FALSE(proportional(p, RingPoly::zero(Kind::Additive)).verdict);
}

TEST_CASE("RatFunc normalization and equality") {
    RingPoly n = (ax() + ac(1)) * (ax() - ac(2));
    RingPoly d = (ax() + ac(1)).scaled(GQ(4));
    RatFunc f(n, d);
    CHECK(f.is_polynomial());
    CHECK(f == RatFunc((ax() - ac(2)).scaled(GQ(1, 4))));
    RatFunc g(ac(1), ax());
    CHECK(f + g - g == f);
    CHECK(f * g / g == f);
    CHECK(g.shifted(2).star() ==
          RatFunc(ac(1), ax() - RingPoly::constant(Kind::Additive, GQ::i())));
    CHECK(g.scaled(GQ(2)) == RatFunc(ac(2), ax()));
    CHECK_FALSE(f == g);
}
