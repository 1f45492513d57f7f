#include "framelet/examples.hpp"

#include "doctest.h"
#include "fixtures.hpp"
#include "framelet/analysis.hpp"

using namespace framelet;
using testfix::kOrd;

namespace {

Rational frac(long num, long den) { return Rational(num) / Rational(den); }

CycNum rat(long num, long den) { return CycNum::from_rational(kOrd, frac(num, den)); }

CycNum rt2(long num, long den) {
    CycNum c = CycNum::sqrt_of_int(kOrd, Integer(2));
    c *= frac(num, den);
    return c;
}

CycNum rt2i(long num, long den) { return rt2(num, den) * CycNum::imag_unit(kOrd); }

CycNum im(long num, long den) {
    CycNum c = CycNum::imag_unit(kOrd);
    c *= frac(num, den);
    return c;
}

}  // namespace

TEST_CASE("quincunx fixture anchor values") {
    FrameletSystem sys = quincunx_r2_system();
    REQUIRE(sys.theta.has_value());
    REQUIRE(sys.theta_tilde.has_value());
    const LaurentMatrix& th = *sys.theta;

    CHECK(th.at(0, 0).eval_zero() == rt2(-53, 68));
    CHECK(th.at(0, 1).eval_zero() == rt2(1, 17));
    CHECK(th.at(1, 0).eval_zero() == rt2(-15, 68));
    CHECK(th.at(1, 1).eval_zero() == rt2(-18, 17));
    CHECK(laurent_det(th).eval_zero() == rat(57, 34));

    CHECK(sys.a.at(0, 0).eval_zero() == rat(1, 2));
    CHECK(sys.a_tilde.at(1, 1).eval_zero() == rat(1, 2));
    CHECK(sys.a.at(1, 1).is_zero());
}

TEST_CASE("quincunx masks have order two sum rules with the stated jets") {
    FrameletSystem sys = quincunx_r2_system();

    SumRuleCertificate ca = sum_rule_order(sys.a, sys.dil);
    SumRuleCertificate cat = sum_rule_order(sys.a_tilde, sys.dil);
    CHECK(ca.order == 2);
    CHECK(cat.order == 2);

    REQUIRE(sys.upsilon.has_value());
    REQUIRE(sys.upsilon_tilde.has_value());
    CHECK(check_sum_rules(sys.a, sys.dil, *sys.upsilon, 2));
    CHECK(check_sum_rules(sys.a_tilde, sys.dil, *sys.upsilon_tilde, 2));
    CHECK_FALSE(check_sum_rules(sys.a, sys.dil, *sys.upsilon_tilde, 2));
}

TEST_CASE("quincunx refinable jets reproduce the tabulated derivatives") {
    FrameletSystem sys = quincunx_r2_system();

    Jet phi = refinable_jet(sys.a, sys.dil, *sys.upsilon, 4).jet;
    CHECK(phi.deriv({0, 0}, 0, 0) == rat(2, 3));
    CHECK(phi.deriv({1, 0}, 0, 0).is_zero());
    CHECK(phi.deriv({0, 1}, 0, 0).is_zero());
    CHECK(phi.deriv({2, 0}, 0, 0) == rat(-1, 15));
    CHECK(phi.deriv({0, 2}, 0, 0) == rat(-1, 15));
    CHECK(phi.deriv({1, 1}, 0, 0).is_zero());
    CHECK(phi.deriv({3, 0}, 0, 0).is_zero());
    CHECK(phi.deriv({2, 1}, 0, 0).is_zero());
    CHECK(phi.deriv({1, 2}, 0, 0).is_zero());
    CHECK(phi.deriv({0, 3}, 0, 0).is_zero());
    CHECK(phi.deriv({0, 0}, 1, 0) == rat(1, 3));
    CHECK(phi.deriv({1, 0}, 1, 0) == im(-1, 6));
    CHECK(phi.deriv({0, 1}, 1, 0) == im(-1, 6));
    CHECK(phi.deriv({2, 0}, 1, 0) == rat(-1, 10));
    CHECK(phi.deriv({0, 2}, 1, 0) == rat(-1, 10));
    CHECK(phi.deriv({1, 1}, 1, 0) == rat(-1, 12));
    CHECK(phi.deriv({3, 0}, 1, 0) == im(1, 15));
    CHECK(phi.deriv({0, 3}, 1, 0) == im(1, 15));
    CHECK(phi.deriv({2, 1}, 1, 0) == im(1, 20));
    CHECK(phi.deriv({1, 2}, 1, 0) == im(1, 20));

    Jet phit = refinable_jet(sys.a_tilde, sys.dil, *sys.upsilon_tilde, 4).jet;
    CHECK(phit.deriv({0, 0}, 0, 0) == rat(1, 2));
    CHECK(phit.deriv({1, 0}, 0, 0).is_zero());
    CHECK(phit.deriv({0, 1}, 0, 0).is_zero());
    CHECK(phit.deriv({2, 0}, 0, 0) == rat(-1, 12));
    CHECK(phit.deriv({1, 1}, 0, 0) == rat(-1, 96));
    CHECK(phit.deriv({0, 2}, 0, 0) == rat(-1, 24));
    CHECK(phit.deriv({3, 0}, 0, 0).is_zero());
    CHECK(phit.deriv({2, 1}, 0, 0).is_zero());
    CHECK(phit.deriv({1, 2}, 0, 0).is_zero());
    CHECK(phit.deriv({0, 3}, 0, 0).is_zero());
    CHECK(phit.deriv({0, 0}, 1, 0) == rat(1, 2));
    CHECK(phit.deriv({1, 0}, 1, 0) == im(1, 4));
    CHECK(phit.deriv({0, 1}, 1, 0) == im(1, 4));
    CHECK(phit.deriv({2, 0}, 1, 0) == rat(-5, 24));
    CHECK(phit.deriv({1, 1}, 1, 0) == rat(-13, 96));
    CHECK(phit.deriv({0, 2}, 1, 0) == rat(-1, 6));
    CHECK(phit.deriv({3, 0}, 1, 0) == im(-3, 16));
    CHECK(phit.deriv({2, 1}, 1, 0) == im(-11, 96));
    CHECK(phit.deriv({1, 2}, 1, 0) == im(-3, 32));
    CHECK(phit.deriv({0, 3}, 1, 0) == im(-1, 8));
}

TEST_CASE("quincunx moment correction pair verifies exactly") {
    FrameletSystem sys = quincunx_r2_system();

    StrongInvertibility si = strong_invertibility(*sys.theta);
    StrongInvertibility sit = strong_invertibility(*sys.theta_tilde);
    REQUIRE(si.verdict);
    REQUIRE(sit.verdict);

    McfReport rep = verify_mcf(sys);
    for (const McfCheck& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
    REQUIRE(rep.pass);
    CHECK(rep.m == 2);
    CHECK(rep.m_tilde == 2);
    CHECK(rep.big_c == CycNum::from_int(kOrd, 1));
    CHECK(rep.big_c_tilde == CycNum::from_int(kOrd, 1));

    CHECK(rep.c_jet.deriv({0, 0}, 0, 0) == rt2(-1, 2));
    CHECK(rep.c_jet.deriv({1, 0}, 0, 0) == rt2i(-143, 8));
    CHECK(rep.c_jet.deriv({0, 1}, 0, 0) == rt2i(1, 24));
    CHECK(rep.d_jet == rep.c_jet);
}

TEST_CASE("named example systems pass shape validation") {
    haar_uep_system().validate_shapes();
    stacked_haar_system().validate_shapes();
    quincunx_r2_system().validate_shapes();
    CHECK(haar_uep_system().multiplicity() == 1);
    CHECK(stacked_haar_system().multiplicity() == 2);
    CHECK(quincunx_r2_system().multiplicity() == 2);
    CHECK(quincunx_r2_system().dim() == 2);
}
