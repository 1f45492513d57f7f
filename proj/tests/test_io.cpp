#include <string>

#include "doctest.h"

#include "framelet/errors.hpp"
#include "framelet/examples.hpp"
#include "framelet/io.hpp"

#include "fixtures.hpp"

using namespace framelet;
using testfix::kOrd;

namespace {

// FNV-1a, 64 bit.
unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool systems_match(const FrameletSystem& x, const FrameletSystem& y) {
    if (x.cyc_order != y.cyc_order) return false;
    if (x.dil.m != y.dil.m || x.vec.n != y.vec.n) return false;
    if (x.a != y.a || x.a_tilde != y.a_tilde) return false;
    auto opt_eq = [](const std::optional<LaurentMatrix>& p,
                     const std::optional<LaurentMatrix>& q) {
        if (p.has_value() != q.has_value()) return false;
        return !p || *p == *q;
    };
    if (!opt_eq(x.theta, y.theta) || !opt_eq(x.theta_tilde, y.theta_tilde)) return false;
    if (!opt_eq(x.b, y.b) || !opt_eq(x.b_tilde, y.b_tilde)) return false;
    if (!opt_eq(x.big_theta, y.big_theta)) return false;
    auto jet_eq = [](const std::optional<Jet>& p, const std::optional<Jet>& q) {
        if (p.has_value() != q.has_value()) return false;
        return !p || *p == *q;
    };
    return jet_eq(x.upsilon, y.upsilon) && jet_eq(x.upsilon_tilde, y.upsilon_tilde);
}

}  // namespace

TEST_CASE("system files round-trip through the canonical form") {
    for (const FrameletSystem& sys :
         {haar_uep_system(), stacked_haar_system(), quincunx_r2_system()}) {
        std::string text = print_system(sys);
        FrameletSystem back = parse_system(text);
        CHECK(systems_match(sys, back));
        CHECK(print_system(back) == text);
    }
}

TEST_CASE("quincunx fixture canonical form is pinned") {
    // Checksum of the canonical serialization of the worked fixture; any
    // silent drift in its coefficient tables shows up here first.
    std::string text = print_system(quincunx_r2_system());
    CHECK(fnv1a(text) == 253636869404786909ULL);
}

TEST_CASE("signals round-trip with scale tags") {
    LaurentMatrix m(1, 2, 2, kOrd);
    m.at(0, 0).set_coeff({0, 0}, CycNum::from_rational(kOrd, Rational(1) / Rational(2)));
    m.at(0, 0).set_coeff({1, 1}, CycNum::from_rational(kOrd, Rational(-3) / Rational(4)));
    m.at(0, 1).set_coeff({-2, 5}, CycNum::zeta_pow(kOrd, 3) * Rational(7));
    Signal sig(m, -3);
    std::string text = print_signal(sig);
    Signal back = parse_signal(text, kOrd, 2);
    CHECK(back.data == sig.data);
    CHECK(back.scale_pow == sig.scale_pow);
    CHECK(print_signal(back) == text);
}

TEST_CASE("parse errors name the offending field") {
    std::string text = print_system(haar_uep_system());

    SUBCASE("zero denominator") {
        std::string bad = text;
        bad.replace(bad.find("\"1/2\""), 5, "\"1/0\"");
        CHECK_THROWS_WITH_AS(parse_system(bad),
                             doctest::Contains("filters.a.terms[0].value[0]"), ParseError);
    }
    SUBCASE("malformed value string") {
        std::string bad = text;
        bad.replace(bad.find("\"1/2\""), 5, "\"x\"");
        CHECK_THROWS_AS(parse_system(bad), ParseError);
    }
    SUBCASE("missing required filter") {
        std::string bad = text;
        bad.replace(bad.find("\"a_tilde\""), 9, "\"a_other\"");
        CHECK_THROWS_WITH_AS(parse_system(bad), doctest::Contains("a_tilde"), ParseError);
    }
    SUBCASE("syntax errors report line and column") {
        std::string bad = text.substr(0, text.size() / 2);
        CHECK_THROWS_WITH_AS(parse_system(bad), doctest::Contains("line"), ParseError);
    }
    SUBCASE("singular dilation") {
        FrameletSystem sys = haar_uep_system();
        std::string bad = print_system(sys);
        size_t at = bad.find("\"dilation\": [");
        bad.replace(bad.find('2', at), 1, "1");
        CHECK_THROWS_WITH_AS(parse_system(bad), doctest::Contains("dilation"), ParseError);
    }
}
