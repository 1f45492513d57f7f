#include <doctest.h>

#include <random>

#include "framelet/jet.hpp"

using namespace framelet;

namespace {

constexpr unsigned kOrd = 8;

LaurentPoly random_poly(std::mt19937_64& rng, int dim, int terms) {
    std::uniform_int_distribution<int> pos(-2, 2);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> lane(0, 3);
    LaurentPoly p(dim, kOrd);
    for (int t = 0; t < terms; ++t) {
        MIdx k(dim);
        for (int j = 0; j < dim; ++j) k[j] = pos(rng);
        p.set_coeff(k, p.coeff(k) + CycNum::zeta_pow(kOrd, lane(rng)) *
                                        Rational(num(rng), den(rng)));
    }
    return p;
}

Jet random_jet(std::mt19937_64& rng, int dim, long rows, long cols, int order) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> lane(0, 3);
    Jet j(dim, rows, cols, order, kOrd, std::vector<Rational>(dim, Rational(0)));
    for (const auto& mu : j.index_set())
        for (long r = 0; r < rows; ++r)
            for (long c = 0; c < cols; ++c)
                j.deriv(mu, r, c) = CycNum::zeta_pow(kOrd, lane(rng)) *
                                    Rational(num(rng), den(rng));
    return j;
}

std::vector<Rational> random_tau(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::vector<Rational> tau(dim);
    for (int j = 0; j < dim; ++j) {
        tau[j] = Rational(num(rng), 8);
        tau[j].canonicalize();
    }
    return tau;
}

}  // namespace

TEST_CASE("jet of a monomial matches the closed form") {
    // u = c z^k has u_hat(xi) = c e^{-i k.xi}, so d^mu u_hat(0) = c (-i)^{|mu|} k^mu.
    MIdx k{2, -1};
    CycNum c = CycNum::from_rational(kOrd, Rational(3, 2));
    LaurentPoly u = LaurentPoly::monomial(2, kOrd, k, c);
    Jet j = jet_at(u, {Rational(0), Rational(0)}, 3);
    CycNum mi = -CycNum::imag_unit(kOrd);
    CHECK(j.deriv({0, 0}, 0, 0) == c);
    CHECK(j.deriv({1, 0}, 0, 0) == c * mi * Rational(2));
    CHECK(j.deriv({0, 1}, 0, 0) == c * mi * Rational(-1));
    CHECK(j.deriv({1, 1}, 0, 0) == c * mi * mi * Rational(-2));
    CHECK(j.deriv({2, 0}, 0, 0) == c * mi * mi * Rational(4));
}

TEST_CASE("jets are multiplicative") {
    std::mt19937_64 rng(0x6a657431);
    for (int iter = 0; iter < 220; ++iter) {
        int dim = 1 + static_cast<int>(rng() % 2);
        int order = 1 + static_cast<int>(rng() % 4);
        auto tau = random_tau(rng, dim);
        LaurentPoly a = random_poly(rng, dim, 4);
        LaurentPoly b = random_poly(rng, dim, 4);
        CHECK(jet_at(a * b, tau, order) == jet_at(a, tau, order) * jet_at(b, tau, order));
        CHECK(jet_at(a + b, tau, order) == jet_at(a, tau, order) + jet_at(b, tau, order));
    }
}

TEST_CASE("jets respect the adjoint") {
    std::mt19937_64 rng(0x6a657432);
    for (int iter = 0; iter < 100; ++iter) {
        LaurentMatrix u(2, 3, 2, kOrd);
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 3; ++j) u.at(i, j) = random_poly(rng, 2, 3);
        auto tau = random_tau(rng, 2);
        CHECK(jet_at(u.star(), tau, 3) == jet_at(u, tau, 3).adjoint());
    }
}

TEST_CASE("jet reciprocal inverts the Leibniz product") {
    std::mt19937_64 rng(0x6a657433);
    for (int iter = 0; iter < 100; ++iter) {
        LaurentPoly a = random_poly(rng, 2, 4);
        a.set_coeff({0, 0}, a.coeff({0, 0}) + CycNum::from_int(kOrd, 7));
        Jet j = jet_at(a, {Rational(0), Rational(0)}, 4);
        if (j.deriv({0, 0}, 0, 0).is_zero()) continue;
        Jet one = j * j.reciprocal();
        CHECK(one.deriv({0, 0}, 0, 0) == CycNum::from_int(kOrd, 1));
        Jet unit(2, 1, 1, 4, kOrd, {Rational(0), Rational(0)});
        unit.deriv({0, 0}, 0, 0) = CycNum::from_int(kOrd, 1);
        CHECK(one == unit);
    }
}

TEST_CASE("compose_linear matches dilation of polynomials") {
    std::mt19937_64 rng(0x6a657434);
    IntMat quincunx{{1, 1}, {1, -1}};
    std::vector<Rational> zero{Rational(0), Rational(0)};
    for (int iter = 0; iter < 100; ++iter) {
        LaurentPoly a = random_poly(rng, 2, 4);
        Jet lhs = jet_at(a.dilated(quincunx), zero, 4);
        Jet rhs = jet_at(a, zero, 4).compose_linear(transpose(quincunx));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("fractional exponential jets extend monomial jets") {
    FracExpRow row;
    row.cyc_order = kOrd;
    row.tau = {{Rational(-2), Rational(1)}};
    row.coeff = {CycNum::from_int(kOrd, 1)};
    // e^{i tau.xi} with integer tau = -k equals the monomial z^k.
    LaurentPoly mono = LaurentPoly::monomial(2, kOrd, {2, -1}, CycNum::from_int(kOrd, 1));
    Jet a = jet_of(row, 4);
    Jet b = jet_at(mono, {Rational(0), Rational(0)}, 4);
    CHECK(a == b);

    FracExpRow half;
    half.cyc_order = kOrd;
    half.tau = {{Rational(1, 2), Rational(1, 2)}};
    half.coeff = {CycNum::from_int(kOrd, 1)};
    Jet h = jet_of(half, 3);
    CHECK(h.deriv({0, 0}, 0, 0) == CycNum::from_int(kOrd, 1));
    CHECK(h.deriv({1, 0}, 0, 0) == CycNum::imag_unit(kOrd) * Rational(1, 2));
    CHECK(h.deriv({2, 0}, 0, 0) == -CycNum::from_rational(kOrd, Rational(1, 4)));
}

TEST_CASE("jet_to_trigpoly reproduces the jet it interpolates") {
    std::mt19937_64 rng(0x6a657435);
    for (int iter = 0; iter < 60; ++iter) {
        int dim = 1 + static_cast<int>(rng() % 2);
        int order = 1 + static_cast<int>(rng() % 3);
        long rows = 1 + static_cast<long>(rng() % 2);
        Jet j = random_jet(rng, dim, rows, 1, order);
        LaurentMatrix p = jet_to_trigpoly(j);
        CHECK(jet_at(p, std::vector<Rational>(dim, Rational(0)), order) == j);
        auto box = p.at(0, 0).support_box();
        for (int ax = 0; ax < dim; ++ax) {
            CHECK(box.first[ax] >= 0);
            CHECK(box.second[ax] <= order - 1);
        }
    }
}

TEST_CASE("vanishing order detects the first nonzero level") {
    Jet j(2, 1, 1, 4, kOrd, {Rational(0), Rational(0)});
    CHECK(j.vanishing_order() == 4);
    j.deriv({1, 1}, 0, 0) = CycNum::from_int(kOrd, 1);
    CHECK(j.vanishing_order() == 2);
    j.deriv({0, 1}, 0, 0) = CycNum::from_int(kOrd, 1);
    CHECK(j.vanishing_order() == 1);
}

TEST_CASE("jet truncation and blocks") {
    std::mt19937_64 rng(0x6a657436);
    Jet j = random_jet(rng, 2, 2, 2, 3);
    Jet t = j.truncated(2);
    CHECK(t.order() == 2);
    CHECK(t.deriv({1, 0}, 1, 1) == j.deriv({1, 0}, 1, 1));
    Jet b = j.block(0, 1, 2, 1);
    CHECK(b.deriv({0, 1}, 1, 0) == j.deriv({0, 1}, 1, 1));
    Jet sum = j + (-j);
    CHECK(sum.is_zero());
}
