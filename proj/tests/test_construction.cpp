#include <doctest.h>

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "framelet/construction.hpp"
#include "framelet/errors.hpp"
#include "framelet/transform.hpp"
#include "fixtures.hpp"

using namespace framelet;
using testfix::kOrd;
using testfix::poly1;

namespace {

std::vector<Rational> pt(std::initializer_list<Rational> qs) {
    return std::vector<Rational>(qs);
}

std::vector<Rational> zero_pt(int d) { return std::vector<Rational>(d, Rational(0)); }

LaurentPoly random_poly(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<int> pos(-2, 2);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    LaurentPoly p(dim, kOrd);
    for (int t = 0; t < 4; ++t) {
        MIdx k(static_cast<size_t>(dim));
        for (int ax = 0; ax < dim; ++ax) k[static_cast<size_t>(ax)] = pos(rng);
        p.set_coeff(k, CycNum::from_rational(kOrd, Rational(num(rng), den(rng))));
    }
    return p;
}

CycNum random_cyc(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    CycNum v = CycNum::from_rational(kOrd, Rational(num(rng), den(rng)));
    v += CycNum::imag_unit(kOrd) * CycNum::from_rational(kOrd, Rational(num(rng), den(rng)));
    return v;
}

Jet random_jet(std::mt19937_64& rng, int dim, long rows, long cols, int order) {
    Jet j(dim, rows, cols, order, kOrd, std::vector<Rational>(dim, Rational(0)));
    for (const MIdx& mu : j.index_set())
        for (long i = 0; i < rows; ++i)
            for (long k = 0; k < cols; ++k) j.deriv(mu, i, k) = random_cyc(rng);
    return j;
}

LaurentPoly resum_vanishing(const std::map<MIdx, LaurentPoly>& parts, int dim,
                            const std::vector<Rational>& omega, bool conj_basis) {
    LaurentPoly s(dim, kOrd);
    for (const auto& [alpha, h] : parts)
        s += h * nabla_basis(dim, kOrd, alpha, omega, conj_basis);
    return s;
}

LaurentPoly resum_two_point(const std::map<std::pair<MIdx, MIdx>, LaurentPoly>& parts,
                            int dim, const std::vector<Rational>& omega) {
    LaurentPoly s(dim, kOrd);
    for (const auto& [ab, h] : parts)
        s += nabla_basis(dim, kOrd, ab.first, zero_pt(dim), true) * h *
             nabla_basis(dim, kOrd, ab.second, omega, false);
    return s;
}

Jet e1_jet(int dim, long rows, long cols, int order) {
    Jet j(dim, rows, cols, order, kOrd, std::vector<Rational>(dim, Rational(0)));
    j.deriv(MIdx(static_cast<size_t>(dim), 0), 0, 0) = CycNum::from_int(kOrd, 1);
    return j;
}

// Extends a jet entrywise to a deeper order through its trigonometric
// polynomial representative; low derivatives are preserved.
Jet deepen(const Jet& j, int order) {
    return jet_at(jet_to_trigpoly(j), std::vector<Rational>(j.dim(), Rational(0)), order);
}

// Random (upsilon, phi) with (upsilon phi)-jet == 1 to pair_order: the first
// column entry is solved from the rest.
std::pair<Jet, Jet> random_unit_pairing(std::mt19937_64& rng, int dim, long r,
                                        int pair_order, int col_order) {
    Jet ups = random_jet(rng, dim, 1, r, pair_order);
    MIdx zero(static_cast<size_t>(dim), 0);
    if (ups.deriv(zero, 0, 0).is_zero()) ups.deriv(zero, 0, 0) = CycNum::from_int(kOrd, 1);
    Jet phi = random_jet(rng, dim, r, 1, col_order);
    Jet acc = e1_jet(dim, 1, 1, pair_order);
    for (long k = 1; k < r; ++k)
        acc -= ups.block(0, k, 1, 1) * phi.block(k, 0, 1, 1).truncated(pair_order);
    Jet phi0 = ups.block(0, 0, 1, 1).reciprocal() * acc;
    phi.set_block(0, 0, deepen(phi0, col_order));
    return {ups, phi};
}

}  // namespace

TEST_CASE("difference basis elements") {
    CHECK(nabla_basis(1, kOrd, {2}, zero_pt(1), false) ==
          poly1({{0, 1}, {1, -2}, {2, 1}}));
    CHECK(nabla_basis(1, kOrd, {1}, zero_pt(1), true) ==
          poly1({{0, 1}, {-1, -1}}));
    CHECK(nabla_basis(1, kOrd, {1}, pt({Rational(1, 2)}), false) ==
          poly1({{0, 1}, {1, 1}}));
    CHECK(nabla_basis(2, kOrd, {0, 0}, zero_pt(2), false) == LaurentPoly::one(2, kOrd));
}

TEST_CASE("single point factorization recovers a known cofactor") {
    LaurentPoly c = poly1({{0, 1}, {1, -1}, {2, -3}, {3, 5}, {4, -2}});
    auto parts = factor_vanishing(c, 2, zero_pt(1), false);
    REQUIRE(parts.size() == 1);
    CHECK(parts.at({2}) == poly1({{0, 1}, {1, 1}, {2, -2}}));

    auto deeper = factor_vanishing(c, 3, zero_pt(1), false);
    REQUIRE(deeper.size() == 1);
    CHECK(deeper.at({3}) == poly1({{0, 1}, {1, 2}}));

    CHECK_THROWS_AS(factor_vanishing(c, 4, zero_pt(1), false), InsufficientVanishing);
    CHECK(factor_vanishing(LaurentPoly(1, kOrd), 2, zero_pt(1), false).empty());
    auto whole = factor_vanishing(c, 0, zero_pt(1), false);
    REQUIRE(whole.size() == 1);
    CHECK(whole.at({0}) == c);
}

TEST_CASE("single point factorization resums exactly") {
    std::mt19937_64 rng(0x636f6e7301ULL);
    struct Probe {
        int dim;
        std::vector<Rational> omega;
        bool conj;
    };
    std::vector<Probe> probes = {
        {1, zero_pt(1), false},
        {1, pt({Rational(1, 2)}), false},
        {1, pt({Rational(1, 2)}), true},
        {1, zero_pt(1), true},
        {2, pt({Rational(1, 2), Rational(0)}), false},
        {2, pt({Rational(1, 2), Rational(1, 2)}), true},
    };
    for (const Probe& pr : probes) {
        for (int order = 1; order <= 3; ++order) {
            for (int rep = 0; rep < 6; ++rep) {
                std::uniform_int_distribution<size_t> pick(
                    0, indices_exact(pr.dim, order).size() - 1);
                MIdx alpha = indices_exact(pr.dim, order)[pick(rng)];
                LaurentPoly c =
                    nabla_basis(pr.dim, kOrd, alpha, pr.omega, pr.conj) * random_poly(rng, pr.dim);
                auto parts = factor_vanishing(c, order, pr.omega, pr.conj);
                CHECK(resum_vanishing(parts, pr.dim, pr.omega, pr.conj) == c);
            }
        }
    }
}

TEST_CASE("two point factorization resums exactly") {
    LaurentPoly c = poly1({{0, 1}, {1, -1}, {2, -1}, {3, 1}});
    auto omega = pt({Rational(1, 2)});

    auto parts = factor_two_point(c, 2, 1, omega);
    CHECK(resum_two_point(parts, 1, omega) == c);

    auto left = factor_two_point(c, 2, 0, omega);
    CHECK(resum_two_point(left, 1, omega) == c);
    auto right = factor_two_point(c, 0, 1, omega);
    CHECK(resum_two_point(right, 1, omega) == c);

    auto merged = factor_two_point(c, 1, 1, zero_pt(1));
    CHECK(resum_two_point(merged, 1, zero_pt(1)) == c);

    CHECK_THROWS_AS(factor_two_point(c, 3, 1, omega), InsufficientVanishing);
    CHECK_THROWS_AS(factor_two_point(c, 2, 2, omega), InsufficientVanishing);
    CHECK(factor_two_point(LaurentPoly(1, kOrd), 2, 1, omega).empty());

    std::mt19937_64 rng(0x636f6e7302ULL);
    auto omega2 = pt({Rational(1, 2), Rational(1, 2)});
    for (int m = 1; m <= 2; ++m)
        for (int mt = 1; mt <= 2; ++mt)
            for (int rep = 0; rep < 4; ++rep) {
                auto as = indices_exact(2, m);
                auto bs = indices_exact(2, mt);
                std::uniform_int_distribution<size_t> pa(0, as.size() - 1);
                std::uniform_int_distribution<size_t> pb(0, bs.size() - 1);
                LaurentPoly c2 = nabla_basis(2, kOrd, as[pa(rng)], zero_pt(2), true) *
                                 nabla_basis(2, kOrd, bs[pb(rng)], omega2, false) *
                                 random_poly(rng, 2);
                auto parts2 = factor_two_point(c2, m, mt, omega2);
                CHECK(resum_two_point(parts2, 2, omega2) == c2);
            }
}

TEST_CASE("row normalization reaches the target jet") {
    std::mt19937_64 rng(0x636f6e7303ULL);
    MIdx zero1{0};
    for (int rep = 0; rep < 30; ++rep) {
        int dim = 1 + (rep % 2);
        long r = 2 + (rep % 2);
        int order = 1 + (rep % 3);
        MIdx zero(static_cast<size_t>(dim), 0);
        Jet v = random_jet(rng, dim, 1, r, order);
        Jet target = random_jet(rng, dim, 1, r, order);
        if (target.deriv(zero, 0, 0).is_zero())
            target.deriv(zero, 0, 0) = CycNum::from_int(kOrd, 1);
        if (rep % 5 == 0) v.deriv(zero, 0, 0) = CycNum::from_int(kOrd, 0);
        if (v.truncated(0).is_zero()) v.deriv(zero, 0, 1) = CycNum::from_int(kOrd, 1);
        ShearProduct p = normalize_row(v, target, order);
        CHECK(v.truncated(order) * jet_at(p.u, zero_pt(dim), order) == target.truncated(order));
        CHECK(p.u * p.u_inv == LaurentMatrix::identity(r, dim, kOrd));
    }

    Jet v1 = e1_jet(1, 1, 1, 2);
    ShearProduct same = normalize_row(v1, v1, 2);
    CHECK(same.u == LaurentMatrix::identity(1, 1, kOrd));

    Jet v2 = random_jet(rng, 1, 1, 1, 2);
    v2.deriv(zero1, 0, 0) = CycNum::from_int(kOrd, 2);
    CHECK_THROWS_AS(normalize_row(v2, e1_jet(1, 1, 1, 2), 2), DegenerateInput);

    Jet dead(1, 1, 2, 2, kOrd, {Rational(0)});
    CHECK_THROWS_AS(normalize_row(dead, e1_jet(1, 1, 2, 2), 2), DegenerateInput);
}

TEST_CASE("column normalization is the transposed contract") {
    std::mt19937_64 rng(0x636f6e7304ULL);
    for (int rep = 0; rep < 10; ++rep) {
        int dim = 1 + (rep % 2);
        long r = 2 + (rep % 2);
        int order = 1 + (rep % 3);
        MIdx zero(static_cast<size_t>(dim), 0);
        Jet v = random_jet(rng, dim, r, 1, order);
        if (v.deriv(zero, 0, 0).is_zero()) v.deriv(zero, 0, 0) = CycNum::from_int(kOrd, 1);
        Jet target = random_jet(rng, dim, r, 1, order);
        if (target.deriv(zero, 0, 0).is_zero())
            target.deriv(zero, 0, 0) = CycNum::from_int(kOrd, 1);
        ShearProduct p = normalize_col(v, target, order);
        CHECK(jet_at(p.u, zero_pt(dim), order) * v.truncated(order) == target.truncated(order));
        CHECK(p.u * p.u_inv == LaurentMatrix::identity(r, dim, kOrd));
    }
}

TEST_CASE("joint normalization fixes row and column jets") {
    std::mt19937_64 rng(0x636f6e7305ULL);
    for (int rep = 0; rep < 20; ++rep) {
        int dim = 1 + (rep % 2);
        long r = 2 + (rep % 2);
        int row_order = 1 + (rep % 2);
        int col_order = row_order + (rep % 3);
        auto [ups, phi] = random_unit_pairing(rng, dim, r, row_order, col_order);

        Jet row_t = e1_jet(dim, 1, r, row_order);
        Jet col_t = e1_jet(dim, r, 1, col_order);
        if (rep % 3 == 0) {
            auto [rt, ct] = random_unit_pairing(rng, dim, r, row_order, col_order);
            MIdx zero(static_cast<size_t>(dim), 0);
            for (long k = 1; k < r; ++k) ct.deriv(zero, k, 0) = CycNum::from_int(kOrd, 0);
            Jet acc = e1_jet(dim, 1, 1, row_order);
            for (long k = 1; k < r; ++k)
                acc -= rt.block(0, k, 1, 1) * ct.block(k, 0, 1, 1).truncated(row_order);
            ct.set_block(0, 0, deepen(rt.block(0, 0, 1, 1).reciprocal() * acc, col_order));
            row_t = rt;
            col_t = ct;
        }

        ShearProduct p = normal_form_pair(ups, phi, row_t, col_t, row_order, col_order);
        CHECK(jet_at(p.u, zero_pt(dim), col_order) * phi.truncated(col_order) ==
              col_t.truncated(col_order));
        CHECK(ups.truncated(row_order) * jet_at(p.u_inv, zero_pt(dim), row_order) ==
              row_t.truncated(row_order));
        CHECK(p.u * p.u_inv == LaurentMatrix::identity(r, dim, kOrd));
    }

    Jet ups = e1_jet(1, 1, 2, 1);
    Jet phi = e1_jet(1, 2, 1, 2) * CycNum::from_int(kOrd, 2);
    CHECK_THROWS_AS(
        normal_form_pair(ups, phi, e1_jet(1, 1, 2, 1), e1_jet(1, 2, 1, 2), 1, 2),
        HypothesisViolated);
}

TEST_CASE("ideal normal form of the stacked haar mask") {
    FrameletSystem sys = testfix::toy_system();
    SumRuleCertificate cert = sum_rule_order(sys.a, sys.dil);
    REQUIRE(cert.order == 1);
    IdealNormalForm nf = ideal_normal_form(sys.a, sys.dil, cert.matching, 1, 2);

    Jet col = jet_at(nf.mask, zero_pt(1), 2).block(0, 0, 2, 1);
    CHECK(col == e1_jet(1, 2, 1, 2));
    for (size_t j = 0; j < sys.dil.omega.size(); ++j) {
        Jet row = jet_at(nf.mask.freq_shifted(sys.dil.omega[j]), zero_pt(1), 1)
                      .block(0, 0, 1, 2);
        Jet want(1, 1, 2, 1, kOrd, {Rational(0)});
        if (j == 0) want.deriv({0}, 0, 0) = CycNum::from_int(kOrd, 1);
        CHECK(row == want);
    }
}

TEST_CASE("highpass completion of the stacked haar pair") {
    FrameletSystem sys = testfix::toy_system();
    HighpassCompletion comp = complete_highpass(sys);
    CHECK(comp.m == 1);
    CHECK(comp.m_tilde == 1);
    CHECK(comp.b.cols() == 2);
    CHECK(comp.b.rows() == comp.b_tilde.rows());

    FrameletSystem full = sys;
    full.b = comp.b;
    full.b_tilde = comp.b_tilde;
    DffbReport report = verify_dffb(full);
    CHECK(report.pass);

    SumRuleCertificate cert = sum_rule_order(sys.a, sys.dil);
    RefinableJet phi = refinable_jet(sys.a, sys.dil, cert.matching, 3);
    CHECK(vmo_highpass(comp.b, phi) >= 1);
    SumRuleCertificate cert_t = sum_rule_order(sys.a_tilde, sys.dil);
    RefinableJet phit = refinable_jet(sys.a_tilde, sys.dil, cert_t.matching, 3);
    CHECK(vmo_highpass(comp.b_tilde, phit) >= 1);

    CHECK(bvmo(comp.mrb, sys.vec).order >= 1);
    CHECK(bvmo(comp.mrtb, sys.vec).order >= 1);
    LaurentMatrix theta = sys.theta_or_identity();
    LaurentMatrix mra = theta.dilated(sys.dil.m) * sys.a *
                        (*strong_invertibility(theta).inverse);
    CHECK(bpo(mra, comp.mrb, sys.vec, sys.dil).order >= 1);

    std::mt19937_64 rng(0x636f6e7306ULL);
    std::uniform_int_distribution<int> pos(-5, 5);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    for (int rep = 0; rep < 5; ++rep) {
        LaurentMatrix v(1, 2, 1, kOrd);
        for (long j = 0; j < 2; ++j)
            for (int t = 0; t < 4; ++t)
                v.at(0, j).set_coeff({pos(rng)},
                                     CycNum::from_rational(kOrd, Rational(num(rng), den(rng))));
        Signal v0{v};
        DmftCoeffs c = dmft_forward(full, v0, 2);
        Signal back = dmft_inverse(full, c);
        CHECK(signals_equal(back, v0, sys.dil.abs_det));
    }
}

TEST_CASE("completion rejects hopeless inputs") {
    FrameletSystem sys = testfix::haar_system();
    CHECK_THROWS_AS(complete_highpass(sys), DegenerateInput);

    FrameletSystem flat;
    flat.dil = make_dilation({{2}});
    flat.vec = make_vectorizer({{2}});
    LaurentMatrix half = LaurentMatrix::identity(2, 1, kOrd);
    half *= CycNum::from_rational(kOrd, Rational(1, 2));
    flat.a = half;
    flat.a_tilde = half;
    CHECK_THROWS_AS(complete_highpass(flat), HypothesisViolated);

    FrameletSystem bad = testfix::toy_system();
    Jet wrong = e1_jet(1, 1, 2, 1);
    wrong.deriv({0}, 0, 1) = CycNum::from_int(kOrd, 7);
    bad.upsilon = wrong;
    CHECK_THROWS_AS(complete_highpass(bad), HypothesisViolated);
}

TEST_CASE("moment correction synthesis completes the pipeline") {
    FrameletSystem sys = testfix::toy_system();
    sys.theta.reset();
    sys.theta_tilde.reset();
    SynthesizedMcf syn = synthesize_mcf(sys);
    CHECK(syn.report.pass);
    CHECK(strong_invertibility(syn.theta).verdict);
    CHECK(strong_invertibility(syn.theta_tilde).verdict);

    sys.theta = syn.theta;
    sys.theta_tilde = syn.theta_tilde;
    HighpassCompletion comp = complete_highpass(sys);
    FrameletSystem full = sys;
    full.b = comp.b;
    full.b_tilde = comp.b_tilde;
    CHECK(verify_dffb(full).pass);
    McfReport mcf = verify_mcf(full);
    CHECK(mcf.pass);
}
