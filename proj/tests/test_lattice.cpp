#include <doctest.h>

#include <random>

#include "framelet/lattice.hpp"

using namespace framelet;

namespace {

constexpr unsigned kOrd = 8;

LaurentMatrix random_matrix(std::mt19937_64& rng, long rows, long cols, int dim) {
    std::uniform_int_distribution<int> pos(-3, 3);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    LaurentMatrix u(rows, cols, dim, kOrd);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            for (int t = 0; t < 4; ++t) {
                MIdx k(dim);
                for (int ax = 0; ax < dim; ++ax) k[ax] = pos(rng);
                u.at(i, j).set_coeff(k, CycNum::from_rational(kOrd, Rational(num(rng), den(rng))));
            }
    return u;
}

}  // namespace

TEST_CASE("quincunx dilation cosets") {
    Dilation dil = make_dilation({{1, 1}, {1, -1}});
    CHECK(dil.abs_det == 2);
    CHECK(dil.expansive);
    REQUIRE(dil.gamma.size() == 2);
    CHECK(dil.gamma[0] == MIdx{0, 0});
    CHECK(dil.gamma[1] == MIdx{1, 0});
    REQUIRE(dil.omega.size() == 2);
    CHECK(dil.omega[0] == std::vector<Rational>{Rational(0), Rational(0)});
    CHECK(dil.omega[1] == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("scalar dyadic dilation cosets") {
    Dilation dil = make_dilation({{2}});
    CHECK(dil.abs_det == 2);
    CHECK(dil.expansive);
    CHECK(dil.gamma == std::vector<MIdx>{{0}, {1}});
    CHECK(dil.omega[1] == std::vector<Rational>{Rational(1, 2)});

    Dilation three = make_dilation({{3}});
    CHECK(three.gamma == std::vector<MIdx>{{0}, {1}, {2}});
    CHECK(three.omega[1] == std::vector<Rational>{Rational(1, 3)});
    CHECK(three.omega[2] == std::vector<Rational>{Rational(2, 3)});
}

TEST_CASE("two-dimensional dyadic dilation cosets") {
    Dilation dil = make_dilation({{2, 0}, {0, 2}});
    CHECK(dil.abs_det == 4);
    CHECK(dil.expansive);
    REQUIRE(dil.gamma.size() == 4);
    CHECK(dil.gamma[0] == MIdx{0, 0});
    CHECK(dil.gamma[1] == MIdx{0, 1});
    CHECK(dil.gamma[2] == MIdx{1, 0});
    CHECK(dil.gamma[3] == MIdx{1, 1});
    CHECK(dil.omega[3] == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("representatives with negative coordinates still start at zero") {
    Dilation dil = make_dilation({{0, -2}, {1, 0}});
    CHECK(dil.abs_det == 2);
    REQUIRE(dil.gamma.size() == 2);
    CHECK(dil.gamma[0] == MIdx{0, 0});
    CHECK(dil.gamma[1] == MIdx{-1, 0});
}

TEST_CASE("expansiveness is decided exactly") {
    CHECK(make_dilation({{1, 1}, {1, -1}}).expansive);
    CHECK(make_dilation({{2}}).expansive);
    CHECK(make_dilation({{-2}}).expansive);
    CHECK_FALSE(make_dilation({{2, 0}, {0, 1}}).expansive);
    CHECK_FALSE(make_dilation({{1, 1}, {0, 2}}).expansive);
    CHECK(make_dilation({{2, 1}, {0, 2}}).expansive);
    CHECK_THROWS_AS(make_dilation({{1}}), Error);
    CHECK_THROWS_AS(make_dilation({{1, 0}, {0, 1}}), Error);
    CHECK_THROWS_AS(make_dilation({{1, 1}, {1, 1}}), Error);
}

TEST_CASE("coset split and join invert each other") {
    std::mt19937_64 rng(0x636f7365);
    Dilation quincunx = make_dilation({{1, 1}, {1, -1}});
    Dilation dyadic = make_dilation({{2}});
    for (int iter = 0; iter < 220; ++iter) {
        LaurentMatrix u2 = random_matrix(rng, 2, 2, 2);
        auto parts = coset_split(u2, quincunx);
        CHECK(coset_join(parts, quincunx) == u2);

        LaurentMatrix u1 = random_matrix(rng, 1, 2, 1);
        auto parts1 = coset_split(u1, dyadic);
        CHECK(coset_join(parts1, dyadic) == u1);
    }
}

TEST_CASE("coset parts select the right coefficients") {
    Dilation dil = make_dilation({{1, 1}, {1, -1}});
    LaurentMatrix u(1, 1, 2, kOrd);
    u.at(0, 0).set_coeff({0, 0}, CycNum::from_int(kOrd, 1));
    u.at(0, 0).set_coeff({1, 1}, CycNum::from_int(kOrd, 2));   // = 0 + M(1,0)
    u.at(0, 0).set_coeff({1, 0}, CycNum::from_int(kOrd, 3));   // representative (1,0)
    u.at(0, 0).set_coeff({2, -1}, CycNum::from_int(kOrd, 4));  // = (1,0) + M(1,-1)... check below
    auto p0 = coset_part(u, {0, 0}, dil);
    CHECK(p0.at(0, 0).coeff({0, 0}) == CycNum::from_int(kOrd, 1));
    CHECK(p0.at(0, 0).coeff({1, 0}) == CycNum::from_int(kOrd, 2));
    CHECK(p0.at(0, 0).term_count() == 2);
    auto p1 = coset_part(u, {1, 0}, dil);
    CHECK(p1.at(0, 0).coeff({0, 0}) == CycNum::from_int(kOrd, 3));
    // (2,-1) - (1,0) = (1,-1) = M(0,1), so it lands at position (0,1).
    CHECK(p1.at(0, 0).coeff({0, 1}) == CycNum::from_int(kOrd, 4));
}

TEST_CASE("vectorizer channels and fractional offsets") {
    Vectorizer v = make_vectorizer({{1, 1}, {1, -1}});
    CHECK(v.channels == 2);
    CHECK(v.gamma[0] == MIdx{0, 0});
    CHECK(v.gamma[1] == MIdx{1, 0});
    CHECK(v.tau[1] == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    FracExpRow row = v.moment_row(kOrd);
    CHECK(row.size() == 2);
    CHECK(row.tau[1][0] == Rational(1, 2));

    std::mt19937_64 rng(0x76656374);
    std::uniform_int_distribution<int> pos(-6, 6);
    for (int iter = 0; iter < 220; ++iter) {
        MIdx p{pos(rng), pos(rng)};
        auto [ch, k] = v.decompose(p);
        MIdx back = add(v.gamma[static_cast<size_t>(ch)], mat_vec(v.n, k));
        CHECK(back == p);
    }
}
