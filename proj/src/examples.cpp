#include "framelet/examples.hpp"

#include <vector>

namespace framelet {
namespace {

constexpr unsigned kOrd = 8;

// One term num * e^{i(n1 xi_1 + n2 xi_2)}; the coefficient convention
// u_hat(xi) = sum_k u(k) e^{-i k.xi} puts it at k = (-n1, -n2).
struct Term {
    int n1, n2;
    long num;
};

LaurentPoly combo(const std::vector<Term>& terms, const Rational& scale, bool root2) {
    LaurentPoly p(2, kOrd);
    CycNum s = CycNum::from_rational(kOrd, scale);
    if (root2) s *= CycNum::sqrt_of_int(kOrd, Integer(2));
    for (const Term& t : terms) {
        CycNum c = s;
        c *= Rational(t.num);
        p.set_coeff({-t.n1, -t.n2}, c);
    }
    return p;
}

// Companion pair (w^2, -(w + 1)(w^2 + 1)/f(0)) with w = 1 - f/f(0); the
// triple (f, w^2, third) then satisfies third * f = (w^2)^2 - 1, so both
// symmetric matrices [[-third, w^2], [w^2, -f]] and [[f, w^2], [w^2, third]]
// have determinant -1 exactly.
std::pair<LaurentPoly, LaurentPoly> companion_pair(const LaurentPoly& f) {
    CycNum inv0 = f.eval_zero().inverse();
    LaurentPoly one = LaurentPoly::one(2, kOrd);
    LaurentPoly w = one - f * inv0;
    LaurentPoly second = w * w;
    LaurentPoly third = (w + one) * (w * w + one) * (-inv0);
    return {second, third};
}

LaurentMatrix companion_block_neg(const LaurentPoly& f) {
    auto [second, third] = companion_pair(f);
    LaurentMatrix m(2, 2, 2, kOrd);
    m.at(0, 0) = -third;
    m.at(0, 1) = second;
    m.at(1, 0) = second;
    m.at(1, 1) = -f;
    return m;
}

LaurentMatrix companion_block_pos(const LaurentPoly& f) {
    auto [second, third] = companion_pair(f);
    LaurentMatrix m(2, 2, 2, kOrd);
    m.at(0, 0) = f;
    m.at(0, 1) = second;
    m.at(1, 0) = second;
    m.at(1, 1) = third;
    return m;
}

Jet matching_jet(int sign) {
    Jet j(2, 1, 2, 2, kOrd, {Rational(0), Rational(0)});
    j.deriv({0, 0}, 0, 0) = CycNum::from_int(kOrd, 1);
    j.deriv({0, 0}, 0, 1) = CycNum::from_int(kOrd, 1);
    CycNum half_i = CycNum::imag_unit(kOrd);
    half_i *= Rational(sign, 2);
    j.deriv({1, 0}, 0, 1) = half_i;
    j.deriv({0, 1}, 0, 1) = half_i;
    return j;
}

}  // namespace

FrameletSystem haar_uep_system() {
    FrameletSystem sys;
    sys.dil = make_dilation({{2}});
    sys.vec = make_vectorizer({{1}});
    LaurentMatrix a(1, 1, 1, kOrd);
    a.at(0, 0).set_coeff({0}, CycNum::from_rational(kOrd, Rational(1, 2)));
    a.at(0, 0).set_coeff({1}, CycNum::from_rational(kOrd, Rational(1, 2)));
    LaurentMatrix b(1, 1, 1, kOrd);
    b.at(0, 0).set_coeff({0}, CycNum::from_rational(kOrd, Rational(1, 2)));
    b.at(0, 0).set_coeff({1}, CycNum::from_rational(kOrd, Rational(-1, 2)));
    sys.a = a;
    sys.a_tilde = a;
    sys.b = b;
    sys.b_tilde = b;
    return sys;
}

FrameletSystem stacked_haar_system() {
    FrameletSystem sys;
    sys.dil = make_dilation({{2}});
    sys.vec = make_vectorizer({{2}});
    LaurentMatrix a(2, 2, 1, kOrd);
    CycNum half = CycNum::from_rational(kOrd, Rational(1, 2));
    a.at(0, 0).set_coeff({0}, half);
    a.at(0, 1).set_coeff({0}, half);
    a.at(1, 0).set_coeff({1}, half);
    a.at(1, 1).set_coeff({1}, half);
    sys.a = a;
    sys.a_tilde = a;
    LaurentMatrix th = LaurentMatrix::identity(2, 1, kOrd);
    th *= CycNum::from_int(kOrd, 2);
    sys.theta = th;
    sys.theta_tilde = LaurentMatrix::identity(2, 1, kOrd);
    return sys;
}

FrameletSystem quincunx_r2_system() {
    FrameletSystem sys;
    sys.dil = make_dilation({{1, 1}, {1, -1}});
    sys.vec = make_vectorizer({{1, 1}, {1, -1}});

    LaurentMatrix a(2, 2, 2, kOrd);
    a.at(0, 0) = combo({{0, 0, 2}}, Rational(1, 4), false);
    a.at(0, 1) = combo({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, Rational(1, 4), false);
    a.at(1, 0) = combo({{-1, 0, 2}}, Rational(1, 4), false);
    sys.a = a;

    LaurentMatrix at(2, 2, 2, kOrd);
    at.at(0, 0) = combo({{0, 0, 8}}, Rational(1, 16), false);
    at.at(0, 1) =
        combo({{0, 0, 3}, {-1, 0, 1}, {0, -1, 1}, {-1, -1, 3}}, Rational(1, 16), false);
    at.at(1, 0) = combo({{1, 0, 8}}, Rational(1, 16), false);
    at.at(1, 1) =
        combo({{0, 0, 1}, {1, 0, 3}, {0, -1, 3}, {1, -1, 1}}, Rational(1, 16), false);
    sys.a_tilde = at;

    LaurentMatrix theta(2, 2, 2, kOrd);
    theta.at(0, 0) = combo({{0, 0, 542001},
                            {-2, 0, -3225},
                            {-1, -1, -7740},
                            {-1, 0, -265735},
                            {0, -1, 12267},
                            {1, -1, -4522},
                            {1, 0, -273258}},
                           Rational(1, 272), true);
    theta.at(0, 1) = combo({{-2, -1, -645}, {-1, -1, 646}}, Rational(1, 17), true);
    theta.at(1, 0) = combo({{-1, -1, 7740},
                            {0, -1, -12267},
                            {1, -1, 4522},
                            {-1, 1, -1075},
                            {0, 1, -89655},
                            {1, 1, 90873},
                            {-2, 0, 3225},
                            {-1, 0, 265735},
                            {0, 0, -544581},
                            {1, 0, 274763}},
                           Rational(1, 3264), true);
    theta.at(1, 1) =
        combo({{-2, -1, 645}, {-1, -1, -646}, {-1, 0, -215}}, Rational(1, 204), true);
    sys.theta = theta;

    LaurentMatrix q(2, 2, 2, kOrd);
    q.at(0, 0) = combo({{0, 0, 152782870420L},
                        {-1, 0, -171803098950L},
                        {0, -1, -24271223880L},
                        {1, 0, -47368903977L},
                        {0, 1, 7542235263L},
                        {-1, -1, 24612841458L},
                        {1, 1, -3502342314L},
                        {1, -1, 7992104616L},
                        {-1, 1, -4616116784L},
                        {-2, 0, 74730400386L},
                        {0, -2, -9018774L},
                        {-3, 0, -8342459019L},
                        {0, -3, 1511L},
                        {-1, -2, 8967362L},
                        {-2, -1, -8333493168L},
                        {-2, 1, 576060810L}},
                       Rational(1, 2350080), true);
    q.at(0, 1) = combo({{0, 0, -6}, {-1, 0, 1}, {0, -1, 1}}, Rational(1, 8), true);
    q.at(1, 0) = combo({{0, 0, -41819386604L},
                        {-1, 0, 25602071226L},
                        {0, -1, -24343301544L},
                        {1, 0, 16567932951L},
                        {0, 1, -1735780129L},
                        {-1, -1, 24684568266L},
                        {1, 1, 1167447438L},
                        {1, -1, 7992104616L},
                        {-1, 1, -7630304L},
                        {-2, 0, 7990728234L},
                        {0, -2, -9006686L},
                        {-3, 0, -8342459019L},
                        {0, -3, 1511L},
                        {-1, -2, 8967362L},
                        {-2, -1, -8333493168L},
                        {-2, 1, 576060810L}},
                       Rational(1, 2350080), true);
    q.at(1, 1) = combo({{0, 0, 2}, {-1, 0, 1}, {0, -1, 1}}, Rational(1, 8), true);

    LaurentPoly d1 = combo({{0, 0, 846168},
                            {1, 1, 964186},
                            {1, 0, -581936},
                            {1, -1, 648973},
                            {0, 2, -65},
                            {0, 1, -1876500},
                            {0, -1, -1253380},
                            {-1, 1, 912657},
                            {-1, 0, 576},
                            {-1, -1, 604428},
                            {-2, 0, -263955}},
                           Rational(1, 1152), false);
    LaurentPoly c1 = combo({{1, 2, 64},
                            {1, 1, -208},
                            {1, 0, 203},
                            {1, -1, -83},
                            {0, 2, -62},
                            {0, 1, 199},
                            {0, 0, -58},
                            {0, -1, 109},
                            {-1, 1, -17},
                            {-1, 0, 49},
                            {-2, 0, -4}},
                           Rational(1, 96), false);

    LaurentMatrix s(2, 2, 2, kOrd);
    s.at(0, 0) = combo({{0, 0, 6}, {-1, 0, -1}, {0, -1, -1}}, Rational(1, 8), false);
    s.at(0, 1) = combo({{0, 0, 2}, {-1, 0, 1}, {0, -1, 1}}, Rational(1, 8), false);
    s.at(1, 0) = combo({{-1, 0, -42},
                        {0, -1, -42},
                        {1, -1, -2},
                        {1, 1, 6},
                        {0, 0, 160},
                        {0, 1, 11},
                        {-1, -1, 6},
                        {-1, 1, -2},
                        {1, 0, 11},
                        {-2, 0, 12},
                        {0, -2, 12},
                        {-3, 0, -1},
                        {0, -3, -1}},
                       Rational(1, 256), false);
    s.at(1, 1) = combo({{-1, 0, -6},
                        {0, -1, -6},
                        {1, -1, 2},
                        {1, 1, 2},
                        {0, 0, -112},
                        {0, 1, 5},
                        {-1, -1, -14},
                        {-1, 1, 2},
                        {1, 0, 5},
                        {-2, 0, -4},
                        {0, -2, -4},
                        {-3, 0, 1},
                        {0, -3, 1}},
                       Rational(1, 256), false);

    sys.theta_tilde = q * companion_block_neg(d1) * companion_block_pos(c1) * s;

    sys.upsilon = matching_jet(1);
    sys.upsilon_tilde = matching_jet(-1);
    return sys;
}

}  // namespace framelet
