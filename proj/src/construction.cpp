#include "framelet/construction.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "framelet/errors.hpp"
#include "framelet/jet.hpp"

namespace framelet {
namespace {

std::vector<Rational> zero_tau(int dim) { return std::vector<Rational>(dim, Rational(0)); }

std::vector<Rational> negated(const std::vector<Rational>& omega) {
    std::vector<Rational> out(omega.size());
    for (size_t i = 0; i < omega.size(); ++i) out[i] = -omega[i];
    return out;
}

bool is_integral(const std::vector<Rational>& omega) {
    for (const auto& q : omega)
        if (q.get_den() != 1) return false;
    return true;
}

Rational dot(const MIdx& k, const std::vector<Rational>& omega) {
    Rational t(0);
    for (size_t i = 0; i < omega.size(); ++i) t += omega[i] * k[i];
    return t;
}

// Change of variables w'_j = e^{-2 pi i omega_j} w_j; inverse undoes it.
// Vanishing to some order at xi = -2 pi omega becomes vanishing at w' = 1.
LaurentPoly twist_coords(const LaurentPoly& c, const std::vector<Rational>& omega,
                         bool inverse) {
    LaurentPoly out(c.dim(), c.cyc_order());
    c.for_each([&](const MIdx& k, const CycNum& v) {
        Rational t = dot(k, omega);
        if (inverse) t = -t;
        out.set_coeff(k, v * CycNum::root_of_unity(c.cyc_order(), t));
    });
    return out;
}

// Change of variables w'_j = e^{2 pi i omega_j} w_j^{-1}, an involution; the
// conjugate basis at -2 pi omega becomes the plain basis at w' = 1.
LaurentPoly conj_coords(const LaurentPoly& c, const std::vector<Rational>& omega) {
    LaurentPoly out(c.dim(), c.cyc_order());
    c.for_each([&](const MIdx& k, const CycNum& v) {
        MIdx nk(k.size());
        for (size_t i = 0; i < k.size(); ++i) nk[i] = -k[i];
        out.set_coeff(nk, v * CycNum::root_of_unity(c.cyc_order(), dot(k, omega)));
    });
    return out;
}

// Dense coefficient box over a common denominator, one integer row per
// cyclotomic lane, so the Taylor passes below are pure integer additions.
struct DenseBox {
    int dim = 0;
    unsigned lanes = 0;
    MIdx lo;
    std::vector<long> ext;
    long cells = 0;
    Integer den = 1;
    std::vector<Integer> v;  // cells * lanes, cell-major

    long cell_of(const MIdx& rel) const {
        long c = 0;
        for (int i = 0; i < dim; ++i) c = c * ext[i] + rel[i];
        return c;
    }
    MIdx rel_of(long idx) const {
        MIdx rel(dim, 0);
        for (int i = dim - 1; i >= 0; --i) {
            rel[i] = static_cast<int>(idx % ext[i]);
            idx /= ext[i];
        }
        return rel;
    }
    bool cell_zero(long idx) const {
        for (unsigned ln = 0; ln < lanes; ++ln)
            if (v[idx * lanes + ln] != 0) return false;
        return true;
    }
};

DenseBox box_of(const LaurentPoly& c) {
    DenseBox b;
    b.dim = c.dim();
    b.lanes = CycNum::from_int(c.cyc_order(), 0).phi();
    auto [lo, hi] = c.support_box();
    b.lo = lo;
    b.ext.resize(b.dim);
    b.cells = 1;
    for (int i = 0; i < b.dim; ++i) {
        b.ext[i] = hi[i] - lo[i] + 1;
        b.cells *= b.ext[i];
        if (b.cells > (1L << 24)) throw Error("factorization support box too large");
    }
    c.for_each([&](const MIdx&, const CycNum& val) {
        mpz_lcm(b.den.get_mpz_t(), b.den.get_mpz_t(), val.den().get_mpz_t());
    });
    b.v.assign(static_cast<size_t>(b.cells) * b.lanes, Integer(0));
    c.for_each([&](const MIdx& k, const CycNum& val) {
        MIdx rel(b.dim);
        for (int i = 0; i < b.dim; ++i) rel[i] = k[i] - lo[i];
        long base = b.cell_of(rel) * b.lanes;
        Integer f;
        mpz_divexact(f.get_mpz_t(), b.den.get_mpz_t(), val.den().get_mpz_t());
        for (unsigned ln = 0; ln < b.lanes; ++ln) b.v[base + ln] = val.lane(ln) * f;
    });
    return b;
}

// Axis-wise substitution w' = 1 - y on the coefficient array: a Taylor shift
// by one (suffix cumulative additions) followed by negating odd positions.
// The map is its own inverse.
void taylor_involution(DenseBox& b) {
    for (int ax = 0; ax < b.dim; ++ax) {
        long n = b.ext[ax];
        if (n <= 1) continue;
        long stride = 1;
        for (int t = ax + 1; t < b.dim; ++t) stride *= b.ext[t];
        long lines = b.cells / n;
        for (long line = 0; line < lines; ++line) {
            long base = (line / stride) * stride * n + (line % stride);
            for (unsigned ln = 0; ln < b.lanes; ++ln) {
                auto at = [&](long i) -> Integer& {
                    return b.v[(base + i * stride) * b.lanes + ln];
                };
                for (long i = 0; i + 1 < n; ++i)
                    for (long j = n - 2; j >= i; --j) at(j) += at(j + 1);
                for (long i = 1; i < n; i += 2) at(i) = -at(i);
            }
        }
    }
}

LaurentPoly poly_of(const DenseBox& b, unsigned cyc_order) {
    LaurentPoly out(b.dim, cyc_order);
    for (long idx = 0; idx < b.cells; ++idx) {
        if (b.cell_zero(idx)) continue;
        CycNum cv = CycNum::from_int(cyc_order, 0);
        for (unsigned ln = 0; ln < b.lanes; ++ln) {
            const Integer& num = b.v[idx * b.lanes + ln];
            if (num == 0) continue;
            Rational q = Rational(num) / Rational(b.den);
            cv += CycNum::zeta_pow(cyc_order, ln) * CycNum::from_rational(cyc_order, q);
        }
        MIdx rel = b.rel_of(idx);
        MIdx k(b.dim);
        for (int i = 0; i < b.dim; ++i) k[i] = rel[i] + b.lo[i];
        out.set_coeff(k, cv);
    }
    return out;
}

// Takes m unit steps off e, always from the currently largest component
// (lowest index on ties), producing |alpha| = m with alpha <= e.
MIdx greedy_pick(const MIdx& e, int m) {
    MIdx a(e.size(), 0);
    for (int s = 0; s < m; ++s) {
        size_t best = 0;
        for (size_t j = 1; j < e.size(); ++j)
            if (e[j] - a[j] > e[best] - a[best]) best = j;
        ++a[best];
    }
    return a;
}

// Factorization against the standard basis y_j = 1 - w'_j at w' = 1.
std::map<MIdx, LaurentPoly> factor_origin(const LaurentPoly& c, int m) {
    std::map<MIdx, LaurentPoly> out;
    if (c.is_zero()) return out;
    const int d = c.dim();
    if (m == 0) {
        out[MIdx(d, 0)] = c;
        return out;
    }
    DenseBox b = box_of(c);
    taylor_involution(b);
    int min_deg = -1;
    for (long idx = 0; idx < b.cells; ++idx) {
        if (b.cell_zero(idx)) continue;
        int deg = abs_sum(b.rel_of(idx));
        if (min_deg < 0 || deg < min_deg) min_deg = deg;
    }
    if (min_deg < m)
        throw InsufficientVanishing("vanishing order " + std::to_string(min_deg) +
                                    ", factorization needs " + std::to_string(m));
    std::map<MIdx, DenseBox> parts;
    for (long idx = 0; idx < b.cells; ++idx) {
        if (b.cell_zero(idx)) continue;
        MIdx rel = b.rel_of(idx);
        MIdx alpha = greedy_pick(rel, m);
        auto it = parts.find(alpha);
        if (it == parts.end()) {
            DenseBox h = b;
            h.v.assign(h.v.size(), Integer(0));
            it = parts.emplace(alpha, std::move(h)).first;
        }
        MIdx rel2(d);
        for (int i = 0; i < d; ++i) rel2[i] = rel[i] - alpha[i];
        long dst = it->second.cell_of(rel2) * b.lanes;
        for (unsigned ln = 0; ln < b.lanes; ++ln)
            it->second.v[dst + ln] = b.v[idx * b.lanes + ln];
    }
    for (auto& [alpha, h] : parts) {
        taylor_involution(h);
        LaurentPoly p = poly_of(h, c.cyc_order());
        if (!p.is_zero()) out[alpha] = p;
    }
    return out;
}

LaurentPoly map_get(const std::map<MIdx, LaurentPoly>& m, const MIdx& key, int dim,
                    unsigned cyc_order) {
    auto it = m.find(key);
    return it == m.end() ? LaurentPoly(dim, cyc_order) : it->second;
}

Jet unit_jet(int dim, long rows, long cols, int order, unsigned cyc_order) {
    Jet j(dim, rows, cols, order, cyc_order, zero_tau(dim));
    j.deriv(MIdx(dim, 0), 0, 0) = CycNum::from_int(cyc_order, 1);
    return j;
}

}  // namespace

LaurentPoly nabla_basis(int dim, unsigned cyc_order, const MIdx& alpha,
                        const std::vector<Rational>& omega, bool conj_basis) {
    if (static_cast<int>(alpha.size()) != dim || static_cast<int>(omega.size()) != dim)
        throw DimensionMismatch("nabla_basis: index and point must match the dimension");
    LaurentPoly out = LaurentPoly::one(dim, cyc_order);
    for (int j = 0; j < dim; ++j) {
        LaurentPoly f = LaurentPoly::one(dim, cyc_order);
        MIdx ej(dim, 0);
        ej[j] = conj_basis ? -1 : 1;
        Rational ph = conj_basis ? omega[j] : -omega[j];
        f.set_coeff(ej, -CycNum::root_of_unity(cyc_order, ph));
        for (int t = 0; t < alpha[j]; ++t) out *= f;
    }
    return out;
}

std::map<MIdx, LaurentPoly> factor_vanishing(const LaurentPoly& c, int order,
                                             const std::vector<Rational>& omega,
                                             bool conj_basis) {
    if (static_cast<int>(omega.size()) != c.dim())
        throw DimensionMismatch("factor_vanishing: point must match the dimension");
    if (order < 0) throw Error("factor_vanishing: negative order");
    std::map<MIdx, LaurentPoly> out;
    if (c.is_zero()) return out;
    LaurentPoly cp = conj_basis ? conj_coords(c, omega) : twist_coords(c, omega, false);
    for (auto& [alpha, h] : factor_origin(cp, order))
        out[alpha] = conj_basis ? conj_coords(h, omega) : twist_coords(h, omega, true);
    return out;
}

std::map<std::pair<MIdx, MIdx>, LaurentPoly> factor_two_point(
    const LaurentPoly& c, int m, int m_tilde, const std::vector<Rational>& omega) {
    if (static_cast<int>(omega.size()) != c.dim())
        throw DimensionMismatch("factor_two_point: point must match the dimension");
    if (m < 0 || m_tilde < 0) throw Error("factor_two_point: negative order");
    const int d = c.dim();
    const unsigned ord = c.cyc_order();
    const MIdx zero_mi(d, 0);
    std::map<std::pair<MIdx, MIdx>, LaurentPoly> out;
    if (c.is_zero()) return out;
    if (m == 0 && m_tilde == 0) {
        out[{zero_mi, zero_mi}] = c;
        return out;
    }
    if (is_integral(omega)) {
        // The two points coincide modulo 2 pi, so split a single factorization
        // of total order: y^kappa = conj(nabla^alpha) (-1)^|alpha| z^alpha
        // y^(kappa - alpha).
        for (auto& [kappa, g] : factor_vanishing(c, m + m_tilde, omega, false)) {
            MIdx alpha = greedy_pick(kappa, m);
            MIdx beta = sub(kappa, alpha);
            LaurentPoly piece = g.shifted(alpha);
            if (m % 2) piece *= CycNum::from_int(ord, -1);
            auto key = std::make_pair(alpha, beta);
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(key, piece);
            else
                it->second += piece;
        }
        return out;
    }
    if (m == 0) {
        for (auto& [beta, h] : factor_vanishing(c, m_tilde, omega, false))
            out[{zero_mi, beta}] = h;
        return out;
    }
    if (m_tilde == 0) {
        for (auto& [alpha, h] : factor_vanishing(c, m, zero_tau(d), true))
            out[{alpha, zero_mi}] = h;
        return out;
    }
    // Splitter t with t = 1 + O(|xi|^m) at 0 and O(m_tilde) at -2 pi omega:
    // a power of a first-order zero times a reciprocal jet at the origin.
    LaurentPoly u = LaurentPoly::one(d, ord);
    for (int j = 0; j < d; ++j) {
        MIdx ej(d, 0);
        ej[j] = 1;
        CycNum coef = CycNum::root_of_unity(ord, -omega[j]);
        coef *= Rational(-1, d);
        u.set_coeff(ej, coef);
    }
    LaurentPoly v = LaurentPoly::one(d, ord);
    for (int t = 0; t < m_tilde; ++t) v *= u;
    Jet ginv = jet_at(v, zero_tau(d), m).reciprocal();
    LaurentPoly t_split = v * jet_to_trigpoly(ginv).at(0, 0);
    LaurentPoly one_minus_t = LaurentPoly::one(d, ord) - t_split;

    auto p_map = factor_vanishing(one_minus_t, m, zero_tau(d), true);
    auto cc_map = factor_vanishing(c, m, zero_tau(d), true);
    auto k_map = factor_vanishing(c, m_tilde, omega, false);
    auto q_map = factor_vanishing(t_split, m_tilde, omega, false);
    for (const MIdx& alpha : indices_exact(d, m)) {
        LaurentPoly pa = map_get(p_map, alpha, d, ord);
        LaurentPoly ca = map_get(cc_map, alpha, d, ord);
        for (const MIdx& beta : indices_exact(d, m_tilde)) {
            LaurentPoly h = pa * map_get(k_map, beta, d, ord) +
                            ca * map_get(q_map, beta, d, ord);
            if (!h.is_zero()) out[{alpha, beta}] = h;
        }
    }
    return out;
}

ShearProduct normalize_row(const Jet& v, const Jet& target, int order) {
    const int d = v.dim();
    const unsigned ord = v.cyc_order();
    const long r = v.cols();
    if (v.rows() != 1 || target.rows() != 1 || target.cols() != r || target.dim() != d)
        throw DimensionMismatch("normalize_row: operands must be rows of equal length");
    for (const auto& q : v.base())
        if (q != 0) throw Error("normalize_row: jets must be based at 0");
    if (v.order() < order || target.order() < order)
        throw DimensionMismatch("normalize_row: jets are too shallow for the order");
    ShearProduct out{LaurentMatrix::identity(r, d, ord), LaurentMatrix::identity(r, d, ord)};
    if (order <= 0) return out;

    Jet cur = v.truncated(order);
    Jet want = target.truncated(order);
    if (cur == want) return out;
    if (r < 2) throw DegenerateInput("normalize_row: a single entry admits no shears");
    const MIdx zero_mi(d, 0);
    if (want.deriv(zero_mi, 0, 0).is_zero())
        throw DegenerateInput("normalize_row: target first entry vanishes at the base point");

    auto entry = [&](const Jet& j, long k) { return j.block(0, k, 1, 1); };
    auto shear = [&](long dst, long src, const LaurentPoly& g) {
        if (g.is_zero()) return;
        LaurentMatrix e = LaurentMatrix::identity(r, d, ord);
        LaurentMatrix einv = LaurentMatrix::identity(r, d, ord);
        e.at(src, dst) += g;
        einv.at(src, dst) -= g;
        out.u = out.u * e;
        out.u_inv = einv * out.u_inv;
        Jet gj = jet_at(g, zero_tau(d), order);
        cur.set_block(0, dst, entry(cur, dst) + gj * entry(cur, src));
    };

    if (cur.deriv(zero_mi, 0, 0).is_zero()) {
        long p = -1;
        for (long k = 1; k < r; ++k)
            if (!cur.deriv(zero_mi, 0, k).is_zero()) {
                p = k;
                break;
            }
        if (p < 0) throw DegenerateInput("normalize_row: row vanishes at the base point");
        shear(0, p, LaurentPoly::one(d, ord));
    }
    if (entry(cur, 0) != entry(want, 0)) {
        if (cur.deriv(zero_mi, 0, 1).is_zero()) shear(1, 0, LaurentPoly::one(d, ord));
        Jet g = (entry(want, 0) - entry(cur, 0)) * entry(cur, 1).reciprocal();
        shear(0, 1, jet_to_trigpoly(g).at(0, 0));
    }
    {
        Jet rec = entry(cur, 0).reciprocal();
        std::vector<LaurentPoly> w(r, LaurentPoly(d, ord));
        bool any = false;
        for (long k = 1; k < r; ++k) {
            Jet wk = (entry(want, k) - entry(cur, k)) * rec;
            if (wk.is_zero()) continue;
            w[k] = jet_to_trigpoly(wk).at(0, 0);
            any = true;
        }
        if (any) {
            LaurentMatrix e = LaurentMatrix::identity(r, d, ord);
            LaurentMatrix einv = LaurentMatrix::identity(r, d, ord);
            for (long k = 1; k < r; ++k) {
                e.at(0, k) += w[k];
                einv.at(0, k) -= w[k];
            }
            out.u = out.u * e;
            out.u_inv = einv * out.u_inv;
            for (long k = 1; k < r; ++k) {
                if (w[k].is_zero()) continue;
                Jet gj = jet_at(w[k], zero_tau(d), order);
                cur.set_block(0, k, entry(cur, k) + gj * entry(cur, 0));
            }
        }
    }
    if (cur != want || out.u * out.u_inv != LaurentMatrix::identity(r, d, ord))
        throw ConstructionFailed("normalize_row: self-check failed");
    return out;
}

ShearProduct normalize_col(const Jet& v, const Jet& target, int order) {
    ShearProduct p = normalize_row(v.transposed(), target.transposed(), order);
    return {p.u.transposed(), p.u_inv.transposed()};
}

ShearProduct normal_form_pair(const Jet& upsilon, const Jet& phi, const Jet& row_target,
                              const Jet& col_target, int row_order, int col_order) {
    const int d = upsilon.dim();
    const unsigned ord = upsilon.cyc_order();
    const long r = upsilon.cols();
    if (phi.rows() != r || phi.cols() != 1 || upsilon.rows() != 1)
        throw DimensionMismatch("normal_form_pair: need a 1 x r row and an r x 1 column");
    if (row_target.rows() != 1 || row_target.cols() != r || col_target.rows() != r ||
        col_target.cols() != 1)
        throw DimensionMismatch("normal_form_pair: target shapes do not match");
    if (col_order < row_order)
        throw DimensionMismatch("normal_form_pair: column order must dominate row order");
    if (upsilon.order() < row_order || phi.order() < col_order ||
        row_target.order() < row_order || col_target.order() < col_order)
        throw DimensionMismatch("normal_form_pair: jets are too shallow for the orders");
    if (row_order > 0) {
        Jet one = unit_jet(d, 1, 1, row_order, ord);
        if (upsilon.truncated(row_order) * phi.truncated(row_order) != one)
            throw HypothesisViolated("normal_form_pair: upsilon phi != 1 to the row order");
        if (row_target.truncated(row_order) * col_target.truncated(row_order) != one)
            throw HypothesisViolated(
                "normal_form_pair: target pairing != 1 to the row order");
    }

    ShearProduct a = normalize_col(phi, col_target, col_order);
    ShearProduct result = a;
    if (row_order > 0) {
        Jet rho = upsilon.truncated(row_order) * jet_at(a.u_inv, zero_tau(d), row_order);
        Jet want = row_target.truncated(row_order);
        if (rho != want) {
            // One more factor W = I + x w with w x = 0: it fixes the column
            // jet exactly and moves the row jet by (rho x) w.
            LaurentMatrix x = jet_to_trigpoly(col_target.truncated(col_order));
            const MIdx zero_mi(d, 0);
            long p = -1;
            for (long k = 0; k < r; ++k)
                if (!col_target.deriv(zero_mi, k, 0).is_zero()) {
                    p = k;
                    break;
                }
            if (p < 0)
                throw DegenerateInput(
                    "normal_form_pair: column target vanishes at the base point");
            Jet big_r = rho - want;
            Jet s = rho * jet_at(x, zero_tau(d), row_order);
            Jet recip = (s * jet_at(x.at(p, 0), zero_tau(d), row_order)).reciprocal();
            LaurentMatrix w(1, r, d, ord);
            for (long k = 0; k < r; ++k) {
                if (k == p) continue;
                Jet hk = big_r.block(0, k, 1, 1) * recip;
                if (hk.is_zero()) continue;
                LaurentPoly h = jet_to_trigpoly(hk).at(0, 0);
                w.at(0, k) += h * x.at(p, 0);
                w.at(0, p) -= h * x.at(k, 0);
            }
            LaurentMatrix xw = x * w;
            if (!(w * x).at(0, 0).is_zero())
                throw ConstructionFailed("normal_form_pair: shear annihilator is not exact");
            LaurentMatrix big_w = LaurentMatrix::identity(r, d, ord) + xw;
            LaurentMatrix big_w_inv = LaurentMatrix::identity(r, d, ord) - xw;
            result.u = big_w * a.u;
            result.u_inv = a.u_inv * big_w_inv;
        }
    }
    bool ok = jet_at(result.u, zero_tau(d), col_order) * phi.truncated(col_order) ==
              col_target.truncated(col_order);
    if (ok && row_order > 0)
        ok = upsilon.truncated(row_order) * jet_at(result.u_inv, zero_tau(d), row_order) ==
             row_target.truncated(row_order);
    if (ok) ok = result.u * result.u_inv == LaurentMatrix::identity(r, d, ord);
    if (!ok) throw ConstructionFailed("normal_form_pair: self-check failed");
    return result;
}

IdealNormalForm ideal_normal_form(const LaurentMatrix& a, const Dilation& dil,
                                  const Jet& upsilon, int m, int n) {
    const int d = dil.dim;
    const unsigned ord = a.cyc_order();
    const long r = a.rows();
    if (a.cols() != r) throw DimensionMismatch("ideal_normal_form: mask must be square");
    Jet phi = refinable_jet(a, dil, upsilon, n).jet;
    ShearProduct u = normal_form_pair(upsilon.truncated(std::max(m, 1)), phi,
                                      unit_jet(d, 1, r, m, ord), unit_jet(d, r, 1, n, ord),
                                      m, n);
    IdealNormalForm out{u, u.u.dilated(dil.m) * a * u.u_inv};
    if (jet_at(out.mask, zero_tau(d), n).block(0, 0, r, 1) != unit_jet(d, r, 1, n, ord))
        throw ConstructionFailed("ideal_normal_form: first column is off target");
    for (size_t j = 0; j < dil.omega.size(); ++j) {
        Jet row = jet_at(out.mask.freq_shifted(dil.omega[j]), zero_tau(d), m)
                      .block(0, 0, 1, r);
        Jet want(d, 1, r, m, ord, zero_tau(d));
        if (j == 0) want.deriv(MIdx(d, 0), 0, 0) = CycNum::from_int(ord, 1);
        if (row != want)
            throw ConstructionFailed("ideal_normal_form: first row is off target");
    }
    return out;
}

namespace {

Jet resolve_matching(const LaurentMatrix& a, const Dilation& dil,
                     const std::optional<Jet>& provided, const SumRuleCertificate& cert,
                     const char* side) {
    if (!provided) return cert.matching;
    if (provided->order() < cert.order)
        throw HypothesisViolated(std::string(side) +
                                 " moment jet is too shallow for the sum rule order");
    if (!check_sum_rules(a, dil, *provided, cert.order))
        throw HypothesisViolated(std::string(side) +
                                 " moment jet does not satisfy the sum rules");
    return *provided;
}

LaurentMatrix strong_inverse_of(const LaurentMatrix& u, const char* name) {
    StrongInvertibility si = strong_invertibility(u);
    if (!si.verdict)
        throw NotStronglyInvertible(std::string(name) + " is not strongly invertible");
    return *si.inverse;
}

}  // namespace

HighpassCompletion complete_highpass(const FrameletSystem& sys) {
    sys.validate_shapes();
    const int d = sys.dim();
    const unsigned ord = sys.cyc_order;
    const long r = sys.multiplicity();
    const Dilation& dil = sys.dil;
    const long big_l = dil.abs_det;

    SumRuleCertificate cert_a = sum_rule_order(sys.a, dil);
    SumRuleCertificate cert_at = sum_rule_order(sys.a_tilde, dil);
    const int m_tilde = cert_a.order;
    const int m = cert_at.order;
    if (m == 0 || m_tilde == 0)
        throw HypothesisViolated(
            "a lowpass filter carries no sum rules (order 0); the completion needs at "
            "least order one on both sides");
    const int n = m + m_tilde;

    Jet ups = resolve_matching(sys.a, dil, sys.upsilon, cert_a, "primal");
    resolve_matching(sys.a_tilde, dil, sys.upsilon_tilde, cert_at, "dual");

    LaurentMatrix theta = sys.theta_or_identity();
    LaurentMatrix theta_t = sys.theta_tilde_or_identity();
    LaurentMatrix theta_inv = strong_inverse_of(theta, "theta");
    LaurentMatrix theta_t_inv = strong_inverse_of(theta_t, "theta_tilde");

    Jet phi = refinable_jet(sys.a, dil, ups, n).jet;
    Jet mr_ups = ups.truncated(m_tilde) * jet_at(theta_inv, zero_tau(d), m_tilde);
    Jet mr_phi = jet_at(theta, zero_tau(d), n) * phi;
    ShearProduct pair =
        normal_form_pair(mr_ups, mr_phi, unit_jet(d, 1, r, m_tilde, ord),
                         unit_jet(d, r, 1, n, ord), m_tilde, n);

    LaurentMatrix mra = theta.dilated(dil.m) * sys.a * theta_inv;
    LaurentMatrix mrta = theta_t.dilated(dil.m) * sys.a_tilde * theta_t_inv;
    LaurentMatrix bpa = pair.u.dilated(dil.m) * mra * pair.u_inv;
    LaurentMatrix bpta = pair.u_inv.dilated(dil.m).star() * mrta * pair.u.star();

    std::vector<LaurentMatrix> coset_defect;
    coset_defect.reserve(big_l);
    LaurentMatrix bpa_star = bpa.star();
    for (long j = 0; j < big_l; ++j) {
        LaurentMatrix aj = bpa_star * bpta.freq_shifted(dil.omega[j]);
        aj = -aj;
        if (j == 0) aj += LaurentMatrix::identity(r, d, ord);
        coset_defect.push_back(std::move(aj));
    }

    const std::vector<MIdx> alphas = indices_exact(d, m);
    const std::vector<MIdx> betas = indices_exact(d, m_tilde);
    const MIdx& alpha0 = alphas.front();
    const MIdx& beta0 = betas.front();

    // Per-entry factorizations of the coset defects: the normal form makes
    // the first row vanish to order m at 0 and the first column to order
    // m_tilde at the shifted point, so each entry factors against exactly
    // the difference powers its position requires.
    std::vector<std::map<std::pair<MIdx, MIdx>, LaurentMatrix>> fac(big_l);
    auto slot = [&](long j, const MIdx& al, const MIdx& be) -> LaurentMatrix& {
        auto key = std::make_pair(al, be);
        auto it = fac[j].find(key);
        if (it == fac[j].end())
            it = fac[j].emplace(key, LaurentMatrix(r, r, d, ord)).first;
        return it->second;
    };
    for (long j = 0; j < big_l; ++j) {
        for (long s = 0; s < r; ++s)
            for (long t = 0; t < r; ++t) {
                const LaurentPoly& entry = coset_defect[j].at(s, t);
                if (entry.is_zero()) continue;
                try {
                    if (s == 0 && t == 0) {
                        for (auto& [ab, h] : factor_two_point(entry, m, m_tilde, dil.omega[j]))
                            slot(j, ab.first, ab.second).at(0, 0) += h;
                    } else if (s == 0) {
                        for (auto& [al, h] : factor_vanishing(entry, m, zero_tau(d), true))
                            slot(j, al, beta0).at(0, t) += h;
                    } else if (t == 0) {
                        for (auto& [be, h] : factor_vanishing(entry, m_tilde, dil.omega[j], false))
                            slot(j, alpha0, be).at(s, 0) += h;
                    } else {
                        slot(j, alpha0, beta0).at(s, t) += entry;
                    }
                } catch (const InsufficientVanishing& ex) {
                    throw FactorizationFailed(
                        "coset defect entry (" + std::to_string(s) + "," + std::to_string(t) +
                        ") at frequency " + std::to_string(j) + ": " + ex.what());
                }
            }
    }

    CycNum inv_dm = CycNum::from_rational(ord, Rational(1, big_l));
    struct BlockPair {
        LaurentMatrix b, bt;
    };
    std::vector<BlockPair> kept;
    for (const MIdx& alpha : alphas) {
        LaurentMatrix delta_a = LaurentMatrix::identity(r, d, ord);
        delta_a.at(0, 0) = nabla_basis(d, ord, alpha, zero_tau(d), false);
        for (const MIdx& beta : betas) {
            LaurentMatrix delta_b = LaurentMatrix::identity(r, d, ord);
            delta_b.at(0, 0) = nabla_basis(d, ord, beta, zero_tau(d), false);
            std::vector<LaurentMatrix> g;
            g.reserve(big_l);
            for (long j = 0; j < big_l; ++j) {
                auto it = fac[j].find({alpha, beta});
                g.push_back(it == fac[j].end()
                                ? LaurentMatrix(r, r, d, ord)
                                : it->second.freq_shifted(negated(dil.omega[j])));
            }
            for (long l = 0; l < big_l; ++l) {
                LaurentMatrix mix(r, r, d, ord);
                for (long j = 0; j < big_l; ++j) {
                    if (g[j].is_zero()) continue;
                    mix += g[j] * CycNum::root_of_unity(ord, dot(dil.gamma[l], dil.omega[j]));
                }
                mix *= inv_dm;
                BlockPair bp{delta_a.shifted(dil.gamma[l]),
                             (mix * delta_b).shifted(dil.gamma[l])};
                if (bp.b.is_zero() && bp.bt.is_zero()) continue;
                kept.push_back(std::move(bp));
            }
        }
    }

    LaurentMatrix bpb(static_cast<long>(kept.size()) * r, r, d, ord);
    LaurentMatrix bpbt(static_cast<long>(kept.size()) * r, r, d, ord);
    for (size_t i = 0; i < kept.size(); ++i) {
        bpb.set_block(static_cast<long>(i) * r, 0, kept[i].b);
        bpbt.set_block(static_cast<long>(i) * r, 0, kept[i].bt);
    }

    // The dual-bank identity in normalized coordinates; the identity for the
    // full filters is this one conjugated by the strongly invertible chains
    // U theta and star(U^{-1}) theta_tilde, so checking it here checks the
    // bank itself.
    LaurentMatrix bpb_star = bpb.star();
    for (long j = 0; j < big_l; ++j) {
        if (bpb_star * bpbt.freq_shifted(dil.omega[j]) != coset_defect[j])
            throw ConstructionFailed("completed bank identity fails at coset frequency " +
                                     std::to_string(j));
    }

    HighpassCompletion out;
    out.m = m;
    out.m_tilde = m_tilde;
    out.transform = pair;
    out.mrb = bpb * pair.u;
    out.mrtb = bpbt * pair.u_inv.star();
    out.b = out.mrb * theta;
    out.b_tilde = out.mrtb * theta_t;

    Jet vm = jet_of(sys.vec.moment_row(ord), m);
    if (!(vm * jet_at(out.mrb, zero_tau(d), m).adjoint()).is_zero())
        throw ConstructionFailed("completed highpass misses the balancing moments");
    Jet vmt = jet_of(sys.vec.moment_row(ord), m_tilde);
    if (!(vmt * jet_at(out.mrtb, zero_tau(d), m_tilde).adjoint()).is_zero())
        throw ConstructionFailed("completed dual highpass misses the balancing moments");
    return out;
}

SynthesizedMcf synthesize_mcf(const FrameletSystem& sys) {
    sys.validate_shapes();
    const unsigned ord = sys.cyc_order;
    const long r = sys.multiplicity();
    const Dilation& dil = sys.dil;

    SumRuleCertificate cert_a = sum_rule_order(sys.a, dil);
    SumRuleCertificate cert_at = sum_rule_order(sys.a_tilde, dil);
    const int m_tilde = cert_a.order;
    const int m = cert_at.order;
    if (m == 0 || m_tilde == 0)
        throw HypothesisViolated(
            "a lowpass filter carries no sum rules (order 0); moment correction needs at "
            "least order one on both sides");
    const int n = m + m_tilde;

    Jet ups = resolve_matching(sys.a, dil, sys.upsilon, cert_a, "primal");
    Jet upst = resolve_matching(sys.a_tilde, dil, sys.upsilon_tilde, cert_at, "dual");

    CycNum scale;
    try {
        scale = CycNum::sqrt_of_int(ord, Integer(r)).inverse();
    } catch (const UnsupportedRoot&) {
        throw UnsupportedRoot("1/sqrt(multiplicity) is not in the working cyclotomic field");
    }
    FracExpRow v = sys.vec.moment_row(ord);
    Jet col_target = jet_of(v, n).adjoint() * scale;

    Jet phi = refinable_jet(sys.a, dil, ups, n).jet;
    Jet phit = refinable_jet(sys.a_tilde, dil, upst, n).jet;
    ShearProduct th = normal_form_pair(ups.truncated(m_tilde), phi,
                                       jet_of(v, m_tilde) * scale, col_target, m_tilde, n);
    ShearProduct tht = normal_form_pair(upst.truncated(m), phit, jet_of(v, m) * scale,
                                        col_target, m, n);

    SynthesizedMcf out;
    out.theta = th.u;
    out.theta_tilde = tht.u;
    FrameletSystem with = sys;
    with.theta = out.theta;
    with.theta_tilde = out.theta_tilde;
    out.report = verify_mcf(with);
    if (!out.report.pass) {
        std::string why = "synthesized moment correction fails verification";
        for (const auto& c : out.report.checks)
            if (!c.pass) {
                why += ": " + c.name;
                break;
            }
        throw ConstructionFailed(why);
    }
    return out;
}

}  // namespace framelet
