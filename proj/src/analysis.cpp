#include "framelet/analysis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "framelet/errors.hpp"

namespace framelet {

namespace {

std::vector<Rational> origin(int dim) { return std::vector<Rational>(static_cast<size_t>(dim), Rational(0)); }

LaurentPoly det_rec(const LaurentMatrix& u, const std::vector<long>& rows,
                    const std::vector<long>& cols) {
    if (rows.size() == 1) return u.at(rows[0], cols[0]);
    LaurentPoly out(u.dim(), u.cyc_order());
    std::vector<long> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
        const LaurentPoly& piv = u.at(rows[0], cols[j]);
        if (piv.is_zero()) continue;
        std::vector<long> sub_cols;
        sub_cols.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        LaurentPoly term = piv * det_rec(u, sub_rows, sub_cols);
        if (j % 2 == 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

std::vector<long> index_range(long n) {
    std::vector<long> out(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = i;
    return out;
}

// Flattens a jet into a coefficient vector, levels then entries row-major.
std::vector<CycNum> flatten(const Jet& j) {
    std::vector<CycNum> out;
    out.reserve(j.index_set().size() * static_cast<size_t>(j.rows() * j.cols()));
    for (const MIdx& mu : j.index_set())
        for (long i = 0; i < j.rows(); ++i)
            for (long c = 0; c < j.cols(); ++c) out.push_back(j.deriv(mu, i, c));
    return out;
}

// Jet of the given shape whose flattened coefficients are x.
Jet jet_from_vars(int dim, long rows, long cols, int order, unsigned ord,
                  const std::vector<CycNum>& x) {
    Jet j(dim, rows, cols, order, ord, origin(dim));
    size_t p = 0;
    for (const MIdx& mu : j.index_set())
        for (long i = 0; i < rows; ++i)
            for (long c = 0; c < cols; ++c) j.deriv(mu, i, c) = x[p++];
    return j;
}

struct AffineSolve {
    bool solvable = false;
    std::vector<CycNum> x;
};

// Solves residual(x) = 0 for an affine map by exact column extraction; pins
// are extra equations x[index] = value.
AffineSolve solve_affine(long nvar, unsigned ord,
                         const std::function<std::vector<CycNum>(const std::vector<CycNum>&)>& residual,
                         const std::vector<std::pair<long, CycNum>>& pins = {}) {
    std::vector<CycNum> zero(static_cast<size_t>(nvar), CycNum::from_int(ord, 0));
    std::vector<CycNum> r0 = residual(zero);
    long rows = static_cast<long>(r0.size());
    long total = rows + static_cast<long>(pins.size());
    CycMat mat(total, nvar, ord);
    for (long t = 0; t < nvar; ++t) {
        std::vector<CycNum> x = zero;
        x[static_cast<size_t>(t)] = CycNum::from_int(ord, 1);
        std::vector<CycNum> rt = residual(x);
        for (long i = 0; i < rows; ++i) {
            CycNum c = rt[static_cast<size_t>(i)];
            c -= r0[static_cast<size_t>(i)];
            mat.at(i, t) = c;
        }
    }
    std::vector<CycNum> rhs(static_cast<size_t>(total), CycNum::from_int(ord, 0));
    for (long i = 0; i < rows; ++i) {
        CycNum c = CycNum::from_int(ord, 0);
        c -= r0[static_cast<size_t>(i)];
        rhs[static_cast<size_t>(i)] = c;
    }
    for (size_t p = 0; p < pins.size(); ++p) {
        mat.at(rows + static_cast<long>(p), pins[p].first) = CycNum::from_int(ord, 1);
        rhs[static_cast<size_t>(rows) + p] = pins[p].second;
    }
    LinearSolution sol = solve_linear(mat, rhs);
    AffineSolve out;
    out.solvable = sol.solvable;
    if (sol.solvable) out.x = sol.particular;
    return out;
}

CycMat eval_zero_mat(const LaurentMatrix& u) {
    CycMat out(u.rows(), u.cols(), u.cyc_order());
    for (long i = 0; i < u.rows(); ++i)
        for (long j = 0; j < u.cols(); ++j) out.at(i, j) = u.at(i, j).eval_zero();
    return out;
}

// Characteristic polynomial coefficients c_0..c_n with p(lambda) =
// sum_k c_k lambda^{n-k}, c_0 = 1 (Faddeev-LeVerrier).
std::vector<CycNum> char_poly(const CycMat& a) {
    long n = a.rows();
    unsigned ord = a.cyc_order();
    std::vector<CycNum> c{CycNum::from_int(ord, 1)};
    CycMat nk = a;
    for (long k = 1; k <= n; ++k) {
        if (k > 1) {
            CycMat shift = CycMat::identity(n, ord);
            shift *= c.back();
            nk = a * (nk + shift);
        }
        CycNum tr = CycNum::from_int(ord, 0);
        for (long i = 0; i < n; ++i) tr += nk.at(i, i);
        tr *= CycNum::from_rational(ord, Rational(-1, k));
        c.push_back(tr);
    }
    return c;
}

// True iff 1 is a simple eigenvalue: p(1) = 0 and p'(1) != 0.
bool simple_eigenvalue_one(const CycMat& a) {
    long n = a.rows();
    unsigned ord = a.cyc_order();
    std::vector<CycNum> c = char_poly(a);
    CycNum p1 = CycNum::from_int(ord, 0);
    for (const CycNum& ck : c) p1 += ck;
    if (!p1.is_zero()) return false;
    CycNum dp1 = CycNum::from_int(ord, 0);
    for (long k = 0; k < n; ++k) {
        CycNum term = c[static_cast<size_t>(k)];
        term *= CycNum::from_int(ord, n - k);
        dp1 += term;
    }
    return !dp1.is_zero();
}

IntMat kron_int(const IntMat& a, const IntMat& b) {
    size_t ra = a.size(), rb = b.size();
    IntMat out(ra * rb, std::vector<long>(ra * rb, 0));
    for (size_t i = 0; i < ra; ++i)
        for (size_t j = 0; j < ra; ++j)
            for (size_t p = 0; p < rb; ++p)
                for (size_t q = 0; q < rb; ++q) out[i * rb + p][j * rb + q] = a[i][j] * b[p][q];
    return out;
}

CycMat to_cyc(const IntMat& w, unsigned ord) {
    long n = static_cast<long>(w.size());
    CycMat out(n, n, ord);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            out.at(i, j) = CycNum::from_int(ord, w[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    return out;
}

CycMat kron_cyc(const CycMat& x, const CycMat& y) {
    CycMat out(x.rows() * y.rows(), x.cols() * y.cols(), x.cyc_order());
    for (long i = 0; i < x.rows(); ++i)
        for (long j = 0; j < x.cols(); ++j) {
            if (x.at(i, j).is_zero()) continue;
            for (long p = 0; p < y.rows(); ++p)
                for (long q = 0; q < y.cols(); ++q) {
                    CycNum v = x.at(i, j);
                    v *= y.at(p, q);
                    out.at(i * y.rows() + p, j * y.cols() + q) = v;
                }
        }
    return out;
}

// det((kron^j M) ox I - I ox A) != 0 for 0 < j < bound: the eigenvalue
// products lambda^alpha, |alpha| = j, never hit an eigenvalue of A.
bool dets_shift_minus(const CycMat& a, const IntMat& m, int bound) {
    unsigned ord = a.cyc_order();
    long r = a.rows();
    IntMat w;
    for (int j = 1; j < bound; ++j) {
        w = (j == 1) ? m : kron_int(w, m);
        CycMat wc = to_cyc(w, ord);
        long n = wc.rows();
        CycMat lhs = kron_cyc(wc, CycMat::identity(r, ord));
        lhs -= kron_cyc(CycMat::identity(n, ord), a);
        if (lhs.det().is_zero()) return false;
    }
    return true;
}

// det(I - (kron^j M) ox A) != 0 for 0 < j < bound.
bool dets_one_minus_shift(const CycMat& a, const IntMat& m, int bound) {
    unsigned ord = a.cyc_order();
    long r = a.rows();
    IntMat w;
    for (int j = 1; j < bound; ++j) {
        w = (j == 1) ? m : kron_int(w, m);
        CycMat wc = to_cyc(w, ord);
        CycMat lhs = CycMat::identity(wc.rows() * r, ord);
        lhs -= kron_cyc(wc, a);
        if (lhs.det().is_zero()) return false;
    }
    return true;
}

// Existence of a nonzero constant C with lhs = C * rhs as jets.
bool proportional(const Jet& lhs, const Jet& rhs, CycNum& c_out) {
    unsigned ord = lhs.cyc_order();
    if (rhs.is_zero()) {
        c_out = CycNum::from_int(ord, 1);
        return lhs.is_zero();
    }
    for (const MIdx& mu : rhs.index_set())
        for (long i = 0; i < rhs.rows(); ++i)
            for (long j = 0; j < rhs.cols(); ++j) {
                if (rhs.deriv(mu, i, j).is_zero()) continue;
                CycNum c = lhs.deriv(mu, i, j);
                c *= rhs.deriv(mu, i, j).inverse();
                if (c.is_zero()) return false;
                Jet scaled = rhs;
                scaled *= c;
                if (scaled != lhs) return false;
                c_out = c;
                return true;
            }
    return false;
}

}  // namespace

LaurentPoly laurent_det(const LaurentMatrix& u) {
    if (u.rows() != u.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    if (u.rows() == 0) return LaurentPoly::one(u.dim(), u.cyc_order());
    auto idx = index_range(u.rows());
    return det_rec(u, idx, idx);
}

LaurentMatrix laurent_adjugate(const LaurentMatrix& u) {
    if (u.rows() != u.cols()) throw DimensionMismatch("adjugate of a non-square matrix");
    long n = u.rows();
    LaurentMatrix out(n, n, u.dim(), u.cyc_order());
    if (n == 0) return out;
    if (n == 1) {
        out.at(0, 0) = LaurentPoly::one(u.dim(), u.cyc_order());
        return out;
    }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            std::vector<long> rows, cols;
            for (long t = 0; t < n; ++t) {
                if (t != i) rows.push_back(t);
                if (t != j) cols.push_back(t);
            }
            LaurentPoly minor = det_rec(u, rows, cols);
            if ((i + j) % 2 != 0) minor = -minor;
            out.at(j, i) = minor;
        }
    return out;
}

StrongInvertibility strong_invertibility(const LaurentMatrix& u) {
    StrongInvertibility out;
    out.det = laurent_det(u);
    if (out.det.term_count() != 1) return out;
    out.verdict = true;
    MIdx k;
    CycNum c;
    out.det.for_each([&](const MIdx& kk, const CycNum& cc) {
        k = kk;
        c = cc;
    });
    MIdx neg = k;
    for (auto& v : neg) v = -v;
    LaurentPoly inv_mono = LaurentPoly::monomial(u.dim(), u.cyc_order(), neg, c.inverse());
    LaurentMatrix inv = laurent_adjugate(u);
    inv *= inv_mono;
    out.inverse = std::move(inv);
    return out;
}

int default_order_cap(const LaurentMatrix& u) {
    bool any = false;
    MIdx lo, hi;
    for (long i = 0; i < u.rows(); ++i)
        for (long j = 0; j < u.cols(); ++j) {
            const LaurentPoly& e = u.at(i, j);
            if (e.is_zero()) continue;
            auto [l, h] = e.support_box();
            if (!any) {
                lo = l;
                hi = h;
                any = true;
            } else {
                for (size_t t = 0; t < lo.size(); ++t) {
                    lo[t] = std::min(lo[t], l[t]);
                    hi[t] = std::max(hi[t], h[t]);
                }
            }
        }
    if (!any) return 4;
    long diam = 0;
    for (size_t t = 0; t < lo.size(); ++t) diam = std::max(diam, static_cast<long>(hi[t]) - lo[t]);
    return static_cast<int>(2 * diam + 4);
}

SumRuleCertificate sum_rule_order(const LaurentMatrix& a, const Dilation& dil, int cap) {
    if (a.rows() != a.cols()) throw DimensionMismatch("sum rules need a square mask");
    if (a.dim() != dil.dim) throw DimensionMismatch("mask dimension does not match the dilation");
    int d = dil.dim;
    long r = a.rows();
    unsigned ord = a.cyc_order();
    if (cap <= 0) cap = default_order_cap(a);

    std::vector<Jet> shifted;
    shifted.reserve(dil.omega.size());
    for (const auto& omega : dil.omega)
        shifted.push_back(jet_at(a.freq_shifted(omega), origin(d), cap));
    IntMat mt = transpose(dil.m);

    SumRuleCertificate cert;
    auto try_order = [&](int m, Jet& out) -> bool {
        long nvar = r * static_cast<long>(indices_below(d, m).size());
        auto residual = [&](const std::vector<CycNum>& x) {
            Jet ups = jet_from_vars(d, 1, r, m, ord, x);
            Jet upsm = ups.compose_linear(mt);
            std::vector<CycNum> res;
            for (size_t w = 0; w < shifted.size(); ++w) {
                Jet rj = upsm * shifted[w].truncated(m);
                if (w == 0) rj -= ups;
                auto flat = flatten(rj);
                res.insert(res.end(), flat.begin(), flat.end());
            }
            return res;
        };
        for (long t = 0; t < r; ++t) {
            std::vector<std::pair<long, CycNum>> pins;
            for (long s = 0; s < t; ++s) pins.emplace_back(s, CycNum::from_int(ord, 0));
            pins.emplace_back(t, CycNum::from_int(ord, 1));
            AffineSolve sol = solve_affine(nvar, ord, residual, pins);
            if (sol.solvable) {
                out = jet_from_vars(d, 1, r, m, ord, sol.x);
                return true;
            }
        }
        return false;
    };

    Jet best;
    for (int m = 1; m <= cap; ++m) {
        Jet cand;
        if (!try_order(m, cand)) break;
        cert.order = m;
        best = cand;
    }
    cert.at_cap = (cert.order == cap);
    if (cert.order == 0) {
        Jet e1(d, 1, r, 1, ord, origin(d));
        e1.deriv(MIdx(static_cast<size_t>(d), 0), 0, 0) = CycNum::from_int(ord, 1);
        cert.matching = e1;
    } else {
        cert.matching = best;
    }
    return cert;
}

bool check_sum_rules(const LaurentMatrix& a, const Dilation& dil, const Jet& upsilon,
                     int order) {
    if (order <= 0) return true;
    if (upsilon.order() < order)
        throw DimensionMismatch("matching jet carries fewer derivatives than the checked order");
    int d = dil.dim;
    Jet ups = upsilon.truncated(order);
    if (ups.level(MIdx(static_cast<size_t>(d), 0)).is_zero()) return false;
    Jet upsm = ups.compose_linear(transpose(dil.m));
    for (size_t w = 0; w < dil.omega.size(); ++w) {
        Jet rj = upsm * jet_at(a.freq_shifted(dil.omega[w]), origin(d), order);
        if (w == 0) rj -= ups;
        if (!rj.is_zero()) return false;
    }
    return true;
}

RefinableJet refinable_jet(const LaurentMatrix& a, const Dilation& dil, const Jet& upsilon,
                           int order) {
    if (a.rows() != a.cols()) throw DimensionMismatch("refinement mask must be square");
    if (order <= 0) throw DimensionMismatch("refinable jet needs a positive order");
    int d = dil.dim;
    long r = a.rows();
    unsigned ord = a.cyc_order();
    MIdx zero_mu(static_cast<size_t>(d), 0);

    Jet ajet = jet_at(a, origin(d), order);
    CycMat a0 = ajet.level(zero_mu);
    if (!simple_eigenvalue_one(a0))
        throw NonSimpleEigenvalue("1 is not a simple eigenvalue of a_hat(0)");

    CycMat k = a0 - CycMat::identity(r, ord);
    LinearSolution s0 = solve_linear(k, std::vector<CycNum>(static_cast<size_t>(r), CycNum::from_int(ord, 0)));
    if (s0.kernel.size() != 1)
        throw NonSimpleEigenvalue("eigenspace of a_hat(0) at 1 is not one-dimensional");
    std::vector<CycNum> x0 = s0.kernel[0];

    CycNum scale = CycNum::from_int(ord, 0);
    for (long s = 0; s < r; ++s) {
        CycNum t = upsilon.deriv(zero_mu, 0, s);
        t *= x0[static_cast<size_t>(s)];
        scale += t;
    }
    if (scale.is_zero())
        throw HypothesisViolated("upsilon_hat(0) phi_hat(0) = 0; the normalization fails");
    CycNum inv = scale.inverse();
    for (auto& v : x0) v *= inv;

    Jet phi(d, r, 1, order, ord, origin(d));
    for (long s = 0; s < r; ++s) phi.deriv(zero_mu, s, 0) = x0[static_cast<size_t>(s)];

    auto tmap = compose_linear_map(transpose(dil.m), order);
    for (int level = 1; level < order; ++level) {
        auto mus = indices_exact(d, level);
        long nvar = static_cast<long>(mus.size()) * r;
        CycMat mat(nvar, nvar, ord);
        std::vector<CycNum> rhs(static_cast<size_t>(nvar), CycNum::from_int(ord, 0));
        for (size_t e = 0; e < mus.size(); ++e) {
            const MIdx& mu = mus[e];
            long mu_pos = index_position(mu, order);
            for (long s = 0; s < r; ++s) {
                long row = static_cast<long>(e) * r + s;
                for (size_t v = 0; v < mus.size(); ++v) {
                    const Rational& t = tmap[static_cast<size_t>(mu_pos)]
                                            [static_cast<size_t>(index_position(mus[v], order))];
                    for (long c = 0; c < r; ++c) {
                        CycNum val = CycNum::from_int(ord, 0);
                        if (c == s && t != 0) val += CycNum::from_rational(ord, t);
                        if (v == e) val -= a0.at(s, c);
                        mat.at(row, static_cast<long>(v) * r + c) = val;
                    }
                }
                CycNum acc = CycNum::from_int(ord, 0);
                for (const MIdx& kappa : indices_below(d, level + 1)) {
                    if (abs_sum(kappa) == 0 || !dominates(mu, kappa)) continue;
                    MIdx rest = sub(mu, kappa);
                    CycNum coef = CycNum::from_rational(ord, Rational(mi_binomial(mu, kappa)));
                    for (long c = 0; c < r; ++c) {
                        CycNum t = ajet.deriv(kappa, s, c);
                        t *= phi.deriv(rest, c, 0);
                        t *= coef;
                        acc += t;
                    }
                }
                rhs[static_cast<size_t>(row)] = acc;
            }
        }
        LinearSolution sol = solve_linear(mat, rhs);
        if (!sol.solvable || !sol.kernel.empty())
            throw SingularLevelSystem("refinable jet level " + std::to_string(level) +
                                      " has a singular system");
        for (size_t e = 0; e < mus.size(); ++e)
            for (long s = 0; s < r; ++s)
                phi.deriv(mus[e], s, 0) = sol.particular[e * static_cast<size_t>(r) +
                                                          static_cast<size_t>(s)];
    }
    return RefinableJet{phi};
}

int vmo_highpass(const LaurentMatrix& b, const RefinableJet& phi) {
    if (b.cols() != phi.jet.rows())
        throw DimensionMismatch("highpass filter and refinable jet shapes disagree");
    Jet bj = jet_at(b, origin(b.dim()), phi.jet.order());
    Jet p = bj * phi.jet;
    if (p.is_zero())
        throw InconclusiveOrder("all derivatives to order " + std::to_string(p.order()) +
                                " vanish; raise the refinable jet order");
    return p.vanishing_order();
}

OrderResult bvmo(const LaurentMatrix& b, const Vectorizer& vec, int cap) {
    if (cap <= 0) cap = default_order_cap(b);
    Jet v = jet_of(vec.moment_row(b.cyc_order()), cap);
    Jet p = v * jet_at(b, origin(b.dim()), cap).adjoint();
    OrderResult out;
    if (p.is_zero()) {
        out.order = cap;
        out.at_cap = true;
    } else {
        out.order = p.vanishing_order();
    }
    return out;
}

OrderResult bpo(const LaurentMatrix& a, const LaurentMatrix& b, const Vectorizer& vec,
                const Dilation& dil, int cap) {
    if (cap <= 0) cap = std::max(default_order_cap(a), default_order_cap(b));
    int d = dil.dim;
    unsigned ord = a.cyc_order();
    OrderResult bv = bvmo(b, vec, cap);

    IntMat mt = transpose(dil.m);
    Jet vfull = jet_of(vec.moment_row(ord), cap);
    Jet lhs_full = vfull * jet_at(a, origin(d), cap).adjoint();
    int lp = 0;
    for (int m = 1; m <= cap; ++m) {
        long nvar = static_cast<long>(indices_below(d, m).size());
        Jet lhs = lhs_full.truncated(m);
        Jet w = vfull.truncated(m).compose_linear(mt);
        auto residual = [&](const std::vector<CycNum>& x) {
            Jet c = jet_from_vars(d, 1, 1, m, ord, x);
            return flatten(c * w - lhs);
        };
        AffineSolve sol = solve_affine(nvar, ord, residual);
        if (!sol.solvable || sol.x[0].is_zero()) break;
        lp = m;
    }
    OrderResult out;
    out.order = std::min(bv.order, lp);
    out.at_cap = (out.order == cap);
    return out;
}

McfReport verify_mcf(const FrameletSystem& sys) {
    sys.validate_shapes();
    const Dilation& dil = sys.dil;
    int d = dil.dim;
    unsigned ord = sys.cyc_order;
    LaurentMatrix theta = sys.theta_or_identity();
    LaurentMatrix theta_t = sys.theta_tilde_or_identity();
    StrongInvertibility si = strong_invertibility(theta);
    if (!si.verdict) throw NotStronglyInvertible("theta is not strongly invertible");
    StrongInvertibility sit = strong_invertibility(theta_t);
    if (!sit.verdict) throw NotStronglyInvertible("theta_tilde is not strongly invertible");

    McfReport rep;
    SumRuleCertificate cert_a = sum_rule_order(sys.a, dil);
    SumRuleCertificate cert_at = sum_rule_order(sys.a_tilde, dil);
    rep.m_tilde = cert_a.order;
    rep.m = cert_at.order;
    int m = rep.m, mt_ord = rep.m_tilde;
    if (m + mt_ord == 0) {
        rep.checks.push_back({"sum rules", false, "both masks have sum rule order 0"});
        return rep;
    }

    Jet ups = cert_a.matching;
    if (sys.upsilon) {
        bool ok = sys.upsilon->order() >= std::max(mt_ord, 1) &&
                  check_sum_rules(sys.a, dil, *sys.upsilon, mt_ord);
        rep.checks.push_back({"upsilon matches the sum rules of a", ok, ""});
        if (ok) ups = sys.upsilon->truncated(std::max(mt_ord, 1));
    }
    Jet upst = cert_at.matching;
    if (sys.upsilon_tilde) {
        bool ok = sys.upsilon_tilde->order() >= std::max(m, 1) &&
                  check_sum_rules(sys.a_tilde, dil, *sys.upsilon_tilde, m);
        rep.checks.push_back({"upsilon_tilde matches the sum rules of a_tilde", ok, ""});
        if (ok) upst = sys.upsilon_tilde->truncated(std::max(m, 1));
    }

    int n = m + mt_ord;
    RefinableJet phi = refinable_jet(sys.a, dil, ups, n);
    RefinableJet phit = refinable_jet(sys.a_tilde, dil, upst, n);

    Jet mrphi = jet_at(theta, origin(d), n) * phi.jet;
    Jet mrphit = jet_at(theta_t, origin(d), n) * phit.jet;

    auto add_check = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
    };

    if (mt_ord > 0) {
        Jet mrv = ups.truncated(mt_ord) * jet_at(*si.inverse, origin(d), mt_ord);
        CycNum c_const;
        bool ok1 = proportional(mrv, mrphit.truncated(mt_ord).adjoint(), c_const);
        if (ok1) rep.big_c = c_const;
        add_check("mrv = C conj(mrphit)^T", ok1, ok1 ? c_const.to_string() : "");

        Jet vv = jet_of(sys.vec.moment_row(ord), mt_ord);
        long nvar = static_cast<long>(indices_below(d, mt_ord).size());
        auto residual = [&](const std::vector<CycNum>& x) {
            Jet c = jet_from_vars(d, 1, 1, mt_ord, ord, x);
            return flatten(c * vv - mrv);
        };
        AffineSolve sol = solve_affine(nvar, ord, residual);
        bool ok2 = sol.solvable && !sol.x[0].is_zero();
        if (ok2) rep.c_jet = jet_from_vars(d, 1, 1, mt_ord, ord, sol.x);
        add_check("mrv = c_hat V_hat", ok2, ok2 ? rep.c_jet.to_string() : "");
    } else {
        add_check("mrv = C conj(mrphit)^T", true, "vacuous at order 0");
        add_check("mrv = c_hat V_hat", true, "vacuous at order 0");
    }

    if (m > 0) {
        Jet mrvt = upst.truncated(m) * jet_at(*sit.inverse, origin(d), m);
        CycNum ct_const;
        bool ok3 = proportional(mrvt, mrphi.truncated(m).adjoint(), ct_const);
        if (ok3) rep.big_c_tilde = ct_const;
        add_check("mrvt = C_tilde conj(mrphi)^T", ok3, ok3 ? ct_const.to_string() : "");

        Jet vv = jet_of(sys.vec.moment_row(ord), m);
        long nvar = static_cast<long>(indices_below(d, m).size());
        auto residual = [&](const std::vector<CycNum>& x) {
            Jet c = jet_from_vars(d, 1, 1, m, ord, x);
            return flatten(c * vv - mrvt);
        };
        AffineSolve sol = solve_affine(nvar, ord, residual);
        bool ok4 = sol.solvable && !sol.x[0].is_zero();
        if (ok4) rep.d_jet = jet_from_vars(d, 1, 1, m, ord, sol.x);
        add_check("mrvt = d_hat V_hat", ok4, ok4 ? rep.d_jet.to_string() : "");
    } else {
        add_check("mrvt = C_tilde conj(mrphi)^T", true, "vacuous at order 0");
        add_check("mrvt = d_hat V_hat", true, "vacuous at order 0");
    }

    Jet bi = mrphi.adjoint() * mrphit;
    Jet one(d, 1, 1, n, ord, origin(d));
    one.deriv(MIdx(static_cast<size_t>(d), 0), 0, 0) = CycNum::from_int(ord, 1);
    bool ok5 = (bi == one);
    add_check("conj(mrphi)^T mrphit = 1", ok5, ok5 ? "to order " + std::to_string(n) : bi.to_string());

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

McfConverseReport verify_mcf_converse(const FrameletSystem& sys) {
    sys.validate_shapes();
    const Dilation& dil = sys.dil;
    int d = dil.dim;
    unsigned ord = sys.cyc_order;
    LaurentMatrix theta = sys.theta_or_identity();
    LaurentMatrix theta_t = sys.theta_tilde_or_identity();
    StrongInvertibility si = strong_invertibility(theta);
    if (!si.verdict) throw NotStronglyInvertible("theta is not strongly invertible");
    StrongInvertibility sit = strong_invertibility(theta_t);
    if (!sit.verdict) throw NotStronglyInvertible("theta_tilde is not strongly invertible");

    McfConverseReport rep;
    int mt_ord = sum_rule_order(sys.a, dil).order;
    int m = sum_rule_order(sys.a_tilde, dil).order;

    CycMat a0 = eval_zero_mat(sys.a);
    CycMat at0 = eval_zero_mat(sys.a_tilde);
    CycMat th0 = eval_zero_mat(theta);
    CycMat tht0 = eval_zero_mat(theta_t);
    CycMat mra0 = th0 * a0 * th0.inverse();
    CycMat mrta0 = tht0 * at0 * tht0.inverse();

    EigenCheck ca{"a_hat(0)", simple_eigenvalue_one(a0),
                  dets_shift_minus(a0, dil.m, mt_ord) && dets_one_minus_shift(a0, dil.m, m)};
    EigenCheck cat{"a_tilde_hat(0)", simple_eigenvalue_one(at0),
                   dets_one_minus_shift(at0, dil.m, mt_ord) && dets_shift_minus(at0, dil.m, m)};
    EigenCheck cmra{"mra_hat(0)", simple_eigenvalue_one(mra0), true};
    EigenCheck cmrta{"mrta_hat(0)", simple_eigenvalue_one(mrta0), true};
    rep.item_ii = {ca, cat, cmra, cmrta};

    int q = std::max(std::max(m, mt_ord), 1);
    IntMat mt = transpose(dil.m);
    Jet mrta_jet = jet_at(theta_t, origin(d), q).compose_linear(mt) *
                   jet_at(sys.a_tilde, origin(d), q) * jet_at(*sit.inverse, origin(d), q);
    Jet vfull = jet_of(sys.vec.moment_row(ord), q);

    if (m > 0) {
        Jet known = vfull.truncated(m).compose_linear(mt) * mrta_jet.truncated(m);
        Jet v = vfull.truncated(m);
        long nvar = static_cast<long>(indices_below(d, m).size());
        auto residual = [&](const std::vector<CycNum>& x) {
            Jet p = jet_from_vars(d, 1, 1, m, ord, x);
            return flatten(p.compose_linear(mt) * known - p * v);
        };
        AffineSolve sol =
            solve_affine(nvar, ord, residual, {{0, CycNum::from_int(ord, 1)}});
        rep.item_iii = {"p_hat(M^T.) V_hat(M^T.) mrta = p_hat V_hat", sol.solvable, ""};
        if (sol.solvable) {
            rep.p_jet = jet_from_vars(d, 1, 1, m, ord, sol.x);
            rep.item_iii.detail = rep.p_jet.to_string();
        }
    } else {
        rep.item_iii = {"p_hat(M^T.) V_hat(M^T.) mrta = p_hat V_hat", true, "vacuous at order 0"};
    }

    if (mt_ord > 0) {
        Jet known = mrta_jet.truncated(mt_ord) * vfull.truncated(mt_ord).adjoint();
        Jet wm = vfull.truncated(mt_ord).compose_linear(mt).adjoint();
        long nvar = static_cast<long>(indices_below(d, mt_ord).size());
        auto residual = [&](const std::vector<CycNum>& x) {
            Jet qj = jet_from_vars(d, 1, 1, mt_ord, ord, x);
            return flatten(known * qj - wm * qj.compose_linear(mt));
        };
        AffineSolve sol =
            solve_affine(nvar, ord, residual, {{0, CycNum::from_int(ord, 1)}});
        rep.item_iv = {"q_hat mrta conj(V_hat)^T = q_hat(M^T.) conj(V_hat(M^T.))^T", sol.solvable,
                       ""};
        if (sol.solvable) {
            rep.q_jet = jet_from_vars(d, 1, 1, mt_ord, ord, sol.x);
            rep.item_iv.detail = rep.q_jet.to_string();
        }
    } else {
        rep.item_iv = {"q_hat mrta conj(V_hat)^T = q_hat(M^T.) conj(V_hat(M^T.))^T", true,
                       "vacuous at order 0"};
    }

    rep.pass = rep.item_iii.pass && rep.item_iv.pass;
    for (const auto& c : rep.item_ii) rep.pass = rep.pass && c.simple && c.family;
    return rep;
}

}  // namespace framelet
